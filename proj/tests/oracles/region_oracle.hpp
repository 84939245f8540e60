#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "polygon.hpp"
#include "vreach/network.hpp"

namespace oracle {

// A cell of the input plane on which the network is affine, and that affine
// map (y = A x + c) evaluated up to the network output.
struct Piece {
  Polygon cell;
  Eigen::MatrixXd a;
  Eigen::VectorXd c;
};

// Cuts `input` by every neuron's sign, layer by layer, for a network with a
// 2-D input. Cells are kept only when they have positive area. Hidden-layer
// values within sign_eps of zero count as zero on the cell's side.
std::vector<Piece> activation_regions(const vreach::Network& net, const Polygon& input,
                                      double sign_eps = 1e-9);

// Images of the cell corners.
Eigen::MatrixXd piece_image(const Piece& piece);

// Extreme points of a finite set spanning an affine subspace of dimension at
// most 2, computed by projecting onto that subspace and gift wrapping.
Eigen::MatrixXd extreme_points_lowdim(const Eigen::MatrixXd& pts, double tol = 1e-9);

bool piece_contains(const Piece& piece, const Eigen::VectorXd& y, double tol);

// Every column of a is within tol of a column of b and vice versa.
bool same_point_set(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double tol);

}  // namespace oracle
