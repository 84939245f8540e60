#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include <Eigen/Dense>

#include "vreach/tolerances.hpp"

namespace vreach {

class Executor;

/// A V-polytope: the convex hull of an ordered list of points.
///
/// Points are stored as the columns of a dim x size matrix. The value is
/// immutable once built; the geometry operations return new sets.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(Eigen::MatrixXd points);
  VertexSet(std::initializer_list<std::initializer_list<double>> points);

  static VertexSet from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(points_.rows()); }
  std::size_t size() const noexcept { return static_cast<std::size_t>(points_.cols()); }
  bool empty() const noexcept { return points_.cols() == 0; }

  const Eigen::MatrixXd& points() const noexcept { return points_; }
  Eigen::VectorXd point(std::size_t i) const { return points_.col(static_cast<Eigen::Index>(i)); }
  double at(std::size_t i, std::size_t coord) const {
    return points_(static_cast<Eigen::Index>(coord), static_cast<Eigen::Index>(i));
  }

  /// Subset in the given index order.
  VertexSet select(const std::vector<std::size_t>& indices) const;
  VertexSet with_appended(const Eigen::MatrixXd& extra) const;
  VertexSet with_appended(const VertexSet& extra) const;

  friend bool operator==(const VertexSet& a, const VertexSet& b) {
    return a.points_.rows() == b.points_.rows() && a.points_.cols() == b.points_.cols() &&
           a.points_ == b.points_;
  }

 private:
  Eigen::MatrixXd points_;
};

/// Weight matrix (m x n) and bias vector (m) of one layer.
struct LayerParams {
  Eigen::MatrixXd weights;
  Eigen::VectorXd biases;

  std::size_t input_dim() const noexcept { return static_cast<std::size_t>(weights.cols()); }
  std::size_t output_dim() const noexcept { return static_cast<std::size_t>(weights.rows()); }
};

/// Point i of the result is W * v_i + theta.
VertexSet affine_map(const VertexSet& v, const LayerParams& layer);

/// Componentwise max(0, x); -0.0 becomes +0.0.
VertexSet relu_map(const VertexSet& v);

/// Keeps the first occurrence of each point, dropping later points within
/// Euclidean distance `tol` of a kept one.
VertexSet dedup_vertices(const VertexSet& v, double tol);

/// Drops every point that is a convex combination of the other retained
/// points. Candidates are visited in order and tested against the points
/// still retained at that moment. Input must be deduplicated.
VertexSet remove_internal_points(const VertexSet& v, double tol);
VertexSet remove_internal_points(const VertexSet& v, double tol, Executor& executor);

bool contains_point(const VertexSet& v, const Eigen::VectorXd& x, double tol);

/// dedup_vertices followed by remove_internal_points.
VertexSet reduce_to_vertices(const VertexSet& v, const Tolerances& tol, Executor& executor);

}  // namespace vreach
