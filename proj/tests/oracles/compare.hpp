#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "region_oracle.hpp"
#include "vreach/reach.hpp"

namespace oracle {

struct Comparison {
  std::size_t pieces = 0;
  std::size_t sets = 0;
  std::size_t matched_pieces = 0;
  std::size_t matched_sets = 0;
  // Unmatched on either side but covered by the other side's union; these are
  // slivers or coincident images.
  std::size_t covered_unmatched = 0;
  std::size_t uncovered = 0;
  std::string first_failure;

  bool ok() const { return uncovered == 0; }
};

// Matches every reach output polytope against the extreme points of the
// oracle's piece images, in both directions.
Comparison compare_with_regions(const vreach::ReachSet& reach, const std::vector<Piece>& pieces,
                                double tol);

bool in_union(const std::vector<vreach::VertexSet>& sets, const Eigen::VectorXd& y, double tol);

}  // namespace oracle
