#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "vreach/network.hpp"
#include "vreach/tolerances.hpp"
#include "vreach/vertex_set.hpp"

namespace vreach {

class Executor;

enum class Algorithm { apnm, epnm, papnm };

std::string to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& name);

/// How a layer image is cut into per-orthant parts.
///   sequential   - one coordinate hyperplane at a time; exact in any dimension.
///   simultaneous - one skeleton, all edge crossings, origin test, then
///                  sign-based placement; exact only when every crossing of a
///                  face with two or more coordinate hyperplanes is the origin
///                  (e.g. 2-D layers).
enum class SplitStrategy { sequential, simultaneous };

struct ReachOptions {
  Tolerances tol;
  SplitStrategy split = SplitStrategy::sequential;
  std::size_t max_placements = std::size_t{1} << 20;
  std::size_t max_branches = 1'000'000;
};

struct LayerStats {
  std::size_t layer = 0;         // 1-based
  std::size_t vertices_in = 0;   // vertices entering this layer's affine map
  std::size_t sets_in = 0;       // sets entering this layer
  std::size_t sets_out = 0;      // sets leaving this layer
};

struct ReachSet {
  std::vector<VertexSet> polytopes;
  std::vector<LayerStats> layers;
  bool complete = true;  // false when cancelled; polytopes are then empty
};

/// Over-approximation: one convex set per layer.
ReachSet apnm(const VertexSet& input, const Network& net, const ReachOptions& options,
              Executor& executor);
ReachSet apnm(const VertexSet& input, const Network& net, const ReachOptions& options = {});

/// Exact reachable set as a union of convex sets, one per surviving branch.
ReachSet epnm(const VertexSet& input, const Network& net, const ReachOptions& options,
              Executor& executor);
ReachSet epnm(const VertexSet& input, const Network& net, const ReachOptions& options = {});

/// EPNM with the per-orthant parts of each branch merged d at a time.
/// d = 1 is EPNM; d >= the number of parts is APNM.
ReachSet papnm(const VertexSet& input, const Network& net, std::size_t d,
               const ReachOptions& options, Executor& executor);
ReachSet papnm(const VertexSet& input, const Network& net, std::size_t d,
               const ReachOptions& options = {});

ReachSet reach(Algorithm algorithm, const VertexSet& input, const Network& net,
               std::size_t merge_size, const ReachOptions& options, Executor& executor);

}  // namespace vreach
