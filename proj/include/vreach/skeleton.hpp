#pragma once

#include <cstddef>
#include <functional>
#include <set>
#include <vector>

#include <Eigen/Dense>

#include "vreach/vertex_set.hpp"

namespace vreach {

class Executor;

/// 1-skeleton of conv(V). adjacency[i] holds the indices j > i such that
/// (v_i, v_j) is an edge.
struct EdgeSkeleton {
  std::vector<std::set<std::size_t>> adjacency;

  std::size_t edge_count() const;
  bool has_edge(std::size_t i, std::size_t j) const;
  friend bool operator==(const EdgeSkeleton&, const EdgeSkeleton&) = default;
};

/// Entries in {-1, 0, +1}; 0 iff |x_k| <= eps.
using SignVector = std::vector<int>;

SignVector sign_of(const Eigen::Ref<const Eigen::VectorXd>& x, double eps);

/// Restricts which pairs identify_edges examines; pairs it rejects are
/// reported as non-adjacent without solving any LP.
using PairFilter = std::function<bool(std::size_t i, std::size_t j)>;

/// (i, j) is an edge iff the midpoint of v_i and v_j is neither a convex
/// combination with lambda_i = 0 nor one with lambda_j = 0. V must be
/// deduplicated extreme points. Parallel over i; the result does not depend
/// on the worker count.
EdgeSkeleton identify_edges(const VertexSet& v, double lp_tol);
EdgeSkeleton identify_edges(const VertexSet& v, double lp_tol, Executor& executor,
                            const PairFilter& filter = {});

/// Appends the points where edges cross coordinate hyperplanes.
///
/// For each edge (i, j) in (i, j, k) order and each coordinate k where the
/// endpoints have strictly opposite signs, appends
///   p = v_i + lambda (v_j - v_i),  lambda = -v_ik / (v_jk - v_ik),
/// with p_k set to exactly 0. `coordinates` limits k to the listed indices;
/// empty means all coordinates.
VertexSet intersect_edges(const VertexSet& v, const EdgeSkeleton& edges, double sign_eps,
                          const std::vector<std::size_t>& coordinates = {});

}  // namespace vreach
