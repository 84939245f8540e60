#include "vreach/skeleton.hpp"

#include <string>

#include "vreach/errors.hpp"
#include "vreach/executor.hpp"
#include "vreach/linear_feasibility.hpp"

namespace vreach {

std::size_t EdgeSkeleton::edge_count() const {
  std::size_t n = 0;
  for (const auto& s : adjacency) n += s.size();
  return n;
}

bool EdgeSkeleton::has_edge(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  return i < adjacency.size() && adjacency[i].count(j) > 0;
}

SignVector sign_of(const Eigen::Ref<const Eigen::VectorXd>& x, double eps) {
  if (eps < 0.0) throw ContractViolation("skeleton.sign_of", "eps must be >= 0");
  SignVector s(static_cast<std::size_t>(x.size()));
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    s[static_cast<std::size_t>(k)] = x(k) > eps ? 1 : (x(k) < -eps ? -1 : 0);
  }
  return s;
}

EdgeSkeleton identify_edges(const VertexSet& v, double lp_tol) {
  Executor sequential(1);
  return identify_edges(v, lp_tol, sequential);
}

EdgeSkeleton identify_edges(const VertexSet& v, double lp_tol, Executor& executor,
                            const PairFilter& filter) {
  const std::size_t o = v.size();
  EdgeSkeleton result;
  result.adjacency.resize(o);
  if (o < 2) return result;
  if (o == 2) {
    if (!filter || filter(0, 1)) result.adjacency[0].insert(1);
    return result;
  }

  const HullOracle oracle(v.points(), lp_tol);
  executor.parallel_for(o, [&](std::size_t i) {
    executor.checkpoint();
    std::set<std::size_t>& out = result.adjacency[i];
    for (std::size_t j = i + 1; j < o; ++j) {
      if (filter && !filter(i, j)) continue;
      executor.checkpoint();
      const Eigen::VectorXd mid = 0.5 * (v.point(i) + v.point(j));
      try {
        const std::size_t without_i[1] = {i};
        if (oracle.contains_without(mid, without_i)) continue;
        const std::size_t without_j[1] = {j};
        if (oracle.contains_without(mid, without_j)) continue;
      } catch (const SolverFailure& e) {
        throw SolverFailure("skeleton.identify_edges",
                            "pair (" + std::to_string(i) + ", " + std::to_string(j) +
                                "): " + e.what());
      }
      out.insert(j);
    }
  });
  return result;
}

VertexSet intersect_edges(const VertexSet& v, const EdgeSkeleton& edges, double sign_eps,
                          const std::vector<std::size_t>& coordinates) {
  if (edges.adjacency.size() != v.size()) {
    throw ContractViolation("skeleton.intersect_edges",
                            "skeleton has " + std::to_string(edges.adjacency.size()) +
                                " vertices, vertex set has " + std::to_string(v.size()));
  }
  const std::size_t n = v.dim();
  std::vector<std::size_t> coords = coordinates;
  if (coords.empty()) {
    coords.resize(n);
    for (std::size_t k = 0; k < n; ++k) coords[k] = k;
  }
  for (std::size_t k : coords) {
    if (k >= n) throw ContractViolation("skeleton.intersect_edges", "coordinate out of range");
  }

  std::vector<SignVector> signs(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) signs[i] = sign_of(v.point(i), sign_eps);

  std::vector<Eigen::VectorXd> added;
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j : edges.adjacency[i]) {
      if (j <= i || j >= v.size()) {
        throw ContractViolation("skeleton.intersect_edges", "adjacency must store j > i");
      }
      const Eigen::VectorXd vi = v.point(i);
      const Eigen::VectorXd vj = v.point(j);
      for (std::size_t k : coords) {
        // |sign difference| >= 2 only when the endpoints are strictly on
        // opposite sides; a zero endpoint gives 1 and produces nothing.
        if (std::abs(signs[i][k] - signs[j][k]) < 2) continue;
        const auto ki = static_cast<Eigen::Index>(k);
        const double lambda = -vi(ki) / (vj(ki) - vi(ki));
        if (lambda < -1e-12 || lambda > 1.0 + 1e-12) {
          throw ContractViolation("skeleton.intersect_edges",
                                  "crossing parameter outside [0, 1]: " + std::to_string(lambda));
        }
        Eigen::VectorXd p = (vj - vi) * lambda + vi;
        p(ki) = 0.0;
        added.push_back(std::move(p));
      }
    }
  }
  if (added.empty()) return v;
  Eigen::MatrixXd extra(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(added.size()));
  for (std::size_t c = 0; c < added.size(); ++c) extra.col(static_cast<Eigen::Index>(c)) = added[c];
  return v.with_appended(extra);
}

}  // namespace vreach
