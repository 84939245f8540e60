#include "vreach/vertex_set.hpp"

#include <cmath>
#include <map>
#include <string>

#include "vreach/errors.hpp"
#include "vreach/executor.hpp"
#include "vreach/linear_feasibility.hpp"

namespace vreach {

namespace {

void require_finite(const Eigen::MatrixXd& m, const char* where) {
  if (!m.allFinite()) throw ContractViolation(where, "non-finite coordinate");
}

}  // namespace

VertexSet::VertexSet(Eigen::MatrixXd points) : points_(std::move(points)) {
  if (points_.cols() > 0 && points_.rows() < 1) {
    throw ContractViolation("vpolytope.VertexSet", "points need at least one coordinate");
  }
  require_finite(points_, "vpolytope.VertexSet");
}

VertexSet::VertexSet(std::initializer_list<std::initializer_list<double>> points) {
  std::vector<std::vector<double>> rows;
  for (const auto& p : points) rows.emplace_back(p);
  *this = from_rows(rows);
}

VertexSet VertexSet::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return VertexSet();
  const std::size_t dim = rows.front().size();
  Eigen::MatrixXd m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != dim) {
      throw ContractViolation("vpolytope.VertexSet",
                              "point " + std::to_string(i) + " has " +
                                  std::to_string(rows[i].size()) + " coordinates, expected " +
                                  std::to_string(dim));
    }
    for (std::size_t c = 0; c < dim; ++c) {
      m(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(i)) = rows[i][c];
    }
  }
  return VertexSet(std::move(m));
}

VertexSet VertexSet::select(const std::vector<std::size_t>& indices) const {
  Eigen::MatrixXd m(points_.rows(), static_cast<Eigen::Index>(indices.size()));
  for (std::size_t i = 0; i < indices.size(); ++i) {
    m.col(static_cast<Eigen::Index>(i)) = points_.col(static_cast<Eigen::Index>(indices[i]));
  }
  return VertexSet(std::move(m));
}

VertexSet VertexSet::with_appended(const Eigen::MatrixXd& extra) const {
  if (extra.cols() == 0) return *this;
  if (empty()) return VertexSet(extra);
  if (extra.rows() != points_.rows()) {
    throw ContractViolation("vpolytope.VertexSet", "appended points have the wrong dimension");
  }
  Eigen::MatrixXd m(points_.rows(), points_.cols() + extra.cols());
  m << points_, extra;
  return VertexSet(std::move(m));
}

VertexSet VertexSet::with_appended(const VertexSet& extra) const {
  return with_appended(extra.points());
}

VertexSet affine_map(const VertexSet& v, const LayerParams& layer) {
  if (layer.weights.rows() != layer.biases.size()) {
    throw ContractViolation("vpolytope.affine_map", "weights have " +
                                                        std::to_string(layer.weights.rows()) +
                                                        " rows but biases have " +
                                                        std::to_string(layer.biases.size()));
  }
  if (layer.input_dim() != v.dim()) {
    throw ContractViolation("vpolytope.affine_map",
                            "weights expect dimension " + std::to_string(layer.input_dim()) +
                                ", vertex set has " + std::to_string(v.dim()));
  }
  Eigen::MatrixXd out = layer.weights * v.points();
  out.colwise() += layer.biases;
  return VertexSet(std::move(out));
}

VertexSet relu_map(const VertexSet& v) {
  // max(0.0, -0.0) may return -0.0, hence the explicit branch.
  Eigen::MatrixXd out = v.points().unaryExpr([](double x) { return x > 0.0 ? x : 0.0; });
  return VertexSet(std::move(out));
}

VertexSet dedup_vertices(const VertexSet& v, double tol) {
  if (tol < 0.0) throw ContractViolation("vpolytope.dedup_vertices", "tol must be >= 0");
  const auto& p = v.points();
  // Sweep along a fixed unit direction. |u.x - u.y| <= |x - y|, so every kept
  // point within tol lies in the key window. A generic direction keeps the
  // windows small even when many points share coordinates (e.g. after ReLU).
  Eigen::VectorXd u(p.rows());
  for (Eigen::Index k = 0; k < u.size(); ++k) {
    u(k) = 0.5 + std::fmod(0.6180339887498949 * static_cast<double>(k + 1), 1.0);
  }
  if (u.size() > 0) u.normalize();
  std::multimap<double, std::size_t> kept_by_key;
  std::vector<std::size_t> kept;
  kept.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto col = p.col(static_cast<Eigen::Index>(i));
    const double key = u.dot(col);
    bool duplicate = false;
    for (auto it = kept_by_key.lower_bound(key - tol);
         it != kept_by_key.end() && it->first <= key + tol; ++it) {
      if ((p.col(static_cast<Eigen::Index>(it->second)) - col).norm() <= tol) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) {
      kept_by_key.emplace(key, i);
      kept.push_back(i);
    }
  }
  if (kept.size() == v.size()) return v;
  return v.select(kept);
}

VertexSet remove_internal_points(const VertexSet& v, double tol) {
  Executor sequential(1);
  return remove_internal_points(v, tol, sequential);
}

VertexSet remove_internal_points(const VertexSet& v, double tol, Executor& executor) {
  if (v.size() <= 1) return v;
  const HullOracle oracle(v.points(), tol);
  const std::size_t o = v.size();

  // A point outside conv(V \ {p}) stays outside the hull of any subset, so it
  // survives the sequential pass regardless of order. Certifying those first
  // leaves the sequential pass with the few real candidates.
  std::vector<char> extreme(o, 0);
  executor.parallel_for(o, [&](std::size_t k) {
    executor.checkpoint();
    const std::size_t zeroed[1] = {k};
    extreme[k] = oracle.contains_without(v.point(k), zeroed) ? 0 : 1;
  });

  std::vector<char> removed(o, 0);
  for (std::size_t k = 0; k < o; ++k) {
    if (extreme[k]) continue;
    executor.checkpoint();
    removed[k] = 1;
    if (!oracle.contains(v.point(k), removed)) removed[k] = 0;
  }

  std::vector<std::size_t> keep;
  for (std::size_t k = 0; k < o; ++k) {
    if (!removed[k]) keep.push_back(k);
  }
  if (keep.size() == o) return v;
  return v.select(keep);
}

bool contains_point(const VertexSet& v, const Eigen::VectorXd& x, double tol) {
  if (static_cast<std::size_t>(x.size()) != v.dim()) {
    throw ContractViolation("vpolytope.contains_point",
                            "point dimension " + std::to_string(x.size()) +
                                " != polytope dimension " + std::to_string(v.dim()));
  }
  if (v.empty()) return false;
  return HullOracle(v.points(), tol).contains(x);
}

VertexSet reduce_to_vertices(const VertexSet& v, const Tolerances& tol, Executor& executor) {
  return remove_internal_points(dedup_vertices(v, tol.dedup), tol.lp, executor);
}

}  // namespace vreach
