#include "vreach/linear_feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "vreach/errors.hpp"

namespace vreach {

namespace detail {

namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kCostTol = 1e-11;
constexpr int kDegenerateRunBeforeBland = 50;

}  // namespace

// Dense tableau, artificial basis. Columns: [x (k) | artificials (m) | rhs].
// Row m holds the phase-1 reduced costs; its rhs entry is -objective.
double phase_one_residual(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, double stop_below) {
  const Eigen::Index m = a.rows();
  const Eigen::Index k = a.cols();
  if (b.size() != m) {
    throw ContractViolation("linear_feasibility.phase_one", "rhs length mismatch");
  }
  if (m == 0) return 0.0;
  if (k == 0) return b.cwiseAbs().sum();

  const Eigen::Index cols = k + m + 1;
  const Eigen::Index rhs = cols - 1;
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m + 1, cols);
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) {
    const double sign = b(i) < 0.0 ? -1.0 : 1.0;
    t.row(i).head(k) = sign * a.row(i);
    t(i, k + i) = 1.0;
    t(i, rhs) = sign * b(i);
    basis[static_cast<std::size_t>(i)] = k + i;
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    t.row(m).head(k) -= t.row(i).head(k);
    t(m, rhs) -= t(i, rhs);
  }

  const long max_iterations = 20000 + 50L * static_cast<long>(m + k);
  int degenerate_run = 0;
  bool bland = false;
  for (long iter = 0;; ++iter) {
    if (iter > max_iterations) {
      throw SolverFailure("linear_feasibility.phase_one",
                          "iteration limit reached (" + std::to_string(max_iterations) + ")");
    }
    // Once stalling is seen, stay with Bland's rule: switching back can cycle
    // through pivots whose progress is only rounding noise.
    bland = bland || degenerate_run >= kDegenerateRunBeforeBland;
    if (-t(m, rhs) <= stop_below) break;

    Eigen::Index enter = -1;
    double best = -kCostTol;
    for (Eigen::Index j = 0; j < k + m; ++j) {
      const double c = t(m, j);
      if (c < best) {
        enter = j;
        if (bland) break;
        best = c;
      }
    }
    if (enter < 0) break;

    Eigen::Index leave = -1;
    double ratio = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < m; ++i) {
      const double p = t(i, enter);
      if (p <= kPivotTol) continue;
      const double r = t(i, rhs) / p;
      if (r < ratio - 1e-14 ||
          (r <= ratio + 1e-14 && leave >= 0 &&
           basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
        ratio = r;
        leave = i;
      }
    }
    if (leave < 0) {
      // Phase 1 is bounded below by zero; an unbounded ray means the tableau
      // has lost precision.
      throw SolverFailure("linear_feasibility.phase_one", "unbounded phase-1 direction");
    }
    degenerate_run = ratio <= 1e-12 ? degenerate_run + 1 : 0;

    const double pivot = t(leave, enter);
    t.row(leave) /= pivot;
    for (Eigen::Index i = 0; i <= m; ++i) {
      if (i == leave) continue;
      const double f = t(i, enter);
      if (f != 0.0) t.row(i) -= f * t.row(leave);
    }
    // Basic values are nonnegative; anything below zero is rounding.
    for (Eigen::Index i = 0; i < m; ++i) t(i, rhs) = std::max(0.0, t(i, rhs));
    basis[static_cast<std::size_t>(leave)] = enter;
  }

  const double objective = -t(m, rhs);
  if (!std::isfinite(objective)) {
    throw SolverFailure("linear_feasibility.phase_one", "non-finite objective");
  }
  return std::max(0.0, objective);
}

}  // namespace detail

HullOracle::HullOracle(const Eigen::MatrixXd& generators, double tol)
    : dim_(generators.rows()), tol_(tol) {
  if (generators.rows() < 1 || generators.cols() < 1) {
    throw ContractViolation("linear_feasibility.convex_combination_exists",
                            "need at least one generator of dimension >= 1");
  }
  if (!(tol > 0.0)) {
    throw ContractViolation("linear_feasibility.convex_combination_exists", "tol must be > 0");
  }
  if (!generators.allFinite()) {
    throw ContractViolation("linear_feasibility.convex_combination_exists",
                            "non-finite generator coordinate");
  }
  center_ = generators.rowwise().mean();
  Eigen::MatrixXd centered = generators.colwise() - center_;
  scale_ = std::max(1.0, centered.cwiseAbs().maxCoeff());
  centered /= scale_;

  // Directions whose singular value is below this contribute less than a
  // hundredth of the residual tolerance to any generator.
  const double rank_tol = 1e-2 * tol_;
  Eigen::Index rank = 0;
  Eigen::MatrixXd u;
  if (centered.cols() > 1) {
    // BDCSVD returns NaNs on some well-conditioned inputs in Eigen 3.4.0.
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    while (rank < sv.size() && sv(rank) > rank_tol) ++rank;
    u = svd.matrixU().leftCols(rank);
  }
  basis_ = u;
  reduced_ = rank > 0 ? Eigen::MatrixXd(basis_.transpose() * centered)
                      : Eigen::MatrixXd(0, generators.cols());
  if (!basis_.allFinite() || !reduced_.allFinite()) {
    throw SolverFailure("linear_feasibility.convex_combination_exists",
                        "affine-hull factorization produced non-finite values");
  }
}

bool HullOracle::contains(const Eigen::Ref<const Eigen::VectorXd>& target,
                          std::span<const char> excluded) const {
  if (target.size() != dim_) {
    throw ContractViolation("linear_feasibility.convex_combination_exists",
                            "target dimension " + std::to_string(target.size()) +
                                " != generator dimension " + std::to_string(dim_));
  }
  if (!excluded.empty() && excluded.size() != size()) {
    throw ContractViolation("linear_feasibility.convex_combination_exists",
                            "exclusion mask length mismatch");
  }
  const Eigen::VectorXd shifted = (target - center_) / scale_;
  const Eigen::Index r = reduced_.rows();
  Eigen::VectorXd coords = r > 0 ? Eigen::VectorXd(basis_.transpose() * shifted)
                                 : Eigen::VectorXd(0);
  const Eigen::VectorXd off_hull = r > 0 ? Eigen::VectorXd(shifted - basis_ * coords) : shifted;
  if (off_hull.cwiseAbs().maxCoeff() > tol_) return false;

  std::vector<Eigen::Index> active;
  active.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) {
    if (excluded.empty() || excluded[i] == 0) active.push_back(static_cast<Eigen::Index>(i));
  }
  if (active.empty()) return false;
  if (r == 0) return true;

  // Cheap rejections and acceptances before the LP.
  Eigen::VectorXd lo = Eigen::VectorXd::Constant(r, std::numeric_limits<double>::infinity());
  Eigen::VectorXd hi = -lo;
  for (Eigen::Index j : active) {
    const auto col = reduced_.col(j);
    lo = lo.cwiseMin(col);
    hi = hi.cwiseMax(col);
    if ((col - coords).cwiseAbs().maxCoeff() <= tol_) return true;
  }
  for (Eigen::Index d = 0; d < r; ++d) {
    if (coords(d) < lo(d) - tol_ || coords(d) > hi(d) + tol_) return false;
  }

  Eigen::MatrixXd a(r + 1, static_cast<Eigen::Index>(active.size()));
  for (std::size_t c = 0; c < active.size(); ++c) {
    a.col(static_cast<Eigen::Index>(c)).head(r) = reduced_.col(active[c]);
    a(r, static_cast<Eigen::Index>(c)) = 1.0;
  }
  Eigen::VectorXd b(r + 1);
  b.head(r) = coords;
  b(r) = 1.0;
  return detail::phase_one_residual(a, b, 0.5 * tol_) <= tol_;
}

bool HullOracle::contains_without(const Eigen::Ref<const Eigen::VectorXd>& target,
                                  std::span<const std::size_t> zeroed) const {
  std::vector<char> mask(size(), 0);
  for (std::size_t i : zeroed) {
    if (i >= size()) {
      throw ContractViolation("linear_feasibility.convex_combination_exists",
                              "zeroed index " + std::to_string(i) + " out of range");
    }
    mask[i] = 1;
  }
  return contains(target, mask);
}

bool convex_combination_exists(const FeasibilityQuery& query, double tol) {
  HullOracle oracle(query.generators, tol);
  return oracle.contains_without(query.target, query.zeroed_indices);
}

}  // namespace vreach
