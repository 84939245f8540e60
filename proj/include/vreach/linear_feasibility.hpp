#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace vreach {

/// Does `target` lie in the convex hull of the generator columns, using only
/// generators whose index is not in `zeroed_indices`?
///
/// Formally: is there a lambda >= 0 with sum(lambda) = 1, lambda_i = 0 for every
/// zeroed i, and generators * lambda = target.
struct FeasibilityQuery {
  Eigen::MatrixXd generators;  // n x o, one generator per column
  Eigen::VectorXd target;      // n
  std::vector<std::size_t> zeroed_indices;
};

bool convex_combination_exists(const FeasibilityQuery& query, double tol);

/// Convex-combination oracle for a fixed generator matrix.
///
/// The generators are projected once onto their affine hull, so each query is a
/// phase-1 LP with (rank + 1) rows instead of (n + 1). Queries are const and
/// can run concurrently.
class HullOracle {
 public:
  HullOracle(const Eigen::MatrixXd& generators, double tol);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(dim_); }
  std::size_t size() const noexcept { return static_cast<std::size_t>(reduced_.cols()); }
  std::size_t rank() const noexcept { return static_cast<std::size_t>(reduced_.rows()); }

  /// `excluded[i] != 0` forces lambda_i = 0. An empty span excludes nothing.
  bool contains(const Eigen::Ref<const Eigen::VectorXd>& target,
                std::span<const char> excluded = {}) const;

  bool contains_without(const Eigen::Ref<const Eigen::VectorXd>& target,
                        std::span<const std::size_t> zeroed) const;

 private:
  Eigen::Index dim_ = 0;
  double tol_ = 0.0;
  double scale_ = 1.0;
  Eigen::VectorXd center_;
  Eigen::MatrixXd basis_;    // n x r, orthonormal columns
  Eigen::MatrixXd reduced_;  // r x o, scaled coordinates in the basis
};

namespace detail {

/// Phase-1 simplex on {A x = b, x >= 0}. Returns the minimal L1 infeasibility
/// (sum of artificial variables), or stops early with the current value once
/// it is <= stop_below. Throws SolverFailure on iteration-limit or numerical
/// breakdown.
double phase_one_residual(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                          double stop_below = 0.0);

}  // namespace detail

}  // namespace vreach
