#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "vreach/tolerances.hpp"
#include "vreach/vertex_set.hpp"

namespace vreach {

class Executor;

/// Orthant index q = sum_i b_i 2^i over a binary vector b (bit i set iff
/// coordinate i is nonnegative in that orthant). Any width; ordered as the
/// unsigned integer q.
class OrthantKey {
 public:
  OrthantKey() = default;
  explicit OrthantKey(std::size_t width);

  std::size_t width() const noexcept { return width_; }
  bool bit(std::size_t i) const;
  void set_bit(std::size_t i, bool value);

  /// Throws ContractViolation if q does not fit in 64 bits.
  std::uint64_t value() const;
  /// Decimal when q fits in 64 bits, "0x..." hex otherwise.
  std::string to_string() const;

  friend bool operator==(const OrthantKey&, const OrthantKey&) = default;
  friend std::strong_ordering operator<=>(const OrthantKey& a, const OrthantKey& b);

 private:
  std::size_t width_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Nonempty per-orthant vertex sets, iterated in ascending key order.
using OrthantPartition = std::map<OrthantKey, VertexSet>;

/// Appends the origin when it lies in conv(V).
VertexSet origin_search(const VertexSet& v, double lp_tol);

/// Expands every 1/2 entry of b into both 0 and 1. Entries must be 0, 0.5 or 1.
/// Result is ordered by ascending array_position.
std::vector<std::vector<int>> zeros_verification(const std::vector<double>& b);

/// q = sum_i b_i 2^i (zero-based i).
OrthantKey array_position(const std::vector<int>& b);

/// Places every point into each orthant it belongs to: b = (sign(v) + 1) / 2,
/// zero coordinates expanded both ways. Throws LimitExceeded when the total
/// number of placements would pass `max_placements`.
OrthantPartition separate_per_orthant(const VertexSet& v, double sign_eps,
                                      std::size_t max_placements = std::size_t{1} << 20);

/// Groups consecutive parts d at a time and concatenates each group.
std::vector<VertexSet> merge_sets(const std::vector<VertexSet>& parts, std::size_t d);

/// Splits conv(V) into its intersections with the orthants it meets, cutting
/// by one coordinate hyperplane at a time. Every part has the same affine
/// dimension as V and lies in the closed orthant of its key; the union of the
/// part hulls is conv(V). V must be deduplicated extreme points.
OrthantPartition split_by_orthant(const VertexSet& v, const Tolerances& tol, Executor& executor);

/// Single-pass split: edges, all edge/hyperplane crossings, origin, then
/// separate_per_orthant. Exact when no face of conv(V) meets two or more
/// coordinate hyperplanes away from the origin (always true in 2-D).
OrthantPartition split_simultaneous(const VertexSet& v, const Tolerances& tol, Executor& executor,
                                    std::size_t max_placements = std::size_t{1} << 20);

}  // namespace vreach
