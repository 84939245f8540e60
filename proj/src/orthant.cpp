#include "vreach/orthant.hpp"

#include <algorithm>
#include <cstdio>

#include "vreach/errors.hpp"
#include "vreach/executor.hpp"
#include "vreach/skeleton.hpp"

namespace vreach {

OrthantKey::OrthantKey(std::size_t width) : width_(width), words_((width + 63) / 64, 0) {}

bool OrthantKey::bit(std::size_t i) const {
  if (i >= width_) throw ContractViolation("orthant.OrthantKey", "bit index out of range");
  return (words_[i / 64] >> (i % 64)) & 1U;
}

void OrthantKey::set_bit(std::size_t i, bool value) {
  if (i >= width_) throw ContractViolation("orthant.OrthantKey", "bit index out of range");
  const std::uint64_t mask = std::uint64_t{1} << (i % 64);
  if (value) {
    words_[i / 64] |= mask;
  } else {
    words_[i / 64] &= ~mask;
  }
}

std::uint64_t OrthantKey::value() const {
  for (std::size_t w = 1; w < words_.size(); ++w) {
    if (words_[w] != 0) throw ContractViolation("orthant.OrthantKey", "key wider than 64 bits");
  }
  return words_.empty() ? 0 : words_[0];
}

std::string OrthantKey::to_string() const {
  bool wide = false;
  for (std::size_t w = 1; w < words_.size(); ++w) wide = wide || words_[w] != 0;
  if (!wide) return std::to_string(words_.empty() ? 0 : words_[0]);
  std::string out = "0x";
  bool leading = true;
  for (std::size_t w = words_.size(); w-- > 0;) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(words_[w]));
    if (leading) {
      const std::string s(buf);
      const auto first = s.find_first_not_of('0');
      if (first == std::string::npos) continue;
      out += s.substr(first);
      leading = false;
    } else {
      out += buf;
    }
  }
  return out;
}

std::strong_ordering operator<=>(const OrthantKey& a, const OrthantKey& b) {
  if (auto c = a.width_ <=> b.width_; c != 0) return c;
  for (std::size_t w = a.words_.size(); w-- > 0;) {
    if (auto c = a.words_[w] <=> b.words_[w]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

VertexSet origin_search(const VertexSet& v, double lp_tol) {
  if (v.empty()) return v;
  const Eigen::VectorXd origin = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(v.dim()));
  if (!contains_point(v, origin, lp_tol)) return v;
  return v.with_appended(Eigen::MatrixXd(origin));
}

std::vector<std::vector<int>> zeros_verification(const std::vector<double>& b) {
  std::vector<std::vector<int>> out(1, std::vector<int>(b.size(), 0));
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i] == 0.0 || b[i] == 1.0) {
      for (auto& a : out) a[i] = static_cast<int>(b[i]);
    } else if (b[i] == 0.5) {
      const std::size_t n = out.size();
      for (std::size_t c = 0; c < n; ++c) {
        auto copy = out[c];
        copy[i] = 1;
        out.push_back(std::move(copy));
      }
    } else {
      throw ContractViolation("orthant.zeros_verification",
                              "entry " + std::to_string(i) + " is not 0, 1/2 or 1");
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return array_position(x) < array_position(y);
  });
  return out;
}

OrthantKey array_position(const std::vector<int>& b) {
  OrthantKey key(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i] != 0 && b[i] != 1) {
      throw ContractViolation("orthant.array_position", "entries must be 0 or 1");
    }
    key.set_bit(i, b[i] == 1);
  }
  return key;
}

OrthantPartition separate_per_orthant(const VertexSet& v, double sign_eps,
                                      std::size_t max_placements) {
  std::map<OrthantKey, std::vector<std::size_t>> members;
  std::size_t placements = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const SignVector s = sign_of(v.point(i), sign_eps);
    std::vector<double> b(s.size());
    std::size_t zeros = 0;
    for (std::size_t k = 0; k < s.size(); ++k) {
      b[k] = 0.5 * (s[k] + 1);
      zeros += s[k] == 0;
    }
    if (zeros >= 63 || placements + (std::size_t{1} << zeros) > max_placements) {
      throw LimitExceeded("orthant.separate_per_orthant",
                          "point " + std::to_string(i) + " has " + std::to_string(zeros) +
                              " zero coordinates; placements would exceed " +
                              std::to_string(max_placements));
    }
    placements += std::size_t{1} << zeros;
    for (const auto& resolved : zeros_verification(b)) {
      members[array_position(resolved)].push_back(i);
    }
  }
  OrthantPartition parts;
  for (auto& [key, idx] : members) parts.emplace(key, v.select(idx));
  return parts;
}

std::vector<VertexSet> merge_sets(const std::vector<VertexSet>& parts, std::size_t d) {
  if (d == 0) throw ContractViolation("orthant.merge_sets", "group size must be >= 1");
  std::vector<VertexSet> out;
  out.reserve((parts.size() + d - 1) / d);
  for (std::size_t start = 0; start < parts.size(); start += d) {
    VertexSet group = parts[start];
    for (std::size_t j = start + 1; j < std::min(start + d, parts.size()); ++j) {
      group = group.with_appended(parts[j]);
    }
    out.push_back(std::move(group));
  }
  return out;
}

namespace {

// Key of a part that lies in one closed orthant. Coordinates that are zero on
// every point resolve to the nonnegative side.
OrthantKey key_of_part(const VertexSet& part, double eps) {
  std::vector<int> b(part.dim(), 1);
  for (std::size_t k = 0; k < part.dim(); ++k) {
    const auto row = part.points().row(static_cast<Eigen::Index>(k));
    if (row.maxCoeff() <= eps && row.minCoeff() < -eps) b[k] = 0;
  }
  return array_position(b);
}

struct SplitOutcome {
  std::vector<VertexSet> pieces;  // one (untouched) or two (nonnegative side first)
};

SplitOutcome split_on(const VertexSet& part, std::size_t k, const Tolerances& tol,
                      Executor& executor) {
  const double eps = tol.sign;
  const auto row = part.points().row(static_cast<Eigen::Index>(k));
  if (!(row.maxCoeff() > eps && row.minCoeff() < -eps)) return {{part}};

  std::vector<int> side(part.size());
  for (std::size_t i = 0; i < part.size(); ++i) {
    const double x = row(static_cast<Eigen::Index>(i));
    side[i] = x > eps ? 1 : (x < -eps ? -1 : 0);
  }
  const EdgeSkeleton crossing = identify_edges(
      part, tol.lp, executor, [&](std::size_t i, std::size_t j) { return side[i] * side[j] < 0; });
  const VertexSet with_cuts = intersect_edges(part, crossing, eps, {k});

  std::vector<std::size_t> upper;
  std::vector<std::size_t> lower;
  Eigen::MatrixXd pts = with_cuts.points();
  for (std::size_t i = 0; i < with_cuts.size(); ++i) {
    double& x = pts(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i));
    if (std::abs(x) <= eps) x = 0.0;
    if (x >= 0.0) upper.push_back(i);
    if (x <= 0.0) lower.push_back(i);
  }
  const VertexSet snapped(std::move(pts));
  return {{reduce_to_vertices(snapped.select(upper), tol, executor),
           reduce_to_vertices(snapped.select(lower), tol, executor)}};
}

}  // namespace

OrthantPartition split_by_orthant(const VertexSet& v, const Tolerances& tol, Executor& executor) {
  std::vector<VertexSet> parts{v};
  for (std::size_t k = 0; k < v.dim(); ++k) {
    executor.checkpoint();
    std::vector<SplitOutcome> outcomes(parts.size());
    executor.parallel_for(parts.size(), [&](std::size_t p) {
      outcomes[p] = split_on(parts[p], k, tol, executor);
    });
    std::vector<VertexSet> next;
    for (auto& o : outcomes) {
      for (auto& piece : o.pieces) next.push_back(std::move(piece));
    }
    parts = std::move(next);
  }

  OrthantPartition out;
  for (auto& part : parts) {
    OrthantKey key = key_of_part(part, tol.sign);
    auto [it, inserted] = out.emplace(key, part);
    if (!inserted) {
      // Only reachable through tolerance noise; keep the union.
      it->second = reduce_to_vertices(it->second.with_appended(part), tol, executor);
    }
  }
  return out;
}

OrthantPartition split_simultaneous(const VertexSet& v, const Tolerances& tol, Executor& executor,
                                    std::size_t max_placements) {
  const EdgeSkeleton edges = identify_edges(v, tol.lp, executor);
  VertexSet augmented = intersect_edges(v, edges, tol.sign);
  augmented = origin_search(augmented, tol.lp);
  return separate_per_orthant(augmented, tol.sign, max_placements);
}

}  // namespace vreach
