#pragma once

namespace vreach {

struct Tolerances {
  double lp = 1e-7;      // residual tolerance of every convex-combination query
  double sign = 1e-9;    // |x| <= sign counts as zero
  double dedup = 1e-9;   // Euclidean distance under which two points coincide
};

}  // namespace vreach
