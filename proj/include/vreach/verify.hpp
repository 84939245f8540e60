#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "vreach/network.hpp"
#include "vreach/reach.hpp"
#include "vreach/vertex_set.hpp"

namespace vreach {

enum class Relation { less_equal, greater_equal };

/// Safe-output half-space: c . y <= bound (or >=).
struct OutputConstraint {
  Eigen::VectorXd coefficients;
  Relation relation = Relation::less_equal;
  double bound = 0.0;
};

/// Input box in raw units and a conjunction of safe-output constraints.
struct PropertySpec {
  Eigen::VectorXd input_lower;
  Eigen::VectorXd input_upper;
  std::vector<OutputConstraint> output_constraints;

  void validate() const;
};

/// Text form:
///   # comment
///   [input]
///   0: 55947.691 60760
///   ...
///   [output]
///   1 0 0 0 0 <= 1500
PropertySpec parse_property(std::string_view text);
PropertySpec load_property(const std::string& path);

enum class Status { holds, violated, unknown, timeout };

std::string to_string(Status s);

struct Verdict {
  Status status = Status::unknown;
  std::optional<Eigen::VectorXd> witness;  // output-space vertex; only when violated
  std::vector<LayerStats> layers;
  std::size_t output_sets = 0;
  double duration_seconds = 0.0;
};

/// The 2^n corners of a box; bit i of the corner index selects upper_i.
/// Degenerate coordinates collapse duplicates. Refuses n > 25.
VertexSet box_to_vertices(const Eigen::VectorXd& lower, const Eigen::VectorXd& upper);

/// max over vertices of c . v, which is the maximum over conv(V).
double max_linear(const VertexSet& v, const Eigen::VectorXd& c);
double min_linear(const VertexSet& v, const Eigen::VectorXd& c);

/// Checks every constraint on every polytope at its worst vertex. A failing
/// constraint is reported as violated (with that vertex) only when `exact` is
/// set and the excess is beyond tolerance; otherwise unknown.
Verdict check_property(const ReachSet& reach, const PropertySpec& spec, bool exact,
                       double tol = 1e-7);

struct RunOptions {
  Algorithm algorithm = Algorithm::epnm;
  std::size_t merge_size = 2;
  std::size_t workers = 1;
  double timeout_seconds = 86400.0;
  ReachOptions reach;
};

/// Full pipeline: normalize the box, enumerate corners, propagate, map the
/// outputs back to raw units and check the property.
Verdict verify(const Network& net, const PropertySpec& spec, const RunOptions& options);

}  // namespace vreach
