#include "vreach/verify.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "vreach/errors.hpp"
#include "vreach/executor.hpp"

namespace vreach {

namespace {

constexpr const char* kParse = "verify.parse_property";

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double parse_real(const std::string& token, std::size_t line) {
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (token.empty() || end != token.c_str() + token.size() || !std::isfinite(v)) {
    throw ParseError(kParse, line, "expected a number, found '" + token + "'");
  }
  return v;
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

bool within_bound(double value, const OutputConstraint& c) {
  return c.relation == Relation::less_equal ? value <= c.bound : value >= c.bound;
}

double excess(double value, const OutputConstraint& c) {
  return c.relation == Relation::less_equal ? value - c.bound : c.bound - value;
}

}  // namespace

std::string to_string(Status s) {
  switch (s) {
    case Status::holds:
      return "holds";
    case Status::violated:
      return "violated";
    case Status::unknown:
      return "unknown";
    case Status::timeout:
      return "timeout";
  }
  return "unknown";
}

void PropertySpec::validate() const {
  constexpr const char* where = "verify.PropertySpec";
  if (input_lower.size() == 0 || input_lower.size() != input_upper.size()) {
    throw ContractViolation(where, "input bounds must be nonempty and of equal length");
  }
  if ((input_lower.array() > input_upper.array()).any()) {
    throw ContractViolation(where, "input lower bound exceeds upper bound");
  }
  if (output_constraints.empty()) throw ContractViolation(where, "no output constraints");
  const auto m = output_constraints.front().coefficients.size();
  for (const auto& c : output_constraints) {
    if (c.coefficients.size() != m || m == 0) {
      throw ContractViolation(where, "output constraints disagree on the output dimension");
    }
  }
}

PropertySpec parse_property(std::string_view text) {
  enum class Section { none, input, output } section = Section::none;
  std::map<std::size_t, std::pair<double, double>> bounds;
  PropertySpec spec;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line == "[input]") {
      section = Section::input;
      continue;
    }
    if (line == "[output]") {
      section = Section::output;
      continue;
    }
    if (line.front() == '[') throw ParseError(kParse, line_no, "unknown section " + line);

    if (section == Section::input) {
      const auto colon = line.find(':');
      if (colon == std::string::npos) throw ParseError(kParse, line_no, "expected 'index: lower upper'");
      const std::string idx = trim(line.substr(0, colon));
      const auto index = parse_real(idx, line_no);
      if (index < 0 || index != std::floor(index)) {
        throw ParseError(kParse, line_no, "input index must be a nonnegative integer");
      }
      const auto values = split_ws(line.substr(colon + 1));
      if (values.size() != 2) throw ParseError(kParse, line_no, "expected 'index: lower upper'");
      const double lo = parse_real(values[0], line_no);
      const double hi = parse_real(values[1], line_no);
      if (lo > hi) throw ParseError(kParse, line_no, "lower bound exceeds upper bound");
      if (!bounds.emplace(static_cast<std::size_t>(index), std::make_pair(lo, hi)).second) {
        throw ParseError(kParse, line_no, "input " + idx + " given twice");
      }
    } else if (section == Section::output) {
      const auto tokens = split_ws(line);
      if (tokens.size() < 3) throw ParseError(kParse, line_no, "expected 'c_0 ... c_m-1 <= b'");
      const std::string& rel = tokens[tokens.size() - 2];
      OutputConstraint c;
      if (rel == "<=") {
        c.relation = Relation::less_equal;
      } else if (rel == ">=") {
        c.relation = Relation::greater_equal;
      } else {
        throw ParseError(kParse, line_no, "relation must be <= or >=, found '" + rel + "'");
      }
      c.bound = parse_real(tokens.back(), line_no);
      c.coefficients.resize(static_cast<Eigen::Index>(tokens.size() - 2));
      for (std::size_t i = 0; i + 2 < tokens.size(); ++i) {
        c.coefficients(static_cast<Eigen::Index>(i)) = parse_real(tokens[i], line_no);
      }
      if (!spec.output_constraints.empty() &&
          spec.output_constraints.front().coefficients.size() != c.coefficients.size()) {
        throw ParseError(kParse, line_no, "coefficient count differs from earlier constraints");
      }
      spec.output_constraints.push_back(std::move(c));
    } else {
      throw ParseError(kParse, line_no, "content outside [input]/[output] sections");
    }
  }

  if (bounds.empty()) throw ParseError(kParse, line_no, "missing [input] section");
  if (spec.output_constraints.empty()) throw ParseError(kParse, line_no, "missing [output] section");
  const std::size_t n = bounds.rbegin()->first + 1;
  if (bounds.size() != n) throw ParseError(kParse, line_no, "input indices must cover 0.." + std::to_string(n - 1));
  spec.input_lower.resize(static_cast<Eigen::Index>(n));
  spec.input_upper.resize(static_cast<Eigen::Index>(n));
  for (const auto& [i, b] : bounds) {
    spec.input_lower(static_cast<Eigen::Index>(i)) = b.first;
    spec.input_upper(static_cast<Eigen::Index>(i)) = b.second;
  }
  return spec;
}

PropertySpec load_property(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError("verify.load_property", "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << file.rdbuf();
  return parse_property(buf.str());
}

VertexSet box_to_vertices(const Eigen::VectorXd& lower, const Eigen::VectorXd& upper) {
  constexpr const char* where = "verify.box_to_vertices";
  if (lower.size() != upper.size() || lower.size() == 0) {
    throw ContractViolation(where, "bounds must be nonempty and of equal length");
  }
  if ((lower.array() > upper.array()).any()) throw ContractViolation(where, "lower > upper");
  const auto n = lower.size();
  if (n > 25) {
    throw LimitExceeded(where, std::to_string(n) +
                                   "-dimensional box has too many corners; build the input "
                                   "V-polytope programmatically instead");
  }
  const std::size_t corners = std::size_t{1} << n;
  Eigen::MatrixXd pts(n, static_cast<Eigen::Index>(corners));
  for (std::size_t c = 0; c < corners; ++c) {
    for (Eigen::Index i = 0; i < n; ++i) {
      pts(i, static_cast<Eigen::Index>(c)) = (c >> i) & 1U ? upper(i) : lower(i);
    }
  }
  return dedup_vertices(VertexSet(std::move(pts)), 0.0);
}

double max_linear(const VertexSet& v, const Eigen::VectorXd& c) {
  if (static_cast<std::size_t>(c.size()) != v.dim() || v.empty()) {
    throw ContractViolation("verify.max_linear", "dimension mismatch or empty vertex set");
  }
  return (c.transpose() * v.points()).maxCoeff();
}

double min_linear(const VertexSet& v, const Eigen::VectorXd& c) {
  if (static_cast<std::size_t>(c.size()) != v.dim() || v.empty()) {
    throw ContractViolation("verify.min_linear", "dimension mismatch or empty vertex set");
  }
  return (c.transpose() * v.points()).minCoeff();
}

Verdict check_property(const ReachSet& reach, const PropertySpec& spec, bool exact, double tol) {
  spec.validate();
  Verdict verdict;
  verdict.layers = reach.layers;
  verdict.output_sets = reach.polytopes.size();
  if (!reach.complete) {
    verdict.status = Status::timeout;
    return verdict;
  }
  bool all_hold = true;
  double worst_excess = 0.0;
  for (const auto& poly : reach.polytopes) {
    for (const auto& c : spec.output_constraints) {
      if (static_cast<std::size_t>(c.coefficients.size()) != poly.dim()) {
        throw ContractViolation("verify.check_property",
                                "constraint has " + std::to_string(c.coefficients.size()) +
                                    " coefficients, reachable set has dimension " +
                                    std::to_string(poly.dim()));
      }
      const Eigen::RowVectorXd values = c.coefficients.transpose() * poly.points();
      for (Eigen::Index i = 0; i < values.size(); ++i) {
        if (within_bound(values(i), c)) continue;
        all_hold = false;
        const double e = excess(values(i), c);
        if (e > tol * std::max(1.0, std::abs(c.bound)) && e > worst_excess) {
          worst_excess = e;
          verdict.witness = poly.point(static_cast<std::size_t>(i));
        }
      }
    }
  }
  if (all_hold) {
    verdict.status = Status::holds;
  } else if (exact && verdict.witness) {
    verdict.status = Status::violated;
  } else {
    verdict.status = Status::unknown;
    verdict.witness.reset();
  }
  return verdict;
}

Verdict verify(const Network& net, const PropertySpec& spec, const RunOptions& options) {
  spec.validate();
  if (static_cast<std::size_t>(spec.input_lower.size()) != net.input_dim()) {
    throw ContractViolation("verify", "property has " + std::to_string(spec.input_lower.size()) +
                                          " inputs, network has " + std::to_string(net.input_dim()));
  }
  if (static_cast<std::size_t>(spec.output_constraints.front().coefficients.size()) !=
      net.output_dim()) {
    throw ContractViolation("verify", "property constrains " +
                                          std::to_string(spec.output_constraints.front().coefficients.size()) +
                                          " outputs, network has " + std::to_string(net.output_dim()));
  }
  if (!(options.timeout_seconds > 0.0)) throw ContractViolation("verify", "timeout must be > 0");

  const auto start = std::chrono::steady_clock::now();
  Executor executor(options.workers);
  executor.cancel_token().set_deadline(
      start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                  std::chrono::duration<double>(options.timeout_seconds)));

  const Eigen::VectorXd lo = normalize_input(net, spec.input_lower);
  const Eigen::VectorXd hi = normalize_input(net, spec.input_upper);
  const VertexSet input = box_to_vertices(lo.cwiseMin(hi), lo.cwiseMax(hi));

  ReachSet reached = reach(options.algorithm, input, net, options.merge_size, options.reach, executor);
  for (auto& p : reached.polytopes) p = denormalize_output(net, p);

  const bool exact = options.algorithm == Algorithm::epnm ||
                     (options.algorithm == Algorithm::papnm && options.merge_size == 1);
  Verdict verdict = check_property(reached, spec, exact, options.reach.tol.lp);
  verdict.duration_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return verdict;
}

}  // namespace vreach
