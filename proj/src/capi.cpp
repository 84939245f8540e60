#include "vreach/vreach.h"

#include <algorithm>
#include <cmath>
#include <new>
#include <string>

#include "vreach/errors.hpp"
#include "vreach/executor.hpp"
#include "vreach/network.hpp"
#include "vreach/report.hpp"
#include "vreach/verify.hpp"

struct vreach_network {
  vreach::Network net;
};

struct vreach_property {
  vreach::PropertySpec spec;
};

struct vreach_options {
  vreach::RunOptions run;
};

struct vreach_result {
  vreach::Verdict verdict;
  std::string json;
  std::string summary;
};

namespace {

thread_local std::string last_error;

vreach_error fail(vreach_error code, const std::string& message) {
  last_error = message;
  return code;
}

// Runs fn, mapping exceptions to error codes.
template <class Fn>
vreach_error guarded(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return VREACH_OK;
  } catch (const vreach::ParseError& e) {
    return fail(VREACH_E_PARSE, e.what());
  } catch (const vreach::IoError& e) {
    return fail(VREACH_E_IO, e.what());
  } catch (const vreach::SolverFailure& e) {
    return fail(VREACH_E_SOLVER, e.what());
  } catch (const vreach::LimitExceeded& e) {
    return fail(VREACH_E_LIMIT, e.what());
  } catch (const vreach::ContractViolation& e) {
    return fail(VREACH_E_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(VREACH_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(VREACH_E_INTERNAL, e.what());
  } catch (...) {
    return fail(VREACH_E_INTERNAL, "unknown error");
  }
}

vreach_error null_argument(const char* fn) {
  return fail(VREACH_E_ARGUMENT, std::string(fn) + ": null argument");
}

}  // namespace

extern "C" {

const char* vreach_version(void) { return "0.1.0"; }

const char* vreach_last_error(void) { return last_error.c_str(); }

vreach_error vreach_network_load(const char* path, vreach_network** out) {
  if (!path || !out) return null_argument("vreach_network_load");
  *out = nullptr;
  return guarded([&] { *out = new vreach_network{vreach::load_nnet(path)}; });
}

vreach_error vreach_network_parse(const char* text, size_t length, vreach_network** out) {
  if (!text || !out) return null_argument("vreach_network_parse");
  *out = nullptr;
  return guarded([&] { *out = new vreach_network{vreach::parse_nnet(std::string_view(text, length))}; });
}

size_t vreach_network_input_dim(const vreach_network* net) { return net ? net->net.input_dim() : 0; }

size_t vreach_network_output_dim(const vreach_network* net) { return net ? net->net.output_dim() : 0; }

size_t vreach_network_layer_count(const vreach_network* net) {
  return net ? net->net.layer_count() : 0;
}

vreach_error vreach_network_evaluate(const vreach_network* net, const double* input,
                                     size_t input_len, double* output, size_t output_len,
                                     int raw) {
  if (!net || !input || !output) return null_argument("vreach_network_evaluate");
  if (input_len != net->net.input_dim() || output_len != net->net.output_dim()) {
    return fail(VREACH_E_ARGUMENT, "vreach_network_evaluate: buffer length mismatch");
  }
  return guarded([&] {
    const Eigen::VectorXd x =
        Eigen::Map<const Eigen::VectorXd>(input, static_cast<Eigen::Index>(input_len));
    const Eigen::VectorXd y = vreach::forward(net->net, x, raw == 0);
    std::copy(y.data(), y.data() + y.size(), output);
  });
}

void vreach_network_free(vreach_network* net) { delete net; }

vreach_error vreach_property_load(const char* path, vreach_property** out) {
  if (!path || !out) return null_argument("vreach_property_load");
  *out = nullptr;
  return guarded([&] { *out = new vreach_property{vreach::load_property(path)}; });
}

vreach_error vreach_property_parse(const char* text, size_t length, vreach_property** out) {
  if (!text || !out) return null_argument("vreach_property_parse");
  *out = nullptr;
  return guarded(
      [&] { *out = new vreach_property{vreach::parse_property(std::string_view(text, length))}; });
}

size_t vreach_property_input_dim(const vreach_property* prop) {
  return prop ? static_cast<size_t>(prop->spec.input_lower.size()) : 0;
}

void vreach_property_free(vreach_property* prop) { delete prop; }

vreach_options* vreach_options_create(void) {
  auto* opts = new (std::nothrow) vreach_options;
  if (!opts) fail(VREACH_E_INTERNAL, "out of memory");
  return opts;
}

void vreach_options_free(vreach_options* opts) { delete opts; }

vreach_error vreach_options_set_algorithm(vreach_options* opts, const char* name) {
  if (!opts || !name) return null_argument("vreach_options_set_algorithm");
  return guarded([&] { opts->run.algorithm = vreach::algorithm_from_string(name); });
}

vreach_error vreach_options_set_merge_size(vreach_options* opts, size_t d) {
  if (!opts) return null_argument("vreach_options_set_merge_size");
  if (d == 0) return fail(VREACH_E_ARGUMENT, "vreach_options_set_merge_size: d must be >= 1");
  opts->run.merge_size = d;
  return VREACH_OK;
}

vreach_error vreach_options_set_workers(vreach_options* opts, size_t workers) {
  if (!opts) return null_argument("vreach_options_set_workers");
  opts->run.workers = workers == 0 ? vreach::Executor::hardware_workers() : workers;
  return VREACH_OK;
}

vreach_error vreach_options_set_timeout(vreach_options* opts, double seconds) {
  if (!opts) return null_argument("vreach_options_set_timeout");
  if (!(seconds > 0.0)) return fail(VREACH_E_ARGUMENT, "vreach_options_set_timeout: must be > 0");
  opts->run.timeout_seconds = seconds;
  return VREACH_OK;
}

vreach_error vreach_options_set_tolerances(vreach_options* opts, double lp_tol, double sign_eps,
                                           double dedup_tol) {
  if (!opts) return null_argument("vreach_options_set_tolerances");
  const auto ok = [](double t) { return std::isfinite(t) && t > 0.0; };
  if (!ok(lp_tol) || !ok(sign_eps) || !ok(dedup_tol)) {
    return fail(VREACH_E_ARGUMENT, "vreach_options_set_tolerances: tolerances must be finite and > 0");
  }
  opts->run.reach.tol = vreach::Tolerances{lp_tol, sign_eps, dedup_tol};
  return VREACH_OK;
}

vreach_error vreach_options_set_branch_limit(vreach_options* opts, size_t limit) {
  if (!opts) return null_argument("vreach_options_set_branch_limit");
  if (limit == 0) return fail(VREACH_E_ARGUMENT, "vreach_options_set_branch_limit: must be >= 1");
  opts->run.reach.max_branches = limit;
  return VREACH_OK;
}

vreach_error vreach_options_set_split(vreach_options* opts, const char* name) {
  if (!opts || !name) return null_argument("vreach_options_set_split");
  const std::string s = name;
  if (s == "sequential") {
    opts->run.reach.split = vreach::SplitStrategy::sequential;
  } else if (s == "simultaneous") {
    opts->run.reach.split = vreach::SplitStrategy::simultaneous;
  } else {
    return fail(VREACH_E_ARGUMENT, "vreach_options_set_split: unknown strategy '" + s + "'");
  }
  return VREACH_OK;
}

vreach_error vreach_verify(const vreach_network* net, const vreach_property* prop,
                           const vreach_options* opts, vreach_result** out) {
  if (!net || !prop || !out) return null_argument("vreach_verify");
  *out = nullptr;
  const vreach_options defaults;
  const vreach::RunOptions& run = opts ? opts->run : defaults.run;
  return guarded([&] {
    auto* result = new vreach_result;
    try {
      result->verdict = vreach::verify(net->net, prop->spec, run);
      const vreach::ReportContext ctx{run.algorithm, run.merge_size, run.workers};
      result->json = vreach::report_json(result->verdict, ctx);
      result->summary = vreach::report_summary(result->verdict, ctx);
    } catch (...) {
      delete result;
      throw;
    }
    *out = result;
  });
}

vreach_verdict vreach_result_verdict(const vreach_result* result) {
  if (!result) return VREACH_UNKNOWN;
  switch (result->verdict.status) {
    case vreach::Status::holds:
      return VREACH_HOLDS;
    case vreach::Status::violated:
      return VREACH_VIOLATED;
    case vreach::Status::timeout:
      return VREACH_TIMEOUT;
    case vreach::Status::unknown:
      break;
  }
  return VREACH_UNKNOWN;
}

double vreach_result_duration(const vreach_result* result) {
  return result ? result->verdict.duration_seconds : 0.0;
}

const char* vreach_result_report_json(const vreach_result* result) {
  return result ? result->json.c_str() : "";
}

const char* vreach_result_summary(const vreach_result* result) {
  return result ? result->summary.c_str() : "";
}

size_t vreach_result_witness(const vreach_result* result, double* buffer, size_t capacity) {
  if (!result || !result->verdict.witness) return 0;
  const auto& w = *result->verdict.witness;
  const auto n = static_cast<size_t>(w.size());
  if (buffer) std::copy_n(w.data(), std::min(n, capacity), buffer);
  return n;
}

void vreach_result_free(vreach_result* result) { delete result; }

}  // extern "C"
