#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "vreach/vreach.h"

namespace {

constexpr int kExitError = 4;

struct Handles {
  vreach_network* net = nullptr;
  vreach_property* prop = nullptr;
  vreach_options* opts = nullptr;
  vreach_result* result = nullptr;
  ~Handles() {
    vreach_result_free(result);
    vreach_options_free(opts);
    vreach_property_free(prop);
    vreach_network_free(net);
  }
};

int report_error(vreach_error code) {
  std::cerr << "vreach: error " << static_cast<int>(code) << ": " << vreach_last_error() << '\n';
  return kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vertex-based reachability verification of ReLU networks"};
  std::string network_path;
  std::string property_path;
  std::string algorithm = "epnm";
  std::size_t merge_size = 2;
  std::size_t workers = 0;
  double timeout = 86400.0;
  std::string report_path;
  double lp_tol = 1e-7;
  double sign_eps = 1e-9;
  double dedup_tol = 1e-9;
  std::string split = "sequential";

  app.add_option("--network", network_path, ".nnet file")->required()->check(CLI::ExistingFile);
  app.add_option("--property", property_path, "property file")->required()->check(CLI::ExistingFile);
  app.add_option("--algorithm", algorithm, "apnm, epnm or papnm")
      ->check(CLI::IsMember({"apnm", "epnm", "papnm"}))
      ->capture_default_str();
  app.add_option("--merge-size", merge_size, "group size d for papnm")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--workers", workers, "worker threads (default: machine parallelism)")
      ->check(CLI::PositiveNumber);
  app.add_option("--timeout", timeout, "wall-clock budget in seconds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--report", report_path, "write the JSON report here");
  app.add_option("--lp-tol", lp_tol, "LP feasibility tolerance")->capture_default_str();
  app.add_option("--sign-eps", sign_eps, "sign threshold")->capture_default_str();
  app.add_option("--dedup-tol", dedup_tol, "duplicate-point distance")->capture_default_str();
  app.add_option("--split", split, "orthant split: sequential or simultaneous")
      ->check(CLI::IsMember({"sequential", "simultaneous"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitError;
  }

  Handles h;
  if (auto rc = vreach_network_load(network_path.c_str(), &h.net); rc != VREACH_OK) return report_error(rc);
  if (auto rc = vreach_property_load(property_path.c_str(), &h.prop); rc != VREACH_OK) {
    return report_error(rc);
  }
  h.opts = vreach_options_create();
  if (!h.opts) return report_error(VREACH_E_INTERNAL);
  vreach_error rc = vreach_options_set_algorithm(h.opts, algorithm.c_str());
  if (rc == VREACH_OK) rc = vreach_options_set_merge_size(h.opts, merge_size);
  if (rc == VREACH_OK) rc = vreach_options_set_workers(h.opts, workers);
  if (rc == VREACH_OK) rc = vreach_options_set_timeout(h.opts, timeout);
  if (rc == VREACH_OK) rc = vreach_options_set_tolerances(h.opts, lp_tol, sign_eps, dedup_tol);
  if (rc == VREACH_OK) rc = vreach_options_set_split(h.opts, split.c_str());
  if (rc != VREACH_OK) return report_error(rc);

  if (rc = vreach_verify(h.net, h.prop, h.opts, &h.result); rc != VREACH_OK) return report_error(rc);

  if (!report_path.empty()) {
    std::ofstream out(report_path, std::ios::binary);
    out << vreach_result_report_json(h.result) << '\n';
    if (!out) {
      std::cerr << "vreach: cannot write report to '" << report_path << "'\n";
      return kExitError;
    }
  }
  std::cout << vreach_result_summary(h.result);
  return static_cast<int>(vreach_result_verdict(h.result));
}
