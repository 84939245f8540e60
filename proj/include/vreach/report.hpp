#pragma once

#include <cstddef>
#include <string>

#include "vreach/verify.hpp"

namespace vreach {

struct ReportContext {
  Algorithm algorithm = Algorithm::epnm;
  std::size_t merge_size = 1;
  std::size_t workers = 1;
};

/// Single JSON document:
/// {status, algorithm, merge_size?, duration_seconds, workers, output_sets,
///  layers: [{layer, vertices_in, sets_in, sets_out}], witness?}
/// Keys are emitted in sorted order and numbers in shortest round-trip form,
/// so two runs that agree on everything but timing produce identical text
/// apart from duration_seconds and workers.
std::string report_json(const Verdict& verdict, const ReportContext& context, int indent = 2);

/// A few lines for a terminal.
std::string report_summary(const Verdict& verdict, const ReportContext& context);

}  // namespace vreach
