#include "vreach/report.hpp"

#include <sstream>

#include <json.hpp>

namespace vreach {

std::string report_json(const Verdict& verdict, const ReportContext& context, int indent) {
  nlohmann::json doc;
  doc["status"] = to_string(verdict.status);
  doc["algorithm"] = to_string(context.algorithm);
  if (context.algorithm == Algorithm::papnm) doc["merge_size"] = context.merge_size;
  doc["duration_seconds"] = verdict.duration_seconds;
  doc["workers"] = context.workers;
  doc["output_sets"] = verdict.output_sets;
  auto layers = nlohmann::json::array();
  for (const auto& s : verdict.layers) {
    layers.push_back({{"layer", s.layer},
                      {"vertices_in", s.vertices_in},
                      {"sets_in", s.sets_in},
                      {"sets_out", s.sets_out}});
  }
  doc["layers"] = std::move(layers);
  if (verdict.witness) {
    doc["witness"] = std::vector<double>(verdict.witness->data(),
                                         verdict.witness->data() + verdict.witness->size());
  }
  return doc.dump(indent);
}

std::string report_summary(const Verdict& verdict, const ReportContext& context) {
  std::ostringstream out;
  out << "status: " << to_string(verdict.status) << '\n';
  out << "algorithm: " << to_string(context.algorithm);
  if (context.algorithm == Algorithm::papnm) out << " (d=" << context.merge_size << ')';
  out << ", workers: " << context.workers << '\n';
  out << "duration: " << verdict.duration_seconds << " s\n";
  out << "layer  vertices_in  sets_in  sets_out\n";
  for (const auto& s : verdict.layers) {
    out << s.layer << "  " << s.vertices_in << "  " << s.sets_in << "  " << s.sets_out << '\n';
  }
  out << "output sets: " << verdict.output_sets << '\n';
  if (verdict.witness) {
    out << "witness:";
    for (Eigen::Index i = 0; i < verdict.witness->size(); ++i) out << ' ' << (*verdict.witness)(i);
    out << '\n';
  }
  return out.str();
}

}  // namespace vreach
