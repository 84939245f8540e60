#include "vreach/network.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <fstream>
#include <sstream>

#include "vreach/errors.hpp"

namespace vreach {

namespace {

constexpr const char* kParse = "network.parse_nnet";

std::string format_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) return std::to_string(x);
  return std::string(buf, end);
}

// Splits on commas and whitespace; empty fields are skipped.
std::vector<double> parse_numbers(std::string_view line, std::size_t line_no) {
  std::vector<double> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ',' || std::isspace(static_cast<unsigned char>(line[i])))) {
      ++i;
    }
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && line[j] != ',' && !std::isspace(static_cast<unsigned char>(line[j]))) {
      ++j;
    }
    const std::string token(line.substr(i, j - i));
    char* end = nullptr;
    const double value = std::strtod(token.c_str(), &end);
    if (end != token.c_str() + token.size() || token.empty()) {
      throw ParseError(kParse, line_no, "non-numeric token '" + token + "'");
    }
    out.push_back(value);
    i = j;
  }
  return out;
}

class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  // Next non-comment, non-blank line. `what` names the section for errors.
  std::vector<double> numbers(const std::string& what) {
    while (pos_ < text_.size()) {
      std::size_t end = text_.find('\n', pos_);
      if (end == std::string_view::npos) end = text_.size();
      std::string_view line = text_.substr(pos_, end - pos_);
      pos_ = end + 1;
      ++line_;
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      const auto first = line.find_first_not_of(" \t");
      if (first == std::string_view::npos) continue;
      if (line.substr(first, 2) == "//") {
        if (seen_data_) throw ParseError(kParse, line_, "comment inside data section");
        continue;
      }
      seen_data_ = true;
      auto values = parse_numbers(line, line_);
      if (values.empty()) continue;
      return values;
    }
    throw ParseError(kParse, line_, "unexpected end of file, missing " + what);
  }

  std::vector<double> exactly(std::size_t n, const std::string& what) {
    auto v = numbers(what);
    if (v.size() != n) {
      throw ParseError(kParse, line_,
                       what + ": expected " + std::to_string(n) + " values, found " +
                           std::to_string(v.size()));
    }
    return v;
  }

  std::size_t line() const noexcept { return line_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 0;
  bool seen_data_ = false;
};

std::size_t as_size(double x, std::size_t line, const std::string& what) {
  if (!(x >= 1.0) || x != std::floor(x) || x > 1e7) {
    throw ParseError(kParse, line, what + " must be a positive integer");
  }
  return static_cast<std::size_t>(x);
}

Eigen::VectorXd to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

Normalization Normalization::identity(std::size_t input_dim) {
  const auto n = static_cast<Eigen::Index>(input_dim);
  Normalization norm;
  const double inf = std::numeric_limits<double>::infinity();
  norm.input_min = Eigen::VectorXd::Constant(n, -inf);
  norm.input_max = Eigen::VectorXd::Constant(n, inf);
  norm.input_mean = Eigen::VectorXd::Zero(n);
  norm.input_range = Eigen::VectorXd::Ones(n);
  return norm;
}

Network::Network(std::vector<LayerParams> layers)
    : Network(layers, Normalization::identity(layers.empty() ? 0 : layers.front().input_dim())) {}

Network::Network(std::vector<LayerParams> layers, Normalization normalization)
    : layers_(std::move(layers)), norm_(std::move(normalization)) {
  constexpr const char* where = "network.Network";
  if (layers_.empty()) throw ContractViolation(where, "a network needs at least one layer");
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const auto& layer = layers_[l];
    if (layer.weights.rows() != layer.biases.size() || layer.weights.rows() == 0 ||
        layer.weights.cols() == 0) {
      throw ContractViolation(where, "layer " + std::to_string(l + 1) + " has inconsistent shape");
    }
    if (!layer.weights.allFinite() || !layer.biases.allFinite()) {
      throw ContractViolation(where, "layer " + std::to_string(l + 1) + " has non-finite entries");
    }
    if (l > 0 && layer.input_dim() != layers_[l - 1].output_dim()) {
      throw ContractViolation(where, "layer " + std::to_string(l + 1) + " expects width " +
                                         std::to_string(layer.input_dim()) + ", previous layer has " +
                                         std::to_string(layers_[l - 1].output_dim()));
    }
  }
  const auto n = static_cast<Eigen::Index>(input_dim());
  if (norm_.input_min.size() != n || norm_.input_max.size() != n || norm_.input_mean.size() != n ||
      norm_.input_range.size() != n) {
    throw ContractViolation(where, "normalization vectors must match the input dimension");
  }
  if ((norm_.input_range.array() == 0.0).any() || norm_.output_range == 0.0) {
    throw ContractViolation(where, "normalization range must be nonzero");
  }
}

Network parse_nnet(std::string_view text) {
  LineReader in(text);
  const auto header = in.exactly(4, "header (numLayers, inputSize, outputSize, maxLayerSize)");
  const std::size_t num_layers = as_size(header[0], in.line(), "numLayers");
  const std::size_t input_size = as_size(header[1], in.line(), "inputSize");
  const std::size_t output_size = as_size(header[2], in.line(), "outputSize");

  const auto sizes_raw = in.exactly(num_layers + 1, "layer sizes");
  std::vector<std::size_t> sizes;
  for (double s : sizes_raw) sizes.push_back(as_size(s, in.line(), "layer size"));
  if (sizes.front() != input_size || sizes.back() != output_size) {
    throw ParseError(kParse, in.line(), "layer sizes disagree with inputSize/outputSize");
  }

  in.numbers("unused flag line");
  Normalization norm;
  norm.input_min = to_vector(in.exactly(input_size, "input minimums"));
  norm.input_max = to_vector(in.exactly(input_size, "input maximums"));
  const auto means = in.exactly(input_size + 1, "means");
  const auto ranges = in.exactly(input_size + 1, "ranges");
  norm.input_mean = to_vector(std::vector<double>(means.begin(), means.end() - 1));
  norm.input_range = to_vector(std::vector<double>(ranges.begin(), ranges.end() - 1));
  norm.output_mean = means.back();
  norm.output_range = ranges.back();
  for (double r : ranges) {
    if (r == 0.0) throw ParseError(kParse, in.line(), "normalization range of zero");
  }

  std::vector<LayerParams> layers;
  for (std::size_t l = 1; l <= num_layers; ++l) {
    const auto rows = static_cast<Eigen::Index>(sizes[l]);
    const auto cols = static_cast<Eigen::Index>(sizes[l - 1]);
    LayerParams layer{Eigen::MatrixXd(rows, cols), Eigen::VectorXd(rows)};
    const std::string tag = "layer " + std::to_string(l);
    for (Eigen::Index r = 0; r < rows; ++r) {
      const auto w = in.exactly(sizes[l - 1], tag + " weight row " + std::to_string(r + 1));
      for (Eigen::Index c = 0; c < cols; ++c) layer.weights(r, c) = w[static_cast<std::size_t>(c)];
    }
    for (Eigen::Index r = 0; r < rows; ++r) {
      layer.biases(r) = in.exactly(1, tag + " bias " + std::to_string(r + 1))[0];
    }
    layers.push_back(std::move(layer));
  }
  return Network(std::move(layers), std::move(norm));
}

Network load_nnet(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError("network.load_nnet", "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << file.rdbuf();
  return parse_nnet(buf.str());
}

std::string to_nnet(const Network& net) {
  std::ostringstream out;
  const auto join = [&](auto begin, auto end) {
    for (auto it = begin; it != end; ++it) out << format_double(*it) << ',';
    out << '\n';
  };
  std::size_t max_width = net.input_dim();
  for (const auto& l : net.layers()) max_width = std::max(max_width, l.output_dim());
  out << "// written by vreach\n";
  out << net.layer_count() << ',' << net.input_dim() << ',' << net.output_dim() << ',' << max_width
      << ",\n";
  out << net.input_dim() << ',';
  for (const auto& l : net.layers()) out << l.output_dim() << ',';
  out << "\n0,\n";
  const auto& n = net.normalization();
  join(n.input_min.begin(), n.input_min.end());
  join(n.input_max.begin(), n.input_max.end());
  for (double m : n.input_mean) out << format_double(m) << ',';
  out << format_double(n.output_mean) << ",\n";
  for (double r : n.input_range) out << format_double(r) << ',';
  out << format_double(n.output_range) << ",\n";
  for (const auto& l : net.layers()) {
    for (Eigen::Index r = 0; r < l.weights.rows(); ++r) {
      for (Eigen::Index c = 0; c < l.weights.cols(); ++c) out << format_double(l.weights(r, c)) << ',';
      out << '\n';
    }
    for (Eigen::Index r = 0; r < l.biases.size(); ++r) out << format_double(l.biases(r)) << ",\n";
  }
  return out.str();
}

Eigen::VectorXd normalize_input(const Network& net, const Eigen::VectorXd& raw) {
  if (static_cast<std::size_t>(raw.size()) != net.input_dim()) {
    throw ContractViolation("network.normalize_input", "input has dimension " +
                                                          std::to_string(raw.size()) + ", network expects " +
                                                          std::to_string(net.input_dim()));
  }
  const auto& n = net.normalization();
  const Eigen::VectorXd clamped = raw.cwiseMax(n.input_min).cwiseMin(n.input_max);
  return (clamped - n.input_mean).cwiseQuotient(n.input_range);
}

Eigen::VectorXd denormalize_output(const Network& net, const Eigen::VectorXd& y) {
  const auto& n = net.normalization();
  return (y.array() * n.output_range + n.output_mean).matrix();
}

VertexSet denormalize_output(const Network& net, const VertexSet& outputs) {
  const auto& n = net.normalization();
  return VertexSet((outputs.points().array() * n.output_range + n.output_mean).matrix());
}

Eigen::VectorXd forward(const Network& net, const Eigen::VectorXd& x, bool normalized) {
  Eigen::VectorXd h = normalized ? x : normalize_input(net, x);
  if (static_cast<std::size_t>(h.size()) != net.input_dim()) {
    throw ContractViolation("network.forward", "input dimension mismatch");
  }
  for (std::size_t l = 0; l < net.layer_count(); ++l) {
    const auto& layer = net.layer(l);
    h = layer.weights * h + layer.biases;
    if (l + 1 < net.layer_count()) h = h.cwiseMax(0.0);
  }
  return normalized ? h : denormalize_output(net, h);
}

std::vector<std::vector<int>> activation_pattern(const Network& net, const Eigen::VectorXd& x) {
  std::vector<std::vector<int>> pattern;
  Eigen::VectorXd h = x;
  for (std::size_t l = 0; l + 1 < net.layer_count(); ++l) {
    const auto& layer = net.layer(l);
    h = layer.weights * h + layer.biases;
    std::vector<int> s(static_cast<std::size_t>(h.size()));
    for (Eigen::Index k = 0; k < h.size(); ++k) s[static_cast<std::size_t>(k)] = h(k) > 0 ? 1 : (h(k) < 0 ? -1 : 0);
    pattern.push_back(std::move(s));
    h = h.cwiseMax(0.0);
  }
  return pattern;
}

}  // namespace vreach
