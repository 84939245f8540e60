#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "vreach/vertex_set.hpp"

namespace vreach {

/// Input scaling from the .nnet header: inputs are clamped to [min, max] and
/// mapped to (x - mean) / range; outputs are mapped back with
/// y * output_range + output_mean.
struct Normalization {
  Eigen::VectorXd input_min;
  Eigen::VectorXd input_max;
  Eigen::VectorXd input_mean;
  Eigen::VectorXd input_range;
  double output_mean = 0.0;
  double output_range = 1.0;

  static Normalization identity(std::size_t input_dim);
};

/// Feed-forward ReLU network. ReLU follows every layer except the last.
class Network {
 public:
  Network(std::vector<LayerParams> layers, Normalization normalization);
  explicit Network(std::vector<LayerParams> layers);

  std::size_t layer_count() const noexcept { return layers_.size(); }
  std::size_t input_dim() const noexcept { return layers_.front().input_dim(); }
  std::size_t output_dim() const noexcept { return layers_.back().output_dim(); }
  const std::vector<LayerParams>& layers() const noexcept { return layers_; }
  const LayerParams& layer(std::size_t l) const { return layers_.at(l); }
  const Normalization& normalization() const noexcept { return norm_; }

 private:
  std::vector<LayerParams> layers_;
  Normalization norm_;
};

Network parse_nnet(std::string_view text);
Network load_nnet(const std::string& path);

/// Writes the .nnet v1 text form. Numbers use the shortest representation that
/// parses back to the same double.
std::string to_nnet(const Network& net);

Eigen::VectorXd normalize_input(const Network& net, const Eigen::VectorXd& raw);
Eigen::VectorXd denormalize_output(const Network& net, const Eigen::VectorXd& y);
VertexSet denormalize_output(const Network& net, const VertexSet& outputs);

/// Pointwise evaluation. With `normalized` false the input is taken in raw
/// units and the output is returned in raw units.
Eigen::VectorXd forward(const Network& net, const Eigen::VectorXd& x, bool normalized = true);

/// Pre-activation sign pattern of every hidden layer; used by tests to group
/// inputs into linear regions.
std::vector<std::vector<int>> activation_pattern(const Network& net, const Eigen::VectorXd& x);

}  // namespace vreach
