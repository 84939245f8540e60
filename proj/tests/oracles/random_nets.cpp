#include "random_nets.hpp"

namespace oracle {

vreach::Network random_network(std::mt19937_64& rng, const std::vector<std::size_t>& widths,
                               double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<vreach::LayerParams> layers;
  for (std::size_t l = 1; l < widths.size(); ++l) {
    const auto rows = static_cast<Eigen::Index>(widths[l]);
    const auto cols = static_cast<Eigen::Index>(widths[l - 1]);
    vreach::LayerParams p{Eigen::MatrixXd(rows, cols), Eigen::VectorXd(rows)};
    for (Eigen::Index r = 0; r < rows; ++r) {
      for (Eigen::Index c = 0; c < cols; ++c) p.weights(r, c) = u(rng);
    }
    for (Eigen::Index r = 0; r < rows; ++r) p.biases(r) = u(rng);
    layers.push_back(std::move(p));
  }
  return vreach::Network(std::move(layers));
}

vreach::VertexSet random_points(std::mt19937_64& rng, std::size_t dim, std::size_t count,
                                double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  Eigen::MatrixXd m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(count));
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = u(rng);
  }
  return vreach::VertexSet(std::move(m));
}

Eigen::VectorXd random_vector(std::mt19937_64& rng, std::size_t dim, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  Eigen::VectorXd v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = u(rng);
  return v;
}

Eigen::VectorXd random_simplex(std::mt19937_64& rng, std::size_t count) {
  std::exponential_distribution<double> e(1.0);
  Eigen::VectorXd w(static_cast<Eigen::Index>(count));
  for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = e(rng);
  return w / w.sum();
}

}  // namespace oracle
