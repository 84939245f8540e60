#include <doctest.h>

#include <cstdlib>
#include <random>
#include <string>

#include "random_nets.hpp"
#include "vreach/errors.hpp"
#include "vreach/network.hpp"

using namespace vreach;

namespace {

const char* kMinimal =
    "// a 2-2-1 network\n"
    "// second comment line\n"
    "2,2,1,2,\n"
    "2,2,1,\n"
    "0,\n"
    "-1,-2,\n"
    "1,2,\n"
    "0.5,0,1,\n"
    "2,4,3,\n"
    "1.5,-0.25,\n"
    "0.125,2e-1,\n"
    "0.1,\n"
    "-0.2,\n"
    "1,-1,\n"
    "0.3,\n";

std::string expect_parse_error(const std::string& text) {
  try {
    parse_nnet(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "no error";
}

}  // namespace

TEST_CASE("parse a minimal file") {
  const Network net = parse_nnet(kMinimal);
  CHECK(net.layer_count() == 2);
  CHECK(net.input_dim() == 2);
  CHECK(net.output_dim() == 1);
  CHECK(net.layer(0).weights.rows() == 2);
  CHECK(net.layer(0).weights.cols() == 2);
  CHECK(net.layer(1).weights.rows() == 1);
  CHECK(net.layer(1).weights.cols() == 2);
  CHECK(net.layer(0).weights(1, 1) == 0.2);
  CHECK(net.layer(0).biases(1) == -0.2);
  CHECK(net.layer(1).biases(0) == 0.3);
  const auto& n = net.normalization();
  CHECK(n.input_min(1) == -2);
  CHECK(n.input_mean(0) == 0.5);
  CHECK(n.input_range(1) == 4);
  CHECK(n.output_mean == 1);
  CHECK(n.output_range == 3);
}

TEST_CASE("whitespace separators and scientific notation") {
  const Network net = parse_nnet(
      "1 1 1 1\n1 1\n0\n-1\n1\n0 0\n1 1\n2.5E+0\n-1e-3\n");
  CHECK(net.layer(0).weights(0, 0) == 2.5);
  CHECK(net.layer(0).biases(0) == -0.001);
}

TEST_CASE("parse errors carry line numbers") {
  std::string truncated(kMinimal);
  truncated.resize(truncated.find("1,-1,"));
  CHECK(expect_parse_error(truncated).find("layer 2 weight row 1") != std::string::npos);

  std::string bad(kMinimal);
  bad.replace(bad.find("1.5,-0.25"), 9, "1.5,abc");
  const std::string msg = expect_parse_error(bad);
  CHECK(msg.find("line 10") != std::string::npos);
  CHECK(msg.find("abc") != std::string::npos);

  CHECK(expect_parse_error("").find("header") != std::string::npos);
  CHECK(expect_parse_error("2,2,1,2,\n3,3,1,\n").find("layer sizes") != std::string::npos);
  CHECK(expect_parse_error("2,2,1\n").find("header") != std::string::npos);

  std::string zero_range(kMinimal);
  zero_range.replace(zero_range.find("2,4,3,"), 6, "2,0,3,");
  CHECK(expect_parse_error(zero_range).find("range") != std::string::npos);

  std::string extra(kMinimal);
  extra.replace(extra.find("0.1,\n"), 5, "0.1,7,\n");
  CHECK(expect_parse_error(extra).find("bias") != std::string::npos);
}

TEST_CASE("load errors") {
  CHECK_THROWS_AS(load_nnet("/nonexistent/file.nnet"), IoError);
  const Network toy = load_nnet(std::string(VREACH_FIXTURES) + "/toy.nnet");
  CHECK(toy.layer_count() == 2);
  CHECK(toy.layer(0).output_dim() == 3);
}

TEST_CASE("round trip is bit exact") {
  const Network net = parse_nnet(kMinimal);
  const Network again = parse_nnet(to_nnet(net));
  for (std::size_t l = 0; l < net.layer_count(); ++l) {
    CHECK(again.layer(l).weights == net.layer(l).weights);
    CHECK(again.layer(l).biases == net.layer(l).biases);
  }
  CHECK(again.normalization().input_mean == net.normalization().input_mean);

  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 100; ++trial) {
    const Network r = oracle::random_network(rng, {3, 4, 2});
    const Network back = parse_nnet(to_nnet(r));
    for (std::size_t l = 0; l < r.layer_count(); ++l) {
      CHECK(back.layer(l).weights == r.layer(l).weights);
      CHECK(back.layer(l).biases == r.layer(l).biases);
    }
  }
}

TEST_CASE("nine-digit decimals parse to the nearest double") {
  const char* literal = "0.123456789";
  std::string text = std::string("1,1,1,1,\n1,1,\n0,\n-1,\n1,\n0,0,\n1,1,\n") + literal + ",\n0,\n";
  CHECK(parse_nnet(text).layer(0).weights(0, 0) == std::strtod(literal, nullptr));
}

TEST_CASE("normalize_input") {
  const Network net = parse_nnet(kMinimal);
  CHECK(normalize_input(net, Eigen::Vector2d(0.5, 0)).isZero());
  CHECK(normalize_input(net, Eigen::Vector2d(-5, 0)) == normalize_input(net, Eigen::Vector2d(-1, 0)));
  // mean + range, clamped to max first: use a network with generous bounds
  Normalization wide;
  wide.input_min = Eigen::Vector2d(-100, -100);
  wide.input_max = Eigen::Vector2d(100, 100);
  wide.input_mean = Eigen::Vector2d(1, 2);
  wide.input_range = Eigen::Vector2d(3, 4);
  const Network w({{Eigen::MatrixXd::Identity(2, 2), Eigen::Vector2d::Zero()}}, wide);
  CHECK(normalize_input(w, Eigen::Vector2d(4, 6)) == Eigen::Vector2d(1, 1));
  CHECK_THROWS_AS(normalize_input(w, Eigen::Vector3d(0, 0, 0)), ContractViolation);
}

TEST_CASE("forward") {
  SUBCASE("identity layers") {
    const Network net({{Eigen::MatrixXd::Identity(2, 2), Eigen::Vector2d::Zero()},
                       {Eigen::MatrixXd::Identity(2, 2), Eigen::Vector2d::Zero()}});
    CHECK(forward(net, Eigen::Vector2d(-1, 2)) == Eigen::Vector2d(0, 2));
  }
  SUBCASE("single affine layer") {
    Eigen::MatrixXd w(1, 2);
    w << 2, -3;
    const Network net({{w, Eigen::VectorXd::Constant(1, 0.5)}});
    CHECK(forward(net, Eigen::Vector2d(-1, -1))(0) == 1.5);
  }
  SUBCASE("raw units") {
    const Network net = parse_nnet(kMinimal);
    const Eigen::Vector2d raw(0.7, 1.0);
    const Eigen::VectorXd y = forward(net, raw, false);
    const Eigen::VectorXd y_norm = forward(net, normalize_input(net, raw));
    CHECK(y(0) == doctest::Approx(y_norm(0) * 3 + 1));
  }
}

TEST_CASE("network construction errors") {
  CHECK_THROWS_AS(Network(std::vector<LayerParams>{}), ContractViolation);
  CHECK_THROWS_AS(Network({{Eigen::MatrixXd::Identity(2, 2), Eigen::Vector2d::Zero()},
                           {Eigen::MatrixXd::Identity(3, 3), Eigen::Vector3d::Zero()}}),
                  ContractViolation);
  CHECK_THROWS_AS(Network({{Eigen::MatrixXd::Identity(2, 2), Eigen::Vector3d::Zero()}}),
                  ContractViolation);
}

TEST_CASE("property: forward is affine on an activation region") {
  std::mt19937_64 rng(52);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int tested = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Network net = oracle::random_network(rng, {3, 4, 4, 2});
    const Eigen::VectorXd x = oracle::random_vector(rng, 3);
    const Eigen::VectorXd y = x + 0.01 * oracle::random_vector(rng, 3);
    if (activation_pattern(net, x) != activation_pattern(net, y)) continue;
    ++tested;
    const double a = unit(rng);
    const Eigen::VectorXd lhs = forward(net, a * x + (1 - a) * y);
    const Eigen::VectorXd rhs = a * forward(net, x) + (1 - a) * forward(net, y);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-9);
  }
  CHECK(tested > 500);
}
