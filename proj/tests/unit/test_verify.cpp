#include <doctest.h>

#include <random>
#include <string>

#include "random_nets.hpp"
#include "vreach/errors.hpp"
#include "vreach/network.hpp"
#include "vreach/verify.hpp"

using namespace vreach;

namespace {

const VertexSet kUnitSquare{{0, 0}, {1, 0}, {1, 1}, {0, 1}};

ReachSet single(const VertexSet& v) {
  ReachSet r;
  r.polytopes = {v};
  r.layers = {{1, v.size(), 1, 1}};
  return r;
}

PropertySpec spec_2d(double c0, double c1, Relation rel, double bound) {
  PropertySpec s;
  s.input_lower = Eigen::Vector2d(-1, -1);
  s.input_upper = Eigen::Vector2d(1, 1);
  s.output_constraints = {{Eigen::Vector2d(c0, c1), rel, bound}};
  return s;
}

std::string parse_error(const std::string& text) {
  try {
    parse_property(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "no error";
}

}  // namespace

TEST_CASE("box_to_vertices") {
  SUBCASE("five-dimensional box") {
    const Eigen::VectorXd lo = Eigen::VectorXd::Zero(5);
    const Eigen::VectorXd hi = Eigen::VectorXd::LinSpaced(5, 1, 5);
    const VertexSet v = box_to_vertices(lo, hi);
    CHECK(v.size() == 32);
    CHECK(v.point(0) == lo);
    CHECK(v.point(31) == hi);
    CHECK(v.at(5, 0) == 1);  // corner 0b00101
    CHECK(v.at(5, 1) == 0);
    CHECK(v.at(5, 2) == 3);
  }
  SUBCASE("one-dimensional") {
    const VertexSet v = box_to_vertices(Eigen::VectorXd::Zero(1), Eigen::VectorXd::Ones(1));
    CHECK(v == VertexSet{{0}, {1}});
  }
  SUBCASE("degenerate box") {
    const VertexSet v = box_to_vertices(Eigen::Vector2d(0.5, 2), Eigen::Vector2d(0.5, 2));
    CHECK(v == VertexSet{{0.5, 2}});
    CHECK(box_to_vertices(Eigen::Vector2d(0, 2), Eigen::Vector2d(1, 2)).size() == 2);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(box_to_vertices(Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1)), ContractViolation);
    CHECK_THROWS_AS(box_to_vertices(Eigen::Vector2d(0, 0), Eigen::Vector3d(1, 1, 1)), ContractViolation);
    CHECK_THROWS_AS(box_to_vertices(Eigen::VectorXd::Zero(26), Eigen::VectorXd::Ones(26)), LimitExceeded);
  }
}

TEST_CASE("max_linear") {
  CHECK(max_linear(kUnitSquare, Eigen::Vector2d(1, 1)) == 2);
  CHECK(min_linear(kUnitSquare, Eigen::Vector2d(1, -1)) == -1);
  CHECK(max_linear(kUnitSquare, Eigen::Vector2d::Zero()) == 0);

  LayerParams p{Eigen::MatrixXd(2, 2), Eigen::VectorXd(2)};
  p.weights << 0.492693, -1.29232, 0.925861, 0.675146;
  p.biases << -0.18857972, -0.14839205;
  const VertexSet img = affine_map(VertexSet{{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}, p);
  CHECK(max_linear(img, Eigen::Vector2d(0, 1)) == doctest::Approx(1.45261).epsilon(1e-5));

  CHECK_THROWS_AS(max_linear(kUnitSquare, Eigen::Vector3d(1, 1, 1)), ContractViolation);
  CHECK_THROWS_AS(max_linear(VertexSet{}, Eigen::VectorXd{}), ContractViolation);
}

TEST_CASE("property: vertex attainment") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 1000; ++trial) {
    const VertexSet v = oracle::random_points(rng, 3, 6);
    const Eigen::VectorXd c = oracle::random_vector(rng, 3);
    const double m = max_linear(v, c);
    double best = -1e300;
    const int combos = trial < 10 ? 10000 : 100;
    for (int s = 0; s < combos; ++s) {
      best = std::max(best, c.dot(v.points() * oracle::random_simplex(rng, v.size())));
    }
    CHECK(best <= m + 1e-9);
  }
}

TEST_CASE("check_property") {
  SUBCASE("holds") {
    const Verdict v = check_property(single(kUnitSquare), spec_2d(1, 0, Relation::less_equal, 2), true);
    CHECK(v.status == Status::holds);
    CHECK_FALSE(v.witness);
    CHECK(v.output_sets == 1);
  }
  SUBCASE("violated when exact") {
    const Verdict v = check_property(single(kUnitSquare), spec_2d(1, 0, Relation::less_equal, 0.5), true);
    CHECK(v.status == Status::violated);
    REQUIRE(v.witness);
    CHECK((*v.witness)(0) == 1);
    CHECK(contains_point(kUnitSquare, *v.witness, 1e-9));
  }
  SUBCASE("unknown when approximate") {
    const Verdict v = check_property(single(kUnitSquare), spec_2d(1, 0, Relation::less_equal, 0.5), false);
    CHECK(v.status == Status::unknown);
    CHECK_FALSE(v.witness);
  }
  SUBCASE("greater-equal constraints") {
    CHECK(check_property(single(kUnitSquare), spec_2d(1, 1, Relation::greater_equal, 0), true).status ==
          Status::holds);
    const Verdict v = check_property(single(kUnitSquare), spec_2d(1, 1, Relation::greater_equal, 0.5), true);
    CHECK(v.status == Status::violated);
    CHECK(v.witness->sum() == 0);
  }
  SUBCASE("excess within tolerance is not a witness") {
    const Verdict v =
        check_property(single(kUnitSquare), spec_2d(1, 0, Relation::less_equal, 1 - 1e-12), true);
    CHECK(v.status == Status::unknown);
  }
  SUBCASE("witness is the worst vertex across sets") {
    ReachSet r = single(kUnitSquare);
    r.polytopes.push_back(VertexSet{{3, 0}, {2, 1}});
    const Verdict v = check_property(r, spec_2d(1, 0, Relation::less_equal, 0.5), true);
    CHECK(v.status == Status::violated);
    CHECK((*v.witness)(0) == 3);
  }
  SUBCASE("incomplete reach is a timeout") {
    ReachSet r = single(kUnitSquare);
    r.complete = false;
    r.polytopes.clear();
    const Verdict v = check_property(r, spec_2d(1, 0, Relation::less_equal, 2), true);
    CHECK(v.status == Status::timeout);
    CHECK(v.layers.size() == 1);
  }
  SUBCASE("dimension mismatch") {
    PropertySpec s = spec_2d(1, 0, Relation::less_equal, 2);
    s.output_constraints[0].coefficients = Eigen::Vector3d(1, 0, 0);
    CHECK_THROWS_AS(check_property(single(kUnitSquare), s, true), ContractViolation);
  }
}

TEST_CASE("property: witness validity") {
  std::mt19937_64 rng(72);
  for (int trial = 0; trial < 1000; ++trial) {
    ReachSet r;
    r.polytopes = {oracle::random_points(rng, 2, 4), oracle::random_points(rng, 2, 3)};
    const Eigen::VectorXd c = oracle::random_vector(rng, 2);
    PropertySpec s = spec_2d(c(0), c(1), Relation::less_equal, 0.3);
    const Verdict v = check_property(r, s, true);
    if (v.status != Status::violated) {
      CHECK(v.status == Status::holds);
      continue;
    }
    REQUIRE(v.witness);
    CHECK(c.dot(*v.witness) > 0.3 + 1e-7);
    CHECK((contains_point(r.polytopes[0], *v.witness, 1e-9) ||
           contains_point(r.polytopes[1], *v.witness, 1e-9)));
  }
}

TEST_CASE("parse_property") {
  const PropertySpec s = parse_property(
      "# sample\n"
      "[input]\n"
      "1: -3.5 2   # second\n"
      "0: 0 1\n"
      "\n"
      "[output]\n"
      "1 0 <= 1500\n"
      "-1 2.5 >= -3\n");
  CHECK(s.input_lower == Eigen::Vector2d(0, -3.5));
  CHECK(s.input_upper == Eigen::Vector2d(1, 2));
  REQUIRE(s.output_constraints.size() == 2);
  CHECK(s.output_constraints[0].relation == Relation::less_equal);
  CHECK(s.output_constraints[0].bound == 1500);
  CHECK(s.output_constraints[1].relation == Relation::greater_equal);
  CHECK(s.output_constraints[1].coefficients == Eigen::Vector2d(-1, 2.5));

  const PropertySpec acas = load_property(std::string(VREACH_PROPERTIES) + "/acas_property1.txt");
  CHECK(acas.input_lower.size() == 5);
  CHECK(acas.input_lower(0) == 55947.691);
  CHECK(acas.input_upper(4) == 60);
  CHECK(acas.output_constraints[0].bound == 1500);
  CHECK_THROWS_AS(load_property("/nonexistent/prop.txt"), IoError);
}

TEST_CASE("parse_property errors") {
  CHECK(parse_error("[input]\n0: 1\n[output]\n1 <= 0\n").find("line 2") != std::string::npos);
  CHECK(parse_error("[input]\n0: 2 1\n[output]\n1 <= 0\n").find("exceeds") != std::string::npos);
  CHECK(parse_error("[input]\n0: 0 1\n0: 0 1\n[output]\n1 <= 0\n").find("twice") != std::string::npos);
  CHECK(parse_error("[input]\n1: 0 1\n[output]\n1 <= 0\n").find("cover") != std::string::npos);
  CHECK(parse_error("[input]\n0: 0 1\n[output]\n1 < 0\n").find("line 4") != std::string::npos);
  CHECK(parse_error("[input]\n0: 0 1\n[output]\n1 2 <= 0\n1 <= 0\n").find("line 5") != std::string::npos);
  CHECK(parse_error("[input]\n0: 0 x\n[output]\n1 <= 0\n").find("'x'") != std::string::npos);
  CHECK(parse_error("0: 0 1\n").find("outside") != std::string::npos);
  CHECK(parse_error("[input]\n0: 0 1\n").find("[output]") != std::string::npos);
  CHECK(parse_error("[bogus]\n").find("unknown section") != std::string::npos);
}

TEST_CASE("verify end to end") {
  const Network net = load_nnet(std::string(VREACH_FIXTURES) + "/toy.nnet");
  const PropertySpec holds = load_property(std::string(VREACH_FIXTURES) + "/toy_holds.txt");
  const PropertySpec violated = load_property(std::string(VREACH_FIXTURES) + "/toy_violated.txt");

  RunOptions opts;
  const Verdict h = verify(net, holds, opts);
  CHECK(h.status == Status::holds);
  CHECK(h.layers.size() == 2);
  CHECK(h.layers[0].vertices_in == 4);

  const Verdict v = verify(net, violated, opts);
  CHECK(v.status == Status::violated);
  REQUIRE(v.witness);
  CHECK((*v.witness)(0) > -1e9);

  // The witness is attained: some corner's image reaches at least its value.
  double best = -1e300;
  for (double a : {-1.0, 1.0}) {
    for (double b : {-1.0, 1.0}) best = std::max(best, forward(net, Eigen::Vector2d(a, b), false)(0));
  }
  CHECK(best >= (*v.witness)(0) - 1e-9);

  opts.algorithm = Algorithm::apnm;
  CHECK(verify(net, holds, opts).status == Status::holds);
  CHECK(verify(net, violated, opts).status == Status::unknown);
  opts.algorithm = Algorithm::papnm;
  opts.merge_size = 1;
  CHECK(verify(net, violated, opts).status == Status::violated);

  PropertySpec wrong = holds;
  wrong.input_lower = Eigen::Vector3d(0, 0, 0);
  wrong.input_upper = Eigen::Vector3d(1, 1, 1);
  CHECK_THROWS_AS(verify(net, wrong, opts), ContractViolation);
  opts.timeout_seconds = 0;
  CHECK_THROWS_AS(verify(net, holds, opts), ContractViolation);
}

TEST_CASE("property: apnm holds implies epnm holds") {
  std::mt19937_64 rng(73);
  int apnm_holds = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const Network net = oracle::random_network(rng, {2, 3, 3, 1});
    PropertySpec s;
    s.input_lower = Eigen::Vector2d(-0.5, -0.5);
    s.input_upper = Eigen::Vector2d(0.5, 0.5);
    s.output_constraints = {{Eigen::VectorXd::Ones(1), Relation::less_equal, 1.0}};
    RunOptions a;
    a.algorithm = Algorithm::apnm;
    if (verify(net, s, a).status != Status::holds) continue;
    ++apnm_holds;
    CHECK(verify(net, s, RunOptions{}).status == Status::holds);
  }
  CHECK(apnm_holds > 0);
}
