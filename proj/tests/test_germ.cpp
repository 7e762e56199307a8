#include "unirenorm/germ.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace unirenorm;

TEST_CASE("polynomial germ") {
  set_precision_bits(256);
  const BigReal c("-1.3");
  const Germ g = Germ::polynomial(2, c);
  CHECK(g.depth() == 0);
  CHECK(g.total_period() == 1);
  const BigReal x("0.37");
  CHECK(eval(g, x) == x * x + c);
  CHECK(iterate(g, x, 3) == oracle::naive_eval({2, c, {{3, BigReal(1)}}}, x));
  const Jet j = eval_jet(g);
  CHECK(j[0] == c);
  CHECK(j[1] == 0);
  CHECK(j[2] == 1);
  for (int k = 3; k <= j.max_order(); ++k) CHECK(j[k] == 0);
}

TEST_CASE("invalid germs") {
  set_precision_bits(256);
  CHECK_THROWS_AS(Germ::polynomial(3, BigReal(0)), std::invalid_argument);
  CHECK_THROWS_AS(Germ::polynomial(0, BigReal(0)), std::invalid_argument);
  CHECK_THROWS_AS(Germ(2, BigReal(-1), {{1, BigReal(1)}}), std::invalid_argument);
  CHECK_THROWS_AS(Germ(2, BigReal(-1), {{2, BigReal(0)}}), std::invalid_argument);
}

TEST_CASE("stacked germ matches the naive composition") {
  set_precision_bits(256);
  const BigReal c("-1.7548776662466927600495");
  const BigReal s1("-0.1075"), s2("0.3");
  const Germ g(2, c, {{3, s1}, {2, s2}});
  CHECK(g.total_period() == 6);
  CHECK(g.chart_scale() == s1 * s2);
  const oracle::NaiveGerm ref{2, c, {{3, s1}, {2, s2}}};
  for (const char* x : {"0", "0.1", "-0.25", "0.5"}) {
    const BigReal t(x);
    CHECK(abs(eval(g, t) - oracle::naive_eval(ref, t)) <= pow2(-200));
  }
  reset_base_eval_count();
  (void)eval(g, BigReal("0.1"));
  CHECK(base_eval_count() == 6);
  CHECK(g.pushed(2, BigReal("0.5")).total_period() == 12);
}

TEST_CASE("escape is reported") {
  set_precision_bits(256);
  const Germ g = Germ::polynomial(2, BigReal(1));
  CHECK_THROWS_AS(iterate(g, BigReal(0), 10), EscapeError);
  CHECK_FALSE(try_iterate(g, BigReal(0), 10).has_value());
  const OrbitSample s = sample_critical_orbit(g, 10);
  CHECK(s.escaped);
  CHECK(s.length() < 10);
  CHECK_THROWS_AS(critical_orbit(g, 10), EscapeError);
  const EscapeError* as_domain = nullptr;
  CHECK(std::is_base_of_v<DomainError, EscapeError>);
  (void)as_domain;
}

TEST_CASE("critical orbit") {
  set_precision_bits(256);
  const Germ g = Germ::polynomial(2, BigReal(-1));
  const OrbitSample s = critical_orbit(g, 4);
  REQUIRE(s.points.size() == 5);
  CHECK(s.points[0] == 0);
  CHECK(s.points[1] == -1);
  CHECK(s.points[2] == 0);
  const auto base = base_critical_orbit(4, BigReal("-0.5"), 3);
  REQUIRE(base.size() == 4);
  CHECK(base[3] == oracle::critical_iterate(4, BigReal("-0.5"), 3));
}

TEST_CASE("orientation reversing fixed point") {
  set_precision_bits(256);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2, -0.01);
  for (int i = 0; i < 20; ++i) {
    const BigReal c(u(rng));
    const BigReal alpha = orientation_reversing_fixed_point(Germ::polynomial(2, c));
    const BigReal expected = (1 - sqrt(1 - 4 * c)) / 2;
    CHECK(abs(alpha - expected) < pow2(-240));
  }
}

TEST_CASE("jet of an iterate") {
  set_precision_bits(256);
  const BigReal c("-0.4");
  const Germ g = Germ::polynomial(4, c);
  const Jet j = eval_jet_iterate(g, 2);
  // (z^4 + c)^4 + c = c^4 + c + 4 c^3 z^4 + ...
  CHECK(abs(j[0] - (pow(c, 4) + c)) < pow2(-250));
  CHECK(abs(j[4] - 4 * pow(c, 3)) < pow2(-250));
  CHECK(j[2] == 0);
}
