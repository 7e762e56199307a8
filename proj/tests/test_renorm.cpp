#include "unirenorm/renorm.hpp"

#include "oracles.hpp"

#include "unirenorm/solver.hpp"

#include <doctest.h>

#include <random>

using namespace unirenorm;

TEST_CASE("period-2 renormalization of the basilica by hand") {
  set_precision_bits(256);
  // p^2(z) = z^4 - 2 z^2 at c = -1, so lambda = -1/2 and
  // R p(x) = -2 ((x/2)^4 - 2 (x/2)^2) = x^2 - x^4 / 8.
  const Germ g = Germ::polynomial(2, BigReal(-1));
  CHECK(normalizing_scale(g, 2) == BigReal("-0.5"));
  const Renormalized r = renormalize_min(g, 8);
  CHECK(r.period == 2);
  CHECK(r.combinatorics == doubling_level());
  REQUIRE(r.germ.depth() == 1);
  CHECK(r.germ.stack()[0].scale == BigReal("-0.5"));
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < 16; ++i) {
    const BigReal x(u(rng));
    CHECK(abs(eval(r.germ, x) - (x * x - pow(x, 4) / 8)) < pow2(-250));
  }
  const Jet j = eval_jet(r.germ);
  CHECK(j[2] == 1);
  CHECK(j[4] == BigReal("-0.125"));
}

TEST_CASE("montel distance between two polynomials") {
  set_precision_bits(256);
  const Germ a = Germ::polynomial(2, BigReal(-1));
  const Germ b = Germ::polynomial(2, BigReal("-1.01"));
  CHECK(abs(montel_distance(a, b) - BigReal("0.01")) < pow2(-240));
  CHECK(montel_distance(a, a) == 0);
  CHECK(montel_distance(a, b) == montel_distance(b, a));
  CHECK(MontelMetric{}(a, b) == montel_distance(a, b));
  // z^4 vs z^2 differ most at the edge of [-rho, rho].
  const BigReal rho("0.5");
  const Germ q = Germ::polynomial(4, BigReal(-1));
  CHECK(abs(montel_distance(a, q, rho, 8) - (rho * rho - pow(rho, 4))) < pow2(-240));
}

TEST_CASE("non-renormalizable parameters") {
  set_precision_bits(256);
  CHECK_THROWS_AS(renormalize_min(Germ::polynomial(2, BigReal("-0.5")), 32), NotRenormalizable);
  CHECK_THROWS_AS(renormalize_min(Germ::polynomial(2, BigReal(-2)), 32), NotRenormalizable);
  CHECK(std::is_base_of_v<DomainError, NotRenormalizable>);
}

TEST_CASE("airplane renormalization") {
  set_precision_bits(256);
  const BigReal c = superstable_param(2, airplane_level().itinerary);
  const Germ g = Germ::polynomial(2, c);
  const Renormalized r = renormalize_min(g, 16);
  CHECK(r.period == 3);
  CHECK(r.combinatorics == airplane_level());
  CHECK(combinatorics_of(g, 3) == airplane_level());
  CHECK_THROWS_AS(renormalize_as(g, doubling_level()), NotRenormalizable);
  CHECK(renormalize_as(g, airplane_level()).germ.stack()[0].scale == r.germ.stack()[0].scale);
  // g^3 maps [-b, b] into itself.
  const PreRenorm pre = detect(g, 3);
  CHECK(pre.period == 3);
  CHECK(pre.b > 0);
  CHECK(abs(pre.beta) == pre.b);
  for (int i = 0; i <= 32; ++i) {
    const BigReal x = pre.b * (BigReal(2 * i) / 32 - 1);
    CHECK(abs(oracle::naive_eval({2, c, {{3, BigReal(1)}}}, x)) <= pre.b);
  }
}

TEST_CASE("normalization contract") {
  set_precision_bits(256);
  std::mt19937_64 rng(5);
  for (int d : {2, 4}) {
    Word w;
    w.levels = {doubling_level(), airplane_level(), doubling_level()};
    const BigReal c = tuned_param(d, w);
    Germ g = Germ::polynomial(d, c);
    for (const auto& level : w.levels) {
      if (g.depth() + 1 == w.size()) break;
      g = renormalize_as(g, level).germ;
      const Jet j = eval_jet(g);
      CHECK(abs(j[d] - 1) < pow2(-224));
      CHECK(j[1] == 0);
    }
  }
}

TEST_CASE("apply and normalize agree") {
  set_precision_bits(256);
  const Germ g = Germ::polynomial(4, BigReal("-1.4"));
  const BigReal s = normalizing_scale(g, 2);
  const Germ n = normalize(g, 2);
  CHECK(n.stack().back().scale == s);
  CHECK(n.stack().back().period == 2);
  const Jet j = eval_jet(n);
  CHECK(abs(j[4] - 1) < pow2(-224));
}
