#include "unirenorm/horseshoe.hpp"

#include <doctest.h>

#include <cmath>

using namespace unirenorm;

TEST_CASE("truncating the past") {
  const Word w = Word::parse("2:LC|3:LRC|2:LC;3:LRC|2:LC");
  const Word t = truncate_past(w, 1);
  CHECK(t.str() == "2:LC;3:LRC|2:LC");
  CHECK(truncate_past(w, 0).past() == 0);
  CHECK(truncate_past(w, 0).future() == 2);
  CHECK_THROWS_AS(truncate_past(w, 4), std::invalid_argument);
}

TEST_CASE("realize equals explicit renormalization of the tuned polynomial") {
  set_precision_bits(256);
  const Word w = Word::parse("3:LRC;2:LC|2:LC");
  const Germ h = realize(w, 2);
  Word full;
  full.levels = w.levels;
  const Germ expected = renormalize_as(Germ::polynomial(2, tuned_param(2, full)), airplane_level()).germ;
  CHECK(montel_distance(h, expected) == 0);
  CHECK(h.depth() == 1);
  CHECK(abs(eval_jet(h)[2] - 1) < pow2(-224));
  CHECK_THROWS_AS(realize(Word::parse("2:LC;"), 2), std::invalid_argument);
}

TEST_CASE("shift equivariance on a short word") {
  set_precision_bits(256);
  const BigReal e3 = shift_equivariance(Word::parse("2:LC|2:LC|2:LC;2:LC|2:LC"), 2);
  const BigReal e5 = shift_equivariance(Word::parse("2:LC|2:LC|2:LC|2:LC|2:LC;2:LC|2:LC"), 2);
  CHECK(e3 > 0);
  CHECK(e5 < e3);
  CHECK_THROWS_AS(shift_equivariance(Word::parse("2:LC;2:LC"), 2), std::invalid_argument);
}

TEST_CASE("fit of a geometric trace") {
  set_precision_bits(256);
  std::vector<BigReal> d;
  for (int n = 0; n <= 10; ++n) d.push_back(3 * pow(BigReal("0.4"), n));
  const ContractionTrace t = fit_trace(d, 1, 10);
  CHECK(abs(t.fitted_rate - BigReal("0.4")) < BigReal("1e-9"));
  CHECK(t.fit_r2 > BigReal("0.999999"));
  CHECK(t.fit_points == 10);
  CHECK_FALSE(t.exact_zero);

  const ContractionTrace z = fit_trace(std::vector<BigReal>(5, BigReal(0)), 1, 4);
  CHECK(z.exact_zero);
  CHECK(z.fitted_rate == 0);

  std::vector<BigReal> noisy{BigReal(1), noise_floor() / 2, noise_floor() / 4};
  CHECK_THROWS_AS(fit_trace(noisy, 1, 2), DomainError);
}

TEST_CASE("identical seeds contract to zero") {
  set_precision_bits(256);
  Word w;
  w.levels.assign(6, doubling_level());
  const Germ f = Germ::polynomial(2, tuned_param(2, w));
  Word tail;
  tail.levels = {doubling_level()};
  const ContractionTrace t = contraction_rate(tail, f, f, 3);
  CHECK(t.exact_zero);
  CHECK(t.distances.size() == 4);
}

TEST_CASE("early contraction along the doubling tail") {
  set_precision_bits(256);
  Word w;
  w.levels.assign(10, doubling_level());
  const Germ f = Germ::polynomial(2, tuned_param(2, w));
  const Germ g = renormalize_as(f, doubling_level()).germ;
  Word tail;
  tail.levels = {doubling_level()};
  const ContractionTrace t = contraction_rate(tail, f, g, 3);
  REQUIRE(t.distances.size() == 4);
  CHECK(t.distances[3] < t.distances[0]);
  CHECK(t.fitted_rate < 1);
}

TEST_CASE("shadowing gaps shrink") {
  set_precision_bits(256);
  const Word w = Word::parse("2:LC|2:LC|2:LC|2:LC|2:LC|2:LC;2:LC|2:LC");
  const ShadowingTrace s = shadowing(w, 2, 1, 2);
  CHECK(s.n_values == std::vector<int>{1, 2, 3, 4});
  CHECK(s.gaps.size() == 4);
  CHECK(s.slope < 0);
  CHECK(s.gaps.back() < s.gaps.front());
  CHECK_THROWS_AS(shadowing(w, 2, 4, 2), std::invalid_argument);
}
