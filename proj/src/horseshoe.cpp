#include "unirenorm/horseshoe.hpp"

#include <cmath>
#include <stdexcept>

namespace unirenorm {

Germ realize(const Word& w, int degree) {
  if (w.future() == 0) throw std::invalid_argument("word needs a level 0");
  Germ g = Germ::polynomial(degree, tuned_param(degree, w));
  for (std::size_t n = 0; n < w.past(); ++n) {
    const auto& expected = w.levels[n];
    const auto r = renormalize_min(g, expected.period);
    if (!(r.combinatorics == expected))
      throw DomainError("combinatorics mismatch at renormalization " + std::to_string(n) + ": detected " +
                        r.combinatorics.str() + ", word has " + expected.str());
    g = r.germ;
  }
  return g;
}

Word truncate_past(const Word& w, std::size_t past) {
  if (past > w.past()) throw std::invalid_argument("cannot extend the past of a word");
  Word out;
  out.levels.assign(w.levels.begin() + static_cast<long>(w.past() - past), w.levels.end());
  out.origin = past;
  return out;
}

BigReal shift_equivariance(const Word& w, int degree, const MontelMetric& metric) {
  if (w.future() < 2) throw std::invalid_argument("shift equivariance needs at least two future levels");
  const Germ h = realize(w, degree);
  const Germ rh = renormalize_as(h, w.at(0)).germ;
  return metric(rh, realize(shift(w), degree));
}

BigReal noise_floor() { return pow2(-precision_bits() / 2); }

ContractionTrace fit_trace(std::vector<BigReal> distances, std::size_t first, std::size_t last) {
  ContractionTrace t;
  t.distances = std::move(distances);
  t.exact_zero = true;
  for (const auto& d : t.distances) t.exact_zero = t.exact_zero && d == 0;
  if (t.exact_zero) {
    t.fitted_rate = 0;
    t.fit_r2 = 1;
    return t;
  }
  std::vector<double> xs, ys;
  const BigReal floor = noise_floor();
  for (std::size_t n = first; n <= last && n < t.distances.size(); ++n) {
    if (!(t.distances[n] > floor)) continue;
    xs.push_back(static_cast<double>(n));
    ys.push_back(static_cast<double>(log(t.distances[n])));
  }
  t.fit_points = static_cast<int>(xs.size());
  if (xs.size() < 2) throw DomainError("fewer than two distances above the noise floor");
  const auto fit = fit_line(xs, ys);
  t.fitted_rate = exp(BigReal(fit.slope));
  t.fit_r2 = fit.r2;
  return t;
}

ContractionTrace contraction_rate(const Word& tail, const Germ& f_seed, const Germ& g_seed, int n_max,
                                  const MontelMetric& metric) {
  if (tail.empty()) throw std::invalid_argument("tail word must be nonempty");
  if (n_max < 2) throw std::invalid_argument("n_max must be >= 2");
  std::vector<BigReal> distances;
  Germ f = f_seed;
  Germ g = g_seed;
  distances.push_back(metric(f, g));
  for (int n = 0; n < n_max; ++n) {
    const auto& level = tail.levels[static_cast<std::size_t>(n) % tail.size()];
    try {
      f = renormalize_as(f, level).germ;
      g = renormalize_as(g, level).germ;
    } catch (const NotRenormalizable& e) {
      throw DomainError("cascades diverge at step " + std::to_string(n) + ": " + e.what());
    }
    distances.push_back(metric(f, g));
  }
  return fit_trace(std::move(distances), 1, static_cast<std::size_t>(n_max));
}

ShadowingTrace shadowing(const Word& w, int degree, int n_min, int step, const MontelMetric& metric) {
  if (n_min < 0 || step < 1) throw std::invalid_argument("need n_min >= 0 and step >= 1");
  const int n_max = static_cast<int>(w.past()) - step;
  if (n_max < n_min + 1) throw std::invalid_argument("word past too short for two gaps");
  ShadowingTrace t;
  t.word = w;
  t.step = step;
  std::vector<Germ> h;
  for (int n = n_min; n <= n_max + step; ++n) h.push_back(realize(truncate_past(w, static_cast<std::size_t>(n)), degree));
  std::vector<double> xs, ys;
  for (int n = n_min; n <= n_max; ++n) {
    BigReal gap = metric(h[static_cast<std::size_t>(n - n_min)], h[static_cast<std::size_t>(n - n_min + step)]);
    t.n_values.push_back(n);
    if (gap > 0) {
      xs.push_back(n);
      ys.push_back(static_cast<double>(log(gap)));
    }
    t.gaps.push_back(std::move(gap));
  }
  if (xs.size() < 2) throw DomainError("fewer than two nonzero shadowing gaps");
  const auto fit = fit_line(xs, ys);
  t.slope = fit.slope;
  t.fit_r2 = fit.r2;
  return t;
}

}  // namespace unirenorm
