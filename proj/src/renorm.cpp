#include "unirenorm/renorm.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <utility>

namespace unirenorm {
namespace {

std::string period_tag(int p) { return "period " + std::to_string(p); }

/// s * g^p(t) - t, with an escaped orbit counted as +infinity.
struct CrossingFunction {
  const Germ& g;
  int p;
  int s;
  std::optional<BigReal> operator()(const BigReal& t) const {
    auto y = try_iterate(g, t, static_cast<std::uint64_t>(p));
    if (!y) return std::nullopt;
    return BigReal(s) * *y - t;
  }
  bool positive(const BigReal& t) const {
    auto h = (*this)(t);
    return !h || *h > 0;
  }
};

/// Golden-section search for the minimum of H on [lo, hi].
std::pair<BigReal, BigReal> minimize(const CrossingFunction& h, BigReal lo, BigReal hi) {
  const BigReal ratio = (sqrt(BigReal(5)) - 1) / 2;
  auto value = [&](const BigReal& t) {
    auto v = h(t);
    return v ? *v : BigReal(1e30);
  };
  BigReal x1 = hi - ratio * (hi - lo), x2 = lo + ratio * (hi - lo);
  BigReal f1 = value(x1), f2 = value(x2);
  for (int it = 0; it < 120; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - ratio * (hi - lo);
      f1 = value(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + ratio * (hi - lo);
      f2 = value(x2);
    }
  }
  return f1 < f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

}  // namespace

LevelCombinatorics combinatorics_of(const Germ& g, int p) {
  const auto orbit = sample_critical_orbit(g, static_cast<std::size_t>(p) - 1);
  if (orbit.escaped) throw NotRenormalizable("critical orbit escapes before " + period_tag(p));
  std::vector<Symbol> symbols;
  for (int i = 1; i < p; ++i) {
    const auto& x = orbit.points[static_cast<std::size_t>(i)];
    if (x == 0) throw NotRenormalizable("critical point is periodic with period below " + std::to_string(p));
    symbols.push_back(x < 0 ? Symbol::L : Symbol::R);
  }
  symbols.push_back(Symbol::C);
  try {
    return LevelCombinatorics(Itinerary(std::move(symbols)));
  } catch (const std::invalid_argument& e) {
    throw NotRenormalizable(e.what());
  }
}

PreRenorm detect(const Germ& g, int p, const DetectOptions& options) {
  if (p < 2) throw std::invalid_argument("renormalization period must be >= 2");
  const auto orbit = sample_critical_orbit(g, static_cast<std::size_t>(p));
  if (orbit.escaped) throw NotRenormalizable("critical orbit escapes before " + period_tag(p));
  const auto& x = orbit.points;

  int s = 1;
  BigReal m;
  for (int i = 1; i < p; ++i) {
    const auto& xi = x[static_cast<std::size_t>(i)];
    if (xi == 0) throw NotRenormalizable("critical point has period below " + std::to_string(p));
    if (xi < 0) s = -s;
    if (i == 1 || abs(xi) < m) m = abs(xi);
  }

  // beta = s*b solves s*g^p(t) = t; it is the first upward crossing on (0, m).
  const CrossingFunction h{g, p, s};
  const int n = options.search_grid;
  std::vector<BigReal> ts;
  std::vector<std::optional<BigReal>> hs;
  // Geometric points resolve little intervals far smaller than m / n.
  ts.emplace_back(0);
  for (int k = precision_bits() / 2; k > 0; --k) {
    BigReal t = m * pow2(-k);
    if (t < m / n) ts.push_back(std::move(t));
  }
  for (int k = 1; k <= n; ++k) ts.push_back(m * k / n);
  for (const auto& t : ts) hs.push_back(h(t));
  auto pos = [](const std::optional<BigReal>& v) { return !v || *v > 0; };
  std::optional<std::pair<BigReal, BigReal>> bracket;
  const int last = static_cast<int>(ts.size()) - 1;
  for (int k = 0; k < last && !bracket; ++k)
    if (!pos(hs[static_cast<std::size_t>(k)]) && pos(hs[static_cast<std::size_t>(k) + 1]))
      bracket = std::pair{ts[static_cast<std::size_t>(k)], ts[static_cast<std::size_t>(k) + 1]};
  if (!bracket) {
    // A dip below zero narrower than the grid (near-parabolic little map).
    for (int k = 1; k < last && !bracket; ++k) {
      const auto &a = hs[static_cast<std::size_t>(k) - 1], &mid = hs[static_cast<std::size_t>(k)],
                 &c = hs[static_cast<std::size_t>(k) + 1];
      if (!a || !mid || !c || !(*mid < *a && *mid <= *c)) continue;
      auto [tmin, hmin] = minimize(h, ts[static_cast<std::size_t>(k) - 1], ts[static_cast<std::size_t>(k) + 1]);
      if (hmin <= 0) bracket = std::pair{tmin, ts[static_cast<std::size_t>(k) + 1]};
    }
  }
  if (!bracket) throw NotRenormalizable("no repelling period-" + std::to_string(p) + " boundary point found");

  auto [lo, hi] = *bracket;
  const BigReal tol = pow2(-(precision_bits() - 16)) * m;
  for (int it = 0; it < 4 * precision_bits() && hi - lo > tol; ++it) {
    BigReal mid = (lo + hi) / 2;
    if (mid == lo || mid == hi) break;
    (h.positive(mid) ? hi : lo) = mid;
  }
  PreRenorm pre{p, (lo + hi) / 2, BigReal(0)};
  pre.beta = BigReal(s) * pre.b;
  const BigReal& b = pre.b;
  const BigReal slack = pow2(-precision_bits() / 2) * b;

  const auto& critical_value = x[static_cast<std::size_t>(p)];
  if (abs(critical_value) > b + slack)
    throw NotRenormalizable("critical value g^p(0) leaves [-b, b] for " + period_tag(p));
  const int grid = options.invariance_grid;
  for (int k = 0; k < grid; ++k) {
    const BigReal t = -b + BigReal(2) * b * k / (grid - 1);
    auto y = try_iterate(g, t, static_cast<std::uint64_t>(p));
    if (!y || abs(*y) > b + slack) throw NotRenormalizable("g^p does not keep [-b, b] invariant for " + period_tag(p));
  }

  // Images g^i([-b, b]) = hull(x_i, g^i(b)) must have disjoint interiors.
  std::vector<std::pair<BigReal, BigReal>> images;
  images.emplace_back(-b, b);
  BigReal y = b;
  for (int i = 1; i < p; ++i) {
    auto next = try_iterate(g, y, 1);
    if (!next) throw NotRenormalizable("boundary orbit escapes");
    y = *next;
    const auto& xi = x[static_cast<std::size_t>(i)];
    if (xi < y)
      images.emplace_back(xi, y);
    else
      images.emplace_back(y, xi);
  }
  std::sort(images.begin(), images.end(), [](const auto& u, const auto& v) { return u.first < v.first; });
  for (std::size_t i = 0; i + 1 < images.size(); ++i)
    if (images[i].second > images[i + 1].first + slack)
      throw NotRenormalizable("the " + std::to_string(p) + " interval images overlap");
  return pre;
}

BigReal normalizing_scale(const Germ& g, int p) {
  const Jet jet = eval_jet_iterate(g, static_cast<std::uint64_t>(p));
  const BigReal& ad = jet[g.degree()];
  if (ad == 0) throw DomainError("z^d coefficient vanishes; cannot normalize");
  return real_root(BigReal(1) / ad, g.degree() - 1);
}

Germ normalize(const Germ& g, int p) { return g.pushed(p, normalizing_scale(g, p)); }

Germ apply(const Germ& g, const PreRenorm& pre) { return normalize(g, pre.period); }

Renormalized renormalize_min(const Germ& g, int p_max) {
  if (p_max < 2) throw std::invalid_argument("p_max must be >= 2");
  for (int p = 2; p <= p_max; ++p) {
    try {
      auto pre = detect(g, p);
      auto comb = combinatorics_of(g, p);
      return Renormalized{p, apply(g, pre), std::move(pre), std::move(comb)};
    } catch (const NotRenormalizable&) {
    }
  }
  throw NotRenormalizable("not renormalizable with any period <= " + std::to_string(p_max));
}

Renormalized renormalize_as(const Germ& g, const LevelCombinatorics& level) {
  auto pre = detect(g, level.period);
  auto comb = combinatorics_of(g, level.period);
  if (!(comb == level))
    throw NotRenormalizable("detected combinatorics " + comb.str() + " differs from prescribed " + level.str());
  return Renormalized{level.period, apply(g, pre), std::move(pre), std::move(comb)};
}

BigReal montel_distance(const Germ& g1, const Germ& g2, const BigReal& rho, int grid) {
  if (grid < 2) throw std::invalid_argument("montel grid must be >= 2");
  BigReal worst(0);
  for (int k = grid / 2; k < grid; ++k) {
    const BigReal x = -rho + BigReal(2) * rho * k / (grid - 1);
    const BigReal t = abs(x);
    const BigReal diff = abs(eval(g1, t) - eval(g2, t));
    if (diff > worst) worst = diff;
  }
  return worst;
}

BigReal montel_distance(const Germ& g1, const Germ& g2) {
  return montel_distance(g1, g2, default_montel_rho(), kDefaultMontelGrid);
}

}  // namespace unirenorm
