#include "unirenorm/nest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace unirenorm {
namespace {

// First exits of the base polynomial along its critical orbit.
//
// exit(k, X_i, dir, lim) is the first point y reached moving from X_i in
// direction dir (never past lim) with |f^k(y)| >= A. Moving y changes
// f(y) = c + y^d monotonically until y crosses 0, after which the motion of
// f(y) restarts at the critical value c = X_1; the walk therefore descends
// the critical orbit and every start point and limit is an orbit point.
class ExitFinder {
 public:
  ExitFinder(int degree, BigReal c, BigReal target) : d_(degree), c_(std::move(c)), target_(std::move(target)) {
    orbit_.emplace_back(0);
  }

  struct Exit {
    BigReal y;
    int side = 1;  // sign of f^k(y), i.e. which end of [-A, A] is hit
  };

  /// Component of f^{-k}((-A, A)) containing 0 ends at +/- result.y.
  std::optional<Exit> central(std::uint64_t k) { return walk(k, 0, +1, std::nullopt); }

  const BigReal& point(std::uint64_t i) {
    extend(i);
    return orbit_[i];
  }

 private:
  struct Frame {
    std::uint64_t level;
    std::uint64_t start;
    int dir;
    std::optional<std::uint64_t> lim;
    bool toward;
    bool stopped_at_lim;
  };

  void extend(std::uint64_t i) {
    while (orbit_.size() <= i) orbit_.push_back(ipow(orbit_.back(), d_) + c_);
  }

  BigReal branch(int side, const BigReal& z) const {
    BigReal rad = z - c_;
    if (rad < 0) rad = 0;
    return side * real_root(rad, d_);
  }

  std::optional<Exit> walk(std::uint64_t k, std::uint64_t start, int dir, std::optional<std::uint64_t> lim) {
    extend(start + k + 1);
    std::vector<Frame> frames;
    frames.reserve(k);
    std::uint64_t level = k;
    while (level > 0) {
      const BigReal& y0 = orbit_[start];
      const bool toward = y0 != 0 && sign(y0) != dir;
      Frame f{level, start, dir, lim, toward, false};
      if (!toward) {
        lim = lim ? std::optional<std::uint64_t>(*lim + 1) : std::nullopt;
        dir = +1;
      } else {
        // Stop at lim if it comes before 0, otherwise at 0.
        std::uint64_t stop = 0;
        if (lim && (orbit_[*lim] == 0 || sign(orbit_[*lim]) == sign(y0))) {
          stop = *lim;
          f.stopped_at_lim = true;
        }
        lim = stop + 1;
        dir = -1;
      }
      frames.push_back(f);
      start = start + 1;
      --level;
    }

    std::optional<Exit> result;
    {
      const BigReal& y0 = orbit_[start];
      if (abs(y0) >= target_) {
        result = Exit{y0, sign(y0)};
      } else {
        BigReal y = dir * target_;
        const bool beyond = lim && (dir > 0 ? y > orbit_[*lim] : y < orbit_[*lim]);
        if (!beyond) result = Exit{std::move(y), dir};
      }
    }

    for (auto it = frames.rbegin(); it != frames.rend(); ++it) {
      const Frame& f = *it;
      const BigReal& y0 = orbit_[f.start];
      if (!f.toward) {
        if (result) result->y = branch(f.dir, result->y);
        continue;
      }
      if (result) {
        result->y = branch(sign(y0), result->y);
        continue;
      }
      if (f.stopped_at_lim) continue;
      // Through 0 and out the other side: f(y) moves right from c again.
      auto past = from_critical_value(f.level - 1);
      if (past && f.lim && past->y > orbit_[*f.lim + 1]) past.reset();
      if (past) result = Exit{branch(f.dir, past->y), past->side};
    }
    return result;
  }

  std::optional<Exit> from_critical_value(std::uint64_t k) {
    auto it = memo_.find(k);
    if (it != memo_.end()) return it->second;
    auto r = walk(k, 1, +1, std::nullopt);
    memo_.emplace(k, r);
    return r;
  }

  int d_;
  BigReal c_;
  BigReal target_;
  std::vector<BigReal> orbit_;
  std::map<std::uint64_t, std::optional<Exit>> memo_;
};

struct Pullback {
  BigReal half_width;
  int side = 1;  // in base coordinates
};

Pullback central_pullback(const Germ& g, const BigReal& a, std::uint64_t n) {
  const BigReal scale = abs(g.chart_scale());
  ExitFinder finder(g.degree(), g.base_param(), a * scale);
  const auto exit = finder.central(n * g.total_period());
  if (!exit) throw DomainError("pullback of the interval has no boundary");
  return {abs(exit->y) / scale, exit->side};
}

}  // namespace

std::uint64_t NestReport::depth_of_level(std::size_t n) const {
  std::uint64_t w = 0;
  for (std::size_t k = 0; k < n && k < v.size(); ++k) w += v[k];
  return w;
}

BigReal pullback_half_width(const Germ& g, const BigReal& a0, std::uint64_t n) {
  if (n == 0) return a0;
  const auto orbit = sample_critical_orbit(g, n);
  if (orbit.escaped || !(abs(orbit.points.back()) < a0))
    throw DomainError("depth " + std::to_string(n) + " is not admissible: g^n(0) lies outside I_0");
  return central_pullback(g, a0, n).half_width;
}

NestReport build_nest(const Germ& g, int max_levels) {
  NestOptions options;
  options.max_levels = max_levels;
  return build_nest(g, options);
}

NestReport build_nest(const Germ& g, const NestOptions& options) {
  try {
    detect(g, 2);
    throw DomainError("Appendix-A scope requires period > 2: the germ is renormalizable with period 2");
  } catch (const NotRenormalizable&) {
  }

  NestReport r;
  r.degree = g.degree();
  r.alpha = orientation_reversing_fixed_point(g);
  r.a.push_back(abs(r.alpha));

  const std::uint64_t q = g.total_period();
  const BigReal scale = abs(g.chart_scale());
  ExitFinder orbit(g.degree(), g.base_param(), BigReal(0));
  const BigReal& radius = g.base_escape_radius();
  auto germ_point = [&](std::uint64_t i) -> const BigReal& {
    const BigReal& y = orbit.point(i * q);
    if (abs(y) > radius) throw EscapeError("critical orbit escaped while building the nest");
    return y;
  };

  int run_start = -1;
  bool terminal = false;
  for (int n = 0; n < options.max_levels; ++n) {
    const BigReal bound = r.a.back() * scale;
    std::uint64_t v = 1;
    while (!(abs(germ_point(v)) < bound)) {
      if (++v > options.max_return) throw DomainError("no return to I_" + std::to_string(n) + " within budget");
    }
    const auto pb = central_pullback(g, r.a.back(), v);
    if (!(pb.half_width < r.a.back()))
      throw DomainError("nesting violation at level " + std::to_string(n));
    r.v.push_back(v);
    r.lambda.push_back(pb.half_width / r.a.back());
    r.central.push_back(abs(germ_point(v)) < pb.half_width * scale);
    r.a.push_back(pb.half_width);

    if (!r.central.back()) {
      run_start = -1;
      continue;
    }
    if (run_start < 0 || r.v[static_cast<std::size_t>(run_start)] != v) run_start = n;
    if (n - run_start + 1 == options.tail_confirm) {
      bool renormalizable = v > 2 && v <= static_cast<std::uint64_t>(std::numeric_limits<int>::max());
      if (renormalizable) {
        try {
          detect(g, static_cast<int>(v));
        } catch (const NotRenormalizable&) {
          renormalizable = false;
        }
      }
      if (renormalizable) {
        terminal = true;
        break;
      }
    }
  }
  if (!terminal) throw DomainError("terminal level not confirmed within " + std::to_string(options.max_levels) + " levels");

  r.terminal_level = run_start;
  r.renorm_period = r.v[static_cast<std::size_t>(run_start)];
  r.j.push_back(0);
  for (int n = 1; n <= r.terminal_level; ++n)
    if (!r.central[static_cast<std::size_t>(n - 1)]) r.j.push_back(n);
  if (r.j.back() != r.terminal_level) r.j.push_back(r.terminal_level);
  r.height = static_cast<int>(r.j.size()) - 1;

  r.sjk_ok = true;
  for (int jk : r.j) {
    if (jk < 2) continue;
    std::uint64_t sum = 0;
    for (int n = 0; n <= jk - 2; ++n) sum += r.v[static_cast<std::size_t>(n)];
    if (r.v[static_cast<std::size_t>(jk)] < sum) r.sjk_ok = false;
  }

  // T_p and T_{w_{N-1}} = I_{N-1} are both pulled back from I_0 so that the
  // comparison is exact when they coincide.
  const BigReal& a0 = r.a.front();
  r.tp_half_width = central_pullback(g, a0, r.renorm_period).half_width;
  const std::size_t outer = r.terminal_level > 0 ? static_cast<std::size_t>(r.terminal_level - 1) : 0;
  const BigReal outer_half = outer == 0 ? a0 : central_pullback(g, a0, r.depth_of_level(outer)).half_width;
  r.iprime0_ok = r.tp_half_width <= outer_half;
  return r;
}

void AprioriReport::merge(const AprioriReport& other) {
  if (other.max_lambda_jk > max_lambda_jk) max_lambda_jk = other.max_lambda_jk;
  if (other.c_top > c_top) c_top = other.c_top;
  if (other.c_corollary > c_corollary) c_corollary = other.c_corollary;
  lambdas_in_unit = lambdas_in_unit && other.lambdas_in_unit;
}

AprioriReport check_apriori(const NestReport& r) {
  AprioriReport out;
  out.max_lambda_jk = 0;
  out.c_corollary = 0;
  for (std::size_t n = 0; n < r.lambda.size(); ++n) {
    if (!(r.lambda[n] > 0 && r.lambda[n] < 1)) {
      out.lambdas_in_unit = false;
      out.unit_violations.push_back(n);
    }
  }
  for (int jk : r.j) {
    const auto& l = r.lambda.at(static_cast<std::size_t>(jk));
    if (l > out.max_lambda_jk) out.max_lambda_jk = l;
  }
  out.c_top = out.max_lambda_jk < 1 ? BigReal(1) / (1 - out.max_lambda_jk) : BigReal(0);
  for (std::size_t n = 0; n + 1 < r.lambda.size(); ++n) {
    const BigReal ratio = r.lambda[n + 1] / real_root(r.lambda[n], r.degree);
    if (ratio > out.c_corollary) out.c_corollary = ratio;
  }
  return out;
}

const char* cascade_type_name(CascadeType t) {
  switch (t) {
    case CascadeType::SaddleNode: return "saddle-node";
    case CascadeType::UlamNeumann: return "ulam-neumann";
    case CascadeType::TerminalCentral: return "terminal-central";
  }
  return "?";
}

const CascadeRun* CascadeReport::longest(CascadeType t) const {
  const CascadeRun* best = nullptr;
  for (const auto& run : runs)
    if (run.type == t && (!best || run.length > best->length)) best = &run;
  return best;
}

CascadeReport classify_cascades(const Germ& g, const NestReport& r) {
  CascadeReport out;
  out.run_of_level.assign(r.levels(), -1);
  std::size_t n = 0;
  while (n < r.levels()) {
    if (!r.central[n]) {
      ++n;
      continue;
    }
    std::size_t end = n;
    while (end < r.levels() && r.central[end]) ++end;
    CascadeRun run;
    run.start_level = static_cast<int>(n);
    run.length = static_cast<int>(end - n) + 1;
    run.step = r.v[n];
    for (std::size_t k = n; k < end; ++k) {
      run.uniform_step = run.uniform_step && r.v[k] == run.step;
      out.run_of_level[k] = static_cast<int>(out.runs.size());
      run.profile.push_back(r.a[k] / r.a[k + 1] - 1);
    }
    if (n > 0) run.top_lambda = r.lambda[n - 1];
    if (static_cast<int>(n) == r.terminal_level) {
      run.type = CascadeType::TerminalCentral;
    } else {
      // 0 ∈ g^{v}(T_{n_2}) = hull(g^v(0), g^v(a_{n+1})) decides the type.
      const BigReal top = iterate(g, BigReal(0), run.step);
      const BigReal edge = iterate(g, r.a[n + 1], run.step);
      run.type = sign(top) == sign(edge) ? CascadeType::SaddleNode : CascadeType::UlamNeumann;
    }
    out.runs.push_back(std::move(run));
    n = end;
  }
  return out;
}

YoccozReport yoccoz_check(const CascadeRun& run) {
  const int L = run.length;
  if (L < 12) throw DomainError("cascade too short for the Yoccoz estimate: L = " + std::to_string(L));
  YoccozReport out;
  out.length = L;
  const int lo = std::max(1, static_cast<int>(std::ceil(0.1 * L)));
  const int hi = std::min(L - 1, static_cast<int>(std::floor(0.9 * L)));
  for (int i = lo; i <= hi; ++i) {
    const BigReal& p = run.profile.at(static_cast<std::size_t>(i - 1));
    const int mx = std::max(i, L - i);
    const int mn = std::min(i, L - i);
    out.indices.push_back(i);
    out.r_max_form.push_back(p * mx * mx);
    out.r_min_form.push_back(p * mn * mn);
  }
  auto spread = [](const std::vector<BigReal>& xs) {
    const auto [mn, mx] = std::minmax_element(xs.begin(), xs.end());
    return *mx / *mn;
  };
  out.ratio_max_form = spread(out.r_max_form);
  out.ratio_min_form = spread(out.r_min_form);
  out.symmetry = 1;
  for (std::size_t k = 0; k < out.indices.size(); ++k) {
    const int mirror = L - out.indices[k];
    if (mirror < lo || mirror > hi) continue;
    const BigReal& a = out.r_max_form[k];
    const BigReal& b = out.r_max_form[static_cast<std::size_t>(mirror - lo)];
    const BigReal f = a > b ? a / b : b / a;
    if (f > out.symmetry) out.symmetry = f;
  }
  return out;
}

YoccozReport yoccoz_check(const CascadeReport& c) {
  const CascadeRun* run = c.longest(CascadeType::SaddleNode);
  if (!run) throw DomainError("no saddle-node cascade in the nest");
  return yoccoz_check(*run);
}

BigReal safety(const Germ& g, const NestReport& r, std::size_t level, std::size_t orbit_len) {
  if (orbit_len < r.renorm_period) throw std::invalid_argument("orbit_len must be at least the renormalization period");
  const BigReal& a = r.a.at(level);
  const auto orbit = critical_orbit(g, orbit_len);
  BigReal best = 2 * a;
  for (std::size_t i = 1; i < orbit.points.size(); ++i) {
    const BigReal dist = abs(abs(orbit.points[i]) - a);
    if (dist < best) best = dist;
  }
  return best / (2 * a);
}

BigReal transition_value(const Germ& g, const TransitionMap& t, const BigReal& x) {
  return iterate(g, x * t.tn, t.from_depth - t.to_depth) / t.tm;
}

TransitionMap transition_map(const Germ& g, std::uint64_t n, std::uint64_t m, int grid) {
  if (!(n > m)) throw std::invalid_argument("transition map needs n > m");
  if (grid < 2) throw std::invalid_argument("grid must be >= 2");
  const BigReal a0 = abs(orientation_reversing_fixed_point(g));
  const auto orbit = critical_orbit(g, n);
  auto admissible = [&](std::uint64_t k) { return abs(orbit.points[k]) < a0; };
  if (!admissible(n) || !admissible(m)) throw DomainError("T_n and T_m must both be admissible");

  std::map<std::uint64_t, BigReal> half;
  auto t_of = [&](std::uint64_t k) -> const BigReal& {
    auto it = half.find(k);
    if (it == half.end()) it = half.emplace(k, pullback_half_width(g, a0, k)).first;
    return it->second;
  };
  auto is_pullback = [&](std::uint64_t from, std::uint64_t to) {
    return admissible(to) && abs(orbit.points[from - to]) < t_of(to);
  };
  if (!is_pullback(n, m)) throw DomainError("T_n is not a pullback of T_m");

  TransitionMap t;
  t.from_depth = n;
  t.to_depth = m;
  t.tn = t_of(n);
  t.tm = t_of(m);

  // Canonical decomposition: the moments k in [m, n] with g^{n-k}(0) ∈ T_k.
  t.decomposition.push_back(m);
  for (std::uint64_t k = m + 1; k < n; ++k)
    if (is_pullback(n, k)) t.decomposition.push_back(k);
  t.decomposition.push_back(n);
  t.kind = t.decomposition.size() == 2 ? TransitionKind::Short : TransitionKind::Long;

  t.max_slope = 0;
  for (int k = 0; k < grid; ++k) {
    BigReal x = BigReal(-1) + BigReal(2 * k) / (grid - 1);
    BigReal y = transition_value(g, t, x);
    if (k > 0) {
      const auto& [px, py] = t.samples.back();
      const BigReal slope = abs(y - py) / (x - px);
      if (slope > t.max_slope) t.max_slope = slope;
    }
    t.samples.emplace_back(std::move(x), std::move(y));
  }

  if (t.kind == TransitionKind::Short) {
    BigReal margin = -1;
    for (std::uint64_t i = 1; i + m < n; ++i) {
      const BigReal dist = abs(orbit.points[i]) - t.tm;
      if (dist <= 0) continue;
      if (margin < 0 || dist < margin) margin = dist;
    }
    if (margin >= 0) t.goodness = margin / (2 * t.tm);
  }
  return t;
}

}  // namespace unirenorm
