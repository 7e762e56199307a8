#include "unirenorm/germ.hpp"

#include <stdexcept>

namespace unirenorm {
namespace {

thread_local std::uint64_t t_base_evals = 0;

BigReal escape_radius_for(int degree, const BigReal& c) {
  BigReal r = BigReal(2) * real_root(abs(c), degree) + 1;
  return r > 2 ? r : BigReal(2);
}

}  // namespace

Germ::Germ(int degree, BigReal base_param, std::vector<RenormLevel> stack)
    : degree_(degree), base_param_(std::move(base_param)), stack_(std::move(stack)), chart_scale_(1) {
  if (degree < 2 || degree % 2 != 0) throw std::invalid_argument("degree must be even and >= 2");
  for (const auto& level : stack_) {
    if (level.period < 2) throw std::invalid_argument("level period must be >= 2");
    if (level.scale == 0) throw std::invalid_argument("level scale must be nonzero");
    total_period_ *= static_cast<std::uint64_t>(level.period);
    chart_scale_ = chart_scale_ * level.scale;
  }
  base_escape_radius_ = escape_radius_for(degree_, base_param_);
}

BigReal Germ::escape_radius() const { return base_escape_radius_ / abs(chart_scale_); }

Germ Germ::pushed(int period, const BigReal& scale) const {
  auto stack = stack_;
  stack.push_back({period, scale});
  return Germ(degree_, base_param_, std::move(stack));
}

std::uint64_t base_eval_count() { return t_base_evals; }
void reset_base_eval_count() { t_base_evals = 0; }

BigReal base_step(int degree, const BigReal& c, const BigReal& y) {
  ++t_base_evals;
  return ipow(y, degree) + c;
}

std::optional<BigReal> try_iterate(const Germ& g, const BigReal& x, std::uint64_t n) {
  const BigReal& radius = g.base_escape_radius();
  const BigReal& c = g.base_param();
  const int d = g.degree();
  BigReal y = g.chart_scale() * x;
  const std::uint64_t steps = n * g.total_period();
  for (std::uint64_t i = 0; i < steps; ++i) {
    y = base_step(d, c, y);
    if (abs(y) > radius) return std::nullopt;
  }
  return y / g.chart_scale();
}

BigReal iterate(const Germ& g, const BigReal& x, std::uint64_t n) {
  auto y = try_iterate(g, x, n);
  if (!y) throw EscapeError("orbit escaped the radius " + to_decimal(g.base_escape_radius(), 6));
  return *y;
}

BigReal eval(const Germ& g, const BigReal& x) { return iterate(g, x, 1); }

Jet eval_jet_iterate(const Germ& g, std::uint64_t n) {
  const int d = g.degree();
  const int order = d + 2;
  const BigReal& c = g.base_param();
  Jet jet = Jet::linear(g.chart_scale(), order);
  const std::uint64_t steps = n * g.total_period();
  for (std::uint64_t i = 0; i < steps; ++i) {
    ++t_base_evals;
    jet = ipow(jet, d) + c;
  }
  return jet / g.chart_scale();
}

Jet eval_jet(const Germ& g) { return eval_jet_iterate(g, 1); }

OrbitSample sample_critical_orbit(const Germ& g, std::size_t m) {
  OrbitSample sample;
  sample.points.reserve(m + 1);
  sample.points.emplace_back(0);
  for (std::size_t j = 0; j < m; ++j) {
    auto next = try_iterate(g, sample.points.back(), 1);
    if (!next) {
      sample.escaped = true;
      break;
    }
    sample.points.push_back(std::move(*next));
  }
  return sample;
}

OrbitSample critical_orbit(const Germ& g, std::size_t m) {
  auto sample = sample_critical_orbit(g, m);
  if (sample.escaped)
    throw EscapeError("critical orbit escaped after " + std::to_string(sample.length()) + " of " +
                      std::to_string(m) + " steps");
  return sample;
}

std::vector<BigReal> base_critical_orbit(int degree, const BigReal& c, std::uint64_t n) {
  const BigReal radius = escape_radius_for(degree, c);
  std::vector<BigReal> orbit;
  orbit.reserve(n + 1);
  orbit.emplace_back(0);
  for (std::uint64_t i = 0; i < n; ++i) {
    BigReal y = base_step(degree, c, orbit.back());
    if (abs(y) > radius) break;
    orbit.push_back(std::move(y));
  }
  return orbit;
}

BigReal orientation_reversing_fixed_point(const Germ& g) {
  // F(x) = g(x) - x is strictly decreasing on the negative half-line of the
  // polynomial; an escaped value counts as F > 0.
  auto positive = [&](const BigReal& x) {
    auto y = try_iterate(g, x, 1);
    return !y || *y - x > 0;
  };
  const BigReal zero(0);
  if (positive(zero) || eval(g, zero) == 0)
    throw DomainError("no orientation-reversing fixed point (g(0) >= 0)");

  BigReal lo, hi(0);
  if (g.depth() == 0) {
    lo = -g.escape_radius();
  } else {
    // Deep germs are unimodal only near 0: walk outward to the first sign change.
    const BigReal step = pow2(-6);
    const BigReal limit = g.escape_radius();
    BigReal x = -step;
    while (!positive(x)) {
      hi = x;
      x = x - step;
      if (-x > limit) throw DomainError("no orientation-reversing fixed point within the escape radius");
    }
    lo = x;
  }
  if (!positive(lo)) throw DomainError("no orientation-reversing fixed point (no sign change)");

  const BigReal tol = pow2(-(precision_bits() - 16));
  const int cap = 4 * precision_bits();
  for (int it = 0; it < cap && hi - lo > tol * (abs(lo) > 1 ? abs(lo) : BigReal(1)); ++it) {
    BigReal mid = (lo + hi) / 2;
    if (mid == lo || mid == hi) break;
    (positive(mid) ? lo : hi) = mid;
  }
  return (lo + hi) / 2;
}

}  // namespace unirenorm
