#pragma once

#include "unirenorm/numerics.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace unirenorm {

/// The critical orbit left the escape radius.
class EscapeError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// One renormalization level: g_i(x) = scale^-1 * g_{i-1}^period(scale * x).
struct RenormLevel {
  int period = 0;
  BigReal scale;
};

/// Exact composition record of R^k p_c for p_c(z) = z^d + c.
///
/// Unrolling the stack gives g_k(x) = L^-1 p_c^q(L x) with L the product of
/// the level scales and q the product of the periods, which is how every
/// evaluation is carried out.
class Germ {
 public:
  Germ(int degree, BigReal base_param, std::vector<RenormLevel> stack = {});

  static Germ polynomial(int degree, const BigReal& c) { return Germ(degree, c); }

  int degree() const { return degree_; }
  const BigReal& base_param() const { return base_param_; }
  const std::vector<RenormLevel>& stack() const { return stack_; }
  std::size_t depth() const { return stack_.size(); }
  std::uint64_t total_period() const { return total_period_; }
  /// Product of the level scales (1 for the bare polynomial).
  const BigReal& chart_scale() const { return chart_scale_; }
  /// max(2, 2|c|^(1/d) + 1).
  const BigReal& base_escape_radius() const { return base_escape_radius_; }
  /// Base escape radius seen in this germ's coordinates.
  BigReal escape_radius() const;

  /// Germ with one more level pushed.
  Germ pushed(int period, const BigReal& scale) const;

 private:
  int degree_;
  BigReal base_param_;
  std::vector<RenormLevel> stack_;
  std::uint64_t total_period_ = 1;
  BigReal chart_scale_;
  BigReal base_escape_radius_;
};

/// Number of base-map evaluations performed by this thread.
std::uint64_t base_eval_count();
void reset_base_eval_count();

/// One application of z^d + c.
BigReal base_step(int degree, const BigReal& c, const BigReal& y);

/// g^n(x). Throws EscapeError when the base orbit leaves the escape radius.
BigReal iterate(const Germ& g, const BigReal& x, std::uint64_t n);
std::optional<BigReal> try_iterate(const Germ& g, const BigReal& x, std::uint64_t n);

/// g(x); costs exactly total_period base evaluations.
BigReal eval(const Germ& g, const BigReal& x);

/// Taylor jet of g^n at 0 to order d+2.
Jet eval_jet_iterate(const Germ& g, std::uint64_t n);
Jet eval_jet(const Germ& g);

struct OrbitSample {
  std::vector<BigReal> points;  // x_0 = 0, x_1 = g(0), ...
  bool escaped = false;
  std::size_t length() const { return points.empty() ? 0 : points.size() - 1; }
};

/// First m+1 points of the orbit of 0; stops early and sets `escaped`.
OrbitSample sample_critical_orbit(const Germ& g, std::size_t m);
/// As above but an escape before m steps is an EscapeError.
OrbitSample critical_orbit(const Germ& g, std::size_t m);

/// Critical orbit of the base polynomial p_c in base coordinates, up to n
/// steps. Returns fewer points on escape.
std::vector<BigReal> base_critical_orbit(int degree, const BigReal& c, std::uint64_t n);

/// The negative fixed point alpha (g'(alpha) < 0).
BigReal orientation_reversing_fixed_point(const Germ& g);

}  // namespace unirenorm
