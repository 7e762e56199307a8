#pragma once

#include "unirenorm/combinatorics.hpp"

#include <optional>
#include <vector>

namespace unirenorm {

/// Precision ran out before the requested depth could be resolved.
class WindowCollapse : public DomainError {
 public:
  using DomainError::DomainError;
};

struct Bracket {
  BigReal lo;
  BigReal hi;
  BigReal width() const { return hi - lo; }
  bool contains(const BigReal& x) const { return lo <= x && x <= hi; }
};

/// Real parameters with connected filled Julia set: [-2^(1/(d-1)), (d-1)/d * d^(-1/(d-1))].
Bracket parameter_range(int degree);

/// Superstable c realizing `it` inside `bracket`, located by bisection on
/// the kneading order of the critical itinerary.
BigReal superstable_param(int degree, const Itinerary& it, const Bracket& bracket);
BigReal superstable_param(int degree, const Itinerary& it);

/// Superstable parameter whose itinerary is read off the orbit of p_{c0}:
/// among r in [r_min, r_max] with an admissible itinerary ending at x_r,
/// the r with the smallest |x_r| is used.
BigReal superstable_near(int degree, const BigReal& c0, std::uint64_t r_min, std::uint64_t r_max);

/// |p_c^p(0)| bound every superstable_param result satisfies, scaled by
/// max(1, |c d/dc p_c^p(0)|) for ill-conditioned roots.
BigReal superstable_residual_bound();

struct TuneResult {
  /// level_params[k] is superstable at level k and renormalizable with
  /// combinatorics M_0..M_{k-1} before that.
  std::vector<BigReal> level_params;
  /// Parameter interval bisected for each level; each lies inside the last.
  std::vector<Bracket> brackets;
  const BigReal& param() const { return level_params.back(); }
};

BigReal default_depth_tol();

/// Nested window refinement for the one-sided word (all stored levels, in
/// order, are used).
TuneResult tune(int degree, const Word& w, const BigReal& depth_tol);
TuneResult tune(int degree, const Word& w);
BigReal tuned_param(int degree, const Word& w, const BigReal& depth_tol);
BigReal tuned_param(int degree, const Word& w);

struct FeigenbaumEstimate {
  int n = 0;                     // tuning depth (1 = the level itself)
  BigReal c;                     // superstable parameter of the n-fold tuning
  std::optional<BigReal> delta;  // (c_{n-1} - c_n) / (c_n - c_{n+1})
};

/// c_1..c_{n_max+1} and delta_2..delta_{n_max}.
std::vector<FeigenbaumEstimate> feigenbaum_estimates(int degree, const LevelCombinatorics& level, int n_max);

}  // namespace unirenorm
