#pragma once

#include "unirenorm/renorm.hpp"
#include "unirenorm/solver.hpp"

#include <vector>

namespace unirenorm {

/// Germ at level 0 of a two-sided word: R^N p_c, where c is tuned to the
/// whole stored word M_{-N}, ..., M_K. Each renormalization must detect the
/// word's combinatorics.
Germ realize(const Word& w, int degree);

/// montel_distance(R realize(w), realize(shift(w))).
BigReal shift_equivariance(const Word& w, int degree, const MontelMetric& metric = {});

BigReal noise_floor();

struct ContractionTrace {
  std::vector<BigReal> distances;  // d_n, n = 0..n_max
  BigReal fitted_rate;             // exp(slope) of log d_n over n >= 1 above the noise floor
  BigReal fit_r2;
  int fit_points = 0;
  bool exact_zero = false;         // every d_n vanished
};

/// Fits log d_n for n in [first, last] with d_n above the noise floor.
ContractionTrace fit_trace(std::vector<BigReal> distances, std::size_t first, std::size_t last);

/// Simultaneous R-cascades of two germs, both renormalized with level
/// n mod |tail| of the periodic tail at step n.
ContractionTrace contraction_rate(const Word& tail, const Germ& f_seed, const Germ& g_seed, int n_max,
                                  const MontelMetric& metric = {});

struct ShadowingTrace {
  Word word;
  int step = 2;
  std::vector<int> n_values;  // N with a gap montel_distance(h_N, h_{N+step})
  std::vector<BigReal> gaps;
  BigReal slope;              // of log gap against N
  BigReal fit_r2;
};

/// h_N = realize(last N past levels + the future of w) for N in
/// [n_min, past(w) - step].
ShadowingTrace shadowing(const Word& w, int degree, int n_min, int step, const MontelMetric& metric = {});

/// The word keeping the last `past` levels of w's past and all its future.
Word truncate_past(const Word& w, std::size_t past);

}  // namespace unirenorm
