#pragma once

#include "unirenorm/combinatorics.hpp"
#include "unirenorm/germ.hpp"

namespace unirenorm {

class NotRenormalizable : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Real trace of a pre-renormalization: g^p : [-b, b] -> [-b, b], with the
/// period-p point beta = +-b (positive multiplier) on the boundary and
/// g^p(+-b) = beta.
struct PreRenorm {
  int period = 0;
  BigReal b;
  BigReal beta;
};

struct DetectOptions {
  int search_grid = 256;     // samples of s*g^p(t) - t on (0, m)
  int invariance_grid = 33;  // samples of [-b, b] checked for g^p-invariance
};

/// Symmetric interval of period p around 0, or NotRenormalizable.
PreRenorm detect(const Germ& g, int p, const DetectOptions& options = {});

/// Combinatorics read off the critical orbit: signs of x_1..x_{p-1}, then C.
LevelCombinatorics combinatorics_of(const Germ& g, int p);

/// Scale lambda = a_d^(-1/(d-1)) with a_d the z^d coefficient of g^p at 0.
BigReal normalizing_scale(const Germ& g, int p);

/// Pushes (p, lambda) so that the result has z^d coefficient 1.
Germ apply(const Germ& g, const PreRenorm& pre);
Germ normalize(const Germ& g, int p);

struct Renormalized {
  int period = 0;
  Germ germ;
  PreRenorm pre;
  LevelCombinatorics combinatorics;
};

/// Smallest p in 2..p_max for which g is renormalizable.
Renormalized renormalize_min(const Germ& g, int p_max);
/// Renormalizes with prescribed combinatorics; a different detected
/// combinatorics is a NotRenormalizable error.
Renormalized renormalize_as(const Germ& g, const LevelCombinatorics& level);

inline BigReal default_montel_rho() { return pow2(-3); }
constexpr int kDefaultMontelGrid = 64;

/// Uniform distance over `grid` equispaced points of [-rho, rho]. Germs are
/// even, so only the non-negative half of the grid is evaluated.
BigReal montel_distance(const Germ& g1, const Germ& g2, const BigReal& rho, int grid = kDefaultMontelGrid);
BigReal montel_distance(const Germ& g1, const Germ& g2);

struct MontelMetric {
  BigReal rho = default_montel_rho();
  int grid = kDefaultMontelGrid;
  BigReal operator()(const Germ& g1, const Germ& g2) const { return montel_distance(g1, g2, rho, grid); }
};

}  // namespace unirenorm
