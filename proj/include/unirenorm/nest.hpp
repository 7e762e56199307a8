#pragma once

#include "unirenorm/renorm.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace unirenorm {

struct NestOptions {
  int max_levels = 400;
  /// Consecutive central levels with a constant return time, confirmed by
  /// renorm detection, that mark the terminal level.
  int tail_confirm = 6;
  /// Budget (in germ iterates) for a single first return of 0.
  std::uint64_t max_return = 1u << 20;
};

/// Principal nest I_0 = [alpha, -alpha] ⊃ I_1 ⊃ ... of a renormalizable germ.
struct NestReport {
  int degree = 2;
  BigReal alpha;
  std::vector<BigReal> a;        // I_n = [-a_n, a_n]
  std::vector<std::uint64_t> v;  // principal return times
  std::vector<BigReal> lambda;   // a_{n+1} / a_n
  std::vector<bool> central;     // g_n(0) ∈ I_{n+1}
  std::vector<int> j;            // 0 = j_0 < j_1 < ... < j_kappa = N
  int height = 0;
  int terminal_level = 0;
  std::uint64_t renorm_period = 0;

  /// Half-width of T_p, the pullback of I_0 along p iterates containing 0.
  BigReal tp_half_width;
  bool sjk_ok = false;
  bool iprime0_ok = false;

  std::size_t levels() const { return v.size(); }
  /// w_n = v_0 + ... + v_{n-1}, so that T_{w_n} = I_n.
  std::uint64_t depth_of_level(std::size_t n) const;
};

NestReport build_nest(const Germ& g, const NestOptions& options = {});
NestReport build_nest(const Germ& g, int max_levels);

/// Half-width of T_n, the closure of the component of g^{-n}(int I_0)
/// containing 0; throws unless g^n(0) ∈ int I_0.
BigReal pullback_half_width(const Germ& g, const BigReal& a0, std::uint64_t n);

struct AprioriReport {
  BigReal max_lambda_jk;   // max_k lambda_{j_k}
  BigReal c_top;           // smallest C with lambda_{j_k} <= 1 - 1/C
  BigReal c_corollary;     // smallest C with lambda_{n+1} <= C lambda_n^{1/d}
  bool lambdas_in_unit = true;
  std::vector<std::size_t> unit_violations;

  BigReal constant() const { return c_top > c_corollary ? c_top : c_corollary; }
  /// Sweep-wide constants.
  void merge(const AprioriReport& other);
};

AprioriReport check_apriori(const NestReport& r);

enum class CascadeType { SaddleNode, UlamNeumann, TerminalCentral };
const char* cascade_type_name(CascadeType t);

/// Maximal run of central returns g_m, ..., g_{m+l-1}; its intervals are
/// T_{n_1} = I_m, ..., T_{n_L} = I_{m+l} with L = l + 1.
struct CascadeRun {
  int start_level = 0;
  int length = 0;  // L
  std::uint64_t step = 0;  // n_{i+1} - n_i
  CascadeType type = CascadeType::SaddleNode;
  bool uniform_step = true;
  /// |T_{n_i}| / |T_{n_{i+1}}| - 1 for i = 1..L-1.
  std::vector<BigReal> profile;
  /// lambda of the level just above the run, when there is one.
  std::optional<BigReal> top_lambda;
};

struct CascadeReport {
  std::vector<CascadeRun> runs;
  /// Run index for every level of the nest (-1 when the level is non-central).
  std::vector<int> run_of_level;
  const CascadeRun* longest(CascadeType t) const;
};

CascadeReport classify_cascades(const Germ& g, const NestReport& r);

struct YoccozReport {
  int length = 0;
  std::vector<int> indices;         // mid-range i
  std::vector<BigReal> r_max_form;  // profile_i * max{i, L-i}^2
  std::vector<BigReal> r_min_form;  // profile_i * min{i, L-i}^2
  BigReal ratio_max_form;           // max / min of r_max_form
  BigReal ratio_min_form;
  BigReal symmetry;                 // max over mid-range of r_i / r_{L-i}, either way round
};

YoccozReport yoccoz_check(const CascadeRun& run);
/// Uses the longest saddle-node run.
YoccozReport yoccoz_check(const CascadeReport& c);

/// Relative distance from the sampled postcritical set to ∂I_level.
BigReal safety(const Germ& g, const NestReport& r, std::size_t level, std::size_t orbit_len);

enum class TransitionKind { Short, Long };

/// G_{n,m} = A_m ∘ g^{n-m} ∘ A_n^{-1} sampled on [-1, 1].
struct TransitionMap {
  std::uint64_t from_depth = 0;  // n
  std::uint64_t to_depth = 0;    // m
  BigReal tn;                    // half-widths of T_n and T_m
  BigReal tm;
  std::vector<std::pair<BigReal, BigReal>> samples;
  TransitionKind kind = TransitionKind::Short;
  /// m = n_1 < ... < n_l = n; two entries for a short map.
  std::vector<std::uint64_t> decomposition;
  /// Margin of the postcritical points g^i(0), 0 < i < n-m, outside T_m,
  /// relative to |T_m| (short maps).
  std::optional<BigReal> goodness;
  BigReal max_slope;
};

TransitionMap transition_map(const Germ& g, std::uint64_t n, std::uint64_t m, int grid);
BigReal transition_value(const Germ& g, const TransitionMap& t, const BigReal& x);

}  // namespace unirenorm
