#include "unirenorm/solver.hpp"

#include <algorithm>
#include <stdexcept>

namespace unirenorm {
namespace {

// Reads the critical orbit of x^d + c through the renormalization charts of a
// word. Level j of the tuned map sees the base orbit at multiples of q_j, in a
// coordinate whose orientation is sigma_j.
class Reader {
 public:
  Reader(int degree, std::vector<LevelCombinatorics> levels) : degree_(degree), levels_(std::move(levels)) {
    std::uint64_t q = 1;
    int sigma = 1;
    for (const auto& level : levels_) {
      q_.push_back(q);
      sigma_.push_back(sigma);
      q *= static_cast<std::uint64_t>(level.period);
      sigma *= level.orientation();
    }
  }

  struct Reading {
    bool valid = false;
    int cmp = 0;  // kneading_compare(level-k symbols, M_k)
    Symbol first = Symbol::C;
  };

  // Lower levels must follow their patterns off the return times; level k is
  // compared with its pattern in the kneading order.
  Reading read(const BigReal& c, std::size_t k) const {
    const auto& target = levels_.at(k);
    const std::uint64_t horizon = q_[k] * static_cast<std::uint64_t>(target.period);
    const auto orbit = base_critical_orbit(degree_, c, horizon);
    if (orbit.size() <= horizon) return {};
    for (std::size_t j = 0; j < k; ++j) {
      const auto p = static_cast<std::uint64_t>(levels_[j].period);
      const auto& pattern = levels_[j].itinerary;
      for (std::uint64_t i = 1; i * q_[j] <= horizon; ++i) {
        if (i % p == 0) continue;
        const auto& x = orbit[i * q_[j]];
        if (x == 0) return {};
        const Symbol s = sign(x) * sigma_[j] < 0 ? Symbol::L : Symbol::R;
        if (s != pattern[i % p - 1]) return {};
      }
    }
    std::vector<Symbol> symbols;
    for (int i = 1; i <= target.period; ++i) {
      const auto& x = orbit[static_cast<std::uint64_t>(i) * q_[k]];
      if (x == 0)
        symbols.push_back(Symbol::C);
      else
        symbols.push_back(sign(x) * sigma_[k] < 0 ? Symbol::L : Symbol::R);
    }
    const Symbol first = symbols.front();
    return {true, kneading_compare(Itinerary(std::move(symbols)), target.itinerary), first};
  }

  std::size_t depth() const { return levels_.size(); }

 private:
  int degree_;
  std::vector<LevelCombinatorics> levels_;
  std::vector<std::uint64_t> q_;
  std::vector<int> sigma_;
};

int step_cap() { return 4 * precision_bits(); }

// Bisects on the level-k reading; lo and hi must read with opposite signs.
BigReal bisect_level(const Reader& reader, std::size_t k, BigReal lo, BigReal hi) {
  const auto at_lo = reader.read(lo, k);
  const auto at_hi = reader.read(hi, k);
  if (!at_lo.valid || !at_hi.valid) throw DomainError("renormalization detection failed at a bracket end");
  if (at_lo.cmp == 0) return lo;
  if (at_hi.cmp == 0) return hi;
  if (at_lo.cmp == at_hi.cmp) throw DomainError("no sign change of the kneading comparison in the bracket");
  for (int step = 0; step < step_cap(); ++step) {
    BigReal mid = (lo + hi) / 2;
    if (mid == lo || mid == hi) return mid;
    const auto r = reader.read(mid, k);
    if (!r.valid)
      throw DomainError("kneading is not monotone: invalid reading at " + to_decimal(mid, 20) +
                        " between two valid brackets");
    if (r.cmp == 0) return mid;
    if (r.cmp == at_lo.cmp)
      lo = std::move(mid);
    else
      hi = std::move(mid);
  }
  throw DomainError("bisection step cap exceeded");
}

// Far edge of the window where the level-k reading stays valid, walking
// from c0 in direction dir with steps h0, 2h0, 4h0, ... and never past
// `limit`. Returns the last valid point found by bisection on validity.
BigReal window_edge(const Reader& reader, std::size_t k, const BigReal& c0, int dir, const BigReal& h0,
                    const BigReal& limit, const BigReal& tol) {
  BigReal last_valid = c0;
  BigReal h = h0;
  for (int step = 0; step < step_cap(); ++step) {
    const bool at_limit = h >= limit;
    if (at_limit) h = limit;
    BigReal c = c0 + dir * h;
    if (reader.read(c, k).valid) {
      if (at_limit) return c;
      last_valid = std::move(c);
      h *= 2;
      continue;
    }
    BigReal inside = std::move(last_valid);
    BigReal outside = std::move(c);
    for (int inner = 0; inner < step_cap(); ++inner) {
      BigReal mid = (inside + outside) / 2;
      if (mid == inside || mid == outside || abs(outside - inside) <= tol) return inside;
      if (reader.read(mid, k).valid)
        inside = std::move(mid);
      else
        outside = std::move(mid);
    }
    throw DomainError("bisection step cap exceeded at a window edge");
  }
  throw DomainError("window search step cap exceeded");
}

// |c * d/dc p_c^p(0)|: the residual a correctly rounded root can reach is
// this times the unit roundoff.
BigReal root_conditioning(int degree, const BigReal& c, int p) {
  BigReal x = 0;
  BigReal dx = 0;
  for (int i = 0; i < p; ++i) {
    dx = degree * ipow(x, degree - 1) * dx + 1;
    x = ipow(x, degree) + c;
  }
  return abs(c * dx);
}

void verify_superstable(int degree, const BigReal& c, const Itinerary& it) {
  const int p = static_cast<int>(it.size());
  const Germ g = Germ::polynomial(degree, c);
  const auto got = itinerary_of(g, p);
  if (!(got == it))
    throw DomainError("itinerary mismatch at the located root: got " + got.str() + ", wanted " + it.str());
  const auto orbit = base_critical_orbit(degree, c, static_cast<std::uint64_t>(p));
  const BigReal cond = root_conditioning(degree, c, p);
  const BigReal bound = superstable_residual_bound() * (cond > 1 ? cond : BigReal(1));
  if (!(abs(orbit.back()) < bound))
    throw DomainError("superstable residual " + to_decimal(abs(orbit.back()), 6) + " above bound");
}

}  // namespace

Bracket parameter_range(int degree) {
  if (degree < 2 || degree % 2 != 0) throw std::invalid_argument("degree must be even and >= 2");
  const BigReal lo = -real_root(BigReal(2), degree - 1);
  const BigReal hi = BigReal(degree - 1) / degree / real_root(BigReal(degree), degree - 1);
  return {lo, hi};
}

BigReal superstable_residual_bound() { return pow2(-(precision_bits() - 16)); }

BigReal default_depth_tol() { return pow2(-(precision_bits() - 32)); }

BigReal superstable_param(int degree, const Itinerary& it, const Bracket& bracket) {
  if (!is_admissible(it)) throw DomainError("inadmissible itinerary " + it.str());
  if (!(bracket.lo < bracket.hi)) throw std::invalid_argument("bracket must satisfy lo < hi");
  const Reader reader(degree, {LevelCombinatorics(it)});
  const BigReal c = bisect_level(reader, 0, bracket.lo, bracket.hi);
  verify_superstable(degree, c, it);
  return c;
}

BigReal superstable_param(int degree, const Itinerary& it) {
  return superstable_param(degree, it, parameter_range(degree));
}

BigReal superstable_near(int degree, const BigReal& c0, std::uint64_t r_min, std::uint64_t r_max) {
  if (r_min < 1 || r_max < r_min) throw std::invalid_argument("need 1 <= r_min <= r_max");
  const auto orbit = base_critical_orbit(degree, c0, r_max);
  std::vector<std::uint64_t> order;
  for (std::uint64_t r = r_min; r < orbit.size(); ++r) order.push_back(r);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint64_t a, std::uint64_t b) { return abs(orbit[a]) < abs(orbit[b]); });
  // Closest returns first; an ill-conditioned one can fail its a-posteriori
  // check, in which case the next is tried.
  constexpr int kAttempts = 8;
  int attempts = 0;
  std::optional<DomainError> last_error;
  for (std::uint64_t r : order) {
    std::vector<Symbol> symbols;
    for (std::uint64_t i = 1; i < r; ++i) symbols.push_back(orbit[i] < 0 ? Symbol::L : Symbol::R);
    symbols.push_back(Symbol::C);
    Itinerary it(std::move(symbols));
    if (!is_admissible(it)) continue;
    try {
      return superstable_param(degree, it);
    } catch (const DomainError& e) {
      last_error = e;
    }
    if (++attempts == kAttempts) break;
  }
  if (last_error) throw *last_error;
  throw DomainError("no admissible return of the critical orbit in the requested range");
}

TuneResult tune(int degree, const Word& w, const BigReal& depth_tol) {
  if (w.empty()) throw std::invalid_argument("word must have at least one level");
  const Reader reader(degree, w.levels);
  const std::size_t depth = reader.depth();
  TuneResult result;
  Bracket parent = parameter_range(degree);

  result.brackets.push_back(parent);
  result.level_params.push_back(bisect_level(reader, 0, parent.lo, parent.hi));

  for (std::size_t k = 1; k < depth; ++k) {
    const BigReal& c0 = result.level_params.back();
    BigReal h0 = k == 1 ? pow2(-16) : abs(c0 - result.level_params[k - 2]) * pow2(-12);
    // c0 is superstable one level up, so the level-k critical value sits at
    // 0 there; the level-(k-1) window continues on the side where it moves
    // to L, and the level-k window lies in that half.
    std::optional<BigReal> start;
    int dir = 0;
    for (int attempt = 0; attempt < 8 && !start; ++attempt) {
      for (int side : {+1, -1}) {
        BigReal c = c0 + side * h0;
        if (!parent.contains(c)) continue;
        const auto r = reader.read(c, k);
        if (r.valid && r.first == Symbol::L) {
          start = std::move(c);
          dir = side;
          break;
        }
      }
      if (!start) h0 *= pow2(-4);
    }
    if (!start) throw DomainError("renormalization detection failed at depth " + std::to_string(k));
    const BigReal limit = dir > 0 ? parent.hi - c0 : c0 - parent.lo;
    const BigReal edge = window_edge(reader, k, c0, dir, h0, limit, pow2(-48) * h0);
    Bracket bracket = dir > 0 ? Bracket{*start, edge} : Bracket{edge, *start};
    if (bracket.width() <= depth_tol)
      throw WindowCollapse("window at depth " + std::to_string(k) + " narrower than depth_tol");
    BigReal c = bisect_level(reader, k, bracket.lo, bracket.hi);
    result.brackets.push_back(bracket);
    result.level_params.push_back(std::move(c));
    parent = result.brackets.back();
  }
  return result;
}

TuneResult tune(int degree, const Word& w) { return tune(degree, w, default_depth_tol()); }

BigReal tuned_param(int degree, const Word& w, const BigReal& depth_tol) {
  return tune(degree, w, depth_tol).param();
}

BigReal tuned_param(int degree, const Word& w) { return tune(degree, w).param(); }

std::vector<FeigenbaumEstimate> feigenbaum_estimates(int degree, const LevelCombinatorics& level, int n_max) {
  if (n_max < 4) throw std::invalid_argument("n_max must be >= 4");
  Word w;
  w.levels.assign(static_cast<std::size_t>(n_max) + 1, level);
  const auto tuned = tune(degree, w);
  std::vector<FeigenbaumEstimate> out;
  for (int n = 1; n <= n_max + 1; ++n) {
    FeigenbaumEstimate e;
    e.n = n;
    e.c = tuned.level_params[static_cast<std::size_t>(n - 1)];
    out.push_back(std::move(e));
  }
  for (int n = 2; n <= n_max; ++n) {
    const auto& prev = out[static_cast<std::size_t>(n - 2)].c;
    const auto& cur = out[static_cast<std::size_t>(n - 1)].c;
    const auto& next = out[static_cast<std::size_t>(n)].c;
    out[static_cast<std::size_t>(n - 1)].delta = (prev - cur) / (cur - next);
  }
  return out;
}

}  // namespace unirenorm
