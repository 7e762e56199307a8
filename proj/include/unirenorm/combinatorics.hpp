#pragma once

#include "unirenorm/germ.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace unirenorm {

/// Position of an orbit point relative to the critical point 0.
enum class Symbol : char { L = 'L', C = 'C', R = 'R' };

Symbol symbol_of(const BigReal& x, const BigReal& zero_tol);

class Itinerary {
 public:
  Itinerary() = default;
  explicit Itinerary(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {}
  /// Parses a word over {L, C, R}.
  static Itinerary parse(std::string_view text);

  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  Symbol operator[](std::size_t i) const { return symbols_.at(i); }
  const std::vector<Symbol>& symbols() const { return symbols_; }
  std::string str() const;
  /// Exactly one C, in the final position.
  bool is_superstable_form() const;

  friend bool operator==(const Itinerary&, const Itinerary&) = default;

 private:
  std::vector<Symbol> symbols_;
};

/// Kneading order of the family x^d + c.
///
/// Symbols are compared as L > C > R with the sense reversed after every L,
/// the orientation-reversing branch of a map with a minimum at 0. This is the
/// Milnor-Thurston order of the max-type conjugate -x^d - c. Returns -1, 0, +1.
/// Larger kneading corresponds to smaller parameter c.
int kneading_compare(const Itinerary& a, const Itinerary& b);
bool unimodal_less(const Itinerary& a, const Itinerary& b);

/// Superstable form and every proper shift strictly below the word.
bool is_admissible(const Itinerary& it);

/// Symbols of x_1..x_p of the critical orbit; |x| <= zero_tol reads as C.
Itinerary itinerary_of(const Germ& g, int p, const BigReal& zero_tol);
Itinerary itinerary_of(const Germ& g, int p);
BigReal default_zero_tol();

/// Real combinatorics of one renormalization level.
struct LevelCombinatorics {
  int period = 0;
  Itinerary itinerary;

  LevelCombinatorics() = default;
  explicit LevelCombinatorics(Itinerary it);
  static LevelCombinatorics parse(std::string_view text);  // "3:LRC"
  std::string str() const;
  /// Sign (+1/-1) of the z^d coefficient of the pre-renormalization, i.e.
  /// the product of the signs of x_1..x_{p-1}.
  int orientation() const;

  friend bool operator==(const LevelCombinatorics& a, const LevelCombinatorics& b) {
    return a.itinerary == b.itinerary;
  }
};

LevelCombinatorics doubling_level();
LevelCombinatorics airplane_level();

/// Finite word of levels. `origin` is the number of past levels, so the
/// stored list is M_{-origin}, ..., M_{size-origin-1}.
struct Word {
  std::vector<LevelCombinatorics> levels;
  std::size_t origin = 0;

  std::size_t size() const { return levels.size(); }
  bool empty() const { return levels.empty(); }
  std::size_t past() const { return origin; }
  std::size_t future() const { return levels.size() - origin; }
  /// Level with signed index n (-past .. future-1).
  const LevelCombinatorics& at(long n) const;

  /// "2:LC|3:LRC"; two-sided words put the past before a ';':
  /// "2:LC|2:LC;3:LRC|2:LC".
  static Word parse(std::string_view text);
  std::string str() const;

  friend bool operator==(const Word&, const Word&) = default;
};

/// Drops the first stored level and re-centres so that the old level 1 is the
/// new level 0; the past length is kept.
Word shift(const Word& w);

/// All words of length k over `alphabet`, in lexicographic order of indices.
std::vector<Word> all_words(const std::vector<LevelCombinatorics>& alphabet, std::size_t k);

}  // namespace unirenorm
