#include "unirenorm/combinatorics.hpp"

#include <algorithm>
#include <stdexcept>

namespace unirenorm {
namespace {

int rank(Symbol s) {
  switch (s) {
    case Symbol::L: return 2;
    case Symbol::C: return 1;
    case Symbol::R: return 0;
  }
  return 0;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::vector<LevelCombinatorics> parse_levels(std::string_view text) {
  std::vector<LevelCombinatorics> levels;
  if (text.empty()) return levels;
  for (auto part : split(text, '|')) levels.push_back(LevelCombinatorics::parse(part));
  return levels;
}

}  // namespace

Symbol symbol_of(const BigReal& x, const BigReal& zero_tol) {
  if (abs(x) <= zero_tol) return Symbol::C;
  return x < 0 ? Symbol::L : Symbol::R;
}

Itinerary Itinerary::parse(std::string_view text) {
  std::vector<Symbol> symbols;
  for (char ch : text) {
    switch (ch) {
      case 'L': symbols.push_back(Symbol::L); break;
      case 'C': symbols.push_back(Symbol::C); break;
      case 'R': symbols.push_back(Symbol::R); break;
      default: throw std::invalid_argument("itinerary symbol must be L, C or R: '" + std::string(text) + "'");
    }
  }
  return Itinerary(std::move(symbols));
}

std::string Itinerary::str() const {
  std::string s;
  for (auto sym : symbols_) s.push_back(static_cast<char>(sym));
  return s;
}

bool Itinerary::is_superstable_form() const {
  return !symbols_.empty() && symbols_.back() == Symbol::C &&
         std::count(symbols_.begin(), symbols_.end(), Symbol::C) == 1;
}

int kneading_compare(const Itinerary& a, const Itinerary& b) {
  int parity = 1;
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] != b[i]) return rank(a[i]) > rank(b[i]) ? parity : -parity;
    if (a[i] == Symbol::L) parity = -parity;
  }
  if (a.size() == b.size()) return 0;
  return a.size() < b.size() ? -1 : 1;
}

bool unimodal_less(const Itinerary& a, const Itinerary& b) { return kneading_compare(a, b) < 0; }

bool is_admissible(const Itinerary& it) {
  if (!it.is_superstable_form()) return false;
  const auto& s = it.symbols();
  for (std::size_t k = 1; k < s.size(); ++k) {
    Itinerary suffix(std::vector<Symbol>(s.begin() + static_cast<long>(k), s.end()));
    if (kneading_compare(suffix, it) >= 0) return false;
  }
  return true;
}

BigReal default_zero_tol() { return pow2(-precision_bits() / 2); }

Itinerary itinerary_of(const Germ& g, int p, const BigReal& zero_tol) {
  if (p < 1) throw std::invalid_argument("itinerary length must be >= 1");
  const auto orbit = critical_orbit(g, static_cast<std::size_t>(p));
  std::vector<Symbol> symbols;
  int zeros = 0;
  for (int i = 1; i <= p; ++i) {
    symbols.push_back(symbol_of(orbit.points[static_cast<std::size_t>(i)], zero_tol));
    if (symbols.back() == Symbol::C) ++zeros;
  }
  if (zeros > 1) throw DomainError("ambiguous itinerary: critical orbit is near 0 more than once; refine the parameter");
  return Itinerary(std::move(symbols));
}

Itinerary itinerary_of(const Germ& g, int p) { return itinerary_of(g, p, default_zero_tol()); }

LevelCombinatorics::LevelCombinatorics(Itinerary it) : period(static_cast<int>(it.size())), itinerary(std::move(it)) {
  if (period < 2) throw std::invalid_argument("renormalization period must be >= 2");
  if (!is_admissible(itinerary)) throw std::invalid_argument("inadmissible itinerary: " + itinerary.str());
}

LevelCombinatorics LevelCombinatorics::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw std::invalid_argument("level must look like 'p:WORD': " + std::string(text));
  const std::string period_text(text.substr(0, colon));
  std::size_t used = 0;
  int period = 0;
  try {
    period = std::stoi(period_text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != period_text.size() || period_text.empty())
    throw std::invalid_argument("bad period in level: " + std::string(text));
  LevelCombinatorics level(Itinerary::parse(text.substr(colon + 1)));
  if (level.period != period)
    throw std::invalid_argument("period does not match itinerary length: " + std::string(text));
  return level;
}

std::string LevelCombinatorics::str() const { return std::to_string(period) + ":" + itinerary.str(); }

int LevelCombinatorics::orientation() const {
  int s = 1;
  for (std::size_t i = 0; i + 1 < itinerary.size(); ++i)
    if (itinerary[i] == Symbol::L) s = -s;
  return s;
}

LevelCombinatorics doubling_level() { return LevelCombinatorics(Itinerary::parse("LC")); }
LevelCombinatorics airplane_level() { return LevelCombinatorics(Itinerary::parse("LRC")); }

const LevelCombinatorics& Word::at(long n) const {
  const long index = n + static_cast<long>(origin);
  if (index < 0 || index >= static_cast<long>(levels.size())) throw std::out_of_range("word index out of range");
  return levels[static_cast<std::size_t>(index)];
}

Word Word::parse(std::string_view text) {
  Word w;
  const auto semi = text.find(';');
  if (semi == std::string_view::npos) {
    w.levels = parse_levels(text);
  } else {
    w.levels = parse_levels(text.substr(0, semi));
    w.origin = w.levels.size();
    auto future = parse_levels(text.substr(semi + 1));
    w.levels.insert(w.levels.end(), future.begin(), future.end());
  }
  if (w.levels.empty()) throw std::invalid_argument("empty combinatorics word");
  return w;
}

std::string Word::str() const {
  std::string s;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (i > 0) s += (origin > 0 && i == origin) ? ";" : "|";
    s += levels[i].str();
  }
  if (origin > 0 && origin == levels.size()) s += ";";
  return s;
}

Word shift(const Word& w) {
  if (w.empty()) throw std::invalid_argument("cannot shift an empty word");
  Word out;
  out.levels.assign(w.levels.begin() + 1, w.levels.end());
  out.origin = std::min(w.origin, out.levels.size());
  return out;
}

std::vector<Word> all_words(const std::vector<LevelCombinatorics>& alphabet, std::size_t k) {
  std::vector<Word> words{Word{}};
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Word> next;
    for (const auto& w : words)
      for (const auto& a : alphabet) {
        Word x = w;
        x.levels.push_back(a);
        next.push_back(std::move(x));
      }
    words = std::move(next);
  }
  return words;
}

}  // namespace unirenorm
