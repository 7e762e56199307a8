#include "unirenorm/combinatorics.hpp"

#include <doctest.h>

using namespace unirenorm;

namespace {

std::vector<Itinerary> superstable_words(int p) {
  std::vector<Itinerary> out;
  for (unsigned bits = 0; bits < (1u << (p - 1)); ++bits) {
    std::vector<Symbol> s;
    for (int i = 0; i < p - 1; ++i) s.push_back((bits >> i) & 1u ? Symbol::R : Symbol::L);
    s.push_back(Symbol::C);
    out.emplace_back(std::move(s));
  }
  return out;
}

}  // namespace

TEST_CASE("admissible word counts") {
  const int expected[] = {1, 1, 1, 2, 3, 5, 9, 16, 28, 51};
  for (int p = 1; p <= 10; ++p) {
    int count = 0;
    for (const auto& w : superstable_words(p)) count += is_admissible(w) ? 1 : 0;
    CHECK_MESSAGE(count == expected[p - 1], "period ", p);
  }
}

TEST_CASE("named admissible words") {
  CHECK(is_admissible(Itinerary::parse("C")));
  CHECK(is_admissible(Itinerary::parse("LC")));
  CHECK(is_admissible(Itinerary::parse("LRC")));
  CHECK(is_admissible(Itinerary::parse("LRLC")));
  CHECK_FALSE(is_admissible(Itinerary::parse("LLC")));
  CHECK_FALSE(is_admissible(Itinerary::parse("RC")));
  CHECK_FALSE(is_admissible(Itinerary::parse("LCR")));
}

TEST_CASE("kneading order") {
  const auto lc = Itinerary::parse("LC");
  const auto lrc = Itinerary::parse("LRC");
  const auto lrlc = Itinerary::parse("LRLC");
  // Parameters: LRLC at -1.31, LC at -1, LRC at -1.75; larger kneading = smaller c.
  CHECK(kneading_compare(lrc, lc) == 1);
  CHECK(kneading_compare(lrlc, lc) == 1);
  CHECK(kneading_compare(lrc, lrlc) == 1);
  CHECK(kneading_compare(lc, lc) == 0);
  CHECK(kneading_compare(lc, lrc) == -1);
  CHECK(unimodal_less(lc, lrc));
  CHECK_FALSE(unimodal_less(lrc, lc));
}

TEST_CASE("kneading order is a total order on admissible words") {
  std::vector<Itinerary> words;
  for (int p = 1; p <= 7; ++p)
    for (const auto& w : superstable_words(p))
      if (is_admissible(w)) words.push_back(w);
  for (const auto& a : words)
    for (const auto& b : words) {
      CHECK(kneading_compare(a, b) == -kneading_compare(b, a));
      CHECK((kneading_compare(a, b) == 0) == (a == b));
    }
}

TEST_CASE("itinerary of a polynomial") {
  set_precision_bits(256);
  CHECK(itinerary_of(Germ::polynomial(2, BigReal(-1)), 2) == Itinerary::parse("LC"));
  CHECK(itinerary_of(Germ::polynomial(2, BigReal("-1.7548776662466927600495088963585286918946")), 3) ==
        Itinerary::parse("LRC"));
  CHECK(itinerary_of(Germ::polynomial(2, BigReal("-1.5")), 3).str() == "LRL");
  CHECK(symbol_of(BigReal("1e-100"), BigReal("1e-90")) == Symbol::C);
  CHECK(symbol_of(BigReal("-0.1"), BigReal("1e-90")) == Symbol::L);
}

TEST_CASE("level combinatorics") {
  const auto d = doubling_level();
  const auto a = airplane_level();
  CHECK(d.period == 2);
  CHECK(d.str() == "2:LC");
  CHECK(a.str() == "3:LRC");
  CHECK(LevelCombinatorics::parse("3:LRC") == a);
  CHECK(d.orientation() == -1);
  CHECK(a.orientation() == -1);
  CHECK(LevelCombinatorics::parse("4:LRLC").orientation() == 1);
  CHECK_THROWS_AS(LevelCombinatorics::parse("3:LC"), std::invalid_argument);
  CHECK_THROWS_AS(LevelCombinatorics::parse("LRC"), std::invalid_argument);
  CHECK_THROWS_AS(LevelCombinatorics::parse("1:C"), std::invalid_argument);
}

TEST_CASE("words") {
  const Word w = Word::parse("2:LC|3:LRC;2:LC|3:LRC|2:LC");
  CHECK(w.past() == 2);
  CHECK(w.future() == 3);
  CHECK(w.at(-2) == doubling_level());
  CHECK(w.at(-1) == airplane_level());
  CHECK(w.at(1) == airplane_level());
  CHECK_THROWS(w.at(3));
  CHECK(Word::parse(w.str()) == w);

  const Word s = shift(w);
  CHECK(s.past() == 2);
  CHECK(s.future() == 2);
  for (long n = -2; n < 2; ++n) CHECK(s.at(n) == w.at(n + 1));

  const Word one_sided = Word::parse("2:LC|2:LC");
  CHECK(one_sided.past() == 0);
  CHECK(Word::parse("2:LC;").future() == 0);
  CHECK_THROWS_AS(Word::parse(""), std::invalid_argument);
}

TEST_CASE("all words") {
  const auto ws = all_words({doubling_level(), airplane_level()}, 3);
  CHECK(ws.size() == 8);
  CHECK(ws.front().str() == "2:LC|2:LC|2:LC");
  CHECK(ws.back().str() == "3:LRC|3:LRC|3:LRC");
}
