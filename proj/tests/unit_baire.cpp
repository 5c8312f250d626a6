#include "doctest.h"
#include "lopsided/baire.hpp"

using namespace lopsided;

TEST_CASE("points are stored in canonical form") {
  Point a({1, 2, 1, 2}, {1, 2});
  CHECK(a.preamble().empty());
  CHECK(a.period() == Prefix{1, 2});
  Point b({3}, {0, 0, 0});
  CHECK(b.period() == Prefix{0});
  CHECK(b.preamble() == Prefix{3});
  CHECK(Point({5, 0}, {0}) == Point({5}, {0}));
  CHECK(Point({2, 1}, {2, 1}) == Point({}, {2, 1}));
}

TEST_CASE("canonical equality matches extensional equality") {
  auto corpus = seededCorpus(60, 7);
  for (std::size_t i = 0; i < corpus.size(); ++i)
    for (std::size_t j = 0; j < corpus.size(); ++j)
      CHECK((corpus[i] == corpus[j]) == extensionallyEqual(corpus[i], corpus[j]));
}

TEST_CASE("indexing, prefixes and extension") {
  Point p({7, 8}, {1, 2, 3});
  CHECK(p.at(0) == 7);
  CHECK(p.at(2) == 1);
  CHECK(p.at(7) == 3);
  CHECK(p.prefix(5) == Prefix{7, 8, 1, 2, 3});
  CHECK(p.extends(Prefix{7, 8, 1}));
  CHECK_FALSE(p.extends(Prefix{7, 9}));
  CHECK(p.extends(Prefix{}));
  CHECK(p.range() == Prefix{1, 2, 3, 7, 8});
  CHECK(Point::constant(4).at(100) == 4);
}

TEST_CASE("initial segments") {
  CHECK(isInitialSegment(Prefix{}, Prefix{1}));
  CHECK(isInitialSegment(Prefix{1, 2}, Prefix{1, 2, 3}));
  CHECK_FALSE(isInitialSegment(Prefix{1, 3}, Prefix{1, 2, 3}));
  CHECK_FALSE(isInitialSegment(Prefix{1, 2, 3}, Prefix{1, 2}));
}

TEST_CASE("seeded corpus is reproducible") {
  CHECK(seededCorpus(30, 11) == seededCorpus(30, 11));
  CHECK(seededCorpus(30, 11) != seededCorpus(30, 12));
  for (const Point& p : seededCorpus(100, 3)) {
    CHECK(p.preamble().size() <= 5);
    CHECK(p.period().size() >= 1);
    CHECK(p.period().size() <= 4);
  }
}

TEST_CASE("empty period is rejected") { CHECK_THROWS(Point({1}, {})); }
