#include <set>

#include "doctest.h"
#include "lopsided/error.hpp"
#include "lopsided/game.hpp"
#include "lopsided/guessing.hpp"

using namespace lopsided;

TEST_CASE("config validation") {
  GameConfig cfg;
  CHECK_NOTHROW(validate(cfg));
  cfg.window = 0;
  CHECK_THROWS_AS(validate(cfg), Error);
  cfg.window = 2000;
  CHECK_THROWS_AS(validate(cfg), Error);
}

TEST_CASE("prefix game records moves and guesses") {
  GameConfig cfg;
  cfg.rounds = 50;
  cfg.window = 10;
  auto bob = heuristicGuesser("last-is-zero");
  GameTrace t = runGame(Point({1, 1}, {0}), *bob, cfg);
  REQUIRE(t.records.size() == 50);
  CHECK(t.records[0].input == 1);
  CHECK(t.records[0].guess == 0);
  CHECK(t.records[2].input == 0);
  CHECK(t.records[2].guess == 1);
  CHECK(t.flips == 1);
  CHECK(t.stabilizationIndex == 2);
  CHECK(t.finalGuess == 1);
  CHECK(adjudicate(t, true) == Evidence::ConsistentWinBob);
  CHECK(adjudicate(t, false) == Evidence::ConsistentWinAlice);
}

TEST_CASE("an alternating guess never stabilizes") {
  GameConfig cfg;
  cfg.rounds = 100;
  cfg.window = 5;
  GameTrace t = runGame(Point({}, {0, 1}), *heuristicGuesser("last-is-zero"), cfg);
  CHECK(t.flips == 99);
  CHECK_FALSE(t.stabilizationIndex);
  CHECK(adjudicate(t, false) == Evidence::UnstableAtHorizon);
  CHECK(toString(Evidence::UnstableAtHorizon) == "UNSTABLE-AT-HORIZON");
}

TEST_CASE("summarize recomputes from records") {
  GameTrace t;
  for (std::size_t r = 0; r < 20; ++r) t.records.push_back({r, 0, static_cast<Bit>(r < 7 ? r % 2 : 1), {}});
  summarize(t, 10);
  CHECK(t.flips == 7);
  CHECK(t.stabilizationIndex == 7);
  CHECK(t.finalGuess == 1);
  summarize(t, 16);
  CHECK_FALSE(t.stabilizationIndex);
}

TEST_CASE("fact game with the synthesized guesser") {
  const Point alice({4, 0, 3}, {5});
  Synthesis syn = synthesizeMuNu(catalogSpec(catalogSet("exactly-zeros", 1)));
  GameConfig cfg;
  cfg.mode = GameConfig::Mode::Fact;
  cfg.rounds = 400;
  cfg.window = 50;
  GameTrace t = runGame(alice, *syn.guesser, syn.source, cfg);
  CHECK_FALSE(t.aborted);
  CHECK(t.finalGuess == 1);
  CHECK(adjudicate(t, true) == Evidence::ConsistentWinBob);
  CHECK(t.records.back().diagnostics.size() == 2);
}

TEST_CASE("heuristics are distinct and named") {
  auto all = heuristicGuessers();
  CHECK(all.size() == 20);
  std::set<std::string> names;
  for (const auto& g : all) names.insert(g->name());
  CHECK(names.size() == 20);
  CHECK_THROWS_AS(heuristicGuesser("oracle"), Error);
}

TEST_CASE("diagonalization forces flips") {
  AdversaryReport r = diagonalize(*heuristicGuesser("last-two-zero"), CatalogId::EventuallyZero, 1000);
  CHECK(r.flips >= 10);
  CHECK(r.fuelSpent <= 1000);
  CHECK(r.guesses.size() == r.prefix.size());
}

TEST_CASE("a stuck guesser yields a wrong witness") {
  AdversaryReport r = diagonalize(*constantNatGuesser(0), CatalogId::EventuallyZero, 10000, 200);
  CHECK(r.wrongStabilized);
  REQUIRE(r.witness);
  CHECK(exactOracle(catalogSet("eventually-zero"), *r.witness));
  AdversaryReport s = diagonalize(*constantNatGuesser(1), CatalogId::EventuallyConstant, 10000, 200);
  CHECK(s.wrongStabilized);
  REQUIRE(s.witness);
  CHECK_FALSE(exactOracle(catalogSet("eventually-constant"), *s.witness));
  CHECK_THROWS_AS(diagonalize(*constantNatGuesser(0), CatalogId::ExactlyZeros, 10), Error);
}
