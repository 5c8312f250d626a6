#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lopsided/borel.hpp"
#include "lopsided/guesser.hpp"

namespace lopsided {

struct GameConfig {
  enum class Mode { Prefix, Fact };
  Mode mode = Mode::Prefix;
  std::size_t rounds = 1000;
  std::size_t window = 100;  // trailing run needed to call the guesses stable
  std::size_t fuel = 64;     // evaluator fuel for facts
  unsigned order = 0;
};

struct RoundRecord {
  std::size_t round = 0;
  Nat input = 0;  // Alice's move, or the fact bit
  Bit guess = 0;
  std::vector<std::pair<std::string, Nat>> diagnostics;
};

struct GameTrace {
  std::vector<RoundRecord> records;
  std::size_t flips = 0;
  std::optional<std::size_t> stabilizationIndex;
  std::optional<Bit> finalGuess;
  std::optional<std::string> aborted;  // undecided fact
};

// Throws Error("game") unless rounds >= window >= 1.
void validate(const GameConfig& cfg);

// Bob sees Alice's moves.
GameTrace runGame(const Point& alice, const NatGuesser& bob, const GameConfig& cfg);
// Bob sees the fact bits of `source` about Alice's sequence.
GameTrace runGame(const Point& alice, const BitGuesser& bob, const FactSource& source, const GameConfig& cfg);

// Recomputes flips, stabilization index and final guess from the records.
void summarize(GameTrace& trace, std::size_t window);

enum class Evidence { ConsistentWinBob, ConsistentWinAlice, UnstableAtHorizon };
std::string toString(Evidence e);
Evidence adjudicate(const GameTrace& trace, bool truth);

struct AdversaryReport {
  Prefix prefix;
  std::vector<Bit> guesses;   // Bob's guess after each move of prefix
  std::size_t flips = 0;
  std::size_t fuelSpent = 0;  // moves played
  bool wrongStabilized = false;
  std::optional<Point> witness;  // extension Bob answers wrongly at the horizon
  std::string note;
};

// Plays 0 until Bob guesses 1, then a non-zero pattern (1s, or 1, 2, 1, 2 for
// eventually-constant) until Bob guesses 0, and repeats for `fuel` moves. When
// the last phase has run at least `phaseCap` moves without Bob switching, the
// report names the extension Bob is answering wrongly. That is evidence at the
// horizon, not a proof that Bob never switches.
AdversaryReport diagonalize(const NatGuesser& bob, CatalogId target, std::size_t fuel, std::size_t phaseCap = 500);

// The bundled heuristic guessers for eventually-zero.
std::vector<NatGuesserPtr> heuristicGuessers();
NatGuesserPtr heuristicGuesser(const std::string& name);

}  // namespace lopsided
