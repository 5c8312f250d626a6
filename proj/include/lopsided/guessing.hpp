#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lopsided/borel.hpp"
#include "lopsided/guesser.hpp"

namespace lopsided {

NatGuesserPtr constantNatGuesser(Bit b);
BitGuesserPtr constantBitGuesser(Bit b);

// Moves are read as symbols min(move, alphabet - 1).
class FiniteStateGuesser final : public NatGuesser {
 public:
  FiniteStateGuesser(std::string name, std::size_t alphabet, std::vector<std::vector<std::size_t>> transitions,
                     std::vector<Bit> output, std::size_t start = 0);

  std::unique_ptr<NatSession> start() const override;
  std::string name() const override { return name_; }

  std::size_t states() const noexcept { return output_.size(); }
  std::size_t alphabet() const noexcept { return alphabet_; }
  std::size_t symbol(Nat move) const noexcept { return move < alphabet_ ? move : alphabet_ - 1; }
  std::size_t next(std::size_t state, Nat move) const { return transitions_[state][symbol(move)]; }
  Bit output(std::size_t state) const { return output_[state]; }
  std::size_t initial() const noexcept { return start_; }

  // Exact limit on an eventually periodic point: iterate whole periods until
  // one leaves the state fixed. Requires monotone transitions (state never
  // decreases); throws otherwise.
  Bit limitOn(const Point& p) const;

  // {"name", "alphabet", "start", "output": [...], "transitions": [[...]]}
  std::string toJson() const;

 private:
  std::string name_;
  std::size_t alphabet_;
  std::vector<std::vector<std::size_t>> transitions_;
  std::vector<Bit> output_;
  std::size_t start_;
};

using FiniteStateGuesserPtr = std::shared_ptr<const FiniteStateGuesser>;

// Random monotone transducers (transitions never lower the state), so every
// run converges on every eventually periodic point.
std::vector<FiniteStateGuesserPtr> seededFiniteStateGuessers(std::size_t count, std::uint64_t seed);

// ---------------------------------------------------------------------------
// mu / nu synthesis.

struct SynthesisSpec {
  std::string name;
  DeltaPrimePair pair;
  unsigned order = 0;                       // fact sentences are Delta_order
  std::string listingOrder = "interleaved";  // only ordering implemented
  std::optional<CatalogSet> catalog;          // ground truth, when built from one
};

// Pair of a Delta^0_2 catalog set, facts of order 0.
SynthesisSpec catalogSpec(const CatalogSet& set);
SynthesisSpec wholeSpaceSpec();
SynthesisSpec emptySetSpec();

struct Synthesis {
  BitGuesserPtr guesser;
  FactSource source;
};

// Listing: even slots hold the certificates sigma_xy, not sigma_xy, tau_xy,
// not tau_xy for (x, y) in Cantor order, odd slots the canonical enumeration,
// duplicates removed. A certificate role is registered when its (x, y) is
// first generated. The guesser outputs 1 iff mu < nu, where mu (nu) is the
// least x with no registered not-sigma_xy (tau_xy) among the facts seen true.
// Diagnostics report "mu" and "nu". Throws CodeError when an inner code has no
// certificate.
Synthesis synthesizeMuNu(const SynthesisSpec& spec, std::size_t fuel = 64);

// ---------------------------------------------------------------------------
// Runs on a point.

struct LimitRun {
  std::vector<Bit> guesses;    // guesses[j] after j + 1 facts
  std::optional<Bit> settled;  // certified limit
  std::size_t settledAt = 0;   // facts consumed when certified
  Bit last() const { return guesses.empty() ? 0 : guesses.back(); }
};

// Feeds up to maxFacts facts, stopping early once the session certifies its
// limit. Undecided facts throw UndecidedError.
LimitRun runToSettlement(const BitGuesser& g, const FactSource& source, const Point& p, std::size_t maxFacts);

// ---------------------------------------------------------------------------
// Guessers to codes.

struct CodePair {
  CodePtr unionForm;         // U_i n_{j > i} [G_j = 1]
  CodePtr intersectionForm;  // n_i U_{j > i} [G_j = 1]
};

// The families decide their union / intersection exactly when a simulated
// run of at most `fuel` facts certifies the limit.
CodePair guesserToCodes(BitGuesserPtr g, FactSource source);

// Bit vectors of length round + 1 on which g answers `bit` (round <= 12).
std::vector<std::vector<Bit>> expandGuessEvent(const BitGuesser& g, std::size_t round, Bit bit);
bool expansionContains(const std::vector<std::vector<Bit>>& expansion, FactStream& stream);

// ---------------------------------------------------------------------------
// Prefix guessers and fact guessers.

struct Translation {
  BitGuesserPtr guesser;
  FactSource source;  // canonical Sigma_0 listing
};

// Reads the appeared facts f(i) = n, takes the longest run n_0, ..., n_k with
// each index settled by exactly one appeared fact, and answers g0 on it (0
// when there is none).
Translation prefixToSentenceGuesser(NatGuesserPtr g0);

// On a move prefix s: the maximal k with facts 0..k all determined by s, their
// bits, and g on those bits (0 when k = -1). The listing must stay inside the
// atomic fragment, where the indices read do not depend on the values.
NatGuesserPtr sentenceToPrefixGuesser(BitGuesserPtr g, FactSource source);

// One family Z_ij = [G_{i+j+1} = 1] serving both forms, where G is the mu/nu
// guesser of the pair packaged from x and y at level m.
DeltaPrimePair unifyFamily(const CodePtr& x, const CodePtr& y, unsigned m, std::size_t fuel = 64);

}  // namespace lopsided
