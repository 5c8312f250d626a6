#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lopsided/baire.hpp"
#include "lopsided/logic.hpp"

namespace lopsided {

using Bit = std::uint8_t;

// Incremental view of a guesser: after each input it reports the guess on the
// whole history so far. `current()` before any input is the guess on the
// empty history. A session may borrow its guesser and must not outlive it.
class NatSession {
 public:
  virtual ~NatSession() = default;
  virtual Bit feed(Nat move) = 0;
  virtual Bit current() const = 0;
};

class BitSession {
 public:
  virtual ~BitSession() = default;
  virtual Bit feed(Bit fact) = 0;
  virtual Bit current() const = 0;

  // When the facts fed so far are those of `point`, a guesser may prove that
  // its output stays constant on every later round of that point's fact
  // stream. Sound or nullopt.
  virtual std::optional<Bit> settled(const Point&) const { return std::nullopt; }

  // Named internal counters for traces (e.g. mu and nu).
  virtual std::vector<std::pair<std::string, Nat>> diagnostics() const { return {}; }
};

// A guesser over move prefixes. Output depends on the prefix alone.
class NatGuesser {
 public:
  virtual ~NatGuesser() = default;
  virtual std::unique_ptr<NatSession> start() const = 0;
  virtual std::string name() const = 0;

  Bit guess(std::span<const Nat> moves) const {
    auto s = start();
    for (Nat m : moves) s->feed(m);
    return s->current();
  }
};

// A guesser over fact-bit prefixes.
class BitGuesser {
 public:
  virtual ~BitGuesser() = default;
  virtual std::unique_ptr<BitSession> start() const = 0;
  virtual std::string name() const = 0;

  Bit guess(std::span<const Bit> bits) const {
    auto s = start();
    for (Bit b : bits) s->feed(b);
    return s->current();
  }
};

using NatGuesserPtr = std::shared_ptr<const NatGuesser>;
using BitGuesserPtr = std::shared_ptr<const BitGuesser>;

// The enumeration handle a fact stream reads from: a listing, the signature
// its symbols live in, and the evaluator fuel used for each fact.
struct FactSource {
  ListingPtr listing;
  std::shared_ptr<const Signature> signature;
  std::size_t fuel = 64;
};

// Bit i is the truth bit of listing sentence i at the point. Facts are
// computed on demand and memoized; Unknown throws UndecidedError.
class FactStream {
 public:
  FactStream(FactSource source, Point point) : source_(std::move(source)), point_(std::move(point)) {}

  Bit bit(std::size_t i);
  Sentence sentence(std::size_t i) const { return source_.listing->at(i); }
  const Point& point() const noexcept { return point_; }
  const FactSource& source() const noexcept { return source_; }

 private:
  FactSource source_;
  Point point_;
  std::vector<Bit> cache_;
};

// Guess of g after the first j + 1 facts of the stream.
Bit guessAfter(const BitGuesser& g, FactStream& stream, std::size_t j);

}  // namespace lopsided
