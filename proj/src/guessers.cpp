#include <random>

#include "json.hpp"

#include "lopsided/error.hpp"
#include "lopsided/guessing.hpp"

namespace lopsided {

namespace {

class ConstantNatSession final : public NatSession {
 public:
  explicit ConstantNatSession(Bit b) : b_(b) {}
  Bit feed(Nat) override { return b_; }
  Bit current() const override { return b_; }

 private:
  Bit b_;
};

class ConstantBitSession final : public BitSession {
 public:
  explicit ConstantBitSession(Bit b) : b_(b) {}
  Bit feed(Bit) override { return b_; }
  Bit current() const override { return b_; }
  std::optional<Bit> settled(const Point&) const override { return b_; }

 private:
  Bit b_;
};

class ConstantNat final : public NatGuesser {
 public:
  explicit ConstantNat(Bit b) : b_(b) {}
  std::unique_ptr<NatSession> start() const override { return std::make_unique<ConstantNatSession>(b_); }
  std::string name() const override { return "constant-" + std::to_string(b_); }

 private:
  Bit b_;
};

class ConstantBit final : public BitGuesser {
 public:
  explicit ConstantBit(Bit b) : b_(b) {}
  std::unique_ptr<BitSession> start() const override { return std::make_unique<ConstantBitSession>(b_); }
  std::string name() const override { return "constant-" + std::to_string(b_); }

 private:
  Bit b_;
};

class StateSession final : public NatSession {
 public:
  explicit StateSession(const FiniteStateGuesser& g) : g_(g), state_(g.initial()) {}
  Bit feed(Nat move) override {
    state_ = g_.next(state_, move);
    return current();
  }
  Bit current() const override { return g_.output(state_); }

 private:
  const FiniteStateGuesser& g_;
  std::size_t state_;
};

// --- prefix guesser -> fact guesser ------------------------------------------

class DecodeSession final : public BitSession {
 public:
  DecodeSession(NatGuesserPtr g0, ListingPtr listing) : g0_(std::move(g0)), listing_(std::move(listing)) {
    inner_ = g0_->start();
  }

  Bit feed(Bit fact) override {
    const Sentence phi = listing_->at(fed_++);
    if (fact) {
      if (auto atom = asValueAtom(*phi)) record(atom->first, atom->second);
    }
    while (length_ < values_.size() && values_[length_] && !conflict_[length_]) inner_->feed(*values_[length_++]);
    return current();
  }

  Bit current() const override { return length_ == 0 ? 0 : inner_->current(); }

 private:
  void record(Nat index, Nat value) {
    if (values_.size() <= index) {
      values_.resize(index + 1);
      conflict_.resize(index + 1, 0);
    }
    if (conflict_[index]) return;
    if (!values_[index]) {
      values_[index] = value;
      return;
    }
    if (*values_[index] == value) return;
    conflict_[index] = 1;
    values_[index].reset();
    if (index < length_) {
      length_ = 0;
      inner_ = g0_->start();
      while (length_ < index) inner_->feed(*values_[length_++]);
    }
  }

  NatGuesserPtr g0_;
  ListingPtr listing_;
  std::unique_ptr<NatSession> inner_;
  std::size_t fed_ = 0;
  std::vector<std::optional<Nat>> values_;
  std::vector<char> conflict_;
  std::size_t length_ = 0;
};

class DecodeGuesser final : public BitGuesser {
 public:
  DecodeGuesser(NatGuesserPtr g0, ListingPtr listing) : g0_(std::move(g0)), listing_(std::move(listing)) {}
  std::unique_ptr<BitSession> start() const override { return std::make_unique<DecodeSession>(g0_, listing_); }
  std::string name() const override { return "facts(" + g0_->name() + ")"; }

 private:
  NatGuesserPtr g0_;
  ListingPtr listing_;
};

// --- fact guesser -> prefix guesser ------------------------------------------

class DetermineSession final : public NatSession {
 public:
  DetermineSession(BitGuesserPtr g, FactSource source) : g_(std::move(g)), source_(std::move(source)) {
    inner_ = g_->start();
  }

  Bit feed(Nat move) override {
    moves_.push_back(move);
    while (true) {
      const Sentence phi = source_.listing->at(determined_);
      auto bit = determinedBy(*phi, moves_, *source_.signature);
      if (!bit) break;
      inner_->feed(*bit ? 1 : 0);
      ++determined_;
    }
    return current();
  }

  Bit current() const override { return determined_ == 0 ? 0 : inner_->current(); }

 private:
  BitGuesserPtr g_;
  FactSource source_;
  std::unique_ptr<BitSession> inner_;
  std::vector<Nat> moves_;
  std::size_t determined_ = 0;
};

class DetermineGuesser final : public NatGuesser {
 public:
  DetermineGuesser(BitGuesserPtr g, FactSource source) : g_(std::move(g)), source_(std::move(source)) {}
  std::unique_ptr<NatSession> start() const override { return std::make_unique<DetermineSession>(g_, source_); }
  std::string name() const override { return "prefix(" + g_->name() + ")"; }

 private:
  BitGuesserPtr g_;
  FactSource source_;
};

}  // namespace

NatGuesserPtr constantNatGuesser(Bit b) { return std::make_shared<ConstantNat>(b); }
BitGuesserPtr constantBitGuesser(Bit b) { return std::make_shared<ConstantBit>(b); }

FiniteStateGuesser::FiniteStateGuesser(std::string name, std::size_t alphabet,
                                       std::vector<std::vector<std::size_t>> transitions, std::vector<Bit> output,
                                       std::size_t start)
    : name_(std::move(name)),
      alphabet_(alphabet),
      transitions_(std::move(transitions)),
      output_(std::move(output)),
      start_(start) {
  if (alphabet_ == 0 || output_.empty() || transitions_.size() != output_.size() || start_ >= output_.size())
    throw Error("guessing", "malformed transition table for " + name_);
  for (const auto& row : transitions_) {
    if (row.size() != alphabet_) throw Error("guessing", "malformed transition table for " + name_);
    for (std::size_t q : row)
      if (q >= output_.size()) throw Error("guessing", "transition out of range in " + name_);
  }
}

std::unique_ptr<NatSession> FiniteStateGuesser::start() const { return std::make_unique<StateSession>(*this); }

Bit FiniteStateGuesser::limitOn(const Point& p) const {
  for (std::size_t q = 0; q < transitions_.size(); ++q)
    for (std::size_t t : transitions_[q])
      if (t < q) throw Error("guessing", name_ + " is not monotone; no exact limit");
  std::size_t state = start_;
  for (Nat v : p.preamble()) state = next(state, v);
  while (true) {
    const std::size_t before = state;
    for (Nat v : p.period()) state = next(state, v);
    if (state == before) return output(state);
  }
}

std::string FiniteStateGuesser::toJson() const {
  nlohmann::json j;
  j["name"] = name_;
  j["alphabet"] = alphabet_;
  j["start"] = start_;
  j["output"] = output_;
  j["transitions"] = transitions_;
  return j.dump();
}

std::vector<FiniteStateGuesserPtr> seededFiniteStateGuessers(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<FiniteStateGuesserPtr> out;
  for (std::size_t n = 0; n < count; ++n) {
    const std::size_t states = 2 + rng() % 4;
    const std::size_t alphabet = 2 + rng() % 3;
    std::vector<std::vector<std::size_t>> table(states, std::vector<std::size_t>(alphabet));
    std::vector<Bit> output(states);
    for (std::size_t q = 0; q < states; ++q) {
      output[q] = static_cast<Bit>(rng() % 2);
      for (std::size_t a = 0; a < alphabet; ++a) {
        const bool climb = q + 1 < states && rng() % 3 == 0;
        table[q][a] = climb ? q + 1 + rng() % (states - q - 1) : q;
      }
    }
    out.push_back(std::make_shared<const FiniteStateGuesser>("fsm-" + std::to_string(n), alphabet, std::move(table),
                                                             std::move(output)));
  }
  return out;
}

Translation prefixToSentenceGuesser(NatGuesserPtr g0) {
  ListingPtr listing = canonicalListing(SentenceClass{SentenceClass::Shape::Sigma, 0});
  auto guesser = std::make_shared<const DecodeGuesser>(std::move(g0), listing);
  return Translation{guesser, FactSource{listing, Signature::standard(), 64}};
}

NatGuesserPtr sentenceToPrefixGuesser(BitGuesserPtr g, FactSource source) {
  return std::make_shared<DetermineGuesser>(std::move(g), std::move(source));
}

}  // namespace lopsided
