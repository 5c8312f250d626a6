#include <map>
#include <mutex>

#include "lopsided/error.hpp"
#include "lopsided/guessing.hpp"

namespace lopsided {

LimitRun runToSettlement(const BitGuesser& g, const FactSource& source, const Point& p, std::size_t maxFacts) {
  LimitRun run;
  auto session = g.start();
  FactStream stream(source, p);
  for (std::size_t n = 0; n < maxFacts; ++n) {
    run.guesses.push_back(session->feed(stream.bit(n)));
    if (auto s = session->settled(p)) {
      run.settled = s;
      run.settledAt = n + 1;
      break;
    }
  }
  return run;
}

namespace {

// Simulated runs shared by the families of one guesser, keyed by point and fuel.
class RunCache {
 public:
  RunCache(BitGuesserPtr g, FactSource source) : g_(std::move(g)), source_(std::move(source)) {}

  std::optional<LimitRun> run(const Point& p, std::size_t fuel) const {
    const auto key = std::make_pair(p.toString(), fuel);
    {
      std::lock_guard lock(mutex_);
      if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    }
    std::optional<LimitRun> result;
    try {
      result = runToSettlement(*g_, source_, p, fuel);
    } catch (const UndecidedError&) {
    }
    std::lock_guard lock(mutex_);
    if (cache_.size() > 512) cache_.clear();
    cache_.emplace(key, result);
    return result;
  }

  const BitGuesserPtr& guesser() const noexcept { return g_; }
  const FactSource& source() const noexcept { return source_; }

 private:
  BitGuesserPtr g_;
  FactSource source_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<std::string, std::size_t>, std::optional<LimitRun>> cache_;
};

// child(k) = [G_{from+k} = 1].
class GuessRowFamily final : public Family {
 public:
  GuessRowFamily(std::shared_ptr<const RunCache> runs, Nat from) : runs_(std::move(runs)), from_(from) {}

  CodePtr child(Nat k) const override { return guessEvent({runs_->guesser(), runs_->source(), from_ + k, 1}); }

  // A guess seen in the simulated run decides on its own; the opposite answer
  // needs the certified limit.
  std::optional<bool> unionContains(const Point& p, std::size_t fuel, const Signature&) const override {
    auto run = runs_->run(p, fuel);
    if (!run) return std::nullopt;
    if (seen(*run, 1)) return true;
    if (!run->settled) return std::nullopt;
    return *run->settled == 1;
  }

  std::optional<bool> intersectionContains(const Point& p, std::size_t fuel, const Signature&) const override {
    auto run = runs_->run(p, fuel);
    if (!run) return std::nullopt;
    if (seen(*run, 0)) return false;
    if (!run->settled) return std::nullopt;
    return *run->settled == 1;
  }

  bool searchable() const override { return false; }

  std::string toString() const override {
    return "(guess-row :guesser \"" + runs_->guesser()->name() + "\" :from " + std::to_string(from_) + ")";
  }

 private:
  bool seen(const LimitRun& run, Bit b) const {
    for (std::size_t j = from_; j < run.guesses.size(); ++j)
      if (run.guesses[j] == b) return true;
    return false;
  }

  std::shared_ptr<const RunCache> runs_;
  Nat from_;
};

// child(i) = the intersection (or union) of row i + 1; both the union and the
// intersection of the family hold exactly when the limit is 1.
class GuessTailFamily final : public Family {
 public:
  GuessTailFamily(std::shared_ptr<const RunCache> runs, bool rowsIntersect)
      : runs_(std::move(runs)), rowsIntersect_(rowsIntersect) {}

  CodePtr child(Nat i) const override {
    auto row = std::make_shared<GuessRowFamily>(runs_, i + 1);
    return rowsIntersect_ ? indexedIntersection(row) : indexedUnion(row);
  }

  std::optional<bool> unionContains(const Point& p, std::size_t fuel, const Signature&) const override {
    return limitIsOne(p, fuel);
  }
  std::optional<bool> intersectionContains(const Point& p, std::size_t fuel, const Signature&) const override {
    return limitIsOne(p, fuel);
  }

  bool searchable() const override { return false; }

  std::string toString() const override {
    return std::string("(guess-tail :guesser \"") + runs_->guesser()->name() + "\" :rows " +
           (rowsIntersect_ ? "inter" : "union") + ")";
  }

 private:
  std::optional<bool> limitIsOne(const Point& p, std::size_t fuel) const {
    auto run = runs_->run(p, fuel);
    if (!run || !run->settled) return std::nullopt;
    return *run->settled == 1;
  }

  std::shared_ptr<const RunCache> runs_;
  bool rowsIntersect_;
};

}  // namespace

CodePair guesserToCodes(BitGuesserPtr g, FactSource source) {
  auto runs = std::make_shared<const RunCache>(std::move(g), std::move(source));
  return CodePair{indexedUnion(std::make_shared<GuessTailFamily>(runs, true)),
                  indexedIntersection(std::make_shared<GuessTailFamily>(runs, false))};
}

std::vector<std::vector<Bit>> expandGuessEvent(const BitGuesser& g, std::size_t round, Bit bit) {
  if (round > 12) throw Error("guessing", "explicit expansion limited to rounds <= 12");
  std::vector<std::vector<Bit>> out;
  const std::size_t length = round + 1;
  for (std::size_t v = 0; v < (std::size_t{1} << length); ++v) {
    std::vector<Bit> bits(length);
    for (std::size_t i = 0; i < length; ++i) bits[i] = static_cast<Bit>((v >> i) & 1);
    if (g.guess(bits) == bit) out.push_back(std::move(bits));
  }
  return out;
}

bool expansionContains(const std::vector<std::vector<Bit>>& expansion, FactStream& stream) {
  if (expansion.empty()) return false;
  std::vector<Bit> bits;
  for (std::size_t i = 0; i < expansion.front().size(); ++i) bits.push_back(stream.bit(i));
  for (const auto& v : expansion)
    if (v == bits) return true;
  return false;
}

DeltaPrimePair unifyFamily(const CodePtr& x, const CodePtr& y, unsigned m, std::size_t fuel) {
  const unsigned level = m < 2 ? 2 : m;
  DeltaPrimePair pair = deltaToDeltaPrime(x, y, level);
  const unsigned order = level <= 3 ? 0 : level - 2;
  Synthesis syn = synthesizeMuNu(SynthesisSpec{"unified", pair, order, "interleaved", std::nullopt}, fuel);
  CodePair codes = guesserToCodes(syn.guesser, syn.source);
  return DeltaPrimePair{codes.unionForm, codes.intersectionForm, level};
}

}  // namespace lopsided
