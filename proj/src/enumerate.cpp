#include <bit>
#include <map>

#include "lopsided/error.hpp"
#include "lopsided/logic.hpp"

namespace lopsided {

Nat atomPairing(Nat i, Nat n) {
  if (n >= 62 || i >= (Nat{1} << (62 - n))) throw Error("logic", "atom pairing overflows");
  return (Nat{1} << n) * (2 * i + 1) - 1;
}

std::pair<Nat, Nat> atomUnpairing(Nat k) {
  const Nat z = k + 1;
  const auto n = static_cast<Nat>(std::countr_zero(z));
  return {((z >> n) - 1) / 2, n};
}

namespace {

using BaseFn = std::function<Sentence(std::size_t)>;

// Boolean closure of a base stream of sentences: even indices are the base
// items, odd indices the compounds in size order.
class ClosureListing final : public Listing {
 public:
  ClosureListing(BaseFn base, std::string description)
      : base_(std::move(base)), description_(std::move(description)) {}

  Sentence at(std::size_t i) const override {
    if (i % 2 == 0) return baseAt(i / 2);
    return compound((i - 1) / 2);
  }

  std::string describe() const override { return description_; }

 private:
  Sentence baseAt(std::size_t k) const {
    std::lock_guard lock(mutex_);
    while (baseCache_.size() <= k) baseCache_.push_back(base_(baseCache_.size()));
    return baseCache_[k];
  }

  Sentence compound(std::size_t c) const {
    std::lock_guard lock(mutex_);
    while (compounds_.size() <= c) growOneSize();
    return compounds_[c];
  }

  void growOneSize() const {
    if (bySize_.empty()) bySize_.emplace_back();  // no sentences of size 0
    const std::size_t s = bySize_.size();
    std::vector<Sentence> level;
    level.push_back(base_(s - 1));
    if (s >= 2)
      for (const auto& x : bySize_[s - 1]) level.push_back(negate(x));
    for (int connective = 0; connective < 2; ++connective) {
      for (std::size_t a = 1; a + 1 < s; ++a) {
        for (const auto& x : bySize_[a])
          for (const auto& y : bySize_[s - 1 - a])
            level.push_back(connective == 0 ? conj({x, y}) : disj({x, y}));
      }
    }
    compounds_.insert(compounds_.end(), level.begin() + 1, level.end());
    bySize_.push_back(std::move(level));
  }

  BaseFn base_;
  std::string description_;
  mutable std::mutex mutex_;
  mutable std::vector<Sentence> baseCache_;
  mutable std::vector<std::vector<Sentence>> bySize_;
  mutable std::vector<Sentence> compounds_;
};

class PrefixedListing final : public Listing {
 public:
  PrefixedListing(std::shared_ptr<const Listing> matrix, SentenceClass cls)
      : matrix_(std::move(matrix)), cls_(cls) {}

  Sentence at(std::size_t i) const override {
    Sentence out = matrix_->at(i);
    // Innermost quantifier first.
    for (unsigned q = cls_.level; q >= 1; --q) {
      const bool existential = (q % 2 == 1) == (cls_.shape == SentenceClass::Shape::Sigma);
      std::string var = "x" + std::to_string(q);
      out = existential ? exists(std::move(var), out) : forall(std::move(var), out);
    }
    return out;
  }

  std::string describe() const override { return "canonical " + toString(cls_); }

 private:
  std::shared_ptr<const Listing> matrix_;
  SentenceClass cls_;
};

Sentence numeralAtom(std::size_t k) {
  const auto [i, n] = atomUnpairing(k);
  return valueAt(i, n);
}

}  // namespace

std::shared_ptr<Listing> canonicalListing(SentenceClass cls, std::vector<DeltaCertificate> certified) {
  if (cls.level == 0) return std::make_shared<ClosureListing>(numeralAtom, "canonical Sigma0=Pi0");

  if (cls.shape != SentenceClass::Shape::Delta) {
    const unsigned vars = cls.level;
    auto term = [vars](Nat code) { return code < vars ? variable("x" + std::to_string(code + 1)) : constant(code - vars); };
    auto base = [term](std::size_t k) {
      const auto [a, b] = atomUnpairing(k);
      return equal(readF(term(a)), term(b));
    };
    auto matrix = std::make_shared<ClosureListing>(base, "matrix");
    return std::make_shared<PrefixedListing>(std::move(matrix), cls);
  }

  const unsigned lower = cls.level - 1;
  std::shared_ptr<const Listing> sigma, pi;
  if (lower > 0) {
    sigma = canonicalListing({SentenceClass::Shape::Sigma, lower});
    pi = canonicalListing({SentenceClass::Shape::Pi, lower});
  }
  auto base = [certified = std::move(certified), sigma, pi](std::size_t k) -> Sentence {
    if (k < certified.size()) return certified[k].sigmaForm;
    const std::size_t t = k - certified.size();
    if (!sigma) return numeralAtom(t);
    return t % 2 == 0 ? sigma->at(t / 2) : pi->at(t / 2);
  };
  return std::make_shared<ClosureListing>(base, "canonical " + toString(cls));
}

Sentence enumerate(SentenceClass cls, std::size_t i) {
  static std::mutex mutex;
  static std::map<std::pair<int, unsigned>, std::shared_ptr<Listing>> cache;
  std::shared_ptr<Listing> listing;
  {
    std::lock_guard lock(mutex);
    auto& slot = cache[{static_cast<int>(cls.shape), cls.level}];
    if (!slot) slot = canonicalListing(cls);
    listing = slot;
  }
  return listing->at(i);
}

}  // namespace lopsided
