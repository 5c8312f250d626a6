#include <deque>
#include <mutex>
#include <unordered_map>

#include "families.hpp"
#include "lopsided/error.hpp"
#include "lopsided/guessing.hpp"

namespace lopsided {

namespace {

struct Role {
  bool tau = false;  // tau_xy, otherwise not sigma_xy
  Nat x = 0;
};

class SynthesisListing final : public Listing {
 public:
  explicit SynthesisListing(SynthesisSpec spec)
      : spec_(std::move(spec)),
        canonical_(canonicalListing(spec_.order == 0 ? SentenceClass{SentenceClass::Shape::Sigma, 0}
                                                     : SentenceClass{SentenceClass::Shape::Delta, spec_.order})) {}

  Sentence at(std::size_t i) const override {
    std::lock_guard lock(mutex_);
    ensure(i);
    return entries_[i];
  }

  std::string describe() const override { return "interleaved " + spec_.name + " / " + canonical_->describe(); }

  const SynthesisSpec& spec() const noexcept { return spec_; }

  // Item of entry i and the number of role registrations made up to entry i.
  std::pair<std::size_t, std::size_t> entry(std::size_t i) const {
    std::lock_guard lock(mutex_);
    ensure(i);
    return {entryItem_[i], logSize_[i]};
  }

  // Registrations [from, to) in order.
  template <class Fn>
  void forRegistrations(std::size_t from, std::size_t to, Fn&& fn) const {
    std::lock_guard lock(mutex_);
    for (std::size_t k = from; k < to; ++k) fn(log_[k].first, log_[k].second);
  }

  // Roles of `item` registered before position `limit` of the log.
  template <class Fn>
  void forRoles(std::size_t item, std::size_t limit, Fn&& fn) const {
    std::lock_guard lock(mutex_);
    for (const auto& [pos, role] : roles_[item]) {
      if (pos >= limit) break;
      fn(role);
    }
  }

 private:
  static constexpr int kPairsPerSlot = 4;

  std::size_t intern(const Sentence& phi) const {
    auto [it, inserted] = items_.try_emplace(toString(*phi), roles_.size());
    if (inserted) {
      roles_.emplace_back();
      listed_.push_back(0);
    }
    return it->second;
  }

  Sentence certificate(const CodePtr& c) const {
    auto cert = certificateOf(*c);
    if (!cert) throw CodeError("inner code without a sentence certificate: " + toString(*c));
    return *cert;
  }

  void registerRole(std::size_t item, Role role) const {
    roles_[item].emplace_back(log_.size(), role);
    log_.emplace_back(item, role);
  }

  void generatePair() const {
    const auto [x, y] = detail::cantorUnpair(nextPair_++);
    const Sentence sigma = certificate(innerD(spec_.pair, x, y));
    const Sentence tau = certificate(innerE(spec_.pair, x, y));
    const Sentence notSigma = negate(sigma);
    const Sentence notTau = negate(tau);
    const std::size_t sigmaItem = intern(sigma);
    const std::size_t notSigmaItem = intern(notSigma);
    const std::size_t tauItem = intern(tau);
    const std::size_t notTauItem = intern(notTau);
    registerRole(notSigmaItem, Role{false, x});
    registerRole(tauItem, Role{true, x});
    queue_.emplace_back(sigma, sigmaItem);
    queue_.emplace_back(notSigma, notSigmaItem);
    queue_.emplace_back(tau, tauItem);
    queue_.emplace_back(notTau, notTauItem);
  }

  std::optional<std::pair<Sentence, std::size_t>> nextCertificate() const {
    for (int attempt = 0; attempt <= kPairsPerSlot; ++attempt) {
      while (!queue_.empty()) {
        auto front = queue_.front();
        queue_.pop_front();
        if (!listed_[front.second]) return front;
      }
      if (attempt < kPairsPerSlot) generatePair();
    }
    return std::nullopt;
  }

  std::pair<Sentence, std::size_t> nextCanonical() const {
    while (true) {
      Sentence phi = canonical_->at(nextCanonical_++);
      const std::size_t item = intern(phi);
      if (!listed_[item]) return {std::move(phi), item};
    }
  }

  void ensure(std::size_t i) const {
    while (entries_.size() <= i) {
      std::optional<std::pair<Sentence, std::size_t>> next;
      if (entries_.size() % 2 == 0) next = nextCertificate();
      if (!next) next = nextCanonical();
      listed_[next->second] = 1;
      entries_.push_back(next->first);
      entryItem_.push_back(next->second);
      logSize_.push_back(log_.size());
    }
  }

  SynthesisSpec spec_;
  ListingPtr canonical_;

  mutable std::mutex mutex_;
  mutable std::vector<Sentence> entries_;
  mutable std::vector<std::size_t> entryItem_;
  mutable std::vector<std::size_t> logSize_;
  mutable std::unordered_map<std::string, std::size_t> items_;
  mutable std::vector<std::vector<std::pair<std::size_t, Role>>> roles_;
  mutable std::vector<char> listed_;
  mutable std::vector<std::pair<std::size_t, Role>> log_;
  mutable std::deque<std::pair<Sentence, std::size_t>> queue_;
  mutable Nat nextPair_ = 0;
  mutable std::size_t nextCanonical_ = 0;
};

class MuNuSession final : public BitSession {
 public:
  MuNuSession(std::shared_ptr<const SynthesisListing> listing, std::shared_ptr<const Signature> sig, std::size_t fuel)
      : listing_(std::move(listing)), sig_(std::move(sig)), fuel_(fuel) {}

  Bit feed(Bit fact) override {
    const auto [item, registered] = listing_->entry(fed_++);
    listing_->forRegistrations(cursor_, registered, [this](std::size_t it, Role role) {
      if (it < appeared_.size() && appeared_[it]) kill(role);
    });
    cursor_ = registered;
    if (fact) {
      if (appeared_.size() <= item) appeared_.resize(item + 1, 0);
      if (!appeared_[item]) {
        appeared_[item] = 1;
        listing_->forRoles(item, cursor_, [this](Role role) { kill(role); });
      }
    }
    while (killed(killedMu_, mu_)) ++mu_;
    while (killed(killedNu_, nu_)) ++nu_;
    return current();
  }

  Bit current() const override { return mu_ < nu_ ? 1 : 0; }

  std::optional<Bit> settled(const Point& p) const override {
    const DeltaPrimePair& pair = listing_->spec().pair;
    if (mu_ < nu_) {
      if (member(*pair.unionForm->family->child(mu_), p, fuel_, *sig_) == Verdict::In) return 1;
    } else {
      if (member(*pair.intersectionForm->family->child(nu_), p, fuel_, *sig_) == Verdict::Out) return 0;
    }
    return std::nullopt;
  }

  std::vector<std::pair<std::string, Nat>> diagnostics() const override { return {{"mu", mu_}, {"nu", nu_}}; }

 private:
  static bool killed(const std::vector<char>& flags, Nat x) { return x < flags.size() && flags[x]; }

  void kill(Role role) {
    auto& flags = role.tau ? killedNu_ : killedMu_;
    if (flags.size() <= role.x) flags.resize(role.x + 1, 0);
    flags[role.x] = 1;
  }

  std::shared_ptr<const SynthesisListing> listing_;
  std::shared_ptr<const Signature> sig_;
  std::size_t fuel_;
  std::size_t fed_ = 0;
  std::size_t cursor_ = 0;
  std::vector<char> appeared_;
  std::vector<char> killedMu_;
  std::vector<char> killedNu_;
  Nat mu_ = 0;
  Nat nu_ = 0;
};

class MuNuGuesser final : public BitGuesser {
 public:
  MuNuGuesser(std::shared_ptr<const SynthesisListing> listing, std::shared_ptr<const Signature> sig, std::size_t fuel)
      : listing_(std::move(listing)), sig_(std::move(sig)), fuel_(fuel) {}

  std::unique_ptr<BitSession> start() const override { return std::make_unique<MuNuSession>(listing_, sig_, fuel_); }
  std::string name() const override { return "mu-nu " + listing_->spec().name; }

 private:
  std::shared_ptr<const SynthesisListing> listing_;
  std::shared_ptr<const Signature> sig_;
  std::size_t fuel_;
};

}  // namespace

SynthesisSpec catalogSpec(const CatalogSet& set) {
  std::string name = catalogName(set.id);
  if (set.id == CatalogId::ExactlyZeros || set.id == CatalogId::AtMostZeros || set.id == CatalogId::FirstValueEquals)
    name += "-" + std::to_string(set.k);
  return SynthesisSpec{name, catalogPair(set), 0, "interleaved", set};
}

SynthesisSpec wholeSpaceSpec() {
  auto u = indexedUnion(constantFamily(indexedIntersection(constantFamily(wholeSpace()))));
  auto i = indexedIntersection(constantFamily(indexedUnion(constantFamily(wholeSpace()))));
  return SynthesisSpec{"whole-space", DeltaPrimePair{u, i, 2}, 0, "interleaved", std::nullopt};
}

SynthesisSpec emptySetSpec() {
  auto u = indexedUnion(constantFamily(indexedIntersection(constantFamily(emptySet()))));
  auto i = indexedIntersection(constantFamily(indexedUnion(constantFamily(emptySet()))));
  return SynthesisSpec{"empty-set", DeltaPrimePair{u, i, 2}, 0, "interleaved", std::nullopt};
}

Synthesis synthesizeMuNu(const SynthesisSpec& spec, std::size_t fuel) {
  if (spec.listingOrder != "interleaved") throw CodeError("unknown listing order '" + spec.listingOrder + "'");
  auto listing = std::make_shared<const SynthesisListing>(spec);
  std::shared_ptr<const Signature> sig = Signature::standard();
  auto guesser = std::make_shared<const MuNuGuesser>(listing, sig, fuel);
  return Synthesis{guesser, FactSource{listing, sig, fuel}};
}

}  // namespace lopsided
