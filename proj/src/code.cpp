#include <algorithm>
#include <sstream>

#include "families.hpp"
#include "lopsided/error.hpp"

namespace lopsided {

namespace detail {

Nat cantorPair(Nat a, Nat b) { return (a + b) * (a + b + 1) / 2 + b; }

std::pair<Nat, Nat> cantorUnpair(Nat z) {
  Nat w = 0;
  while ((w + 1) * (w + 2) / 2 <= z) ++w;
  const Nat b = z - w * (w + 1) / 2;
  return {w - b, b};
}

}  // namespace detail

std::string toString(Verdict v) {
  switch (v) {
    case Verdict::In:
      return "In";
    case Verdict::Out:
      return "Out";
    case Verdict::Unknown:
      return "Unknown";
  }
  return "Unknown";
}

Verdict dual(Verdict v) {
  if (v == Verdict::In) return Verdict::Out;
  if (v == Verdict::Out) return Verdict::In;
  return v;
}

namespace {

CodePtr make(Code c) { return std::make_shared<const Code>(std::move(c)); }

class ExplicitTailFamily final : public Family {
 public:
  ExplicitTailFamily(std::vector<CodePtr> head, CodePtr tail) : head_(std::move(head)), tail_(std::move(tail)) {}

  CodePtr child(Nat i) const override { return i < head_.size() ? head_[i] : tail_; }

  std::optional<bool> unionContains(const Point& p, std::size_t fuel, const Signature& sig) const override {
    bool unknown = false;
    for (const CodePtr* c : all()) {
      const Verdict v = member(**c, p, fuel, sig);
      if (v == Verdict::In) return true;
      unknown = unknown || v == Verdict::Unknown;
    }
    if (unknown) return std::nullopt;
    return false;
  }

  std::optional<bool> intersectionContains(const Point& p, std::size_t fuel, const Signature& sig) const override {
    bool unknown = false;
    for (const CodePtr* c : all()) {
      const Verdict v = member(**c, p, fuel, sig);
      if (v == Verdict::Out) return false;
      unknown = unknown || v == Verdict::Unknown;
    }
    if (unknown) return std::nullopt;
    return true;
  }

  std::string toString() const override {
    std::string out = "(tail (";
    for (std::size_t i = 0; i < head_.size(); ++i) out += (i ? " " : "") + lopsided::toString(*head_[i]);
    return out + ") " + lopsided::toString(*tail_) + ")";
  }

 private:
  std::vector<const CodePtr*> all() const {
    std::vector<const CodePtr*> out;
    for (const auto& c : head_) out.push_back(&c);
    out.push_back(&tail_);
    return out;
  }

  std::vector<CodePtr> head_;
  CodePtr tail_;
};

class RuleFamily final : public Family {
 public:
  RuleFamily(std::function<CodePtr(Nat)> rule, std::string description)
      : rule_(std::move(rule)), description_(std::move(description)) {}

  CodePtr child(Nat i) const override { return rule_(i); }
  std::string toString() const override { return "(rule \"" + description_ + "\")"; }

 private:
  std::function<CodePtr(Nat)> rule_;
  std::string description_;
};

class SubstitutionFamily final : public Family {
 public:
  SubstitutionFamily(std::string var, FormulaPtr body) : var_(std::move(var)), body_(std::move(body)) {}

  CodePtr child(Nat i) const override { return sentenceLeaf(substitute(body_, var_, i)); }

  std::optional<bool> unionContains(const Point& p, std::size_t fuel, const Signature& sig) const override {
    return decidedTruth(evaluate(*exists(var_, body_), p, fuel, sig));
  }
  std::optional<bool> intersectionContains(const Point& p, std::size_t fuel, const Signature& sig) const override {
    return decidedTruth(evaluate(*forall(var_, body_), p, fuel, sig));
  }

  std::string toString() const override { return "(subst " + var_ + " " + lopsided::toString(*body_) + ")"; }

 private:
  static std::optional<bool> decidedTruth(TruthValue v) {
    if (v == TruthValue::Unknown) return std::nullopt;
    return v == TruthValue::True;
  }

  std::string var_;
  FormulaPtr body_;
};

// Children are the complements of the wrapped family's children.
class DualFamily final : public Family {
 public:
  explicit DualFamily(FamilyPtr inner) : inner_(std::move(inner)) {}

  CodePtr child(Nat i) const override { return complement(inner_->child(i)); }

  std::optional<bool> unionContains(const Point& p, std::size_t fuel, const Signature& sig) const override {
    auto v = inner_->intersectionContains(p, fuel, sig);
    if (!v) return std::nullopt;
    return !*v;
  }
  std::optional<bool> intersectionContains(const Point& p, std::size_t fuel, const Signature& sig) const override {
    auto v = inner_->unionContains(p, fuel, sig);
    if (!v) return std::nullopt;
    return !*v;
  }

  std::string toString() const override { return "(dual " + inner_->toString() + ")"; }

 private:
  FamilyPtr inner_;
};

}  // namespace

CodePtr cylinder(Prefix s) { return make(Code{Code::Kind::Cylinder, std::move(s), {}, {}, {}, {}, {}}); }
CodePtr coCylinder(Prefix s) { return make(Code{Code::Kind::CoCylinder, std::move(s), {}, {}, {}, {}, {}}); }
CodePtr finiteUnion(std::vector<CodePtr> parts) {
  return make(Code{Code::Kind::Union, {}, std::move(parts), {}, {}, {}, {}});
}
CodePtr finiteIntersection(std::vector<CodePtr> parts) {
  return make(Code{Code::Kind::Intersection, {}, std::move(parts), {}, {}, {}, {}});
}
CodePtr indexedUnion(FamilyPtr family) {
  return make(Code{Code::Kind::IndexedUnion, {}, {}, std::move(family), {}, {}, {}});
}
CodePtr indexedIntersection(FamilyPtr family) {
  return make(Code{Code::Kind::IndexedIntersection, {}, {}, std::move(family), {}, {}, {}});
}
CodePtr sentenceLeaf(Sentence phi) { return make(Code{Code::Kind::Leaf, {}, {}, {}, std::move(phi), {}, {}}); }
CodePtr guessEvent(GuessEventData event) {
  return make(Code{Code::Kind::GuessEvent, {}, {}, {}, {}, std::move(event), {}});
}
CodePtr catalogCode(CatalogSet set) { return make(Code{Code::Kind::Catalog, {}, {}, {}, {}, {}, std::move(set)}); }

FamilyPtr explicitTail(std::vector<CodePtr> head, CodePtr tail) {
  return std::make_shared<ExplicitTailFamily>(std::move(head), std::move(tail));
}

FamilyPtr ruleFamily(std::function<CodePtr(Nat)> rule, std::string description) {
  return std::make_shared<RuleFamily>(std::move(rule), std::move(description));
}

FamilyPtr substitutionFamily(std::string var, FormulaPtr body) {
  return std::make_shared<SubstitutionFamily>(std::move(var), std::move(body));
}

FamilyPtr templateFamily(const std::string& name, const std::map<std::string, Nat>& params) {
  if (name == "first-repeat") {
    return std::make_shared<detail::TemplateFamily>(name, params, [](Nat i) { return cylinder({i, i}); });
  }
  return detail::catalogTemplate(name, params);
}

std::vector<std::string> templateNames() {
  auto names = detail::catalogTemplateNames();
  names.insert(names.begin(), "first-repeat");
  return names;
}

namespace {

void print(std::ostream& out, const Code& c) {
  auto prefix = [&](const Prefix& s) {
    out << '(';
    for (std::size_t i = 0; i < s.size(); ++i) out << (i ? " " : "") << s[i];
    out << ')';
  };
  switch (c.kind) {
    case Code::Kind::Cylinder:
      out << "(cyl ";
      prefix(c.prefix);
      out << ')';
      return;
    case Code::Kind::CoCylinder:
      out << "(co-cyl ";
      prefix(c.prefix);
      out << ')';
      return;
    case Code::Kind::Union:
    case Code::Kind::Intersection:
      out << (c.kind == Code::Kind::Union ? "(union" : "(inter");
      for (const auto& p : c.parts) {
        out << ' ';
        print(out, *p);
      }
      out << ')';
      return;
    case Code::Kind::IndexedUnion:
    case Code::Kind::IndexedIntersection:
      out << (c.kind == Code::Kind::IndexedUnion ? "(iunion " : "(iinter ") << c.family->toString() << ')';
      return;
    case Code::Kind::Leaf:
      out << "(leaf " << toString(*c.sentence) << ')';
      return;
    case Code::Kind::GuessEvent:
      out << "(guess-event " << c.event.guesser->name() << " :round " << c.event.round << " :bit "
          << int(c.event.bit) << ')';
      return;
    case Code::Kind::Catalog:
      if (c.complemented) out << "(complement ";
      out << toString(c.catalog);
      if (c.complemented) out << ')';
      return;
  }
}

}  // namespace

std::string toString(const Code& c) {
  std::ostringstream out;
  print(out, c);
  return out.str();
}

Verdict member(const Code& c, const Point& p, std::size_t fuel, const Signature& sig) {
  switch (c.kind) {
    case Code::Kind::Cylinder:
      return verdictOf(p.extends(c.prefix));
    case Code::Kind::CoCylinder:
      return verdictOf(!p.extends(c.prefix));
    case Code::Kind::Union:
    case Code::Kind::Intersection: {
      const Verdict dominant = c.kind == Code::Kind::Union ? Verdict::In : Verdict::Out;
      bool unknown = false;
      for (const auto& part : c.parts) {
        const Verdict v = member(*part, p, fuel, sig);
        if (v == dominant) return dominant;
        unknown = unknown || v == Verdict::Unknown;
      }
      return unknown ? Verdict::Unknown : dual(dominant);
    }
    case Code::Kind::IndexedUnion: {
      if (auto exact = c.family->unionContains(p, fuel, sig)) return verdictOf(*exact);
      if (!c.family->searchable()) return Verdict::Unknown;
      for (std::size_t i = 0; i < fuel; ++i)
        if (member(*c.family->child(i), p, fuel, sig) == Verdict::In) return Verdict::In;
      return Verdict::Unknown;
    }
    case Code::Kind::IndexedIntersection: {
      if (auto exact = c.family->intersectionContains(p, fuel, sig)) return verdictOf(*exact);
      if (!c.family->searchable()) return Verdict::Unknown;
      for (std::size_t i = 0; i < fuel; ++i)
        if (member(*c.family->child(i), p, fuel, sig) == Verdict::Out) return Verdict::Out;
      return Verdict::Unknown;
    }
    case Code::Kind::Leaf: {
      const TruthValue v = evaluate(*c.sentence, p, fuel, sig);
      if (v == TruthValue::Unknown) return Verdict::Unknown;
      return verdictOf(v == TruthValue::True);
    }
    case Code::Kind::GuessEvent: {
      try {
        FactStream stream(c.event.source, p);
        return verdictOf(guessAfter(*c.event.guesser, stream, c.event.round) == c.event.bit);
      } catch (const UndecidedError&) {
        return Verdict::Unknown;
      }
    }
    case Code::Kind::Catalog:
      return verdictOf(exactOracle(c.catalog, p) != c.complemented);
  }
  return Verdict::Unknown;
}

CodePtr complement(const CodePtr& c) {
  switch (c->kind) {
    case Code::Kind::Cylinder:
      return coCylinder(c->prefix);
    case Code::Kind::CoCylinder:
      return cylinder(c->prefix);
    case Code::Kind::Union:
    case Code::Kind::Intersection: {
      std::vector<CodePtr> parts;
      for (const auto& part : c->parts) parts.push_back(complement(part));
      return c->kind == Code::Kind::Union ? finiteIntersection(std::move(parts)) : finiteUnion(std::move(parts));
    }
    case Code::Kind::IndexedUnion:
      return indexedIntersection(std::make_shared<DualFamily>(c->family));
    case Code::Kind::IndexedIntersection:
      return indexedUnion(std::make_shared<DualFamily>(c->family));
    case Code::Kind::Leaf:
      return sentenceLeaf(negate(c->sentence));
    case Code::Kind::GuessEvent: {
      GuessEventData e = c->event;
      e.bit = e.bit ? 0 : 1;
      return guessEvent(std::move(e));
    }
    case Code::Kind::Catalog: {
      Code copy = *c;
      copy.complemented = !copy.complemented;
      return make(std::move(copy));
    }
  }
  return c;
}

FamilyPtr dualFamily(FamilyPtr inner) { return std::make_shared<DualFamily>(std::move(inner)); }

std::string toString(const BorelClass& c) {
  if (c.level == 0) return "clopen";
  switch (c.shape) {
    case SentenceClass::Shape::Sigma:
      return "Sigma0_" + std::to_string(c.level);
    case SentenceClass::Shape::Pi:
      return "Pi0_" + std::to_string(c.level);
    case SentenceClass::Shape::Delta:
      return "Delta0_" + std::to_string(c.level);
  }
  return "?";
}

namespace {

BorelClass catalogClass(const CatalogSet& set) {
  using S = SentenceClass::Shape;
  switch (set.id) {
    case CatalogId::Cylinder:
    case CatalogId::FirstValueEquals:
    case CatalogId::EqualFirstTwo:
      return {S::Delta, 0};
    case CatalogId::ExactlyZeros:
    case CatalogId::AtMostZeros:
      return {S::Delta, 2};
    case CatalogId::EventuallyZero:
    case CatalogId::EventuallyConstant:
      return {S::Sigma, 2};
    case CatalogId::InfinitelyManyZeros:
      return {S::Pi, 2};
  }
  return {S::Delta, 0};
}

BorelClass indexed(BorelClass child, SentenceClass::Shape op) {
  using S = SentenceClass::Shape;
  if (child.level == 0) return {op, 1};
  if (child.shape == op || child.shape == S::Delta) return {op, child.level};
  return {op, child.level + 1};
}

}  // namespace

BorelClass syntacticClass(const Code& c) {
  using S = SentenceClass::Shape;
  switch (c.kind) {
    case Code::Kind::Cylinder:
    case Code::Kind::CoCylinder:
    case Code::Kind::GuessEvent:
      return {S::Delta, 0};
    case Code::Kind::Leaf: {
      if (isQuantifierFree(*c.sentence)) return {S::Delta, 0};
      const SentenceClass sc = classify(c.sentence);
      return {sc.shape, sc.level};
    }
    case Code::Kind::Catalog: {
      BorelClass out = catalogClass(c.catalog);
      if (c.complemented && out.shape != S::Delta) out.shape = out.shape == S::Sigma ? S::Pi : S::Sigma;
      return out;
    }
    case Code::Kind::Union:
    case Code::Kind::Intersection: {
      BorelClass out{S::Delta, 0};
      for (const auto& part : c.parts) {
        const BorelClass pc = syntacticClass(*part);
        if (pc.level > out.level) out = pc;
        else if (pc.level == out.level && pc.level > 0 && pc.shape != out.shape) {
          if (out.shape != S::Delta && pc.shape != S::Delta) out = {S::Delta, pc.level + 1};
        }
      }
      return out;
    }
    case Code::Kind::IndexedUnion:
      return indexed(syntacticClass(*c.family->child(0)), S::Sigma);
    case Code::Kind::IndexedIntersection:
      return indexed(syntacticClass(*c.family->child(0)), S::Pi);
  }
  return {S::Delta, 0};
}

std::optional<Sentence> certificateOf(const Code& c) {
  switch (c.kind) {
    case Code::Kind::Cylinder:
      return extendsFormula(c.prefix);
    case Code::Kind::CoCylinder:
      return negate(extendsFormula(c.prefix));
    case Code::Kind::Leaf:
      return c.sentence;
    case Code::Kind::Union:
    case Code::Kind::Intersection: {
      std::vector<FormulaPtr> parts;
      for (const auto& part : c.parts) {
        auto cert = certificateOf(*part);
        if (!cert) return std::nullopt;
        parts.push_back(*cert);
      }
      return c.kind == Code::Kind::Union ? disj(std::move(parts)) : conj(std::move(parts));
    }
    default:
      return std::nullopt;
  }
}

}  // namespace lopsided
