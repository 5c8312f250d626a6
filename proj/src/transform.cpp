#include <algorithm>
#include <set>

#include "families.hpp"
#include "lopsided/error.hpp"

namespace lopsided {

namespace {

bool isIndexed(const Code& c) {
  return c.kind == Code::Kind::IndexedUnion || c.kind == Code::Kind::IndexedIntersection;
}

class FlattenFamily final : public Family {
 public:
  explicit FlattenFamily(FamilyPtr inner) : inner_(std::move(inner)) {}

  CodePtr child(Nat z) const override {
    const auto [a, b] = detail::cantorUnpair(z);
    const CodePtr row = inner_->child(a);
    if (!isIndexed(*row)) throw CodeError("flatten: child " + std::to_string(a) + " is not an indexed operator");
    return row->family->child(b);
  }

  // The flattened union equals the inner union when the rows are unions, and
  // likewise for intersections.
  std::optional<bool> unionContains(const Point& p, std::size_t fuel, const Signature& sig) const override {
    if (rowKind() != Code::Kind::IndexedUnion) return std::nullopt;
    return inner_->unionContains(p, fuel, sig);
  }
  std::optional<bool> intersectionContains(const Point& p, std::size_t fuel, const Signature& sig) const override {
    if (rowKind() != Code::Kind::IndexedIntersection) return std::nullopt;
    return inner_->intersectionContains(p, fuel, sig);
  }

  std::string toString() const override { return "(flatten " + inner_->toString() + ")"; }

 private:
  Code::Kind rowKind() const { return inner_->child(0)->kind; }

  FamilyPtr inner_;
};

class FlattenRowsFamily final : public Family {
 public:
  explicit FlattenRowsFamily(FamilyPtr inner) : inner_(std::move(inner)) {}

  CodePtr child(Nat i) const override {
    const CodePtr row = inner_->child(i);
    if (!isIndexed(*row)) return row;
    const CodePtr first = row->family->child(0);
    if (first->kind != row->kind) return row;
    auto flat = flattenFamily(row->family);
    return row->kind == Code::Kind::IndexedUnion ? indexedUnion(flat) : indexedIntersection(flat);
  }

  std::optional<bool> unionContains(const Point& p, std::size_t fuel, const Signature& sig) const override {
    return inner_->unionContains(p, fuel, sig);
  }
  std::optional<bool> intersectionContains(const Point& p, std::size_t fuel, const Signature& sig) const override {
    return inner_->intersectionContains(p, fuel, sig);
  }

  std::string toString() const override { return "(flatten-rows " + inner_->toString() + ")"; }

 private:
  FamilyPtr inner_;
};

class WrapRowsFamily final : public Family {
 public:
  WrapRowsFamily(FamilyPtr inner, bool asUnion) : inner_(std::move(inner)), asUnion_(asUnion) {}

  CodePtr child(Nat i) const override {
    auto fam = constantFamily(inner_->child(i));
    return asUnion_ ? indexedUnion(fam) : indexedIntersection(fam);
  }

  std::optional<bool> unionContains(const Point& p, std::size_t fuel, const Signature& sig) const override {
    return inner_->unionContains(p, fuel, sig);
  }
  std::optional<bool> intersectionContains(const Point& p, std::size_t fuel, const Signature& sig) const override {
    return inner_->intersectionContains(p, fuel, sig);
  }

  std::string toString() const override {
    return std::string("(wrap-rows ") + (asUnion_ ? "union " : "inter ") + inner_->toString() + ")";
  }

 private:
  FamilyPtr inner_;
  bool asUnion_;
};

// --- clopen sets -----------------------------------------------------------

bool isAtom(const Formula& phi) { return phi.kind == Formula::Kind::Equal || phi.kind == Formula::Kind::Predicate; }

// Truth value of phi when every f(i) = n atom is read off `assignment` and
// all other atoms are closed (read no f).
bool evalAssigned(const Formula& phi, const std::map<Nat, Nat>& assignment, const Signature& sig) {
  switch (phi.kind) {
    case Formula::Kind::Not:
      return !evalAssigned(*phi.children[0], assignment, sig);
    case Formula::Kind::And:
      return std::ranges::all_of(phi.children, [&](const FormulaPtr& c) { return evalAssigned(*c, assignment, sig); });
    case Formula::Kind::Or:
      return std::ranges::any_of(phi.children, [&](const FormulaPtr& c) { return evalAssigned(*c, assignment, sig); });
    default:
      break;
  }
  if (auto atom = asValueAtom(phi)) return assignment.at(atom->first) == atom->second;
  return *determinedBy(phi, {}, sig);
}

// Indices and values mentioned by f(i) = n atoms; false if another atom reads f.
bool collectAtoms(const Formula& phi, std::map<Nat, std::set<Nat>>& mentioned, const Signature& sig) {
  if (!isAtom(phi)) {
    for (const auto& c : phi.children)
      if (!collectAtoms(*c, mentioned, sig)) return false;
    return true;
  }
  if (auto atom = asValueAtom(phi)) {
    mentioned[atom->first].insert(atom->second);
    return true;
  }
  return determinedBy(phi, {}, sig).has_value();
}

// Constant truth value of an atomic-fragment sentence, by cases over the
// mentioned indices (each takes a mentioned value or one unmentioned value).
std::optional<bool> constantValue(const Formula& phi, const Signature& sig) {
  std::map<Nat, std::set<Nat>> mentioned;
  if (!collectAtoms(phi, mentioned, sig)) return std::nullopt;
  std::vector<std::pair<Nat, std::vector<Nat>>> choices;
  std::size_t cases = 1;
  for (const auto& [index, values] : mentioned) {
    std::vector<Nat> options(values.begin(), values.end());
    options.push_back(*values.rbegin() + 1);
    cases *= options.size();
    if (cases > 4096) return std::nullopt;
    choices.emplace_back(index, std::move(options));
  }
  std::optional<bool> seen;
  std::vector<std::size_t> pick(choices.size(), 0);
  for (std::size_t n = 0; n < cases; ++n) {
    std::map<Nat, Nat> assignment;
    for (std::size_t k = 0; k < choices.size(); ++k) assignment[choices[k].first] = choices[k].second[pick[k]];
    const bool v = evalAssigned(phi, assignment, sig);
    if (seen && *seen != v) return std::nullopt;
    seen = v;
    for (std::size_t k = 0; k < choices.size(); ++k) {
      if (++pick[k] < choices[k].second.size()) break;
      pick[k] = 0;
    }
  }
  return seen;
}

CodePtr clopenNnf(const FormulaPtr& phi, bool negated, const Signature& sig) {
  switch (phi->kind) {
    case Formula::Kind::Not:
      return clopenNnf(phi->children[0], !negated, sig);
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      std::vector<CodePtr> parts;
      for (const auto& c : phi->children) parts.push_back(clopenNnf(c, negated, sig));
      const bool conjunction = (phi->kind == Formula::Kind::And) != negated;
      if (parts.empty()) return conjunction ? wholeSpace() : emptySet();
      if (parts.size() == 1) return parts[0];
      return conjunction ? finiteIntersection(std::move(parts)) : finiteUnion(std::move(parts));
    }
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      throw CodeError("clopen set of a quantified sentence: " + toString(*phi));
    default:
      break;
  }
  if (auto atom = asValueAtom(*phi); atom && atom->first == 0)
    return negated ? coCylinder({atom->second}) : cylinder({atom->second});
  if (auto closed = determinedBy(*phi, {}, sig)) return (*closed != negated) ? wholeSpace() : emptySet();
  return sentenceLeaf(negated ? negate(phi) : phi);
}

// --- compilation ---------------------------------------------------------------

constexpr Nat kEagerCheck = 4;

// Checks the alternating shape on the first few indices of every level.
void checkShape(const CodePtr& c, const std::vector<Code::Kind>& ops, std::size_t depth, bool leafCylinder) {
  if (depth == ops.size()) {
    const auto want = leafCylinder ? Code::Kind::Cylinder : Code::Kind::CoCylinder;
    if (c->kind != want)
      throw CodeError(std::string("normal form expects ") + (leafCylinder ? "cylinder" : "co-cylinder") +
                      " leaves, got " + toString(*c));
    if (c->prefix.empty()) throw CodeError("empty prefix in a family");
    return;
  }
  if (c->kind != ops[depth]) throw CodeError("not in alternating normal form: " + toString(*c));
  for (Nat i = 0; i < kEagerCheck; ++i) checkShape(c->family->child(i), ops, depth + 1, leafCylinder);
}

Prefix leafPrefix(const CodePtr& root, std::span<const Nat> indices) {
  CodePtr c = root;
  for (Nat i : indices) c = c->family->child(i);
  if (c->kind != Code::Kind::Cylinder && c->kind != Code::Kind::CoCylinder)
    throw CodeError("normal form leaf is not a (co-)cylinder: " + toString(*c));
  if (c->prefix.empty()) throw CodeError("empty prefix in a family");
  return c->prefix;
}

}  // namespace

FamilyPtr flattenFamily(FamilyPtr inner) { return std::make_shared<FlattenFamily>(std::move(inner)); }
FamilyPtr flattenRowsFamily(FamilyPtr inner) { return std::make_shared<FlattenRowsFamily>(std::move(inner)); }
FamilyPtr wrapRowsFamily(FamilyPtr inner, bool asUnion) {
  return std::make_shared<WrapRowsFamily>(std::move(inner), asUnion);
}

CodePtr clopenSet(const Sentence& phi, const Signature& sig) {
  if (!isQuantifierFree(*phi)) throw CodeError("clopen set of a quantified sentence: " + toString(*phi));
  if (auto constant = constantValue(*phi, sig)) return *constant ? wholeSpace() : emptySet();
  return clopenNnf(phi, false, sig);
}

Sentence compileToSentence(const CodePtr& c, Signature& sig) {
  std::vector<Code::Kind> ops;
  {
    CodePtr cur = c;
    while (isIndexed(*cur)) {
      ops.push_back(cur->kind);
      cur = cur->family->child(0);
    }
  }
  if (ops.empty()) {
    if (c->kind == Code::Kind::Cylinder) return extendsFormula(c->prefix);
    if (c->kind == Code::Kind::CoCylinder) return negate(extendsFormula(c->prefix));
    throw CodeError("compile expects a normal-form code, got " + toString(*c));
  }
  if (ops.size() > 3) throw CodeError("compile supports at most 3 alternations, got " + std::to_string(ops.size()));
  for (std::size_t k = 1; k < ops.size(); ++k)
    if (ops[k] == ops[k - 1]) throw CodeError("not in alternating normal form: " + toString(*c));
  const bool innermostUnion = ops.back() == Code::Kind::IndexedUnion;
  checkShape(c, ops, 0, innermostUnion);

  const std::size_t n = ops.size();
  const std::string tau = sig.freshName("tau");
  const std::string ell = sig.freshName("ell");
  sig.addFunction(ell, n, [c](std::span<const Nat> xs) -> Nat { return leafPrefix(c, xs).size() - 1; });
  sig.addPrefixFunctional(tau, n, [c](std::span<const Nat> xs, std::span<const Nat> prefix) -> Nat {
    const Prefix s = leafPrefix(c, xs);
    if (prefix.size() < s.size()) return 0;
    return std::equal(s.begin(), s.end(), prefix.begin()) ? 1 : 0;
  });

  std::vector<std::string> vars;
  std::vector<TermPtr> args;
  for (std::size_t k = 0; k < n; ++k) {
    vars.push_back(sig.freshName("x"));
    args.push_back(variable(vars.back()));
  }
  auto lenArgs = args;
  args.push_back(apply(ell, lenArgs));
  FormulaPtr body = equal(applyPrefix(tau, args), constant(innermostUnion ? 1 : 0));
  for (std::size_t k = n; k-- > 0;)
    body = ops[k] == Code::Kind::IndexedUnion ? exists(vars[k], body) : forall(vars[k], body);
  return body;
}

CodePtr sentenceToCode(const Sentence& phi, const Signature& sig) {
  switch (phi->kind) {
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      const std::string& var = phi->name;
      const FormulaPtr& body = phi->children[0];
      const auto free = freeVariables(*body);
      if (std::ranges::find(free, var) == free.end()) return sentenceToCode(body, sig);
      auto fam = substitutionFamily(var, body);
      return phi->kind == Formula::Kind::Exists ? indexedUnion(fam) : indexedIntersection(fam);
    }
    case Formula::Kind::Not:
      if (!isQuantifierFree(*phi)) return complement(sentenceToCode(phi->children[0], sig));
      break;
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      if (isQuantifierFree(*phi)) break;
      std::vector<CodePtr> parts;
      for (const auto& c : phi->children) parts.push_back(sentenceToCode(c, sig));
      return phi->kind == Formula::Kind::And ? finiteIntersection(std::move(parts)) : finiteUnion(std::move(parts));
    }
    default:
      break;
  }
  return clopenSet(phi, sig);
}

// --- Delta' pairs --------------------------------------------------------------

DeltaForms deltaPrimeToDelta(const DeltaPrimePair& d) {
  if (d.level <= 3) return {d.unionForm, d.intersectionForm};
  return {indexedUnion(flattenRowsFamily(d.unionForm->family)),
          indexedIntersection(flattenRowsFamily(d.intersectionForm->family))};
}

namespace {

// Brings a code of the given outer kind into outer(inner(...)) shape.
CodePtr promote(const CodePtr& c, Code::Kind outer) {
  const Code::Kind inner =
      outer == Code::Kind::IndexedUnion ? Code::Kind::IndexedIntersection : Code::Kind::IndexedUnion;
  auto wrapOuter = [outer](FamilyPtr f) {
    return outer == Code::Kind::IndexedUnion ? indexedUnion(std::move(f)) : indexedIntersection(std::move(f));
  };
  if (c->kind == outer) {
    if (c->family->child(0)->kind == inner) return c;
    return wrapOuter(wrapRowsFamily(c->family, inner == Code::Kind::IndexedUnion));
  }
  if (c->kind == inner) return wrapOuter(constantFamily(c));
  auto innerCode = inner == Code::Kind::IndexedUnion ? indexedUnion(constantFamily(c))
                                                    : indexedIntersection(constantFamily(c));
  return wrapOuter(constantFamily(innerCode));
}

void checkInnerLevel(const CodePtr& form, unsigned m) {
  const unsigned limit = m <= 3 ? 0 : m - 3;
  for (Nat i = 0; i < kEagerCheck; ++i)
    for (Nat j = 0; j < kEagerCheck; ++j) {
      const CodePtr leaf = form->family->child(i)->family->child(j);
      const BorelClass cls = syntacticClass(*leaf);
      if (cls.level > limit)
        throw CodeError("inner code above level " + std::to_string(limit) + ": " + toString(*leaf));
    }
}

}  // namespace

DeltaPrimePair deltaToDeltaPrime(const CodePtr& sForm, const CodePtr& pForm, unsigned m) {
  if (m < 2) throw CodeError("Delta' level must be at least 2");
  DeltaPrimePair out{promote(sForm, Code::Kind::IndexedUnion), promote(pForm, Code::Kind::IndexedIntersection), m};
  checkInnerLevel(out.unionForm, m);
  checkInnerLevel(out.intersectionForm, m);
  return out;
}

}  // namespace lopsided
