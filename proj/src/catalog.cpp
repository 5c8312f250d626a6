#include <algorithm>
#include <bit>

#include "families.hpp"
#include "lopsided/error.hpp"

namespace lopsided {

namespace {

// Zeros among positions < n.
Nat zerosBelow(const Point& p, Nat n) {
  const auto& pre = p.preamble();
  const auto& per = p.period();
  if (n <= pre.size()) return static_cast<Nat>(std::count(pre.begin(), pre.begin() + n, Nat{0}));
  Nat count = static_cast<Nat>(std::count(pre.begin(), pre.end(), Nat{0}));
  const Nat rest = n - pre.size();
  const Nat perZeros = static_cast<Nat>(std::count(per.begin(), per.end(), Nat{0}));
  count += (rest / per.size()) * perZeros;
  count += static_cast<Nat>(std::count(per.begin(), per.begin() + static_cast<std::ptrdiff_t>(rest % per.size()), Nat{0}));
  return count;
}

bool periodHasZero(const Point& p) { return std::ranges::find(p.period(), Nat{0}) != p.period().end(); }

// Total number of zeros, nullopt when infinite.
std::optional<Nat> totalZeros(const Point& p) {
  if (periodHasZero(p)) return std::nullopt;
  return zerosBelow(p, p.preamble().size());
}

bool totalAtLeast(const Point& p, Nat k) {
  auto z = totalZeros(p);
  return !z || *z >= k;
}

bool noZerosFrom(const Point& p, Nat n) {
  if (periodHasZero(p)) return false;
  for (std::size_t i = n; i < p.preamble().size(); ++i)
    if (p.preamble()[i] == 0) return false;
  return true;
}

bool someNonzeroFrom(const Point& p, Nat n) {
  for (Nat v : p.period())
    if (v != 0) return true;
  for (std::size_t i = n; i < p.preamble().size(); ++i)
    if (p.preamble()[i] != 0) return true;
  return false;
}

bool allZeroFrom(const Point& p, Nat n) {
  if (p.period() != Prefix{0}) return false;
  for (std::size_t i = n; i < p.preamble().size(); ++i)
    if (p.preamble()[i] != 0) return false;
  return true;
}

Nat countZeros(std::span<const Nat> s) { return static_cast<Nat>(std::ranges::count(s, Nat{0})); }

Nat param(const std::map<std::string, Nat>& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) throw CodeError("template parameter :" + key + " missing");
  return it->second;
}

TermPtr zerosBelowTerm(Nat n) { return applyPrefix("zeros-below", {constant(n), constant(n)}); }

FormulaPtr le(TermPtr a, TermPtr b) { return predicate("le", {std::move(a), std::move(b)}); }

FormulaPtr nonzeroAt(Nat i) { return negate(valueAt(i, 0)); }

using detail::ExactHook;
using detail::TemplateFamily;

FamilyPtr tmpl(std::string name, std::map<std::string, Nat> params, std::function<CodePtr(Nat)> rule,
               ExactHook unionHook = {}, ExactHook intersectionHook = {}) {
  return std::make_shared<TemplateFamily>(std::move(name), std::move(params), std::move(rule), std::move(unionHook),
                                          std::move(intersectionHook));
}

ExactHook pointHook(std::function<bool(const Point&)> fn) {
  return [fn = std::move(fn)](const Point& p, std::size_t, const Signature&) -> std::optional<bool> { return fn(p); };
}

// Co-cylinder row: child(t) excludes the t-th finite sequence when it is bad,
// otherwise a fixed bad sequence.
std::function<CodePtr(Nat)> coCylinderRow(std::function<bool(const Prefix&)> bad, Prefix fallback) {
  return [bad = std::move(bad), fallback = std::move(fallback)](Nat t) {
    Prefix s = sequenceOfIndex(t);
    return coCylinder(bad(s) ? std::move(s) : fallback);
  };
}

std::function<CodePtr(Nat)> cylinderRow(std::function<bool(const Prefix&)> good, Prefix fallback) {
  return [good = std::move(good), fallback = std::move(fallback)](Nat t) {
    Prefix s = sequenceOfIndex(t);
    return cylinder(good(s) ? std::move(s) : fallback);
  };
}

Prefix repeated(Nat value, Nat count) { return Prefix(count, value); }

Prefix concat(Prefix a, const Prefix& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

FamilyPtr rowTemplate(const std::string& name, const std::map<std::string, Nat>& params);

FamilyPtr outerTemplate(const std::string& name, const std::map<std::string, Nat>& params, bool unionRows,
                        const std::string& indexKey) {
  return tmpl(name, params, [name, params, unionRows, indexKey](Nat i) {
    auto rowParams = params;
    rowParams[indexKey] = i;
    FamilyPtr row = rowTemplate(name + "-row", rowParams);
    return unionRows ? indexedUnion(std::move(row)) : indexedIntersection(std::move(row));
  });
}

FamilyPtr rowTemplate(const std::string& name, const std::map<std::string, Nat>& params) {
  if (name == "exactly-zeros-d-row" || name == "at-most-zeros-d-row") {
    const bool exactly = name.starts_with("exactly");
    const Nat k = param(params, "k");
    const Nat n = param(params, "n");
    auto countOk = [exactly, k](Nat z) { return exactly ? z == k : z <= k; };
    return tmpl(
        name, params,
        [exactly, k, n](Nat j) {
          FormulaPtr count = exactly ? equal(zerosBelowTerm(n), constant(k)) : le(zerosBelowTerm(n), constant(k));
          return sentenceLeaf(conj({count, nonzeroAt(n + j)}));
        },
        pointHook([countOk, n](const Point& p) { return countOk(zerosBelow(p, n)) && someNonzeroFrom(p, n); }),
        pointHook([countOk, n](const Point& p) { return countOk(zerosBelow(p, n)) && noZerosFrom(p, n); }));
  }
  if (name == "exactly-zeros-e-row") {
    const Nat k = param(params, "k");
    const Nat i = param(params, "i");
    return tmpl(
        name, params,
        [k, i](Nat j) { return sentenceLeaf(conj({le(zerosBelowTerm(i), constant(k)), le(constant(k), zerosBelowTerm(j))})); },
        pointHook([k, i](const Point& p) { return zerosBelow(p, i) <= k && totalAtLeast(p, k); }),
        pointHook([k, i](const Point& p) { return zerosBelow(p, i) <= k && k == 0; }));
  }
  if (name == "exactly-zeros-sigma2-row" || name == "at-most-zeros-sigma2-row") {
    const bool exactly = name.starts_with("exactly");
    const Nat k = param(params, "k");
    const Nat n = param(params, "n");
    auto countOk = [exactly, k](Nat z) { return exactly ? z == k : z <= k; };
    auto bad = [countOk, n](const Prefix& s) {
      return (s.size() == n && !countOk(countZeros(s))) || (s.size() > n && s.back() == 0);
    };
    return tmpl(name, params, coCylinderRow(bad, repeated(0, n + 1)), {},
                pointHook([countOk, n](const Point& p) { return countOk(zerosBelow(p, n)) && noZerosFrom(p, n); }));
  }
  if (name == "eventually-zero-sigma2-row") {
    const Nat n = param(params, "n");
    auto bad = [n](const Prefix& s) { return s.size() > n && s.back() != 0; };
    return tmpl(name, params, coCylinderRow(bad, concat(repeated(0, n), {1})), {},
                pointHook([n](const Point& p) { return allZeroFrom(p, n); }));
  }
  if (name == "exactly-zeros-pi2-row") {
    const Nat k = param(params, "k");
    const Nat i = param(params, "i");
    auto good = [k, i](const Prefix& s) {
      return s.size() >= i && countZeros(std::span(s).first(i)) <= k && countZeros(s) >= k;
    };
    return tmpl(name, params, cylinderRow(good, concat(repeated(1, i), repeated(0, k))),
                pointHook([k, i](const Point& p) { return zerosBelow(p, i) <= k && totalAtLeast(p, k); }));
  }
  if (name == "at-most-zeros-pi2-row") {
    const Nat k = param(params, "k");
    const Nat i = param(params, "i");
    auto good = [k, i](const Prefix& s) { return s.size() >= i && countZeros(std::span(s).first(i)) <= k; };
    return tmpl(name, params, cylinderRow(good, repeated(1, i)),
                pointHook([k, i](const Point& p) { return zerosBelow(p, i) <= k; }));
  }
  if (name == "infinitely-many-zeros-pi2-row") {
    const Nat i = param(params, "i");
    auto good = [i](const Prefix& s) { return countZeros(s) >= i; };
    return tmpl(name, params, cylinderRow(good, repeated(0, i)),
                pointHook([i](const Point& p) { return totalAtLeast(p, i); }));
  }
  throw CodeError("unknown template '" + name + "'");
}

}  // namespace

namespace detail {

std::vector<std::string> catalogTemplateNames() {
  return {"exactly-zeros-d",          "exactly-zeros-d-row",         "exactly-zeros-e",
          "exactly-zeros-e-row",      "at-most-zeros-d",             "at-most-zeros-d-row",
          "at-most-zeros-e",          "exactly-zeros-sigma2",        "exactly-zeros-sigma2-row",
          "exactly-zeros-pi2",        "exactly-zeros-pi2-row",       "at-most-zeros-sigma2",
          "at-most-zeros-sigma2-row", "at-most-zeros-pi2",           "at-most-zeros-pi2-row",
          "eventually-zero-sigma2",   "eventually-zero-sigma2-row",  "infinitely-many-zeros-pi2",
          "infinitely-many-zeros-pi2-row"};
}

FamilyPtr catalogTemplate(const std::string& name, const std::map<std::string, Nat>& params) {
  if (name.ends_with("-row")) return rowTemplate(name, params);
  if (name == "exactly-zeros-d" || name == "at-most-zeros-d" || name == "exactly-zeros-sigma2" ||
      name == "at-most-zeros-sigma2" || name == "eventually-zero-sigma2")
    return outerTemplate(name, params, false, "n");
  if (name == "exactly-zeros-e" || name == "exactly-zeros-pi2" || name == "at-most-zeros-pi2" ||
      name == "infinitely-many-zeros-pi2")
    return outerTemplate(name, params, true, "i");
  if (name == "at-most-zeros-e") {
    const Nat k = param(params, "k");
    return tmpl(name, params, [k](Nat i) {
      return indexedUnion(constantFamily(sentenceLeaf(le(zerosBelowTerm(i), constant(k)))));
    });
  }
  throw CodeError("unknown template '" + name + "'");
}

}  // namespace detail

Prefix sequenceOfIndex(Nat t) {
  Prefix out;
  while (t != 0) {
    const auto head = static_cast<Nat>(std::countr_zero(t));
    out.push_back(head);
    t = ((t >> head) - 1) / 2;
  }
  return out;
}

CatalogSet catalogSet(const std::string& name, Nat k, Prefix prefix) {
  static const std::pair<const char*, CatalogId> names[] = {
      {"cylinder", CatalogId::Cylinder},
      {"first-value-equals", CatalogId::FirstValueEquals},
      {"eventually-zero", CatalogId::EventuallyZero},
      {"infinitely-many-zeros", CatalogId::InfinitelyManyZeros},
      {"exactly-zeros", CatalogId::ExactlyZeros},
      {"at-most-zeros", CatalogId::AtMostZeros},
      {"eventually-constant", CatalogId::EventuallyConstant},
      {"equal-first-two", CatalogId::EqualFirstTwo},
  };
  for (const auto& [n, id] : names)
    if (name == n) return CatalogSet{id, k, std::move(prefix)};
  throw CodeError("unknown catalog set '" + name + "'");
}

std::string catalogName(CatalogId id) {
  switch (id) {
    case CatalogId::Cylinder:
      return "cylinder";
    case CatalogId::FirstValueEquals:
      return "first-value-equals";
    case CatalogId::EventuallyZero:
      return "eventually-zero";
    case CatalogId::InfinitelyManyZeros:
      return "infinitely-many-zeros";
    case CatalogId::ExactlyZeros:
      return "exactly-zeros";
    case CatalogId::AtMostZeros:
      return "at-most-zeros";
    case CatalogId::EventuallyConstant:
      return "eventually-constant";
    case CatalogId::EqualFirstTwo:
      return "equal-first-two";
  }
  return "?";
}

std::string toString(const CatalogSet& set) {
  std::string out = "(catalog " + catalogName(set.id);
  switch (set.id) {
    case CatalogId::FirstValueEquals:
      out += " :c " + std::to_string(set.k);
      break;
    case CatalogId::ExactlyZeros:
    case CatalogId::AtMostZeros:
      out += " :k " + std::to_string(set.k);
      break;
    case CatalogId::Cylinder: {
      out += " :prefix (";
      for (std::size_t i = 0; i < set.prefix.size(); ++i) out += (i ? " " : "") + std::to_string(set.prefix[i]);
      out += ")";
      break;
    }
    default:
      break;
  }
  return out + ")";
}

bool isDeltaTwo(const CatalogSet& set) {
  switch (set.id) {
    case CatalogId::EventuallyZero:
    case CatalogId::InfinitelyManyZeros:
    case CatalogId::EventuallyConstant:
      return false;
    default:
      return true;
  }
}

bool exactOracle(const CatalogSet& set, const Point& p) {
  switch (set.id) {
    case CatalogId::Cylinder:
      return p.extends(set.prefix);
    case CatalogId::FirstValueEquals:
      return p.at(0) == set.k;
    case CatalogId::EventuallyZero:
      return p.period() == Prefix{0};
    case CatalogId::InfinitelyManyZeros:
      return periodHasZero(p);
    case CatalogId::ExactlyZeros: {
      auto z = totalZeros(p);
      return z && *z == set.k;
    }
    case CatalogId::AtMostZeros: {
      auto z = totalZeros(p);
      return z && *z <= set.k;
    }
    case CatalogId::EventuallyConstant:
      return p.period().size() == 1;
    case CatalogId::EqualFirstTwo:
      return p.at(0) == p.at(1);
  }
  return false;
}

namespace {

DeltaPrimePair constantPair(CodePtr leaf) {
  auto u = indexedUnion(constantFamily(indexedIntersection(constantFamily(leaf))));
  auto i = indexedIntersection(constantFamily(indexedUnion(constantFamily(leaf))));
  return {std::move(u), std::move(i), 2};
}

}  // namespace

DeltaPrimePair catalogPair(const CatalogSet& set) {
  switch (set.id) {
    case CatalogId::Cylinder:
      return constantPair(cylinder(set.prefix));
    case CatalogId::FirstValueEquals:
      return constantPair(cylinder({set.k}));
    case CatalogId::EqualFirstTwo:
      return constantPair(sentenceLeaf(equal(readF(constant(0)), readF(constant(1)))));
    case CatalogId::ExactlyZeros:
      return {indexedUnion(templateFamily("exactly-zeros-d", {{"k", set.k}})),
              indexedIntersection(templateFamily("exactly-zeros-e", {{"k", set.k}})), 2};
    case CatalogId::AtMostZeros:
      return {indexedUnion(templateFamily("at-most-zeros-d", {{"k", set.k}})),
              indexedIntersection(templateFamily("at-most-zeros-e", {{"k", set.k}})), 2};
    default:
      throw CodeError(catalogName(set.id) + " is not Delta^0_2");
  }
}

std::optional<CodePtr> cylinderSigmaTwoForm(const CatalogSet& set) {
  switch (set.id) {
    case CatalogId::ExactlyZeros:
      return indexedUnion(templateFamily("exactly-zeros-sigma2", {{"k", set.k}}));
    case CatalogId::AtMostZeros:
      return indexedUnion(templateFamily("at-most-zeros-sigma2", {{"k", set.k}}));
    case CatalogId::EventuallyZero:
      return indexedUnion(templateFamily("eventually-zero-sigma2", {}));
    default:
      return std::nullopt;
  }
}

std::optional<CodePtr> cylinderPiTwoForm(const CatalogSet& set) {
  switch (set.id) {
    case CatalogId::ExactlyZeros:
      return indexedIntersection(templateFamily("exactly-zeros-pi2", {{"k", set.k}}));
    case CatalogId::AtMostZeros:
      return indexedIntersection(templateFamily("at-most-zeros-pi2", {{"k", set.k}}));
    case CatalogId::InfinitelyManyZeros:
      return indexedIntersection(templateFamily("infinitely-many-zeros-pi2", {}));
    default:
      return std::nullopt;
  }
}

CodePtr innerD(const DeltaPrimePair& d, Nat i, Nat j) {
  return d.unionForm->family->child(i)->family->child(j);
}

CodePtr innerE(const DeltaPrimePair& d, Nat i, Nat j) {
  return d.intersectionForm->family->child(i)->family->child(j);
}

}  // namespace lopsided
