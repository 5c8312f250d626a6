#include <algorithm>
#include <map>
#include <set>

#include "lopsided/error.hpp"
#include "lopsided/logic.hpp"

namespace lopsided {

namespace {

constexpr Nat kMaxPrefixRead = 10'000'000;

using Env = std::vector<std::pair<std::string, Nat>>;

Nat lookup(const Env& env, const std::string& name) {
  for (auto it = env.rbegin(); it != env.rend(); ++it)
    if (it->first == name) return it->second;
  throw Error("logic", "free variable '" + name + "' in sentence");
}

// Reads f from a point, remembering the largest index touched.
struct PointReader {
  const Point& point;
  std::optional<Nat> maxRead;

  Nat read(Nat i) {
    note(i);
    return point.at(i);
  }
  Prefix readThrough(Nat m) {
    if (m >= kMaxPrefixRead) throw Error("logic", "prefix functional length argument too large");
    note(m);
    return point.prefix(m + 1);
  }
  void note(Nat i) { maxRead = std::max(maxRead.value_or(0), i); }
};

// Reads f from a finite prefix; any read past its end aborts evaluation.
// Reads past the prefix are flagged rather than thrown: undetermined
// sentences are common in incremental use, and the value read is ignored.
struct PrefixReader {
  std::span<const Nat> s;
  mutable bool missed = false;

  Nat read(Nat i) const {
    if (i >= s.size()) {
      missed = true;
      return 0;
    }
    return s[i];
  }
  Prefix readThrough(Nat m) const {
    if (m >= s.size()) {
      missed = true;
      return {s.begin(), s.end()};
    }
    return {s.begin(), s.begin() + static_cast<std::ptrdiff_t>(m + 1)};
  }
};

// Quantifier-free evaluation. Every subterm and subformula is evaluated (no
// short-circuit), so the recorded read set is the full one.
template <class Reader>
struct QfEvaluator {
  Reader& reader;
  const Signature& sig;

  Nat term(const Term& t, const Env& env) {
    switch (t.kind) {
      case Term::Kind::Constant:
        return t.value;
      case Term::Kind::Variable:
        return lookup(env, t.name);
      case Term::Kind::Read:
        return reader.read(term(*t.args[0], env));
      case Term::Kind::Function: {
        const auto sym = sig.function(t.name);
        if (sym.arity != t.args.size()) throw SignatureError("arity mismatch for '" + t.name + "'");
        std::vector<Nat> args;
        for (const auto& a : t.args) args.push_back(term(*a, env));
        return sym.fn(args);
      }
      case Term::Kind::PrefixFunctional: {
        const auto sym = sig.prefixFunctional(t.name);
        if (sym.arity + 1 != t.args.size()) throw SignatureError("arity mismatch for '" + t.name + "'");
        std::vector<Nat> args;
        for (const auto& a : t.args) args.push_back(term(*a, env));
        const Nat m = args.back();
        args.pop_back();
        const Prefix prefix = reader.readThrough(m);
        return sym.fn(args, prefix);
      }
    }
    return 0;
  }

  bool atom(const Formula& phi, const Env& env) {
    if (phi.kind == Formula::Kind::Equal) {
      const Nat a = term(*phi.terms[0], env);
      const Nat b = term(*phi.terms[1], env);
      return a == b;
    }
    const auto sym = sig.predicate(phi.name);
    if (sym.arity != phi.terms.size()) throw SignatureError("arity mismatch for '" + phi.name + "'");
    std::vector<Nat> args;
    for (const auto& a : phi.terms) args.push_back(term(*a, env));
    return sym.fn(args);
  }

  bool formula(const Formula& phi, const Env& env) {
    switch (phi.kind) {
      case Formula::Kind::Equal:
      case Formula::Kind::Predicate:
        return atom(phi, env);
      case Formula::Kind::Not:
        return !formula(*phi.children[0], env);
      case Formula::Kind::And: {
        bool all = true;
        for (const auto& c : phi.children) all = formula(*c, env) && all;
        return all;
      }
      case Formula::Kind::Or: {
        bool any = false;
        for (const auto& c : phi.children) any = formula(*c, env) || any;
        return any;
      }
      case Formula::Kind::Exists:
      case Formula::Kind::Forall:
        throw Error("logic", "quantifier in a quantifier-free context");
    }
    return false;
  }
};

// ---------------------------------------------------------------------------
// Periodic fragment. Inside a quantified formula, every variable it binds must
// occur only as f(v) ("position") or as a whole side of an equality
// ("value"); every other term mentioning a bound variable disqualifies it.
// Positions holding equal values are indistinguishable, and value variables
// only matter up to equality with the finite set R of relevant values, so
// quantifying over finitely many representatives is exact.

enum class VarRole { Unused, Position, Value };

struct FragmentScan {
  std::set<std::string> bound;
  std::map<std::string, VarRole> roles;
  std::vector<const Term*> closedSides;
  bool ok = true;

  bool mentionsBound(const Term& t) const {
    if (t.kind == Term::Kind::Variable) return bound.contains(t.name);
    return std::any_of(t.args.begin(), t.args.end(), [&](const TermPtr& a) { return mentionsBound(*a); });
  }

  void mark(const std::string& var, VarRole role) {
    auto& r = roles[var];
    if (r == VarRole::Unused) r = role;
    else if (r != role) ok = false;
  }

  void side(const Term& t) {
    if (t.kind == Term::Kind::Variable && bound.contains(t.name)) {
      mark(t.name, VarRole::Value);
    } else if (t.kind == Term::Kind::Read && t.args[0]->kind == Term::Kind::Variable &&
               bound.contains(t.args[0]->name)) {
      mark(t.args[0]->name, VarRole::Position);
    } else if (!mentionsBound(t)) {
      closedSides.push_back(&t);
    } else {
      ok = false;
    }
  }

  void collectBound(const Formula& phi) {
    if (phi.kind == Formula::Kind::Exists || phi.kind == Formula::Kind::Forall) bound.insert(phi.name);
    for (const auto& c : phi.children) collectBound(*c);
  }

  void scan(const Formula& phi) {
    if (!ok) return;
    switch (phi.kind) {
      case Formula::Kind::Equal:
        side(*phi.terms[0]);
        side(*phi.terms[1]);
        return;
      case Formula::Kind::Predicate:
        for (const auto& t : phi.terms)
          if (mentionsBound(*t)) ok = false;
        return;
      default:
        for (const auto& c : phi.children) scan(*c);
    }
  }
};

struct RepresentativeEvaluator {
  QfEvaluator<PointReader>& qf;
  std::map<std::string, std::vector<Nat>> reps;

  bool eval(const Formula& phi, Env& env) {
    switch (phi.kind) {
      case Formula::Kind::Equal:
      case Formula::Kind::Predicate:
        return qf.atom(phi, env);
      case Formula::Kind::Not:
        return !eval(*phi.children[0], env);
      case Formula::Kind::And:
        return std::all_of(phi.children.begin(), phi.children.end(), [&](const FormulaPtr& c) { return eval(*c, env); });
      case Formula::Kind::Or:
        return std::any_of(phi.children.begin(), phi.children.end(), [&](const FormulaPtr& c) { return eval(*c, env); });
      case Formula::Kind::Exists:
      case Formula::Kind::Forall: {
        const bool wantAny = phi.kind == Formula::Kind::Exists;
        for (Nat v : reps.at(phi.name)) {
          env.emplace_back(phi.name, v);
          const bool b = eval(*phi.children[0], env);
          env.pop_back();
          if (b == wantAny) return wantAny;
        }
        return !wantAny;
      }
    }
    return false;
  }
};

std::optional<bool> decidePeriodic(const Formula& phi, Env& env, const Point& p, const Signature& sig) {
  FragmentScan scan;
  scan.collectBound(phi);
  for (const auto& [name, value] : env) scan.bound.erase(name);
  scan.scan(phi);
  if (!scan.ok) return std::nullopt;

  PointReader reader{p, std::nullopt};
  QfEvaluator<PointReader> qf{reader, sig};

  std::set<Nat> relevant;
  for (Nat v : p.range()) relevant.insert(v);
  for (const Term* t : scan.closedSides) relevant.insert(qf.term(*t, env));

  std::vector<Nat> positions;
  {
    std::set<Nat> seen;
    const std::size_t horizon = p.tailStart() + p.period().size();
    for (std::size_t i = 0; i < horizon; ++i)
      if (seen.insert(p.at(i)).second) positions.push_back(i);
  }
  std::size_t valueVars = 0;
  for (const auto& [name, role] : scan.roles)
    if (role == VarRole::Value) ++valueVars;
  std::vector<Nat> values(relevant.begin(), relevant.end());
  const Nat fresh = values.empty() ? 0 : values.back() + 1;
  for (std::size_t k = 0; k < valueVars; ++k) values.push_back(fresh + k);

  RepresentativeEvaluator rep{qf, {}};
  for (const auto& name : scan.bound) {
    const auto it = scan.roles.find(name);
    const VarRole role = it == scan.roles.end() ? VarRole::Unused : it->second;
    if (role == VarRole::Position) rep.reps[name] = positions;
    else if (role == VarRole::Value) rep.reps[name] = values;
    else rep.reps[name] = {0};
  }
  return rep.eval(phi, env);
}

// ---------------------------------------------------------------------------

struct ThreeValued {
  const Point& point;
  std::size_t fuel;
  const Signature& sig;
  PointReader reader{point, std::nullopt};
  QfEvaluator<PointReader> qf{reader, sig};

  TruthValue eval(const Formula& phi, Env& env) {
    switch (phi.kind) {
      case Formula::Kind::Equal:
      case Formula::Kind::Predicate:
        return fromBool(qf.atom(phi, env));
      case Formula::Kind::Not: {
        const TruthValue v = eval(*phi.children[0], env);
        if (v == TruthValue::Unknown) return v;
        return v == TruthValue::True ? TruthValue::False : TruthValue::True;
      }
      case Formula::Kind::And:
      case Formula::Kind::Or: {
        const TruthValue dominant = phi.kind == Formula::Kind::And ? TruthValue::False : TruthValue::True;
        bool unknown = false;
        for (const auto& c : phi.children) {
          const TruthValue v = eval(*c, env);
          if (v == dominant) return dominant;
          unknown = unknown || v == TruthValue::Unknown;
        }
        if (unknown) return TruthValue::Unknown;
        return dominant == TruthValue::False ? TruthValue::True : TruthValue::False;
      }
      case Formula::Kind::Exists:
      case Formula::Kind::Forall: {
        if (auto exact = decidePeriodic(phi, env, point, sig)) return fromBool(*exact);
        // A bounded search can only find a witness (exists) or a
        // counterexample (forall).
        const TruthValue decisive = phi.kind == Formula::Kind::Exists ? TruthValue::True : TruthValue::False;
        for (std::size_t i = 0; i < fuel; ++i) {
          env.emplace_back(phi.name, static_cast<Nat>(i));
          const TruthValue v = eval(*phi.children[0], env);
          env.pop_back();
          if (v == decisive) return decisive;
        }
        return TruthValue::Unknown;
      }
    }
    return TruthValue::Unknown;
  }
};

void requireQuantifierFree(const Formula& phi) {
  if (!isQuantifierFree(phi)) throw Error("logic", "expected a quantifier-free sentence: " + toString(phi));
}

}  // namespace

TruthValue evaluate(const Formula& phi, const Point& p, std::size_t fuel, const Signature& sig) {
  ThreeValued ev{p, fuel, sig};
  Env env;
  return ev.eval(phi, env);
}

bool truthBit(const Formula& phi, const Point& p, std::size_t fuel, const Signature& sig) {
  const TruthValue v = evaluate(phi, p, fuel, sig);
  if (v == TruthValue::Unknown)
    throw UndecidedError("logic", "undecided at fuel " + std::to_string(fuel) + ": " + toString(phi) + " on " +
                                      p.toString());
  return v == TruthValue::True;
}

std::optional<bool> determinedBy(const Formula& phi, std::span<const Nat> s, const Signature& sig) {
  requireQuantifierFree(phi);
  PrefixReader reader{s};
  QfEvaluator<PrefixReader> qf{reader, sig};
  const bool value = qf.formula(phi, {});
  if (reader.missed) return std::nullopt;
  return value;
}

Nat determinationBound(const Formula& phi, const Point& p, const Signature& sig) {
  requireQuantifierFree(phi);
  PointReader reader{p, std::nullopt};
  QfEvaluator<PointReader> qf{reader, sig};
  qf.formula(phi, {});
  return reader.maxRead.value_or(0);
}

}  // namespace lopsided
