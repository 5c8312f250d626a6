#include <algorithm>
#include <set>
#include <sstream>

#include "lopsided/logic.hpp"

namespace lopsided {

TermPtr constant(Nat n) { return std::make_shared<const Term>(Term{Term::Kind::Constant, n, {}, {}}); }

TermPtr variable(std::string name) {
  return std::make_shared<const Term>(Term{Term::Kind::Variable, 0, std::move(name), {}});
}

TermPtr apply(std::string fn, std::vector<TermPtr> args) {
  return std::make_shared<const Term>(Term{Term::Kind::Function, 0, std::move(fn), std::move(args)});
}

TermPtr readF(TermPtr index) {
  return std::make_shared<const Term>(Term{Term::Kind::Read, 0, {}, {std::move(index)}});
}

TermPtr applyPrefix(std::string fn, std::vector<TermPtr> args) {
  return std::make_shared<const Term>(Term{Term::Kind::PrefixFunctional, 0, std::move(fn), std::move(args)});
}

FormulaPtr equal(TermPtr lhs, TermPtr rhs) {
  return std::make_shared<const Formula>(Formula{Formula::Kind::Equal, {}, {std::move(lhs), std::move(rhs)}, {}});
}

FormulaPtr predicate(std::string name, std::vector<TermPtr> args) {
  return std::make_shared<const Formula>(Formula{Formula::Kind::Predicate, std::move(name), std::move(args), {}});
}

FormulaPtr negate(FormulaPtr body) {
  return std::make_shared<const Formula>(Formula{Formula::Kind::Not, {}, {}, {std::move(body)}});
}

FormulaPtr conj(std::vector<FormulaPtr> parts) {
  return std::make_shared<const Formula>(Formula{Formula::Kind::And, {}, {}, std::move(parts)});
}

FormulaPtr disj(std::vector<FormulaPtr> parts) {
  return std::make_shared<const Formula>(Formula{Formula::Kind::Or, {}, {}, std::move(parts)});
}

FormulaPtr exists(std::string var, FormulaPtr body) {
  return std::make_shared<const Formula>(Formula{Formula::Kind::Exists, std::move(var), {}, {std::move(body)}});
}

FormulaPtr forall(std::string var, FormulaPtr body) {
  return std::make_shared<const Formula>(Formula{Formula::Kind::Forall, std::move(var), {}, {std::move(body)}});
}

FormulaPtr verum() { return conj({}); }
FormulaPtr falsum() { return disj({}); }

FormulaPtr valueAt(Nat index, Nat value) { return equal(readF(constant(index)), constant(value)); }

FormulaPtr extendsFormula(std::span<const Nat> s) {
  if (s.size() == 1) return valueAt(0, s[0]);
  std::vector<FormulaPtr> parts;
  for (std::size_t k = 0; k < s.size(); ++k) parts.push_back(valueAt(k, s[k]));
  return conj(std::move(parts));
}

namespace {

void collectFree(const Term& t, const std::set<std::string>& bound, std::set<std::string>& out) {
  if (t.kind == Term::Kind::Variable) {
    if (!bound.contains(t.name)) out.insert(t.name);
    return;
  }
  for (const auto& a : t.args) collectFree(*a, bound, out);
}

void collectFree(const Formula& phi, std::set<std::string>& bound, std::set<std::string>& out) {
  for (const auto& t : phi.terms) collectFree(*t, bound, out);
  if (phi.kind == Formula::Kind::Exists || phi.kind == Formula::Kind::Forall) {
    const bool wasBound = bound.contains(phi.name);
    bound.insert(phi.name);
    collectFree(*phi.children[0], bound, out);
    if (!wasBound) bound.erase(phi.name);
    return;
  }
  for (const auto& c : phi.children) collectFree(*c, bound, out);
}

TermPtr substituteTerm(const TermPtr& t, const std::string& var, Nat n) {
  if (t->kind == Term::Kind::Variable) return t->name == var ? constant(n) : t;
  if (t->args.empty()) return t;
  std::vector<TermPtr> args;
  args.reserve(t->args.size());
  for (const auto& a : t->args) args.push_back(substituteTerm(a, var, n));
  return std::make_shared<const Term>(Term{t->kind, t->value, t->name, std::move(args)});
}

void print(std::ostream& out, const Term& t) {
  switch (t.kind) {
    case Term::Kind::Constant:
      out << t.value;
      return;
    case Term::Kind::Variable:
      out << t.name;
      return;
    case Term::Kind::Read:
      out << "(f ";
      print(out, *t.args[0]);
      out << ')';
      return;
    case Term::Kind::Function:
    case Term::Kind::PrefixFunctional:
      out << (t.kind == Term::Kind::Function ? "(:fun " : "(:pfun ") << t.name;
      for (const auto& a : t.args) {
        out << ' ';
        print(out, *a);
      }
      out << ')';
      return;
  }
}

void print(std::ostream& out, const Formula& phi) {
  switch (phi.kind) {
    case Formula::Kind::Equal:
      out << "(= ";
      print(out, *phi.terms[0]);
      out << ' ';
      print(out, *phi.terms[1]);
      out << ')';
      return;
    case Formula::Kind::Predicate:
      out << "(:pred " << phi.name;
      for (const auto& t : phi.terms) {
        out << ' ';
        print(out, *t);
      }
      out << ')';
      return;
    case Formula::Kind::Not:
      out << "(not ";
      print(out, *phi.children[0]);
      out << ')';
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
      out << (phi.kind == Formula::Kind::And ? "(and" : "(or");
      for (const auto& c : phi.children) {
        out << ' ';
        print(out, *c);
      }
      out << ')';
      return;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      out << (phi.kind == Formula::Kind::Exists ? "(exists " : "(forall ") << phi.name << ' ';
      print(out, *phi.children[0]);
      out << ')';
      return;
  }
}

}  // namespace

bool isQuantifierFree(const Formula& phi) {
  if (phi.kind == Formula::Kind::Exists || phi.kind == Formula::Kind::Forall) return false;
  return std::all_of(phi.children.begin(), phi.children.end(), [](const FormulaPtr& c) { return isQuantifierFree(*c); });
}

std::vector<std::string> freeVariables(const Formula& phi) {
  std::set<std::string> bound, out;
  collectFree(phi, bound, out);
  return {out.begin(), out.end()};
}

bool isSentence(const Formula& phi) { return freeVariables(phi).empty(); }

bool sameTerm(const Term& a, const Term& b) {
  if (a.kind != b.kind || a.value != b.value || a.name != b.name || a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!sameTerm(*a.args[i], *b.args[i])) return false;
  return true;
}

bool sameFormula(const Formula& a, const Formula& b) {
  if (&a == &b) return true;
  if (a.kind != b.kind || a.name != b.name || a.terms.size() != b.terms.size() ||
      a.children.size() != b.children.size())
    return false;
  for (std::size_t i = 0; i < a.terms.size(); ++i)
    if (!sameTerm(*a.terms[i], *b.terms[i])) return false;
  for (std::size_t i = 0; i < a.children.size(); ++i)
    if (!sameFormula(*a.children[i], *b.children[i])) return false;
  return true;
}

FormulaPtr substitute(const FormulaPtr& phi, const std::string& var, Nat n) {
  if ((phi->kind == Formula::Kind::Exists || phi->kind == Formula::Kind::Forall) && phi->name == var) return phi;
  std::vector<TermPtr> terms;
  for (const auto& t : phi->terms) terms.push_back(substituteTerm(t, var, n));
  std::vector<FormulaPtr> children;
  for (const auto& c : phi->children) children.push_back(substitute(c, var, n));
  return std::make_shared<const Formula>(Formula{phi->kind, phi->name, std::move(terms), std::move(children)});
}

std::string toString(const Term& t) {
  std::ostringstream out;
  print(out, t);
  return out.str();
}

std::string toString(const Formula& phi) {
  std::ostringstream out;
  print(out, phi);
  return out.str();
}

std::optional<std::pair<Nat, Nat>> asValueAtom(const Formula& phi) {
  if (phi.kind != Formula::Kind::Equal) return std::nullopt;
  const Term& lhs = *phi.terms[0];
  const Term& rhs = *phi.terms[1];
  if (lhs.kind != Term::Kind::Read || rhs.kind != Term::Kind::Constant) return std::nullopt;
  if (lhs.args[0]->kind != Term::Kind::Constant) return std::nullopt;
  return std::pair{lhs.args[0]->value, rhs.value};
}

std::string toString(TruthValue v) {
  switch (v) {
    case TruthValue::True:
      return "True";
    case TruthValue::False:
      return "False";
    case TruthValue::Unknown:
      return "Unknown";
  }
  return "Unknown";
}

}  // namespace lopsided
