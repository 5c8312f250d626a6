#include <set>

#include "lopsided/error.hpp"
#include "lopsided/logic.hpp"

namespace lopsided {

namespace {

TermPtr renameTerm(const TermPtr& t, const std::string& from, const std::string& to) {
  if (t->kind == Term::Kind::Variable) return t->name == from ? variable(to) : t;
  if (t->args.empty()) return t;
  std::vector<TermPtr> args;
  for (const auto& a : t->args) args.push_back(renameTerm(a, from, to));
  return std::make_shared<const Term>(Term{t->kind, t->value, t->name, std::move(args)});
}

FormulaPtr rename(const FormulaPtr& phi, const std::string& from, const std::string& to) {
  if ((phi->kind == Formula::Kind::Exists || phi->kind == Formula::Kind::Forall) && phi->name == from) return phi;
  std::vector<TermPtr> terms;
  for (const auto& t : phi->terms) terms.push_back(renameTerm(t, from, to));
  std::vector<FormulaPtr> children;
  for (const auto& c : phi->children) children.push_back(rename(c, from, to));
  return std::make_shared<const Formula>(Formula{phi->kind, phi->name, std::move(terms), std::move(children)});
}

struct Quantifier {
  Formula::Kind kind;
  std::string var;
};

struct Prenex {
  std::vector<Quantifier> prefix;
  FormulaPtr matrix;
};

struct PrenexBuilder {
  std::set<std::string> used;

  std::string claim(const std::string& var) {
    if (used.insert(var).second) return var;
    for (std::size_t k = 1;; ++k) {
      std::string candidate = var + "_" + std::to_string(k);
      if (used.insert(candidate).second) return candidate;
    }
  }

  Prenex build(const FormulaPtr& phi) {
    switch (phi->kind) {
      case Formula::Kind::Equal:
      case Formula::Kind::Predicate:
        return {{}, phi};
      case Formula::Kind::Exists:
      case Formula::Kind::Forall: {
        const std::string var = claim(phi->name);
        FormulaPtr body = var == phi->name ? phi->children[0] : rename(phi->children[0], phi->name, var);
        Prenex inner = build(body);
        inner.prefix.insert(inner.prefix.begin(), Quantifier{phi->kind, var});
        return inner;
      }
      case Formula::Kind::Not: {
        Prenex inner = build(phi->children[0]);
        for (auto& q : inner.prefix)
          q.kind = q.kind == Formula::Kind::Exists ? Formula::Kind::Forall : Formula::Kind::Exists;
        inner.matrix = negate(inner.matrix);
        return inner;
      }
      case Formula::Kind::And:
      case Formula::Kind::Or: {
        Prenex out;
        std::vector<FormulaPtr> parts;
        for (const auto& c : phi->children) {
          Prenex inner = build(c);
          out.prefix.insert(out.prefix.end(), inner.prefix.begin(), inner.prefix.end());
          parts.push_back(inner.matrix);
        }
        out.matrix = phi->kind == Formula::Kind::And ? conj(std::move(parts)) : disj(std::move(parts));
        return out;
      }
    }
    return {{}, phi};
  }
};

SentenceClass classifyPrenex(const FormulaPtr& prenex) {
  SentenceClass cls;
  const Formula* node = prenex.get();
  std::optional<Formula::Kind> last;
  while (node->kind == Formula::Kind::Exists || node->kind == Formula::Kind::Forall) {
    if (!last) cls.shape = node->kind == Formula::Kind::Exists ? SentenceClass::Shape::Sigma : SentenceClass::Shape::Pi;
    if (node->kind != last) ++cls.level;
    last = node->kind;
    node = node->children[0].get();
  }
  return cls;
}

}  // namespace

std::string toString(const SentenceClass& c) {
  if (c.level == 0 && c.shape != SentenceClass::Shape::Delta) return "Sigma0=Pi0";
  switch (c.shape) {
    case SentenceClass::Shape::Sigma:
      return "Sigma" + std::to_string(c.level);
    case SentenceClass::Shape::Pi:
      return "Pi" + std::to_string(c.level);
    case SentenceClass::Shape::Delta:
      return "Delta" + std::to_string(c.level);
  }
  return "?";
}

FormulaPtr toPrenex(const FormulaPtr& phi) {
  PrenexBuilder builder;
  Prenex p = builder.build(phi);
  FormulaPtr out = p.matrix;
  for (auto it = p.prefix.rbegin(); it != p.prefix.rend(); ++it)
    out = it->kind == Formula::Kind::Exists ? exists(it->var, out) : forall(it->var, out);
  return out;
}

SentenceClass classify(const FormulaPtr& phi) { return classifyPrenex(toPrenex(phi)); }

SentenceClass classify(const DeltaCertificate& cert) {
  const SentenceClass s = classify(cert.sigmaForm);
  const SentenceClass p = classify(cert.piForm);
  const bool sigmaOk = s.level == 0 || s.shape == SentenceClass::Shape::Sigma;
  const bool piOk = p.level == 0 || p.shape == SentenceClass::Shape::Pi;
  if (!sigmaOk || !piOk) throw Error("logic", "Delta certificate needs a Sigma form and a Pi form");
  return {SentenceClass::Shape::Delta, std::max(s.level, p.level)};
}

}  // namespace lopsided
