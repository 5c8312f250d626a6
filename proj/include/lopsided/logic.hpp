#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lopsided/baire.hpp"

namespace lopsided {

// ---------------------------------------------------------------------------
// Signature: the executable registry of symbols. Constants (every natural)
// and the sequence symbol f are implicit.

class Signature {
 public:
  using Function = std::function<Nat(std::span<const Nat>)>;
  using Predicate = std::function<bool(std::span<const Nat>)>;
  // Interprets G o f: receives the leading arguments and f(0), ..., f(m)
  // where m is the value of the last argument.
  using PrefixFunction = std::function<Nat(std::span<const Nat> args, std::span<const Nat> prefix)>;

  struct FunctionSymbol {
    std::size_t arity;
    Function fn;
  };
  struct PredicateSymbol {
    std::size_t arity;
    Predicate fn;
  };
  struct PrefixSymbol {
    std::size_t arity;  // leading arguments, not counting the length argument
    PrefixFunction fn;
  };

  // succ, add, mul, monus, pair, first, second; le, lt, even;
  // zeros-below(N; f(0..m)) = #{i < N, i <= m : f(i) = 0}.
  static std::shared_ptr<Signature> standard();

  void addFunction(const std::string& name, std::size_t arity, Function fn);
  void addPredicate(const std::string& name, std::size_t arity, Predicate fn);
  void addPrefixFunctional(const std::string& name, std::size_t arity, PrefixFunction fn);

  // Unused name of the form stem<k>.
  std::string freshName(std::string_view stem);

  // Lookups throw SignatureError for unregistered names.
  FunctionSymbol function(const std::string& name) const;
  PredicateSymbol predicate(const std::string& name) const;
  PrefixSymbol prefixFunctional(const std::string& name) const;

  bool hasFunction(const std::string& name) const;
  bool hasPredicate(const std::string& name) const;
  bool hasPrefixFunctional(const std::string& name) const;

 private:
  bool taken(const std::string& name) const;

  mutable std::mutex mutex_;
  std::map<std::string, FunctionSymbol> functions_;
  std::map<std::string, PredicateSymbol> predicates_;
  std::map<std::string, PrefixSymbol> prefixFunctionals_;
  std::size_t freshCounter_ = 0;
};

// ---------------------------------------------------------------------------
// Terms and formulas. Nodes are immutable and shared.

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  enum class Kind { Constant, Variable, Function, Read, PrefixFunctional };

  Kind kind;
  Nat value = 0;     // Constant
  std::string name;  // Variable, Function, PrefixFunctional
  std::vector<TermPtr> args;
};

TermPtr constant(Nat n);
TermPtr variable(std::string name);
TermPtr apply(std::string fn, std::vector<TermPtr> args);
TermPtr readF(TermPtr index);
TermPtr applyPrefix(std::string fn, std::vector<TermPtr> args);

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;
// A formula without free variables.
using Sentence = FormulaPtr;

struct Formula {
  enum class Kind { Equal, Predicate, Not, And, Or, Exists, Forall };

  Kind kind;
  std::string name;  // predicate name, or the bound variable
  std::vector<TermPtr> terms;
  std::vector<FormulaPtr> children;
};

FormulaPtr equal(TermPtr lhs, TermPtr rhs);
FormulaPtr predicate(std::string name, std::vector<TermPtr> args);
FormulaPtr negate(FormulaPtr body);
FormulaPtr conj(std::vector<FormulaPtr> parts);
FormulaPtr disj(std::vector<FormulaPtr> parts);
FormulaPtr exists(std::string var, FormulaPtr body);
FormulaPtr forall(std::string var, FormulaPtr body);
// Empty conjunction / disjunction.
FormulaPtr verum();
FormulaPtr falsum();

// f(i) = n
FormulaPtr valueAt(Nat index, Nat value);
// Conjunction of f(k) = s[k]; verum for the empty prefix.
FormulaPtr extendsFormula(std::span<const Nat> s);

bool isQuantifierFree(const Formula& phi);
bool isSentence(const Formula& phi);
std::vector<std::string> freeVariables(const Formula& phi);
bool sameFormula(const Formula& a, const Formula& b);
bool sameTerm(const Term& a, const Term& b);

// phi(x | n): replace free occurrences of x by the numeral n.
FormulaPtr substitute(const FormulaPtr& phi, const std::string& var, Nat n);

std::string toString(const Term& t);
std::string toString(const Formula& phi);

// Atomic fragment recognizer: the sentence f(i) = n with numerals only.
std::optional<std::pair<Nat, Nat>> asValueAtom(const Formula& phi);

// ---------------------------------------------------------------------------
// Evaluation in M_p.

enum class TruthValue { False, True, Unknown };

std::string toString(TruthValue v);

inline TruthValue fromBool(bool b) { return b ? TruthValue::True : TruthValue::False; }

// Sound three-valued evaluation. Quantifier-free sentences always decide.
// Quantified subformulas decide exactly when they fall in the periodic
// fragment (bound variables only occur as f(v) or as a bare side of an
// equality); otherwise a witness or counterexample below `fuel` decides and
// anything else is Unknown.
TruthValue evaluate(const Formula& phi, const Point& p, std::size_t fuel, const Signature& sig);

// 1 iff M_p satisfies phi; throws UndecidedError when evaluate is Unknown.
bool truthBit(const Formula& phi, const Point& p, std::size_t fuel, const Signature& sig);

// Operational determination: evaluates the quantifier-free phi against s,
// recording every index of f that the evaluation reads (f(t) reads t;
// G o f with last argument m reads 0..m). Returns the decided value when
// every read falls inside s, nullopt otherwise.
std::optional<bool> determinedBy(const Formula& phi, std::span<const Nat> s, const Signature& sig);

// Largest f-index read when evaluating phi on p (0 if none), i.e. a k with
// phi determined by (p(0), ..., p(k)).
Nat determinationBound(const Formula& phi, const Point& p, const Signature& sig);

// ---------------------------------------------------------------------------
// Syntactic classes.

struct SentenceClass {
  enum class Shape { Sigma, Pi, Delta };
  Shape shape = Shape::Sigma;
  unsigned level = 0;

  friend bool operator==(const SentenceClass&, const SentenceClass&) = default;
};

std::string toString(const SentenceClass& c);

// A Delta_n sentence is accepted only as a pair of forms asserted equivalent
// over every M_f; nothing here checks the equivalence.
struct DeltaCertificate {
  Sentence sigmaForm;
  Sentence piForm;
};

// Prenex normal form with fresh renaming of bound variables.
FormulaPtr toPrenex(const FormulaPtr& phi);

// Sigma_n / Pi_n by the number of quantifier blocks of the prenex form;
// quantifier-free sentences are Sigma_0 (= Pi_0).
SentenceClass classify(const FormulaPtr& phi);

// Delta_n with n the larger of the two form levels; throws if the forms are
// not Sigma resp. Pi shaped.
SentenceClass classify(const DeltaCertificate& cert);

// ---------------------------------------------------------------------------
// Listings of sentences. A listing is an infinite, deterministic sequence.

class Listing {
 public:
  virtual ~Listing() = default;
  virtual Sentence at(std::size_t i) const = 0;
  virtual std::string describe() const = 0;
};

using ListingPtr = std::shared_ptr<const Listing>;

// Bijection N x N -> N used to place the atom f(i) = n: 2^n (2i + 1) - 1.
Nat atomPairing(Nat i, Nat n);
std::pair<Nat, Nat> atomUnpairing(Nat k);

// Canonical enumeration over the fragment {f, numerals}.
//
// Sigma_0: the Boolean closure (not, binary and/or) of the atoms f(i) = n.
// Even indices 2k list the atom at pairing position k, so f(i) = n sits at
// index 2 * atomPairing(i, n). Odd indices list the compound sentences in
// size order, then connective (not < and < or), then operands in enumeration
// order; atom number k has size k + 1 and connectives add one.
//
// Sigma_n / Pi_n (n >= 1): alternating single-variable prefix x1..xn over the
// same closure, with atoms f(a) = b where a, b range over x1..xn and numerals.
//
// Delta_m (m >= 1): Boolean closure whose atoms are the supplied certified
// sentences followed by the interleaved Sigma_{m-1} / Pi_{m-1} listings.
std::shared_ptr<Listing> canonicalListing(SentenceClass cls, std::vector<DeltaCertificate> certified = {});

// The i-th sentence of the canonical listing.
Sentence enumerate(SentenceClass cls, std::size_t i);

}  // namespace lopsided
