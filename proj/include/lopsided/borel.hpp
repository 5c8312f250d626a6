#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lopsided/baire.hpp"
#include "lopsided/guesser.hpp"
#include "lopsided/logic.hpp"

namespace lopsided {

enum class Verdict { In, Out, Unknown };

std::string toString(Verdict v);
inline Verdict verdictOf(bool in) { return in ? Verdict::In : Verdict::Out; }
Verdict dual(Verdict v);

// ---------------------------------------------------------------------------
// Catalog of example sets with exact membership on eventually periodic points.

enum class CatalogId {
  Cylinder,
  FirstValueEquals,
  EventuallyZero,
  InfinitelyManyZeros,
  ExactlyZeros,
  AtMostZeros,
  EventuallyConstant,
  EqualFirstTwo,
};

struct CatalogSet {
  CatalogId id = CatalogId::EventuallyZero;
  Nat k = 0;      // c for first-value-equals, k for the zero counts
  Prefix prefix;  // cylinder

  friend bool operator==(const CatalogSet&, const CatalogSet&) = default;
};

// DSL names: cylinder, first-value-equals, eventually-zero,
// infinitely-many-zeros, exactly-zeros, at-most-zeros, eventually-constant,
// equal-first-two. Throws CodeError on an unknown name.
CatalogSet catalogSet(const std::string& name, Nat k = 0, Prefix prefix = {});
std::string catalogName(CatalogId id);
std::string toString(const CatalogSet& set);

// True for the members of the catalog that are Delta^0_2.
bool isDeltaTwo(const CatalogSet& set);

bool exactOracle(const CatalogSet& set, const Point& p);

// ---------------------------------------------------------------------------
// Codes.

struct Code;
using CodePtr = std::shared_ptr<const Code>;

// An N-indexed family of codes, child(i) total and deterministic.
class Family {
 public:
  virtual ~Family() = default;
  virtual CodePtr child(Nat i) const = 0;

  // Exact membership in the union / intersection of the whole family when the
  // family knows how to decide it; nullopt otherwise.
  virtual std::optional<bool> unionContains(const Point&, std::size_t /*fuel*/, const Signature&) const {
    return std::nullopt;
  }
  virtual std::optional<bool> intersectionContains(const Point&, std::size_t /*fuel*/, const Signature&) const {
    return std::nullopt;
  }

  // Whether member may fall back to searching children below fuel when the
  // hooks above give no answer.
  virtual bool searchable() const { return true; }
  // DSL rendering; programmatic rules render as (rule "description").
  virtual std::string toString() const = 0;
};

using FamilyPtr = std::shared_ptr<const Family>;

// The displayed event {f : G(f(phi_0), ..., f(phi_round)) = bit}.
struct GuessEventData {
  BitGuesserPtr guesser;
  FactSource source;
  Nat round = 0;
  Bit bit = 1;
};

struct Code {
  enum class Kind {
    Cylinder,
    CoCylinder,
    Union,
    Intersection,
    IndexedUnion,
    IndexedIntersection,
    Leaf,
    GuessEvent,
    Catalog,
  };

  Kind kind;
  Prefix prefix;               // Cylinder, CoCylinder
  std::vector<CodePtr> parts;  // Union, Intersection
  FamilyPtr family;            // IndexedUnion, IndexedIntersection
  Sentence sentence;           // Leaf (quantifier-free unless built from a certificate)
  GuessEventData event;        // GuessEvent
  CatalogSet catalog;          // Catalog
  bool complemented = false;   // Catalog
};

CodePtr cylinder(Prefix s);
CodePtr coCylinder(Prefix s);
CodePtr finiteUnion(std::vector<CodePtr> parts);
CodePtr finiteIntersection(std::vector<CodePtr> parts);
CodePtr indexedUnion(FamilyPtr family);
CodePtr indexedIntersection(FamilyPtr family);
CodePtr sentenceLeaf(Sentence phi);
CodePtr guessEvent(GuessEventData event);
CodePtr catalogCode(CatalogSet set);

inline CodePtr wholeSpace() { return cylinder({}); }
inline CodePtr emptySet() { return coCylinder({}); }

// Finite list of codes followed by a constant tail.
FamilyPtr explicitTail(std::vector<CodePtr> head, CodePtr tail);
inline FamilyPtr constantFamily(CodePtr c) { return explicitTail({}, std::move(c)); }
// Programmatic rule; not serializable.
FamilyPtr ruleFamily(std::function<CodePtr(Nat)> rule, std::string description);

// Named closed-form families available from the DSL as
// (template NAME :param value ...).
FamilyPtr templateFamily(const std::string& name, const std::map<std::string, Nat>& params);
std::vector<std::string> templateNames();

// phi(x | i) for i in N; the union/intersection are decided exactly whenever
// evaluate decides the quantified sentence.
FamilyPtr substitutionFamily(std::string var, FormulaPtr body);

// child(i) = complement(inner.child(i)); (dual F) in the DSL.
FamilyPtr dualFamily(FamilyPtr inner);

// child(<a, b>) = inner.child(a).family.child(b) under the Cantor pairing;
// collapses nested indexed operators of one kind. (flatten F) in the DSL.
FamilyPtr flattenFamily(FamilyPtr inner);

// child(i) = inner.child(i) with its own nested same-kind operator flattened;
// children without one pass through. (flatten-rows F) in the DSL.
FamilyPtr flattenRowsFamily(FamilyPtr inner);

// child(i) = the indexed union (or intersection) of the constant family
// inner.child(i). (wrap-rows union F) / (wrap-rows inter F) in the DSL.
FamilyPtr wrapRowsFamily(FamilyPtr inner, bool asUnion);

std::string toString(const Code& c);

// Sound bounded membership. Cylinders always decide; indexed unions search
// children below `fuel` for an In (intersections for an Out) unless the
// family decides exactly; leaves evaluate their sentence; guess events replay
// the guesser on the point's facts (Unknown if a fact is undecided).
Verdict member(const Code& c, const Point& p, std::size_t fuel, const Signature& sig);

// Negation-normal dual: member(complement(c)) is the dual verdict.
CodePtr complement(const CodePtr& c);

// Syntactic Borel class of a code: level 0 marks clopen leaves.
struct BorelClass {
  SentenceClass::Shape shape = SentenceClass::Shape::Delta;
  unsigned level = 0;

  friend bool operator==(const BorelClass&, const BorelClass&) = default;
};
BorelClass syntacticClass(const Code& c);
std::string toString(const BorelClass& c);

// ---------------------------------------------------------------------------
// Delta' pairs: unionForm = U_i n_j D_ij, intersectionForm = n_i U_j E_ij,
// both over inner codes of level m - 2 (clopen when m <= 3).

struct DeltaPrimePair {
  CodePtr unionForm;
  CodePtr intersectionForm;
  unsigned level = 2;
};

CodePtr innerD(const DeltaPrimePair& d, Nat i, Nat j);
CodePtr innerE(const DeltaPrimePair& d, Nat i, Nat j);

// Quantifier-free sentence defining a clopen inner code, if it has one:
// cylinders, co-cylinders, quantifier-free leaves and finite combinations.
std::optional<Sentence> certificateOf(const Code& c);

// The Delta' pair of a Delta^0_2 catalog set, with quantifier-free certified
// clopen inner codes. Throws CodeError for sets outside Delta^0_2.
DeltaPrimePair catalogPair(const CatalogSet& set);

// Forms of a catalog set whose leaves are cylinders or co-cylinders only:
// Sigma^0_2 (U n co-cylinders) and Pi^0_2 (n U cylinders). Available for
// exactly-zeros, at-most-zeros, eventually-zero (Sigma form only) and
// infinitely-many-zeros (Pi form only).
std::optional<CodePtr> cylinderSigmaTwoForm(const CatalogSet& set);
std::optional<CodePtr> cylinderPiTwoForm(const CatalogSet& set);

struct DeltaForms {
  CodePtr sigmaForm;
  CodePtr piForm;
};

// Level-m pair to Sigma^0_{m-1} / Pi^0_{m-1} codes (identity at m = 2, where
// the pair is the Delta^0_2 representation itself).
DeltaForms deltaPrimeToDelta(const DeltaPrimePair& d);

// Sigma / Pi forms of a Delta^0_{m-1} set to a Delta'_m pair. Lower-level
// shapes are promoted with constant families. Throws CodeError when inner
// leaves exceed level m - 3 (clopen when m = 3).
DeltaPrimePair deltaToDeltaPrime(const CodePtr& sForm, const CodePtr& pForm, unsigned m);

// ---------------------------------------------------------------------------
// Codes and sentences.

// Clopen code for a quantifier-free sentence: negation-normal form with
// f(0) = n atoms as (co-)cylinders, closed decided atoms as the whole or empty
// space and the remaining atoms as sentence leaves.
CodePtr clopenSet(const Sentence& phi, const Signature& sig);

// Compiles a Sigma_n / Pi_n normal-form code (n <= 3; innermost leaves are
// cylinders when the innermost operator is a union, co-cylinders otherwise)
// to Q x1 ... Q xn (tau o f)(x, l(x)) = b, registering fresh tau and l.
Sentence compileToSentence(const CodePtr& c, Signature& sig);

// Exists x phi -> U_i [phi(x|i)], forall x phi -> n_i [phi(x|i)].
CodePtr sentenceToCode(const Sentence& phi, const Signature& sig);

// Bijection N -> N^{<N} used by the cylinder templates.
Prefix sequenceOfIndex(Nat t);

}  // namespace lopsided
