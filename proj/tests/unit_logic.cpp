#include "doctest.h"
#include "lopsided/error.hpp"
#include "lopsided/logic.hpp"

using namespace lopsided;

namespace {

TermPtr f(TermPtr t) { return readF(std::move(t)); }
TermPtr n(Nat v) { return constant(v); }
TermPtr v(const char* name) { return variable(name); }

}  // namespace

TEST_CASE("standard signature") {
  auto sig = Signature::standard();
  CHECK(sig->hasFunction("add"));
  CHECK(sig->hasPredicate("le"));
  CHECK(sig->hasPrefixFunctional("zeros-below"));
  CHECK_FALSE(sig->hasFunction("nope"));
  CHECK_THROWS_AS(sig->function("nope"), SignatureError);
  const std::string fresh = sig->freshName("tau");
  CHECK_FALSE(sig->hasFunction(fresh));
}

TEST_CASE("quantifier-free evaluation always decides") {
  auto sig = Signature::standard();
  Point p({3, 0}, {1});
  CHECK(evaluate(*valueAt(0, 3), p, 1, *sig) == TruthValue::True);
  CHECK(evaluate(*valueAt(1, 3), p, 1, *sig) == TruthValue::False);
  auto sum = equal(apply("add", {f(n(0)), f(n(2))}), n(4));
  CHECK(evaluate(*sum, p, 0, *sig) == TruthValue::True);
  auto zeros = equal(applyPrefix("zeros-below", {n(5), n(9)}), n(1));
  CHECK(evaluate(*zeros, p, 0, *sig) == TruthValue::True);
  CHECK(evaluate(*verum(), p, 0, *sig) == TruthValue::True);
  CHECK(evaluate(*falsum(), p, 0, *sig) == TruthValue::False);
}

TEST_CASE("periodic fragment decides quantified sentences exactly") {
  auto sig = Signature::standard();
  auto someZero = exists("x", equal(f(v("x")), n(0)));
  auto infinitelyManyZeros = forall("x", exists("y", conj({predicate("le", {v("x"), v("y")}), equal(f(v("y")), n(0))})));
  CHECK(evaluate(*someZero, Point({1, 2}, {3}), 4, *sig) == TruthValue::False);
  CHECK(evaluate(*someZero, Point({1, 2}, {3, 0}), 4, *sig) == TruthValue::True);
  // le is outside the periodic fragment; the bounded search can only refute or witness.
  CHECK(evaluate(*infinitelyManyZeros, Point({0}, {1}), 16, *sig) != TruthValue::True);
}

TEST_CASE("fuel-bounded search is sound") {
  auto sig = Signature::standard();
  auto witness = exists("x", equal(apply("mul", {v("x"), v("x")}), n(49)));
  CHECK(evaluate(*witness, Point::constant(0), 10, *sig) == TruthValue::True);
  CHECK(evaluate(*witness, Point::constant(0), 3, *sig) == TruthValue::Unknown);
  CHECK_THROWS_AS(truthBit(*witness, Point::constant(0), 3, *sig), UndecidedError);
}

TEST_CASE("determination is strict") {
  auto sig = Signature::standard();
  auto phi = disj({valueAt(0, 1), valueAt(3, 2)});
  CHECK_FALSE(determinedBy(*phi, Prefix{1, 0}, *sig).has_value());
  CHECK(determinedBy(*phi, Prefix{1, 0, 0, 2}, *sig) == true);
  CHECK(determinedBy(*phi, Prefix{0, 0, 0, 5}, *sig) == false);
  CHECK(determinationBound(*phi, Point::constant(1), *sig) == 3);
  auto prefixRead = equal(applyPrefix("zeros-below", {n(9), n(4)}), n(0));
  CHECK(determinationBound(*prefixRead, Point::constant(1), *sig) == 4);
}

TEST_CASE("substitution and free variables") {
  auto body = equal(f(v("x")), v("y"));
  CHECK(freeVariables(*body).size() == 2);
  CHECK_FALSE(isSentence(*body));
  auto closed = substitute(substitute(body, "x", 2), "y", 5);
  CHECK(isSentence(*closed));
  CHECK(sameFormula(*closed, *valueAt(2, 5)));
  CHECK(asValueAtom(*closed) == std::pair<Nat, Nat>{2, 5});
  auto bound = exists("x", body);
  CHECK(sameFormula(*substitute(bound, "x", 1), *bound));
}

TEST_CASE("classification by quantifier blocks") {
  using S = SentenceClass::Shape;
  auto qf = valueAt(0, 0);
  CHECK(classify(qf) == SentenceClass{S::Sigma, 0});
  auto e = exists("x", exists("y", equal(f(v("x")), v("y"))));
  CHECK(classify(e) == SentenceClass{S::Sigma, 1});
  auto ae = forall("x", exists("y", equal(f(v("x")), v("y"))));
  CHECK(classify(ae) == SentenceClass{S::Pi, 2});
  CHECK(classify(negate(ae)) == SentenceClass{S::Sigma, 2});
  auto mixed = conj({exists("x", equal(f(v("x")), n(0))), forall("y", equal(f(v("y")), n(1)))});
  CHECK(classify(mixed).level == 2);
  CHECK(classify(DeltaCertificate{e, forall("z", equal(f(v("z")), n(0)))}) == SentenceClass{S::Delta, 1});
}

TEST_CASE("atom pairing is a bijection") {
  for (Nat i = 0; i < 20; ++i)
    for (Nat k = 0; k < 10; ++k) CHECK(atomUnpairing(atomPairing(i, k)) == std::pair<Nat, Nat>{i, k});
  for (Nat k = 0; k < 500; ++k) {
    auto [i, m] = atomUnpairing(k);
    CHECK(atomPairing(i, m) == k);
  }
}

TEST_CASE("canonical listing places atoms at even indices") {
  using S = SentenceClass::Shape;
  auto listing = canonicalListing({S::Sigma, 0});
  for (Nat i = 0; i < 4; ++i)
    for (Nat k = 0; k < 4; ++k) CHECK(sameFormula(*listing->at(2 * atomPairing(i, k)), *valueAt(i, k)));
  for (std::size_t j = 1; j < 60; j += 2) CHECK_FALSE(asValueAtom(*listing->at(j)).has_value());
  for (std::size_t j = 0; j < 60; ++j) CHECK(isQuantifierFree(*listing->at(j)));
  CHECK(sameFormula(*enumerate({S::Sigma, 0}, 17), *listing->at(17)));
}

TEST_CASE("higher listings are sentences of the requested class") {
  using S = SentenceClass::Shape;
  for (unsigned level = 1; level <= 2; ++level) {
    auto sigma = canonicalListing({S::Sigma, level});
    auto pi = canonicalListing({S::Pi, level});
    for (std::size_t j = 0; j < 30; ++j) {
      CHECK(isSentence(*sigma->at(j)));
      CHECK(classify(sigma->at(j)).level <= level);
      CHECK(classify(pi->at(j)).level <= level);
    }
  }
}

TEST_CASE("prenex form preserves truth") {
  auto sig = Signature::standard();
  auto phi = conj({exists("x", equal(f(v("x")), n(0))), negate(exists("x", equal(f(v("x")), n(7))))});
  auto pre = toPrenex(phi);
  for (const Point& p : {Point({1}, {0}), Point({7}, {0}), Point::constant(2)})
    CHECK(evaluate(*phi, p, 8, *sig) == evaluate(*pre, p, 8, *sig));
}
