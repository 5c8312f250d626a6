#include <set>

#include "doctest.h"
#include "lopsided/borel.hpp"
#include "lopsided/error.hpp"
#include "oracles.hpp"

using namespace lopsided;

namespace {

const Signature& sig() {
  static auto s = Signature::standard();
  return *s;
}

// Independent count of the zeros of an eventually periodic point; nullopt when infinite.
std::optional<std::size_t> countZeros(const Point& p) {
  for (Nat x : p.period())
    if (x == 0) return std::nullopt;
  std::size_t k = 0;
  for (Nat x : p.preamble()) k += x == 0;
  return k;
}

std::vector<CatalogSet> deltaTwoSets() {
  return {catalogSet("first-value-equals", 2), catalogSet("exactly-zeros", 0), catalogSet("exactly-zeros", 1),
          catalogSet("exactly-zeros", 2),      catalogSet("at-most-zeros", 2), catalogSet("equal-first-two"),
          catalogSet("cylinder", 0, {1, 2})};
}

}  // namespace

TEST_CASE("catalog oracles on hand-checked points") {
  CHECK(exactOracle(catalogSet("exactly-zeros", 1), Point({0}, {5})));
  CHECK(exactOracle(catalogSet("exactly-zeros", 2), Point({0, 0}, {3})));
  CHECK_FALSE(exactOracle(catalogSet("exactly-zeros", 1), Point({0}, {5, 0})));
  CHECK(exactOracle(catalogSet("eventually-zero"), Point({4, 4}, {0})));
  CHECK_FALSE(exactOracle(catalogSet("eventually-zero"), Point({}, {0, 1})));
  CHECK(exactOracle(catalogSet("infinitely-many-zeros"), Point({}, {0, 1})));
  CHECK(exactOracle(catalogSet("eventually-constant"), Point({1, 2}, {3})));
  CHECK_FALSE(exactOracle(catalogSet("eventually-constant"), Point({}, {1, 2})));
  CHECK(exactOracle(catalogSet("equal-first-two"), Point({}, {4})));
  CHECK(exactOracle(catalogSet("first-value-equals", 3), Point({3}, {1})));
  CHECK(exactOracle(catalogSet("cylinder", 0, {3, 1}), Point({3, 1}, {0})));
  CHECK_THROWS_AS(catalogSet("no-such-set"), CodeError);
}

TEST_CASE("zero-count oracles agree with an independent count") {
  for (const Point& p : seededCorpus(200, 5)) {
    auto k = countZeros(p);
    for (Nat j = 0; j <= 3; ++j) {
      CHECK(exactOracle(catalogSet("exactly-zeros", j), p) == (k && *k == j));
      CHECK(exactOracle(catalogSet("at-most-zeros", j), p) == (k && *k <= j));
    }
  }
}

TEST_CASE("delta-two membership") {
  CHECK(isDeltaTwo(catalogSet("exactly-zeros", 1)));
  CHECK(isDeltaTwo(catalogSet("equal-first-two")));
  CHECK_FALSE(isDeltaTwo(catalogSet("eventually-zero")));
  CHECK_FALSE(isDeltaTwo(catalogSet("infinitely-many-zeros")));
  CHECK_THROWS_AS(catalogPair(catalogSet("eventually-zero")), CodeError);
}

TEST_CASE("cylinders and finite combinations") {
  Point p({1, 2}, {3});
  CHECK(member(*cylinder({1, 2, 3}), p, 0, sig()) == Verdict::In);
  CHECK(member(*cylinder({1, 3}), p, 0, sig()) == Verdict::Out);
  CHECK(member(*coCylinder({1, 3}), p, 0, sig()) == Verdict::In);
  CHECK(member(*wholeSpace(), p, 0, sig()) == Verdict::In);
  CHECK(member(*emptySet(), p, 0, sig()) == Verdict::Out);
  auto both = finiteIntersection({cylinder({1}), coCylinder({1, 2})});
  CHECK(member(*both, p, 0, sig()) == Verdict::Out);
  auto either = finiteUnion({cylinder({0}), cylinder({1, 2})});
  CHECK(member(*either, p, 0, sig()) == Verdict::In);
}

TEST_CASE("indexed operators search below fuel") {
  auto firstRepeat = indexedUnion(templateFamily("first-repeat", {}));
  CHECK(member(*firstRepeat, Point({}, {4}), 8, sig()) == Verdict::In);
  CHECK(member(*firstRepeat, Point({}, {4}), 3, sig()) == Verdict::Unknown);
  CHECK(member(*firstRepeat, Point({}, {1, 2}), 100, sig()) == Verdict::Unknown);
  auto closed = complement(firstRepeat);
  CHECK(member(*closed, Point({}, {1, 2}), 100, sig()) == Verdict::Unknown);
  CHECK(member(*closed, Point({}, {4}), 8, sig()) == Verdict::Out);
}

TEST_CASE("complement dualizes every decided verdict") {
  std::vector<CodePtr> codes{
      cylinder({1}),
      finiteUnion({cylinder({0}), coCylinder({2, 2})}),
      indexedUnion(templateFamily("first-repeat", {})),
      catalogCode(catalogSet("eventually-zero")),
      catalogPair(catalogSet("exactly-zeros", 1)).unionForm,
      catalogPair(catalogSet("at-most-zeros", 2)).intersectionForm,
  };
  for (const auto& c : codes)
    for (const Point& p : seededCorpus(40, 9)) {
      const Verdict v = member(*c, p, 64, sig());
      const Verdict w = member(*complement(c), p, 64, sig());
      CHECK(w == dual(v));
    }
}

TEST_CASE("syntactic classes") {
  using S = SentenceClass::Shape;
  CHECK(syntacticClass(*cylinder({1})).level == 0);
  auto open = indexedUnion(templateFamily("first-repeat", {}));
  CHECK(syntacticClass(*open) == BorelClass{S::Sigma, 1});
  CHECK(syntacticClass(*complement(open)) == BorelClass{S::Pi, 1});
  auto pair = catalogPair(catalogSet("exactly-zeros", 1));
  CHECK(syntacticClass(*pair.unionForm) == BorelClass{S::Sigma, 2});
  CHECK(syntacticClass(*pair.intersectionForm) == BorelClass{S::Pi, 2});
}

TEST_CASE("catalog pairs agree with the oracle by brute force") {
  for (const CatalogSet& set : deltaTwoSets()) {
    auto pair = catalogPair(set);
    CHECK(pair.level == 2);
    for (const Point& p : seededCorpus(100, 21)) {
      const bool truth = exactOracle(set, p);
      CHECK(oracles::unionOfIntersections(pair, p, sig()) == truth);
      CHECK(oracles::intersectionOfUnions(pair, p, sig()) == truth);
      const Verdict u = member(*pair.unionForm, p, 64, sig());
      const Verdict v = member(*pair.intersectionForm, p, 64, sig());
      if (u != Verdict::Unknown) CHECK(u == verdictOf(truth));
      if (v != Verdict::Unknown) CHECK(v == verdictOf(truth));
      // Inner codes carry quantifier-free certificates.
      for (Nat i = 0; i < 3; ++i)
        for (Nat j = 0; j < 3; ++j) {
          auto d = certificateOf(*innerD(pair, i, j));
          auto e = certificateOf(*innerE(pair, i, j));
          REQUIRE(d);
          REQUIRE(e);
          CHECK(isQuantifierFree(**d));
          CHECK(isQuantifierFree(**e));
        }
    }
  }
}

TEST_CASE("inner codes are explicit rows") {
  auto pair = catalogPair(catalogSet("exactly-zeros", 1));
  // The union of intersections holds at a point iff some row i has every D_ij.
  Point in({3, 0}, {2});
  bool someRow = false;
  for (Nat i = 0; i < 6 && !someRow; ++i) {
    bool all = true;
    for (Nat j = 0; j < 12 && all; ++j) all = member(*innerD(pair, i, j), in, 0, sig()) == Verdict::In;
    someRow = all;
  }
  CHECK(someRow);
}

TEST_CASE("cylinder-only second-level forms") {
  for (const CatalogSet& set : {catalogSet("exactly-zeros", 1), catalogSet("at-most-zeros", 2)}) {
    auto s = cylinderSigmaTwoForm(set);
    auto p = cylinderPiTwoForm(set);
    REQUIRE(s);
    REQUIRE(p);
    for (const Point& x : seededCorpus(40, 2)) {
      const Verdict vs = member(**s, x, 64, sig());
      const Verdict vp = member(**p, x, 64, sig());
      if (vs != Verdict::Unknown) CHECK(vs == verdictOf(exactOracle(set, x)));
      if (vp != Verdict::Unknown) CHECK(vp == verdictOf(exactOracle(set, x)));
    }
  }
  CHECK(cylinderSigmaTwoForm(catalogSet("eventually-zero")));
  CHECK_FALSE(cylinderPiTwoForm(catalogSet("eventually-zero")));
}

TEST_CASE("clopen sets from quantifier-free sentences") {
  auto phi = disj({valueAt(0, 3), conj({valueAt(1, 0), negate(valueAt(2, 2))})});
  auto c = clopenSet(phi, sig());
  CHECK(syntacticClass(*c).level == 0);
  for (const Point& p : seededCorpus(80, 4))
    CHECK(member(*c, p, 0, sig()) == verdictOf(truthBit(*phi, p, 0, sig())));
}

TEST_CASE("sentences to codes") {
  auto someZero = exists("x", equal(readF(variable("x")), constant(0)));
  auto c = sentenceToCode(someZero, sig());
  CHECK(c->kind == Code::Kind::IndexedUnion);
  auto allPositive = forall("x", negate(equal(readF(variable("x")), constant(0))));
  auto d = sentenceToCode(allPositive, sig());
  CHECK(d->kind == Code::Kind::IndexedIntersection);
  for (const Point& p : seededCorpus(50, 8)) {
    const bool truth = truthBit(*someZero, p, 64, sig());
    const Verdict v = member(*c, p, 64, sig());
    if (v != Verdict::Unknown) CHECK(v == verdictOf(truth));
    const Verdict w = member(*d, p, 64, sig());
    if (w != Verdict::Unknown) CHECK(w == verdictOf(!truth));
  }
}

TEST_CASE("normal-form codes compile to sentences") {
  auto local = Signature::standard();
  auto open = indexedUnion(templateFamily("first-repeat", {}));
  Sentence phi = compileToSentence(open, *local);
  CHECK(classify(phi) == SentenceClass{SentenceClass::Shape::Sigma, 1});
  for (const Point& p : seededCorpus(50, 13)) {
    const TruthValue v = evaluate(*phi, p, 64, *local);
    if (v != TruthValue::Unknown) CHECK((v == TruthValue::True) == exactOracle(catalogSet("equal-first-two"), p));
  }
  CHECK_THROWS_AS(compileToSentence(catalogCode(catalogSet("eventually-zero")), *local), CodeError);
}

TEST_CASE("pair and form conversions") {
  auto pair = catalogPair(catalogSet("exactly-zeros", 1));
  DeltaForms forms = deltaPrimeToDelta(pair);
  CHECK(forms.sigmaForm == pair.unionForm);
  CHECK(forms.piForm == pair.intersectionForm);
  auto back = deltaToDeltaPrime(pair.unionForm, pair.intersectionForm, 2);
  for (const Point& p : seededCorpus(30, 6))
    CHECK(member(*back.unionForm, p, 64, sig()) == member(*pair.unionForm, p, 64, sig()));
  CHECK_THROWS_AS(deltaToDeltaPrime(pair.unionForm, pair.intersectionForm, 1), CodeError);
}

TEST_CASE("family combinators") {
  auto rows = templateFamily("first-repeat", {});
  auto dualRows = dualFamily(rows);
  CHECK(toString(*dualRows->child(3)) == toString(*complement(rows->child(3))));
  auto nested = explicitTail({}, indexedUnion(rows));
  auto flat = flattenFamily(nested);
  auto code = indexedUnion(flat);
  CHECK(member(*code, Point({}, {2}), 64, sig()) == Verdict::In);
  CHECK(toString(*code).find("(flatten") != std::string::npos);
  auto wrapped = wrapRowsFamily(rows, true);
  CHECK(wrapped->child(0)->kind == Code::Kind::IndexedUnion);
}

TEST_CASE("sequence indexing is a bijection on short sequences") {
  std::set<Prefix> seen;
  for (Nat t = 0; t < 400; ++t) CHECK(seen.insert(sequenceOfIndex(t)).second);
  CHECK(sequenceOfIndex(0).empty());
}
