#include "doctest.h"
#include "lopsided/dsl.hpp"
#include "lopsided/error.hpp"

using namespace lopsided;

namespace {

const Signature& sig() {
  static auto s = Signature::standard();
  return *s;
}

}  // namespace

TEST_CASE("reader tracks positions and comments") {
  auto e = readSExpr("; a comment\n(a \"b c\" (d))");
  REQUIRE(e.isList());
  CHECK(e.line == 2);
  CHECK(e.items.size() == 3);
  CHECK(e.items[1].kind == SExpr::Kind::String);
  CHECK(e.items[1].text == "b c");
  CHECK(readAll("x (y) z").size() == 3);
}

TEST_CASE("parse errors carry line and column") {
  try {
    readSExpr("(a\n  (b");
    FAIL("expected a parse error");
  } catch (const ParseError& err) {
    CHECK(err.line() == 2);
    CHECK(err.column() == 3);
  }
  CHECK_THROWS_AS(readSExpr("(a) b"), ParseError);
  CHECK_THROWS_AS(readSExpr(")"), ParseError);
  CHECK_THROWS_AS(readSExpr("\"open"), ParseError);
}

TEST_CASE("points") {
  CHECK(parsePoint("(point :pre (3 1) :per (2))") == Point({3, 1}, {2}));
  CHECK(parsePoint("(point :per (0))") == Point::constant(0));
  CHECK(parsePoint(Point({5}, {1, 2}).toString()) == Point({5}, {1, 2}));
  CHECK_THROWS_AS(parsePoint("(point :pre (1))"), ParseError);
  CHECK_THROWS_AS(parsePoint("(point :per (x))"), ParseError);
  CHECK_THROWS_AS(parsePoint("(point :per (1) :bad 2)"), ParseError);
}

TEST_CASE("sentences check the signature") {
  auto phi = parseSentence("(exists x (and (= (f x) 0) (:pred le 3 x)))", sig());
  CHECK(classify(phi).level == 1);
  CHECK(toString(*parseSentence(toString(*phi), sig())) == toString(*phi));
  CHECK_THROWS_AS(parseSentence("(= (f y) 0)", sig()), ParseError);
  CHECK_THROWS_AS(parseSentence("(= (:fun nope 1) 0)", sig()), ParseError);
  CHECK_THROWS_AS(parseSentence("(= (:fun add 1) 0)", sig()), ParseError);
  CHECK_THROWS_AS(parseSentence("(= (:pfun zeros-below 3) 0)", sig()), ParseError);
  CHECK_NOTHROW(parseSentence("(= (:pfun zeros-below 3 4) 0)", sig()));
}

TEST_CASE("codes print and parse back") {
  const char* texts[] = {
      "(cyl (1 2))",
      "(co-cyl ())",
      "(union (cyl (0)) (inter (cyl (1)) (co-cyl (1 1))))",
      "(iunion (template first-repeat))",
      "(iinter (dual (template first-repeat)))",
      "(iunion (template exactly-zeros-d :k 1))",
      "(catalog exactly-zeros :k 2)",
      "(catalog cylinder :prefix (1 2))",
      "(complement (catalog eventually-zero))",
      "(leaf (= (f 0) (f 1)))",
      "(iunion (tail ((cyl (1)) (cyl (2))) (co-cyl ())))",
      "(iunion (subst x (= (f x) 0)))",
      "(iunion (flatten (tail () (iunion (template first-repeat)))))",
      "(iunion (wrap-rows inter (template first-repeat)))",
  };
  for (const char* text : texts) {
    CodePtr c = parseCode(text, sig());
    const std::string once = toString(*c);
    CHECK(toString(*parseCode(once, sig())) == once);
  }
}

TEST_CASE("parsed codes keep their meaning") {
  CodePtr c = parseCode("(catalog exactly-zeros :k 1)", sig());
  for (const Point& p : seededCorpus(30, 2))
    CHECK(member(*c, p, 64, sig()) == verdictOf(exactOracle(catalogSet("exactly-zeros", 1), p)));
}

TEST_CASE("code errors") {
  CHECK_THROWS_AS(parseCode("(cyl 1)", sig()), ParseError);
  CHECK_THROWS_AS(parseCode("(iunion (template nope))", sig()), ParseError);
  CHECK_THROWS_AS(parseCode("(iunion (template exactly-zeros-d))", sig()), ParseError);
  CHECK_THROWS_AS(parseCode("(iunion (rule \"x\"))", sig()), ParseError);
  CHECK_THROWS_AS(parseCode("(catalog nope)", sig()), ParseError);
  CHECK_THROWS_AS(parseCode("(bogus)", sig()), ParseError);
}

TEST_CASE("synthesis specs") {
  SynthesisSpec a = parseSynthesisSpec("exactly-zeros-1", sig());
  CHECK(a.name == "exactly-zeros-1");
  REQUIRE(a.catalog);
  CHECK(*a.catalog == catalogSet("exactly-zeros", 1));
  const std::string printed = toString(a);
  SynthesisSpec b = parseSynthesisSpec(printed, sig());
  CHECK(toString(b) == printed);
  CHECK(parseSynthesisSpec("whole-space", sig()).name == "whole-space");
  SynthesisSpec custom = parseSynthesisSpec(
      "(synthesis :name mine :order 0 :listing interleaved"
      " (pair (iunion (template exactly-zeros-d :k 1)) (iinter (template exactly-zeros-e :k 1)) :level 2))",
      sig());
  CHECK(custom.name == "mine");
  CHECK(custom.pair.level == 2);
  CHECK_FALSE(custom.catalog);
  CHECK(toString(parseSynthesisSpec(toString(custom), sig())) == toString(custom));
  CHECK_THROWS_AS(parseSynthesisSpec("eventually-zero", sig()), Error);
  CHECK_THROWS_AS(parseSynthesisSpec("(synthesis :bogus 1 (whole-space))", sig()), ParseError);
}
