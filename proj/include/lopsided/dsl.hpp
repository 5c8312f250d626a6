#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lopsided/borel.hpp"
#include "lopsided/guessing.hpp"

namespace lopsided {

struct SExpr {
  enum class Kind { Symbol, String, List };
  Kind kind = Kind::List;
  std::string text;  // Symbol, String
  std::vector<SExpr> items;
  std::size_t line = 1;
  std::size_t column = 1;

  bool isSymbol() const { return kind == Kind::Symbol; }
  bool isList() const { return kind == Kind::List; }
  bool isSymbol(std::string_view s) const { return kind == Kind::Symbol && text == s; }
};

// Reads exactly one expression; ';' starts a comment.
SExpr readSExpr(std::string_view text);
std::vector<SExpr> readAll(std::string_view text);

// (point :pre (3 1) :per (2)); :pre may be omitted.
Point parsePoint(std::string_view text);
Point parsePoint(const SExpr& e);

// Symbols are checked against the signature (name and arity).
FormulaPtr parseFormula(const SExpr& e, const Signature& sig);
// Also rejects free variables.
Sentence parseSentence(std::string_view text, const Signature& sig);

CodePtr parseCode(std::string_view text, const Signature& sig);
CodePtr parseCode(const SExpr& e, const Signature& sig);
FamilyPtr parseFamily(const SExpr& e, const Signature& sig);

// (synthesis :name N :order m :listing interleaved (pair U I :level m)), or
// the body (catalog ...), (whole-space), (empty-set) in place of the pair,
// or a bare name: exactly-zeros-1, at-most-zeros-2, first-value-equals-3,
// equal-first-two, whole-space, empty-set.
SynthesisSpec parseSynthesisSpec(std::string_view text, const Signature& sig);
std::string toString(const SynthesisSpec& spec);

}  // namespace lopsided
