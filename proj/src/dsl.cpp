#include "lopsided/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "lopsided/error.hpp"

namespace lopsided {

namespace {

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  bool atEnd() {
    skipSpace();
    return pos_ >= text_.size();
  }

  SExpr read() {
    skipSpace();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    SExpr e;
    e.line = line_;
    e.column = column_;
    const char c = text_[pos_];
    if (c == '(') {
      advance();
      e.kind = SExpr::Kind::List;
      while (true) {
        skipSpace();
        if (pos_ >= text_.size()) throw ParseError(e.line, e.column, "unclosed '('");
        if (text_[pos_] == ')') {
          advance();
          return e;
        }
        e.items.push_back(read());
      }
    }
    if (c == ')') fail("unexpected ')'");
    if (c == '"') {
      advance();
      e.kind = SExpr::Kind::String;
      while (pos_ < text_.size() && text_[pos_] != '"') {
        if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) advance();
        e.text += text_[pos_];
        advance();
      }
      if (pos_ >= text_.size()) throw ParseError(e.line, e.column, "unterminated string");
      advance();
      return e;
    }
    e.kind = SExpr::Kind::Symbol;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != '(' &&
           text_[pos_] != ')' && text_[pos_] != ';' && text_[pos_] != '"') {
      e.text += text_[pos_];
      advance();
    }
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_, column_, what); }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skipSpace() {
    while (pos_ < text_.size()) {
      if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        advance();
      } else if (text_[pos_] == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

[[noreturn]] void fail(const SExpr& e, const std::string& what) { throw ParseError(e.line, e.column, what); }

std::string describe(const SExpr& e) {
  switch (e.kind) {
    case SExpr::Kind::Symbol:
      return "'" + e.text + "'";
    case SExpr::Kind::String:
      return "a string";
    case SExpr::Kind::List:
      return e.items.empty() || !e.items[0].isSymbol() ? "a list" : "(" + e.items[0].text + " ...)";
  }
  return "?";
}

std::optional<Nat> asNumber(const SExpr& e) {
  if (!e.isSymbol() || e.text.empty()) return std::nullopt;
  Nat value = 0;
  auto [ptr, ec] = std::from_chars(e.text.data(), e.text.data() + e.text.size(), value);
  if (ec != std::errc{} || ptr != e.text.data() + e.text.size()) return std::nullopt;
  return value;
}

Nat number(const SExpr& e) {
  if (auto n = asNumber(e)) return *n;
  fail(e, "expected a natural number, got " + describe(e));
}

const std::string& symbol(const SExpr& e) {
  if (!e.isSymbol() || asNumber(e)) fail(e, "expected a symbol, got " + describe(e));
  return e.text;
}

Prefix numberList(const SExpr& e) {
  if (!e.isList()) fail(e, "expected a list of naturals, got " + describe(e));
  Prefix out;
  for (const auto& item : e.items) out.push_back(number(item));
  return out;
}

const std::string& head(const SExpr& e, const std::string& what) {
  if (!e.isList() || e.items.empty() || !e.items[0].isSymbol()) fail(e, "expected " + what + ", got " + describe(e));
  return e.items[0].text;
}

void arity(const SExpr& e, std::size_t n) {
  if (e.items.size() != n + 1)
    fail(e, "(" + e.items[0].text + " ...) takes " + std::to_string(n) + " argument" + (n == 1 ? "" : "s") + ", got " +
                std::to_string(e.items.size() - 1));
}

// Keyword arguments from position `from`; returns the positional rest.
std::vector<const SExpr*> keywords(const SExpr& e, std::size_t from, std::map<std::string, const SExpr*>& out) {
  std::vector<const SExpr*> rest;
  for (std::size_t i = from; i < e.items.size(); ++i) {
    const SExpr& item = e.items[i];
    if (item.isSymbol() && item.text.size() > 1 && item.text[0] == ':') {
      if (i + 1 >= e.items.size()) fail(item, "keyword " + item.text + " without a value");
      if (out.contains(item.text.substr(1))) fail(item, "duplicate keyword " + item.text);
      out[item.text.substr(1)] = &e.items[++i];
    } else {
      rest.push_back(&item);
    }
  }
  return rest;
}

void onlyKeywords(const SExpr& e, const std::map<std::string, const SExpr*>& kw,
                  std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : kw)
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      fail(*value, "unknown keyword :" + key + " in (" + e.items[0].text + " ...)");
}

TermPtr parseTerm(const SExpr& e, const Signature& sig) {
  if (auto n = asNumber(e)) return constant(*n);
  if (e.isSymbol()) {
    if (e.text.empty() || e.text[0] == ':') fail(e, "expected a term, got " + describe(e));
    return variable(e.text);
  }
  const std::string& h = head(e, "a term");
  std::vector<TermPtr> args;
  if (h == "f") {
    arity(e, 1);
    return readF(parseTerm(e.items[1], sig));
  }
  if (h == ":fun" || h == ":pfun") {
    if (e.items.size() < 2) fail(e, "missing symbol name");
    const std::string& name = symbol(e.items[1]);
    for (std::size_t i = 2; i < e.items.size(); ++i) args.push_back(parseTerm(e.items[i], sig));
    if (h == ":fun") {
      if (!sig.hasFunction(name)) fail(e.items[1], "unknown function '" + name + "'");
      const std::size_t want = sig.function(name).arity;
      if (args.size() != want)
        fail(e, "function '" + name + "' takes " + std::to_string(want) + " arguments, got " +
                    std::to_string(args.size()));
      return apply(name, std::move(args));
    }
    if (!sig.hasPrefixFunctional(name)) fail(e.items[1], "unknown prefix functional '" + name + "'");
    const std::size_t want = sig.prefixFunctional(name).arity + 1;
    if (args.size() != want)
      fail(e, "prefix functional '" + name + "' takes " + std::to_string(want) + " arguments, got " +
                  std::to_string(args.size()));
    return applyPrefix(name, std::move(args));
  }
  fail(e, "unknown term form " + describe(e));
}

}  // namespace

SExpr readSExpr(std::string_view text) {
  Reader r(text);
  SExpr e = r.read();
  if (!r.atEnd()) {
    SExpr extra = r.read();
    fail(extra, "trailing input after the expression");
  }
  return e;
}

std::vector<SExpr> readAll(std::string_view text) {
  Reader r(text);
  std::vector<SExpr> out;
  while (!r.atEnd()) out.push_back(r.read());
  return out;
}

Point parsePoint(const SExpr& e) {
  if (head(e, "(point ...)") != "point") fail(e, "expected (point ...), got " + describe(e));
  std::map<std::string, const SExpr*> kw;
  auto rest = keywords(e, 1, kw);
  if (!rest.empty()) fail(*rest[0], "unexpected " + describe(*rest[0]) + " in (point ...)");
  onlyKeywords(e, kw, {"pre", "per"});
  if (!kw.contains("per")) fail(e, "(point ...) needs :per");
  Prefix pre = kw.contains("pre") ? numberList(*kw["pre"]) : Prefix{};
  Prefix per = numberList(*kw["per"]);
  if (per.empty()) fail(*kw["per"], "empty period");
  return Point(std::move(pre), std::move(per));
}

Point parsePoint(std::string_view text) { return parsePoint(readSExpr(text)); }

FormulaPtr parseFormula(const SExpr& e, const Signature& sig) {
  const std::string& h = head(e, "a formula");
  if (h == "=") {
    arity(e, 2);
    return equal(parseTerm(e.items[1], sig), parseTerm(e.items[2], sig));
  }
  if (h == ":pred") {
    if (e.items.size() < 2) fail(e, "missing predicate name");
    const std::string& name = symbol(e.items[1]);
    if (!sig.hasPredicate(name)) fail(e.items[1], "unknown predicate '" + name + "'");
    std::vector<TermPtr> args;
    for (std::size_t i = 2; i < e.items.size(); ++i) args.push_back(parseTerm(e.items[i], sig));
    const std::size_t want = sig.predicate(name).arity;
    if (args.size() != want)
      fail(e, "predicate '" + name + "' takes " + std::to_string(want) + " arguments, got " +
                  std::to_string(args.size()));
    return predicate(name, std::move(args));
  }
  if (h == "not") {
    arity(e, 1);
    return negate(parseFormula(e.items[1], sig));
  }
  if (h == "and" || h == "or") {
    std::vector<FormulaPtr> parts;
    for (std::size_t i = 1; i < e.items.size(); ++i) parts.push_back(parseFormula(e.items[i], sig));
    return h == "and" ? conj(std::move(parts)) : disj(std::move(parts));
  }
  if (h == "exists" || h == "forall") {
    arity(e, 2);
    const std::string& var = symbol(e.items[1]);
    if (var[0] == ':') fail(e.items[1], "bad variable name '" + var + "'");
    auto body = parseFormula(e.items[2], sig);
    return h == "exists" ? exists(var, std::move(body)) : forall(var, std::move(body));
  }
  fail(e, "unknown formula form " + describe(e));
}

Sentence parseSentence(std::string_view text, const Signature& sig) {
  const SExpr e = readSExpr(text);
  FormulaPtr phi = parseFormula(e, sig);
  auto free = freeVariables(*phi);
  if (!free.empty()) fail(e, "free variable '" + free.front() + "' in sentence");
  return phi;
}

FamilyPtr parseFamily(const SExpr& e, const Signature& sig) {
  const std::string& h = head(e, "a family");
  if (h == "template") {
    if (e.items.size() < 2) fail(e, "missing template name");
    const std::string& name = symbol(e.items[1]);
    auto names = templateNames();
    if (std::find(names.begin(), names.end(), name) == names.end())
      fail(e.items[1], "unknown template '" + name + "'");
    std::map<std::string, const SExpr*> kw;
    auto rest = keywords(e, 2, kw);
    if (!rest.empty()) fail(*rest[0], "unexpected " + describe(*rest[0]) + " in (template ...)");
    std::map<std::string, Nat> params;
    for (const auto& [key, value] : kw) params[key] = number(*value);
    try {
      auto fam = templateFamily(name, params);
      fam->child(0);
      return fam;
    } catch (const CodeError& err) {
      fail(e, err.what());
    }
  }
  if (h == "tail") {
    arity(e, 2);
    if (!e.items[1].isList()) fail(e.items[1], "expected a list of codes");
    std::vector<CodePtr> list;
    for (const auto& c : e.items[1].items) list.push_back(parseCode(c, sig));
    return explicitTail(std::move(list), parseCode(e.items[2], sig));
  }
  if (h == "subst") {
    arity(e, 2);
    const std::string& var = symbol(e.items[1]);
    auto body = parseFormula(e.items[2], sig);
    for (const auto& v : freeVariables(*body))
      if (v != var) fail(e.items[2], "free variable '" + v + "' in (subst ...)");
    return substitutionFamily(var, std::move(body));
  }
  if (h == "dual" || h == "flatten" || h == "flatten-rows") {
    arity(e, 1);
    auto inner = parseFamily(e.items[1], sig);
    if (h == "dual") return dualFamily(std::move(inner));
    if (h == "flatten") return flattenFamily(std::move(inner));
    return flattenRowsFamily(std::move(inner));
  }
  if (h == "wrap-rows") {
    arity(e, 2);
    const std::string& kind = symbol(e.items[1]);
    if (kind != "union" && kind != "inter") fail(e.items[1], "expected union or inter");
    return wrapRowsFamily(parseFamily(e.items[2], sig), kind == "union");
  }
  if (h == "rule" || h == "guess-tail" || h == "guess-row")
    fail(e, "(" + h + " ...) is a programmatic family and cannot be read back");
  fail(e, "unknown family form " + describe(e));
}

CodePtr parseCode(const SExpr& e, const Signature& sig) {
  const std::string& h = head(e, "a code");
  if (h == "cyl" || h == "co-cyl") {
    arity(e, 1);
    Prefix s = numberList(e.items[1]);
    return h == "cyl" ? cylinder(std::move(s)) : coCylinder(std::move(s));
  }
  if (h == "union" || h == "inter") {
    std::vector<CodePtr> parts;
    for (std::size_t i = 1; i < e.items.size(); ++i) parts.push_back(parseCode(e.items[i], sig));
    return h == "union" ? finiteUnion(std::move(parts)) : finiteIntersection(std::move(parts));
  }
  if (h == "iunion" || h == "iinter") {
    arity(e, 1);
    auto fam = parseFamily(e.items[1], sig);
    return h == "iunion" ? indexedUnion(std::move(fam)) : indexedIntersection(std::move(fam));
  }
  if (h == "leaf") {
    arity(e, 1);
    auto phi = parseFormula(e.items[1], sig);
    auto free = freeVariables(*phi);
    if (!free.empty()) fail(e.items[1], "free variable '" + free.front() + "' in leaf");
    return sentenceLeaf(std::move(phi));
  }
  if (h == "catalog") {
    if (e.items.size() < 2) fail(e, "missing catalog name");
    const std::string& name = symbol(e.items[1]);
    std::map<std::string, const SExpr*> kw;
    auto rest = keywords(e, 2, kw);
    if (!rest.empty()) fail(*rest[0], "unexpected " + describe(*rest[0]) + " in (catalog ...)");
    onlyKeywords(e, kw, {"k", "c", "prefix"});
    Nat k = 0;
    if (kw.contains("k")) k = number(*kw["k"]);
    if (kw.contains("c")) k = number(*kw["c"]);
    Prefix prefix = kw.contains("prefix") ? numberList(*kw["prefix"]) : Prefix{};
    try {
      return catalogCode(catalogSet(name, k, std::move(prefix)));
    } catch (const CodeError& err) {
      fail(e.items[1], err.what());
    }
  }
  if (h == "complement") {
    arity(e, 1);
    return complement(parseCode(e.items[1], sig));
  }
  if (h == "guess-event") fail(e, "(guess-event ...) names a programmatic guesser and cannot be read back");
  fail(e, "unknown code form " + describe(e));
}

CodePtr parseCode(std::string_view text, const Signature& sig) { return parseCode(readSExpr(text), sig); }

namespace {

std::optional<SynthesisSpec> namedSpec(const std::string& name) {
  if (name == "whole-space") return wholeSpaceSpec();
  if (name == "empty-set") return emptySetSpec();
  if (name == "equal-first-two") return catalogSpec(catalogSet("equal-first-two"));
  for (const char* stem : {"exactly-zeros-", "at-most-zeros-", "first-value-equals-"}) {
    const std::string s = stem;
    if (name.starts_with(s)) {
      Nat k = 0;
      const char* first = name.data() + s.size();
      const char* last = name.data() + name.size();
      auto [ptr, ec] = std::from_chars(first, last, k);
      if (ec == std::errc{} && ptr == last && first != last) return catalogSpec(catalogSet(s.substr(0, s.size() - 1), k));
    }
  }
  return std::nullopt;
}

}  // namespace

SynthesisSpec parseSynthesisSpec(std::string_view text, const Signature& sig) {
  const SExpr e = readSExpr(text);
  if (e.isSymbol()) {
    if (auto spec = namedSpec(e.text)) return *spec;
    fail(e, "unknown synthesis spec '" + e.text + "'");
  }
  if (head(e, "(synthesis ...)") != "synthesis") fail(e, "expected (synthesis ...), got " + describe(e));
  std::map<std::string, const SExpr*> kw;
  auto rest = keywords(e, 1, kw);
  onlyKeywords(e, kw, {"name", "order", "listing"});
  if (rest.size() != 1) fail(e, "(synthesis ...) takes exactly one body");
  const SExpr& body = *rest[0];
  SynthesisSpec spec;
  const std::string& bh = head(body, "a synthesis body");
  if (bh == "pair") {
    std::map<std::string, const SExpr*> pkw;
    auto forms = keywords(body, 1, pkw);
    onlyKeywords(body, pkw, {"level"});
    if (forms.size() != 2) fail(body, "(pair ...) takes a union form and an intersection form");
    spec.pair.unionForm = parseCode(*forms[0], sig);
    spec.pair.intersectionForm = parseCode(*forms[1], sig);
    if (spec.pair.unionForm->kind != Code::Kind::IndexedUnion)
      fail(*forms[0], "the union form must be (iunion ...)");
    if (spec.pair.intersectionForm->kind != Code::Kind::IndexedIntersection)
      fail(*forms[1], "the intersection form must be (iinter ...)");
    spec.pair.level = pkw.contains("level") ? static_cast<unsigned>(number(*pkw["level"])) : 2;
    spec.name = "custom";
  } else if (bh == "catalog") {
    const CodePtr c = parseCode(body, sig);
    if (c->kind != Code::Kind::Catalog || c->complemented) fail(body, "expected a plain catalog set");
    try {
      spec = catalogSpec(c->catalog);
    } catch (const CodeError& err) {
      fail(body, err.what());
    }
  } else if (bh == "whole-space" || bh == "empty-set") {
    arity(body, 0);
    spec = *namedSpec(bh);
  } else {
    fail(body, "unknown synthesis body " + describe(body));
  }
  if (kw.contains("name")) spec.name = symbol(*kw["name"]);
  if (kw.contains("order")) spec.order = static_cast<unsigned>(number(*kw["order"]));
  if (kw.contains("listing")) {
    spec.listingOrder = symbol(*kw["listing"]);
    if (spec.listingOrder != "interleaved") fail(*kw["listing"], "unknown listing order '" + spec.listingOrder + "'");
  }
  return spec;
}

std::string toString(const SynthesisSpec& spec) {
  std::string body;
  if (spec.name == "whole-space" || spec.name == "empty-set")
    body = "(" + spec.name + ")";
  else if (spec.catalog)
    body = toString(*spec.catalog);
  else
    body = "(pair " + toString(*spec.pair.unionForm) + " " + toString(*spec.pair.intersectionForm) + " :level " +
           std::to_string(spec.pair.level) + ")";
  return "(synthesis :name " + spec.name + " :order " + std::to_string(spec.order) + " :listing " +
         spec.listingOrder + " " + body + ")";
}

}  // namespace lopsided
