#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "json.hpp"
#include "lopsided/borel.hpp"
#include "lopsided/dsl.hpp"
#include "lopsided/error.hpp"
#include "lopsided/game.hpp"
#include "lopsided/guessing.hpp"

using namespace lopsided;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kUndecided = 2;
constexpr int kParse = 3;

struct Globals {
  std::size_t fuel = 64;
  std::size_t rounds = 1000;
  std::size_t window = 100;
  unsigned order = 0;
  std::uint64_t seed = 20261018;
  std::string format = "json";
};

struct Context {
  Globals g;
  std::string command;
  std::map<std::string, std::string> inputs;

  bool text() const { return g.format == "text"; }

  json manifest() const {
    return {{"command", command},
            {"inputs", inputs},
            {"config",
             {{"fuel", g.fuel},
              {"rounds", g.rounds},
              {"window", g.window},
              {"order", g.order},
              {"listing", "interleaved"},
              {"seed", g.seed},
              {"format", g.format}}},
            {"version", "0.1.0"}};
  }
};

void printText(const json& j, const std::string& indent = "") {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it->is_object()) {
      std::cout << indent << it.key() << ":\n";
      printText(*it, indent + "  ");
    } else if (it->is_array() && !it->empty() && it->front().is_object()) {
      std::cout << indent << it.key() << ":\n";
      for (const auto& item : *it) {
        std::cout << indent << "  -\n";
        printText(item, indent + "    ");
      }
    } else {
      std::cout << indent << it.key() << ": " << (it->is_string() ? it->get<std::string>() : it->dump()) << "\n";
    }
  }
}

void emit(const Context& ctx, const json& result) {
  if (ctx.text())
    printText(result);
  else
    std::cout << json{{"manifest", ctx.manifest()}, {"result", result}}.dump() << "\n";
}

json optionalJson(const std::optional<Bit>& b) { return b ? json(*b) : json(nullptr); }
json optionalJson(const std::optional<std::size_t>& n) { return n ? json(*n) : json(nullptr); }

json diagnosticsJson(const std::vector<std::pair<std::string, Nat>>& d) {
  json out = json::object();
  for (const auto& [k, v] : d) out[k] = v;
  return out;
}

std::optional<bool> specTruth(const SynthesisSpec& spec, const Point& p) {
  if (spec.catalog) return exactOracle(*spec.catalog, p);
  if (spec.name == "whole-space") return true;
  if (spec.name == "empty-set") return false;
  return std::nullopt;
}

// fsm-K (seeded finite-state guesser number K) or a bundled heuristic.
NatGuesserPtr resolveGuesser(const std::string& name, std::uint64_t seed) {
  if (name.starts_with("fsm-")) {
    std::size_t k = 0;
    try {
      k = std::stoul(name.substr(4));
    } catch (const std::exception&) {
      throw Error("guessing", "bad finite-state guesser name '" + name + "'");
    }
    return seededFiniteStateGuessers(k + 1, seed)[k];
  }
  return heuristicGuesser(name);
}

// ---------------------------------------------------------------------------

int cmdEval(Context& ctx, const std::string& sentenceText, const std::string& codeText, const std::string& pointText) {
  auto sig = Signature::standard();
  const Point p = parsePoint(pointText);
  json result{{"point", p.toString()}};
  bool unknown = false;
  if (!sentenceText.empty()) {
    Sentence phi = parseSentence(sentenceText, *sig);
    const TruthValue v = evaluate(*phi, p, ctx.g.fuel, *sig);
    result["sentence"] = toString(*phi);
    result["class"] = toString(classify(phi));
    result["value"] = toString(v);
    unknown = v == TruthValue::Unknown;
  } else {
    CodePtr c = parseCode(codeText, *sig);
    const Verdict v = member(*c, p, ctx.g.fuel, *sig);
    result["code"] = toString(*c);
    result["class"] = toString(syntacticClass(*c));
    result["value"] = toString(v);
    unknown = v == Verdict::Unknown;
  }
  emit(ctx, result);
  return unknown ? kUndecided : kOk;
}

json runJson(const LimitRun& run) {
  return {{"limit", optionalJson(run.settled)},
          {"settledAt", run.settled ? json(run.settledAt) : json(nullptr)},
          {"lastGuess", run.last()},
          {"factsFed", run.guesses.size()}};
}

int cmdSynthesize(Context& ctx, const std::string& specText, const std::string& pointText, std::size_t show,
                  std::size_t maxFacts, std::size_t corpus) {
  auto sig = Signature::standard();
  const SynthesisSpec spec = parseSynthesisSpec(specText, *sig);
  Synthesis syn = synthesizeMuNu(spec, ctx.g.fuel);
  json listing = json::array();
  for (std::size_t i = 0; i < show; ++i) listing.push_back(toString(*syn.source.listing->at(i)));
  json result{{"spec", toString(spec)}, {"guesser", syn.guesser->name()}, {"listing", listing}};

  std::vector<Point> points;
  if (!pointText.empty())
    points.push_back(parsePoint(pointText));
  else
    points = seededCorpus(corpus, ctx.g.seed);

  bool undecided = false;
  json runs = json::array();
  for (const Point& p : points) {
    json entry{{"point", p.toString()}};
    try {
      LimitRun run = runToSettlement(*syn.guesser, syn.source, p, maxFacts);
      auto session = syn.guesser->start();
      FactStream stream(syn.source, p);
      for (std::size_t n = 0; n < run.guesses.size(); ++n) session->feed(stream.bit(n));
      entry.update(runJson(run));
      entry["diagnostics"] = diagnosticsJson(session->diagnostics());
      if (auto truth = specTruth(spec, p)) {
        entry["truth"] = *truth ? 1 : 0;
        if (run.settled) entry["agrees"] = (*run.settled == 1) == *truth;
      }
      undecided = undecided || !run.settled;
    } catch (const UndecidedError& e) {
      entry["error"] = e.what();
      undecided = true;
    }
    runs.push_back(entry);
  }
  result["runs"] = runs;
  emit(ctx, result);
  return undecided ? kUndecided : kOk;
}

int cmdPlay(Context& ctx, const std::string& specText, const std::string& guesserName, const std::string& target,
            const std::string& pointText, bool quiet) {
  auto sig = Signature::standard();
  const Point p = parsePoint(pointText);
  GameConfig cfg;
  cfg.rounds = ctx.g.rounds;
  cfg.window = ctx.g.window;
  cfg.fuel = ctx.g.fuel;
  cfg.order = ctx.g.order;
  validate(cfg);

  GameTrace trace;
  std::optional<bool> truth;
  if (!specText.empty()) {
    const SynthesisSpec spec = parseSynthesisSpec(specText, *sig);
    Synthesis syn = synthesizeMuNu(spec, ctx.g.fuel);
    cfg.mode = GameConfig::Mode::Fact;
    trace = runGame(p, *syn.guesser, syn.source, cfg);
    truth = specTruth(spec, p);
  } else {
    NatGuesserPtr bob = resolveGuesser(guesserName, ctx.g.seed);
    trace = runGame(p, *bob, cfg);
    truth = exactOracle(catalogSet(target), p);
  }

  json summary{{"flips", trace.flips},
               {"stabilizationIndex", optionalJson(trace.stabilizationIndex)},
               {"finalGuess", optionalJson(trace.finalGuess)},
               {"window", cfg.window},
               {"rounds", trace.records.size()}};
  std::optional<Evidence> verdict;
  if (truth) {
    verdict = adjudicate(trace, *truth);
    summary["truth"] = *truth ? 1 : 0;
    summary["verdict"] = toString(*verdict);
  } else {
    summary["verdict"] = nullptr;
  }
  if (trace.aborted) summary["aborted"] = *trace.aborted;

  if (ctx.text()) {
    if (!quiet)
      for (const auto& r : trace.records) std::cout << r.round << " " << r.input << " " << int(r.guess) << "\n";
    printText(json{{"summary", summary}});
  } else {
    std::cout << json{{"manifest", ctx.manifest()}}.dump() << "\n";
    if (!quiet)
      for (const auto& r : trace.records) {
        json line{{"round", r.round}, {"input", r.input}, {"guess", r.guess}};
        if (!r.diagnostics.empty()) line["diagnostics"] = diagnosticsJson(r.diagnostics);
        std::cout << line.dump() << "\n";
      }
    std::cout << json{{"summary", summary}}.dump() << "\n";
  }
  if (trace.aborted || (verdict && *verdict == Evidence::UnstableAtHorizon)) return kUndecided;
  return kOk;
}

std::string reprint(const std::string& text, const Signature& sig) {
  const SExpr e = readSExpr(text);
  if (e.isSymbol()) return toString(parseSynthesisSpec(text, sig));
  const std::string& h = e.items.empty() || !e.items[0].isSymbol() ? std::string() : e.items[0].text;
  if (h == "synthesis") return toString(parseSynthesisSpec(text, sig));
  if (h == "point") return parsePoint(e).toString();
  if (h == "exists" || h == "forall" || h == "=" || h == "not" || h == "and" || h == "or" || h == ":pred" ||
      h == "true" || h == "false")
    return toString(*parseSentence(text, sig));
  return toString(*parseCode(e, sig));
}

int cmdRoundtrip(Context& ctx, const std::string& guesserName, const std::string& pointText, std::size_t horizon,
                 const std::string& dslText) {
  auto sig = Signature::standard();
  json result;
  if (!dslText.empty()) {
    const std::string once = reprint(dslText, *sig);
    const std::string twice = reprint(once, *sig);
    result = {{"printed", once}, {"stable", once == twice}};
    emit(ctx, result);
    return kOk;
  }
  NatGuesserPtr g0 = resolveGuesser(guesserName, ctx.g.seed);
  Translation t = prefixToSentenceGuesser(g0);
  NatGuesserPtr back = sentenceToPrefixGuesser(t.guesser, t.source);
  const Point p = parsePoint(pointText);
  const Prefix s = p.prefix(horizon);
  const Bit original = g0->guess(s);
  const Bit composed = back->guess(s);
  result = {{"guesser", g0->name()},
            {"composed", back->name()},
            {"point", p.toString()},
            {"horizon", horizon},
            {"originalGuess", original},
            {"composedGuess", composed},
            {"agrees", original == composed}};
  if (auto fsm = std::dynamic_pointer_cast<const FiniteStateGuesser>(g0)) {
    const Bit limit = fsm->limitOn(p);
    result["limit"] = limit;
    result["composedMatchesLimit"] = composed == limit;
  }
  emit(ctx, result);
  return kOk;
}

int cmdUnify(Context& ctx, const std::string& xText, const std::string& yText, const std::string& specText,
             unsigned level, const std::string& pointText, std::size_t maxFacts, std::size_t corpus) {
  auto sig = Signature::standard();
  CodePtr x, y;
  std::optional<CatalogSet> set;
  if (!specText.empty()) {
    const SynthesisSpec spec = parseSynthesisSpec(specText, *sig);
    if (!spec.catalog) throw Error("borel", "unify --spec needs a catalog set");
    set = spec.catalog;
    x = spec.pair.unionForm;
    y = spec.pair.intersectionForm;
  } else {
    x = parseCode(xText, *sig);
    y = parseCode(yText, *sig);
  }
  DeltaPrimePair unified = unifyFamily(x, y, level, ctx.g.fuel);
  json result{{"x", toString(*x)},
              {"y", toString(*y)},
              {"level", unified.level},
              {"unionForm", toString(*unified.unionForm)},
              {"intersectionForm", toString(*unified.intersectionForm)}};
  std::vector<Point> points;
  if (!pointText.empty())
    points.push_back(parsePoint(pointText));
  else
    points = seededCorpus(corpus, ctx.g.seed);
  bool undecided = false;
  json checks = json::array();
  for (const Point& p : points) {
    const Verdict u = member(*unified.unionForm, p, maxFacts, *sig);
    const Verdict i = member(*unified.intersectionForm, p, maxFacts, *sig);
    json entry{{"point", p.toString()}, {"unionForm", toString(u)}, {"intersectionForm", toString(i)}};
    if (set) entry["truth"] = exactOracle(*set, p) ? 1 : 0;
    undecided = undecided || u == Verdict::Unknown || i == Verdict::Unknown;
    checks.push_back(entry);
  }
  result["checks"] = checks;
  emit(ctx, result);
  return undecided ? kUndecided : kOk;
}

int cmdCompile(Context& ctx, const std::string& codeText, const std::string& pointText) {
  auto sig = Signature::standard();
  CodePtr c = parseCode(codeText, *sig);
  Sentence phi = compileToSentence(c, *sig);
  json result{{"code", toString(*c)}, {"sentence", toString(*phi)}, {"class", toString(classify(phi))}};
  bool undecided = false;
  if (!pointText.empty()) {
    const Point p = parsePoint(pointText);
    const Verdict m = member(*c, p, ctx.g.fuel, *sig);
    const TruthValue v = evaluate(*phi, p, ctx.g.fuel, *sig);
    result["point"] = p.toString();
    result["member"] = toString(m);
    result["value"] = toString(v);
    undecided = m == Verdict::Unknown || v == TruthValue::Unknown;
    if (!undecided) result["agrees"] = (m == Verdict::In) == (v == TruthValue::True);
  }
  emit(ctx, result);
  return undecided ? kUndecided : kOk;
}

int cmdAdversary(Context& ctx, const std::string& guesserName, const std::string& target, std::size_t phaseCap) {
  NatGuesserPtr bob = resolveGuesser(guesserName, ctx.g.seed);
  const CatalogSet set = catalogSet(target);
  AdversaryReport r = diagonalize(*bob, set.id, ctx.g.fuel, phaseCap);
  json prefixTail = json::array();
  const std::size_t from = r.prefix.size() > 40 ? r.prefix.size() - 40 : 0;
  for (std::size_t i = from; i < r.prefix.size(); ++i) prefixTail.push_back(r.prefix[i]);
  json result{{"guesser", bob->name()},
              {"target", catalogName(set.id)},
              {"moves", r.fuelSpent},
              {"flips", r.flips},
              {"prefixTail", prefixTail},
              {"wrongStabilized", r.wrongStabilized},
              {"witness", r.witness ? json(r.witness->toString()) : json(nullptr)},
              {"note", r.note}};
  if (r.witness) {
    result["witnessInTarget"] = exactOracle(set, *r.witness);
    result["guessOnWitness"] = bob->guess(r.witness->prefix(r.prefix.size() + 2 * phaseCap));
  }
  emit(ctx, result);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Eventually periodic points, Borel codes and limit guessers"};
  app.require_subcommand(1);
  app.fallthrough();
  Context ctx;
  app.add_option("--fuel", ctx.g.fuel, "evaluator fuel; moves for adversary")->envname("LOPSIDED_FUEL")->capture_default_str();
  app.add_option("--rounds", ctx.g.rounds, "game rounds")->envname("LOPSIDED_ROUNDS")->capture_default_str();
  app.add_option("--window", ctx.g.window, "trailing run that counts as stable")
      ->envname("LOPSIDED_WINDOW")
      ->capture_default_str();
  app.add_option("--order", ctx.g.order, "fact order")->envname("LOPSIDED_ORDER")->capture_default_str();
  app.add_option("--seed", ctx.g.seed, "corpus and guesser seed")->envname("LOPSIDED_SEED")->capture_default_str();
  app.add_option("--format", ctx.g.format, "json or text")
      ->envname("LOPSIDED_FORMAT")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();

  std::string sentence, code, point, spec, guesser, target = "eventually-zero", dsl, x, y;
  std::size_t show = 8, maxFacts = 5000, corpus = 20, horizon = 10000, phaseCap = 500;
  unsigned level = 2;
  bool quiet = false;

  auto* eval = app.add_subcommand("eval", "evaluate a sentence or code membership at a point");
  auto* evalInput = eval->add_option_group("input");
  evalInput->add_option("--sentence", sentence);
  evalInput->add_option("--code", code);
  evalInput->require_option(1);
  eval->add_option("--point", point)->required();

  auto* synth = app.add_subcommand("synthesize", "build the mu/nu guesser of a Delta' pair and run it");
  synth->add_option("--spec", spec)->required();
  synth->add_option("--point", point);
  synth->add_option("--show", show, "listing entries to print")->capture_default_str();
  synth->add_option("--max-facts", maxFacts)->capture_default_str();
  synth->add_option("--corpus", corpus, "seeded points when no --point")->capture_default_str();

  auto* play = app.add_subcommand("play", "run the game and print the round trace");
  auto* playBob = play->add_option_group("bob");
  playBob->add_option("--spec", spec, "fact game with the synthesized guesser");
  playBob->add_option("--guesser", guesser, "prefix game with fsm-K or a heuristic");
  playBob->require_option(1);
  play->add_option("--target", target, "catalog set for prefix games")->capture_default_str();
  play->add_option("--point", point)->required();
  play->add_flag("--quiet", quiet, "summary only");

  auto* roundtrip = app.add_subcommand("roundtrip", "prefix guesser to fact guesser and back, or DSL print/parse");
  auto* rtInput = roundtrip->add_option_group("input");
  rtInput->add_option("--guesser", guesser);
  rtInput->add_option("--dsl", dsl);
  rtInput->require_option(1);
  roundtrip->add_option("--point", point, "required with --guesser");
  roundtrip->add_option("--horizon", horizon)->capture_default_str();

  auto* unify = app.add_subcommand("unify", "one family serving both forms of a Delta set");
  unify->add_option("--x", x, "Sigma form");
  unify->add_option("--y", y, "Pi form");
  unify->add_option("--spec", spec, "catalog set; uses its standard forms");
  unify->add_option("--level", level)->capture_default_str();
  unify->add_option("--point", point);
  unify->add_option("--max-facts", maxFacts)->capture_default_str();
  unify->add_option("--corpus", corpus)->capture_default_str();

  auto* compile = app.add_subcommand("compile", "compile a normal-form code to a sentence");
  compile->add_option("--code", code)->required();
  compile->add_option("--point", point);

  auto* adversary = app.add_subcommand("adversary", "diagonalize against a prefix guesser");
  adversary->add_option("--guesser", guesser)->required();
  adversary->add_option("--target", target)->capture_default_str();
  adversary->add_option("--phase-cap", phaseCap)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }

  auto record = [&](const char* key, const std::string& value) {
    if (!value.empty()) ctx.inputs[key] = value;
  };
  record("sentence", sentence);
  record("code", code);
  record("point", point);
  record("spec", spec);
  record("guesser", guesser);
  record("dsl", dsl);
  record("x", x);
  record("y", y);

  try {
    if (eval->parsed()) {
      ctx.command = "eval";
      return cmdEval(ctx, sentence, code, point);
    }
    if (synth->parsed()) {
      ctx.command = "synthesize";
      return cmdSynthesize(ctx, spec, point, show, maxFacts, corpus);
    }
    if (play->parsed()) {
      ctx.command = "play";
      if (!guesser.empty()) ctx.inputs["target"] = target;
      return cmdPlay(ctx, spec, guesser, target, point, quiet);
    }
    if (roundtrip->parsed()) {
      ctx.command = "roundtrip";
      if (!guesser.empty() && point.empty()) throw Error("cli", "roundtrip --guesser needs --point");
      return cmdRoundtrip(ctx, guesser, point, horizon, dsl);
    }
    if (unify->parsed()) {
      ctx.command = "unify";
      if (spec.empty() && (x.empty() || y.empty())) throw Error("cli", "unify needs --x and --y, or --spec");
      return cmdUnify(ctx, x, y, spec, level, point, maxFacts, corpus);
    }
    if (compile->parsed()) {
      ctx.command = "compile";
      return cmdCompile(ctx, code, point);
    }
    if (adversary->parsed()) {
      ctx.command = "adversary";
      ctx.inputs["target"] = target;
      return cmdAdversary(ctx, guesser, target, phaseCap);
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParse;
  } catch (const UndecidedError& e) {
    std::cerr << "undecided: " << e.what() << "\n";
    return kUndecided;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
