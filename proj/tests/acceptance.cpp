#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "lopsided/borel.hpp"
#include "lopsided/error.hpp"
#include "lopsided/game.hpp"
#include "lopsided/guessing.hpp"
#include "oracles.hpp"

using namespace lopsided;

namespace {

constexpr std::uint64_t kSeed = 20261018;

struct Outcome {
  bool pass = true;
  std::string detail;
};

const Signature& sig() {
  static auto s = Signature::standard();
  return *s;
}

std::vector<CatalogSet> deltaTwoSets() {
  return {catalogSet("first-value-equals", 2), catalogSet("exactly-zeros", 0), catalogSet("exactly-zeros", 1),
          catalogSet("exactly-zeros", 2),      catalogSet("at-most-zeros", 2), catalogSet("equal-first-two")};
}

std::string str(std::size_t n) { return std::to_string(n); }

std::optional<Nat> diagnostic(const RoundRecord& r, const std::string& name) {
  for (const auto& [k, v] : r.diagnostics)
    if (k == name) return v;
  return std::nullopt;
}

// ---------------------------------------------------------------------------

Outcome guessability() {
  const auto start = std::chrono::steady_clock::now();
  const auto corpus = seededCorpus(100, kSeed);
  std::size_t pairMismatches = 0, wrong = 0, unsettled = 0, unstable = 0, worst = 0;
  for (const CatalogSet& set : deltaTwoSets()) {
    const DeltaPrimePair pair = catalogPair(set);
    for (const Point& p : corpus) {
      const bool truth = exactOracle(set, p);
      pairMismatches += oracles::unionOfIntersections(pair, p, sig()) != truth;
      pairMismatches += oracles::intersectionOfUnions(pair, p, sig()) != truth;
    }
    Synthesis syn = synthesizeMuNu(catalogSpec(set));
    for (const Point& p : corpus) {
      LimitRun run = runToSettlement(*syn.guesser, syn.source, p, 100000);
      if (!run.settled) {
        ++unsettled;
        continue;
      }
      worst = std::max(worst, run.settledAt);
      wrong += (*run.settled == 1) != exactOracle(set, p);
      // The certified limit must hold on the facts that follow.
      auto session = syn.guesser->start();
      FactStream stream(syn.source, p);
      for (std::size_t n = 0; n < run.settledAt + 500; ++n) {
        const Bit g = session->feed(stream.bit(n));
        if (n + 1 >= run.settledAt && g != *run.settled) {
          ++unstable;
          break;
        }
      }
    }
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Outcome out;
  out.pass = pairMismatches == 0 && wrong == 0 && unsettled == 0 && unstable == 0 && worst <= 100000 && seconds < 60;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "6 sets x 100 points; pair mismatches %zu, unsettled %zu, wrong limits %zu, broken after settling %zu, "
                "worst settlement %zu facts, %.2f s",
                pairMismatches, unsettled, wrong, unstable, worst, seconds);
  out.detail = buf;
  return out;
}

Outcome muNuInternals() {
  const auto corpus = seededCorpus(100, kSeed);
  GameConfig cfg;
  cfg.mode = GameConfig::Mode::Fact;
  cfg.rounds = 4000;
  cfg.window = 100;
  std::size_t points = 0, rounds = 0, muAbove = 0, nuNotAbove = 0, missing = 0;
  for (const CatalogSet& set : deltaTwoSets()) {
    const DeltaPrimePair pair = catalogPair(set);
    Synthesis syn = synthesizeMuNu(catalogSpec(set));
    for (const Point& p : corpus) {
      if (!exactOracle(set, p)) continue;
      ++points;
      const auto witness = oracles::witnessRow(pair, p, sig());
      GameTrace trace = runGame(p, *syn.guesser, syn.source, cfg);
      if (!witness || trace.aborted || !trace.stabilizationIndex) {
        ++missing;
        continue;
      }
      for (const RoundRecord& r : trace.records) {
        const auto mu = diagnostic(r, "mu");
        const auto nu = diagnostic(r, "nu");
        if (!mu || !nu) {
          ++missing;
          break;
        }
        ++rounds;
        muAbove += *mu > *witness;
        if (r.round >= *trace.stabilizationIndex) nuNotAbove += *nu <= *mu;
      }
    }
  }
  Outcome out;
  out.pass = points > 0 && muAbove == 0 && nuNotAbove == 0 && missing == 0;
  out.detail = str(points) + " in-set points, " + str(rounds) + " rounds; mu above witness " + str(muAbove) +
               ", nu <= mu after stabilization " + str(nuNotAbove) + ", incomplete traces " + str(missing);
  return out;
}

Outcome extraction() {
  const auto corpus = seededCorpus(100, kSeed);
  const auto sample = seededCorpus(50, kSeed + 3);
  std::size_t decided = 0, total = 0, wrong = 0, expansionMismatches = 0, expansionChecks = 0;
  for (const CatalogSet& set : deltaTwoSets()) {
    Synthesis syn = synthesizeMuNu(catalogSpec(set));
    CodePair codes = guesserToCodes(syn.guesser, syn.source);
    for (const Point& p : corpus) {
      const Verdict truth = verdictOf(exactOracle(set, p));
      for (const CodePtr& c : {codes.unionForm, codes.intersectionForm}) {
        const Verdict v = member(*c, p, 1000, sig());
        ++total;
        if (v == Verdict::Unknown) continue;
        ++decided;
        wrong += v != truth;
      }
    }
    for (std::size_t j = 0; j <= 12; ++j)
      for (Bit bit : {Bit{0}, Bit{1}}) {
        const auto expansion = expandGuessEvent(*syn.guesser, j, bit);
        const CodePtr leaf = guessEvent({syn.guesser, syn.source, j, bit});
        for (const Point& p : sample) {
          FactStream stream(syn.source, p);
          ++expansionChecks;
          expansionMismatches += member(*leaf, p, 64, sig()) != verdictOf(expansionContains(expansion, stream));
        }
      }
  }
  Outcome out;
  out.pass = wrong == 0 && expansionMismatches == 0;
  out.detail = "code verdicts decided " + str(decided) + "/" + str(total) + " at fuel 1000, wrong " + str(wrong) +
               "; expansion checks " + str(expansionChecks) + ", mismatches " + str(expansionMismatches);
  return out;
}

Outcome roundTrip() {
  const auto start = std::chrono::steady_clock::now();
  const auto corpus = seededCorpus(100, kSeed);
  std::size_t agree = 0, total = 0;
  for (const auto& g0 : seededFiniteStateGuessers(20, kSeed)) {
    Translation t = prefixToSentenceGuesser(g0);
    NatGuesserPtr back = sentenceToPrefixGuesser(t.guesser, t.source);
    for (const Point& p : corpus) {
      ++total;
      agree += back->guess(p.prefix(10000)) == g0->limitOn(p);
    }
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  char buf[160];
  std::snprintf(buf, sizeof buf, "20 finite-state guessers x 100 points at horizon 10000: %zu/%zu agree, %.2f s", agree,
                total, seconds);
  return {agree == total, buf};
}

Outcome singleFamily() {
  const CatalogSet set = catalogSet("exactly-zeros", 1);
  const DeltaPrimePair pair = catalogPair(set);
  const DeltaPrimePair z = unifyFamily(pair.unionForm, pair.intersectionForm, 2);
  std::size_t decided = 0, wrong = 0;
  for (const Point& p : seededCorpus(100, kSeed)) {
    const Verdict truth = verdictOf(exactOracle(set, p));
    const Verdict u = member(*z.unionForm, p, 1000, sig());
    const Verdict i = member(*z.intersectionForm, p, 1000, sig());
    wrong += (u != Verdict::Unknown && u != truth) + (i != Verdict::Unknown && i != truth);
    decided += u != Verdict::Unknown && i != Verdict::Unknown;
  }
  // Both forms read one family Z_ij.
  const bool shared = toString(*innerD(z, 2, 3)) == toString(*innerE(z, 3, 2));
  Outcome out;
  out.pass = wrong == 0 && decided >= 80 && shared;
  out.detail = "both forms decided on " + str(decided) + "/100 points at fuel 1000, wrong " + str(wrong) +
               (shared ? ", one shared family" : ", forms read different families");
  return out;
}

Outcome compilerAgreement() {
  const CodePtr open = indexedUnion(templateFamily("first-repeat", {}));
  const CodePtr closed = complement(open);
  const CodePtr sigma2 = *cylinderSigmaTwoForm(catalogSet("eventually-zero"));
  const CodePtr pi3 = indexedIntersection(constantFamily(sigma2));
  const CatalogSet equalFirstTwo = catalogSet("equal-first-two");
  const CatalogSet eventuallyZero = catalogSet("eventually-zero");
  struct Case {
    std::string name;
    CodePtr code;
    unsigned level;
    std::function<bool(const Point&)> truth;
  };
  const std::vector<Case> cases{
      {"open", open, 1, [&](const Point& p) { return exactOracle(equalFirstTwo, p); }},
      {"closed", closed, 1, [&](const Point& p) { return !exactOracle(equalFirstTwo, p); }},
      {"sigma2", sigma2, 2, [&](const Point& p) { return exactOracle(eventuallyZero, p); }},
      {"pi3", pi3, 3, [&](const Point& p) { return exactOracle(eventuallyZero, p); }},
  };
  const auto sample = seededCorpus(50, kSeed + 6);
  std::size_t unsound = 0, wrongLevel = 0;
  std::string counts;
  for (const Case& c : cases) {
    auto local = Signature::standard();
    const Sentence phi = compileToSentence(c.code, *local);
    wrongLevel += classify(phi).level != c.level;
    std::size_t decided = 0;
    for (const Point& p : sample) {
      const TruthValue v = evaluate(*phi, p, 64, *local);
      if (v == TruthValue::Unknown) continue;
      ++decided;
      unsound += (v == TruthValue::True) != c.truth(p);
    }
    counts += (counts.empty() ? "" : ", ") + c.name + " " + str(decided) + "/50";
  }
  Outcome out;
  out.pass = unsound == 0 && wrongLevel == 0;
  out.detail = "decided " + counts + "; unsound " + str(unsound) + ", wrong quantifier depth " + str(wrongLevel);
  return out;
}

// Random quantifier-free sentences over f, numerals, add, le and zeros-below.
class SentenceGenerator {
 public:
  explicit SentenceGenerator(std::uint64_t seed) : rng_(seed) {}

  FormulaPtr general(int depth) {
    if (depth == 0 || pick(3) == 0) {
      switch (pick(3)) {
        case 0:
          return equal(term(2), term(2));
        case 1:
          return predicate("le", {term(2), term(2)});
        default:
          return valueAt(pick(8), pick(6));
      }
    }
    return connective(depth, [this](int d) { return general(d); });
  }

  FormulaPtr atomic(int depth) {
    if (depth == 0 || pick(3) == 0) return valueAt(pick(10), pick(6));
    return connective(depth, [this](int d) { return atomic(d); });
  }

 private:
  Nat pick(Nat n) { return rng_() % n; }

  FormulaPtr connective(int depth, const std::function<FormulaPtr(int)>& sub) {
    switch (pick(3)) {
      case 0:
        return negate(sub(depth - 1));
      case 1:
        return conj({sub(depth - 1), sub(depth - 1)});
      default:
        return disj({sub(depth - 1), sub(depth - 1)});
    }
  }

  TermPtr term(int depth) {
    const Nat k = depth == 0 ? pick(2) : pick(5);
    switch (k) {
      case 0:
        return constant(pick(6));
      case 1:
        return readF(constant(pick(8)));
      case 2:
        return apply("add", {term(depth - 1), term(depth - 1)});
      case 3:
        return applyPrefix("zeros-below", {constant(pick(8)), constant(pick(8))});
      default:
        return readF(term(depth - 1));
    }
  }

  std::mt19937_64 rng_;
};

Nat largestAtomIndex(const Formula& phi) {
  if (auto atom = asValueAtom(phi)) return atom->first;
  Nat best = 0;
  for (const auto& c : phi.children) best = std::max(best, largestAtomIndex(*c));
  return best;
}

Outcome determination() {
  SentenceGenerator gen(kSeed + 7);
  std::vector<FormulaPtr> general, atomic;
  for (int i = 0; i < 100; ++i) general.push_back(gen.general(3));
  for (int i = 0; i < 100; ++i) atomic.push_back(gen.atomic(3));
  const auto points = seededCorpus(20, kSeed + 8);
  std::size_t checks = 0, failures = 0, boundMismatches = 0;
  auto check = [&](const FormulaPtr& phi, const Point& p) {
    ++checks;
    const Nat k = determinationBound(*phi, p, sig());
    const auto decided = determinedBy(*phi, p.prefix(k + 1), sig());
    failures += !decided || *decided != truthBit(*phi, p, 0, sig());
    return k;
  };
  for (const auto& phi : general)
    for (const Point& p : points) check(phi, p);
  for (const auto& phi : atomic)
    for (const Point& p : points) {
      const Nat k = check(phi, p);
      Nat minimal = 0;
      while (!determinedBy(*phi, p.prefix(minimal + 1), sig())) ++minimal;
      boundMismatches += k != largestAtomIndex(*phi) || minimal != k;
    }
  Outcome out;
  out.pass = failures == 0 && boundMismatches == 0;
  out.detail = str(checks) + " sentence/point checks, undetermined or wrong " + str(failures) +
               "; atomic bound mismatches " + str(boundMismatches) + "/" + str(atomic.size() * points.size());
  return out;
}

Outcome separation() {
  const auto start = std::chrono::steady_clock::now();
  const CatalogSet target = catalogSet("eventually-zero");
  std::size_t defeated = 0, total = 0, byFlips = 0, byWitness = 0, refuted = 0;
  for (const auto& bob : heuristicGuessers()) {
    ++total;
    AdversaryReport r = diagonalize(*bob, CatalogId::EventuallyZero, 10000);
    bool confirmed = false;
    if (r.wrongStabilized && r.witness) {
      // The horizon claim only counts if Bob is still wrong far beyond it.
      const Bit late = bob->guess(r.witness->prefix(r.prefix.size() + 20000));
      confirmed = (late == 1) != exactOracle(target, *r.witness);
      refuted += !confirmed;
    }
    byFlips += r.flips >= 10;
    byWitness += r.flips < 10 && confirmed;
    defeated += r.flips >= 10 || confirmed;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "%zu/%zu heuristics defeated within 10000 moves (%zu by flips, %zu by wrong stabilized answer; "
                "%zu horizon claims refuted later), %.2f s",
                defeated, total, byFlips, byWitness, refuted, seconds);
  return {defeated == total && seconds < 30, buf};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"delta-two guessability", guessability},
      {"mu/nu internals", muNuInternals},
      {"representation extraction", extraction},
      {"round-trip translations", roundTrip},
      {"single family", singleFamily},
      {"compiler agreement", compilerAgreement},
      {"determination", determination},
      {"non-guessable separation", separation},
  };
  std::vector<std::size_t> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::stoul(argv[i]));
  if (selected.empty())
    for (std::size_t i = 1; i <= criteria.size(); ++i) selected.push_back(i);

  int failed = 0;
  for (std::size_t n : selected) {
    const auto& [name, run] = criteria.at(n - 1);
    Outcome o;
    try {
      o = run();
    } catch (const Error& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    std::printf("criterion %zu %s: %s (%s)\n", n, o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
