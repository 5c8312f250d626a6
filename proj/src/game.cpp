#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>

#include "lopsided/error.hpp"
#include "lopsided/game.hpp"

namespace lopsided {

void validate(const GameConfig& cfg) {
  if (cfg.window < 1 || cfg.rounds < cfg.window)
    throw Error("game", "need rounds >= window >= 1 (rounds " + std::to_string(cfg.rounds) + ", window " +
                            std::to_string(cfg.window) + ")");
}

void summarize(GameTrace& trace, std::size_t window) {
  trace.flips = 0;
  trace.stabilizationIndex.reset();
  trace.finalGuess.reset();
  const auto& r = trace.records;
  if (r.empty()) return;
  std::size_t runStart = 0;
  for (std::size_t i = 1; i < r.size(); ++i) {
    if (r[i].guess != r[i - 1].guess) {
      ++trace.flips;
      runStart = i;
    }
  }
  trace.finalGuess = r.back().guess;
  if (r.size() - runStart >= window) trace.stabilizationIndex = runStart;
}

GameTrace runGame(const Point& alice, const NatGuesser& bob, const GameConfig& cfg) {
  validate(cfg);
  GameTrace trace;
  auto session = bob.start();
  for (std::size_t n = 0; n < cfg.rounds; ++n) {
    const Nat move = alice.at(n);
    trace.records.push_back(RoundRecord{n, move, session->feed(move), {}});
  }
  summarize(trace, cfg.window);
  return trace;
}

GameTrace runGame(const Point& alice, const BitGuesser& bob, const FactSource& source, const GameConfig& cfg) {
  validate(cfg);
  GameTrace trace;
  auto session = bob.start();
  FactStream stream(source, alice);
  for (std::size_t n = 0; n < cfg.rounds; ++n) {
    Bit fact = 0;
    try {
      fact = stream.bit(n);
    } catch (const UndecidedError& e) {
      trace.aborted = e.what();
      break;
    }
    const Bit guess = session->feed(fact);
    trace.records.push_back(RoundRecord{n, fact, guess, session->diagnostics()});
  }
  summarize(trace, cfg.window);
  return trace;
}

std::string toString(Evidence e) {
  switch (e) {
    case Evidence::ConsistentWinBob:
      return "CONSISTENT-WIN-BOB";
    case Evidence::ConsistentWinAlice:
      return "CONSISTENT-WIN-ALICE";
    case Evidence::UnstableAtHorizon:
      return "UNSTABLE-AT-HORIZON";
  }
  return "UNSTABLE-AT-HORIZON";
}

Evidence adjudicate(const GameTrace& trace, bool truth) {
  if (!trace.stabilizationIndex || !trace.finalGuess || trace.aborted) return Evidence::UnstableAtHorizon;
  return (*trace.finalGuess == 1) == truth ? Evidence::ConsistentWinBob : Evidence::ConsistentWinAlice;
}

AdversaryReport diagonalize(const NatGuesser& bob, CatalogId target, std::size_t fuel, std::size_t phaseCap) {
  if (target != CatalogId::EventuallyZero && target != CatalogId::EventuallyConstant)
    throw Error("game", "no flip strategy for " + catalogName(target));
  const Prefix pattern = target == CatalogId::EventuallyZero ? Prefix{1} : Prefix{1, 2};

  AdversaryReport report;
  auto session = bob.start();
  auto play = [&](Nat move) {
    const Bit g = session->feed(move);
    if (!report.guesses.empty() && report.guesses.back() != g) ++report.flips;
    report.prefix.push_back(move);
    report.guesses.push_back(g);
  };

  bool wantOne = true;  // playing zeros, waiting for a 1
  std::size_t played = 0;
  while (report.prefix.size() < fuel) {
    play(wantOne ? 0 : pattern[played % pattern.size()]);
    ++played;
    if (report.guesses.back() == (wantOne ? 1 : 0)) {
      wantOne = !wantOne;
      played = 0;
    }
  }
  if (played >= phaseCap) {
    report.wrongStabilized = true;
    report.witness = wantOne ? Point(report.prefix, {0}) : Point(report.prefix, pattern);
    report.note = std::string("guesser held ") + (wantOne ? "0 on zeros" : "1 off zeros") + " for the last " +
                  std::to_string(played) + " moves; the extension " + report.witness->toString() + " is " +
                  (wantOne ? "in" : "not in") + " the target set";
  } else {
    report.note = played > 0 ? "fuel exhausted mid-phase" : "fuel exhausted";
  }
  report.fuelSpent = report.prefix.size();
  return report;
}

namespace {

struct Stats {
  std::size_t length = 0;
  std::size_t zeros = 0;
  std::size_t zeroRun = 0;
  std::size_t nonzeroRun = 0;
  std::size_t longestNonzeroRun = 0;
  std::size_t lastNonzero = 0;  // 1 + position of the last non-zero move, 0 if none
  std::deque<Nat> recent;       // last 20 moves

  void add(Nat move) {
    ++length;
    if (move == 0) {
      ++zeros;
      ++zeroRun;
      nonzeroRun = 0;
    } else {
      zeroRun = 0;
      ++nonzeroRun;
      longestNonzeroRun = std::max(longestNonzeroRun, nonzeroRun);
      lastNonzero = length;
    }
    recent.push_back(move);
    if (recent.size() > 20) recent.pop_front();
  }

  std::size_t nonzeros() const { return length - zeros; }
  std::size_t recentZeros() const { return static_cast<std::size_t>(std::count(recent.begin(), recent.end(), 0)); }
};

using Rule = std::function<bool(const Stats&)>;

class HeuristicSession final : public NatSession {
 public:
  explicit HeuristicSession(const Rule& rule) : rule_(rule) {}
  Bit feed(Nat move) override {
    stats_.add(move);
    return current();
  }
  Bit current() const override { return rule_(stats_) ? 1 : 0; }

 private:
  Rule rule_;
  Stats stats_;
};

class Heuristic final : public NatGuesser {
 public:
  Heuristic(std::string name, Rule rule) : name_(std::move(name)), rule_(std::move(rule)) {}
  std::unique_ptr<NatSession> start() const override { return std::make_unique<HeuristicSession>(rule_); }
  std::string name() const override { return name_; }

 private:
  std::string name_;
  Rule rule_;
};

}  // namespace

std::vector<NatGuesserPtr> heuristicGuessers() {
  const std::vector<std::pair<std::string, Rule>> rules = {
      {"constant-0", [](const Stats&) { return false; }},
      {"constant-1", [](const Stats&) { return true; }},
      {"last-is-zero", [](const Stats& s) { return s.zeroRun >= 1; }},
      {"last-two-zero", [](const Stats& s) { return s.zeroRun >= 2; }},
      {"no-nonzero-in-last-5", [](const Stats& s) { return s.zeroRun >= 5; }},
      {"no-nonzero-in-last-10", [](const Stats& s) { return s.zeroRun >= 10; }},
      {"zero-run-at-least-50", [](const Stats& s) { return s.zeroRun >= 50; }},
      {"majority-zero", [](const Stats& s) { return s.zeros * 2 > s.length; }},
      {"majority-zero-last-20", [](const Stats& s) { return s.recentZeros() * 2 > s.recent.size(); }},
      {"ninety-percent-zero", [](const Stats& s) { return s.zeros * 10 >= s.length * 9 && s.length > 0; }},
      {"zero-run-beats-nonzero-runs", [](const Stats& s) { return s.zeroRun > s.longestNonzeroRun; }},
      {"zero-run-over-sqrt-length",
       [](const Stats& s) { return s.zeroRun > 0 && s.zeroRun * s.zeroRun >= s.length; }},
      {"last-nonzero-in-first-half", [](const Stats& s) { return s.lastNonzero * 2 <= s.length && s.length > 0; }},
      {"some-zero-seen", [](const Stats& s) { return s.zeros > 0; }},
      {"exactly-one-zero", [](const Stats& s) { return s.zeros == 1; }},
      {"even-nonzero-count", [](const Stats& s) { return s.nonzeros() % 2 == 0; }},
      {"zeros-exceed-nonzeros-by-10", [](const Stats& s) { return s.zeros >= s.nonzeros() + 10; }},
      {"last-zero-odd-length", [](const Stats& s) { return s.zeroRun >= 1 && s.length % 2 == 1; }},
      {"last-20-all-zero", [](const Stats& s) { return s.recent.size() == 20 && s.recentZeros() == 20; }},
      {"zero-run-at-least-log-length",
       [](const Stats& s) { return s.zeroRun > 0 && s.zeroRun >= std::log2(static_cast<double>(s.length) + 1); }},
  };
  std::vector<NatGuesserPtr> out;
  for (const auto& [name, rule] : rules) out.push_back(std::make_shared<Heuristic>(name, rule));
  return out;
}

NatGuesserPtr heuristicGuesser(const std::string& name) {
  for (auto& g : heuristicGuessers())
    if (g->name() == name) return g;
  throw Error("game", "unknown guesser '" + name + "'");
}

}  // namespace lopsided
