#include "lopsided/baire.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "lopsided/error.hpp"

namespace lopsided {

namespace {

void minimizePeriod(Prefix& period) {
  const std::size_t n = period.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool repeats = true;
    for (std::size_t i = d; i < n && repeats; ++i) repeats = period[i] == period[i - d];
    if (repeats) {
      period.resize(d);
      return;
    }
  }
}

}  // namespace

Point::Point(Prefix preamble, Prefix period) : preamble_(std::move(preamble)), period_(std::move(period)) {
  if (period_.empty()) throw Error("baire", "point period must be nonempty");
  minimizePeriod(period_);
  // Absorb preamble entries that already continue the cycle backwards.
  while (!preamble_.empty() && preamble_.back() == period_.back()) {
    std::rotate(period_.rbegin(), period_.rbegin() + 1, period_.rend());
    preamble_.pop_back();
  }
}

Prefix Point::prefix(std::size_t n) const {
  Prefix out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = at(i);
  return out;
}

bool Point::extends(std::span<const Nat> s) const noexcept {
  for (std::size_t i = 0; i < s.size(); ++i)
    if (at(i) != s[i]) return false;
  return true;
}

std::vector<Nat> Point::range() const {
  std::set<Nat> values(preamble_.begin(), preamble_.end());
  values.insert(period_.begin(), period_.end());
  return {values.begin(), values.end()};
}

std::string Point::toString() const {
  std::ostringstream out;
  out << "(point :pre (";
  for (std::size_t i = 0; i < preamble_.size(); ++i) out << (i ? " " : "") << preamble_[i];
  out << ") :per (";
  for (std::size_t i = 0; i < period_.size(); ++i) out << (i ? " " : "") << period_[i];
  out << "))";
  return out.str();
}

bool extensionallyEqual(const Point& a, const Point& b) {
  const std::size_t horizon = a.preamble().size() + b.preamble().size() +
                              std::lcm(a.period().size(), b.period().size());
  for (std::size_t i = 0; i < horizon; ++i)
    if (a.at(i) != b.at(i)) return false;
  return true;
}

bool isInitialSegment(std::span<const Nat> shorter, std::span<const Nat> longer) noexcept {
  return shorter.size() <= longer.size() && std::equal(shorter.begin(), shorter.end(), longer.begin());
}

}  // namespace lopsided
