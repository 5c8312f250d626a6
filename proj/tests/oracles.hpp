#pragma once

#include <optional>

#include "lopsided/borel.hpp"

namespace oracles {

using namespace lopsided;

// Bounded search over the clopen inner codes of a pair: rows i < rows, columns
// j < columns. On the seeded corpus (preamble <= 5, period <= 4) a witness row
// of either form sits below 16 and a failing column below 64.
// Least row i with every D_ij holding.
inline std::optional<Nat> witnessRow(const DeltaPrimePair& pair, const Point& p, const Signature& sig,
                                     Nat rows = 16, Nat columns = 64) {
  for (Nat i = 0; i < rows; ++i) {
    bool all = true;
    for (Nat j = 0; j < columns && all; ++j) all = member(*innerD(pair, i, j), p, 0, sig) == Verdict::In;
    if (all) return i;
  }
  return std::nullopt;
}

inline bool unionOfIntersections(const DeltaPrimePair& pair, const Point& p, const Signature& sig, Nat rows = 16,
                                 Nat columns = 64) {
  return witnessRow(pair, p, sig, rows, columns).has_value();
}

inline bool intersectionOfUnions(const DeltaPrimePair& pair, const Point& p, const Signature& sig, Nat rows = 16,
                                 Nat columns = 64) {
  for (Nat i = 0; i < rows; ++i) {
    bool some = false;
    for (Nat j = 0; j < columns && !some; ++j) some = member(*innerE(pair, i, j), p, 0, sig) == Verdict::In;
    if (!some) return false;
  }
  return true;
}

}  // namespace oracles
