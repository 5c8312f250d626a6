#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace lopsided {

using Nat = std::uint64_t;

// A finite sequence of naturals, the sigma of the determination relation.
using Prefix = std::vector<Nat>;

// An eventually periodic element of Baire space: preamble followed by the
// period repeated forever. Stored in canonical form (shortest period, then
// shortest preamble), so structural equality is extensional equality.
class Point {
 public:
  Point(Prefix preamble, Prefix period);

  // The constant sequence c, c, c, ...
  static Point constant(Nat c) { return Point({}, {c}); }

  const Prefix& preamble() const noexcept { return preamble_; }
  const Prefix& period() const noexcept { return period_; }

  Nat at(std::size_t n) const noexcept {
    if (n < preamble_.size()) return preamble_[n];
    return period_[(n - preamble_.size()) % period_.size()];
  }

  Prefix prefix(std::size_t n) const;
  bool extends(std::span<const Nat> s) const noexcept;

  // Number of indices after which the sequence is purely periodic.
  std::size_t tailStart() const noexcept { return preamble_.size(); }

  // Distinct values taken anywhere along the sequence, ascending.
  std::vector<Nat> range() const;

  std::string toString() const;

  friend bool operator==(const Point&, const Point&) = default;

 private:
  Prefix preamble_;
  Prefix period_;
};

// Extensional comparison by unrolling both points far enough; independent of
// the canonical form maintained by the constructor.
bool extensionallyEqual(const Point& a, const Point& b);

bool isInitialSegment(std::span<const Nat> shorter, std::span<const Nat> longer) noexcept;

}  // namespace lopsided

namespace lopsided {

// Seeded sample of eventually periodic points: preamble length 0..5, period
// length 1..4, values 0..5 with zero drawn about a third of the time.
std::vector<Point> seededCorpus(std::size_t count, std::uint64_t seed);

}  // namespace lopsided
