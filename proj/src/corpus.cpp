#include <random>

#include "lopsided/baire.hpp"

namespace lopsided {

std::vector<Point> seededCorpus(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto value = [&rng]() -> Nat { return rng() % 3 == 0 ? 0 : 1 + rng() % 5; };
  std::vector<Point> out;
  out.reserve(count);
  while (out.size() < count) {
    Prefix pre(rng() % 6);
    Prefix per(1 + rng() % 4);
    for (auto& v : pre) v = value();
    for (auto& v : per) v = value();
    out.emplace_back(std::move(pre), std::move(per));
  }
  return out;
}

}  // namespace lopsided
