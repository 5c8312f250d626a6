#include "lopsided/error.hpp"
#include "lopsided/guesser.hpp"

namespace lopsided {

Bit FactStream::bit(std::size_t i) {
  while (cache_.size() <= i) {
    const Sentence phi = source_.listing->at(cache_.size());
    const TruthValue v = evaluate(*phi, point_, source_.fuel, *source_.signature);
    if (v == TruthValue::Unknown)
      throw UndecidedError("guessing", "fact " + std::to_string(cache_.size()) + " undecided: " + toString(*phi));
    cache_.push_back(v == TruthValue::True ? 1 : 0);
  }
  return cache_[i];
}

Bit guessAfter(const BitGuesser& g, FactStream& stream, std::size_t j) {
  auto s = g.start();
  for (std::size_t i = 0; i <= j; ++i) s->feed(stream.bit(i));
  return s->current();
}

}  // namespace lopsided
