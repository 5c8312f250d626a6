#include <algorithm>

#include "lopsided/error.hpp"
#include "lopsided/logic.hpp"

namespace lopsided {

namespace {

Nat cantorPair(Nat a, Nat b) { return (a + b) * (a + b + 1) / 2 + b; }

std::pair<Nat, Nat> cantorUnpair(Nat z) {
  Nat w = 0;
  while ((w + 1) * (w + 2) / 2 <= z) ++w;
  const Nat b = z - w * (w + 1) / 2;
  return {w - b, b};
}

}  // namespace

std::shared_ptr<Signature> Signature::standard() {
  auto sig = std::make_shared<Signature>();
  sig->addFunction("succ", 1, [](std::span<const Nat> a) { return a[0] + 1; });
  sig->addFunction("add", 2, [](std::span<const Nat> a) { return a[0] + a[1]; });
  sig->addFunction("mul", 2, [](std::span<const Nat> a) { return a[0] * a[1]; });
  sig->addFunction("monus", 2, [](std::span<const Nat> a) { return a[0] > a[1] ? a[0] - a[1] : 0; });
  sig->addFunction("pair", 2, [](std::span<const Nat> a) { return cantorPair(a[0], a[1]); });
  sig->addFunction("first", 1, [](std::span<const Nat> a) { return cantorUnpair(a[0]).first; });
  sig->addFunction("second", 1, [](std::span<const Nat> a) { return cantorUnpair(a[0]).second; });
  sig->addPredicate("le", 2, [](std::span<const Nat> a) { return a[0] <= a[1]; });
  sig->addPredicate("lt", 2, [](std::span<const Nat> a) { return a[0] < a[1]; });
  sig->addPredicate("even", 1, [](std::span<const Nat> a) { return a[0] % 2 == 0; });
  sig->addPrefixFunctional("zeros-below", 1, [](std::span<const Nat> args, std::span<const Nat> prefix) {
    const auto n = std::min<std::size_t>(args[0], prefix.size());
    return static_cast<Nat>(std::count(prefix.begin(), prefix.begin() + n, Nat{0}));
  });
  return sig;
}

bool Signature::taken(const std::string& name) const {
  return functions_.contains(name) || predicates_.contains(name) || prefixFunctionals_.contains(name);
}

void Signature::addFunction(const std::string& name, std::size_t arity, Function fn) {
  std::lock_guard lock(mutex_);
  if (taken(name)) throw SignatureError("symbol '" + name + "' already registered");
  functions_.emplace(name, FunctionSymbol{arity, std::move(fn)});
}

void Signature::addPredicate(const std::string& name, std::size_t arity, Predicate fn) {
  std::lock_guard lock(mutex_);
  if (taken(name)) throw SignatureError("symbol '" + name + "' already registered");
  predicates_.emplace(name, PredicateSymbol{arity, std::move(fn)});
}

void Signature::addPrefixFunctional(const std::string& name, std::size_t arity, PrefixFunction fn) {
  std::lock_guard lock(mutex_);
  if (taken(name)) throw SignatureError("symbol '" + name + "' already registered");
  prefixFunctionals_.emplace(name, PrefixSymbol{arity, std::move(fn)});
}

std::string Signature::freshName(std::string_view stem) {
  std::lock_guard lock(mutex_);
  for (;;) {
    std::string name = std::string(stem) + std::to_string(freshCounter_++);
    if (!taken(name)) return name;
  }
}

Signature::FunctionSymbol Signature::function(const std::string& name) const {
  std::lock_guard lock(mutex_);
  auto it = functions_.find(name);
  if (it == functions_.end()) throw SignatureError("unregistered function symbol '" + name + "'");
  return it->second;
}

Signature::PredicateSymbol Signature::predicate(const std::string& name) const {
  std::lock_guard lock(mutex_);
  auto it = predicates_.find(name);
  if (it == predicates_.end()) throw SignatureError("unregistered predicate symbol '" + name + "'");
  return it->second;
}

Signature::PrefixSymbol Signature::prefixFunctional(const std::string& name) const {
  std::lock_guard lock(mutex_);
  auto it = prefixFunctionals_.find(name);
  if (it == prefixFunctionals_.end()) throw SignatureError("unregistered prefix functional '" + name + "'");
  return it->second;
}

bool Signature::hasFunction(const std::string& name) const {
  std::lock_guard lock(mutex_);
  return functions_.contains(name);
}

bool Signature::hasPredicate(const std::string& name) const {
  std::lock_guard lock(mutex_);
  return predicates_.contains(name);
}

bool Signature::hasPrefixFunctional(const std::string& name) const {
  std::lock_guard lock(mutex_);
  return prefixFunctionals_.contains(name);
}

}  // namespace lopsided
