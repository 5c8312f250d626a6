#pragma once

// Family implementations shared between the code algebra and the catalog.

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "lopsided/borel.hpp"

namespace lopsided::detail {

using ExactHook = std::function<std::optional<bool>(const Point&, std::size_t, const Signature&)>;

// Closed-form family registered under a DSL name.
class TemplateFamily final : public Family {
 public:
  TemplateFamily(std::string name, std::map<std::string, Nat> params, std::function<CodePtr(Nat)> rule,
                 ExactHook unionHook = {}, ExactHook intersectionHook = {})
      : name_(std::move(name)),
        params_(std::move(params)),
        rule_(std::move(rule)),
        unionHook_(std::move(unionHook)),
        intersectionHook_(std::move(intersectionHook)) {}

  CodePtr child(Nat i) const override { return rule_(i); }

  std::optional<bool> unionContains(const Point& p, std::size_t fuel, const Signature& sig) const override {
    return unionHook_ ? unionHook_(p, fuel, sig) : std::nullopt;
  }
  std::optional<bool> intersectionContains(const Point& p, std::size_t fuel, const Signature& sig) const override {
    return intersectionHook_ ? intersectionHook_(p, fuel, sig) : std::nullopt;
  }

  std::string toString() const override {
    std::string out = "(template " + name_;
    for (const auto& [key, value] : params_) out += " :" + key + " " + std::to_string(value);
    return out + ")";
  }

 private:
  std::string name_;
  std::map<std::string, Nat> params_;
  std::function<CodePtr(Nat)> rule_;
  ExactHook unionHook_;
  ExactHook intersectionHook_;
};

// Builds the catalog templates; defined in catalog.cpp.
FamilyPtr catalogTemplate(const std::string& name, const std::map<std::string, Nat>& params);
std::vector<std::string> catalogTemplateNames();

Nat cantorPair(Nat a, Nat b);
std::pair<Nat, Nat> cantorUnpair(Nat z);

}  // namespace lopsided::detail
