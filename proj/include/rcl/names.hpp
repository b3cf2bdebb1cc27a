#pragma once

#include <map>
#include <set>
#include <string>

#include "rcl/term.hpp"

namespace rcl {

// Deterministic fresh-name source. A fresh name keeps the stem of its base
// (trailing digits stripped) and appends the next unused counter value.
class NameSupply {
 public:
  NameSupply() = default;
  explicit NameSupply(const Term& t) { reserve(t); }

  void reserve(const Term& t);
  void reserve(const Name& x) { used_.insert(x); }
  bool used(const Name& x) const { return used_.count(x) != 0; }

  Name fresh(const Name& base);

 private:
  std::set<Name> used_;
  std::map<std::string, unsigned> next_;
};

std::string name_stem(const Name& x);

}  // namespace rcl
