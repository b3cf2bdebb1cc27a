#pragma once

#include <string>
#include <vector>

#include "rcl/term.hpp"

namespace rcl {

struct Violation {
  Path position;
  std::string rule;  // var, abs, app, era, dup, sub
  Name variable;
  std::string message;
};

struct LinearityReport {
  bool ok = true;
  std::vector<Violation> violations;
};

// Derivability by the linear term formation rules. Sub nodes are accepted
// only when allow_sub is set and then follow the explicit-substitution rule.
LinearityReport check_linear(const Term& t, bool allow_sub = false);
LinearityReport check_sterm(const Term& t);

bool is_linear(const Term& t);   // Sub-free and check_linear ok
bool is_sterm(const Term& t);    // check_sterm ok
// No binder repeated, no binder equal to a free name.
bool barendregt(const Term& t);

class IllFormed : public TermError {
 public:
  using TermError::TermError;
};

// Throw IllFormed on ill-formed input.
std::vector<Name> free_var_list(const Term& t);
std::vector<Name> sfree_var_list(const Term& t);

bool alpha_eq(const Term& a, const Term& b);
// Rendering with bound names replaced by their binding order; equal keys
// iff alpha_eq.
std::string alpha_key(const Term& t);

}  // namespace rcl
