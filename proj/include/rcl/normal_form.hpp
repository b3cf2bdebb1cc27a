#pragma once

#include <string>
#include <vector>

#include "rcl/term.hpp"

namespace rcl {

bool is_normal_form(const Term& t);

enum class HeadTag { Abs, Var, Era, AbsApp, DupApp, EraApp };
std::string head_tag_name(HeadTag t);

// Abs: head = t. Era: head = t. Var: head = the variable, spine = args.
// AbsApp / EraApp: head applied to `first`, then spine.
// DupApp: head is the duplication, spine holds all arguments (may be empty).
struct HeadForm {
  HeadTag tag;
  Term head;
  Term first;  // AbsApp and EraApp only
  std::vector<Term> spine;

  Term reassemble() const;
};

HeadForm classify_head_form(const Term& t);

}  // namespace rcl
