#pragma once

#include <string>

#include "rcl/term.hpp"

namespace rcl {

// Ordinary lambda terms share the Term representation but use only
// Var, Abs and App, with any number of occurrences per variable.
using PlainTerm = Term;

PlainTerm parse_plain(const std::string& text);
bool is_plain(const Term& t);

// Free variables in first-occurrence order, without repeats.
std::vector<Name> plain_free_vars(const PlainTerm& t);

enum class SharedOrder { FvList, Reversed };

Term to_resource(const PlainTerm& t, SharedOrder order = SharedOrder::FvList);
PlainTerm to_plain(const Term& m);

}  // namespace rcl
