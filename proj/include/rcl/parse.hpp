#pragma once

#include <stdexcept>
#include <string>

#include "rcl/term.hpp"

namespace rcl {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& msg);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

// Resource terms. Rejects explicit substitutions, shadowing, repeated
// binders and binders that clash with free names.
Term parse_term(const std::string& text);
// Same grammar plus postfix explicit substitution `M[N/x]`.
Term parse_sterm(const std::string& text);

// Alpha-renames binders so that no binder repeats and none equals a free
// name. Identity on terms that already satisfy the convention.
Term freshen(const Term& t);

}  // namespace rcl
