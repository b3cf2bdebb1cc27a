#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rcl/types.hpp"

namespace rcl {

enum class DRule : std::uint8_t { Ax, ArrI, ArrE, Cont, Thin, Subst, Hole };
std::string drule_name(DRule r);

struct DNode;
using Deriv = std::shared_ptr<const DNode>;

// ArrE and Subst premises are [main, arg_0, ..., arg_n]; `witness` indexes
// the args and names the one whose basis is forgotten (set to Top).
// Hole stands for a typing still to be supplied; it never validates.
struct DNode {
  DRule rule;
  Basis basis;
  Term subject;
  Type type;
  std::vector<Deriv> premises;
  std::size_t witness = 0;

  const Deriv& main() const { return premises.at(0); }
  std::size_t arg_count() const { return premises.size() - 1; }
  const Deriv& arg(std::size_t i) const { return premises.at(i + 1); }
};

class DerivError : public TermError {
 public:
  using TermError::TermError;
};

// Constructors derive subject, basis and type from the premises. They do
// not validate; run check_derivation on the result.
Deriv d_ax(const Name& x, const Type& t);
Deriv d_arr_i(const Name& x, Deriv body);
Deriv d_arr_e(Deriv fun, std::vector<Deriv> args, std::size_t witness = 0);
Deriv d_cont(const Name& z, const Name& x, const Name& y, Deriv body);
Deriv d_thin(const Name& x, Deriv body);
Deriv d_subst(const Name& x, Deriv body, std::vector<Deriv> args, std::size_t witness = 0);
Deriv d_hole(const Term& subject);

// Arguments of ArrE/Subst with the witness left out.
std::vector<Deriv> counted_args(const DNode& d);

struct DerivIssue {
  std::vector<std::size_t> path;  // premise indices from the root
  std::string message;
};

std::vector<DerivIssue> check_derivation(const Deriv& d, TypeEq mode = TypeEq::Multiset);
bool valid(const Deriv& d, TypeEq mode = TypeEq::Multiset);
std::string issue_to_string(const DerivIssue& e);

std::size_t deriv_size(const Deriv& d);
bool has_hole(const Deriv& d);
bool same_judgment(const Deriv& a, const Deriv& b, TypeEq mode = TypeEq::Multiset);

// Renames names everywhere in subjects and bases.
Deriv rename_deriv(const Deriv& d, const std::vector<std::pair<Name, Name>>& map);

std::string judgment_string(const Deriv& d);
std::string deriv_to_text(const Deriv& d);

// JSON node {rule, ctx:[{var,type}], term, type, witness_index?, premises}.
// Strict types are atom strings or {"dom":[...],"cod":...}; context types
// are lists of strict types.
std::string deriv_to_json(const Deriv& d, int indent = 2);
Deriv deriv_from_json(const std::string& text);

}  // namespace rcl
