#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rcl/names.hpp"
#include "rcl/term.hpp"

namespace rcl {

enum class SubstRule : std::uint8_t { Var, Abs, AppLeft, AppRight, EraOther, EraHit, DupOther, DupHit };
std::string subst_rule_name(SubstRule r);

using Renaming = std::vector<std::pair<Name, Name>>;
using Multiset = std::vector<std::size_t>;  // sorted, largest first

struct SubstStep {
  SubstRule rule;
  Path position;
  Multiset before, after;
  Renaming first, second;  // dup-hit: N -> N1 and N -> N2
};
using SubstTrace = std::vector<SubstStep>;

struct SubstResult {
  Term term;
  SubstTrace trace;
};

class SubstError : public TermError {
 public:
  using TermError::TermError;
};

std::size_t measure(const Term& s);
Multiset mul_multiset(const Term& s);
// Dershowitz-Manna order: a >> b.
bool multiset_greater(const Multiset& a, const Multiset& b);

// Positions of Sub nodes whose body is not itself a Sub.
std::vector<Path> subst_redexes(const Term& s);
std::optional<SubstRule> subst_rule_at(const Term& s, const Path& pos);

SubstStep step_subst(const Term& s, const Path& pos, NameSupply& supply, Term& out);
Term step_subst(const Term& s, const Path& pos);
// Applies a recorded step, reusing its renamings.
Term replay_step(const Term& s, const SubstStep& step);
Term replay(Term s, const SubstTrace& trace);

// Innermost-first evaluation to a substitution-free term.
SubstResult eval_subst(const Term& s);
SubstResult eval_subst(const Term& s, NameSupply& supply);

// M<N/x>. Bound names are renamed where they would clash.
Term substitute(const Term& m, const Term& n, const Name& x);
// Same, inside a larger term whose names are reserved in `supply`; no
// renaming of m or n.
SubstResult substitute_in(const Term& m, const Term& n, const Name& x, NameSupply& supply);
Term substitute_many(const Term& m, const std::vector<std::pair<Term, Name>>& pairs);

}  // namespace rcl
