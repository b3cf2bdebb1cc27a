#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rcl/equiv.hpp"
#include "rcl/names.hpp"
#include "rcl/subst.hpp"
#include "rcl/term.hpp"

namespace rcl {

enum class RuleId : std::uint8_t { Beta, Gamma1, Gamma2, Gamma3, Omega1, Omega2, Omega3, GammaOmega1, GammaOmega2 };
inline constexpr RuleId kAllRules[] = {RuleId::Beta,   RuleId::Gamma1, RuleId::Gamma2,
                                       RuleId::Gamma3, RuleId::Omega1, RuleId::Omega2,
                                       RuleId::Omega3, RuleId::GammaOmega1, RuleId::GammaOmega2};

std::string rule_name(RuleId r);
std::optional<RuleId> rule_from_name(const std::string& s);

// `adjust` turns `before` into `adjusted`; the rule fires at `position`
// of `adjusted`. For beta, `beta_trace` is the evaluation of the created
// substitution, positions relative to the substitution node.
struct ReductionStep {
  RuleId rule;
  std::vector<EquivMove> adjust;
  Path position;
  Term before, adjusted, after;
  std::optional<SubstTrace> beta_trace;
};

class ReduceError : public TermError {
 public:
  using TermError::TermError;
};

bool rule_applies(const Term& redex, RuleId r);
// Contractum of the redex at `pos` of u; names fresh with respect to u.
Term contract(const Term& u, const Path& pos, RuleId r, SubstTrace* beta_trace = nullptr);

std::vector<ReductionStep> enumerate_redexes(const Term& t, std::size_t cap = kDefaultClassCap);
// Same answer as !enumerate_redexes(t).empty(), stopping at the first redex.
bool reducible(const Term& t, std::size_t cap = kDefaultClassCap);
// Re-applies a step to t, checking that it is still valid.
Term reduce_step(const Term& t, const ReductionStep& s);

enum class Strategy { LeftmostOutermost, ExhaustiveFirst };
std::optional<Strategy> strategy_from_name(const std::string& s);

struct NormalizeResult {
  bool normal;  // false: step limit reached first
  Term term;
  std::vector<ReductionStep> trace;
};

// Picks one step per iteration: leftmost-outermost orders by position then
// rule, exhaustive-first by rule then position.
const ReductionStep& pick_step(const std::vector<ReductionStep>& steps, Strategy s);
NormalizeResult normalize(const Term& t, Strategy s, std::size_t max_steps);

}  // namespace rcl
