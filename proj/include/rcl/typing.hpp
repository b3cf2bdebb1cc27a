#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rcl/derivation.hpp"
#include "rcl/graph.hpp"
#include "rcl/reduce.hpp"
#include "rcl/subst.hpp"

namespace rcl {

// Supplies some typing of a term, or nothing.
using Oracle = std::function<std::optional<Deriv>(const Term&)>;

// Typing of a normal form: head variables get arrow types with singleton
// domains ending in a fresh atom.
Deriv nf_type(const Term& t);

// Gamma, x:^n tau_i |- M : sigma and n+1 typings of N (ws[witness] is the
// forgotten one) give a typing of M<N/x>. Typings the forward argument
// cannot build (an argument typed only as witness) are asked of `fill`.
Deriv subst_lemma_apply(const Deriv& d, const Name& x, const std::vector<Deriv>& ws, std::size_t witness = 0,
                        const Oracle& fill = {});

// Pushes the root Subst node of d through a recorded evaluation trace of
// its subject.
Deriv push_subst(const Deriv& d, const SubstTrace& trace, const Oracle& fill = {});
// Inverse: d types the result of evaluating `start` along `trace`.
Deriv pull_subst(const Deriv& d, const Term& start, const SubstTrace& trace, const Oracle& typing);

// Derivation of the step's `after` with the same basis and type.
Deriv transport_forward(const Deriv& d, const ReductionStep& s, const Oracle& fill = {});
// Derivation of the step's `before` from one of its `after`.
Deriv expand_step(const Deriv& d, const ReductionStep& s, const Oracle& typing);

// Same judgment up to the structural equivalence: moves d to subject t
// (t must be equivalent to d's subject) and renames bound names.
Deriv retarget(const Deriv& d, const Term& t);
// Rewrites the derivation along structural moves of its subject.
Deriv apply_moves_deriv(const Deriv& d, const std::vector<EquivMove>& moves);

enum class CertVerdict { Certified, NotSN, Unknown };
std::string cert_verdict_name(CertVerdict v);

struct CertifyResult {
  CertVerdict verdict;
  std::optional<Deriv> derivation;
  SnResult sn;
  std::string note;
};

CertifyResult certify_sn(const Term& t, Budget b = {});

}  // namespace rcl
