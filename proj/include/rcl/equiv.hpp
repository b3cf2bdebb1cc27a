#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rcl/term.hpp"

namespace rcl {

enum class Axiom : std::uint8_t {
  SwapEra,    // del x. del y. M == del y. del x. M
  SwapDup,    // dup x as (a,b). M == dup x as (b,a). M
  Reassoc,    // dup x as (y,z). dup y as (u,v). M == dup x as (y,u). dup y as (z,v). M
  CommDup,    // independent adjacent dups commute
};

std::string axiom_name(Axiom a);

struct EquivMove {
  Axiom axiom;
  Path position;
  friend bool operator==(const EquivMove& a, const EquivMove& b) {
    return a.axiom == b.axiom && a.position == b.position;
  }
};

class EquivError : public TermError {
 public:
  using TermError::TermError;
};

inline constexpr std::size_t kDefaultClassCap = 50000;

// Every move is its own inverse when applied at the same position to the
// result.
std::optional<Term> apply_move(const Term& t, const EquivMove& m);
Term apply_moves(Term t, const std::vector<EquivMove>& ms);
std::vector<EquivMove> moves(const Term& t);

struct EquivMember {
  Term term;
  std::vector<EquivMove> from_start;  // moves leading from the input here
};

// Breadth-first closure under single moves, deduplicated up to alpha.
// The input is the first member. Throws EquivError past the cap.
std::vector<EquivMember> equiv_class_paths(const Term& t, std::size_t cap = kDefaultClassCap);
std::vector<Term> equiv_class(const Term& t, std::size_t cap = kDefaultClassCap);

// Deterministic representative of the class with normalised bound names.
Term equiv_canonical(const Term& t);
std::string canonical_key(const Term& t);
bool equiv(const Term& a, const Term& b);

// Moves turning `from` into a term alpha-equal to `to`; nullopt if the two
// are not equivalent.
std::optional<std::vector<EquivMove>> equiv_path(const Term& from, const Term& to,
                                                 std::size_t cap = kDefaultClassCap);

}  // namespace rcl
