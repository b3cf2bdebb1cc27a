#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "rcl/term.hpp"

namespace rcl {

class Type;
// Intersection of strict types, kept sorted; empty is Top.
using Inter = std::vector<Type>;

struct TypeNode;

// Strict type: an atom or an arrow from an intersection to a strict type.
class Type {
 public:
  Type() = default;
  static Type atom(std::string name);
  static Type arrow(Inter dom, Type cod);

  bool empty() const { return node_ == nullptr; }
  bool is_atom() const;
  const std::string& name() const;  // atom
  const Inter& dom() const;         // arrow
  const Type& cod() const;          // arrow

  friend int compare(const Type& a, const Type& b);
  friend bool operator==(const Type& a, const Type& b) { return compare(a, b) == 0; }
  friend bool operator!=(const Type& a, const Type& b) { return compare(a, b) != 0; }
  friend bool operator<(const Type& a, const Type& b) { return compare(a, b) < 0; }

 private:
  explicit Type(std::shared_ptr<const TypeNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const TypeNode> node_;
};

struct TypeNode {
  bool atom;
  std::string name;
  Inter dom;
  Type cod;
};

Inter inter(std::vector<Type> ts);  // sorts
Inter top();
Inter single(const Type& t);
Inter meet(const Inter& a, const Inter& b);

enum class TypeEq { Multiset, Idempotent };
bool type_eq(const Type& a, const Type& b, TypeEq mode = TypeEq::Multiset);
bool type_eq(const Inter& a, const Inter& b, TypeEq mode = TypeEq::Multiset);

std::string to_string(const Type& t);
std::string to_string(const Inter& t);
// Atoms are identifiers, `->` is right associative, `&` binds tighter than
// `->`, `Top` is the empty intersection.
Type parse_type(const std::string& text);
Inter parse_inter(const std::string& text);

using Basis = std::map<Name, Inter>;

class BasisError : public TermError {
 public:
  using TermError::TermError;
};

// Pointwise intersection; domains must agree.
Basis basis_meet(const std::vector<Basis>& gs);
Basis basis_top(const Basis& g);
bool basis_eq(const Basis& a, const Basis& b, TypeEq mode = TypeEq::Multiset);
std::string to_string(const Basis& g);

// Deterministic atom names a, b, ..., z, a1, ...
class AtomSupply {
 public:
  Type fresh();

 private:
  unsigned next_ = 0;
};

}  // namespace rcl
