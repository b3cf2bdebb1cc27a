#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace rcl {

using Name = std::string;

enum class Kind : std::uint8_t { Var, Abs, App, Era, Dup, Sub };

// Position inside a term: child indices from the root.
// 0 is the body (Abs, Era, Dup, Sub) or the function (App); 1 is the
// argument (App) or the replacement (Sub).
using Path = std::vector<std::uint8_t>;

std::string path_to_string(const Path& p);
Path path_from_string(const std::string& s);

class TermError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Node;

// Immutable, shared term. Covers plain resource terms and terms with
// explicit substitutions (Kind::Sub).
class Term {
 public:
  Term() = default;

  static Term var(Name x);
  static Term abs(Name x, Term body);
  static Term app(Term fun, Term arg);
  static Term era(Name x, Term body);
  static Term dup(Name x, Name left, Name right, Term body);
  // body[replacement/target]
  static Term sub(Term body, Term replacement, Name target);

  bool empty() const { return node_ == nullptr; }
  Kind kind() const;

  // Var: the variable. Abs: binder. Era: erased variable. Dup: source.
  // Sub: the substituted variable.
  const Name& name() const;
  const Name& left() const;   // Dup
  const Name& right() const;  // Dup

  const Term& body() const;         // Abs, Era, Dup, Sub
  const Term& fun() const;          // App
  const Term& arg() const;          // App
  const Term& replacement() const;  // Sub

  std::size_t arity() const;
  const Term& child(std::size_t i) const;
  Term with_child(std::size_t i, Term c) const;

  std::size_t size() const;
  bool has_sub() const;

  const Term& at(const Path& p) const;
  Term replace_at(const Path& p, Term t) const;

  bool same_node(const Term& o) const { return node_ == o.node_; }
  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

 private:
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Node {
  Kind kind;
  Name n0, n1, n2;
  Term c0, c1;
  std::size_t size;
  bool has_sub;
};

std::string to_string(const Term& t);
std::ostream& operator<<(std::ostream& os, const Term& t);

// Free variable list computed by the syntax-directed equations, without
// checking well-formedness. Sub nodes use the explicit-substitution version.
std::vector<Name> raw_free_vars(const Term& t);

// Every name occurring in t, bound or free.
std::set<Name> all_names(const Term& t);
// Binder names in preorder (Abs binder, Dup outputs, Sub target).
std::vector<Name> binders(const Term& t);

// Renames every occurrence of the listed names, bound or free.
Term rename_all(const Term& t, const std::vector<std::pair<Name, Name>>& map);
// Renames free occurrences of `from` to `to`. Assumes no capture.
Term rename_free(const Term& t, const Name& from, const Name& to);

// All positions in preorder.
std::vector<Path> positions(const Term& t);

}  // namespace rcl
