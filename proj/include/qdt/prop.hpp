#pragma once

#include <memory>
#include <span>
#include <string>

#include "qdt/world.hpp"

namespace qdt {

/// Immutable propositional formula over variable indices. Connectives are the
/// usual !, &, | plus the constants. Subtrees are shared; copies are cheap.
class Prop {
 public:
  enum class Kind { True, False, Var, Not, And, Or };

  Prop() : Prop(top()) {}

  static Prop top();
  static Prop bottom();
  static Prop var(int index);
  static Prop lit(int index, bool positive) { return positive ? var(index) : !var(index); }

  friend Prop operator!(const Prop& p);
  friend Prop operator&(const Prop& a, const Prop& b);
  friend Prop operator|(const Prop& a, const Prop& b);

  Kind kind() const;
  int var_index() const;  // Kind::Var only
  Prop lhs() const;       // Not/And/Or (the only child for Not)
  Prop rhs() const;       // And/Or

  /// Largest variable index mentioned, -1 for constants. O(1).
  int max_var() const;

  bool eval(World w) const;

  /// Canonical rendering with minimal parentheses (! binds tightest, then &).
  std::string to_string(std::span<const Variable> vars) const;

  struct Node;  // implementation detail, defined in prop.cpp

 private:
  explicit Prop(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Standard boolean semantics of the AST.
bool eval_prop(World w, const Prop& p);

/// Throws SemanticError if the proposition mentions a variable index >= n_vars.
void check_prop_vars(const Prop& p, int n_vars);

}  // namespace qdt
