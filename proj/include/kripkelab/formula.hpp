#pragma once

#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <string_view>

namespace kripkelab {

/// Modal formula over p0, p1, ... with primitives var, false, ->, box.
/// Derived connectives are expanded on construction:
///   ~a = a -> false          true  = false -> false
///   a | b = ~a -> b          a & b = ~(a -> ~b)
///   dia a = ~box ~a
/// Formulas are immutable and share structure.
class Formula {
 public:
  enum class Kind { Var, Bottom, Implies, Box };

  static Formula var(std::size_t index);
  static Formula bottom();
  static Formula implies(Formula lhs, Formula rhs);
  static Formula box(Formula child);

  static Formula top();
  static Formula negation(Formula f);
  static Formula conjunction(Formula a, Formula b);
  static Formula disjunction(Formula a, Formula b);
  static Formula diamond(Formula f);

  Kind kind() const noexcept { return node_->kind; }
  /// Only for Var.
  std::size_t var_index() const noexcept { return node_->index; }
  /// Antecedent of Implies, or the operand of Box.
  const Formula& left() const noexcept { return *node_->lhs; }
  /// Consequent of Implies.
  const Formula& right() const noexcept { return *node_->rhs; }
  const Formula& child() const noexcept { return *node_->lhs; }

  std::set<std::size_t> variables() const;
  /// Number of nodes in the primitive tree.
  std::size_t size() const noexcept { return node_->size; }
  std::size_t modal_depth() const noexcept { return node_->modal_depth; }

  friend bool operator==(const Formula& a, const Formula& b) noexcept;

 private:
  struct Node {
    Kind kind;
    std::size_t index = 0;
    std::shared_ptr<const Formula> lhs;
    std::shared_ptr<const Formula> rhs;
    std::size_t size = 1;
    std::size_t modal_depth = 0;
  };
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

/// Parses the textual grammar. Tokens: p<digits>, false, true, ~, &, |, ->,
/// box or [], dia or <>, parentheses. Precedence from tightest: unary
/// operators, &, |, -> (& and | associate left, -> associates right).
/// Throws ParseError with a 1-based line and column.
Formula parse_formula(std::string_view text);

/// Minimal-parenthesis rendering that recognizes the derived-connective
/// shapes; parse_formula(render(f)) == f.
std::string render(const Formula& f);

/// Replaces every occurrence of p<index> by `replacement`.
Formula substitute(const Formula& f, std::size_t index, const Formula& replacement);

}  // namespace kripkelab
