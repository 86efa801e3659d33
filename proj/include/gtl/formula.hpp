#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace gtl {

enum class Op : std::uint8_t {
  Bottom,
  Var,
  And,
  Or,
  Implies,
  Coimplies,
  Next,
  Eventually,
  Henceforth,
};

bool isBinary(Op op);
bool isUnary(Op op);

/// Immutable formula of the Gödel temporal language. Copies share structure.
class Formula {
 public:
  Formula();  // bot

  static Formula bottom();
  static Formula top();  // bot -> bot
  static Formula var(std::string name);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula implies(Formula a, Formula b);
  static Formula coimplies(Formula a, Formula b);
  static Formula negation(Formula a);  // a -> bot
  static Formula next(Formula a);
  static Formula eventually(Formula a);
  static Formula henceforth(Formula a);

  Op op() const;
  const std::string& name() const;  // Var only
  const Formula& left() const;      // binary left, or the operand of a unary
  const Formula& right() const;     // binary only
  const Formula& inner() const { return left(); }

  std::size_t hash() const;
  /// Number of AST nodes.
  std::size_t size() const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }
  /// Total order: by size, then operator, then name, then children.
  friend bool operator<(const Formula& a, const Formula& b) { return compare(a, b) < 0; }
  static int compare(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(Op op, std::string name, std::optional<Formula> a, std::optional<Formula> b);

  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const noexcept { return f.hash(); }
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Grammar (tightest first): prefix `~ X F G`; `&`; `|`; `->` (right assoc) and
/// `<-` (left assoc) at the lowest level. `->` and `<-` may not be mixed
/// without parentheses. `~a` means `a -> bot`, `top` means `bot -> bot`.
Formula parse(std::string_view text);

/// Minimal-parenthesis rendering; parse(print(f)) == f.
std::string print(const Formula& f);

std::ostream& operator<<(std::ostream& os, const Formula& f);

/// Variable names occurring in f, sorted.
std::vector<std::string> variables(const Formula& f);

/// A finite subformula-closed set, ordered so every formula follows its
/// subformulas.
class Closure {
 public:
  struct Entry {
    Op op = Op::Bottom;
    int left = -1;   // index of left child / unary operand
    int right = -1;  // index of right child
  };

  Closure() = default;
  explicit Closure(const Formula& root);
  explicit Closure(const std::vector<Formula>& roots);

  std::size_t size() const { return formulas_.size(); }
  bool empty() const { return formulas_.empty(); }
  const Formula& operator[](std::size_t i) const { return formulas_[i]; }
  const Entry& entry(std::size_t i) const { return entries_[i]; }
  const std::vector<Formula>& formulas() const { return formulas_; }

  std::optional<std::size_t> find(const Formula& f) const;
  /// Throws std::out_of_range when f is not a member.
  std::size_t indexOf(const Formula& f) const;
  bool contains(const Formula& f) const { return find(f).has_value(); }

  friend bool operator==(const Closure& a, const Closure& b) { return a.formulas_ == b.formulas_; }

 private:
  void add(const Formula& f);

  std::vector<Formula> formulas_;
  std::vector<Entry> entries_;
  std::unordered_map<Formula, std::size_t, FormulaHash> index_;
};

inline Closure closure(const Formula& f) { return Closure(f); }

}  // namespace gtl
