#include "gtl/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <sstream>

namespace gtl {

struct Formula::Node {
  Op op;
  std::string name;
  std::optional<Formula> a;
  std::optional<Formula> b;
  std::size_t hash;
  std::size_t size;
};

bool isBinary(Op op) {
  return op == Op::And || op == Op::Or || op == Op::Implies || op == Op::Coimplies;
}

bool isUnary(Op op) { return op == Op::Next || op == Op::Eventually || op == Op::Henceforth; }

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

const Formula& bottomSingleton() {
  static const Formula bot = Formula::bottom();
  return bot;
}

}  // namespace

Formula Formula::make(Op op, std::string name, std::optional<Formula> a, std::optional<Formula> b) {
  std::size_t h = mix(0, static_cast<std::size_t>(op));
  std::size_t size = 1;
  if (op == Op::Var) h = mix(h, std::hash<std::string>{}(name));
  if (a) {
    h = mix(h, a->hash());
    size += a->size();
  }
  if (b) {
    h = mix(h, b->hash());
    size += b->size();
  }
  auto node = std::make_shared<const Node>(Node{op, std::move(name), std::move(a), std::move(b), h, size});
  return Formula(std::move(node));
}

Formula::Formula() : Formula(bottomSingleton()) {}

Formula Formula::bottom() { return make(Op::Bottom, {}, std::nullopt, std::nullopt); }
Formula Formula::top() { return implies(bottom(), bottom()); }
Formula Formula::var(std::string name) { return make(Op::Var, std::move(name), std::nullopt, std::nullopt); }
Formula Formula::conj(Formula a, Formula b) { return make(Op::And, {}, std::move(a), std::move(b)); }
Formula Formula::disj(Formula a, Formula b) { return make(Op::Or, {}, std::move(a), std::move(b)); }
Formula Formula::implies(Formula a, Formula b) { return make(Op::Implies, {}, std::move(a), std::move(b)); }
Formula Formula::coimplies(Formula a, Formula b) { return make(Op::Coimplies, {}, std::move(a), std::move(b)); }
Formula Formula::negation(Formula a) { return implies(std::move(a), bottom()); }
Formula Formula::next(Formula a) { return make(Op::Next, {}, std::move(a), std::nullopt); }
Formula Formula::eventually(Formula a) { return make(Op::Eventually, {}, std::move(a), std::nullopt); }
Formula Formula::henceforth(Formula a) { return make(Op::Henceforth, {}, std::move(a), std::nullopt); }

Op Formula::op() const { return node_->op; }
const std::string& Formula::name() const { return node_->name; }

const Formula& Formula::left() const {
  if (!node_->a) throw std::logic_error("formula has no operand");
  return *node_->a;
}

const Formula& Formula::right() const {
  if (!node_->b) throw std::logic_error("formula has no right operand");
  return *node_->b;
}

std::size_t Formula::hash() const { return node_->hash; }
std::size_t Formula::size() const { return node_->size; }

bool operator==(const Formula& x, const Formula& y) {
  if (x.node_ == y.node_) return true;
  if (x.hash() != y.hash() || x.size() != y.size() || x.op() != y.op()) return false;
  if (x.op() == Op::Var) return x.name() == y.name();
  if (x.node_->a && !(*x.node_->a == *y.node_->a)) return false;
  if (x.node_->b && !(*x.node_->b == *y.node_->b)) return false;
  return true;
}

int Formula::compare(const Formula& x, const Formula& y) {
  if (x.node_ == y.node_) return 0;
  if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
  if (x.op() != y.op()) return x.op() < y.op() ? -1 : 1;
  if (x.op() == Op::Var) return x.name().compare(y.name()) < 0 ? -1 : (x.name() == y.name() ? 0 : 1);
  if (x.node_->a) {
    if (int c = compare(*x.node_->a, *y.node_->a)) return c;
  }
  if (x.node_->b) {
    if (int c = compare(*x.node_->b, *y.node_->b)) return c;
  }
  return 0;
}

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error("syntax error at " + std::to_string(line) + ":" + std::to_string(column) + ": " +
                         message),
      line_(line),
      column_(column) {}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok { End, Ident, Bot, Top, Not, Next, Eventually, Henceforth, And, Or, Arrow, BackArrow, LParen, RParen };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::End: return "end of input";
    case Tok::Ident: return "identifier '" + t.text + "'";
    default: return "'" + t.text + "'";
  }
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    const std::size_t l = line, k = col;
    auto single = [&](Tok kind) {
      out.push_back({kind, std::string(1, c), l, k});
      advance(1);
    };
    switch (c) {
      case '~': single(Tok::Not); continue;
      case '&': single(Tok::And); continue;
      case '|': single(Tok::Or); continue;
      case '(': single(Tok::LParen); continue;
      case ')': single(Tok::RParen); continue;
      case 'X': single(Tok::Next); continue;
      case 'F': single(Tok::Eventually); continue;
      case 'G': single(Tok::Henceforth); continue;
      default: break;
    }
    if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      out.push_back({Tok::Arrow, "->", l, k});
      advance(2);
      continue;
    }
    if (c == '<' && i + 1 < text.size() && text[i + 1] == '-') {
      out.push_back({Tok::BackArrow, "<-", l, k});
      advance(2);
      continue;
    }
    if (c >= 'a' && c <= 'z') {
      std::size_t j = i + 1;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      std::string word(text.substr(i, j - i));
      Tok kind = Tok::Ident;
      if (word == "bot") kind = Tok::Bot;
      if (word == "top") kind = Tok::Top;
      out.push_back({kind, word, l, k});
      advance(j - i);
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", l, k);
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Formula parseAll() {
    Formula f = parseImplicational();
    if (peek().kind != Tok::End) fail("expected end of input");
    return f;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& take() { return tokens_[pos_++]; }

  [[noreturn]] void fail(const std::string& expectation) const {
    const Token& t = peek();
    throw ParseError(expectation + ", found " + describe(t), t.line, t.column);
  }

  Formula parseImplicational() {
    Formula first = parseOr();
    if (peek().kind == Tok::Arrow) {
      std::vector<Formula> operands{first};
      while (peek().kind == Tok::Arrow) {
        take();
        operands.push_back(parseOr());
      }
      if (peek().kind == Tok::BackArrow) fail("'->' and '<-' cannot be mixed without parentheses");
      Formula acc = operands.back();
      for (std::size_t i = operands.size() - 1; i-- > 0;) acc = Formula::implies(operands[i], acc);
      return acc;
    }
    if (peek().kind == Tok::BackArrow) {
      Formula acc = first;
      while (peek().kind == Tok::BackArrow) {
        take();
        acc = Formula::coimplies(acc, parseOr());
      }
      if (peek().kind == Tok::Arrow) fail("'->' and '<-' cannot be mixed without parentheses");
      return acc;
    }
    return first;
  }

  Formula parseOr() {
    Formula acc = parseAnd();
    while (peek().kind == Tok::Or) {
      take();
      acc = Formula::disj(acc, parseAnd());
    }
    return acc;
  }

  Formula parseAnd() {
    Formula acc = parseUnary();
    while (peek().kind == Tok::And) {
      take();
      acc = Formula::conj(acc, parseUnary());
    }
    return acc;
  }

  Formula parseUnary() {
    switch (peek().kind) {
      case Tok::Not: take(); return Formula::negation(parseUnary());
      case Tok::Next: take(); return Formula::next(parseUnary());
      case Tok::Eventually: take(); return Formula::eventually(parseUnary());
      case Tok::Henceforth: take(); return Formula::henceforth(parseUnary());
      default: return parseAtom();
    }
  }

  Formula parseAtom() {
    switch (peek().kind) {
      case Tok::Bot: take(); return Formula::bottom();
      case Tok::Top: take(); return Formula::top();
      case Tok::Ident: return Formula::var(take().text);
      case Tok::LParen: {
        take();
        Formula inner = parseImplicational();
        if (peek().kind != Tok::RParen) fail("expected ')'");
        take();
        return inner;
      }
      default: fail("expected a formula");
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

int precedence(Op op) {
  switch (op) {
    case Op::Implies:
    case Op::Coimplies: return 1;
    case Op::Or: return 2;
    case Op::And: return 3;
    case Op::Next:
    case Op::Eventually:
    case Op::Henceforth: return 4;
    default: return 5;
  }
}

void render(const Formula& f, std::string& out);

void renderWrapped(const Formula& f, bool wrap, std::string& out) {
  if (wrap) out += '(';
  render(f, out);
  if (wrap) out += ')';
}

void render(const Formula& f, std::string& out) {
  const Op op = f.op();
  switch (op) {
    case Op::Bottom: out += "bot"; return;
    case Op::Var: out += f.name(); return;
    case Op::Next:
    case Op::Eventually:
    case Op::Henceforth:
      out += op == Op::Next ? "X " : op == Op::Eventually ? "F " : "G ";
      renderWrapped(f.inner(), precedence(f.inner().op()) < 4, out);
      return;
    default: break;
  }
  const int p = precedence(op);
  const Op lop = f.left().op(), rop = f.right().op();
  bool wrapLeft = false, wrapRight = false;
  const char* sym = "";
  switch (op) {
    case Op::And:
      sym = " & ";
      wrapLeft = precedence(lop) < p;
      wrapRight = precedence(rop) <= p;
      break;
    case Op::Or:
      sym = " | ";
      wrapLeft = precedence(lop) < p;
      wrapRight = precedence(rop) <= p;
      break;
    case Op::Implies:
      sym = " -> ";
      wrapLeft = precedence(lop) <= p;
      wrapRight = precedence(rop) < p || rop == Op::Coimplies;
      break;
    case Op::Coimplies:
      sym = " <- ";
      wrapLeft = precedence(lop) < p || lop == Op::Implies;
      wrapRight = precedence(rop) <= p;
      break;
    default: break;
  }
  renderWrapped(f.left(), wrapLeft, out);
  out += sym;
  renderWrapped(f.right(), wrapRight, out);
}

void collectVariables(const Formula& f, std::set<std::string>& out) {
  if (f.op() == Op::Var) {
    out.insert(f.name());
  } else if (isBinary(f.op())) {
    collectVariables(f.left(), out);
    collectVariables(f.right(), out);
  } else if (isUnary(f.op())) {
    collectVariables(f.inner(), out);
  }
}

}  // namespace

Formula parse(std::string_view text) { return Parser(tokenize(text)).parseAll(); }

std::string print(const Formula& f) {
  std::string out;
  render(f, out);
  return out;
}

std::ostream& operator<<(std::ostream& os, const Formula& f) { return os << print(f); }

std::vector<std::string> variables(const Formula& f) {
  std::set<std::string> names;
  collectVariables(f, names);
  return {names.begin(), names.end()};
}

// ---------------------------------------------------------------------------
// Closure

Closure::Closure(const Formula& root) { add(root); }

Closure::Closure(const std::vector<Formula>& roots) {
  for (const auto& r : roots) add(r);
}

void Closure::add(const Formula& f) {
  if (index_.count(f)) return;
  Entry e;
  e.op = f.op();
  if (isBinary(f.op())) {
    add(f.left());
    add(f.right());
    e.left = static_cast<int>(index_.at(f.left()));
    e.right = static_cast<int>(index_.at(f.right()));
  } else if (isUnary(f.op())) {
    add(f.inner());
    e.left = static_cast<int>(index_.at(f.inner()));
  }
  index_.emplace(f, formulas_.size());
  formulas_.push_back(f);
  entries_.push_back(e);
}

std::optional<std::size_t> Closure::find(const Formula& f) const {
  auto it = index_.find(f);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Closure::indexOf(const Formula& f) const {
  auto idx = find(f);
  if (!idx) throw std::out_of_range("formula '" + print(f) + "' is not in the closure");
  return *idx;
}

}  // namespace gtl
