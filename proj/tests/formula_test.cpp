#include "doctest.h"

#include <random>

#include "gtl/formula.hpp"
#include "support/generators.hpp"

using namespace gtl;

namespace {
Formula p() { return Formula::var("p"); }
Formula q() { return Formula::var("q"); }
Formula r() { return Formula::var("r"); }
}  // namespace

TEST_CASE("parse reads the grammar") {
  CHECK(parse("F (p -> X p)") == Formula::eventually(Formula::implies(p(), Formula::next(p()))));
  CHECK(parse("~p") == Formula::implies(p(), Formula::bottom()));
  CHECK(parse("p & q | r") == Formula::disj(Formula::conj(p(), q()), r()));
  CHECK(parse("top") == Formula::implies(Formula::bottom(), Formula::bottom()));
  CHECK(parse("p -> q -> r") == Formula::implies(p(), Formula::implies(q(), r())));
  CHECK(parse("p <- q <- r") == Formula::coimplies(Formula::coimplies(p(), q()), r()));
  CHECK(parse("G~Xp") == Formula::henceforth(Formula::negation(Formula::next(p()))));
  CHECK(parse("p_1 & aB9") == Formula::conj(Formula::var("p_1"), Formula::var("aB9")));
  CHECK(parse("p -> (q <- r)") == Formula::implies(p(), Formula::coimplies(q(), r())));
}

TEST_CASE("parse errors carry positions") {
  try {
    parse("p &\n  & q");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 3);
  }
  CHECK_THROWS_AS(parse("p -> q <- r"), ParseError);
  CHECK_THROWS_AS(parse("p <- q -> r"), ParseError);
  CHECK_THROWS_AS(parse("(p"), ParseError);
  CHECK_THROWS_AS(parse("P"), ParseError);
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("p q"), ParseError);
}

TEST_CASE("print uses minimal parentheses and no sugar") {
  CHECK(print(Formula::eventually(Formula::implies(p(), Formula::next(p())))) == "F (p -> X p)");
  CHECK(print(Formula::bottom()) == "bot");
  CHECK(print(Formula::implies(p(), Formula::bottom())) == "p -> bot");
  CHECK(print(parse("(p -> q) -> r")) == "(p -> q) -> r");
  CHECK(print(parse("p -> q -> r")) == "p -> q -> r");
  CHECK(print(parse("(p <- q) <- r")) == "p <- q <- r");
  CHECK(print(parse("p <- (q <- r)")) == "p <- (q <- r)");
  CHECK(print(parse("p & (q & r)")) == "p & (q & r)");
  CHECK(print(parse("(p | q) & r")) == "(p | q) & r");
  CHECK(print(parse("X (p & q)")) == "X (p & q)");
}

TEST_CASE("print/parse round trip on random formulas") {
  std::mt19937 rng(7);
  for (int i = 0; i < 2000; ++i) {
    const Formula f = testing::randomFormula(rng, 5, {"p", "q", "r"});
    const std::string text = print(f);
    INFO(text);
    CHECK(parse(text) == f);
  }
}

TEST_CASE("closure is the topologically ordered set of subformulas") {
  const Closure c(parse("F (p -> X p)"));
  REQUIRE(c.size() == 4);
  CHECK(c[0] == p());
  CHECK(c[1] == parse("X p"));
  CHECK(c[2] == parse("p -> X p"));
  CHECK(c[3] == parse("F (p -> X p)"));
  CHECK(c.entry(2).left == 0);
  CHECK(c.entry(2).right == 1);

  CHECK(Closure(p()).size() == 1);
  const Closure neg(parse("~p"));
  CHECK(neg.size() == 3);
  CHECK(neg.contains(Formula::bottom()));
  CHECK_THROWS_AS(neg.indexOf(q()), std::out_of_range);
}

TEST_CASE("closure properties on random formulas") {
  std::mt19937 rng(11);
  for (int i = 0; i < 500; ++i) {
    const Formula f = testing::randomFormula(rng, 5, {"p", "q"});
    const Closure c(f);
    CHECK(c.size() <= f.size());
    for (std::size_t k = 0; k < c.size(); ++k) {
      const auto& e = c.entry(k);
      if (e.left >= 0) CHECK(e.left < static_cast<int>(k));
      if (e.right >= 0) CHECK(e.right < static_cast<int>(k));
      const Closure sub(c[k]);
      for (const auto& g : sub.formulas()) CHECK(c.contains(g));
    }
  }
}

TEST_CASE("structural equality and ordering") {
  CHECK(parse("p & q") == parse("(p & q)"));
  CHECK(parse("p & q") != parse("q & p"));
  CHECK((parse("p") < parse("X p")));
  CHECK(!(parse("p") < parse("p")));
  CHECK(variables(parse("q & F (p | q)")) == std::vector<std::string>{"p", "q"});
}
