#include "doctest.h"

#include <random>

#include "gtl/ltl.hpp"
#include "gtl/semantics.hpp"
#include "support/generators.hpp"

using namespace gtl;

TEST_CASE("translate examples") {
  CHECK(translate(parse("p")) == parse("~~p"));
  CHECK(translate(parse("bot")) == parse("bot"));
  CHECK(translate(parse("F (p & q)")) == parse("F (~~p & ~~q)"));
  CHECK(translate(parse("p <- X q")) == parse("~~p <- X ~~q"));
}

TEST_CASE("translations take crisp values") {
  std::mt19937 rng(61);
  for (int i = 0; i < 300; ++i) {
    const Formula f = testing::randomFormulaWithClosure(rng, 8);
    const Formula t = translate(f);
    const auto m = testing::randomRealModel(rng, 4, {"p", "q"});
    const auto crisp = testing::randomCrispModel(rng, 4, {"p", "q"});
    for (std::size_t s = 0; s < m.flow.states(); ++s) {
      const Rational v = evalReal(m, t, s);
      CHECK((v == Rational(0) || v == Rational(1)));
    }
    for (std::size_t s = 0; s < crisp.flow.states(); ++s) CHECK(evalReal(crisp, t, s) == evalReal(crisp, f, s));
  }
}
