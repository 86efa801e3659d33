#include "doctest.h"

#include <algorithm>
#include <random>

#include "gtl/unwind.hpp"
#include "support/generators.hpp"

using namespace gtl;

namespace {

void checkGrid(const Quasimodel& q, const FiniteGrid& g) {
  const auto succ = q.successors();
  for (const auto& p : g.paths) {
    REQUIRE(p.worlds.size() == g.length());
    for (std::size_t t = 0; t + 1 < p.worlds.size(); ++t) {
      const auto& s = succ[p.worlds[t]];
      CHECK(std::binary_search(s.begin(), s.end(), p.worlds[t + 1]));
      CHECK(isSensiblePair(q.sigma, q.worlds[p.worlds[t]].label, q.worlds[p.worlds[t + 1]].label));
    }
  }
  for (std::size_t i = 0; i + 1 < g.paths.size(); ++i) {
    for (std::size_t t = 0; t < g.length(); ++t) CHECK(q.leq(g.paths[i].worlds[t], g.paths[i + 1].worlds[t]));
    CHECK(g.paths[i].worlds != g.paths[i + 1].worlds);
  }
  for (const auto& d : g.queue) CHECK(isDefect(q, g, d));
}

}  // namespace

TEST_CASE("budget 0 and 1") {
  BiModel m;
  m.worlds = 2;
  m.flow = PeriodicFlow(2, 0);
  WorldStateSet p(2, 2);
  p.set(0, 0);
  m.valuation.emplace("p", p);
  const auto q = quotient(m, Closure(parse("F ~p")));

  const auto g0 = unwindBounded(q, 0, 0);
  REQUIRE(g0.paths.size() == 1);
  CHECK(g0.paths[0].worlds == std::vector<std::size_t>{0});
  CHECK(g0.steps == 0);
  REQUIRE(!g0.queue.empty());
  CHECK(g0.queue.front().kind == DefectKind::Seriality);
  const auto expected = gridDefects(q, g0);
  REQUIRE(g0.queue.size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) CHECK(g0.queue[i].sameDefect(expected[i]));

  for (std::size_t s = 0; s < q.size(); ++s) {
    const auto g1 = unwindBounded(q, s, 1);
    for (const auto& path : g1.paths) CHECK(path.worlds.size() == 2);
    CHECK(g1.trace.size() == 1);
  }
}

TEST_CASE("unwinding rejects invalid input") {
  Quasimodel q;
  q.sigma = Closure(parse("F p"));
  q.worlds = {QWorld{0, 0, 0, 0b10}};
  q.rel = {{0, 0}};
  CHECK_THROWS_AS(unwindBounded(q, 0, 3), std::invalid_argument);
  q.worlds[0].label = 0;
  CHECK_THROWS_AS(unwindBounded(q, 4, 3), std::invalid_argument);
}

TEST_CASE("unwinding invariants on random quotients") {
  std::mt19937 rng(43);
  std::size_t inserted = 0;
  for (int i = 0; i < 80; ++i) {
    const Formula f = testing::randomFormulaWithClosure(rng, 6);
    const auto m = testing::randomBiModel(rng, 4, 4, {"p", "q"});
    const auto q = quotient(m, Closure(f));
    INFO(print(f));
    FiniteGrid g = unwindBounded(q, std::uniform_int_distribution<std::size_t>(0, q.size() - 1)(rng), 0);
    for (int step = 0; step < 25; ++step) {
      const Defect head = g.queue.front();
      unwindStep(q, g);
      if (head.kind != DefectKind::Seriality) CHECK_FALSE(isDefect(q, g, head));
      checkGrid(q, g);
    }
    inserted += g.paths.size() - 1;
  }
  CHECK(inserted > 0);
}
