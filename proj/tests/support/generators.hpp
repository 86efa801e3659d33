#pragma once

#include <random>
#include <string>
#include <vector>

#include "gtl/formula.hpp"
#include "gtl/semantics.hpp"

namespace gtl::testing {

inline Formula randomFormula(std::mt19937& rng, int depth, const std::vector<std::string>& vars) {
  std::uniform_int_distribution<int> pick(0, 99);
  const int roll = pick(rng);
  if (depth <= 0 || roll < 20) {
    if (roll < 3) return Formula::bottom();
    return Formula::var(vars[std::uniform_int_distribution<std::size_t>(0, vars.size() - 1)(rng)]);
  }
  auto sub = [&] { return randomFormula(rng, depth - 1, vars); };
  switch (std::uniform_int_distribution<int>(0, 8)(rng)) {
    case 0: return Formula::conj(sub(), sub());
    case 1: return Formula::disj(sub(), sub());
    case 2: return Formula::implies(sub(), sub());
    case 3: return Formula::coimplies(sub(), sub());
    case 4: return Formula::next(sub());
    case 5: return Formula::eventually(sub());
    case 6: return Formula::henceforth(sub());
    case 7: return Formula::negation(sub());
    default: return Formula::implies(sub(), sub());
  }
}

/// Rejection-samples a formula whose closure has at most maxClosure members.
inline Formula randomFormulaWithClosure(std::mt19937& rng, std::size_t maxClosure,
                                        const std::vector<std::string>& vars = {"p", "q"}) {
  for (;;) {
    Formula f = randomFormula(rng, 4, vars);
    if (Closure(f).size() <= maxClosure) return f;
  }
}

inline PeriodicFlow randomFlow(std::mt19937& rng, std::size_t maxStates) {
  const std::size_t n = std::uniform_int_distribution<std::size_t>(1, maxStates)(rng);
  return PeriodicFlow(n, std::uniform_int_distribution<std::size_t>(0, n - 1)(rng));
}

/// Values are k/denominator.
inline RealModel randomRealModel(std::mt19937& rng, std::size_t maxStates, const std::vector<std::string>& vars,
                                 std::int64_t denominator = 8) {
  RealModel m;
  m.flow = randomFlow(rng, maxStates);
  std::uniform_int_distribution<std::int64_t> k(0, denominator);
  for (const auto& v : vars) {
    std::vector<Rational> values;
    for (std::size_t t = 0; t < m.flow.states(); ++t) values.emplace_back(k(rng), denominator);
    m.valuation[v] = std::move(values);
  }
  return m;
}

inline RealModel randomCrispModel(std::mt19937& rng, std::size_t maxStates, const std::vector<std::string>& vars) {
  return randomRealModel(rng, maxStates, vars, 1);
}

inline BiModel randomBiModel(std::mt19937& rng, std::size_t maxWorlds, std::size_t maxStates,
                             const std::vector<std::string>& vars) {
  BiModel m;
  m.worlds = std::uniform_int_distribution<std::size_t>(1, maxWorlds)(rng);
  m.flow = randomFlow(rng, maxStates);
  std::uniform_int_distribution<std::size_t> cut(0, m.worlds);
  for (const auto& v : vars) {
    WorldStateSet set(m.worlds, m.flow.states());
    for (std::size_t t = 0; t < m.flow.states(); ++t) {
      const std::size_t c = cut(rng);
      for (std::size_t w = 0; w < c; ++w) set.set(w, t);
    }
    m.valuation.emplace(v, std::move(set));
  }
  return m;
}

}  // namespace gtl::testing
