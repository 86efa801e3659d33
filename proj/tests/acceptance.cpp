// One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "gtl/decision.hpp"
#include "gtl/ltl.hpp"
#include "gtl/quasimodel.hpp"
#include "gtl/semantics.hpp"
#include "gtl/successor.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace gtl;

namespace {

// Runtime ceilings in seconds.
constexpr double kLimitNoFiniteModel = 10;
constexpr double kLimitExhaustive = 60;
constexpr double kLimitEmbedding = 120;
constexpr double kLimitSuite = 300;

struct Verdict {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

using Clock = std::chrono::steady_clock;

double seconds(Clock::time_point since) { return std::chrono::duration<double>(Clock::now() - since).count(); }

Verdict noFiniteModel() {
  Verdict v;
  const auto t0 = Clock::now();
  const Formula f = parse("F (p -> X p)");
  const auto d = decide(f);
  if (d.valid || !d.witness) {
    v.fail("decided valid");
    return v;
  }
  const auto check = verifyWitness(f, *d.witness);
  if (!check.ok) v.fail("witness rejected: " + check.diagnostics.front());
  const auto q = witnessToQuasimodel(*d.witness);
  const auto qv = validateQuasimodel(q);
  if (!qv.valid()) v.fail("quasimodel rejected: " + qv.failures.front());
  if (!q.falsifies(f)) v.fail("quasimodel does not falsify");
  const double s = seconds(t0);
  if (s >= kLimitNoFiniteModel) v.fail("took " + std::to_string(s) + " s");
  if (v.pass) v.detail = "lasso of " + std::to_string(d.witness->moments.size()) + " moments";
  return v;
}

Verdict exhaustiveFiniteModels() {
  Verdict v;
  const auto t0 = Clock::now();
  const Formula f = parse("F (p -> X p)");
  std::size_t models = 0;
  for (std::size_t worlds = 1; worlds <= 3; ++worlds) {
    for (std::size_t states = 1; states <= 4; ++states) {
      for (std::size_t loop = 0; loop < states; ++loop) {
        // downward-closed valuations: a cut 0..worlds per state
        std::vector<std::size_t> cut(states, 0);
        while (true) {
          BiModel m;
          m.worlds = worlds;
          m.flow = PeriodicFlow(states, loop);
          WorldStateSet p(worlds, states);
          for (std::size_t t = 0; t < states; ++t) {
            for (std::size_t w = 0; w < cut[t]; ++w) p.set(w, t);
          }
          m.valuation.emplace("p", p);
          ++models;
          if (!isGloballyTrue(m, f)) v.fail("falsified on a model with " + std::to_string(worlds) + " worlds");
          std::size_t k = 0;
          while (k < states && ++cut[k] > worlds) cut[k++] = 0;
          if (k == states) break;
        }
      }
    }
  }
  const double s = seconds(t0);
  if (s >= kLimitExhaustive) v.fail("took " + std::to_string(s) + " s");
  if (v.pass) v.detail = std::to_string(models) + " models";
  return v;
}

Verdict goedelBase() {
  Verdict v;
  if (!decide(parse("(p -> q) | (q -> p)")).valid) v.fail("prelinearity not valid");
  if (decide(parse("p | ~p")).valid) v.fail("excluded middle valid");
  RealModel half;
  half.flow = PeriodicFlow(1, 0);
  half.valuation["p"] = {Rational(1, 2)};
  if (evalReal(half, parse("p | ~p"), 0) != Rational(1, 2)) v.fail("excluded middle not 1/2 at constant 1/2");
  if (!decide(parse("~p | ~~p")).valid) v.fail("weak excluded middle not valid");
  return v;
}

Verdict ltlEmbedding() {
  Verdict v;
  const auto t0 = Clock::now();
  const std::vector<std::pair<const char*, bool>> curated = {
      {"G p -> p", true},
      {"G (p -> q) -> (G p -> G q)", true},
      {"X ~p -> ~X p", true},
      {"~X p -> X ~p", true},
      {"G p -> (p & X G p)", true},
      {"(p & X G p) -> G p", true},
      {"F p -> (p | X F p)", true},
      {"(p | X F p) -> F p", true},
      {"F p -> G p", false},
      {"p -> G p", false},
  };
  DecideOptions options;
  options.maxSigma = 16;
  for (const auto& [text, classical] : curated) {
    const auto d = decide(translate(parse(text)), options);
    if (d.valid != classical) v.fail(std::string("wrong status for ") + text);
  }
  const double s = seconds(t0);
  if (s >= kLimitEmbedding) v.fail("took " + std::to_string(s) + " s");
  if (v.pass) v.detail = std::to_string(curated.size()) + " formulas";
  return v;
}

Verdict crispness() {
  Verdict v;
  std::mt19937 rng(1001);
  for (int i = 0; i < 500; ++i) {
    const Formula t = translate(testing::randomFormulaWithClosure(rng, 8));
    const auto m = testing::randomRealModel(rng, 4, {"p", "q"});
    for (std::size_t s = 0; s < m.flow.states(); ++s) {
      const Rational x = evalReal(m, t, s);
      if (x != Rational(0) && x != Rational(1)) v.fail(print(t) + " takes " + formatRational(x));
    }
  }
  return v;
}

struct SharedModels {
  std::vector<BiModel> models;
  std::vector<Formula> formulas;
};

SharedModels sharedModels() {
  SharedModels s;
  std::mt19937 rng(1002);
  for (int i = 0; i < 200; ++i) {
    s.models.push_back(testing::randomBiModel(rng, 4, 4, {"p", "q"}));
    s.formulas.push_back(testing::randomFormulaWithClosure(rng, 6));
  }
  return s;
}

Verdict quotientProperties(const SharedModels& shared) {
  Verdict v;
  for (std::size_t i = 0; i < shared.models.size(); ++i) {
    const BiModel& m = shared.models[i];
    const Closure sigma(shared.formulas[i]);
    const auto q = quotient(m, sigma);
    const auto qv = validateQuasimodel(q);
    if (!qv.valid()) v.fail("invalid quotient: " + qv.failures.front());
    if (q.size() > quotientSizeBound(sigma.size())) v.fail("size bound exceeded");
    if (q.height() > sigma.size() + 1) v.fail("height bound exceeded");
    for (const auto& g : sigma.formulas()) {
      if (q.falsifies(g) != !evalBi(m, g).full()) v.fail("falsification differs on " + print(g));
    }
  }
  return v;
}

void checkBify(Verdict& v, const RealModel& rm, const Closure& sigma) {
  const auto values = evaluateReal(rm, sigma);
  const auto b = bify(rm, sigma);
  const auto sets = evaluateBi(b.model, sigma);
  for (std::size_t a = 0; a < sigma.size(); ++a) {
    for (std::size_t t = 0; t < rm.flow.states(); ++t) {
      for (std::size_t w = 0; w < b.model.worlds; ++w) {
        if (sets[a].contains(w, t) != (values[a][t] > b.thresholds[w])) v.fail("bify disagrees on " + print(sigma[a]));
      }
    }
  }
}

Verdict bridges(const SharedModels& shared) {
  Verdict v;
  std::mt19937 rng(1003);
  for (std::size_t i = 0; i < shared.models.size(); ++i) {
    const BiModel& m = shared.models[i];
    const Closure sigma(shared.formulas[i]);
    const auto sets = evaluateBi(m, sigma);
    const auto real = realify(m, sigma);
    const auto values = evaluateReal(real, sigma);
    const std::size_t N = m.flow.states();
    for (std::size_t a = 0; a < sigma.size(); ++a) {
      for (std::size_t t = 0; t < N; ++t) {
        if ((values[a][t] < Rational(1)) != (sets[a].countAt(t) < m.worlds))
          v.fail("realify disagrees on " + print(sigma[a]));
        for (std::size_t b = 0; b < sigma.size(); ++b) {
          for (std::size_t s = 0; s < N; ++s) {
            if ((sets[a].countAt(t) <= sets[b].countAt(s)) != (values[a][t] <= values[b][s]))
              v.fail("realify breaks the class order");
          }
        }
      }
    }
    checkBify(v, real, sigma);
    checkBify(v, testing::randomRealModel(rng, 4, {"p", "q"}), sigma);
  }
  return v;
}

// Every formula over {p, q, bot} whose closure has at most `limit` members.
std::vector<Formula> smallClosureFormulas(std::size_t limit) {
  std::vector<Formula> layer = {parse("p"), parse("q"), parse("bot")};
  std::set<std::string> seen;
  std::vector<Formula> all;
  for (const auto& f : layer) {
    seen.insert(print(f));
    all.push_back(f);
  }
  for (std::size_t depth = 1; depth < limit; ++depth) {
    std::vector<Formula> next;
    auto offer = [&](const Formula& f) {
      if (Closure(f).size() <= limit && seen.insert(print(f)).second) next.push_back(f);
    };
    const auto current = all;
    for (const auto& a : current) {
      offer(Formula::next(a));
      offer(Formula::eventually(a));
      offer(Formula::henceforth(a));
      for (const auto& b : current) {
        offer(Formula::conj(a, b));
        offer(Formula::disj(a, b));
        offer(Formula::implies(a, b));
        offer(Formula::coimplies(a, b));
      }
    }
    all.insert(all.end(), next.begin(), next.end());
  }
  return all;
}

Verdict successorOracle() {
  Verdict v;
  const auto formulas = smallClosureFormulas(3);
  const auto n = static_cast<std::int64_t>(formulas.size());
  std::vector<char> mismatch(formulas.size(), 0);
  std::vector<std::size_t> pairs(formulas.size(), 0);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < n; ++i) {
    const Closure sigma(formulas[static_cast<std::size_t>(i)]);
    const auto moments = enumerateMoments(sigma);
    for (const auto& a : moments) {
      for (const auto& b : moments) {
        ++pairs[static_cast<std::size_t>(i)];
        if (temporalSuccessors(sigma, a, b) != testing::bruteForceSuccessors(sigma, a, b))
          mismatch[static_cast<std::size_t>(i)] = 1;
      }
    }
  }
  std::size_t total = 0;
  for (std::size_t i = 0; i < formulas.size(); ++i) {
    total += pairs[i];
    if (mismatch[i]) v.fail("mismatch under " + print(formulas[i]));
  }
  if (v.pass) v.detail = std::to_string(formulas.size()) + " closures, " + std::to_string(total) + " moment pairs";
  return v;
}

Verdict soundness() {
  Verdict v;
  std::mt19937 rng(1004);
  std::size_t valid = 0;
  for (int i = 0; i < 100; ++i) {
    const Formula f = testing::randomFormulaWithClosure(rng, 8);
    const auto d = decide(f);
    if (d.valid) {
      ++valid;
      for (int k = 0; k < 200; ++k) {
        if (!isGloballyTrue(testing::randomRealModel(rng, 4, {"p", "q"}, 8), f)) v.fail("countermodel to valid " + print(f));
      }
      continue;
    }
    const auto check = verifyWitness(f, *d.witness);
    if (!check.ok) v.fail("witness rejected for " + print(f));
    const auto q = witnessToQuasimodel(*d.witness);
    if (!validateQuasimodel(q).valid() || !q.falsifies(f)) v.fail("quasimodel rejected for " + print(f));
  }
  if (v.pass) v.detail = std::to_string(valid) + " valid, " + std::to_string(100 - valid) + " falsifiable";
  return v;
}

}  // namespace

int main() {
  const auto start = Clock::now();
  const SharedModels shared = sharedModels();
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"no finite model formula is falsifiable", noFiniteModel},
      {"exhaustive small bi-relational models satisfy it", exhaustiveFiniteModels},
      {"Goedel base sanity", goedelBase},
      {"LTL embedding on curated formulas", ltlEmbedding},
      {"translations are crisp", crispness},
      {"quotient properties", [&] { return quotientProperties(shared); }},
      {"semantics bridges", [&] { return bridges(shared); }},
      {"successor oracle equivalence", successorOracle},
      {"soundness smoke test", soundness},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = Clock::now();
    Verdict v = criteria[i].second();
    if (i + 1 == criteria.size() && seconds(start) >= kLimitSuite) v.fail("suite took " + std::to_string(seconds(start)) + " s");
    std::printf("criterion %zu: %s  %s (%.2f s)%s%s\n", i + 1, v.pass ? "PASS" : "FAIL", criteria[i].first,
                seconds(t0), v.detail.empty() ? "" : ": ", v.detail.c_str());
    std::fflush(stdout);
    if (!v.pass) ++failures;
  }
  std::printf("total %.2f s\n", seconds(start));
  return failures == 0 ? 0 : 1;
}
