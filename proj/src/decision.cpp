#include "gtl/decision.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <stdexcept>
#include <unordered_map>

#include <boost/container_hash/hash.hpp>
#include <omp.h>

#include "gtl/successor_graph.hpp"

namespace gtl {

namespace {

using Edges = std::vector<std::vector<MomentEdge>>;

std::uint64_t compose(std::uint64_t from, const ConvexRelation& r) {
  std::uint64_t out = 0;
  for (; from != 0; from &= from - 1) out |= r.row(static_cast<std::size_t>(std::countr_zero(from)));
  return out;
}

/// Tarjan, iterative; component ids in reverse topological order.
std::vector<std::uint32_t> stronglyConnected(const Edges& edges) {
  const std::size_t n = edges.size();
  constexpr std::uint32_t kUnset = UINT32_MAX;
  std::vector<std::uint32_t> index(n, kUnset), low(n, 0), comp(n, kUnset);
  std::vector<char> onStack(n, 0);
  std::vector<std::uint32_t> stack;
  std::vector<std::pair<std::uint32_t, std::size_t>> calls;
  std::uint32_t counter = 0, comps = 0;
  for (std::uint32_t root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    calls.emplace_back(root, 0);
    while (!calls.empty()) {
      auto& [v, next] = calls.back();
      if (next == 0) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        onStack[v] = 1;
      }
      if (next < edges[v].size()) {
        const std::uint32_t w = edges[v][next++].target;
        if (index[w] == kUnset) {
          calls.emplace_back(w, 0);
        } else if (onStack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::uint32_t w;
        do {
          w = stack.back();
          stack.pop_back();
          onStack[w] = 0;
          comp[w] = comps;
        } while (w != v);
        ++comps;
      }
      const std::uint32_t done = v;
      calls.pop_back();
      if (!calls.empty()) low[calls.back().first] = std::min(low[calls.back().first], low[done]);
    }
  }
  return comp;
}

struct Step {
  std::uint32_t moment;
  std::uint32_t edge;
  std::uint32_t relation;
};

struct LoopResult {
  bool accepted = false;
  std::vector<Step> steps;  // moment is the moment reached by the step
  std::size_t visited = 0;
};

class LoopSearch {
 public:
  LoopSearch(const MomentGraph& graph, const Edges& edges, const std::vector<std::uint32_t>& scc)
      : graph_(graph), edges_(edges), scc_(scc) {
    const auto& sigma = graph.sigma();
    for (std::size_t i = 0; i < sigma.size(); ++i) {
      if (sigma.entry(i).op == Op::Eventually) diamonds_.push_back(i);
      if (sigma.entry(i).op == Op::Henceforth) boxes_.push_back(i);
    }
    realizes_.resize(graph.size());
    refutes_.resize(graph.size());
    for (std::size_t m = 0; m < graph.size(); ++m) {
      const Moment& mo = graph.moment(m);
      for (std::size_t d : diamonds_) realizes_[m].push_back(positionsWhere(mo, sigma.entry(d).left, true));
      for (std::size_t b : boxes_) refutes_[m].push_back(positionsWhere(mo, sigma.entry(b).left, false));
    }
  }

  LoopResult run(std::uint32_t mf) const {
    using Key = std::vector<std::uint64_t>;
    const Moment& top = graph_.moment(mf);
    const std::size_t n = top.size();

    Key init(1 + 3 * n, 0);
    init[0] = mf;
    for (std::size_t k = 0; k < n; ++k) {
      std::uint64_t dia = 0, box = 0;
      for (std::size_t d = 0; d < diamonds_.size(); ++d) {
        const auto inner = static_cast<std::size_t>(graph_.sigma().entry(diamonds_[d]).left);
        if (has(top[k], diamonds_[d]) && !has(top[k], inner)) dia |= std::uint64_t{1} << d;
      }
      for (std::size_t b = 0; b < boxes_.size(); ++b) {
        const auto inner = static_cast<std::size_t>(graph_.sigma().entry(boxes_[b]).left);
        if (!has(top[k], boxes_[b]) && has(top[k], inner)) box |= std::uint64_t{1} << b;
      }
      init[1 + 3 * k] = (dia | box) != 0 ? std::uint64_t{1} << k : 0;
      init[2 + 3 * k] = dia;
      init[3 + 3 * k] = box;
    }

    struct Parent {
      std::uint32_t prev;
      Step step;
    };
    std::vector<Key> states{init};
    std::vector<Parent> parents{{UINT32_MAX, {mf, 0, 0}}};
    std::unordered_map<Key, std::uint32_t, boost::hash<Key>> seen{{init, 0}};

    LoopResult result;
    Key next(init.size());
    for (std::size_t head = 0; head < states.size(); ++head) {
      const auto m = static_cast<std::uint32_t>(states[head][0]);
      const auto& out = edges_[m];
      for (std::uint32_t e = 0; e < out.size(); ++e) {
        const std::uint32_t t = out[e].target;
        if (scc_[t] != scc_[mf]) continue;
        for (std::uint32_t ri = 0; ri < out[e].relations.size(); ++ri) {
          const ConvexRelation& r = out[e].relations[ri];
          const Key& cur = states[head];
          next[0] = t;
          bool pending = false;
          for (std::size_t k = 0; k < n; ++k) {
            const std::uint64_t star = compose(cur[1 + 3 * k], r);
            std::uint64_t dia = cur[2 + 3 * k], box = cur[3 + 3 * k];
            for (std::uint64_t bits = dia; bits != 0; bits &= bits - 1) {
              const auto d = static_cast<std::size_t>(std::countr_zero(bits));
              if (star & realizes_[t][d]) dia &= ~(std::uint64_t{1} << d);
            }
            for (std::uint64_t bits = box; bits != 0; bits &= bits - 1) {
              const auto b = static_cast<std::size_t>(std::countr_zero(bits));
              if (star & refutes_[t][b]) box &= ~(std::uint64_t{1} << b);
            }
            const bool open = (dia | box) != 0;
            pending = pending || open;
            next[1 + 3 * k] = open ? star : 0;
            next[2 + 3 * k] = dia;
            next[3 + 3 * k] = box;
          }
          const Parent link{static_cast<std::uint32_t>(head), {t, e, ri}};
          if (t == mf && !pending) {
            result.accepted = true;
            result.steps.push_back(link.step);
            for (std::uint32_t s = link.prev; parents[s].prev != UINT32_MAX; s = parents[s].prev)
              result.steps.push_back(parents[s].step);
            std::reverse(result.steps.begin(), result.steps.end());
            result.visited = states.size();
            return result;
          }
          if (seen.emplace(next, static_cast<std::uint32_t>(states.size())).second) {
            states.push_back(next);
            parents.push_back(link);
          }
        }
      }
    }
    result.visited = states.size();
    return result;
  }

 private:
  const MomentGraph& graph_;
  const Edges& edges_;
  const std::vector<std::uint32_t>& scc_;
  std::vector<std::size_t> diamonds_, boxes_;
  std::vector<std::vector<std::uint64_t>> realizes_, refutes_;  // per moment, per diamond/box

  static std::uint64_t positionsWhere(const Moment& m, int formula, bool member) {
    std::uint64_t out = 0;
    for (std::size_t x = 0; x < m.size(); ++x) {
      if (has(m[x], formula) == member) out |= std::uint64_t{1} << x;
    }
    return out;
  }
};

}  // namespace

Decision decide(const Formula& f, const DecideOptions& options) {
  const Closure sigma(f);
  requireClosureFits(sigma, std::min(options.maxSigma, kMaxClosureSize));
  const std::size_t top = sigma.indexOf(f);

  MomentLimits limits;
  limits.maxSigma = options.maxSigma;
  MomentGraph graph(sigma, enumerateMoments(sigma, limits));
  const Edges edges = options.threads == 1 ? graph.buildSerial() : graph.buildParallel(options.threads);
  const auto scc = stronglyConnected(edges);

  Decision out;
  out.stats.sigma = sigma.size();
  out.stats.moments = graph.size();
  for (const auto& e : edges) out.stats.edges += e.size();

  // phase 1: breadth-first from every moment whose top type omits f
  constexpr std::uint32_t kNone = UINT32_MAX;
  std::vector<std::uint32_t> parent(graph.size(), kNone), parentEdge(graph.size(), 0);
  std::vector<char> reached(graph.size(), 0);
  std::vector<std::uint32_t> order;
  for (std::uint32_t m = 0; m < graph.size(); ++m) {
    if (graph.moment(m).falsifies(top)) {
      reached[m] = 1;
      order.push_back(m);
    }
  }
  for (std::size_t head = 0; head < order.size(); ++head) {
    const std::uint32_t m = order[head];
    for (std::uint32_t e = 0; e < edges[m].size(); ++e) {
      const std::uint32_t t = edges[m][e].target;
      if (reached[t]) continue;
      reached[t] = 1;
      parent[t] = m;
      parentEdge[t] = e;
      order.push_back(t);
    }
  }
  out.stats.reachable = order.size();

  std::vector<std::uint32_t> sccSize(graph.size(), 0);
  for (auto c : scc) ++sccSize[c];
  std::vector<std::uint32_t> candidates;
  for (std::uint32_t m : order) {
    const bool selfLoop = std::any_of(edges[m].begin(), edges[m].end(), [&](const MomentEdge& e) { return e.target == m; });
    if (sccSize[scc[m]] > 1 || selfLoop) candidates.push_back(m);
  }

  // phase 2: first accepting candidate in discovery order
  const LoopSearch search(graph, edges, scc);
  const int team = options.threads > 0 ? options.threads : omp_get_max_threads();
  const std::size_t batch = options.threads == 1 ? 1 : static_cast<std::size_t>(team) * 2;
  std::optional<std::size_t> winner;
  LoopResult found;
  for (std::size_t begin = 0; begin < candidates.size() && !winner; begin += batch) {
    const std::size_t end = std::min(candidates.size(), begin + batch);
    std::vector<LoopResult> results(end - begin);
    if (end - begin == 1) {
      results[0] = search.run(candidates[begin]);
    } else {
#pragma omp parallel for schedule(dynamic, 1) num_threads(team)
      for (std::int64_t i = 0; i < static_cast<std::int64_t>(end - begin); ++i)
        results[static_cast<std::size_t>(i)] = search.run(candidates[begin + static_cast<std::size_t>(i)]);
    }
    for (std::size_t i = 0; i < results.size(); ++i) {
      out.stats.candidates += 1;
      out.stats.loopStates += results[i].visited;
      if (results[i].accepted) {
        winner = begin + i;
        found = std::move(results[i]);
        break;
      }
    }
  }

  if (!winner) {
    out.valid = true;
    return out;
  }

  const std::uint32_t mf = candidates[*winner];
  Witness w;
  w.formula = f;
  std::vector<std::uint32_t> prefix;
  for (std::uint32_t m = mf; m != kNone; m = parent[m]) prefix.push_back(m);
  std::reverse(prefix.begin(), prefix.end());
  for (std::size_t s = 0; s < prefix.size(); ++s) {
    w.moments.push_back(graph.moment(prefix[s]));
    if (s + 1 < prefix.size()) w.relations.push_back(edges[prefix[s]][parentEdge[prefix[s + 1]]].relations.front());
  }
  w.pivot = prefix.size() - 1;
  std::uint32_t at = mf;
  for (const Step& s : found.steps) {
    w.relations.push_back(edges[at][s.edge].relations[s.relation]);
    w.moments.push_back(graph.moment(s.moment));
    at = s.moment;
  }
  out.witness = std::move(w);
  return out;
}

WitnessCheck verifyWitness(const Formula& f, const Witness& w) {
  WitnessCheck check;
  auto& diag = check.diagnostics;
  const Closure sigma(f);
  const std::size_t N = w.moments.size();

  if (sigma.size() > kMaxClosureSize) {
    diag.push_back("shape: closure too large");
    return check;
  }
  if (!(w.formula == f)) {
    diag.push_back("shape: witness is for '" + print(w.formula) + "', not '" + print(f) + "'");
    return check;
  }
  if (N < 2 || w.pivot + 1 >= N) diag.push_back("shape: need a loop of length at least 1 after the pivot");
  if (w.relations.size() + 1 != N) diag.push_back("shape: need one relation per consecutive pair of moments");
  for (std::size_t j = 0; diag.empty() && j + 1 < N; ++j) {
    if (w.relations[j].sourceLen() != w.moments[j].size() || w.relations[j].targetLen() != w.moments[j + 1].size())
      diag.push_back("shape: relation " + std::to_string(j) + " does not match its moments");
  }
  if (!diag.empty()) return check;

  for (std::size_t j = 0; j < N; ++j) {
    if (!isMoment(sigma, w.moments[j].chain)) diag.push_back("moment: entry " + std::to_string(j) + " is not a moment");
  }
  const std::size_t top = sigma.indexOf(f);
  if (!w.moments.front().falsifies(top)) diag.push_back("lasso: the first moment does not omit the formula at its top");
  if (w.moments[w.pivot] != w.moments.back()) diag.push_back("lasso: the loop does not close on the pivot moment");
  for (std::size_t j = 0; j + 1 < N; ++j) {
    const auto v = checkRelation(sigma, w.moments[j], w.moments[j + 1], w.relations[j]);
    if (!v.all()) {
      std::string what;
      for (const auto& name : v.failures()) what += (what.empty() ? "" : ", ") + name;
      diag.push_back("relation: step " + std::to_string(j) + " fails " + what);
    }
  }
  if (!diag.empty()) return check;

  // within one lap, reaching the final copy of the pivot moment included
  const Moment& pivot = w.moments[w.pivot];
  for (std::size_t k = 0; k < pivot.size(); ++k) {
    for (std::size_t i = 0; i < sigma.size(); ++i) {
      const auto& e = sigma.entry(i);
      const bool dia = e.op == Op::Eventually && has(pivot[k], i);
      const bool box = e.op == Op::Henceforth && !has(pivot[k], i);
      if (!dia && !box) continue;
      auto done = [&](std::size_t time, std::uint64_t reach) {
        for (; reach != 0; reach &= reach - 1) {
          if (has(w.moments[time][static_cast<std::size_t>(std::countr_zero(reach))], e.left) == dia) return true;
        }
        return false;
      };
      std::uint64_t reach = std::uint64_t{1} << k;
      bool ok = done(w.pivot, reach);
      for (std::size_t s = w.pivot; !ok && s + 1 < N; ++s) {
        reach = compose(reach, w.relations[s]);
        ok = done(s + 1, reach);
      }
      if (!ok) {
        diag.push_back(std::string(dia ? "diamond: " : "box: ") + print(sigma[i]) + " at pivot position " +
                       std::to_string(k) + (dia ? " is never realized" : " is never refuted") + " within the loop");
      }
    }
  }
  check.ok = diag.empty();
  return check;
}

Quasimodel witnessToQuasimodel(const Witness& w) {
  const auto check = verifyWitness(w.formula, w);
  if (!check.ok) throw std::invalid_argument("invalid witness: " + check.diagnostics.front());
  Quasimodel q;
  q.sigma = Closure(w.formula);
  const std::size_t columns = w.moments.size() - 1;
  std::vector<std::size_t> first(columns + 1, 0);
  for (std::size_t c = 0; c < columns; ++c) {
    first[c] = q.worlds.size();
    for (std::size_t s = 0; s < w.moments[c].size(); ++s)
      q.worlds.push_back(QWorld{q.worlds.size(), c, s, w.moments[c][s]});
  }
  for (std::size_t j = 0; j < columns; ++j) {
    const std::size_t target = j + 1 == columns ? w.pivot : j + 1;
    for (const auto& [x, y] : w.relations[j].pairs()) q.rel.emplace_back(first[j] + x, first[target] + y);
  }
  std::sort(q.rel.begin(), q.rel.end());
  return q;
}

}  // namespace gtl
