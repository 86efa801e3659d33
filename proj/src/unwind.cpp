#include "gtl/unwind.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace gtl {

std::string defectKindName(DefectKind k) {
  switch (k) {
    case DefectKind::Seriality: return "seriality";
    case DefectKind::Diamond: return "diamond";
    case DefectKind::Box: return "box";
    case DefectKind::Implication: return "implication";
    case DefectKind::Coimplication: return "coimplication";
  }
  return "?";
}

const GridPath* FiniteGrid::findPath(std::size_t id) const {
  for (const auto& p : paths) {
    if (p.id == id) return &p;
  }
  return nullptr;
}

namespace {

std::size_t pathIndex(const FiniteGrid& g, std::size_t id) {
  for (std::size_t i = 0; i < g.paths.size(); ++i) {
    if (g.paths[i].id == id) return i;
  }
  throw std::logic_error("unknown path id " + std::to_string(id));
}

bool witnesses(const Quasimodel& q, std::size_t world, int formula) {
  const auto& e = q.sigma.entry(static_cast<std::size_t>(formula));
  const TypeSet l = q.worlds[world].label;
  return has(l, e.left) && !has(l, e.right);
}

class Stepper {
 public:
  Stepper(const Quasimodel& q, FiniteGrid& g) : q_(q), g_(g), succ_(q.successors()), pred_(q.size()) {
    for (std::size_t a = 0; a < q.size(); ++a) {
      for (std::size_t b : succ_[a]) pred_[b].push_back(a);
    }
  }

  std::string process(const Defect& d) {
    const std::size_t pi = pathIndex(g_, d.path);
    const std::string head = defectKindName(d.kind) +
                             (d.formula >= 0 ? " " + print(q_.sigma[static_cast<std::size_t>(d.formula)]) : "") +
                             (d.kind == DefectKind::Implication || d.kind == DefectKind::Coimplication
                                  ? " at " + std::to_string(d.position)
                                  : "") +
                             " on path " + std::to_string(d.path);
    switch (d.kind) {
      case DefectKind::Seriality: {
        const auto& p = g_.paths[pi].worlds;
        extend(pi, {succ_.at(p.back()).front()});
        break;
      }
      case DefectKind::Diamond:
      case DefectKind::Box:
        extend(pi, realizingRun(g_.paths[pi].worlds.back(), d));
        break;
      case DefectKind::Implication:
      case DefectKind::Coimplication: {
        const std::size_t id = insertWitnessPath(pi, d);
        return head + " -> new path " + std::to_string(id);
      }
    }
    return head + " -> length " + std::to_string(g_.length());
  }

 private:
  const Quasimodel& q_;
  FiniteGrid& g_;
  std::vector<std::vector<std::size_t>> succ_, pred_;

  int rank(std::size_t w) const { return static_cast<int>(q_.worlds[w].rank); }

  // Least (greatest) member of `cands` that lies above (below) `bound` in its chain.
  std::optional<std::size_t> extreme(const std::vector<std::size_t>& cands, std::size_t bound, bool above) const {
    std::optional<std::size_t> best;
    for (std::size_t c : cands) {
      if (!q_.comparable(c, bound)) continue;
      if (above ? !q_.leq(bound, c) : !q_.leq(c, bound)) continue;
      if (!best || (above ? rank(c) < rank(*best) : rank(c) > rank(*best))) best = c;
    }
    return best;
  }

  /// Shortest run of one or more steps from `from` to a world realizing the defect.
  std::vector<std::size_t> realizingRun(std::size_t from, const Defect& d) const {
    const auto inner = static_cast<std::size_t>(q_.sigma.entry(static_cast<std::size_t>(d.formula)).left);
    auto done = [&](std::size_t w) { return has(q_.worlds[w].label, inner) == (d.kind == DefectKind::Diamond); };
    const std::size_t n = q_.size();
    std::vector<std::size_t> parent(n, n);
    std::vector<char> seen(n, 0);
    std::deque<std::size_t> frontier;
    for (std::size_t s : succ_[from]) {
      if (!seen[s]) {
        seen[s] = 1;
        parent[s] = n;
        frontier.push_back(s);
      }
    }
    while (!frontier.empty()) {
      const std::size_t w = frontier.front();
      frontier.pop_front();
      if (done(w)) {
        std::vector<std::size_t> run;
        for (std::size_t x = w; x != n; x = parent[x]) run.push_back(x);
        std::reverse(run.begin(), run.end());
        return run;
      }
      for (std::size_t s : succ_[w]) {
        if (!seen[s]) {
          seen[s] = 1;
          parent[s] = w;
          frontier.push_back(s);
        }
      }
    }
    throw std::logic_error("defect cannot be realized; relation is not omega-sensible");
  }

  /// Appends `run` to path pi, then extends every other path step by step against its
  /// already extended neighbour: upward with forth-up, downward with forth-down.
  void extend(std::size_t pi, const std::vector<std::size_t>& run) {
    const std::size_t k = g_.length();
    auto& anchor = g_.paths[pi].worlds;
    anchor.insert(anchor.end(), run.begin(), run.end());
    const std::size_t k2 = anchor.size();
    for (std::size_t i = pi + 1; i < g_.paths.size(); ++i) follow(g_.paths[i - 1].worlds, g_.paths[i].worlds, k, k2, true);
    for (std::size_t i = pi; i-- > 0;) follow(g_.paths[i + 1].worlds, g_.paths[i].worlds, k, k2, false);
  }

  void follow(const std::vector<std::size_t>& guide, std::vector<std::size_t>& path, std::size_t k, std::size_t k2,
              bool above) {
    for (std::size_t t = k - 1; t + 1 < k2; ++t) {
      const auto y = extreme(succ_[path[t]], guide[t + 1], above);
      if (!y) throw std::logic_error("relation is not fully confluent");
      path.push_back(*y);
    }
  }

  /// Implication: a new path strictly below the defective one at `position`, between
  /// its grid neighbours. Coimplication: mirror image, strictly above.
  std::size_t insertWitnessPath(std::size_t pi, const Defect& d) {
    const bool below = d.kind == DefectKind::Implication;
    const std::size_t j = d.position, k = g_.length();
    const std::size_t wj = g_.paths[pi].worlds[j];

    std::optional<std::size_t> vj;
    for (std::size_t c = 0; c < q_.size(); ++c) {
      if (c == wj || !q_.comparable(c, wj) || !witnesses(q_, c, d.formula)) continue;
      if (below ? !q_.leq(c, wj) : !q_.leq(wj, c)) continue;
      if (!vj || (below ? rank(c) > rank(*vj) : rank(c) < rank(*vj))) vj = c;
    }
    if (!vj) throw std::logic_error("no witness for " + print(q_.sigma[static_cast<std::size_t>(d.formula)]));

    // near: the closest path on the defective side of v at j (always exists); far: the
    // closest path on the other side, if any.
    auto strictlyAbove = [&](std::size_t a, std::size_t b) { return a != b && q_.leq(b, a); };
    std::optional<std::size_t> near, far;
    for (std::size_t i = 0; i < g_.paths.size(); ++i) {
      const std::size_t x = g_.paths[i].worlds[j];
      if (below ? strictlyAbove(x, *vj) : strictlyAbove(*vj, x)) {
        if (!near || (below ? i < *near : i > *near)) near = i;
      } else if (below ? strictlyAbove(*vj, x) : strictlyAbove(x, *vj)) {
        if (!far || (below ? i > *far : i < *far)) far = i;
      }
    }
    if (!near) throw std::logic_error("witness lies outside the grid order");
    const auto& u = g_.paths[*near].worlds;
    const std::vector<std::size_t>* t = far ? &g_.paths[*far].worlds : nullptr;

    std::vector<std::size_t> v(k);
    v[j] = *vj;
    auto clamp = [&](std::optional<std::size_t> y, std::size_t time, bool forward) {
      // keep v between t and u; convexity makes t's entry available when y overshoots
      if (t && (!y || (below ? !q_.leq((*t)[time], *y) : !q_.leq(*y, (*t)[time])))) {
        const std::size_t other = forward ? v[time - 1] : v[time + 1];
        const bool ok = forward ? std::binary_search(succ_[other].begin(), succ_[other].end(), (*t)[time])
                                : std::binary_search(succ_[(*t)[time]].begin(), succ_[(*t)[time]].end(), other);
        if (!ok) throw std::logic_error("relation is not convex");
        return (*t)[time];
      }
      if (!y) throw std::logic_error("relation is not fully confluent");
      return *y;
    };
    for (std::size_t s = j; s + 1 < k; ++s) v[s + 1] = clamp(extreme(succ_[v[s]], u[s + 1], !below), s + 1, true);
    for (std::size_t s = j; s > 0; --s) {
      std::vector<std::size_t> preds = pred_[v[s]];
      std::sort(preds.begin(), preds.end());
      v[s - 1] = clamp(extreme(preds, u[s - 1], !below), s - 1, false);
    }

    const std::size_t id = g_.nextPathId++;
    const std::size_t at = below ? *near : *near + 1;
    g_.paths.insert(g_.paths.begin() + static_cast<std::ptrdiff_t>(at), GridPath{id, std::move(v)});
    return id;
  }
};

}  // namespace

bool isDefect(const Quasimodel& q, const FiniteGrid& g, const Defect& d) {
  const GridPath* p = g.findPath(d.path);
  if (!p) return false;
  if (d.kind == DefectKind::Seriality) return true;
  const auto i = static_cast<std::size_t>(d.formula);
  const auto& e = q.sigma.entry(i);
  switch (d.kind) {
    case DefectKind::Diamond: {
      const TypeSet l = q.worlds[p->worlds.back()].label;
      return e.op == Op::Eventually && has(l, i) && !has(l, e.left);
    }
    case DefectKind::Box: {
      const TypeSet l = q.worlds[p->worlds.back()].label;
      return e.op == Op::Henceforth && !has(l, i) && has(l, e.left);
    }
    case DefectKind::Implication:
    case DefectKind::Coimplication: {
      const bool imp = d.kind == DefectKind::Implication;
      if (e.op != (imp ? Op::Implies : Op::Coimplies) || d.position >= p->worlds.size()) return false;
      if (has(q.worlds[p->worlds[d.position]].label, i) == imp) return false;
      const std::size_t pi = pathIndex(g, d.path);
      for (std::size_t k = 0; k < g.paths.size(); ++k) {
        if ((imp ? k <= pi : k >= pi) && witnesses(q, g.paths[k].worlds[d.position], d.formula)) return false;
      }
      return true;
    }
    default: return false;
  }
}

std::vector<Defect> gridDefects(const Quasimodel& q, const FiniteGrid& g) {
  std::vector<Defect> out;
  for (const auto& p : g.paths) {
    out.push_back(Defect{DefectKind::Seriality, p.id, -1, 0, 0, 0});
    auto scan = [&](DefectKind kind, Op op, bool positional) {
      const std::size_t positions = positional ? p.worlds.size() : 1;
      for (std::size_t j = 0; j < positions; ++j) {
        for (std::size_t i = 0; i < q.sigma.size(); ++i) {
          if (q.sigma.entry(i).op != op) continue;
          Defect d{kind, p.id, static_cast<int>(i), j, 0, 0};
          if (isDefect(q, g, d)) out.push_back(d);
        }
      }
    };
    scan(DefectKind::Diamond, Op::Eventually, false);
    scan(DefectKind::Box, Op::Henceforth, false);
    scan(DefectKind::Implication, Op::Implies, true);
    scan(DefectKind::Coimplication, Op::Coimplies, true);
  }
  return out;
}

namespace {

void refreshQueue(const Quasimodel& q, FiniteGrid& g) {
  std::erase_if(g.queue, [&](const Defect& d) { return !isDefect(q, g, d); });
  for (auto& d : gridDefects(q, g)) {
    const bool queued = std::any_of(g.queue.begin(), g.queue.end(), [&](const Defect& e) { return e.sameDefect(d); });
    if (queued) continue;
    d.serial = g.nextSerial++;
    d.enqueuedAt = g.steps;
    g.queue.push_back(d);
  }
}

}  // namespace

void unwindStep(const Quasimodel& q, FiniteGrid& g) {
  if (g.queue.empty()) throw std::logic_error("empty defect queue");
  const Defect d = g.queue.front();
  g.queue.pop_front();
  Stepper stepper(q, g);
  const std::string what = stepper.process(d);
  ++g.steps;
  g.trace.push_back("step " + std::to_string(g.steps) + ": " + what);
  refreshQueue(q, g);
}

FiniteGrid unwindBounded(const Quasimodel& q, std::size_t start, std::size_t budget) {
  if (start >= q.size()) throw std::invalid_argument("start world out of range");
  const auto verdict = validateQuasimodel(q);
  if (!verdict.valid()) throw std::invalid_argument("not a quasimodel: " + verdict.failures.front());
  FiniteGrid g;
  g.paths.push_back(GridPath{g.nextPathId++, {start}});
  refreshQueue(q, g);
  for (std::size_t i = 0; i < budget; ++i) unwindStep(q, g);
  return g;
}

}  // namespace gtl
