#include "gtl/quasimodel.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

namespace gtl {

std::optional<std::size_t> Quasimodel::indexOfId(std::size_t id) const {
  for (std::size_t i = 0; i < worlds.size(); ++i) {
    if (worlds[i].id == id) return i;
  }
  return std::nullopt;
}

std::vector<std::vector<std::size_t>> Quasimodel::successors() const {
  std::vector<std::vector<std::size_t>> out(worlds.size());
  for (const auto& [a, b] : rel) out.at(a).push_back(b);
  for (auto& s : out) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  return out;
}

bool Quasimodel::falsifies(const Formula& f) const {
  const std::size_t i = sigma.indexOf(f);
  return std::any_of(worlds.begin(), worlds.end(), [&](const QWorld& w) { return !has(w.label, i); });
}

std::size_t Quasimodel::height() const {
  std::map<std::size_t, std::size_t> perComponent;
  for (const auto& w : worlds) ++perComponent[w.component];
  std::size_t h = 0;
  for (const auto& [c, n] : perComponent) h = std::max(h, n);
  return h;
}

namespace {

constexpr std::size_t kReportCap = 10;

class Reporter {
 public:
  explicit Reporter(std::vector<std::string>& out) : out_(out) {}
  ~Reporter() {
    for (const auto& [name, n] : counts_) {
      if (n > kReportCap) out_.push_back(name + ": " + std::to_string(n - kReportCap) + " more");
    }
  }
  void add(const std::string& name, const std::string& detail) {
    if (++counts_[name] <= kReportCap) out_.push_back(name + ": " + detail);
  }

 private:
  std::vector<std::string>& out_;
  std::map<std::string, std::size_t> counts_;
};

struct RelMatrix {
  std::size_t n;
  std::vector<char> bits;
  RelMatrix(const Quasimodel& q) : n(q.size()), bits(n * n, 0) {
    for (const auto& [a, b] : q.rel) bits[a * n + b] = 1;
  }
  bool operator()(std::size_t a, std::size_t b) const { return bits[a * n + b] != 0; }
};

std::string w(const Quasimodel& q, std::size_t i) { return "world " + std::to_string(q.worlds[i].id); }

void checkRelational(const Quasimodel& q, const RelMatrix& r, QuasimodelVerdict& v, Reporter& rep) {
  const std::size_t n = q.size();
  for (const auto& [a, b] : q.rel) {
    if (!isSensiblePair(q.sigma, q.worlds[a].label, q.worlds[b].label)) {
      v.sensible = false;
      rep.add("sensible", w(q, a) + " R " + w(q, b));
    }
  }
  auto exists = [&](auto&& pred) {
    for (std::size_t i = 0; i < n; ++i) {
      if (pred(i)) return true;
    }
    return false;
  };
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t x2 = 0; x2 < n; ++x2) {
      if (!q.leq(x, x2)) continue;
      for (std::size_t y = 0; y < n; ++y) {
        // x <= x2 R y: some y0 <= y with x R y0
        if (r(x2, y) && !exists([&](std::size_t y0) { return q.leq(y0, y) && r(x, y0); })) {
          v.forthDown = false;
          rep.add("forth-down", w(q, x) + " <= " + w(q, x2) + " R " + w(q, y));
        }
        // x2 >= x R y: some y1 >= y with x2 R y1
        if (r(x, y) && !exists([&](std::size_t y1) { return q.leq(y, y1) && r(x2, y1); })) {
          v.forthUp = false;
          rep.add("forth-up", w(q, x2) + " >= " + w(q, x) + " R " + w(q, y));
        }
      }
    }
  }
  for (std::size_t y = 0; y < n; ++y) {
    for (std::size_t y2 = 0; y2 < n; ++y2) {
      if (!q.leq(y, y2)) continue;
      for (std::size_t x = 0; x < n; ++x) {
        // x R y2 >= y: some x0 <= x with x0 R y
        if (r(x, y2) && !exists([&](std::size_t x0) { return q.leq(x0, x) && r(x0, y); })) {
          v.backDown = false;
          rep.add("back-down", w(q, x) + " R " + w(q, y2) + " >= " + w(q, y));
        }
        // x R y <= y2: some x1 >= x with x1 R y2
        if (r(x, y) && !exists([&](std::size_t x1) { return q.leq(x, x1) && r(x1, y2); })) {
          v.backUp = false;
          rep.add("back-up", w(q, x) + " R " + w(q, y) + " <= " + w(q, y2));
        }
      }
    }
  }
}

bool wellFormed(const Quasimodel& q, Reporter& rep) {
  bool ok = true;
  std::set<std::size_t> ids;
  std::set<std::pair<std::size_t, std::size_t>> slots;
  for (const auto& world : q.worlds) {
    if (!ids.insert(world.id).second) {
      ok = false;
      rep.add("well-formed", "duplicate id " + std::to_string(world.id));
    }
    if (!slots.insert({world.component, world.rank}).second) {
      ok = false;
      rep.add("well-formed", "component " + std::to_string(world.component) + " has two worlds of rank " +
                                 std::to_string(world.rank));
    }
    if (q.sigma.size() < 64 && (world.label >> q.sigma.size()) != 0) {
      ok = false;
      rep.add("well-formed", "label of world " + std::to_string(world.id) + " exceeds the closure");
    }
  }
  for (const auto& [a, b] : q.rel) {
    if (a >= q.size() || b >= q.size()) {
      ok = false;
      rep.add("well-formed", "relation pair out of range");
    }
  }
  return ok;
}

}  // namespace

QuasimodelVerdict validateQuasimodel(const Quasimodel& q) {
  QuasimodelVerdict v;
  {
    Reporter rep(v.failures);
    if (!wellFormed(q, rep)) {
      v.wellFormed = false;
      return v;
    }
  }
  Reporter rep(v.failures);
  const std::size_t n = q.size();
  const ClosureMasks masks(q.sigma);
  const auto& sigma = q.sigma;

  for (std::size_t i = 0; i < n; ++i) {
    if (!isType(sigma, q.worlds[i].label)) {
      v.types = false;
      rep.add("types", "label of " + w(q, i) + " is not a type");
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (q.leq(a, b) && (q.worlds[b].label & ~q.worlds[a].label) != 0) {
        v.inverselyMonotone = false;
        rep.add("inversely-monotone", w(q, a) + " <= " + w(q, b));
      }
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    const TypeSet la = q.worlds[a].label;
    for (std::size_t i = 0; i < sigma.size(); ++i) {
      const auto& e = sigma.entry(i);
      auto witnessAt = [&](std::size_t b) {
        const TypeSet lb = q.worlds[b].label;
        return has(lb, e.left) && !has(lb, e.right);
      };
      auto some = [&](auto&& inRange) {
        for (std::size_t b = 0; b < n; ++b) {
          if (inRange(b) && witnessAt(b)) return true;
        }
        return false;
      };
      if (has(masks.implications, i) && !has(la, i) && !some([&](std::size_t b) { return q.leq(b, a); })) {
        v.implicationWitnesses = false;
        rep.add("implication-witness", w(q, a) + " omits " + print(sigma[i]) + " with no witness below");
      }
      if (has(masks.coimplications, i) && has(la, i) && !some([&](std::size_t b) { return q.leq(a, b); })) {
        v.coimplicationWitnesses = false;
        rep.add("coimplication-witness", w(q, a) + " holds " + print(sigma[i]) + " with no witness above");
      }
    }
  }

  const RelMatrix r(q);
  checkRelational(q, r, v, rep);

  const auto succ = q.successors();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y1 = 0; y1 < n; ++y1) {
      for (std::size_t y2 = 0; y2 < n; ++y2) {
        if (!q.leq(y1, y2)) continue;
        for (std::size_t y = 0; y < n; ++y) {
          if (!q.leq(y1, y) || !q.leq(y, y2)) continue;
          if (r(x, y1) && r(x, y2) && !r(x, y)) {
            v.imageConvex = false;
            rep.add("image-convex", "image of " + w(q, x) + " skips " + w(q, y));
          }
          if (r(y1, x) && r(y2, x) && !r(y, x)) {
            v.preimageConvex = false;
            rep.add("preimage-convex", "preimage of " + w(q, x) + " skips " + w(q, y));
          }
        }
      }
    }
    if (succ[x].empty()) {
      v.serial = false;
      rep.add("serial", w(q, x) + " has no successor");
    }
  }

  // reachability with zero or more steps
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<char> seen(n, 0);
    std::deque<std::size_t> frontier{x};
    seen[x] = 1;
    TypeSet unionLabels = 0, intersection = ~TypeSet{0};
    while (!frontier.empty()) {
      const std::size_t y = frontier.front();
      frontier.pop_front();
      unionLabels |= q.worlds[y].label;
      intersection &= q.worlds[y].label;
      for (std::size_t z : succ[y]) {
        if (!seen[z]) {
          seen[z] = 1;
          frontier.push_back(z);
        }
      }
    }
    const TypeSet lx = q.worlds[x].label;
    for (std::size_t i = 0; i < sigma.size(); ++i) {
      const auto inner = static_cast<std::size_t>(sigma.entry(i).left);
      if (sigma.entry(i).op == Op::Eventually && has(lx, i) && !has(unionLabels, inner)) {
        v.diamondsRealized = false;
        rep.add("diamond-realized", w(q, x) + " never reaches " + print(sigma[inner]));
      }
      if (sigma.entry(i).op == Op::Henceforth && !has(lx, i) && has(intersection, inner)) {
        v.boxesRefuted = false;
        rep.add("box-refuted", w(q, x) + " never refutes " + print(sigma[inner]));
      }
    }
  }
  return v;
}

std::vector<std::string> relationPreconditions(const Quasimodel& q) {
  std::vector<std::string> out;
  QuasimodelVerdict v;
  {
    Reporter rep(out);
    if (!wellFormed(q, rep)) return out;
  }
  Reporter rep(out);
  checkRelational(q, RelMatrix(q), v, rep);
  return out;
}

ConvexClosureResult convexClosure(const Quasimodel& q) {
  ConvexClosureResult result;
  result.diagnostics = relationPreconditions(q);
  const std::size_t n = q.size();
  std::vector<char> below(n * n, 0), above(n * n, 0);
  for (const auto& [a, b] : q.rel) {
    if (a >= n || b >= n) continue;
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        // (a, b) serves as (X2, Y1) for X <= a, b <= Y and as (X1, Y2) for a <= X, Y <= b
        if (q.leq(x, a) && q.leq(b, y)) below[x * n + y] = 1;
        if (q.leq(a, x) && q.leq(y, b)) above[x * n + y] = 1;
      }
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (below[x * n + y] && above[x * n + y]) result.rel.emplace_back(x, y);
    }
  }
  return result;
}

Quasimodel quotient(const BiModel& m, const Closure& sigma) {
  requireClosureFits(sigma, kMaxClosureSize);
  const auto sets = evaluateBi(m, sigma);
  const std::size_t W = m.worlds, T = m.flow.states();

  std::vector<TypeSet> label(W * T, 0);
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    for (std::size_t t = 0; t < T; ++t) {
      for (std::size_t x = 0; x < W; ++x) {
        if (sets[i].contains(x, t)) label[x * T + t] |= bit(i);
      }
    }
  }
  std::vector<std::vector<TypeSet>> stateLabels(T);
  for (std::size_t t = 0; t < T; ++t) {
    std::set<TypeSet> s;
    for (std::size_t x = 0; x < W; ++x) s.insert(label[x * T + t]);
    stateLabels[t].assign(s.begin(), s.end());
  }

  using Key = std::pair<std::vector<TypeSet>, TypeSet>;
  std::map<Key, std::size_t> classes;
  for (std::size_t t = 0; t < T; ++t) {
    for (std::size_t x = 0; x < W; ++x) classes.emplace(Key{stateLabels[t], label[x * T + t]}, 0);
  }
  std::map<std::vector<TypeSet>, std::size_t> components;
  for (const auto& entry : classes) components.emplace(entry.first.first, 0);
  std::size_t next = 0;
  for (auto& [key, id] : classes) id = next++;
  next = 0;
  for (auto& [labels, id] : components) id = next++;

  Quasimodel q;
  q.sigma = sigma;
  for (const auto& [key, id] : classes) {
    std::vector<TypeSet> byInclusion = key.first;
    std::sort(byInclusion.begin(), byInclusion.end(),
              [](TypeSet a, TypeSet b) { return std::popcount(a) > std::popcount(b); });
    const auto rank = static_cast<std::size_t>(
        std::find(byInclusion.begin(), byInclusion.end(), key.second) - byInclusion.begin());
    q.worlds.push_back(QWorld{id, components.at(key.first), rank, key.second});
  }

  std::set<WorldPair> base;
  for (std::size_t t = 0; t < T; ++t) {
    const std::size_t s = m.flow.successor(t);
    for (std::size_t x = 0; x < W; ++x) {
      base.emplace(classes.at(Key{stateLabels[t], label[x * T + t]}),
                   classes.at(Key{stateLabels[s], label[x * T + s]}));
    }
  }
  q.rel.assign(base.begin(), base.end());
  q.rel = convexClosure(q).rel;
  return q;
}

std::uint64_t quotientSizeBound(std::size_t sigmaSize) {
  const std::size_t exponent = sigmaSize * (sigmaSize + 1) + 1;
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  if (exponent >= 64) return kMax;
  const std::uint64_t power = std::uint64_t{1} << exponent;
  if (power > kMax / (sigmaSize + 1)) return kMax;
  return power * (sigmaSize + 1);
}

}  // namespace gtl
