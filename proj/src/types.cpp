#include "gtl/types.hpp"

#include <algorithm>

namespace gtl {

ClosureMasks::ClosureMasks(const Closure& sigma) {
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    all |= bit(i);
    switch (sigma.entry(i).op) {
      case Op::Implies: implications |= bit(i); break;
      case Op::Coimplies: coimplications |= bit(i); break;
      case Op::Eventually: diamonds.push_back(i); break;
      case Op::Henceforth: boxes.push_back(i); break;
      default: break;
    }
  }
}

void requireClosureFits(const Closure& sigma, std::size_t limit) {
  const std::size_t cap = std::min(limit, kMaxClosureSize);
  if (sigma.size() > cap)
    throw LimitExceeded("closure has " + std::to_string(sigma.size()) + " formulas, limit is " +
                        std::to_string(cap));
}

bool isType(const Closure& sigma, TypeSet s) {
  if (sigma.size() < 64 && (s >> sigma.size()) != 0) return false;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    const auto& e = sigma.entry(i);
    const bool in = has(s, i);
    switch (e.op) {
      case Op::Bottom:
        if (in) return false;
        break;
      case Op::And:
        if (in != (has(s, e.left) && has(s, e.right))) return false;
        break;
      case Op::Or:
        if (in != (has(s, e.left) || has(s, e.right))) return false;
        break;
      case Op::Implies:
        if (in && has(s, e.left) && !has(s, e.right)) return false;
        if (has(s, e.right) && !in) return false;
        break;
      case Op::Coimplies:
        if (in && !has(s, e.left)) return false;
        if (has(s, e.left) && !has(s, e.right) && !in) return false;
        break;
      default: break;
    }
  }
  return true;
}

namespace {

// Each law only mentions a formula and its immediate subformulas, which precede it
// in the closure, so bits can be assigned left to right with local pruning.
void extendTypes(const Closure& sigma, std::size_t i, TypeSet acc, std::vector<TypeSet>& out) {
  if (i == sigma.size()) {
    out.push_back(acc);
    return;
  }
  const auto& e = sigma.entry(i);
  bool allowOut = true, allowIn = true;
  switch (e.op) {
    case Op::Bottom: allowIn = false; break;
    case Op::And: (has(acc, e.left) && has(acc, e.right) ? allowOut : allowIn) = false; break;
    case Op::Or: (has(acc, e.left) || has(acc, e.right) ? allowOut : allowIn) = false; break;
    case Op::Implies:
      if (has(acc, e.right)) allowOut = false;
      else if (has(acc, e.left)) allowIn = false;
      break;
    case Op::Coimplies:
      if (!has(acc, e.left)) allowIn = false;
      else if (!has(acc, e.right)) allowOut = false;
      break;
    default: break;
  }
  if (allowOut) extendTypes(sigma, i + 1, acc, out);
  if (allowIn) extendTypes(sigma, i + 1, acc | bit(i), out);
}

}  // namespace

std::vector<TypeSet> enumerateTypes(const Closure& sigma, std::size_t maxSigma) {
  requireClosureFits(sigma, maxSigma);
  std::vector<TypeSet> out;
  extendTypes(sigma, 0, 0, out);
  std::sort(out.begin(), out.end());
  return out;
}

bool isSensiblePair(const Closure& sigma, TypeSet a, TypeSet b) {
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    const auto& e = sigma.entry(i);
    switch (e.op) {
      case Op::Next:
        if (has(a, i) != has(b, e.left)) return false;
        break;
      case Op::Eventually:
        if (has(a, i) != (has(a, e.left) || has(b, i))) return false;
        break;
      case Op::Henceforth:
        if (has(a, i) != (has(a, e.left) && has(b, i))) return false;
        break;
      default: break;
    }
  }
  return true;
}

namespace {

// Implications at position i that have a witness at i (antecedent in, consequent out).
TypeSet witnessedImplications(const Closure& sigma, TypeSet mask, TypeSet s) {
  TypeSet w = 0;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (!has(mask, i)) continue;
    const auto& e = sigma.entry(i);
    if (has(s, e.left) && !has(s, e.right)) w |= bit(i);
  }
  return w;
}

bool coimplicationsWitnessed(const Closure& sigma, const ClosureMasks& masks, const std::vector<TypeSet>& chain) {
  TypeSet above = 0;  // coimplications witnessed at some index >= i
  for (std::size_t i = chain.size(); i-- > 0;) {
    above |= witnessedImplications(sigma, masks.coimplications, chain[i]);
    if ((chain[i] & masks.coimplications & ~above) != 0) return false;
  }
  return true;
}

}  // namespace

bool isMoment(const Closure& sigma, const std::vector<TypeSet>& chain) {
  if (chain.empty()) return false;
  const ClosureMasks masks(sigma);
  TypeSet below = 0;  // implications witnessed at some index <= i
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (!isType(sigma, chain[i])) return false;
    if (i > 0 && ((chain[i] & ~chain[i - 1]) != 0 || chain[i] == chain[i - 1])) return false;
    below |= witnessedImplications(sigma, masks.implications, chain[i]);
    if ((masks.implications & ~chain[i] & ~below) != 0) return false;
  }
  return coimplicationsWitnessed(sigma, masks, chain);
}

namespace {

struct MomentSearch {
  const Closure& sigma;
  const ClosureMasks masks;
  const std::vector<TypeSet>& types;
  std::size_t maxMoments;
  std::vector<Moment> out;
  std::vector<TypeSet> chain;

  void extend(TypeSet witnessedBelow) {
    if (coimplicationsWitnessed(sigma, masks, chain)) {
      if (out.size() >= maxMoments)
        throw LimitExceeded("more than " + std::to_string(maxMoments) + " moments");
      out.push_back(Moment{chain});
    }
    const TypeSet top = chain.back();
    for (const TypeSet s : types) {
      if (s >= top) break;  // strict subsets of top are numerically smaller
      if ((s & ~top) != 0) continue;
      const TypeSet w = witnessedBelow | witnessedImplications(sigma, masks.implications, s);
      if ((masks.implications & ~s & ~w) != 0) continue;
      chain.push_back(s);
      extend(w);
      chain.pop_back();
    }
  }
};

}  // namespace

std::vector<Moment> enumerateMoments(const Closure& sigma, const MomentLimits& limits) {
  const auto types = enumerateTypes(sigma, limits.maxSigma);
  MomentSearch search{sigma, ClosureMasks(sigma), types, limits.maxMoments, {}, {}};
  for (const TypeSet s : types) {
    const TypeSet w = witnessedImplications(sigma, search.masks.implications, s);
    if ((search.masks.implications & ~s & ~w) != 0) continue;
    search.chain = {s};
    search.extend(w);
  }
  std::sort(search.out.begin(), search.out.end());
  return std::move(search.out);
}

std::vector<std::string> typeMembers(const Closure& sigma, TypeSet s) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (has(s, i)) out.push_back(print(sigma[i]));
  }
  return out;
}

TypeSet typeFromMembers(const Closure& sigma, const std::vector<std::string>& members) {
  TypeSet s = 0;
  for (const auto& text : members) {
    const auto idx = sigma.find(parse(text));
    if (!idx) throw std::invalid_argument("formula '" + text + "' is not in the closure");
    s |= bit(*idx);
  }
  return s;
}

}  // namespace gtl
