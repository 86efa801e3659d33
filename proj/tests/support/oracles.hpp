#pragma once

// Brute-force reference enumerations, deliberately independent of the pruned
// searches they check.

#include <algorithm>
#include <vector>

#include "gtl/successor.hpp"
#include "gtl/types.hpp"

namespace gtl::testing {

inline std::vector<TypeSet> bruteForceTypes(const Closure& sigma) {
  std::vector<TypeSet> out;
  for (TypeSet s = 0; s < (TypeSet{1} << sigma.size()); ++s) {
    if (isType(sigma, s)) out.push_back(s);
  }
  return out;
}

/// Every chain of types (any order, no repeats) of length <= |sigma|+1 passing isMoment.
inline std::vector<Moment> bruteForceMoments(const Closure& sigma) {
  const auto types = bruteForceTypes(sigma);
  std::vector<Moment> out;
  std::vector<TypeSet> chain;
  auto rec = [&](auto&& self) -> void {
    if (!chain.empty() && isMoment(sigma, chain)) out.push_back(Moment{chain});
    if (chain.size() == sigma.size() + 1) return;
    for (TypeSet t : types) {
      chain.push_back(t);
      self(self);
      chain.pop_back();
    }
  };
  rec(rec);
  std::sort(out.begin(), out.end());
  return out;
}

/// All 2^(|m|*|n|) relations filtered by checkRelation, in canonical order.
inline std::vector<ConvexRelation> bruteForceSuccessors(const Closure& sigma, const Moment& m, const Moment& n) {
  const std::size_t cells = m.size() * n.size();
  std::vector<ConvexRelation> out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << cells); ++bits) {
    ConvexRelation r(m.size(), n.size());
    for (std::size_t c = 0; c < cells; ++c) {
      if ((bits >> c) & 1U) r.insert(c / n.size(), c % n.size());
    }
    if (checkRelation(sigma, m, n, r).all()) out.push_back(r);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace gtl::testing
