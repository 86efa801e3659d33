#include "gtl/successor_graph.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include <omp.h>

namespace gtl {

MomentGraph::MomentGraph(const Closure& sigma, std::vector<Moment> universe)
    : sigma_(sigma), moments_(std::move(universe)) {
  std::sort(moments_.begin(), moments_.end());
  moments_.erase(std::unique(moments_.begin(), moments_.end()), moments_.end());
  for (const auto& m : moments_) types_.insert(types_.end(), m.chain.begin(), m.chain.end());
  std::sort(types_.begin(), types_.end());
  types_.erase(std::unique(types_.begin(), types_.end()), types_.end());

  const std::size_t T = types_.size();
  sensible_.assign(T * T, 0);
  sensibleFrom_.resize(T);
  for (std::size_t a = 0; a < T; ++a) {
    for (std::size_t b = 0; b < T; ++b) {
      if (isSensiblePair(sigma_, types_[a], types_[b])) {
        sensible_[a * T + b] = 1;
        sensibleFrom_[a].push_back(static_cast<std::uint32_t>(b));
      }
    }
  }
  byFirst_.resize(T);
  chains_.reserve(moments_.size());
  for (std::size_t i = 0; i < moments_.size(); ++i) {
    std::vector<std::uint32_t> chain;
    for (TypeSet t : moments_[i].chain) {
      chain.push_back(static_cast<std::uint32_t>(std::lower_bound(types_.begin(), types_.end(), t) - types_.begin()));
    }
    if (chain.empty()) throw std::invalid_argument("empty moment in universe");
    byFirst_[chain.front()].push_back(static_cast<std::uint32_t>(i));
    chains_.push_back(std::move(chain));
  }
}

std::optional<std::size_t> MomentGraph::find(const Moment& m) const {
  const auto it = std::lower_bound(moments_.begin(), moments_.end(), m);
  if (it != moments_.end() && *it == m) return static_cast<std::size_t>(it - moments_.begin());
  return std::nullopt;
}

std::vector<MomentEdge> MomentGraph::successorsOf(std::size_t mi) const {
  const auto& mc = chains_[mi];
  const std::size_t A = mc.size();
  std::vector<MomentEdge> out;
  std::vector<char> table;
  // lo(0) = 0 and hi(last) = last pin both corner pairs
  for (std::uint32_t first : sensibleFrom_[mc.front()]) {
    for (std::uint32_t ni : byFirst_[first]) {
      const auto& nc = chains_[ni];
      const std::size_t B = nc.size();
      if (!sensible(mc.back(), nc.back())) continue;
      table.assign(A * B, 0);
      std::uint64_t rowsHit = 0, colsHit = 0;
      for (std::size_t x = 0; x < A; ++x) {
        for (std::size_t y = 0; y < B; ++y) {
          if (sensible(mc[x], nc[y])) {
            table[x * B + y] = 1;
            rowsHit |= std::uint64_t{1} << x;
            colsHit |= std::uint64_t{1} << y;
          }
        }
      }
      if (std::popcount(rowsHit) != static_cast<int>(A) || std::popcount(colsHit) != static_cast<int>(B)) continue;
      auto relations = temporalSuccessors(sigma_, moments_[mi], moments_[ni], table);
      if (!relations.empty()) out.push_back(MomentEdge{ni, std::move(relations)});
    }
  }
  std::sort(out.begin(), out.end(), [](const MomentEdge& a, const MomentEdge& b) { return a.target < b.target; });
  return out;
}

std::vector<std::vector<MomentEdge>> MomentGraph::buildSerial() const {
  std::vector<std::vector<MomentEdge>> edges(moments_.size());
  for (std::size_t m = 0; m < moments_.size(); ++m) edges[m] = successorsOf(m);
  return edges;
}

std::vector<std::vector<MomentEdge>> MomentGraph::buildParallel(int threads) const {
  std::vector<std::vector<MomentEdge>> edges(moments_.size());
  const auto n = static_cast<std::int64_t>(moments_.size());
  const int team = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 8) num_threads(team)
  for (std::int64_t m = 0; m < n; ++m) edges[static_cast<std::size_t>(m)] = successorsOf(static_cast<std::size_t>(m));
  return edges;
}

}  // namespace gtl
