#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "gtl/successor.hpp"
#include "gtl/types.hpp"

namespace gtl {

struct MomentEdge {
  std::uint32_t target = 0;
  std::vector<ConvexRelation> relations;  // canonical order, never empty

  friend bool operator==(const MomentEdge&, const MomentEdge&) = default;
};

/// The temporal-successor graph over a fixed universe of moments. The universe is
/// sorted and deduplicated; moments are addressed by position in it.
class MomentGraph {
 public:
  MomentGraph(const Closure& sigma, std::vector<Moment> universe);

  const Closure& sigma() const { return sigma_; }
  std::size_t size() const { return moments_.size(); }
  const Moment& moment(std::size_t i) const { return moments_[i]; }
  const std::vector<Moment>& moments() const { return moments_; }
  std::optional<std::size_t> find(const Moment& m) const;

  /// Edges out of one moment, sorted by target.
  std::vector<MomentEdge> successorsOf(std::size_t m) const;

  /// All edges, one moment at a time.
  std::vector<std::vector<MomentEdge>> buildSerial() const;
  /// All edges with OpenMP over source moments; identical output to buildSerial.
  /// threads <= 0 uses the OpenMP default.
  std::vector<std::vector<MomentEdge>> buildParallel(int threads = 0) const;

 private:
  Closure sigma_;
  std::vector<Moment> moments_;
  std::vector<TypeSet> types_;
  std::vector<std::vector<std::uint32_t>> chains_;  // type indices per moment
  std::vector<char> sensible_;                      // types x types
  std::vector<std::vector<std::uint32_t>> sensibleFrom_;
  std::vector<std::vector<std::uint32_t>> byFirst_;  // moments by index of their first type

  bool sensible(std::uint32_t a, std::uint32_t b) const { return sensible_[a * types_.size() + b] != 0; }
};

}  // namespace gtl
