#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gtl/types.hpp"

namespace gtl {

/// Relation between the positions of two chains. rows[x] holds the targets of x.
class ConvexRelation {
 public:
  ConvexRelation() = default;
  ConvexRelation(std::size_t sourceLen, std::size_t targetLen);
  static ConvexRelation fromPairs(std::size_t sourceLen, std::size_t targetLen,
                                  const std::vector<std::pair<std::size_t, std::size_t>>& pairs);
  static ConvexRelation identity(std::size_t n);

  std::size_t sourceLen() const { return rows_.size(); }
  std::size_t targetLen() const { return targetLen_; }
  bool contains(std::size_t x, std::size_t y) const { return (rows_[x] >> y) & 1U; }
  void insert(std::size_t x, std::size_t y);
  void erase(std::size_t x, std::size_t y);
  std::uint64_t row(std::size_t x) const { return rows_[x]; }
  std::vector<std::pair<std::size_t, std::size_t>> pairs() const;
  std::size_t pairCount() const;

  friend bool operator==(const ConvexRelation&, const ConvexRelation&) = default;
  friend bool operator<(const ConvexRelation& a, const ConvexRelation& b);

 private:
  std::size_t targetLen_ = 0;
  std::vector<std::uint64_t> rows_;
};

struct RelationVerdict {
  bool sensible = false;
  bool imageConvex = false;
  bool preimageConvex = false;
  bool forthDown = false;
  bool forthUp = false;
  bool backDown = false;
  bool backUp = false;
  bool serial = false;

  bool all() const {
    return sensible && imageConvex && preimageConvex && forthDown && forthUp && backDown && backUp && serial;
  }
  std::vector<std::string> failures() const;
};

/// Checks each condition literally, quantifying over all positions. Chain index
/// order is the world order. Throws std::invalid_argument on dimension mismatch.
RelationVerdict checkRelation(const Closure& sigma, const Moment& m, const Moment& n, const ConvexRelation& r);

/// Every relation between m and n passing all checkRelation conditions, in canonical
/// order. Empty iff n is not a temporal successor of m.
std::vector<ConvexRelation> temporalSuccessors(const Closure& sigma, const Moment& m, const Moment& n);

/// Same search with a precomputed pair table: sensible[x * n.size() + y].
std::vector<ConvexRelation> temporalSuccessors(const Closure& sigma, const Moment& m, const Moment& n,
                                               const std::vector<char>& sensible);

}  // namespace gtl
