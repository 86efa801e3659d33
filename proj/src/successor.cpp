#include "gtl/successor.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace gtl {

ConvexRelation::ConvexRelation(std::size_t sourceLen, std::size_t targetLen)
    : targetLen_(targetLen), rows_(sourceLen, 0) {
  if (targetLen > 64) throw std::invalid_argument("relation target longer than 64 positions");
}

ConvexRelation ConvexRelation::fromPairs(std::size_t sourceLen, std::size_t targetLen,
                                         const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  ConvexRelation r(sourceLen, targetLen);
  for (const auto& [x, y] : pairs) r.insert(x, y);
  return r;
}

ConvexRelation ConvexRelation::identity(std::size_t n) {
  ConvexRelation r(n, n);
  for (std::size_t i = 0; i < n; ++i) r.insert(i, i);
  return r;
}

void ConvexRelation::insert(std::size_t x, std::size_t y) {
  if (x >= rows_.size() || y >= targetLen_) throw std::out_of_range("relation pair out of range");
  rows_[x] |= std::uint64_t{1} << y;
}

void ConvexRelation::erase(std::size_t x, std::size_t y) {
  if (x >= rows_.size() || y >= targetLen_) throw std::out_of_range("relation pair out of range");
  rows_[x] &= ~(std::uint64_t{1} << y);
}

std::vector<std::pair<std::size_t, std::size_t>> ConvexRelation::pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t x = 0; x < rows_.size(); ++x) {
    for (std::size_t y = 0; y < targetLen_; ++y) {
      if (contains(x, y)) out.emplace_back(x, y);
    }
  }
  return out;
}

std::size_t ConvexRelation::pairCount() const {
  std::size_t n = 0;
  for (auto r : rows_) n += static_cast<std::size_t>(std::popcount(r));
  return n;
}

bool operator<(const ConvexRelation& a, const ConvexRelation& b) {
  if (a.targetLen_ != b.targetLen_) return a.targetLen_ < b.targetLen_;
  return a.pairs() < b.pairs();
}

std::vector<std::string> RelationVerdict::failures() const {
  std::vector<std::string> out;
  if (!sensible) out.emplace_back("sensible");
  if (!imageConvex) out.emplace_back("image-convex");
  if (!preimageConvex) out.emplace_back("preimage-convex");
  if (!forthDown) out.emplace_back("forth-down");
  if (!forthUp) out.emplace_back("forth-up");
  if (!backDown) out.emplace_back("back-down");
  if (!backUp) out.emplace_back("back-up");
  if (!serial) out.emplace_back("serial");
  return out;
}

namespace {

bool contiguous(std::uint64_t bits) {
  if (bits == 0) return true;
  const std::uint64_t shifted = bits >> std::countr_zero(bits);
  return (shifted & (shifted + 1)) == 0;
}

}  // namespace

RelationVerdict checkRelation(const Closure& sigma, const Moment& m, const Moment& n, const ConvexRelation& r) {
  if (r.sourceLen() != m.size() || r.targetLen() != n.size())
    throw std::invalid_argument("relation dimensions do not match the chains");
  const std::size_t A = m.size(), B = n.size();
  RelationVerdict v;

  v.sensible = true;
  v.serial = true;
  v.imageConvex = true;
  for (std::size_t x = 0; x < A; ++x) {
    if (r.row(x) == 0) v.serial = false;
    if (!contiguous(r.row(x))) v.imageConvex = false;
    for (std::size_t y = 0; y < B; ++y) {
      if (r.contains(x, y) && !isSensiblePair(sigma, m[x], n[y])) v.sensible = false;
    }
  }

  v.preimageConvex = true;
  for (std::size_t y = 0; y < B; ++y) {
    std::uint64_t column = 0;
    for (std::size_t x = 0; x < A; ++x) {
      if (r.contains(x, y)) column |= std::uint64_t{1} << x;
    }
    if (!contiguous(column)) v.preimageConvex = false;
  }

  auto exists = [](std::size_t from, std::size_t to, auto&& pred) {
    for (std::size_t i = from; i < to; ++i) {
      if (pred(i)) return true;
    }
    return false;
  };

  v.forthDown = v.forthUp = v.backDown = v.backUp = true;
  for (std::size_t x = 0; x < A; ++x) {
    for (std::size_t x2 = x; x2 < A; ++x2) {
      for (std::size_t y = 0; y < B; ++y) {
        // x <= x2 R y  =>  exists y0 <= y with x R y0
        if (r.contains(x2, y) && !exists(0, y + 1, [&](std::size_t y0) { return r.contains(x, y0); }))
          v.forthDown = false;
        // x2 >= x R y  =>  exists y1 >= y with x2 R y1
        if (r.contains(x, y) && !exists(y, B, [&](std::size_t y1) { return r.contains(x2, y1); }))
          v.forthUp = false;
      }
    }
  }
  for (std::size_t x = 0; x < A; ++x) {
    for (std::size_t y = 0; y < B; ++y) {
      if (!r.contains(x, y)) continue;
      for (std::size_t y0 = 0; y0 <= y; ++y0) {
        // x R y >= y0  =>  exists x0 <= x with x0 R y0
        if (!exists(0, x + 1, [&](std::size_t x0) { return r.contains(x0, y0); })) v.backDown = false;
      }
      for (std::size_t y1 = y; y1 < B; ++y1) {
        // x R y <= y1  =>  exists x1 >= x with x1 R y1
        if (!exists(x, A, [&](std::size_t x1) { return r.contains(x1, y1); })) v.backUp = false;
      }
    }
  }
  return v;
}

namespace {

// Surviving relations are exactly the interval assignments x -> [lo(x), hi(x)] with
// both endpoints non-decreasing, lo(0) = 0, hi(last) = last, and no gap between
// consecutive images; every candidate is still passed through checkRelation.
struct IntervalSearch {
  const Closure& sigma;
  const Moment& m;
  const Moment& n;
  const std::vector<char>& sensible;
  std::vector<std::pair<std::size_t, std::size_t>> intervals;
  std::vector<ConvexRelation> out;

  bool ok(std::size_t x, std::size_t y) const { return sensible[x * n.size() + y] != 0; }

  void assign(std::size_t x) {
    const std::size_t A = m.size(), B = n.size();
    if (x == A) {
      ConvexRelation r(A, B);
      for (std::size_t i = 0; i < A; ++i) {
        for (std::size_t y = intervals[i].first; y <= intervals[i].second; ++y) r.insert(i, y);
      }
      if (checkRelation(sigma, m, n, r).all()) out.push_back(std::move(r));
      return;
    }
    const std::size_t loMin = x == 0 ? 0 : intervals[x - 1].first;
    const std::size_t loMax = x == 0 ? 0 : intervals[x - 1].second + 1;
    const std::size_t hiMin = x == 0 ? 0 : intervals[x - 1].second;
    for (std::size_t lo = loMin; lo <= loMax && lo < B; ++lo) {
      for (std::size_t hi = lo; hi < B; ++hi) {
        if (!ok(x, hi)) break;  // every pair in [lo, hi] must be sensible
        if (hi < hiMin || (x + 1 == A && hi + 1 != B)) continue;
        intervals.emplace_back(lo, hi);
        assign(x + 1);
        intervals.pop_back();
      }
    }
  }
};

}  // namespace

std::vector<ConvexRelation> temporalSuccessors(const Closure& sigma, const Moment& m, const Moment& n,
                                               const std::vector<char>& sensible) {
  if (m.size() == 0 || n.size() == 0) return {};
  IntervalSearch search{sigma, m, n, sensible, {}, {}};
  search.assign(0);
  std::sort(search.out.begin(), search.out.end());
  return std::move(search.out);
}

std::vector<ConvexRelation> temporalSuccessors(const Closure& sigma, const Moment& m, const Moment& n) {
  std::vector<char> sensible(m.size() * n.size());
  for (std::size_t x = 0; x < m.size(); ++x) {
    for (std::size_t y = 0; y < n.size(); ++y) sensible[x * n.size() + y] = isSensiblePair(sigma, m[x], n[y]);
  }
  return temporalSuccessors(sigma, m, n, sensible);
}

}  // namespace gtl
