#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "gtl/formula.hpp"

namespace gtl {

/// Membership bits over closure positions: bit i set iff sigma[i] is a member.
using TypeSet = std::uint64_t;

/// Types are 64-bit masks, so closures are capped well below that.
inline constexpr std::size_t kMaxClosureSize = 63;

class LimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline bool has(TypeSet s, std::size_t i) { return (s >> i) & 1U; }
inline bool has(TypeSet s, int i) { return (s >> i) & 1U; }
inline TypeSet bit(std::size_t i) { return TypeSet{1} << i; }

/// Closure positions grouped by main connective, for the single-pass law checks.
struct ClosureMasks {
  explicit ClosureMasks(const Closure& sigma);

  TypeSet all = 0;
  TypeSet implications = 0;
  TypeSet coimplications = 0;
  std::vector<std::size_t> diamonds;  // positions of F-formulas
  std::vector<std::size_t> boxes;     // positions of G-formulas
};

void requireClosureFits(const Closure& sigma, std::size_t limit);

bool isType(const Closure& sigma, TypeSet members);
/// Every type of sigma in increasing numeric order of the bit set.
std::vector<TypeSet> enumerateTypes(const Closure& sigma, std::size_t maxSigma = 22);
bool isSensiblePair(const Closure& sigma, TypeSet now, TypeSet next);

/// Strictly decreasing chain of types; index 0 is the least world, carrying the
/// largest label.
struct Moment {
  std::vector<TypeSet> chain;

  std::size_t size() const { return chain.size(); }
  TypeSet operator[](std::size_t i) const { return chain[i]; }
  /// Smallest label, at the top of the chain.
  TypeSet last() const { return chain.back(); }
  /// The moment falsifies sigma[i] iff its smallest label omits it.
  bool falsifies(std::size_t i) const { return !has(last(), i); }

  friend bool operator==(const Moment&, const Moment&) = default;
  /// Canonical order: by length, then lexicographically.
  friend bool operator<(const Moment& a, const Moment& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.chain < b.chain;
  }
};

bool isMoment(const Closure& sigma, const std::vector<TypeSet>& chain);

struct MomentLimits {
  std::size_t maxSigma = 22;
  std::size_t maxMoments = 4'000'000;
};

/// All moments of sigma in canonical order.
std::vector<Moment> enumerateMoments(const Closure& sigma, const MomentLimits& limits = {});

/// Member formulas of a type, printed.
std::vector<std::string> typeMembers(const Closure& sigma, TypeSet s);
/// Inverse of typeMembers; throws std::invalid_argument on formulas outside sigma.
TypeSet typeFromMembers(const Closure& sigma, const std::vector<std::string>& members);

}  // namespace gtl
