#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gtl/formula.hpp"
#include "gtl/semantics.hpp"
#include "gtl/types.hpp"

namespace gtl {

struct QWorld {
  std::size_t id = 0;
  std::size_t component = 0;
  std::size_t rank = 0;  // 0 is the least world of its chain, carrying the largest label
  TypeSet label = 0;

  friend bool operator==(const QWorld&, const QWorld&) = default;
};

using WorldPair = std::pair<std::size_t, std::size_t>;

/// Worlds are addressed by position in `worlds`; ids only matter for I/O.
/// Order: a <= b iff same component and rank(a) <= rank(b).
struct Quasimodel {
  Closure sigma;
  std::vector<QWorld> worlds;
  std::vector<WorldPair> rel;

  std::size_t size() const { return worlds.size(); }
  bool leq(std::size_t a, std::size_t b) const {
    return worlds[a].component == worlds[b].component && worlds[a].rank <= worlds[b].rank;
  }
  bool comparable(std::size_t a, std::size_t b) const { return worlds[a].component == worlds[b].component; }
  std::optional<std::size_t> indexOfId(std::size_t id) const;
  /// Successor lists by index, sorted, duplicates removed.
  std::vector<std::vector<std::size_t>> successors() const;
  /// Some label omits f. Throws std::out_of_range if f is not in sigma.
  bool falsifies(const Formula& f) const;
  /// Longest strict chain.
  std::size_t height() const;
};

struct QuasimodelVerdict {
  bool wellFormed = true;  // unique ids, in-range pairs, distinct ranks within a chain
  bool types = true;
  bool inverselyMonotone = true;
  bool implicationWitnesses = true;
  bool coimplicationWitnesses = true;
  bool sensible = true;
  bool imageConvex = true;
  bool preimageConvex = true;
  bool forthDown = true;
  bool forthUp = true;
  bool backDown = true;
  bool backUp = true;
  bool serial = true;
  bool diamondsRealized = true;
  bool boxesRefuted = true;
  std::vector<std::string> failures;  // one line per violation, "<condition>: <detail>"

  bool valid() const { return failures.empty(); }
};

QuasimodelVerdict validateQuasimodel(const Quasimodel& q);

/// Confluence and sensibility of an arbitrary relation; convexity and seriality are not
/// examined. Same failure-line format as the validator.
std::vector<std::string> relationPreconditions(const Quasimodel& q);

struct ConvexClosureResult {
  std::vector<WorldPair> rel;  // sorted
  std::vector<std::string> diagnostics;  // precondition violations of the input relation
};

/// X R' Y iff some X1 <= X <= X2 and Y1 <= Y <= Y2 have X2 R Y1 and X1 R Y2. Computed
/// even when the input is not sensible or fully confluent; those are then reported.
ConvexClosureResult convexClosure(const Quasimodel& q);

/// Bisimulation quotient of a finite bi-relational model followed by convex closure.
/// Classes are numbered by (sorted state label set, label); components by label set.
Quasimodel quotient(const BiModel& m, const Closure& sigma);

/// (|sigma|+1) * 2^(|sigma|(|sigma|+1)+1), saturating at UINT64_MAX.
std::uint64_t quotientSizeBound(std::size_t sigmaSize);

}  // namespace gtl
