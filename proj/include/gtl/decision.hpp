#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gtl/formula.hpp"
#include "gtl/quasimodel.hpp"
#include "gtl/successor.hpp"
#include "gtl/types.hpp"

namespace gtl {

/// Lasso of moments over closure(formula): moments[pivot] == moments.back(), and
/// relations[j] links moments[j] to moments[j + 1].
struct Witness {
  Formula formula;
  std::size_t pivot = 0;
  std::vector<Moment> moments;
  std::vector<ConvexRelation> relations;

  std::size_t loopLength() const { return moments.size() - 1 - pivot; }

  friend bool operator==(const Witness&, const Witness&) = default;
};

struct DecideOptions {
  std::size_t maxSigma = 12;
  int threads = 0;  // <= 0: OpenMP default; 1: serial search
};

struct DecideStats {
  std::size_t sigma = 0;
  std::size_t moments = 0;
  std::size_t edges = 0;
  std::size_t reachable = 0;
  std::size_t candidates = 0;  // loop moments searched
  std::size_t loopStates = 0;  // visited across all searched candidates
};

struct Decision {
  bool valid = false;
  std::optional<Witness> witness;  // set iff !valid
  DecideStats stats;
};

/// Throws LimitExceeded when the closure exceeds options.maxSigma.
Decision decide(const Formula& f, const DecideOptions& options = {});

struct WitnessCheck {
  bool ok = false;
  std::vector<std::string> diagnostics;  // first failing condition first; tags "shape", "moment", "lasso", "relation", "diamond", "box"
};

WitnessCheck verifyWitness(const Formula& f, const Witness& w);

/// Worlds (time, position) for time < moments.size() - 1, one chain per time; the last
/// relation is redirected into the pivot column. Throws std::invalid_argument when the
/// witness does not verify.
Quasimodel witnessToQuasimodel(const Witness& w);

}  // namespace gtl
