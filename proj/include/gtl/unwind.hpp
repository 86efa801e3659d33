#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <string>
#include <vector>

#include "gtl/quasimodel.hpp"

namespace gtl {

enum class DefectKind { Seriality, Diamond, Box, Implication, Coimplication };

std::string defectKindName(DefectKind k);

struct Defect {
  DefectKind kind = DefectKind::Seriality;
  std::size_t path = 0;         // path id
  int formula = -1;             // closure index; -1 for seriality
  std::size_t position = 0;     // time index, implication/coimplication only
  std::uint64_t serial = 0;     // enqueue order
  std::size_t enqueuedAt = 0;   // steps completed when enqueued

  bool sameDefect(const Defect& o) const {
    return kind == o.kind && path == o.path && formula == o.formula && position == o.position;
  }
};

struct GridPath {
  std::size_t id = 0;
  std::vector<std::size_t> worlds;  // quasimodel indices
};

/// Paths are kept in increasing pointwise order: paths.front() is the least.
struct FiniteGrid {
  std::vector<GridPath> paths;
  std::deque<Defect> queue;
  std::size_t steps = 0;
  std::vector<std::string> trace;
  std::uint64_t nextSerial = 0;
  std::size_t nextPathId = 0;

  std::size_t length() const { return paths.empty() ? 0 : paths.front().worlds.size(); }
  const GridPath* findPath(std::size_t id) const;
};

/// All current defects of the grid, in enqueue order: per path from least to greatest,
/// seriality first, then diamond, box, implication, coimplication.
std::vector<Defect> gridDefects(const Quasimodel& q, const FiniteGrid& g);

bool isDefect(const Quasimodel& q, const FiniteGrid& g, const Defect& d);

/// Runs `budget` steps of first-in-first-out defect processing from the single path (start).
/// Throws std::invalid_argument if q is not a valid quasimodel or start is out of range.
FiniteGrid unwindBounded(const Quasimodel& q, std::size_t start, std::size_t budget);

/// One processing step on an existing grid; q must already be known valid.
void unwindStep(const Quasimodel& q, FiniteGrid& g);

}  // namespace gtl
