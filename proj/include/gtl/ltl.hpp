#pragma once

#include "gtl/formula.hpp"

namespace gtl {

/// Negative translation: p becomes ~~p, every other constructor is kept.
Formula translate(const Formula& f);

}  // namespace gtl
