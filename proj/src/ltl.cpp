#include "gtl/ltl.hpp"

namespace gtl {

Formula translate(const Formula& f) {
  switch (f.op()) {
    case Op::Bottom: return f;
    case Op::Var: return Formula::negation(Formula::negation(f));
    case Op::And: return Formula::conj(translate(f.left()), translate(f.right()));
    case Op::Or: return Formula::disj(translate(f.left()), translate(f.right()));
    case Op::Implies: return Formula::implies(translate(f.left()), translate(f.right()));
    case Op::Coimplies: return Formula::coimplies(translate(f.left()), translate(f.right()));
    case Op::Next: return Formula::next(translate(f.inner()));
    case Op::Eventually: return Formula::eventually(translate(f.inner()));
    case Op::Henceforth: return Formula::henceforth(translate(f.inner()));
  }
  return f;
}

}  // namespace gtl
