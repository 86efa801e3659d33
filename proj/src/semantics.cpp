#include "gtl/semantics.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <stdexcept>

namespace gtl {

namespace {

std::int64_t parseInteger(std::string_view text) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  return value;
}

template <class Value>
void requireVariables(const Closure& sigma, const std::map<std::string, Value>& valuation) {
  for (const auto& f : sigma.formulas()) {
    if (f.op() == Op::Var && !valuation.count(f.name()))
      throw std::invalid_argument("unknown variable '" + f.name() + "'");
  }
}

}  // namespace

Rational parseRational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parseInteger(text));
  const auto den = parseInteger(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rational(parseInteger(text.substr(0, slash)), den);
}

std::string formatRational(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

PeriodicFlow::PeriodicFlow(std::size_t states, std::size_t loopback) : states_(states), loopback_(loopback) {
  if (states == 0) throw std::invalid_argument("a flow needs at least one state");
  if (loopback >= states) throw std::invalid_argument("loopback must be a state index");
}

void RealModel::validate() const {
  for (const auto& [name, values] : valuation) {
    if (values.size() != flow.states())
      throw std::invalid_argument("variable '" + name + "' needs one value per state");
    for (const auto& v : values) {
      if (v < 0 || v > 1) throw std::invalid_argument("value of '" + name + "' outside [0,1]");
    }
  }
}

bool WorldStateSet::full() const {
  return std::all_of(bits_.begin(), bits_.end(), [](bool b) { return b; });
}

bool WorldStateSet::isEmpty() const {
  return std::none_of(bits_.begin(), bits_.end(), [](bool b) { return b; });
}

bool WorldStateSet::downwardClosed() const {
  for (std::size_t t = 0; t < states_; ++t) {
    for (std::size_t w = 1; w < worlds_; ++w) {
      if (contains(w, t) && !contains(w - 1, t)) return false;
    }
  }
  return true;
}

std::size_t WorldStateSet::countAt(std::size_t t) const {
  std::size_t n = 0;
  for (std::size_t w = 0; w < worlds_; ++w) n += contains(w, t);
  return n;
}

void BiModel::validate() const {
  if (worlds == 0) throw std::invalid_argument("a bi-relational model needs at least one world");
  for (const auto& [name, set] : valuation) {
    if (set.worlds() != worlds || set.states() != flow.states())
      throw std::invalid_argument("valuation of '" + name + "' has the wrong dimensions");
    if (!set.downwardClosed())
      throw std::invalid_argument("valuation of '" + name + "' is not downward closed");
  }
}

std::vector<std::vector<Rational>> evaluateReal(const RealModel& m, const Closure& sigma) {
  requireVariables(sigma, m.valuation);
  m.validate();
  const std::size_t n = m.flow.states();
  std::vector<std::vector<Rational>> val(sigma.size(), std::vector<Rational>(n));
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    const auto& e = sigma.entry(i);
    auto& out = val[i];
    for (std::size_t t = 0; t < n; ++t) {
      const Rational a = e.left >= 0 ? val[e.left][t] : Rational(0);
      const Rational b = e.right >= 0 ? val[e.right][t] : Rational(0);
      switch (e.op) {
        case Op::Bottom: out[t] = 0; break;
        case Op::Var: out[t] = m.valuation.at(sigma[i].name())[t]; break;
        case Op::And: out[t] = std::min(a, b); break;
        case Op::Or: out[t] = std::max(a, b); break;
        case Op::Implies: out[t] = a <= b ? Rational(1) : b; break;
        case Op::Coimplies: out[t] = a > b ? a : Rational(0); break;
        case Op::Next: out[t] = val[e.left][m.flow.successor(t)]; break;
        case Op::Eventually:
        case Op::Henceforth: {
          const auto& inner = val[e.left];
          const auto first = inner.begin() + static_cast<std::ptrdiff_t>(m.flow.reachFrom(t));
          out[t] = e.op == Op::Eventually ? *std::max_element(first, inner.end())
                                          : *std::min_element(first, inner.end());
          break;
        }
      }
    }
  }
  return val;
}

std::vector<WorldStateSet> evaluateBi(const BiModel& m, const Closure& sigma) {
  requireVariables(sigma, m.valuation);
  m.validate();
  const std::size_t W = m.worlds, T = m.flow.states();
  std::vector<WorldStateSet> sets;
  sets.reserve(sigma.size());
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    const auto& e = sigma.entry(i);
    WorldStateSet out(W, T);
    switch (e.op) {
      case Op::Bottom: break;
      case Op::Var: out = m.valuation.at(sigma[i].name()); break;
      default: {
        const WorldStateSet& a = sets[e.left];
        const WorldStateSet* b = e.right >= 0 ? &sets[e.right] : nullptr;
        for (std::size_t t = 0; t < T; ++t) {
          for (std::size_t w = 0; w < W; ++w) {
            bool in = false;
            switch (e.op) {
              case Op::And: in = a.contains(w, t) && b->contains(w, t); break;
              case Op::Or: in = a.contains(w, t) || b->contains(w, t); break;
              case Op::Implies:
                in = true;
                for (std::size_t v = 0; v <= w; ++v) {
                  if (a.contains(v, t) && !b->contains(v, t)) in = false;
                }
                break;
              case Op::Coimplies:
                for (std::size_t v = w; v < W; ++v) {
                  if (a.contains(v, t) && !b->contains(v, t)) in = true;
                }
                break;
              case Op::Next: in = a.contains(w, m.flow.successor(t)); break;
              case Op::Eventually:
                for (std::size_t s = m.flow.reachFrom(t); s < T; ++s) in = in || a.contains(w, s);
                break;
              case Op::Henceforth:
                in = true;
                for (std::size_t s = m.flow.reachFrom(t); s < T; ++s) in = in && a.contains(w, s);
                break;
              default: break;
            }
            out.set(w, t, in);
          }
        }
      }
    }
    sets.push_back(std::move(out));
  }
  return sets;
}

Rational evalReal(const RealModel& m, const Formula& f, std::size_t t) {
  if (t >= m.flow.states()) throw std::out_of_range("state index out of range");
  Closure sigma(f);
  return evaluateReal(m, sigma).back()[t];
}

WorldStateSet evalBi(const BiModel& m, const Formula& f) {
  Closure sigma(f);
  return evaluateBi(m, sigma).back();
}

bool isGloballyTrue(const RealModel& m, const Formula& f) {
  Closure sigma(f);
  const auto values = evaluateReal(m, sigma).back();
  return std::all_of(values.begin(), values.end(), [](const Rational& v) { return v == Rational(1); });
}

bool isGloballyTrue(const BiModel& m, const Formula& f) { return evalBi(m, f).full(); }

RealModel realify(const BiModel& m, const Closure& sigma) {
  const auto sets = evaluateBi(m, sigma);
  // Truth sets are world prefixes, so each class [psi, s] is identified by its size.
  std::set<std::size_t> classes{0, m.worlds};
  for (const auto& s : sets) {
    for (std::size_t t = 0; t < m.flow.states(); ++t) classes.insert(s.countAt(t));
  }
  const std::vector<std::size_t> order(classes.begin(), classes.end());
  std::int64_t denominator = 1;
  while (denominator < static_cast<std::int64_t>(order.size()) - 1) denominator *= 2;
  auto rho = [&](std::size_t count) {
    if (count == m.worlds) return Rational(1);
    const auto rank = std::lower_bound(order.begin(), order.end(), count) - order.begin();
    return Rational(rank, denominator);
  };

  RealModel out;
  out.flow = m.flow;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (sigma[i].op() != Op::Var) continue;
    std::vector<Rational> values;
    for (std::size_t t = 0; t < m.flow.states(); ++t) values.push_back(rho(sets[i].countAt(t)));
    out.valuation[sigma[i].name()] = std::move(values);
  }
  return out;
}

BifyResult bify(const RealModel& m, const Closure& sigma) {
  m.validate();
  const auto values = evaluateReal(m, sigma);
  std::set<Rational> points{Rational(0), Rational(1)};
  for (const auto& row : values) points.insert(row.begin(), row.end());

  BifyResult out;
  for (auto it = points.begin(), next = std::next(it); next != points.end(); ++it, ++next)
    out.thresholds.push_back((*it + *next) / 2);

  out.model.worlds = out.thresholds.size();
  out.model.flow = m.flow;
  for (const auto& [name, vals] : m.valuation) {
    WorldStateSet set(out.model.worlds, m.flow.states());
    for (std::size_t t = 0; t < m.flow.states(); ++t) {
      for (std::size_t w = 0; w < out.model.worlds; ++w) set.set(w, t, vals[t] > out.thresholds[w]);
    }
    out.model.valuation.emplace(name, std::move(set));
  }
  return out;
}

}  // namespace gtl
