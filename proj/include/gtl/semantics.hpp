#pragma once

#include <boost/rational.hpp>

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "gtl/formula.hpp"

namespace gtl {

// Compare against Rational(k), never a bare integer: under C++20 the mixed
// operator== of boost 1.74 recurses through its own reversed candidate.
using Rational = boost::rational<std::int64_t>;

/// "num/den" (or a bare integer) to an exact rational.
Rational parseRational(std::string_view text);
/// Always "num/den" in lowest terms.
std::string formatRational(const Rational& r);

/// States 0..states-1; the last state steps back to `loopback`.
class PeriodicFlow {
 public:
  PeriodicFlow() = default;
  PeriodicFlow(std::size_t states, std::size_t loopback);

  std::size_t states() const { return states_; }
  std::size_t loopback() const { return loopback_; }
  std::size_t successor(std::size_t t) const { return t + 1 < states_ ? t + 1 : loopback_; }
  /// States reachable from t in zero or more steps form [reachFrom(t), states-1].
  std::size_t reachFrom(std::size_t t) const { return t < loopback_ ? t : loopback_; }

  friend bool operator==(const PeriodicFlow&, const PeriodicFlow&) = default;

 private:
  std::size_t states_ = 1;
  std::size_t loopback_ = 0;
};

struct RealModel {
  PeriodicFlow flow;
  std::map<std::string, std::vector<Rational>> valuation;

  /// Throws std::invalid_argument on values outside [0,1] or wrong lengths.
  void validate() const;
};

/// A subset of worlds x states, stored densely.
class WorldStateSet {
 public:
  WorldStateSet() = default;
  WorldStateSet(std::size_t worlds, std::size_t states, bool filled = false)
      : worlds_(worlds), states_(states), bits_(worlds * states, filled) {}

  std::size_t worlds() const { return worlds_; }
  std::size_t states() const { return states_; }
  bool contains(std::size_t w, std::size_t t) const { return bits_[t * worlds_ + w]; }
  void set(std::size_t w, std::size_t t, bool value = true) { bits_[t * worlds_ + w] = value; }
  bool full() const;
  bool isEmpty() const;
  /// Downward closed in the world coordinate.
  bool downwardClosed() const;
  /// Number of worlds in the set at state t (the set is a prefix when downward closed).
  std::size_t countAt(std::size_t t) const;

  friend bool operator==(const WorldStateSet&, const WorldStateSet&) = default;

 private:
  std::size_t worlds_ = 0;
  std::size_t states_ = 0;
  std::vector<bool> bits_;
};

/// Worlds form the chain 0 < 1 < ... < worlds-1.
struct BiModel {
  std::size_t worlds = 1;
  PeriodicFlow flow;
  std::map<std::string, WorldStateSet> valuation;

  /// Throws std::invalid_argument on dimension mismatches or non-downward-closed valuations.
  void validate() const;
};

/// Values of every closure member at every state: values[formula][state].
std::vector<std::vector<Rational>> evaluateReal(const RealModel& m, const Closure& sigma);
/// Truth sets of every closure member: sets[formula].
std::vector<WorldStateSet> evaluateBi(const BiModel& m, const Closure& sigma);

Rational evalReal(const RealModel& m, const Formula& f, std::size_t t);
WorldStateSet evalBi(const BiModel& m, const Formula& f);

bool isGloballyTrue(const RealModel& m, const Formula& f);
bool isGloballyTrue(const BiModel& m, const Formula& f);

/// Real model whose values order-embed the classes [psi, s] of the bi-relational
/// model restricted to sigma. Classes are placed at dyadic rationals i/2^k with the
/// top class at 1.
RealModel realify(const BiModel& m, const Closure& sigma);

struct BifyResult {
  BiModel model;
  /// thresholds[w] is the cut point represented by world w (increasing).
  std::vector<Rational> thresholds;
};

/// Bi-relational model with one world per gap between consecutive values taken by
/// sigma members; world w holds p at t iff V(p,t) > thresholds[w].
BifyResult bify(const RealModel& m, const Closure& sigma);

}  // namespace gtl
