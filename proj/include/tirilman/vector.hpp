#ifndef TIRILMAN_VECTOR_HPP
#define TIRILMAN_VECTOR_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tirilman/error.hpp"

namespace tirilman {

using Position = std::int64_t;

/// Which norm a vector is meant to be measured with. Metadata only.
enum class Side { primal, dual };

inline const char* to_string(Side s) { return s == Side::primal ? "primal" : "dual"; }

struct Entry {
  Position position;
  double value;

  friend bool operator==(const Entry&, const Entry&) = default;
};

/// Closed interval [lo, hi] of positions; empty when lo > hi.
struct Interval {
  Position lo;
  Position hi;

  bool contains(Position i) const noexcept { return lo <= i && i <= hi; }
  bool empty() const noexcept { return lo > hi; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Finitely supported real sequence. Only nonzero coefficients are stored,
/// sorted by strictly increasing position (positions are >= 1).
class FiniteVector {
 public:
  FiniteVector() = default;

  explicit FiniteVector(std::vector<Entry> entries, Side side = Side::primal) : side_(side) {
    entries_.reserve(entries.size());
    Position last = 0;
    for (const auto& e : entries) {
      if (e.position < 1) throw invalid_input("positions must be >= 1");
      if (e.position <= last) throw invalid_input("positions must be strictly increasing");
      if (!std::isfinite(e.value)) throw invalid_input("coefficients must be finite");
      last = e.position;
      if (e.value != 0.0) entries_.push_back(e);
    }
  }

  /// Coefficients at consecutive positions first, first+1, ...
  static FiniteVector from_values(std::span<const double> values, Side side = Side::primal,
                                  Position first = 1) {
    std::vector<Entry> e;
    e.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
      e.push_back({first + static_cast<Position>(i), values[i]});
    return FiniteVector(std::move(e), side);
  }

  static FiniteVector ones(std::size_t n, Side side = Side::primal) {
    std::vector<double> v(n, 1.0);
    return from_values(v, side);
  }

  static FiniteVector unit(Position i, Side side = Side::primal) {
    return FiniteVector({{i, 1.0}}, side);
  }

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  Side side() const noexcept { return side_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  FiniteVector with_side(Side s) const {
    FiniteVector r = *this;
    r.side_ = s;
    return r;
  }

  std::vector<Position> support() const {
    std::vector<Position> s;
    s.reserve(entries_.size());
    for (const auto& e : entries_) s.push_back(e.position);
    return s;
  }

  /// Coefficients in position order; all nonzero.
  std::vector<double> values() const {
    std::vector<double> v;
    v.reserve(entries_.size());
    for (const auto& e : entries_) v.push_back(e.value);
    return v;
  }

  std::vector<double> magnitudes() const {
    std::vector<double> v;
    v.reserve(entries_.size());
    for (const auto& e : entries_) v.push_back(std::abs(e.value));
    return v;
  }

  /// Coefficient at position i, 0 when i is outside the support.
  double at(Position i) const noexcept {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                               [](const Entry& e, Position p) { return e.position < p; });
    return (it != entries_.end() && it->position == i) ? it->value : 0.0;
  }

  double sup_norm() const noexcept {
    double m = 0.0;
    for (const auto& e : entries_) m = std::max(m, std::abs(e.value));
    return m;
  }

  double l1_norm() const noexcept {
    double s = 0.0;
    for (const auto& e : entries_) s += std::abs(e.value);
    return s;
  }

  Position min_position() const { return entries_.empty() ? 0 : entries_.front().position; }
  Position max_position() const { return entries_.empty() ? 0 : entries_.back().position; }

  FiniteVector scaled(double c) const {
    FiniteVector r;
    r.side_ = side_;
    if (c == 0.0) return r;
    r.entries_.reserve(entries_.size());
    for (const auto& e : entries_) r.entries_.push_back({e.position, c * e.value});
    return r;
  }

  FiniteVector abs() const {
    FiniteVector r = *this;
    for (auto& e : r.entries_) e.value = std::abs(e.value);
    return r;
  }

  /// Pairing sum_i this_i * other_i over common support.
  double dot(const FiniteVector& other) const noexcept {
    double s = 0.0;
    auto a = entries_.begin();
    auto b = other.entries_.begin();
    while (a != entries_.end() && b != other.entries_.end()) {
      if (a->position < b->position) {
        ++a;
      } else if (b->position < a->position) {
        ++b;
      } else {
        s += a->value * b->value;
        ++a;
        ++b;
      }
    }
    return s;
  }

  friend FiniteVector operator+(const FiniteVector& x, const FiniteVector& y) {
    std::vector<Entry> out;
    out.reserve(x.size() + y.size());
    auto a = x.entries_.begin();
    auto b = y.entries_.begin();
    while (a != x.entries_.end() || b != y.entries_.end()) {
      if (b == y.entries_.end() || (a != x.entries_.end() && a->position < b->position)) {
        out.push_back(*a++);
      } else if (a == x.entries_.end() || b->position < a->position) {
        out.push_back(*b++);
      } else {
        out.push_back({a->position, a->value + b->value});
        ++a;
        ++b;
      }
    }
    return FiniteVector(std::move(out), x.side_);
  }

  friend bool operator==(const FiniteVector&, const FiniteVector&) = default;

 private:
  std::vector<Entry> entries_;
  Side side_ = Side::primal;
};

/// Moves the coefficients of v, in order, onto the strictly increasing
/// target positions. The norm is invariant under this relabeling.
inline FiniteVector spread(const FiniteVector& v, std::span<const Position> targets) {
  if (targets.size() != v.size())
    throw invalid_input("spread: expected " + std::to_string(v.size()) + " targets, got " +
                        std::to_string(targets.size()));
  std::vector<Entry> e;
  e.reserve(v.size());
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (i > 0 && targets[i] <= targets[i - 1])
      throw invalid_input("spread: targets must be strictly increasing");
    e.push_back({targets[i], v.entries()[i].value});
  }
  return FiniteVector(std::move(e), v.side());
}

/// Keeps exactly the entries whose positions lie in the interval.
inline FiniteVector restrict(const FiniteVector& v, Interval iv) {
  std::vector<Entry> e;
  for (const auto& x : v.entries())
    if (iv.contains(x.position)) e.push_back(x);
  return FiniteVector(std::move(e), v.side());
}

/// Consecutive, pairwise disjoint, nonempty intervals E_1 < ... < E_n.
class IntervalPartition {
 public:
  explicit IntervalPartition(std::vector<Interval> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw invalid_input("partition needs at least one part");
    for (std::size_t j = 0; j < parts_.size(); ++j) {
      if (parts_[j].empty()) throw invalid_input("partition parts must be nonempty");
      if (j > 0 && parts_[j - 1].hi >= parts_[j].lo)
        throw invalid_input("partition parts must satisfy max(E_j) < min(E_{j+1})");
    }
  }

  const std::vector<Interval>& parts() const noexcept { return parts_; }
  std::size_t size() const noexcept { return parts_.size(); }

 private:
  std::vector<Interval> parts_;
};

}  // namespace tirilman

#endif  // TIRILMAN_VECTOR_HPP
