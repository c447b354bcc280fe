#ifndef TIRILMAN_TREE_HPP
#define TIRILMAN_TREE_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tirilman/error.hpp"
#include "tirilman/vector.hpp"

namespace tirilman {

namespace detail {

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline std::string format_exact(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace detail

/// A nested choice of consecutive partitions; evaluates to a norming
/// functional c(T).
///
/// Kinds:
///  - empty: certificate of the zero vector, evaluates to 0;
///  - leaf(i): evaluates to |v_i|;
///  - internal(w, children): evaluates to w * sum of child evaluations, where
///    w = gamma * k^{-1/q} and k is the child count.
/// Children occupy disjoint, increasing position ranges.
class PartitionTree {
 public:
  enum class Kind { empty, leaf, internal };

  PartitionTree() = default;

  static PartitionTree leaf(Position i) {
    PartitionTree t;
    t.kind_ = Kind::leaf;
    t.position_ = i;
    return t;
  }

  static PartitionTree internal(double weight, std::vector<PartitionTree> children) {
    if (children.size() < 2) throw invalid_input("internal node needs at least two children");
    for (std::size_t j = 0; j < children.size(); ++j) {
      if (children[j].kind_ == Kind::empty) throw invalid_input("internal node with empty child");
      if (j > 0 && children[j - 1].max_position() >= children[j].min_position())
        throw invalid_input("children of a partition node must have increasing ranges");
    }
    PartitionTree t;
    t.kind_ = Kind::internal;
    t.weight_ = weight;
    t.children_ = std::move(children);
    return t;
  }

  Kind kind() const noexcept { return kind_; }
  bool is_empty() const noexcept { return kind_ == Kind::empty; }
  bool is_leaf() const noexcept { return kind_ == Kind::leaf; }
  bool is_internal() const noexcept { return kind_ == Kind::internal; }

  Position position() const noexcept { return position_; }
  double weight() const noexcept { return weight_; }
  const std::vector<PartitionTree>& children() const noexcept { return children_; }

  Position min_position() const noexcept {
    return kind_ == Kind::internal ? children_.front().min_position() : position_;
  }
  Position max_position() const noexcept {
    return kind_ == Kind::internal ? children_.back().max_position() : position_;
  }

  /// Nesting depth; leaves and the empty tree have depth 0.
  int depth() const noexcept {
    if (kind_ != Kind::internal) return 0;
    int d = 0;
    for (const auto& c : children_) d = std::max(d, c.depth());
    return d + 1;
  }

  std::size_t leaf_count() const noexcept {
    if (kind_ == Kind::empty) return 0;
    if (kind_ == Kind::leaf) return 1;
    std::size_t n = 0;
    for (const auto& c : children_) n += c.leaf_count();
    return n;
  }

  /// The functional c(T) as a nonnegative dual vector: each leaf position
  /// carries the product of the weights on its root path.
  FiniteVector functional() const {
    std::vector<Entry> out;
    collect(1.0, out);
    return FiniteVector(std::move(out), Side::dual);
  }

  /// Nested text form: leaves `[pos]`, internal nodes `(w child child ...)`
  /// with w printed to 17 significant digits, empty tree `()`.
  std::string serialize() const {
    std::string s;
    write(s);
    return s;
  }

  static PartitionTree parse(std::string_view text) {
    std::size_t at = 0;
    skip_ws(text, at);
    PartitionTree t = parse_node(text, at);
    skip_ws(text, at);
    if (at != text.size()) throw parse_error("trailing characters in certificate", 0);
    return t;
  }

  friend bool operator==(const PartitionTree&, const PartitionTree&) = default;

 private:
  void collect(double scale, std::vector<Entry>& out) const {
    if (kind_ == Kind::leaf) {
      out.push_back({position_, scale});
    } else if (kind_ == Kind::internal) {
      for (const auto& c : children_) c.collect(scale * weight_, out);
    }
  }

  void write(std::string& s) const {
    switch (kind_) {
      case Kind::empty:
        s += "()";
        break;
      case Kind::leaf:
        s += '[';
        s += std::to_string(position_);
        s += ']';
        break;
      case Kind::internal:
        s += '(';
        s += detail::format_exact(weight_);
        s += ' ';
        for (const auto& c : children_) c.write(s);
        s += ')';
        break;
    }
  }

  static void skip_ws(std::string_view t, std::size_t& at) {
    while (at < t.size() && (t[at] == ' ' || t[at] == '\n' || t[at] == '\t' || t[at] == '\r'))
      ++at;
  }

  static PartitionTree parse_node(std::string_view t, std::size_t& at) {
    if (at >= t.size()) throw parse_error("unexpected end of certificate", 0);
    if (t[at] == '[') {
      const std::size_t close = t.find(']', at);
      if (close == std::string_view::npos) throw parse_error("unterminated leaf", 0);
      const std::string num(t.substr(at + 1, close - at - 1));
      char* end = nullptr;
      const long long pos = std::strtoll(num.c_str(), &end, 10);
      if (num.empty() || *end != '\0' || pos < 1) throw parse_error("bad leaf position '" + num + "'", 0);
      at = close + 1;
      return leaf(pos);
    }
    if (t[at] != '(') throw parse_error("expected '(' or '[' in certificate", 0);
    ++at;
    skip_ws(t, at);
    if (at < t.size() && t[at] == ')') {
      ++at;
      return PartitionTree();
    }
    std::size_t wend = at;
    while (wend < t.size() && t[wend] != ' ' && t[wend] != '(' && t[wend] != '[') ++wend;
    const std::string wtext(t.substr(at, wend - at));
    char* end = nullptr;
    const double w = std::strtod(wtext.c_str(), &end);
    if (wtext.empty() || *end != '\0' || !std::isfinite(w)) throw parse_error("bad node weight '" + wtext + "'", 0);
    at = wend;
    std::vector<PartitionTree> kids;
    for (;;) {
      skip_ws(t, at);
      if (at >= t.size()) throw parse_error("unterminated node", 0);
      if (t[at] == ')') {
        ++at;
        break;
      }
      kids.push_back(parse_node(t, at));
    }
    try {
      return internal(w, std::move(kids));
    } catch (const invalid_input& e) {
      throw parse_error(e.what(), 0);
    }
  }

  Kind kind_ = Kind::empty;
  Position position_ = 0;
  double weight_ = 0.0;
  std::vector<PartitionTree> children_;
};

/// Evaluates c(T) against |v|; positions missing from v read as 0.
inline double evaluate_functional(const PartitionTree& tree, const FiniteVector& v) {
  switch (tree.kind()) {
    case PartitionTree::Kind::empty:
      return 0.0;
    case PartitionTree::Kind::leaf:
      return std::abs(v.at(tree.position()));
    case PartitionTree::Kind::internal:
      break;
  }
  const auto& kids = tree.children();
  if (kids.size() > 64) {
    detail::CompensatedSum s;
    for (const auto& c : kids) s.add(evaluate_functional(c, v));
    return tree.weight() * s.value();
  }
  double s = 0.0;
  for (const auto& c : kids) s += evaluate_functional(c, v);
  return tree.weight() * s;
}

}  // namespace tirilman

#endif  // TIRILMAN_TREE_HPP
