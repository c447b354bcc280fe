#ifndef TIRILMAN_IO_HPP
#define TIRILMAN_IO_HPP

// Text formats.
//
// Vector file: CSV with header `position,value`, one row per nonzero entry,
// positions strictly increasing. Block file: sections introduced by
// `#block k` (k = 1, 2, ... in order), each holding a vector CSV; the header
// line inside a section is optional.

#include <charconv>
#include <cmath>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "tirilman/block.hpp"
#include "tirilman/error.hpp"
#include "tirilman/tree.hpp"
#include "tirilman/vector.hpp"

namespace tirilman {

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto a = s.find_first_not_of(ws);
  if (a == std::string_view::npos) return {};
  return s.substr(a, s.find_last_not_of(ws) - a + 1);
}

inline double parse_real(std::string_view s, std::size_t line, const char* what) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double x = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (s.empty() || ec != std::errc() || end != s.data() + s.size())
    throw parse_error(std::string("bad ") + what + " '" + std::string(s) + "'", line);
  if (!std::isfinite(x)) throw parse_error(std::string(what) + " must be finite", line);
  return x;
}

template <class Int>
Int parse_integer(std::string_view s, std::size_t line, const char* what) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  Int x{};
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (s.empty() || ec != std::errc() || end != s.data() + s.size())
    throw parse_error(std::string("bad ") + what + " '" + std::string(s) + "'", line);
  return x;
}

inline bool is_header(std::string_view s) {
  const auto c = s.find(',');
  return c != std::string_view::npos && trim(s.substr(0, c)) == "position" && trim(s.substr(c + 1)) == "value";
}

// Parses one data row into `out`; positions must exceed `last`.
inline void parse_row(std::string_view s, std::size_t line, std::vector<Entry>& out, Position& last) {
  const auto c = s.find(',');
  if (c == std::string_view::npos) throw parse_error("expected 'position,value'", line);
  if (s.find(',', c + 1) != std::string_view::npos) throw parse_error("too many fields", line);
  const auto pos = parse_integer<Position>(s.substr(0, c), line, "position");
  const double val = parse_real(s.substr(c + 1), line, "value");
  if (pos < 1) throw parse_error("positions must be >= 1", line);
  if (pos <= last) throw parse_error("positions must be strictly increasing", line);
  last = pos;
  out.push_back({pos, val});
}

}  // namespace detail

/// Reads a vector file. An empty file and a header-only file both give the
/// zero vector. Errors carry 1-based line numbers.
inline FiniteVector read_vector(std::istream& in, Side side = Side::primal) {
  std::vector<Entry> e;
  std::string raw;
  std::size_t line = 0;
  bool seen_header = false;
  Position last = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto s = detail::trim(raw);
    if (s.empty()) continue;
    if (!seen_header) {
      if (!detail::is_header(s)) throw parse_error("expected header 'position,value'", line);
      seen_header = true;
      continue;
    }
    detail::parse_row(s, line, e, last);
  }
  return FiniteVector(std::move(e), side);
}

inline FiniteVector parse_vector(std::string_view text, Side side = Side::primal) {
  std::istringstream in{std::string(text)};
  return read_vector(in, side);
}

/// Exact (round-trip) rendering; zero entries never appear.
inline std::string write_vector(const FiniteVector& v) {
  std::string s = "position,value\n";
  for (const auto& [pos, val] : v.entries()) s += std::to_string(pos) + "," + detail::format_exact(val) + "\n";
  return s;
}

inline BlockBasis read_blocks(std::istream& in, Side side, bool normalized = false) {
  std::vector<FiniteVector> blocks;
  std::vector<Entry> cur;
  bool open = false, header_ok = false;
  std::string raw;
  std::size_t line = 0;
  Position last = 0;  // across blocks as well: supports must be successive
  auto close = [&] {
    if (!open) return;
    FiniteVector v(std::move(cur), side);
    cur.clear();
    if (v.empty()) throw parse_error("block " + std::to_string(blocks.size() + 1) + " has no nonzero entries", line);
    blocks.push_back(std::move(v));
  };
  while (std::getline(in, raw)) {
    ++line;
    const auto s = detail::trim(raw);
    if (s.empty()) continue;
    if (s.rfind("#block", 0) == 0) {
      close();
      const auto k = detail::parse_integer<std::size_t>(s.substr(6), line, "block index");
      if (k != blocks.size() + 1) throw parse_error("expected '#block " + std::to_string(blocks.size() + 1) + "'", line);
      open = header_ok = true;
      continue;
    }
    if (!open) throw parse_error("data before the first '#block' line", line);
    if (header_ok && detail::is_header(s)) {
      header_ok = false;
      continue;
    }
    header_ok = false;
    detail::parse_row(s, line, cur, last);
  }
  close();
  return BlockBasis(std::move(blocks), side, normalized);
}

inline std::string write_blocks(const BlockBasis& b) {
  std::string s;
  for (std::size_t j = 0; j < b.size(); ++j) s += "#block " + std::to_string(j + 1) + "\n" + write_vector(b[j]);
  return s;
}

}  // namespace tirilman

#endif  // TIRILMAN_IO_HPP
