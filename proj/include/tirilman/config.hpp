#ifndef TIRILMAN_CONFIG_HPP
#define TIRILMAN_CONFIG_HPP

// Run configuration: flat `key = value` lines, `#` starts a comment. Lists
// are comma separated. Unknown keys are errors.

#include <cstdint>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "tirilman/error.hpp"
#include "tirilman/io.hpp"
#include "tirilman/tree.hpp"

namespace tirilman {

struct RunConfig {
  double p = 2.0;
  double gamma = 0.5;
  std::uint64_t seed = 1;
  std::size_t trials = 200;
  std::size_t support_cap = 512;
  std::size_t dual_cap = 64;
  std::size_t cut_cap = 10000;
  double tol = 1e-7;  // dual cutting-plane tolerance for norm/dual commands
  std::vector<std::string> suites{"prop1", "prop2", "prop3", "lemma4", "lemma6", "lemma7", "invariance"};
  std::string out;  // empty: $TIRILMAN_OUT, else ./tirilman-out
  std::vector<std::string> formats{"json", "csv"};
  // Suite knobs.
  std::size_t n = 0;     // block count for prop2 / lemma7; 0 draws it per trial
  int m = 0;             // prop9 block count; 0 runs m = 2, 3, 4
  double eta = 0.05;     // prop9 sup-norm bound
  std::size_t budget = 128;  // prop9 per-block support budget

  friend bool operator==(const RunConfig&, const RunConfig&) = default;

  bool wants(std::string_view format) const {
    for (const auto& f : formats)
      if (f == format) return true;
    return false;
  }
};

namespace detail {

inline std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  while (true) {
    const auto c = s.find(',');
    const auto item = trim(s.substr(0, c));
    if (!item.empty()) out.emplace_back(item);
    if (c == std::string_view::npos) break;
    s.remove_prefix(c + 1);
  }
  return out;
}

inline std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
  return s;
}

}  // namespace detail

/// Throws invalid_input on out-of-range fields (parameter validity itself is
/// checked by make_space_params when the run starts).
inline void validate(const RunConfig& c) {
  if (c.trials < 1) throw invalid_input("trials must be >= 1");
  if (c.support_cap < 1 || c.dual_cap < 1 || c.cut_cap < 1) throw invalid_input("caps must be >= 1");
  if (!(c.tol > 0.0)) throw invalid_input("tol must be > 0");
  if (c.formats.empty()) throw invalid_input("at least one output format is required");
  for (const auto& f : c.formats)
    if (f != "json" && f != "csv") throw invalid_input("unknown format '" + f + "' (json|csv)");
  if (c.m != 0 && c.m < 2) throw invalid_input("m must be 0 or >= 2");
  if (!(c.eta > 0.0)) throw invalid_input("eta must be > 0");
}

inline void set_config_key(RunConfig& c, std::string_view key, std::string_view val, std::size_t line = 0) {
  using detail::parse_integer;
  using detail::parse_real;
  if (key == "p")
    c.p = parse_real(val, line, "p");
  else if (key == "gamma")
    c.gamma = parse_real(val, line, "gamma");
  else if (key == "seed")
    c.seed = parse_integer<std::uint64_t>(val, line, "seed");
  else if (key == "trials")
    c.trials = parse_integer<std::size_t>(val, line, "trials");
  else if (key == "support_cap")
    c.support_cap = parse_integer<std::size_t>(val, line, "support_cap");
  else if (key == "dual_cap")
    c.dual_cap = parse_integer<std::size_t>(val, line, "dual_cap");
  else if (key == "cut_cap")
    c.cut_cap = parse_integer<std::size_t>(val, line, "cut_cap");
  else if (key == "tol")
    c.tol = parse_real(val, line, "tol");
  else if (key == "suites")
    c.suites = detail::split_list(val);
  else if (key == "out")
    c.out = std::string(detail::trim(val));
  else if (key == "formats")
    c.formats = detail::split_list(val);
  else if (key == "n")
    c.n = parse_integer<std::size_t>(val, line, "n");
  else if (key == "m")
    c.m = parse_integer<int>(val, line, "m");
  else if (key == "eta")
    c.eta = parse_real(val, line, "eta");
  else if (key == "budget")
    c.budget = parse_integer<std::size_t>(val, line, "budget");
  else
    throw parse_error("unknown key '" + std::string(key) + "'", line);
}

/// Applies the keys found in `in` on top of `base`.
inline RunConfig read_config(std::istream& in, RunConfig base = {}) {
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view s = raw;
    if (const auto h = s.find('#'); h != std::string_view::npos) s = s.substr(0, h);
    s = detail::trim(s);
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string_view::npos) throw parse_error("expected 'key = value'", line);
    set_config_key(base, detail::trim(s.substr(0, eq)), s.substr(eq + 1), line);
  }
  try {
    validate(base);
  } catch (const invalid_input& e) {
    throw parse_error(e.what(), 0);
  }
  return base;
}

inline RunConfig parse_config(std::string_view text, RunConfig base = {}) {
  std::istringstream in{std::string(text)};
  return read_config(in, std::move(base));
}

/// Every key, in a fixed order, reals in round-trip form.
inline std::string emit_config(const RunConfig& c) {
  using detail::format_exact;
  std::string s;
  s += "p = " + format_exact(c.p) + "\n";
  s += "gamma = " + format_exact(c.gamma) + "\n";
  s += "seed = " + std::to_string(c.seed) + "\n";
  s += "trials = " + std::to_string(c.trials) + "\n";
  s += "support_cap = " + std::to_string(c.support_cap) + "\n";
  s += "dual_cap = " + std::to_string(c.dual_cap) + "\n";
  s += "cut_cap = " + std::to_string(c.cut_cap) + "\n";
  s += "tol = " + format_exact(c.tol) + "\n";
  s += "suites = " + detail::join(c.suites) + "\n";
  s += "out = " + c.out + "\n";
  s += "formats = " + detail::join(c.formats) + "\n";
  s += "n = " + std::to_string(c.n) + "\n";
  s += "m = " + std::to_string(c.m) + "\n";
  s += "eta = " + format_exact(c.eta) + "\n";
  s += "budget = " + std::to_string(c.budget) + "\n";
  return s;
}

}  // namespace tirilman

#endif  // TIRILMAN_CONFIG_HPP
