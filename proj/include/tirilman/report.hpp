#ifndef TIRILMAN_REPORT_HPP
#define TIRILMAN_REPORT_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <concepts>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "tirilman/params.hpp"
#include "tirilman/tree.hpp"

namespace tirilman {

/// One recorded inequality slack. Nonnegative means the inequality holds;
/// the entry passes when value >= -tol.
struct Margin {
  std::string family;
  double value = 0.0;
  double tol = 0.0;

  bool ok() const noexcept { return value >= -tol; }  // false for NaN
  /// Slack in units of the tolerance; the worst instance minimizes this.
  double score() const noexcept { return std::isnan(value) ? -std::numeric_limits<double>::infinity() : value / tol; }
};

struct MarginSummary {
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  std::size_t count = 0;
};

inline MarginSummary summarize(const std::vector<double>& v) {
  MarginSummary s;
  s.count = v.size();
  if (v.empty()) return s;
  s.min = s.max = v.front();
  detail::CompensatedSum acc;
  for (double x : v) {
    s.min = std::min(s.min, x);
    s.max = std::max(s.max, x);
    acc.add(x);
  }
  s.mean = acc.value() / static_cast<double>(v.size());
  return s;
}

class CheckReport {
 public:
  CheckReport() = default;
  CheckReport(std::string suite, const SpaceParams& params, std::size_t trials, std::uint64_t seed)
      : suite(std::move(suite)), p(params.p()), q(params.q()), gamma(params.gamma()), trials(trials), seed(seed) {}

  std::string suite;
  double p = 0.0, q = 0.0, gamma = 0.0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::size_t instances = 0;
  std::vector<Margin> margins;
  std::string worst_instance;
  double worst_score = std::numeric_limits<double>::infinity();
  bool relaxed = false;
  /// Bounds and measured quantities (K, C, theory constants, ...), by name.
  std::map<std::string, double> constants;
  std::vector<std::string> notes;
  double wall_time_ms = 0.0;

  /// Records one margin; `describe` builds the instance text only when the
  /// margin becomes the worst one seen.
  template <std::invocable Describe>
  void record(const std::string& family, double value, double tol, Describe&& describe) {
    Margin m{family, value + 0.0, tol};  // + 0.0 turns -0 into 0
    if (m.score() < worst_score) {
      worst_score = m.score();
      worst_instance = family + ": " + describe();
    }
    margins.push_back(std::move(m));
  }

  void record(const std::string& family, double value, double tol, const std::string& description) {
    record(family, value, tol, [&] { return description; });
  }

  bool passed() const noexcept {
    for (const auto& m : margins)
      if (!m.ok()) return false;
    return true;
  }

  std::vector<double> values(const std::string& family = {}) const {
    std::vector<double> out;
    for (const auto& m : margins)
      if (family.empty() || m.family == family) out.push_back(m.value);
    return out;
  }

  double min_margin(const std::string& family = {}) const { return summarize(values(family)).min; }

  std::vector<std::string> families() const {
    std::vector<std::string> out;
    for (const auto& m : margins)
      if (std::find(out.begin(), out.end(), m.family) == out.end()) out.push_back(m.family);
    return out;
  }

  /// Round-trip text rendering of a coefficient list.
  static std::string list(const std::vector<double>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ",";
      s += detail::format_exact(v[i]);
    }
    return s + "]";
  }
};

/// Combines two reports of the same suite (e.g. across a parameter grid).
/// Margins are concatenated, instances add, the worst instance is the one
/// with the smaller tolerance-scaled slack; constants of `a` win on clashes.
inline CheckReport merge(const CheckReport& a, const CheckReport& b) {
  CheckReport r = a;
  r.instances += b.instances;
  r.trials += b.trials;
  r.margins.insert(r.margins.end(), b.margins.begin(), b.margins.end());
  if (b.worst_score < r.worst_score) {
    r.worst_score = b.worst_score;
    r.worst_instance = b.worst_instance;
  }
  r.relaxed = a.relaxed || b.relaxed;
  for (const auto& [k, v] : b.constants) r.constants.emplace(k, v);
  r.notes.insert(r.notes.end(), b.notes.begin(), b.notes.end());
  r.wall_time_ms += b.wall_time_ms;
  return r;
}

namespace detail {

inline nlohmann::ordered_json number(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

inline nlohmann::ordered_json summary_json(const MarginSummary& s) {
  nlohmann::ordered_json j;
  j["min"] = number(s.min);
  j["max"] = number(s.max);
  j["mean"] = number(s.mean);
  return j;
}

}  // namespace detail

inline nlohmann::ordered_json to_json(const CheckReport& r) {
  nlohmann::ordered_json j;
  j["suite"] = r.suite;
  j["params"] = {{"p", detail::number(r.p)}, {"q", detail::number(r.q)}, {"gamma", detail::number(r.gamma)}};
  j["trials"] = r.trials;
  j["seed"] = r.seed;
  j["margins"] = detail::summary_json(summarize(r.values()));
  j["worst_instance"] = r.worst_instance;
  j["passed"] = r.passed();
  j["relaxed"] = r.relaxed;
  j["wall_time_ms"] = r.wall_time_ms;
  j["instances"] = r.instances;
  nlohmann::ordered_json fam = nlohmann::ordered_json::object();
  for (const auto& f : r.families()) {
    auto s = detail::summary_json(summarize(r.values(f)));
    s["count"] = r.values(f).size();
    for (const auto& m : r.margins)
      if (m.family == f) {
        s["tolerance"] = m.tol;
        break;
      }
    fam[f] = s;
  }
  j["families"] = fam;
  nlohmann::ordered_json c = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.constants) c[k] = detail::number(v);
  j["constants"] = c;
  j["notes"] = r.notes;
  return j;
}

/// index,family,margin,tolerance with one row per recorded margin.
inline std::string margins_csv(const CheckReport& r) {
  std::string s = "index,family,margin,tolerance\n";
  for (std::size_t i = 0; i < r.margins.size(); ++i) {
    const auto& m = r.margins[i];
    s += std::to_string(i) + "," + m.family + "," + detail::format_exact(m.value) + "," +
         detail::format_exact(m.tol) + "\n";
  }
  return s;
}

}  // namespace tirilman

#endif  // TIRILMAN_REPORT_HPP
