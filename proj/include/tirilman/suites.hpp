#ifndef TIRILMAN_SUITES_HPP
#define TIRILMAN_SUITES_HPP

// Suite ids and dispatch shared by the CLI and the acceptance runner.

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

#include "tirilman/checks.hpp"
#include "tirilman/config.hpp"
#include "tirilman/prop9.hpp"
#include "tirilman/report.hpp"

namespace tirilman {

inline const std::vector<std::string>& suite_ids() {
  static const std::vector<std::string> ids{"prop1",      "prop2",       "prop3",      "lemma4",      "lemma6",
                                            "lemma7",     "prop9",       "oracle-norm", "oracle-dual", "invariance",
                                            "certificate", "flat-law",   "dual-flat"};
  return ids;
}

inline bool is_suite(std::string_view id) {
  const auto& ids = suite_ids();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

inline LabOptions lab_options(const RunConfig& c) {
  LabOptions o;
  o.norm.support_cap = c.support_cap;
  o.dual.support_cap = c.dual_cap;
  o.dual.max_cuts = c.cut_cap;
  return o;
}

/// prop9 with m = 0 splits the trials 50/30/20 over m = 2, 3, 4 (larger m
/// costs more per sample) and merges the reports.
inline CheckReport run_prop9(const SpaceParams& params, const RunConfig& c) {
  const auto opts = lab_options(c);
  const auto pp = prop9_parameters(std::max(c.m, 2), params);
  CheckReport r;
  if (c.m != 0) {
    r = asymptotic_lq_profile(params, c.m, c.eta, c.budget, c.trials, c.seed, opts);
  } else {
    const std::size_t t2 = std::max<std::size_t>(1, c.trials / 2);
    const std::size_t t3 = std::max<std::size_t>(1, c.trials * 3 / 10);
    const std::size_t t4 = std::max<std::size_t>(1, c.trials > t2 + t3 ? c.trials - t2 - t3 : 1);
    r = asymptotic_lq_profile(params, 2, c.eta, c.budget, t2, c.seed, opts);
    r = merge(r, asymptotic_lq_profile(params, 3, c.eta, c.budget, t3, c.seed, opts));
    r = merge(r, asymptotic_lq_profile(params, 4, c.eta, c.budget, t4, c.seed, opts));
    r.constants.erase("m");
    r.notes.push_back("m = 2, 3, 4 with " + std::to_string(t2) + ", " + std::to_string(t3) + ", " +
                      std::to_string(t4) + " samples; theory constants listed are for m = 2");
  }
  r.notes.insert(r.notes.begin(),
                 "relaxed: theory constants need support ~" + detail::format_exact(pp.required_support_estimate) +
                     (pp.M_hint ? "" : " (> 1e9, infeasible)") + "; blocks use eta = " + detail::format_exact(c.eta));
  return r;
}

/// Runs one suite. Throws invalid_input for unknown ids, regime_error where
/// the suite needs gamma < 3^{-1/q}.
inline CheckReport run_suite(std::string_view id, const SpaceParams& params, const RunConfig& c) {
  const auto o = lab_options(c);
  if (id == "prop1") return check_prop1(params, c.trials, c.seed, o);
  if (id == "prop2") return check_prop2(params, c.n, c.trials, c.seed, o);
  if (id == "prop3") return check_prop3(params, c.trials, c.seed, o);
  if (id == "lemma4") return check_lemma4(params, c.trials, c.seed, o);
  if (id == "lemma6") return check_lemma6(params, c.trials, c.seed, o);
  if (id == "lemma7") return check_lemma7(params, c.n, c.trials, c.seed, o);
  if (id == "prop9") return run_prop9(params, c);
  if (id == "oracle-norm") return check_oracle_norm(params, c.trials, c.seed, o);
  if (id == "oracle-dual") return check_oracle_dual(params, c.trials, c.seed, o);
  if (id == "invariance") return check_invariance(params, c.trials, c.seed, o);
  if (id == "certificate") return check_certificate(params, c.trials, c.seed, o);
  if (id == "flat-law") return check_flat_law(params, 64, o);
  if (id == "dual-flat") return check_dual_flat(params, 12, o);
  throw invalid_input("unknown suite '" + std::string(id) + "'");
}

}  // namespace tirilman

#endif  // TIRILMAN_SUITES_HPP
