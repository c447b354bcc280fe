// Acceptance runner: one line per criterion, exit 0 iff every line passes.
// Usage: acceptance [seed]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "tirilman/tirilman.hpp"

using namespace tirilman;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  std::function<Outcome()> run;
};

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

const std::vector<SpaceParams>& grid() {
  static const std::vector<SpaceParams> g = [] {
    std::vector<SpaceParams> v;
    for (double p : {1.5, 2.0, 3.0})
      for (double gamma : {0.3, 0.5}) v.push_back(make_space_params(p, gamma));
    return v;
  }();
  return g;
}

// Splits `total` trials over the grid and merges the per-point reports.
template <class Run>
CheckReport over_grid(std::size_t total, Run run) {
  CheckReport all;
  const std::size_t k = grid().size();
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t t = total / k + (i < total % k ? 1 : 0);
    auto r = run(grid()[i], t);
    all = i ? merge(all, r) : r;
  }
  return all;
}

// Every margin of `family` is >= -tol (and the family is nonempty).
bool family_ok(const CheckReport& r, const std::string& family, double tol) {
  const auto v = r.values(family);
  if (v.empty()) return false;
  for (double x : v)
    if (!(x >= -tol)) return false;
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  const std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 20240601;
  const auto sp = make_space_params(2.0, 0.5);

  std::vector<Criterion> criteria;

  criteria.push_back({1, "norm oracle equivalence", 60, [&] {
    const auto r = over_grid(500, [&](const SpaceParams& p, std::size_t t) { return check_oracle_norm(p, t, seed); });
    const bool ok = r.instances == 500 && family_ok(r, "oracle_gap", 1e-9);
    return Outcome{ok, std::to_string(r.instances) + " vectors over 6 (p,gamma), max rel gap " + num(0.0 - r.min_margin())};
  }});

  criteria.push_back({2, "flat law n <= 64", 10, [&] {
    bool ok = true;
    double worst = 0;
    for (const auto& p : grid()) {
      const auto r = check_flat_law(p, 64);
      ok = ok && r.instances == 64 && family_ok(r, "law", 1e-9) && family_ok(r, "oracle", 1e-9);
      worst = std::max(worst, 0.0 - r.min_margin());
    }
    return Outcome{ok, "6 x 64 flat vectors, oracle for n <= 7, max abs gap " + num(worst)};
  }});

  criteria.push_back({3, "dual oracle equivalence", 300, [&] {
    const auto r = over_grid(200, [&](const SpaceParams& p, std::size_t t) { return check_oracle_dual(p, t, seed); });
    const bool ok = r.instances == 200 && family_ok(r, "oracle_gap", 1e-7);
    return Outcome{ok, std::to_string(r.instances) + " dual vectors over 6 (p,gamma), max rel gap " + num(0.0 - r.min_margin())};
  }});

  criteria.push_back({4, "dual flat law n <= 12, tight at n = 9", 60, [&] {
    const auto r = check_dual_flat(sp, 12);
    const auto nine = dual_norm(FiniteVector::ones(9, Side::dual), sp);
    const bool ok = r.instances == 12 && family_ok(r, "law", 1e-6) && nine.converged && std::abs(nine.value - 6.0) <= 1e-6;
    return Outcome{ok, "max gap " + num(0.0 - r.min_margin()) + ", n=9 value " + detail::format_exact(nine.value)};
  }});

  criteria.push_back({5, "Prop 2(i) two-sided block estimate", 120, [&] {
    const auto r = check_prop2(sp, 0, 200, seed);
    const bool ok = r.instances >= 200 && family_ok(r, "lower", 1e-9) && family_ok(r, "upper", 1e-9);
    return Outcome{ok, std::to_string(r.instances) + " instances, min lower " + num(r.min_margin("lower")) +
                           ", min upper " + num(r.min_margin("upper"))};
  }});

  criteria.push_back({6, "Prop 3 upper l_p estimate", 120, [&] {
    const auto r = check_prop3(sp, 200, seed);
    const bool ok = r.instances >= 200 && family_ok(r, "upper", 1e-9);
    return Outcome{ok, std::to_string(r.instances) + " instances, min margin " + num(r.min_margin())};
  }});

  criteria.push_back({7, "Prop 1 / Lemma 6 domination with K = 1", 180, [&] {
    const auto p1 = check_prop1(sp, 200, seed);
    const auto l6 = check_lemma6(sp, 200, seed);
    const double rmin = p1.constants.at("min_ratio_blocks_over_canonical");
    const double kmax = l6.constants.at("K_lower_blocks_over_canonical");
    const bool ok = p1.instances >= 200 && l6.instances >= 200 && family_ok(p1, "domination", 1e-9) &&
                    rmin >= 1 - 1e-9 && family_ok(l6, "domination", 1e-6) && kmax <= 1 + 1e-6;
    return Outcome{ok, "primal min ratio " + detail::format_exact(rmin) + ", dual max ratio " + detail::format_exact(kmax)};
  }});

  criteria.push_back({8, "Lemma 4 / Lemma 7 dual estimates", 180, [&] {
    const auto l4 = check_lemma4(sp, 100, seed);
    const auto l7 = check_lemma7(sp, 0, 100, seed);
    const bool ok = l4.instances >= 100 && l7.instances >= 100 && family_ok(l4, "lower_lq", 1e-6) &&
                    family_ok(l7, "upper_flat", 1e-6);
    return Outcome{ok, "min lower-l_q " + num(l4.min_margin()) + ", min n^{1/q}/gamma " + num(l7.min_margin())};
  }});

  criteria.push_back({9, "sign, spreading and monotonicity invariance", 120, [&] {
    const auto r = check_invariance(sp, 500, seed);
    const std::size_t mono = r.values("monotone").size();
    const bool ok = r.instances == 500 && family_ok(r, "sign_flip", 1e-12) && family_ok(r, "spread", 1e-12) &&
                    family_ok(r, "monotone", 1e-12) && mono > 0;
    return Outcome{ok, "500 vectors, " + std::to_string(mono) + " zeroings over 100 of them, min margin " +
                           num(r.min_margin())};
  }});

  criteria.push_back({10, "certificates reproduce and lie in the dual ball", 300, [&] {
    const auto r = check_certificate(sp, 200, seed);
    const bool ok = r.instances == 200 && family_ok(r, "reproduce", 1e-12) && family_ok(r, "dual_ball", 1e-6);
    return Outcome{ok, "max rel reproduce gap " + num(0.0 - r.min_margin("reproduce")) + ", max dual norm of c(T) " +
                           detail::format_exact(1 - r.min_margin("dual_ball"))};
  }});

  criteria.push_back({11, "Prop 9 disclosure and relaxed sandwich", 240, [&] {
    const auto pp = prop9_parameters(2, sp);
    RunConfig c;
    c.trials = 100;
    c.seed = seed;
    c.eta = 0.05;
    const auto r = run_prop9(sp, c);
    const bool ok = pp.required_support_estimate > 1e12 && !pp.M_hint && r.relaxed && r.instances >= 100 &&
                    family_ok(r, "lower", 1e-6) && family_ok(r, "upper", 1e-6);
    return Outcome{ok, "required support " + num(pp.required_support_estimate) + " (infeasible); relaxed eta=0.05, m=2..4, " +
                           std::to_string(r.instances) + " samples, min lower " + num(r.min_margin("lower")) +
                           ", min upper " + num(r.min_margin("upper")) + (r.passed() ? "" : " (a big/small-coefficient family failed)")};
  }});

  criteria.push_back({12, "byte-identical reports on rerun", 120, [&] {
    RunConfig c;
    c.seed = seed;
    std::size_t same = 0;
    std::string differs;
    for (const auto& id : suite_ids()) {
      c.trials = id == "prop9" ? 6 : 20;
      const auto a = to_json(run_suite(id, sp, c)).dump(2);
      const auto b = to_json(run_suite(id, sp, c)).dump(2);
      if (a == b)
        ++same;
      else
        differs += " " + id;
    }
    return Outcome{differs.empty(), std::to_string(same) + "/" + std::to_string(suite_ids().size()) + " suites identical" +
                                        (differs.empty() ? "" : "; differ:" + differs)};
  }});

  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = s < c.limit_s;
    const bool ok = o.ok && in_time;
    failed += ok ? 0 : 1;
    std::printf("[%s] %2d %s: %s; %.2f s (limit %.0f s)%s\n", ok ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), s,
                c.limit_s, in_time ? "" : " TIME LIMIT EXCEEDED");
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
