// tirilman: command-line front end for the norm engines and the check suites.
//
// Exit codes: 0 pass, 1 suite failure, 2 usage / parse / cap, 3 numerical
// non-convergence.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tirilman/cache.hpp"
#include "tirilman/config.hpp"
#include "tirilman/io.hpp"
#include "tirilman/suites.hpp"
#include "tirilman/tirilman.hpp"

namespace fs = std::filesystem;
using namespace tirilman;

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kNoConvergence = 3 };

struct Flags {
  double p = 0, gamma = 0, tol = 0, eta = 0;
  std::uint64_t seed = 0;
  std::size_t trials = 0, n = 0, budget = 0;
  int m = 0;
  std::string config, out;
  std::vector<std::string> formats;
  bool no_cache = false, timing = false;
};

struct Opts {
  CLI::Option *p, *gamma, *seed, *trials, *tol, *out, *format;
  CLI::Option *n = nullptr, *m = nullptr, *eta = nullptr, *budget = nullptr;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw invalid_input("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw invalid_input("cannot write '" + path.string() + "'");
  out << text;
}

FiniteVector load_vector(const std::string& path, Side side) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw invalid_input("cannot open '" + path + "'");
  try {
    return read_vector(in, side);
  } catch (const parse_error& e) {
    throw tirilman::error(path + ": " + e.what());
  }
}

// 12 decimals; the zero vector prints as 0.
std::string fixed12(double x) {
  if (x == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", x);
  return buf;
}

// Defaults < config file < explicit flags.
RunConfig resolve(const Flags& f, const Opts& o) {
  RunConfig c;
  if (!f.config.empty()) {
    std::istringstream in(read_file(f.config));
    try {
      c = read_config(in);
    } catch (const parse_error& e) {
      throw tirilman::error(f.config + ": " + e.what());
    }
  }
  if (o.p->count()) c.p = f.p;
  if (o.gamma->count()) c.gamma = f.gamma;
  if (o.seed->count()) c.seed = f.seed;
  if (o.trials->count()) c.trials = f.trials;
  if (o.tol->count()) c.tol = f.tol;
  if (o.out->count()) c.out = f.out;
  if (o.format->count()) c.formats = f.formats;
  if (o.n && o.n->count()) c.n = f.n;
  if (o.m && o.m->count()) c.m = f.m;
  if (o.eta && o.eta->count()) c.eta = f.eta;
  if (o.budget && o.budget->count()) c.budget = f.budget;
  if (c.out.empty()) {
    const char* env = std::getenv("TIRILMAN_OUT");
    c.out = env && *env ? env : "tirilman-out";
  }
  validate(c);
  return c;
}

ResultCache open_cache(const RunConfig& c, bool disabled) {
  if (disabled) return {};
  fs::create_directories(c.out);
  return ResultCache((fs::path(c.out) / "cache.jsonl").string());
}

std::string params_key(const RunConfig& c, const std::string& extra = {}) {
  return "p=" + detail::format_exact(c.p) + " gamma=" + detail::format_exact(c.gamma) + extra;
}

int cmd_norm(const RunConfig& c, const Flags& f, const std::string& file, const std::string& certify) {
  const auto params = make_space_params(c.p, c.gamma);
  const auto v = load_vector(file, Side::primal);
  NormOptions opts;
  opts.support_cap = c.support_cap;

  auto cache = open_cache(c, f.no_cache);
  const auto key = ResultCache::key("norm", write_vector(v), params_key(c));
  double value;
  std::string cert;
  if (auto hit = cache.lookup(key); hit && hit->contains("value") && hit->contains("certificate")) {
    value = std::strtod((*hit)["value"].get<std::string>().c_str(), nullptr);
    cert = (*hit)["certificate"].get<std::string>();
  } else {
    const auto r = ti_norm(v, params, opts);
    value = r.value;
    cert = r.certificate.serialize();
    cache.store(key, {{"value", detail::format_exact(value)}, {"certificate", cert}});
  }
  std::cout << fixed12(value) << "\n";
  if (!certify.empty()) write_file(certify, cert + "\n");
  return kPass;
}

int cmd_dual(const RunConfig& c, const Flags& f, const std::string& file, const std::string& witness,
             std::size_t max_cuts) {
  const auto params = make_space_params(c.p, c.gamma);
  const auto b = load_vector(file, Side::dual);
  DualOptions opts;
  opts.tol = c.tol;
  opts.support_cap = c.dual_cap;
  opts.max_cuts = max_cuts ? max_cuts : c.cut_cap;

  auto cache = open_cache(c, f.no_cache);
  const auto key = ResultCache::key(
      "dual", write_vector(b),
      params_key(c, " tol=" + detail::format_exact(opts.tol) + " cuts=" + std::to_string(opts.max_cuts)));
  double value, lower;
  bool converged;
  std::size_t facets;
  std::string wtext;
  if (auto hit = cache.lookup(key); hit && hit->contains("witness")) {
    const auto& h = *hit;
    value = std::strtod(h["value"].get<std::string>().c_str(), nullptr);
    lower = std::strtod(h["lower_bound"].get<std::string>().c_str(), nullptr);
    converged = h["converged"].get<bool>();
    facets = h["facets"].get<std::size_t>();
    wtext = h["witness"].get<std::string>();
  } else {
    const auto r = dual_norm(b, params, opts);
    value = r.value;
    lower = r.lower_bound;
    converged = r.converged;
    facets = r.facets_used;
    wtext = write_vector(r.witness);
    cache.store(key, {{"value", detail::format_exact(value)},
                      {"lower_bound", detail::format_exact(lower)},
                      {"converged", converged},
                      {"facets", facets},
                      {"witness", wtext}});
  }
  std::cout << fixed12(value) << "\n";
  std::cout << (converged ? "converged" : "not converged") << " facets=" << facets << " lower_bound=" << fixed12(lower)
            << "\n";
  if (!witness.empty()) write_file(witness, wtext);
  if (!converged) {
    std::cerr << "error: cutting plane did not converge within " << opts.max_cuts
              << " cuts; value is an upper bound, lower_bound is certified\n";
    return kNoConvergence;
  }
  return kPass;
}

// Every internal node must carry gamma k^{-1/q} for its own child count.
bool weights_match(const PartitionTree& t, const SpaceParams& params) {
  if (t.kind() != PartitionTree::Kind::internal) return true;
  const double w = params.split_weight(t.children().size());
  if (std::abs(t.weight() - w) > 4e-16 * w) return false;
  for (const auto& c : t.children())
    if (!weights_match(c, params)) return false;
  return true;
}

int cmd_certify(const RunConfig& c, const std::string& file, const std::string& tree_file,
                const std::string& out_file) {
  const auto params = make_space_params(c.p, c.gamma);
  const auto v = load_vector(file, Side::primal);
  NormOptions opts;
  opts.support_cap = c.support_cap;
  const auto r = ti_norm(v, params, opts);
  if (!tree_file.empty()) {
    // Check a given certificate: a tree's value never exceeds the norm.
    const auto tree = PartitionTree::parse(detail::trim(read_file(tree_file)));
    const double e = evaluate_functional(tree, v);
    const bool weights = weights_match(tree, params);
    const bool sound = weights && e <= r.value * (1.0 + kRelTol);
    std::cout << "norm " << fixed12(r.value) << "\n";
    std::cout << "weights " << (weights ? "match" : "MISMATCH") << "\n";
    std::cout << "evaluation " << fixed12(e) << "\n";
    std::cout << "attains " << (std::abs(e - r.value) <= kRelTol * std::max(1.0, r.value) ? "yes" : "no") << "\n";
    std::cout << "sound " << (sound ? "yes" : "no") << "\n";
    return sound ? kPass : kFail;
  }
  const std::string cert = r.certificate.serialize();
  const double e = evaluate_functional(r.certificate, v);
  std::cout << "norm " << fixed12(r.value) << "\n";
  std::cout << "certificate " << cert << "\n";
  std::cout << "evaluation " << fixed12(e) << "\n";
  std::cout << "levels " << r.levels_used << "\n";
  if (!out_file.empty()) write_file(out_file, cert + "\n");
  return std::abs(e - r.value) <= kRelTol * std::max(1.0, r.value) ? kPass : kFail;
}

void print_prop9_banner(const SpaceParams& params, const RunConfig& c) {
  const auto pp = prop9_parameters(std::max(c.m, 2), params);
  std::cout << "==================== RELAXED MODE ====================\n"
            << "theory constants (m=" << pp.m << "): epsilon=" << detail::format_exact(pp.epsilon)
            << " delta=" << detail::format_exact(pp.delta) << " delta'=" << detail::format_exact(pp.delta_prime_bound)
            << "\nrequired support ~ " << detail::format_exact(pp.required_support_estimate)
            << (pp.M_hint ? "" : "  -> INFEASIBLE at desk scale") << "\nrunning relaxed profile: eta="
            << detail::format_exact(c.eta) << " m=" << (c.m ? std::to_string(c.m) : std::string("2,3,4"))
            << " budget=" << c.budget << "\n"
            << "======================================================\n";
}

void emit_report(const CheckReport& r, const RunConfig& c, const std::string& stem) {
  const fs::path dir(c.out);
  if (c.wants("json")) write_file(dir / (stem + ".json"), to_json(r).dump(2) + "\n");
  if (c.wants("csv")) write_file(dir / (stem + ".csv"), margins_csv(r));
}

std::string summary_line(const CheckReport& r) {
  const auto s = summarize(r.values());
  std::string line = r.suite + ": " + (r.passed() ? "PASS" : "FAIL") + " instances=" + std::to_string(r.instances) +
                     " min_margin=" + detail::format_exact(s.min);
  if (!r.passed()) line += " worst=" + r.worst_instance;
  return line;
}

int cmd_check(const RunConfig& c, const Flags& f, const std::vector<std::string>& requested) {
  const auto params = make_space_params(c.p, c.gamma);
  const auto suites = requested.empty() ? c.suites : requested;
  for (const auto& s : suites)
    if (!is_suite(s)) {
      std::cerr << "error: unknown suite '" << s << "'; known:";
      for (const auto& id : suite_ids()) std::cerr << " " << id;
      std::cerr << "\n";
      return kUsage;
    }
  bool ok = true;
  for (const auto& s : suites) {
    if (s == "prop9") print_prop9_banner(params, c);
    const auto t0 = std::chrono::steady_clock::now();
    auto r = run_suite(s, params, c);
    if (f.timing)
      r.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    emit_report(r, c, s);
    std::cout << summary_line(r) << (r.relaxed ? " [relaxed]" : "") << "\n";
    ok = ok && r.passed();
  }
  return ok ? kPass : kFail;
}

std::vector<double> parse_grid(const std::string& text, const char* what) {
  std::vector<double> g;
  for (const auto& item : detail::split_list(text)) g.push_back(detail::parse_real(item, 0, what));
  return g;
}

int cmd_sweep(RunConfig c, const std::optional<std::string>& p_grid, const std::optional<std::string>& gamma_grid,
              const std::string& suite) {
  if (!is_suite(suite)) {
    std::cerr << "error: unknown suite '" << suite << "'\n";
    return kUsage;
  }
  const auto ps = p_grid ? parse_grid(*p_grid, "p grid value") : std::vector<double>{c.p};
  const auto gs = gamma_grid ? parse_grid(*gamma_grid, "gamma grid value") : std::vector<double>{c.gamma};
  if (ps.empty() || gs.empty()) {
    std::cerr << "error: empty grid\n";
    return kUsage;
  }
  std::vector<SpaceParams> grid;
  for (double p : ps)
    for (double g : gs) grid.push_back(make_space_params(p, g));  // invalid values exit 2 before any run

  std::string csv = "p,q,gamma,strict_regime,status,instances,min_margin,max_margin,mean_margin,passed\n";
  bool ok = true;
  for (const auto& sp : grid) {
    c.p = sp.p();
    c.gamma = sp.gamma();
    std::string row = detail::format_exact(sp.p()) + "," + detail::format_exact(sp.q()) + "," +
                      detail::format_exact(sp.gamma()) + "," + (sp.strict_regime() ? "true" : "false") + ",";
    try {
      const auto r = run_suite(suite, sp, c);
      const auto s = summarize(r.values());
      row += "ran," + std::to_string(r.instances) + "," + detail::format_exact(s.min) + "," +
             detail::format_exact(s.max) + "," + detail::format_exact(s.mean) + "," + (r.passed() ? "true" : "false");
      ok = ok && r.passed();
    } catch (const regime_error&) {
      row += "skipped,0,,,,";
    }
    csv += row + "\n";
  }
  std::cout << csv;
  write_file(fs::path(c.out) / ("sweep_" + suite + ".csv"), csv);
  return ok ? kPass : kFail;
}

int cmd_search_witness(const RunConfig& c, std::size_t n, std::size_t budget) {
  const auto params = make_space_params(c.p, c.gamma);
  const auto w = symmetry_witness_search(params, n, budget, c.seed);
  std::string perm;
  for (std::size_t i = 0; i < w.permutation.size(); ++i) perm += (i ? "," : "") + std::to_string(w.permutation[i]);
  std::cout << "ratio " << detail::format_exact(w.ratio) << "\n";
  std::cout << "evaluations " << w.evaluations << "\n";
  std::cout << "permutation " << perm << "\n";
  std::cout << "vector " << CheckReport::list(w.vector.values()) << "\n";
  std::cout << "(exploratory: no finite witness is claimed)\n";
  nlohmann::ordered_json j;
  j["params"] = {{"p", params.p()}, {"q", params.q()}, {"gamma", params.gamma()}};
  j["n"] = n;
  j["budget"] = budget;
  j["seed"] = c.seed;
  j["ratio"] = w.ratio;
  j["evaluations"] = w.evaluations;
  j["permutation"] = w.permutation;
  j["vector"] = w.vector.values();
  if (c.wants("json")) write_file(fs::path(c.out) / "witness.json", j.dump(2) + "\n");
  return kPass;
}

int cmd_oracle_compare(const RunConfig& c, const Flags& f, const std::string& kind) {
  std::vector<std::string> suites;
  if (kind == "norm" || kind == "both") suites.push_back("oracle-norm");
  if (kind == "dual" || kind == "both") suites.push_back("oracle-dual");
  if (suites.empty()) {
    std::cerr << "error: --kind must be norm, dual or both\n";
    return kUsage;
  }
  return cmd_check(c, f, suites);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Tirilman norms, dual norms by cutting planes, and inequality suites"};
  app.require_subcommand(1);
  app.fallthrough();

  Flags f;
  Opts o{};
  o.p = app.add_option("--p", f.p, "exponent p > 1 (default 2)");
  o.gamma = app.add_option("--gamma", f.gamma, "weight gamma in (0,1) (default 0.5)");
  o.seed = app.add_option("--seed", f.seed, "RNG seed (default 1)");
  o.trials = app.add_option("--trials", f.trials, "trials per suite (default 200)");
  o.tol = app.add_option("--tol", f.tol, "dual cutting-plane tolerance (default 1e-7)");
  app.add_option("--config", f.config, "key=value config file");
  o.out = app.add_option("--out", f.out, "output directory (default $TIRILMAN_OUT or ./tirilman-out)");
  o.format = app.add_option("--format", f.formats, "report formats: json, csv (repeatable)")
                 ->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--no-cache", f.no_cache, "do not read or write the result cache");
  app.add_flag("--timing", f.timing, "record wall_time_ms in reports (breaks byte-identity)");

  std::optional<std::string> p_grid, gamma_grid;
  std::string file, certify, witness, tree_file, out_file, suite = "prop2", kind = "both";
  std::vector<std::string> suites;
  std::size_t max_cuts = 0, wn = 8, wbudget = 2000;

  auto* norm = app.add_subcommand("norm", "print ti_norm of a vector file");
  norm->add_option("file", file, "CSV vector file")->required();
  norm->add_option("--certify", certify, "write the norming tree to this file");

  auto* dual = app.add_subcommand("dual", "print the dual norm of a vector file");
  dual->add_option("file", file, "CSV vector file")->required();
  dual->add_option("--witness", witness, "write the primal witness CSV to this file");
  dual->add_option("--max-cuts", max_cuts, "cut cap (default 10000)");

  auto* cert = app.add_subcommand("certify", "print the norming tree, or check a given one with --tree");
  cert->add_option("file", file, "CSV vector file")->required();
  cert->add_option("--tree", tree_file, "certificate file to evaluate");
  cert->add_option("--out-file", out_file, "write the certificate to this file");

  auto* check = app.add_subcommand("check", "run check suites (default: suites from the config)");
  check->add_option("suite", suites, "suite ids");
  o.n = check->add_option("--n", f.n, "block count for prop2/lemma7 (0: random per trial)");
  o.m = check->add_option("--m", f.m, "prop9 block count (0: m = 2, 3, 4)");
  o.eta = check->add_option("--eta", f.eta, "prop9 sup-norm bound (default 0.05)");
  o.budget = check->add_option("--budget", f.budget, "prop9 per-block support budget (default 128)");

  auto* sweep = app.add_subcommand("sweep", "run one suite over a (p, gamma) grid; CSV to stdout");
  sweep->add_option("--p-grid", p_grid, "comma separated p values");
  sweep->add_option("--gamma-grid", gamma_grid, "comma separated gamma values");
  sweep->add_option("--suite", suite, "suite id (default prop2)");

  auto* search = app.add_subcommand("search-witness", "exploratory permutation search");
  search->add_option("--n", wn, "vector length, at most 12 (default 8)");
  search->add_option("--budget", wbudget, "permuted norms to evaluate (default 2000)");

  auto* oracle = app.add_subcommand("oracle-compare", "DP and cutting plane against brute-force oracles");
  oracle->add_option("--kind", kind, "norm, dual or both (default both)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    const RunConfig c = resolve(f, o);
    if (*norm) return cmd_norm(c, f, file, certify);
    if (*dual) return cmd_dual(c, f, file, witness, max_cuts);
    if (*cert) return cmd_certify(c, file, tree_file, out_file);
    if (*check) return cmd_check(c, f, suites);
    if (*sweep) return cmd_sweep(c, p_grid, gamma_grid, suite);
    if (*search) return cmd_search_witness(c, wn, wbudget);
    if (*oracle) return cmd_oracle_compare(c, f, kind);
  } catch (const numerical_failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNoConvergence;
  } catch (const tirilman::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
