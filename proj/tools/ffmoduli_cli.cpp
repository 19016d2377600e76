////////////////////////////////////////////////////////////////////////////////
// ffmoduli — batch command surface.
//
// One subcommand per laboratory operation; every run emits a single ordered
// JSON artifact (stdout by default, --out FILE otherwise) that embeds the
// schema version, library version, field, parameters, and seed, so results
// are reproducible byte-for-byte from the command line that made them (the
// timestamp field excepted).  Exit status: 0 when every assertion in the
// command passed, 1 when a check failed or an error occurred (the failing
// check or error is serialized in the artifact), 2 for usage problems.
//
// Budgets: --budget-box / --budget-grid cap the enumeration sizes; the
// environment variable FFMODULI_BUDGET_OVERRIDE (a decimal integer) overrides
// both.  Work above the cap refuses to start rather than running for hours.
////////////////////////////////////////////////////////////////////////////////

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <ffmoduli/acceptance.hpp>
#include <ffmoduli/json_io.hpp>

namespace {

using namespace ffmoduli;

struct Common {
  std::string config;
  int e = 1;
  std::string strategy = "auto";
  unsigned threads = 0;
  std::uint64_t seed = 1;
  std::string budget_box;
  std::string budget_grid;
  std::string out;
};

Budget make_budget(const Common& c) {
  const BigInt box =
      c.budget_box.empty() ? BigInt(Budget::kDefault) : BigInt(c.budget_box);
  const BigInt grid =
      c.budget_grid.empty() ? BigInt(Budget::kDefault) : BigInt(c.budget_grid);
  return Budget(box, grid);
}

CountStrategy parse_strategy(const std::string& s) {
  if (s == "auto") return CountStrategy::kAuto;
  if (s == "naive") return CountStrategy::kNaive;
  if (s == "root-first") return CountStrategy::kRootFirst;
  if (s == "quadric-solve") return CountStrategy::kQuadricSolve;
  throw ParameterContract("unknown strategy '" + s +
                          "' (want auto, naive, root-first, quadric-solve)");
}

void add_budget_opts(CLI::App* cmd, Common& c) {
  cmd->add_option("--budget-box", c.budget_box,
                  "box enumeration cap (decimal big integer)");
  cmd->add_option("--budget-grid", c.budget_grid,
                  "grid enumeration cap (decimal big integer)");
}

void add_output_opts(CLI::App* cmd, Common& c) {
  cmd->add_option("--threads", c.threads, "worker threads (0 = auto)");
  cmd->add_option("--seed", c.seed, "seed recorded in the artifact");
  cmd->add_option("--out", c.out, "output file (default: stdout)");
}

void add_config_opt(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config, "hypersurface config JSON file")
      ->required();
}

Json start_artifact(const char* command, const Common& c) {
  Json j = output_envelope(command);
  j["seed"] = c.seed;
  j["threads"] = c.threads;
  return j;
}

// Run `body` (which fills the artifact and returns the exit code); on an
// exception, serialize it into the artifact and fail.
template <typename Fn>
int guarded(Json& artifact, const std::string& out, Fn&& body) {
  try {
    const int rc = body();
    write_output(artifact, out);
    return rc;
  } catch (const std::exception& ex) {
    artifact["error"] = ex.what();
    try {
      write_output(artifact, out);
    } catch (const std::exception&) {
      std::fprintf(stderr, "%s\n", ex.what());
    }
    return 1;
  }
}

//////////////////////////////////////////////////////////////////////
// Subcommand bodies.
//////////////////////////////////////////////////////////////////////

int cmd_count_n(const Common& c) {
  Json j = start_artifact("count-n", c);
  return guarded(j, c.out, [&] {
    const LoadedConfig lc = load_config(c.config);
    const Field F = field_of(lc);
    embed_field(j, F);
    j["parameters"] = {{"config", lc.path}, {"e", c.e}, {"strategy", c.strategy}};
    const CountResult r = count_N(F, lc.f, c.e, parse_strategy(c.strategy),
                                  c.threads, make_budget(c));
    j["result"] = json_of(r);
    return 0;
  });
}

int cmd_circle_exact(const Common& c) {
  Json j = start_artifact("circle-exact", c);
  return guarded(j, c.out, [&] {
    const LoadedConfig lc = load_config(c.config);
    const Field F = field_of(lc);
    embed_field(j, F);
    j["parameters"] = {{"config", lc.path}, {"e", c.e}, {"strategy", c.strategy}};
    const Budget budget = make_budget(c);
    const CountResult count =
        count_N(F, lc.f, c.e, parse_strategy(c.strategy), c.threads, budget);
    const IntegralResult integral =
        exact_integral_N(F, lc.f, c.e, c.threads, budget);
    const bool match = count.N == integral.N;
    Json res;
    res["N_count"] = json_bigint(count.N);
    res["N_integral"] = json_bigint(integral.N);
    res["match"] = match;
    res["count"] = json_of(count);
    res["integral"] = json_of(integral);
    j["result"] = res;
    return match ? 0 : 1;
  });
}

int cmd_verify_decomposition(const Common& c, int trials, bool full_box) {
  Json j = start_artifact("verify-decomposition", c);
  return guarded(j, c.out, [&] {
    const LoadedConfig lc = load_config(c.config);
    const Field F = field_of(lc);
    embed_field(j, F);
    j["parameters"] = {{"config", lc.path},
                       {"e", c.e},
                       {"trials", trials},
                       {"full_box", full_box}};
    const Budget budget = make_budget(c);
    const FSystem sys(F, lc.f, c.e);
    Rng rng(c.seed);
    long long failures = 0, done = 0;
    for (int it = 0; it < trials; ++it) {
      const SlotVec t = sys.random_slots(F, rng);
      done += 1;
      if (!decomposition_check(F, sys, t).pass) failures += 1;
    }
    BigInt box_points = 0;
    if (full_box) {
      const BigInt box = bigint_pow(
          BigInt(F.q()), std::uint64_t(box_dim(lc.f.n(), c.e)));
      budget.check_box(box, "verify-decomposition full box");
      const std::uint64_t total = bigint_to_u64(box);
      SlotVec t;
      for (std::uint64_t idx = 0; idx < total; ++idx) {
        ffmoduli::detail::decode_box_point(F, idx, lc.f.n(), c.e, t);
        done += 1;
        if (!decomposition_check(F, sys, t).pass) failures += 1;
      }
      box_points = box;
    }
    Json res;
    res["instances"] = done;
    res["full_box_points"] = json_bigint(box_points);
    res["failures"] = failures;
    res["pass"] = failures == 0;
    j["result"] = res;
    return failures == 0 ? 0 : 1;
  });
}

int cmd_weyl(const Common& c, std::uint32_t p, int trials, unsigned max_deg) {
  Json j = start_artifact("weyl-identities", c);
  return guarded(j, c.out, [&] {
    const Field F(p);
    embed_field(j, F);
    j["parameters"] = {{"p", p}, {"trials", trials}, {"max_deg", max_deg}};
    Rng rng(c.seed);
    Rng r1 = rng.fork();
    Rng r2 = rng.fork();
    const WeylBatteryReport zero = weyl_zero_battery(F, r1, trials, max_deg);
    const WeylBatteryReport diag = weyl_diagonal_battery(p, r2, trials, max_deg);
    Json res;
    res["zero_identity"] = json_of(zero);
    res["diagonal_identity"] = json_of(diag);
    res["pass"] = zero.all_pass() && diag.all_pass();
    j["result"] = res;
    return res["pass"].get<bool>() ? 0 : 1;
  });
}

int cmd_decouple(const Common& c) {
  Json j = start_artifact("decouple", c);
  return guarded(j, c.out, [&] {
    const LoadedConfig lc = load_config(c.config);
    const Field F = field_of(lc);
    embed_field(j, F);
    j["parameters"] = {{"config", lc.path}, {"e", c.e}};
    const SweepReport r =
        decouple_grid_sweep(F, lc.f, c.e, c.threads, make_budget(c));
    j["result"] = json_of(r);
    return r.all_pass ? 0 : 1;
  });
}

int cmd_lemma_t(const Common& c, int outer_reps) {
  Json j = start_artifact("lemma-t-bound", c);
  return guarded(j, c.out, [&] {
    const LoadedConfig lc = load_config(c.config);
    const Field F = field_of(lc);
    embed_field(j, F);
    j["parameters"] = {{"config", lc.path}, {"e", c.e}, {"outer_reps", outer_reps}};
    Rng rng(c.seed);
    const SweepReport r = lemma_T_grid_sweep(F, lc.f, c.e, rng, outer_reps,
                                             c.threads, make_budget(c));
    j["result"] = json_of(r);
    return r.all_pass ? 0 : 1;
  });
}

int cmd_n_counts(const Common& c, int jj, std::uint64_t alpha_index, int level) {
  Json j = start_artifact("n-counts", c);
  return guarded(j, c.out, [&] {
    const LoadedConfig lc = load_config(c.config);
    const Field F = field_of(lc);
    embed_field(j, F);
    const Budget budget = make_budget(c);
    const FSystem sys(F, lc.f, c.e);
    if (jj < 0 || jj >= sys.j_count())
      throw ParameterContract("n-counts: j out of range for this system");
    const BidegreeBlock b = bidegree_block(lc.f.d(), c.e, jj);
    int J = level;
    if (J < 1) {
      for (J = 1; J <= 256; ++J) {
        const ArcParams trial = ArcParams::for_block(b, J);
        if (trial.Q1() <= 0 && trial.Q2() <= 0) break;
      }
    }
    const ArcParams ap = ArcParams::for_block(b, J);
    j["parameters"] = {{"config", lc.path}, {"e", c.e},     {"j", jj},
                       {"level", J},        {"Q1", ap.Q1()}, {"Q2", ap.Q2()},
                       {"alpha_index", alpha_index}};
    const std::uint64_t comp =
        bigint_to_u64(bigint_pow(BigInt(F.q()), unsigned(jj) + 1));
    if (alpha_index >= comp)
      throw ParameterContract("n-counts: alpha index beyond the component grid");
    const LaurentNum alpha = grid_alpha(F, jj, alpha_index);
    const BidegreeForm G(sys.tensor(), b, lc.f.n());
    const CountInequality r =
        n_counts_inequality(F, G, ap, alpha, c.threads, budget);
    j["result"] = json_of(r);
    return r.pass ? 0 : 1;
  });
}

int cmd_shrink(const Common& c, std::uint32_t p, int trials) {
  Json j = start_artifact("shrink", c);
  return guarded(j, c.out, [&] {
    const Field F(p);
    embed_field(j, F);
    j["parameters"] = {{"p", p}, {"trials", trials}};
    Rng rng(c.seed);
    const ShrinkBatteryReport r = shrink_battery(F, rng, trials, 20000,
                                                 make_budget(c));
    j["result"] = json_of(r);
    return r.all_pass() ? 0 : 1;
  });
}

int cmd_approx(const Common& c, std::uint32_t p, unsigned k, int m, int trials,
               int depth) {
  Json j = start_artifact("approx", c);
  return guarded(j, c.out, [&] {
    const Field F = k == 1 ? Field(p) : Field::extension(p, k);
    embed_field(j, F);
    if (m < 0) throw ParameterContract("approx: m must be >= 0");
    if (depth <= 0) depth = 2 * m + 1;
    j["parameters"] = {{"m", m}, {"trials", trials}, {"depth", depth}};
    Rng rng(c.seed);
    Json rows = Json::array();
    long long failures = 0;
    for (int it = 0; it < trials; ++it) {
      const LaurentNum alpha =
          ffmoduli::detail::random_exact_torus(F, rng, depth);
      const RationalApprox ra = rational_approx(F, alpha, m);
      const bool monic = !ra.g.empty() && plead(ra.g) == F.one();
      const bool degree_ok = pdeg(ra.g) <= Ord(m);
      const bool small = ra.residual.abs_less_than(-m);
      const bool coprime =
          ra.a.empty() || pgcd_monic(F, ra.a, ra.g) == Poly{F.one()};
      const bool pass = monic && degree_ok && small && coprime;
      if (!pass) failures += 1;
      Json row;
      row["alpha"] = alpha.str(F);
      row["approx"] = json_of(F, ra);
      row["pass"] = pass;
      rows.push_back(row);
    }
    Json res;
    res["rows"] = rows;
    res["failures"] = failures;
    res["pass"] = failures == 0;
    j["result"] = res;
    return failures == 0 ? 0 : 1;
  });
}

int cmd_major_arc(const Common& c, std::uint32_t p, unsigned k, unsigned d,
                  int jj, int level, long long digits) {
  Json j = start_artifact("major-arc", c);
  return guarded(j, c.out, [&] {
    const Field F = k == 1 ? Field(p) : Field::extension(p, k);
    embed_field(j, F);
    const BidegreeBlock b = bidegree_block(d, c.e, jj);
    const ArcParams ap = ArcParams::for_block(b, level);
    const long long cap = arc_degree_cap(ap);
    const long long thr = arc_threshold(ap);
    if (digits <= 0) digits = std::max<long long>(1, cap - thr);
    j["parameters"] = {{"d", d},          {"e", c.e},
                       {"j", jj},         {"level", level},
                       {"digits", digits}, {"degree_cap", cap},
                       {"threshold", thr}, {"covering_level", dirichlet_threshold(ap)}};
    const ArcGridSweep r = major_arc_grid_sweep(F, ap, digits, make_budget(c));
    j["result"] = json_of(r);
    return 0;
  });
}

int cmd_dichotomy(const Common& c, int jj, int level) {
  Json j = start_artifact("dichotomy", c);
  return guarded(j, c.out, [&] {
    const LoadedConfig lc = load_config(c.config);
    const Field F = field_of(lc);
    embed_field(j, F);
    const Budget budget = make_budget(c);
    const FSystem sys(F, lc.f, c.e);
    if (jj < 0 || jj >= sys.j_count())
      throw ParameterContract("dichotomy: j out of range for this system");
    const BidegreeBlock b = bidegree_block(lc.f.d(), c.e, jj);
    const ArcParams ap = ArcParams::for_block(b, level);
    j["parameters"] = {{"config", lc.path}, {"e", c.e},      {"j", jj},
                       {"level", level},    {"d1", ap.d1},   {"d2", ap.d2},
                       {"P1", ap.P1},       {"P2", ap.P2}};
    const SigmaReport sig = sigma_estimate(F, lc.f, c.e, jj, 2, budget);
    const BidegreeForm G(sys.tensor(), b, lc.f.n());
    const DichotomySweep r =
        dichotomy_grid_sweep(F, G, ap, sig, c.threads, budget);
    Json res = json_of(r);
    res["sigma"] = json_of(sig);
    res["pass"] = r.bound_only + r.arc_only + r.both == r.cells;
    j["result"] = res;
    return res["pass"].get<bool>() ? 0 : 1;
  });
}

int cmd_sigma(const Common& c, int jj, int m_max) {
  Json j = start_artifact("sigma", c);
  return guarded(j, c.out, [&] {
    const LoadedConfig lc = load_config(c.config);
    const Field F = field_of(lc);
    embed_field(j, F);
    j["parameters"] = {{"config", lc.path}, {"e", c.e}, {"j", jj},
                       {"m_max", m_max}};
    const SigmaReport r = sigma_estimate(F, lc.f, c.e, jj, m_max,
                                         make_budget(c));
    j["result"] = json_of(r);
    return 0;
  });
}

int cmd_mean_value(const Common& c, int jj, double rho) {
  Json j = start_artifact("mean-value", c);
  return guarded(j, c.out, [&] {
    const LoadedConfig lc = load_config(c.config);
    const Field F = field_of(lc);
    embed_field(j, F);
    const Budget budget = make_budget(c);
    const FSystem sys(F, lc.f, c.e);
    if (jj < 0 || jj >= sys.j_count())
      throw ParameterContract("mean-value: j out of range for this system");
    const BidegreeBlock b = bidegree_block(lc.f.d(), c.e, jj);
    const ArcParams ap = ArcParams::for_block(b, 1);
    j["parameters"] = {{"config", lc.path}, {"e", c.e}, {"j", jj},
                       {"rho", rho}};
    const SigmaReport sig = sigma_estimate(F, lc.f, c.e, jj, 2, budget);
    const BidegreeForm G(sys.tensor(), b, lc.f.n());
    const ShellIntegralReport r = arc_shell_integral(
        F, G, ap, (long double)(rho), sig, c.threads, budget);
    Json res = json_of(r);
    res["sigma_report"] = json_of(sig);
    j["result"] = res;
    // The bounds are assertions only when the full hypotheses hold.
    return (r.hypotheses_ok && !r.all_pass) ? 1 : 0;
  });
}

int cmd_smallchar(const Common& c, int e, std::uint32_t p, std::uint64_t d,
                  const std::string& budget_symbolic) {
  Json j = start_artifact("smallchar", c);
  return guarded(j, c.out, [&] {
    const BigInt sym = budget_symbolic.empty() ? BigInt(Budget::kDefault)
                                               : BigInt(budget_symbolic);
    const BigInt grid = c.budget_grid.empty() ? BigInt(Budget::kDefault)
                                              : BigInt(c.budget_grid);
    const Budget budget(sym, grid);
    j["parameters"] = {{"e", e}, {"p", p}};
    if (d > 0) j["parameters"]["d_override"] = d;
    const SmallCharReport r =
        d > 0 ? fermat_smallchar_check_explicit(d, e, p, budget)
              : fermat_smallchar_check(e, p, budget);
    j["result"] = json_of(r);
    return 0;
  });
}

int cmd_ratio_report(const Common& c, const std::string& config_dir) {
  Json j = start_artifact("ratio-report", c);
  return guarded(j, c.out, [&] {
    namespace fs = std::filesystem;
    std::vector<std::string> paths;
    for (const auto& entry : fs::directory_iterator(config_dir))
      if (entry.is_regular_file() && entry.path().extension() == ".json")
        paths.push_back(entry.path().string());
    std::sort(paths.begin(), paths.end());
    if (paths.empty())
      throw ParameterContract("ratio-report: no .json configs in '" +
                              config_dir + "'");
    j["parameters"] = {{"config_dir", config_dir}, {"e", c.e},
                       {"strategy", c.strategy}};
    const Budget budget = make_budget(c);
    Json rows = Json::array();
    for (const std::string& path : paths) {
      const LoadedConfig lc = load_config(path);
      const Field F = field_of(lc);
      const CountResult r = count_N(F, lc.f, c.e, parse_strategy(c.strategy),
                                    c.threads, budget);
      Json row;
      row["config"] = path;
      row["q"] = F.q();
      row["N"] = json_bigint(r.N);
      row["muhat"] = r.muhat;
      row["q_pow_muhat"] = json_bigrat(power_ratio(BigInt(1), F.q(), -r.muhat));
      row["ratio"] = json_bigrat(r.ratio);
      rows.push_back(row);
    }
    // Trend rows are observational; nothing here is asserted.
    j["result"] = {{"rows", rows}};
    return 0;
  });
}

int cmd_acceptance(const Common& c) {
  Json j = start_artifact("acceptance", c);
  return guarded(j, c.out, [&] {
    AcceptanceOptions opt;
    opt.threads = c.threads;
    opt.seed = c.seed;
    opt.budget = make_budget(c);
    const std::vector<CriterionResult> rows = run_acceptance(opt);
    Json arr = Json::array();
    for (const CriterionResult& r : rows) {
      Json row;
      row["index"] = r.index;
      row["name"] = r.name;
      row["pass"] = r.pass;
      row["seconds"] = r.seconds;
      row["detail"] = r.detail;
      arr.push_back(row);
    }
    const bool all = acceptance_all_pass(rows);
    j["result"] = {{"criteria", arr}, {"all_pass", all}};
    return all ? 0 : 1;
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "ffmoduli: exact-arithmetic laboratory for counting degree-e maps "
      "from the projective plane to a hypersurface over F_q"};
  app.require_subcommand(1);
  int rc = 0;

  Common c_count, c_circle, c_dec, c_weyl, c_dcp, c_lt, c_nc, c_shr, c_apx,
      c_arc, c_dich, c_sig, c_mv, c_sc, c_rr, c_acc;

  // count-n
  {
    auto* cmd = app.add_subcommand("count-n",
                                   "exact solution count over the slot box");
    add_config_opt(cmd, c_count);
    cmd->add_option("--e", c_count.e, "substitution degree e");
    cmd->add_option("--strategy", c_count.strategy,
                    "auto | naive | root-first | quadric-solve");
    add_budget_opts(cmd, c_count);
    add_output_opts(cmd, c_count);
    cmd->callback([&] { rc = cmd_count_n(c_count); });
  }
  // circle-exact
  {
    auto* cmd = app.add_subcommand(
        "circle-exact",
        "solution count two ways: box enumeration vs character-grid integral");
    add_config_opt(cmd, c_circle);
    cmd->add_option("--e", c_circle.e, "substitution degree e");
    cmd->add_option("--strategy", c_circle.strategy,
                    "enumeration strategy for the counting route");
    add_budget_opts(cmd, c_circle);
    add_output_opts(cmd, c_circle);
    cmd->callback([&] { rc = cmd_circle_exact(c_circle); });
  }
  // verify-decomposition
  {
    static int trials = 100;
    static bool full_box = false;
    auto* cmd = app.add_subcommand(
        "verify-decomposition",
        "coefficient-form decomposition identity on random substitutions");
    add_config_opt(cmd, c_dec);
    cmd->add_option("--e", c_dec.e, "substitution degree e");
    cmd->add_option("--trials", trials, "random substitution tuples");
    cmd->add_flag("--full-box", full_box,
                  "also sweep every substitution tuple (budgeted)");
    add_budget_opts(cmd, c_dec);
    add_output_opts(cmd, c_dec);
    cmd->callback(
        [&] { rc = cmd_verify_decomposition(c_dec, trials, full_box); });
  }
  // weyl-identities
  {
    static std::uint32_t p = 5;
    static int trials = 100;
    static unsigned max_deg = 4;
    auto* cmd = app.add_subcommand(
        "weyl-identities",
        "differencing annihilation and diagonal factorial identities");
    cmd->add_option("--p", p, "prime field characteristic");
    cmd->add_option("--trials", trials, "random instances per identity");
    cmd->add_option("--max-deg", max_deg, "largest polynomial degree");
    add_output_opts(cmd, c_weyl);
    cmd->callback([&] { rc = cmd_weyl(c_weyl, p, trials, max_deg); });
  }
  // decouple
  {
    auto* cmd = app.add_subcommand(
        "decouple", "product bound for |S| over the entire character grid");
    add_config_opt(cmd, c_dcp);
    cmd->add_option("--e", c_dcp.e, "substitution degree e");
    add_budget_opts(cmd, c_dcp);
    add_output_opts(cmd, c_dcp);
    cmd->callback([&] { rc = cmd_decouple(c_dcp); });
  }
  // lemma-t-bound
  {
    static int outer_reps = 2;
    auto* cmd = app.add_subcommand(
        "lemma-t-bound",
        "per-block inner-sum bound over every component value");
    add_config_opt(cmd, c_lt);
    cmd->add_option("--e", c_lt.e, "substitution degree e");
    cmd->add_option("--outer-reps", outer_reps,
                    "random outer-slot freezes per component value");
    add_budget_opts(cmd, c_lt);
    add_output_opts(cmd, c_lt);
    cmd->callback([&] { rc = cmd_lemma_t(c_lt, outer_reps); });
  }
  // n-counts
  {
    static int jj = 1;
    static std::uint64_t alpha_index = 0;
    static int level = 0;
    auto* cmd = app.add_subcommand(
        "n-counts", "auxiliary lattice point counts and their inequality");
    add_config_opt(cmd, c_nc);
    cmd->add_option("--e", c_nc.e, "substitution degree e");
    cmd->add_option("--j", jj, "block index");
    cmd->add_option("--alpha-index", alpha_index,
                    "index into the component character grid");
    cmd->add_option("--level", level,
                    "arc level J (0 = smallest admissible)");
    add_budget_opts(cmd, c_nc);
    add_output_opts(cmd, c_nc);
    cmd->callback([&] { rc = cmd_n_counts(c_nc, jj, alpha_index, level); });
  }
  // shrink
  {
    static std::uint32_t p = 3;
    static int trials = 100;
    auto* cmd = app.add_subcommand(
        "shrink", "box-shrinking inequality on random symmetric systems");
    cmd->add_option("--p", p, "prime field characteristic");
    cmd->add_option("--trials", trials, "random systems");
    add_budget_opts(cmd, c_shr);
    add_output_opts(cmd, c_shr);
    cmd->callback([&] { rc = cmd_shrink(c_shr, p, trials); });
  }
  // approx
  {
    static std::uint32_t p = 3;
    static unsigned k = 1;
    static int m = 2;
    static int trials = 1;
    static int depth = 0;
    auto* cmd = app.add_subcommand(
        "approx", "best rational approximation with bounded denominator");
    cmd->add_option("--p", p, "prime field characteristic");
    cmd->add_option("--k", k, "field extension degree");
    cmd->add_option("--m", m, "denominator degree cap");
    cmd->add_option("--trials", trials, "random torus points");
    cmd->add_option("--depth", depth,
                    "digits of each random point (default 2m+1)");
    add_output_opts(cmd, c_apx);
    cmd->callback([&] { rc = cmd_approx(c_apx, p, k, m, trials, depth); });
  }
  // major-arc
  {
    static std::uint32_t p = 3;
    static unsigned k = 1;
    static unsigned d = 2;
    static int jj = 1;
    static int level = 1;
    static long long digits = 0;
    auto* cmd = app.add_subcommand(
        "major-arc", "membership sweep for the low-height approximation set");
    cmd->add_option("--p", p, "prime field characteristic");
    cmd->add_option("--k", k, "field extension degree");
    cmd->add_option("--d", d, "form degree");
    cmd->add_option("--e", c_arc.e, "substitution degree e");
    cmd->add_option("--j", jj, "block index");
    cmd->add_option("--level", level, "arc level J");
    cmd->add_option("--digits", digits,
                    "grid depth (default: one precision cell)");
    add_budget_opts(cmd, c_arc);
    add_output_opts(cmd, c_arc);
    cmd->callback(
        [&] { rc = cmd_major_arc(c_arc, p, k, d, jj, level, digits); });
  }
  // dichotomy
  {
    static int jj = 1;
    static int level = 1;
    auto* cmd = app.add_subcommand(
        "dichotomy",
        "decay-or-approximation split over the full precision-cell grid");
    add_config_opt(cmd, c_dich);
    cmd->add_option("--e", c_dich.e, "substitution degree e");
    cmd->add_option("--j", jj, "block index");
    cmd->add_option("--level", level, "arc level J");
    add_budget_opts(cmd, c_dich);
    add_output_opts(cmd, c_dich);
    cmd->callback([&] { rc = cmd_dichotomy(c_dich, jj, level); });
  }
  // sigma
  {
    static int jj = 1;
    static int m_max = 2;
    auto* cmd = app.add_subcommand(
        "sigma", "critical-variety codimension of one bidegree block");
    add_config_opt(cmd, c_sig);
    cmd->add_option("--e", c_sig.e, "substitution degree e");
    cmd->add_option("--j", jj, "block index");
    cmd->add_option("--m-max", m_max, "extension degrees to scan");
    add_budget_opts(cmd, c_sig);
    add_output_opts(cmd, c_sig);
    cmd->callback([&] { rc = cmd_sigma(c_sig, jj, m_max); });
  }
  // mean-value
  {
    static int jj = 1;
    static double rho = 2.0;
    auto* cmd = app.add_subcommand(
        "mean-value",
        "moment of |E| over arc shells against the decay bounds");
    add_config_opt(cmd, c_mv);
    cmd->add_option("--e", c_mv.e, "substitution degree e");
    cmd->add_option("--j", jj, "block index");
    cmd->add_option("--rho", rho, "moment exponent");
    add_budget_opts(cmd, c_mv);
    add_output_opts(cmd, c_mv);
    cmd->callback([&] { rc = cmd_mean_value(c_mv, jj, rho); });
  }
  // smallchar
  {
    static int e = 1;
    static std::uint32_t p = 2;
    static std::uint64_t d = 0;
    static std::string budget_symbolic;
    auto* cmd = app.add_subcommand(
        "smallchar",
        "vanishing of the next coefficient form at the distinguished degree");
    cmd->add_option("--e", e, "substitution degree e");
    cmd->add_option("--p", p, "characteristic");
    cmd->add_option("--d", d, "explicit degree override (0 = distinguished)");
    cmd->add_option("--budget-symbolic", budget_symbolic,
                    "symbolic workspace cap (decimal big integer)");
    cmd->add_option("--budget-grid", c_sc.budget_grid,
                    "grid enumeration cap (unused here, kept uniform)");
    add_output_opts(cmd, c_sc);
    cmd->callback([&] { rc = cmd_smallchar(c_sc, e, p, d, budget_symbolic); });
  }
  // ratio-report
  {
    static std::string config_dir;
    auto* cmd = app.add_subcommand(
        "ratio-report",
        "count vs heuristic power across a directory of field configs");
    cmd->add_option("--config-dir", config_dir, "directory of config JSONs")
        ->required();
    cmd->add_option("--e", c_rr.e, "substitution degree e");
    cmd->add_option("--strategy", c_rr.strategy, "enumeration strategy");
    add_budget_opts(cmd, c_rr);
    add_output_opts(cmd, c_rr);
    cmd->callback([&] { rc = cmd_ratio_report(c_rr, config_dir); });
  }
  // acceptance
  {
    auto* cmd = app.add_subcommand(
        "acceptance", "run the full eleven-point acceptance gate");
    add_budget_opts(cmd, c_acc);
    add_output_opts(cmd, c_acc);
    cmd->callback([&] { rc = cmd_acceptance(c_acc); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "%s\n\n%s", e.what(), app.help().c_str());
    return 2;
  }
  return rc;
}
