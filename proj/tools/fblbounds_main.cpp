// fblbounds: finite-blocklength block confusion / erasure bound toolkit.
//
// Subcommands: compute (single operating point), sweep (axis sweep to CSV),
// simulate (Monte Carlo campaign vs. the analytic bounds), verify (numerical
// theorem suites).

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <type_traits>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fbl/bounds.hpp"
#include "fbl/sim.hpp"
#include "fbl/sweep.hpp"
#include "fbl/verify.hpp"

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitIo = 3;

std::string fmt_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

ordered_json json_or_null(double v) {
  return std::isinf(v) ? ordered_json() : ordered_json(v);
}

// Flat key=value configuration file: one entry per line, '#' comments.
// Command-line flags always take precedence over file entries.
class FlatConfig {
 public:
  static FlatConfig load(const std::string& path) {
    FlatConfig fc;
    if (path.empty()) return fc;
    std::ifstream is(path);
    if (!is)
      throw std::invalid_argument("cannot read config file: " + path);
    static const std::set<std::string> known = {
        "M",      "n",           "k",            "epsilon", "sigma2",
        "ebn0-db", "energy",     "es",           "distance-unit",
        "strict", "axis",        "grid",         "format",  "out",
        "constellation", "trials", "seed",       "radius"};
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
      ++lineno;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      const auto trim = [](std::string v) {
        const auto b = v.find_first_not_of(" \t\r");
        const auto e = v.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : v.substr(b, e - b + 1);
      };
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("config line " + std::to_string(lineno) +
                                    " is not key=value");
      std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key == "ebn0_db") key = "ebn0-db";
      if (key == "distance_unit") key = "distance-unit";
      if (!known.count(key))
        throw std::invalid_argument("unknown config key: " + key);
      fc.kv_[key] = value;
    }
    return fc;
  }

  bool has(const std::string& key) const { return kv_.count(key) != 0; }
  const std::string& get(const std::string& key) const { return kv_.at(key); }

  // applies the file entry unless the flag was given on the command line
  template <typename T>
  void apply(const CLI::App* cmd, const std::string& flag,
             const std::string& key, T& target) const {
    if (!has(key) || cmd->count(flag) > 0) return;
    const std::string& v = get(key);
    if constexpr (std::is_same_v<T, std::string>) {
      target = v;
    } else if constexpr (std::is_same_v<T, bool>) {
      if (v == "true" || v == "1")
        target = true;
      else if (v == "false" || v == "0")
        target = false;
      else
        throw std::invalid_argument("config key " + key + " expects a bool");
    } else {
      std::size_t pos = 0;
      double parsed = 0;
      try {
        parsed = std::stod(v, &pos);
      } catch (...) {
        pos = std::string::npos;
      }
      if (pos != v.size())
        throw std::invalid_argument("config key " + key +
                                    " has a bad number: " + v);
      target = static_cast<T>(parsed);
    }
  }

 private:
  std::map<std::string, std::string> kv_;
};

// Options shared by compute / sweep / simulate.
struct ConfigArgs {
  fbl::SystemConfig cfg;
  double ebn0_db = 0.0;
  double energy = 0.0;
  double es = 0.0;
  std::string distance_unit = "paper";
  bool strict = false;
  std::string config_path;

  void attach(CLI::App* cmd) {
    cmd->add_option("--M", cfg.M, "Alphabet size")->capture_default_str();
    cmd->add_option("--n", cfg.n, "Blocklength (sweeps over n take it from --grid)");
    cmd->add_option("--k", cfg.k, "Payload length");
    cmd->add_option("--epsilon", cfg.epsilon, "Block error budget")
        ->capture_default_str();
    cmd->add_option("--sigma2", cfg.sigma2, "Per-dimension noise variance")
        ->capture_default_str();
    auto* ebn0 = cmd->add_option("--ebn0-db", ebn0_db,
                                 "Eb/N0 in dB (default energy spec, 0 dB)");
    auto* en = cmd->add_option("--energy", energy, "Total codeword energy E");
    auto* es_opt = cmd->add_option("--es", es, "Per-symbol energy Es");
    ebn0->excludes(en)->excludes(es_opt);
    en->excludes(ebn0)->excludes(es_opt);
    es_opt->excludes(ebn0)->excludes(en);
    cmd->add_option("--distance-unit", distance_unit,
                    "Hamming->Euclidean unit: paper|antipodal|orthogonal")
        ->capture_default_str();
    cmd->add_flag("--strict", strict,
                  "Exit with code 2 when any point is infeasible");
    cmd->add_option("--config", config_path,
                    "Flat key=value config file (flags take precedence)");
  }

  // file entries first (flags keep precedence), then the energy-mode pick
  fbl::SystemConfig build(const CLI::App* cmd) {
    const FlatConfig fc = FlatConfig::load(config_path);
    fc.apply(cmd, "--M", "M", cfg.M);
    fc.apply(cmd, "--n", "n", cfg.n);
    fc.apply(cmd, "--k", "k", cfg.k);
    fc.apply(cmd, "--epsilon", "epsilon", cfg.epsilon);
    fc.apply(cmd, "--sigma2", "sigma2", cfg.sigma2);
    fc.apply(cmd, "--distance-unit", "distance-unit", distance_unit);
    fc.apply(cmd, "--strict", "strict", strict);
    fc.apply(cmd, "--ebn0-db", "ebn0-db", ebn0_db);
    fc.apply(cmd, "--energy", "energy", energy);
    fc.apply(cmd, "--es", "es", es);

    const bool has_energy = cmd->count("--energy") || fc.has("energy");
    const bool has_es = cmd->count("--es") || fc.has("es");
    const bool has_ebn0 = cmd->count("--ebn0-db") || fc.has("ebn0-db");
    if (has_energy + has_es + has_ebn0 > 1 &&
        !(cmd->count("--energy") + cmd->count("--es") +
              cmd->count("--ebn0-db") ==
          1))
      throw std::invalid_argument(
          "conflicting energy entries; give exactly one of energy, es, "
          "ebn0-db");
    if (cmd->count("--energy") || (!cmd->count("--es") &&
                                   !cmd->count("--ebn0-db") &&
                                   fc.has("energy"))) {
      cfg.energy_mode = fbl::EnergyMode::total_e;
      cfg.energy_value = energy;
    } else if (cmd->count("--es") ||
               (!cmd->count("--ebn0-db") && fc.has("es"))) {
      cfg.energy_mode = fbl::EnergyMode::per_symbol_es;
      cfg.energy_value = es;
    } else {
      cfg.energy_mode = fbl::EnergyMode::ebn0_db;
      cfg.energy_value = (cmd->count("--ebn0-db") || fc.has("ebn0-db"))
                             ? ebn0_db
                             : 0.0;
    }
    return cfg;
  }

  FlatConfig flat_config() const { return FlatConfig::load(config_path); }

  fbl::DistanceUnit unit() const {
    return fbl::distance_unit_from_string(distance_unit);
  }
};

int emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << content;
    return kExitOk;
  }
  std::ofstream os(out_path, std::ios::binary);
  if (!os) {
    std::cerr << "error: cannot open output file: " << out_path << "\n";
    return kExitIo;
  }
  os << content;
  if (!os.flush()) {
    std::cerr << "error: write failed: " << out_path << "\n";
    return kExitIo;
  }
  return kExitOk;
}

ordered_json config_json(const fbl::PointReport& rep) {
  ordered_json j;
  j["M"] = rep.cfg.M;
  j["n"] = rep.cfg.n;
  j["k"] = rep.cfg.k;
  j["epsilon"] = rep.cfg.epsilon;
  j["sigma2"] = rep.cfg.sigma2;
  j["E"] = rep.E;
  j["Es"] = rep.E / rep.cfg.n;
  j["distance_unit"] = fbl::to_string(rep.unit);
  return j;
}

ordered_json report_json(const fbl::PointReport& rep) {
  ordered_json j;
  j["config"] = config_json(rep);
  j["R"] = rep.R;
  ordered_json dist;
  dist["dmin_min"] = rep.dist.dmin_min;
  dist["dmin_max"] = rep.dist.dmin_max;
  dist["Dmin_min"] = rep.dist.Dmin_min;
  dist["Dmin_max"] = rep.dist.Dmin_max;
  j["distance_bounds"] = std::move(dist);
  ordered_json rates;
  rates["pcon_lb"] = rep.rates.pcon_lb.value();
  rates["pcon_ub"] = rep.rates.pcon_ub.value();
  rates["log10_pcon_lb"] = json_or_null(rep.rates.pcon_lb.log10_value());
  rates["log10_pcon_ub"] = json_or_null(rep.rates.pcon_ub.log10_value());
  rates["pcon_lb_underflowed"] = rep.rates.pcon_lb.underflowed();
  rates["pcon_ub_underflowed"] = rep.rates.pcon_ub.underflowed();
  rates["pers_lb"] = rep.rates.pers_lb.value();
  rates["pers_ub"] = rep.rates.pers_ub.value();
  j["rate_bounds"] = std::move(rates);
  j["feasible"] = rep.rates.feasible;
  return j;
}

int run_compute(ConfigArgs& args, const CLI::App* cmd, std::string format,
                std::string out_path) {
  const FlatConfig fc = args.flat_config();
  fc.apply(cmd, "--format", "format", format);
  fc.apply(cmd, "--out", "out", out_path);
  fbl::SystemConfig cfg = args.build(cmd);
  cfg.validate();
  const fbl::PointReport rep = fbl::compute_point(cfg, args.unit());

  std::string content;
  if (format == "json") {
    content = report_json(rep).dump(2) + "\n";
  } else if (format == "csv") {
    std::ostringstream os;
    fbl::write_csv(os, {fbl::row_from_report(rep.cfg.n, rep)});
    content = os.str();
  } else {
    std::cerr << "error: unknown format: " << format << "\n";
    return kExitUsage;
  }
  const int rc = emit(content, out_path);
  if (rc != kExitOk) return rc;
  return args.strict && !rep.rates.feasible ? kExitInfeasible : kExitOk;
}

int run_sweep(ConfigArgs& args, const CLI::App* cmd, std::string axis,
              std::string grid, std::string format, std::string out_path) {
  const FlatConfig fc = args.flat_config();
  fc.apply(cmd, "--axis", "axis", axis);
  fc.apply(cmd, "--grid", "grid", grid);
  fc.apply(cmd, "--format", "format", format);
  fc.apply(cmd, "--out", "out", out_path);
  if (axis.empty())
    throw std::invalid_argument("sweep needs --axis (flag or config)");
  if (grid.empty())
    throw std::invalid_argument("sweep needs --grid (flag or config)");
  fbl::SweepSpec spec;
  spec.axis = fbl::sweep_axis_from_string(axis);
  spec.base = args.build(cmd);
  spec.unit = args.unit();
  spec.grid = fbl::make_grid(grid, spec.axis);
  if (spec.axis == fbl::SweepAxis::blocklength) {
    for (double v : spec.grid)
      if (v < spec.base.k)
        throw CLI::ValidationError("--grid",
                                   "blocklength grid reaches below k");
    spec.base.n = static_cast<int>(spec.grid.front());
  }
  spec.base.validate();

  const auto rows = fbl::run_sweep(spec);
  std::string content;
  if (format == "csv") {
    std::ostringstream os;
    fbl::write_csv(os, rows);
    content = os.str();
  } else if (format == "json") {
    content = fbl::rows_to_json(rows);
  } else {
    std::cerr << "error: unknown format: " << format << "\n";
    return kExitUsage;
  }
  const int rc = emit(content, out_path);
  if (rc != kExitOk) return rc;
  if (args.strict)
    for (const auto& row : rows)
      if (!row.feasible) return kExitInfeasible;
  return kExitOk;
}

int run_simulate(ConfigArgs& args, const CLI::App* cmd,
                 std::string constellation, std::uint64_t trials,
                 std::uint64_t seed, std::optional<double> radius,
                 std::string format, std::string out_path) {
  const FlatConfig fc = args.flat_config();
  fc.apply(cmd, "--constellation", "constellation", constellation);
  fc.apply(cmd, "--trials", "trials", trials);
  fc.apply(cmd, "--seed", "seed", seed);
  fc.apply(cmd, "--format", "format", format);
  fc.apply(cmd, "--out", "out", out_path);
  if (!radius && fc.has("radius") && !cmd->count("--radius")) {
    double r = 0.0;
    fc.apply(cmd, "--radius", "radius", r);
    radius = r;
  }
  constexpr std::uint64_t kTrialCap = 100000000;  // 1e8
  if (trials < 1) throw CLI::ValidationError("--trials", "must be >= 1");
  if (trials > kTrialCap)
    throw CLI::ValidationError("--trials", "exceeds the 1e8 cap");

  fbl::SystemConfig cfg = args.build(cmd);
  cfg.validate();
  const auto unit = args.unit();

  const fbl::PointReport rep =
      radius ? fbl::compute_point_at_radius(cfg, *radius, unit)
             : fbl::compute_point(cfg, unit);

  const auto cons = fbl::sim::constellation_from_string(constellation);
  const auto cb = fbl::sim::gen_codebook(cfg.M, cfg.n, cfg.k, cons,
                                         cfg.symbol_energy(), seed);
  // the decoder's epsilon-radius lives in the codebook's real dimension:
  // psk symbols occupy two dimensions each, so the noise norm is chi_{2n}
  const double sim_radius =
      radius ? *radius
             : fbl::decision_radius(cb.dim, cfg.sigma(), cfg.epsilon);
  const auto summary =
      fbl::sim::run_trials(cb, cfg.sigma(), sim_radius, trials, seed);

  const bool error_ci_contains_eps =
      summary.block_error.lo <= rep.cfg.epsilon &&
      rep.cfg.epsilon <= summary.block_error.hi;
  // CI-aware comparisons: the bands are typically far narrower than the
  // Monte Carlo resolution
  const bool confusion_within_ub =
      summary.confusion.lo <= rep.rates.pcon_ub.value();
  const bool erasure_within_band =
      summary.erasure.hi >= rep.rates.pers_lb.value() &&
      summary.erasure.lo <= rep.rates.pers_ub.value();

  std::string content;
  if (format == "json") {
    ordered_json j = report_json(rep);
    j["constellation"] = constellation;
    j["sim_radius"] = sim_radius;
    ordered_json s;
    s["trials"] = summary.trials;
    s["seed"] = summary.seed;
    s["n_correct"] = summary.n_correct;
    s["n_confusion"] = summary.n_confusion;
    s["n_erasure"] = summary.n_erasure;
    s["n_overlap_events"] = summary.n_overlap_events;
    auto ci = [](const fbl::sim::RateCI& c) {
      ordered_json v;
      v["rate"] = c.rate;
      v["ci99_lo"] = c.lo;
      v["ci99_hi"] = c.hi;
      return v;
    };
    s["correct"] = ci(summary.correct);
    s["confusion"] = ci(summary.confusion);
    s["erasure"] = ci(summary.erasure);
    s["block_error"] = ci(summary.block_error);
    j["summary"] = std::move(s);
    ordered_json c;
    c["error_ci_contains_epsilon"] = error_ci_contains_eps;
    c["confusion_rate_le_pcon_ub"] = confusion_within_ub;
    c["erasure_rate_in_band"] = erasure_within_band;
    j["consistency"] = std::move(c);
    content = j.dump(2) + "\n";
  } else if (format == "csv") {
    std::ostringstream os;
    os << "trials,seed,R,n_correct,n_confusion,n_erasure,n_overlap_events,"
          "correct_rate,correct_lo,correct_hi,"
          "confusion_rate,confusion_lo,confusion_hi,"
          "erasure_rate,erasure_lo,erasure_hi,"
          "error_rate,error_lo,error_hi,"
          "epsilon,log10_pcon_lb,log10_pcon_ub,pers_lb,pers_ub,feasible,"
          "error_ci_contains_epsilon,confusion_rate_le_pcon_ub,"
          "erasure_rate_in_band\n";
    os << summary.trials << ',' << summary.seed << ','
       << fmt_double(sim_radius) << ',' << summary.n_correct << ',' << summary.n_confusion << ','
       << summary.n_erasure << ',' << summary.n_overlap_events << ','
       << fmt_double(summary.correct.rate) << ','
       << fmt_double(summary.correct.lo) << ','
       << fmt_double(summary.correct.hi) << ','
       << fmt_double(summary.confusion.rate) << ','
       << fmt_double(summary.confusion.lo) << ','
       << fmt_double(summary.confusion.hi) << ','
       << fmt_double(summary.erasure.rate) << ','
       << fmt_double(summary.erasure.lo) << ','
       << fmt_double(summary.erasure.hi) << ','
       << fmt_double(summary.block_error.rate) << ','
       << fmt_double(summary.block_error.lo) << ','
       << fmt_double(summary.block_error.hi) << ','
       << fmt_double(rep.cfg.epsilon) << ','
       << fmt_double(rep.rates.pcon_lb.log10_value()) << ','
       << fmt_double(rep.rates.pcon_ub.log10_value()) << ','
       << fmt_double(rep.rates.pers_lb.value()) << ','
       << fmt_double(rep.rates.pers_ub.value()) << ','
       << (rep.rates.feasible ? 1 : 0) << ','
       << (error_ci_contains_eps ? 1 : 0) << ','
       << (confusion_within_ub ? 1 : 0) << ','
       << (erasure_within_band ? 1 : 0) << '\n';
    content = os.str();
  } else {
    std::cerr << "error: unknown format: " << format << "\n";
    return kExitUsage;
  }
  const int rc = emit(content, out_path);
  if (rc != kExitOk) return rc;
  return args.strict && !rep.rates.feasible ? kExitInfeasible : kExitOk;
}

int run_verify(const std::string& suite, const std::string& out_path) {
  std::vector<fbl::SuiteResult> results;
  if (suite == "all") {
    results = fbl::run_all_suites();
  } else {
    results.push_back(fbl::run_suite(suite));
  }
  bool all_passed = true;
  for (const auto& r : results) {
    all_passed = all_passed && r.passed;
    std::cerr << (r.passed ? "[PASS] " : "[FAIL] ") << r.suite << " ("
              << r.checks.size() - r.failed_count() << "/" << r.checks.size()
              << " checks)\n";
  }
  const int rc = emit(fbl::to_json(results), out_path);
  if (rc != kExitOk) return rc;
  return all_passed ? kExitOk : kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Finite-blocklength block confusion and erasure probability bounds "
      "for epsilon-bounded ML decoders over AWGN"};
  app.require_subcommand(1);

  ConfigArgs compute_args, sweep_args, sim_args;
  std::string compute_format = "json", compute_out;
  std::string sweep_axis, sweep_grid, sweep_format = "csv", sweep_out;
  std::string sim_constellation = "antipodal", sim_format = "json", sim_out;
  std::uint64_t sim_trials = 100000, sim_seed = 1;
  double sim_radius = 0.0;
  std::string verify_suite = "all", verify_out;

  auto* compute = app.add_subcommand(
      "compute", "Evaluate the bounds at a single operating point");
  compute_args.attach(compute);
  compute->add_option("--format", compute_format, "json|csv")
      ->capture_default_str();
  compute->add_option("--out", compute_out, "Output file (default stdout)");

  auto* sweep = app.add_subcommand(
      "sweep", "Sweep the bounds along one axis and emit CSV/JSON");
  sweep_args.attach(sweep);
  sweep->add_option("--axis", sweep_axis,
                    "blocklength|ebn0-db|energy|radius");
  sweep->add_option("--grid", sweep_grid,
                    "\"a,b,c\" list, \"start:stop:step\" (integer axis), or "
                    "\"start:stop:count[:lin|log]\"");
  sweep->add_option("--format", sweep_format, "csv|json")
      ->capture_default_str();
  sweep->add_option("--out", sweep_out, "Output file (default stdout)");

  auto* simulate = app.add_subcommand(
      "simulate", "Monte Carlo decoder campaign vs. the analytic bounds");
  sim_args.attach(simulate);
  simulate->add_option("--constellation", sim_constellation, "antipodal|psk")
      ->capture_default_str();
  simulate->add_option("--trials", sim_trials, "Trial count (<= 1e8)")
      ->capture_default_str();
  simulate->add_option("--seed", sim_seed, "Master RNG seed")
      ->capture_default_str();
  auto* radius_opt = simulate->add_option(
      "--radius", sim_radius, "Decision radius override (default R(epsilon))");
  simulate->add_option("--format", sim_format, "json|csv")
      ->capture_default_str();
  simulate->add_option("--out", sim_out, "Output file (default stdout)");

  auto* verify = app.add_subcommand(
      "verify", "Run the numerical theorem verification suites");
  verify->add_option("suite", verify_suite,
                     "lemma2|lemma3|lemma4|lemma5|thm1|thm4|thm5|thm6|thm7|"
                     "cor1|all")
      ->capture_default_str();
  verify->add_option("--out", verify_out, "JSON report file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (compute->parsed())
      return run_compute(compute_args, compute, compute_format, compute_out);
    if (sweep->parsed())
      return run_sweep(sweep_args, sweep, sweep_axis, sweep_grid, sweep_format,
                       sweep_out);
    if (simulate->parsed())
      return run_simulate(
          sim_args, simulate, sim_constellation, sim_trials, sim_seed,
          radius_opt->count() ? std::optional<double>(sim_radius)
                              : std::nullopt,
          sim_format, sim_out);
    if (verify->parsed()) return run_verify(verify_suite, verify_out);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
