#include "fbl/verify.hpp"

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "fbl/bounds.hpp"
#include "fbl/sim.hpp"

namespace fbl {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kSignFloor = 1e-14;

std::string strf(const char* fmt, ...) {
  char buf[256];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, args);
  va_end(args);
  return buf;
}

void add_check(SuiteResult& r, std::string label, bool ok,
               std::string note = {}) {
  r.checks.push_back({std::move(label), ok, std::move(note)});
}

void finalize(SuiteResult& r) {
  r.passed = true;
  for (const auto& c : r.checks)
    if (!c.ok) r.passed = false;
}

SystemConfig paper_config(int n, int k, double E) {
  SystemConfig cfg;
  cfg.M = 2;
  cfg.n = n;
  cfg.k = k;
  cfg.epsilon = 0.05;
  cfg.sigma2 = 0.5;
  cfg.energy_mode = EnergyMode::total_e;
  cfg.energy_value = E;
  return cfg;
}

// Central-difference signs of P_pair around D, on values rescaled by the
// largest of the triple so that 1e-100-scale magnitudes stay comparable.
void check_ppair_shape(SuiteResult& r, int n, double sigma, double R,
                       double D) {
  const double h = 1e-3 * D;
  const double lm = p_pair(n, sigma, R, D - h).log_value();
  const double l0 = p_pair(n, sigma, R, D).log_value();
  const double lp = p_pair(n, sigma, R, D + h).log_value();
  const double top = std::max({lm, l0, lp});
  const double sm = std::exp(lm - top);
  const double s0 = std::exp(l0 - top);
  const double sp = std::exp(lp - top);

  const double first = sp - sm;
  const double second = sm + sp - 2.0 * s0;
  add_check(r, strf("n=%d D=%.6g decreasing", n, D), first < kSignFloor,
            strf("first-diff=%.3e", first));
  add_check(r, strf("n=%d D=%.6g convex", n, D), second > -kSignFloor,
            strf("second-diff=%.3e", second));
}

SuiteResult verify_lemma2() {
  SuiteResult r;
  r.suite = "lemma2";
  r.description = "P_pair(D) monotonically decreasing and convex for D >= 2R";
  const double sigma = 1.0;
  for (int n : {4, 16, 64}) {
    const double R = decision_radius(n, sigma, 0.05);
    for (int i = 0; i <= 32; ++i) {
      const double D = 2.0 * R + (2.0 * R) * i / 32.0;  // 2R .. 4R
      check_ppair_shape(r, n, sigma, R, D);
    }
  }
  finalize(r);
  return r;
}

SuiteResult verify_lemma3() {
  SuiteResult r;
  r.suite = "lemma3";
  r.description = "dmin_upper nondecreasing in n at fixed (M, k)";
  const int M = 2;
  for (int k : {8, 16}) {
    int prev = dmin_upper(M, k, k);
    for (int n = k + 1; n <= k + 200; ++n) {
      const int cur = dmin_upper(M, n, k);
      add_check(r, strf("M=%d k=%d n=%d", M, k, n), cur >= prev,
                strf("dmax %d -> %d", prev, cur));
      prev = cur;
    }
  }
  finalize(r);
  return r;
}

SuiteResult verify_lemma4() {
  SuiteResult r;
  r.suite = "lemma4";
  r.description = "dmin_upper(n) <= lambda_bound * n with lambda below "
      "2(M-1)/M + 1/n";
  // k chosen to satisfy the Lemma-5 condition; n stays within [k, M^k - 1]
  const struct {
    int M, k, n_hi;
  } grids[] = {{2, 8, 158}, {4, 3, 63}, {8, 6, 126}};
  for (const auto& g : grids) {
    for (int n = g.k; n <= g.n_hi; ++n) {
      const double lambda = lambda_bound(g.M, g.k, n);
      const double cap = 2.0 * (g.M - 1) / g.M + 1.0 / n;
      const int dmax = dmin_upper(g.M, n, g.k);
      add_check(r, strf("M=%d k=%d n=%d bound", g.M, g.k, n),
                dmax <= lambda * n + 1e-9,
                strf("dmax=%d lambda*n=%.6g", dmax, lambda * n));
      add_check(r, strf("M=%d k=%d n=%d lambda-cap", g.M, g.k, n),
                lambda < cap, strf("lambda=%.6g cap=%.6g", lambda, cap));
    }
  }
  finalize(r);
  return r;
}

SuiteResult verify_lemma5() {
  SuiteResult r;
  r.suite = "lemma5";
  r.description = "2 H_M^{-1}(1/(k+1)) < 1/M once k > 2M/log_M(2M^2) - 1";
  for (int M : {2, 4, 8}) {
    const double threshold =
        2.0 * M / (std::log(2.0 * M * M) / std::log(static_cast<double>(M))) -
        1.0;
    const int k_lo = static_cast<int>(std::floor(threshold)) + 1;
    for (int k = std::max(1, k_lo); k < std::max(1, k_lo) + 30; ++k) {
      const double lambda = lambda_bound_k_only(M, k);
      add_check(r, strf("M=%d k=%d", M, k), lambda < 1.0 / M,
                strf("lambda=%.6g 1/M=%.6g", lambda, 1.0 / M));
    }
  }
  finalize(r);
  return r;
}

SuiteResult verify_thm1() {
  SuiteResult r;
  r.suite = "thm1";
  r.description = "common-random-numbers radius sweep: block error and erasure "
      "rates nonincreasing, confusion nondecreasing";
  const auto cb =
      sim::gen_codebook(2, 8, 4, sim::Constellation::antipodal, 1.0, 0xF00D);
  const double sigma = 0.75;
  std::vector<double> radii;
  for (int i = 0; i < 10; ++i) radii.push_back(0.8 + 0.4 * i);
  const auto summaries =
      sim::radius_sweep_trials(cb, sigma, radii, 20000, 0xF00D);

  for (std::size_t i = 1; i < summaries.size(); ++i) {
    const auto& a = summaries[i - 1];
    const auto& b = summaries[i];
    const auto err_a = a.n_confusion + a.n_erasure;
    const auto err_b = b.n_confusion + b.n_erasure;
    add_check(r, strf("R=%.2f->%.2f error", radii[i - 1], radii[i]),
              err_b <= err_a, strf("%llu -> %llu",
                                   static_cast<unsigned long long>(err_a),
                                   static_cast<unsigned long long>(err_b)));
    add_check(r, strf("R=%.2f->%.2f erasure", radii[i - 1], radii[i]),
              b.n_erasure <= a.n_erasure,
              strf("%llu -> %llu",
                   static_cast<unsigned long long>(a.n_erasure),
                   static_cast<unsigned long long>(b.n_erasure)));
    add_check(r, strf("R=%.2f->%.2f confusion", radii[i - 1], radii[i]),
              b.n_confusion >= a.n_confusion,
              strf("%llu -> %llu",
                   static_cast<unsigned long long>(a.n_confusion),
                   static_cast<unsigned long long>(b.n_confusion)));
  }
  // the sweep must actually exercise all outcome classes
  add_check(r, "outcome variety",
            summaries.front().n_erasure > 0 && summaries.back().n_correct > 0 &&
                summaries.back().n_confusion > 0,
            "");
  finalize(r);
  return r;
}

SuiteResult verify_thm4() {
  SuiteResult r;
  r.suite = "thm4";
  r.description = "p_con_lb decreasing and convex in E";
  const int n = 32, k = 16;
  std::vector<double> energies, logs;
  for (int i = 0; i < 25; ++i) {
    const double E = 8.0 * std::pow(128.0 / 8.0, i / 24.0);  // geometric
    energies.push_back(E);
    logs.push_back(p_con_lb(paper_config(n, k, E)).log_value());
  }
  for (std::size_t i = 1; i < logs.size(); ++i)
    add_check(r, strf("E=%.4g->%.4g decreasing", energies[i - 1], energies[i]),
              logs[i] < logs[i - 1] + 1e-12,
              strf("log %.6g -> %.6g", logs[i - 1], logs[i]));
  for (std::size_t i = 1; i + 1 < logs.size(); ++i) {
    // chord test on values rescaled by the local maximum
    const double top = std::max({logs[i - 1], logs[i], logs[i + 1]});
    const double s1 = std::exp(logs[i - 1] - top);
    const double s2 = std::exp(logs[i] - top);
    const double s3 = std::exp(logs[i + 1] - top);
    const double x1 = energies[i - 1], x2 = energies[i], x3 = energies[i + 1];
    const double chord = ((x3 - x2) * s1 + (x2 - x1) * s3) / (x3 - x1);
    add_check(r, strf("E=%.4g convex", x2), s2 < chord + kSignFloor,
              strf("value=%.6g chord=%.6g", s2, chord));
  }
  finalize(r);
  return r;
}

SuiteResult verify_thm5() {
  SuiteResult r;
  r.suite = "thm5";
  r.description = "p_con_lb decreasing in n inside every dmin_max-consistent "
      "interval (exact interval ratio factors below 1)";
  const int M = 2, k = 16;
  const double E = 16.0;  // Eb/N0 = 0 dB at sigma^2 = 0.5
  const double sigma = std::sqrt(0.5);

  int prev_dmax = dmin_upper(M, 17, k);
  double prev_log_lb = p_con_lb(paper_config(17, k, E)).log_value();
  for (int n = 18; n <= 140; ++n) {
    const int dmax = dmin_upper(M, n, k);
    const double log_lb = p_con_lb(paper_config(n, k, E)).log_value();
    if (dmax == prev_dmax && dmax <= n - 1) {
      const int pn = n - 1;
      const double factor1 =
          static_cast<double>(pn + 1) / ((pn + 1 - dmax) * M);
      const double D = euclid_from_hamming(dmax, E);
      const double lp_prev =
          p_pair(pn, sigma, decision_radius(pn, sigma, 0.05), D).log_value();
      const double lp_cur =
          p_pair(n, sigma, decision_radius(n, sigma, 0.05), D).log_value();
      add_check(r, strf("n=%d->%d combinatorial factor", pn, n), factor1 < 1.0,
                strf("(n+1)/((n+1-dmax)M)=%.6g", factor1));
      add_check(r, strf("n=%d->%d P_pair factor", pn, n), lp_cur < lp_prev,
                strf("log P_pair %.6g -> %.6g", lp_prev, lp_cur));
      add_check(r, strf("n=%d->%d lower bound", pn, n), log_lb < prev_log_lb,
                strf("log LB %.6g -> %.6g", prev_log_lb, log_lb));
    }
    prev_dmax = dmax;
    prev_log_lb = log_lb;
  }
  finalize(r);
  return r;
}

SuiteResult verify_thm6() {
  SuiteResult r;
  r.suite = "thm6";
  r.description = "p_con_ub piecewise decreasing in E with jumps exactly at "
      "E_i = 4R^2/i";
  const int n = 32, k = 16;
  const double sigma = std::sqrt(0.5);
  const double R = decision_radius(n, sigma, 0.05);
  const double four_r2 = 4.0 * R * R;

  for (int i = 1; i <= 12; ++i) {
    const double Ei = four_r2 / i;
    const int at = dmin_lower(paper_config(n, k, Ei));
    const int above = dmin_lower(paper_config(n, k, Ei * (1.0 + 1e-12)));
    const int below = dmin_lower(paper_config(n, k, Ei * (1.0 - 1e-12)));
    add_check(r, strf("i=%d dmin at E_i", i), at == i,
              strf("dmin=%d expected %d", at, i));
    add_check(r, strf("i=%d dmin right of E_i", i), above == i,
              strf("dmin=%d expected %d", above, i));
    add_check(r, strf("i=%d dmin left of E_i", i), below == i + 1,
              strf("dmin=%d expected %d", below, i + 1));
    const double ub_at = p_con_ub(paper_config(n, k, Ei)).log_value();
    const double ub_left =
        p_con_ub(paper_config(n, k, Ei * (1.0 - 1e-12))).log_value();
    add_check(r, strf("i=%d jump discontinuity", i), ub_left < ub_at,
              strf("log UB left=%.9g at=%.9g", ub_left, ub_at));
  }

  for (int i = 1; i <= 11; ++i) {
    const double hi = four_r2 / i;
    const double lo = four_r2 / (i + 1);
    double prev = std::numeric_limits<double>::infinity();
    for (int j = 1; j <= 8; ++j) {
      const double E = lo + (hi - lo) * j / 9.0;  // interior of (E_{i+1}, E_i)
      const int dmin = dmin_lower(paper_config(n, k, E));
      add_check(r, strf("i=%d E=%.5g interval dmin", i, E), dmin == i + 1,
                strf("dmin=%d expected %d", dmin, i + 1));
      const double ub = p_con_ub(paper_config(n, k, E)).log_value();
      if (j > 1)
        add_check(r, strf("i=%d E=%.5g decreasing", i, E), ub < prev,
                  strf("log UB %.9g -> %.9g", prev, ub));
      prev = ub;
    }
  }
  finalize(r);
  return r;
}

SuiteResult verify_thm7() {
  SuiteResult r;
  r.suite = "thm7";
  r.description = "p_con_ub decreasing in n inside every dmin_min-consistent "
      "interval";
  const int k = 16;
  const double E = 16.0;

  int prev_dmin = dmin_lower(paper_config(17, k, E));
  double prev_log_ub = p_con_ub(paper_config(17, k, E)).log_value();
  for (int n = 18; n <= 140; ++n) {
    const int dmin = dmin_lower(paper_config(n, k, E));
    const double log_ub = p_con_ub(paper_config(n, k, E)).log_value();
    if (dmin == prev_dmin)
      add_check(r, strf("n=%d->%d dmin=%d", n - 1, n, dmin),
                log_ub < prev_log_ub,
                strf("log UB %.6g -> %.6g", prev_log_ub, log_ub));
    prev_dmin = dmin;
    prev_log_ub = log_ub;
  }
  finalize(r);
  return r;
}

SuiteResult verify_cor1() {
  SuiteResult r;
  r.suite = "cor1";
  r.description = "p_con_ub local maxima at E_i all equal; local minima "
      "decreasing toward larger E";
  const int n = 32, k = 16;
  const double sigma = std::sqrt(0.5);
  const double R = decision_radius(n, sigma, 0.05);
  const double four_r2 = 4.0 * R * R;

  std::vector<double> maxima, minima;
  for (int i = 1; i <= 12; ++i) {
    const double Ei = four_r2 / i;
    maxima.push_back(p_con_ub(paper_config(n, k, Ei)).log_value());
    minima.push_back(
        p_con_ub(paper_config(n, k, Ei * (1.0 - 1e-12))).log_value());
  }
  for (int i = 1; i < 12; ++i)
    add_check(r, strf("maxima i=1 vs i=%d", i + 1),
              std::fabs(maxima[i] - maxima[0]) <= 1e-9,
              strf("log UB %.12g vs %.12g", maxima[0], maxima[i]));
  // local minimum UB(E_i^-) is smaller at larger energy (smaller i): the
  // i-indexed sequence increases
  for (int i = 0; i + 1 < 12; ++i)
    add_check(r, strf("minima i=%d < i=%d", i + 1, i + 2),
              minima[i] < minima[i + 1],
              strf("log UB %.9g vs %.9g", minima[i], minima[i + 1]));
  finalize(r);
  return r;
}

}  // namespace

std::size_t SuiteResult::failed_count() const {
  std::size_t c = 0;
  for (const auto& p : checks)
    if (!p.ok) ++c;
  return c;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "lemma2", "lemma3", "lemma4", "lemma5", "thm1",
      "thm4",   "thm5",   "thm6",   "thm7",   "cor1"};
  return names;
}

SuiteResult run_suite(const std::string& name) {
  if (name == "lemma2") return verify_lemma2();
  if (name == "lemma3") return verify_lemma3();
  if (name == "lemma4") return verify_lemma4();
  if (name == "lemma5") return verify_lemma5();
  if (name == "thm1") return verify_thm1();
  if (name == "thm4") return verify_thm4();
  if (name == "thm5") return verify_thm5();
  if (name == "thm6") return verify_thm6();
  if (name == "thm7") return verify_thm7();
  if (name == "cor1") return verify_cor1();
  throw std::invalid_argument("unknown verification suite: " + name);
}

std::vector<SuiteResult> run_all_suites() {
  std::vector<SuiteResult> out;
  for (const auto& name : suite_names()) out.push_back(run_suite(name));
  return out;
}

namespace {

ordered_json suite_to_json(const SuiteResult& r) {
  ordered_json j;
  j["suite"] = r.suite;
  j["description"] = r.description;
  j["passed"] = r.passed;
  j["checks_total"] = r.checks.size();
  j["checks_failed"] = r.failed_count();
  ordered_json points = ordered_json::array();
  for (const auto& c : r.checks) {
    ordered_json p;
    p["label"] = c.label;
    p["ok"] = c.ok;
    if (!c.note.empty()) p["note"] = c.note;
    points.push_back(std::move(p));
  }
  j["points"] = std::move(points);
  return j;
}

}  // namespace

std::string to_json(const SuiteResult& result) {
  return suite_to_json(result).dump(2) + "\n";
}

std::string to_json(const std::vector<SuiteResult>& results) {
  ordered_json j;
  bool all = true;
  ordered_json arr = ordered_json::array();
  for (const auto& r : results) {
    all = all && r.passed;
    arr.push_back(suite_to_json(r));
  }
  j["all_passed"] = all;
  j["suites"] = std::move(arr);
  return j.dump(2) + "\n";
}

}  // namespace fbl
