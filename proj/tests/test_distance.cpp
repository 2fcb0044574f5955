#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "fbl/bounds.hpp"
#include "fbl/distance.hpp"

using namespace fbl;

namespace {

SystemConfig cfg_total(int M, int n, int k, double eps, double sigma2,
                       double E) {
  SystemConfig c;
  c.M = M;
  c.n = n;
  c.k = k;
  c.epsilon = eps;
  c.sigma2 = sigma2;
  c.energy_mode = EnergyMode::total_e;
  c.energy_value = E;
  return c;
}

// V_n(t) by direct 128-bit summation, valid while terms fit
double volume_log_direct(int M, int n, int t) {
  std::vector<__uint128_t> row(n + 1, 0);
  row[0] = 1;
  for (int i = 1; i <= n; ++i)
    for (int j = i; j >= 1; --j) row[j] += row[j - 1];
  long double sum = 0.0L;
  long double mp = 1.0L;
  for (int l = 0; l <= t; ++l) {
    sum += static_cast<long double>(row[l]) * mp;
    mp *= (M - 1);
  }
  return static_cast<double>(std::log(sum));
}

}  // namespace

TEST_CASE("hamming_volume_log basics") {
  CHECK(hamming_volume_log(2, 12, 0) == 0.0);
  CHECK(hamming_volume_log(2, 7, 1) ==
        doctest::Approx(std::log(8.0)).epsilon(1e-13));
  for (int M : {2, 3, 5})
    for (int n : {1, 9, 30})
      CHECK(hamming_volume_log(M, n, n) ==
            doctest::Approx(n * std::log(double(M))).epsilon(1e-13));
  CHECK_THROWS_AS(hamming_volume_log(1, 5, 2), std::domain_error);
  CHECK_THROWS_AS(hamming_volume_log(2, 5, 6), std::domain_error);
}

TEST_CASE("hamming_volume exact route vs direct sums and LSE route") {
  for (int M : {2, 3})
    for (int n : {10, 25, 40})
      for (int t = 0; t <= n; t += 5)
        CHECK(detail::hamming_volume_log_exact(M, n, t) ==
              doctest::Approx(volume_log_direct(M, n, t)).epsilon(1e-12));

  for (int n : {100, 512, 600})
    for (int t : {0, n / 4, n / 2, n}) {
      const double exact = detail::hamming_volume_log_exact(2, n, t);
      const double lse = detail::hamming_volume_log_lse(2, n, t);
      CHECK(lse == doctest::Approx(exact).epsilon(1e-12));
    }
}

TEST_CASE("dmin_upper threshold scan") {
  // V_7(1) = 8 <= 2^3 < V_7(2) = 29
  CHECK(dmin_upper(2, 7, 4) == 4);
  for (int M : {2, 3, 4, 8, 16})
    for (int n : {1, 2, 7, 32, 211})
      CHECK(dmin_upper(M, n, n) == 2);
  // nondecreasing in n (larger grids live in the lemma3 suite)
  int prev = dmin_upper(2, 4, 4);
  for (int n = 5; n <= 60; ++n) {
    const int cur = dmin_upper(2, n, 4);
    CHECK(cur >= prev);
    prev = cur;
  }
  // exact-threshold consistency across representations
  for (int n : {500, 513, 700})
    CHECK(dmin_upper(2, n, 16) >= dmin_upper(2, n - 1, 16));
  // beyond the exact-route limit the log-domain scan must match a pure
  // big-integer threshold scan
  for (auto [M, n, k] : {std::tuple{2, 600, 32}, std::tuple{3, 600, 100}}) {
    int t_star = -1;
    for (int t = 0; t <= n; ++t)
      if (detail::compare_volume_exact(M, n, t, n - k) > 0) {
        t_star = t;
        break;
      }
    REQUIRE(t_star >= 0);
    CHECK(dmin_upper(M, n, k) == 2 * t_star);
  }
  CHECK_THROWS_AS(dmin_upper(2, 4, 5), std::domain_error);
  CHECK_THROWS_AS(dmin_upper(1, 4, 2), std::domain_error);
}

TEST_CASE("dmin_lower ceiling and lattice behavior") {
  const double sigma2 = 0.5;
  const int n = 12;
  const double R = decision_radius(n, std::sqrt(sigma2), 0.05);

  // E >= 4R^2 gives the floor value 1
  CHECK(dmin_lower(cfg_total(2, n, 4, 0.05, sigma2, 5.0 * R * R)) == 1);
  // exact integer ratio: E = 4R^2/3
  CHECK(dmin_lower(cfg_total(2, n, 4, 0.05, sigma2, 4.0 * R * R / 3.0)) == 3);
}

TEST_CASE("dmin_lower at the documented operating point") {
  // frozen 50-digit chi-inverse oracle (tests/oracles/gen_reference_values.py):
  // F_chi32^-1(0.95) = 6.79663589728613243803442914327, so with sigma^2 = 0.5
  // and E = 16 the ratio 4R^2/E = 5.77428244003480882604546628078.
  const SystemConfig cfg = cfg_total(2, 32, 16, 0.05, 0.5, 16.0);
  const double R = decision_radius(32, cfg.sigma(), 0.05);
  CHECK(4.0 * R * R / 16.0 ==
        doctest::Approx(5.77428244003481).epsilon(1e-11));
  CHECK(dmin_lower(cfg) == 6);
}

TEST_CASE("dmin_lower monotone directions") {
  // nonincreasing in E at fixed (sigma, n, eps)
  int prev = 1 << 30;
  for (double E = 2.0; E <= 120.0; E *= 1.15) {
    const int d = dmin_lower(cfg_total(2, 24, 8, 0.05, 0.5, E));
    CHECK(d <= prev);
    prev = d;
  }
  // nondecreasing in n at fixed (sigma, E, eps): R(eps) grows with n
  prev = 0;
  for (int n = 8; n <= 200; n += 4) {
    const int d = dmin_lower(cfg_total(2, n, 8, 0.05, 0.5, 16.0));
    CHECK(d >= prev);
    prev = d;
  }
}

TEST_CASE("euclid_from_hamming") {
  CHECK(euclid_from_hamming(0, 3.0) == 0.0);
  CHECK(euclid_from_hamming(4, 9.0) == doctest::Approx(6.0));
  CHECK(euclid_from_hamming(3, 16.0) ==
        doctest::Approx(std::sqrt(48.0)).epsilon(1e-15));
  CHECK_THROWS_AS(euclid_from_hamming(-1, 1.0), std::domain_error);
  CHECK_THROWS_AS(euclid_from_hamming(2, 0.0), std::domain_error);
}

TEST_CASE("distance_bounds feasibility flag") {
  const DistanceBounds feasible =
      distance_bounds(cfg_total(2, 32, 16, 0.05, 0.5, 16.0));
  CHECK(feasible.feasible);
  CHECK(feasible.dmin_min == 6);
  CHECK(feasible.dmin_max == 10);
  CHECK(feasible.Dmin_min == doctest::Approx(std::sqrt(16.0 * 6)));
  CHECK(feasible.Dmin_max == doctest::Approx(std::sqrt(16.0 * 10)));

  const DistanceBounds infeasible =
      distance_bounds(cfg_total(2, 18, 16, 0.05, 0.5, 16.0));
  CHECK(!infeasible.feasible);
  CHECK(infeasible.dmin_min > infeasible.dmin_max);
}

TEST_CASE("entropy function and inverse") {
  CHECK(entropy_M(2, 0.0) == 0.0);
  CHECK(entropy_M(2, 0.5) == doctest::Approx(1.0).epsilon(1e-13));
  for (int M : {2, 3, 4, 8, 16})
    CHECK(entropy_M(M, double(M - 1) / M) ==
          doctest::Approx(1.0).epsilon(1e-13));

  CHECK(entropy_M_inverse(2, 0.0) == 0.0);
  for (int M : {2, 4, 8})
    CHECK(entropy_M_inverse(M, 1.0) == doctest::Approx(double(M - 1) / M));
  for (int M : {2, 4, 8})
    for (double y = 0.05; y < 1.0; y += 0.05)
      CHECK(entropy_M(M, entropy_M_inverse(M, y)) ==
            doctest::Approx(y).epsilon(1e-10));
}

TEST_CASE("lambda bounds") {
  for (int M : {2, 4, 8})
    for (int k : {8, 16})
      for (int n = k; n <= k + 60; n += 7) {
        const double lambda = lambda_bound(M, k, n);
        CHECK(lambda < 2.0 * (M - 1) / M + 1.0 / n + 1e-12);
      }
  // Lemma-5 variant for qualifying k (full grids in the lemma5 suite)
  CHECK(lambda_bound_k_only(2, 8) < 0.5);
  CHECK(lambda_bound_k_only(4, 3) < 0.25);
  CHECK(lambda_bound_k_only(8, 6) < 0.125);
  // spot-check the Lemma-4 aux bound against the scan (the lemma4 suite
  // carries the full grid and the documented corner cases)
  for (int n = 10; n <= 100; n += 10)
    CHECK(dmin_upper(2, n, 8) <= lambda_bound(2, 8, n) * n + 1e-9);
}

TEST_CASE("SystemConfig energy modes and validation") {
  SystemConfig cfg;
  cfg.M = 2;
  cfg.n = 32;
  cfg.k = 16;
  cfg.epsilon = 0.05;
  cfg.sigma2 = 0.5;
  cfg.energy_mode = EnergyMode::ebn0_db;
  cfg.energy_value = 0.0;
  CHECK(cfg.total_energy() == doctest::Approx(16.0));  // k * 10^0 * 2 sigma^2
  cfg.energy_value = 10.0;
  CHECK(cfg.total_energy() == doctest::Approx(160.0));
  cfg.energy_mode = EnergyMode::per_symbol_es;
  cfg.energy_value = 0.5;
  CHECK(cfg.total_energy() == doctest::Approx(16.0));
  CHECK(cfg.symbol_energy() == doctest::Approx(0.5));
  cfg.energy_mode = EnergyMode::total_e;
  cfg.energy_value = 12.0;
  CHECK(cfg.total_energy() == 12.0);
  CHECK(cfg.redundancy() == 16);

  SystemConfig bad = cfg;
  bad.k = 40;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.M = 1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.epsilon = 1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.sigma2 = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.energy_value = -2.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("distance unit selection") {
  const SystemConfig cfg = cfg_total(2, 8, 4, 0.05, 0.5, 16.0);  // Es = 2
  CHECK(distance_unit_delta2(cfg, DistanceUnit::paper) == doctest::Approx(16.0));
  CHECK(distance_unit_delta2(cfg, DistanceUnit::antipodal) ==
        doctest::Approx(8.0));
  CHECK(distance_unit_delta2(cfg, DistanceUnit::orthogonal) ==
        doctest::Approx(4.0));
  CHECK(distance_unit_from_string("paper") == DistanceUnit::paper);
  CHECK_THROWS_AS(distance_unit_from_string("bogus"), std::invalid_argument);
}
