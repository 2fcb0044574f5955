#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "fbl/specfun.hpp"

using namespace fbl;

namespace {

// exact binomial table via Pascal's rule in 128-bit integers (n <= 120)
__uint128_t binom_exact(int n, int l) {
  std::vector<__uint128_t> row(n + 1, 0);
  row[0] = 1;
  for (int i = 1; i <= n; ++i)
    for (int j = i; j >= 1; --j) row[j] += row[j - 1];
  return row[l];
}

double log_u128(__uint128_t v) {
  long double acc = 0.0L;
  while (v > static_cast<__uint128_t>(1) << 62) {
    acc += std::log(2.0L) * 62;
    v >>= 62;
  }
  return static_cast<double>(acc + std::log(static_cast<long double>(v)));
}

// composite Simpson on [a, b], test-side quadrature independent of the
// library's Gauss-Legendre machinery
template <typename F>
double simpson(F f, double a, double b, int slices) {
  double h = (b - a) / slices;
  double acc = f(a) + f(b);
  for (int i = 1; i < slices; ++i)
    acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

}  // namespace

TEST_CASE("log_gamma matches known values") {
  CHECK(log_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(log_gamma(0.5) ==
        doctest::Approx(std::log(std::sqrt(std::numbers::pi))).epsilon(1e-14));
  // 9! = 362880
  long long fact = 1;
  for (int i = 2; i <= 9; ++i) fact *= i;
  CHECK(log_gamma(10.0) ==
        doctest::Approx(std::log(static_cast<double>(fact))).epsilon(1e-14));
  CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
  CHECK_THROWS_AS(log_gamma(-3.0), std::domain_error);
}

TEST_CASE("log_gamma tracks libm lgamma across [0.5, 1e6]") {
  for (double s = 0.5; s <= 1e6; s *= 1.37) {
    const double ours = log_gamma(s);
    const double ref = std::lgamma(s);
    const double err = std::fabs(ours - ref);
    CHECK(err <= 1e-13 * std::max(1.0, std::fabs(ref)));
  }
}

TEST_CASE("reg_lower_gamma closed forms") {
  CHECK(reg_lower_gamma(1.0, 2.0).value() ==
        doctest::Approx(1.0 - std::exp(-2.0)).epsilon(1e-13));
  CHECK(reg_lower_gamma(3.7, 0.0).value() == 0.0);
  CHECK(reg_lower_gamma(2.0, 3.0).value() ==
        doctest::Approx(1.0 - 4.0 * std::exp(-3.0)).epsilon(1e-13));

  // integer s: P(s,x) = 1 - e^-x sum_{j<s} x^j/j!
  for (int s = 1; s <= 10; ++s) {
    for (double x : {0.3, 1.0, 2.5, 7.0, 19.0}) {
      double tail = 0.0, term = 1.0;
      for (int j = 0; j < s; ++j) {
        if (j > 0) term *= x / j;
        tail += term;
      }
      const double expected = 1.0 - std::exp(-x) * tail;
      CHECK(reg_lower_gamma(s, x).value() ==
            doctest::Approx(expected).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(reg_lower_gamma(-1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(reg_lower_gamma(1.0, -1.0), std::domain_error);
}

TEST_CASE("reg_lower_gamma is a CDF in x") {
  for (double s : {0.5, 2.0, 16.0}) {
    double prev = -1.0;
    for (double x = 0.0; x < 8 * s; x += 0.25 * s) {
      const double p = reg_lower_gamma(s, x).value();
      CHECK(p >= prev);
      CHECK(p >= 0.0);
      CHECK(p <= 1.0);
      prev = p;
    }
    CHECK(reg_lower_gamma(s, 200 * s).value() == doctest::Approx(1.0));
  }
}

TEST_CASE("reg_upper_gamma complements reg_lower_gamma") {
  for (double s : {0.5, 3.0, 21.0})
    for (double x : {0.1, 2.0, 5.0, 40.0})
      CHECK(reg_lower_gamma(s, x).value() + reg_upper_gamma(s, x).value() ==
            doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("chi_cdf closed forms") {
  CHECK(chi_cdf(5, 0.0).value() == 0.0);
  // n=2 is Rayleigh
  for (double x : {0.2, 1.0, 2.2, 4.0})
    CHECK(chi_cdf(2, x).value() ==
          doctest::Approx(1.0 - std::exp(-0.5 * x * x)).epsilon(1e-13));
  // n=3: erf(x/sqrt(2)) - sqrt(2/pi) x e^{-x^2/2}
  for (double x : {0.5, 1.0, 2.0}) {
    const double expected =
        std::erf(x / std::numbers::sqrt2) -
        std::sqrt(2.0 / std::numbers::pi) * x * std::exp(-0.5 * x * x);
    CHECK(chi_cdf(3, x).value() == doctest::Approx(expected).epsilon(1e-12));
  }
  CHECK(chi_cdf(3, 1.0).value() ==
        doctest::Approx(0.198748043098799).epsilon(1e-12));
  CHECK_THROWS_AS(chi_cdf(0, 1.0), std::domain_error);
}

TEST_CASE("chi_cdf strictly increasing below tail saturation") {
  for (int n : {1, 2, 7, 64}) {
    const double hi = chi_inv_cdf(n, 1.0 - 1e-9);
    double prev = 0.0;
    for (double x = 0.05 * hi; x < hi; x += 0.05 * hi) {
      const double p = chi_cdf(n, x).value();
      CHECK(p > prev);
      prev = p;
    }
  }
}

TEST_CASE("chi_inv_cdf closed form and round trips") {
  CHECK(chi_inv_cdf(17, 0.0) == 0.0);
  CHECK(chi_inv_cdf(2, 0.95) ==
        doctest::Approx(std::sqrt(-2.0 * std::log(0.05))).epsilon(1e-12));

  const double p_grid[] = {1e-6, 0.01, 0.1, 0.5, 0.9, 0.95, 0.999};
  for (int n = 1; n <= 256; ++n) {
    for (double p : p_grid) {
      const double x = chi_inv_cdf(n, p);
      CHECK(std::fabs(chi_cdf(n, x).value() - p) <= 1e-10);
    }
  }
  CHECK_THROWS_AS(chi_inv_cdf(4, 1.0), std::domain_error);
  CHECK_THROWS_AS(chi_inv_cdf(4, -0.1), std::domain_error);
}

TEST_CASE("chi_log_pdf normalizes and matches known densities") {
  // normalization against test-side Simpson quadrature
  for (int n : {1, 2, 8, 64}) {
    const double hi = std::sqrt(static_cast<double>(n)) + 12.0;
    const double integral = simpson(
        [n](double u) { return u > 0 ? std::exp(chi_log_pdf(n, u)) : 0.0; },
        1e-12, hi, 40000);
    CHECK(integral == doctest::Approx(1.0).epsilon(1e-9));
  }
  // Rayleigh density at u=1: ln(1 * e^{-1/2})
  CHECK(chi_log_pdf(2, 1.0) == doctest::Approx(-0.5).epsilon(1e-13));
  // n=1 is half-normal
  for (double u : {0.3, 1.0, 2.4}) {
    const double expected =
        std::log(std::sqrt(2.0 / std::numbers::pi)) - 0.5 * u * u;
    CHECK(chi_log_pdf(1, u) == doctest::Approx(expected).epsilon(1e-12));
  }
  CHECK_THROWS_AS(chi_log_pdf(4, 0.0), std::domain_error);
  CHECK_THROWS_AS(chi_log_pdf(4, -1.0), std::domain_error);
}

TEST_CASE("log_binomial agrees with exact integers up to n = 60") {
  CHECK(log_binomial(13, 0) == 0.0);
  CHECK(log_binomial(7, 2) == doctest::Approx(std::log(21.0)).epsilon(1e-13));
  for (int n = 1; n <= 60; ++n) {
    for (int l = 0; l <= n; l += (n > 20 ? 3 : 1)) {
      const double expected = log_u128(binom_exact(n, l));
      const double got = log_binomial(n, l);
      CHECK(std::fabs(got - expected) <= 1e-12 * std::max(1.0, expected));
    }
  }
  CHECK(log_binomial(60, 30) ==
        doctest::Approx(log_u128(binom_exact(60, 30))).epsilon(1e-12));
  CHECK_THROWS_AS(log_binomial(5, 6), std::domain_error);
  CHECK_THROWS_AS(log_binomial(-1, 0), std::domain_error);
}

TEST_CASE("reg_inc_beta basics") {
  CHECK(reg_inc_beta(2.0, 3.0, 0.0).value() == 0.0);
  CHECK(reg_inc_beta(2.0, 3.0, 1.0).value() == 1.0);
  for (double x : {0.1, 0.4, 0.9})
    CHECK(reg_inc_beta(1.0, 1.0, x).value() ==
          doctest::Approx(x).epsilon(1e-13));
  CHECK(reg_inc_beta(0.5, 0.5, 0.5).value() ==
        doctest::Approx(0.5).epsilon(1e-13));

  // symmetry I_x(a,b) = 1 - I_{1-x}(b,a)
  for (double a : {0.5, 2.0, 15.5})
    for (double b : {0.5, 1.0, 4.0})
      for (double x : {0.05, 0.3, 0.77}) {
        CHECK(reg_inc_beta(a, b, x).value() +
                  reg_inc_beta(b, a, 1.0 - x).value() ==
              doctest::Approx(1.0).epsilon(1e-12));
      }

  // monotone in x
  for (double a : {0.5, 3.0}) {
    double prev = -1.0;
    for (double x = 0.0; x <= 1.0; x += 0.05) {
      const double v = reg_inc_beta(a, 0.5, x).value();
      CHECK(v >= prev);
      prev = v;
    }
  }
  CHECK_THROWS_AS(reg_inc_beta(0.0, 1.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(reg_inc_beta(1.0, 1.0, 1.5), std::domain_error);
}

TEST_CASE("log_reg_inc_beta consistent with linear value") {
  for (double a : {0.5, 7.5, 31.5})
    for (double x : {0.01, 0.2, 0.6, 0.95}) {
      const double lv = log_reg_inc_beta(a, 0.5, x);
      const double v = reg_inc_beta(a, 0.5, x).value();
      if (v > 1e-300)
        CHECK(std::exp(lv) == doctest::Approx(v).epsilon(1e-12));
    }
}

TEST_CASE("Probability invariants") {
  const Probability p = Probability::from_value(0.25);
  CHECK(p.value() == 0.25);
  CHECK(std::exp(p.log_value()) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(!p.underflowed());

  const Probability tiny = Probability::from_log(-2000.0);
  CHECK(tiny.value() == 0.0);
  CHECK(tiny.log_value() == -2000.0);
  CHECK(tiny.underflowed());
  CHECK(tiny.log10_value() ==
        doctest::Approx(-2000.0 / std::numbers::ln10).epsilon(1e-14));

  const Probability zero = Probability::zero();
  CHECK(zero.value() == 0.0);
  CHECK(std::isinf(zero.log_value()));
  CHECK(!zero.underflowed());
  CHECK(Probability::one().value() == 1.0);

  CHECK_THROWS_AS(Probability::from_value(1.5), std::domain_error);
  CHECK_THROWS_AS(Probability::from_value(-0.1), std::domain_error);
  CHECK_THROWS_AS(Probability::from_log(0.5), std::domain_error);

  // representable values keep value == exp(log) to 1e-12 relative
  for (double lv : {-0.5, -30.0, -300.0, -690.0}) {
    const Probability q = Probability::from_log(lv);
    CHECK(q.value() == doctest::Approx(std::exp(lv)).epsilon(1e-12));
  }
}
