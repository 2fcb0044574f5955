#include "fbl/distance.hpp"

#include <gmp.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "fbl/bounds.hpp"
#include "fbl/quadrature.hpp"
#include "fbl/specfun.hpp"

namespace fbl {

namespace {

constexpr int kExactVolumeLimit = 512;  // exact big-int route up to this n
constexpr double kLogGuardBand = 1e-12;

struct Mpz {
  mpz_t v;
  Mpz() { mpz_init(v); }
  explicit Mpz(unsigned long x) { mpz_init_set_ui(v, x); }
  ~Mpz() { mpz_clear(v); }
  Mpz(const Mpz&) = delete;
  Mpz& operator=(const Mpz&) = delete;
};

double mpz_log(const mpz_t v) {
  signed long e = 0;
  double d = mpz_get_d_2exp(&e, v);
  return std::log(d) + static_cast<double>(e) * std::numbers::ln2;
}

// Walks V_n(t) = sum_{l<=t} C(n,l)(M-1)^l exactly, term by term.
class VolumeWalker {
 public:
  VolumeWalker(int M, int n) : M_(M), n_(n) {
    mpz_set_ui(term_.v, 1);  // l = 0 term
    mpz_set_ui(sum_.v, 1);
    l_ = 0;
  }

  // advances from l to l+1: term *= (n-l)/(l+1) * (M-1)
  void advance() {
    mpz_mul_ui(term_.v, term_.v, static_cast<unsigned long>(n_ - l_));
    mpz_divexact_ui(term_.v, term_.v, static_cast<unsigned long>(l_ + 1));
    mpz_mul_ui(term_.v, term_.v, static_cast<unsigned long>(M_ - 1));
    mpz_add(sum_.v, sum_.v, term_.v);
    ++l_;
  }

  void advance_to(int t) {
    while (l_ < t) advance();
  }

  int level() const { return l_; }
  const mpz_t& sum() const { return sum_.v; }
  double log_sum() const { return mpz_log(sum_.v); }

 private:
  int M_, n_, l_;
  Mpz term_, sum_;
};

void check_volume_args(int M, int n, int t) {
  if (M < 2) throw std::domain_error("hamming_volume_log requires M >= 2");
  if (n < 0 || t < 0 || t > n)
    throw std::domain_error("hamming_volume_log requires 0 <= t <= n");
}

}  // namespace

namespace detail {

double hamming_volume_log_exact(int M, int n, int t) {
  check_volume_args(M, n, t);
  VolumeWalker w(M, n);
  w.advance_to(t);
  return w.log_sum();
}

double hamming_volume_log_lse(int M, int n, int t) {
  check_volume_args(M, n, t);
  const double log_m1 = std::log(static_cast<double>(M - 1));
  double acc = -std::numeric_limits<double>::infinity();
  for (int l = 0; l <= t; ++l)
    acc = log_add(acc, log_binomial(n, l) + l * log_m1);
  return acc;
}

int compare_volume_exact(int M, int n, int t, int r) {
  check_volume_args(M, n, t);
  VolumeWalker w(M, n);
  w.advance_to(t);
  Mpz mr;
  mpz_ui_pow_ui(mr.v, static_cast<unsigned long>(M),
                static_cast<unsigned long>(r));
  return mpz_cmp(w.sum(), mr.v);
}

}  // namespace detail

double hamming_volume_log(int M, int n, int t) {
  return n <= kExactVolumeLimit ? detail::hamming_volume_log_exact(M, n, t)
                                : detail::hamming_volume_log_lse(M, n, t);
}

int dmin_upper(int M, int n, int k) {
  if (M < 2) throw std::domain_error("dmin_upper requires M >= 2");
  if (k < 1 || k > n) throw std::domain_error("dmin_upper requires 1 <= k <= n");
  const int r = n - k;

  if (n <= kExactVolumeLimit) {
    VolumeWalker w(M, n);
    Mpz mr;
    mpz_ui_pow_ui(mr.v, static_cast<unsigned long>(M),
                  static_cast<unsigned long>(r));
    for (int t = 0; t <= n; ++t) {
      if (t > 0) w.advance();
      if (mpz_cmp(w.sum(), mr.v) > 0) return 2 * t;
    }
  } else {
    // log-domain scan; ties inside the guard band go back to exact integers
    const double log_mr = r * std::log(static_cast<double>(M));
    const double log_m1 = std::log(static_cast<double>(M - 1));
    double acc = -std::numeric_limits<double>::infinity();
    for (int t = 0; t <= n; ++t) {
      acc = log_add(acc, log_binomial(n, t) + t * log_m1);
      double guard = kLogGuardBand * std::max(1.0, std::fabs(log_mr));
      if (std::fabs(acc - log_mr) <= guard) {
        if (detail::compare_volume_exact(M, n, t, r) > 0) return 2 * t;
      } else if (acc > log_mr) {
        return 2 * t;
      }
    }
  }
  // unreachable: V_n(n) = M^n > M^r for k >= 1
  throw std::logic_error("dmin_upper: threshold not found");
}

int dmin_lower(const SystemConfig& cfg) {
  cfg.validate();
  const double R = decision_radius(cfg.n, cfg.sigma(), cfg.epsilon);
  const double ratio = 4.0 * R * R / cfg.total_energy();
  // Snap near-integer ratios before the ceiling so exact lattice points
  // (E = 4R^2/i) land on i despite roundoff.
  const double snapped = std::nearbyint(ratio);
  double v = ratio;
  if (snapped >= 1.0 && std::fabs(ratio - snapped) <= 1e-13 * std::fabs(ratio))
    v = snapped;
  return std::max(1, static_cast<int>(std::ceil(v)));
}

double euclid_from_hamming(int d, double delta2) {
  if (d < 0) throw std::domain_error("euclid_from_hamming requires d >= 0");
  if (!(delta2 > 0.0))
    throw std::domain_error("euclid_from_hamming requires delta2 > 0");
  return std::sqrt(delta2 * static_cast<double>(d));
}

DistanceBounds distance_bounds(const SystemConfig& cfg, DistanceUnit unit) {
  cfg.validate();
  DistanceBounds b;
  b.dmin_min = dmin_lower(cfg);
  b.dmin_max = dmin_upper(cfg.M, cfg.n, cfg.k);
  const double delta2 = distance_unit_delta2(cfg, unit);
  b.Dmin_min = euclid_from_hamming(b.dmin_min, delta2);
  b.Dmin_max = euclid_from_hamming(b.dmin_max, delta2);
  b.feasible = b.dmin_min <= b.dmin_max;
  return b;
}

double entropy_M(int M, double delta) {
  if (M < 2) throw std::domain_error("entropy_M requires M >= 2");
  if (!(delta >= 0.0 && delta <= 1.0))
    throw std::domain_error("entropy_M requires delta in [0,1]");
  const double ln_m = std::log(static_cast<double>(M));
  double h = delta * std::log(static_cast<double>(M - 1));
  if (delta > 0.0) h -= delta * std::log(delta);
  if (delta < 1.0) h -= (1.0 - delta) * std::log1p(-delta);
  return h / ln_m;
}

double entropy_M_inverse(int M, double y) {
  if (M < 2) throw std::domain_error("entropy_M_inverse requires M >= 2");
  if (!(y >= 0.0 && y <= 1.0))
    throw std::domain_error("entropy_M_inverse requires y in [0,1]");
  if (y == 0.0) return 0.0;
  double lo = 0.0;
  double hi = static_cast<double>(M - 1) / M;
  if (y >= 1.0) return hi;
  for (int i = 0; i < 200 && hi - lo > 1e-13; ++i) {
    double mid = 0.5 * (lo + hi);
    (entropy_M(M, mid) < y ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double lambda_bound(int M, int k, int n) {
  if (n < 1) throw std::domain_error("lambda_bound requires n >= 1");
  const double ln_m = std::log(static_cast<double>(M));
  double arg = 1.0 - (k - std::log(n + 1.0) / ln_m) / n;
  arg = std::clamp(arg, 0.0, 1.0);
  return 2.0 * entropy_M_inverse(M, arg) + 1.0 / n;
}

double lambda_bound_k_only(int M, int k) {
  if (k < 1) throw std::domain_error("lambda_bound_k_only requires k >= 1");
  return 2.0 * entropy_M_inverse(M, 1.0 / (k + 1.0));
}

double SystemConfig::total_energy() const {
  switch (energy_mode) {
    case EnergyMode::per_symbol_es:
      return n * energy_value;
    case EnergyMode::total_e:
      return energy_value;
    case EnergyMode::ebn0_db:
      return k * std::pow(10.0, energy_value / 10.0) * 2.0 * sigma2;
  }
  throw std::logic_error("unknown energy mode");
}

double SystemConfig::sigma() const { return std::sqrt(sigma2); }

void SystemConfig::validate() const {
  if (M < 2) throw std::invalid_argument("M must be >= 2");
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (k > n) throw std::invalid_argument("k must not exceed n");
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("epsilon must lie in (0,1)");
  if (!(sigma2 > 0.0)) throw std::invalid_argument("sigma2 must be positive");
  if (energy_mode != EnergyMode::ebn0_db && !(energy_value > 0.0))
    throw std::invalid_argument("energy must be positive");
  if (!(total_energy() > 0.0))
    throw std::invalid_argument("derived total energy must be positive");
}

double distance_unit_delta2(const SystemConfig& cfg, DistanceUnit unit) {
  switch (unit) {
    case DistanceUnit::paper:
      return cfg.total_energy();
    case DistanceUnit::antipodal:
      return 4.0 * cfg.symbol_energy();
    case DistanceUnit::orthogonal:
      return 2.0 * cfg.symbol_energy();
  }
  throw std::logic_error("unknown distance unit");
}

DistanceUnit distance_unit_from_string(const std::string& s) {
  if (s == "paper") return DistanceUnit::paper;
  if (s == "antipodal") return DistanceUnit::antipodal;
  if (s == "orthogonal") return DistanceUnit::orthogonal;
  throw std::invalid_argument("unknown distance unit: " + s);
}

const char* to_string(DistanceUnit u) {
  switch (u) {
    case DistanceUnit::paper:
      return "paper";
    case DistanceUnit::antipodal:
      return "antipodal";
    case DistanceUnit::orthogonal:
      return "orthogonal";
  }
  return "?";
}

}  // namespace fbl
