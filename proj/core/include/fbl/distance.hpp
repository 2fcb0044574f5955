#pragma once

#include <string>

namespace fbl {

enum class EnergyMode { per_symbol_es, total_e, ebn0_db };

// Unit of squared Euclidean distance per differing symbol, used to map
// Hamming distances to Euclidean ones. `paper` uses the total codeword
// energy E; `antipodal` uses 4*Es (binary +-sqrt(Es) symbols); `orthogonal`
// uses 2*Es.
enum class DistanceUnit { paper, antipodal, orthogonal };

DistanceUnit distance_unit_from_string(const std::string& s);
const char* to_string(DistanceUnit u);

/// The parameter tuple every bound is a function of.
struct SystemConfig {
  int M = 2;             // alphabet size
  int n = 0;             // blocklength
  int k = 0;             // payload length
  double epsilon = 0.05; // BLER budget
  double sigma2 = 0.5;   // per-dimension noise variance
  EnergyMode energy_mode = EnergyMode::ebn0_db;
  double energy_value = 0.0;  // Es, E, or Eb/N0 in dB depending on mode

  // Total codeword energy E. For ebn0_db mode, N0 = 2 sigma^2 and Eb = E/k,
  // so E = k * 10^(dB/10) * 2 sigma^2.
  double total_energy() const;
  double symbol_energy() const { return total_energy() / n; }
  double sigma() const;
  int redundancy() const { return n - k; }

  void validate() const;  // throws std::invalid_argument
};

double distance_unit_delta2(const SystemConfig& cfg, DistanceUnit unit);

struct DistanceBounds {
  int dmin_min = 0;      // ceil(4 R^2 / E), >= 1
  int dmin_max = 0;      // Hamming-bound threshold, even; may exceed n
  double Dmin_min = 0.0; // sqrt(delta2 * dmin_min)
  double Dmin_max = 0.0;
  bool feasible = false; // dmin_min <= dmin_max
};

// ln V_n(t) where V_n(t) = sum_{l=0..t} C(n,l) (M-1)^l. Exact big-integer
// summation for n <= 512, log-sum-exp of the terms beyond.
double hamming_volume_log(int M, int n, int t);

// Smallest permissible minimum Hamming distance: ceil(4 R^2(eps) / E).
int dmin_lower(const SystemConfig& cfg);

// Largest achievable minimum Hamming distance per the Hamming bound:
// 2 * min{ t : V_n(t) > M^(n-k) }.
int dmin_upper(int M, int n, int k);

// sqrt(delta2 * d).
double euclid_from_hamming(int d, double delta2);

DistanceBounds distance_bounds(const SystemConfig& cfg,
                               DistanceUnit unit = DistanceUnit::paper);

// M-ary entropy H_M(delta) = delta log_M(M-1) - delta log_M delta
//                            - (1-delta) log_M(1-delta).
double entropy_M(int M, double delta);

// Increasing-branch inverse: the delta in [0, (M-1)/M] with H_M(delta) = y.
double entropy_M_inverse(int M, double y);

// n-dependent bound on d_min_max(n)/n:
//   2 H_M^{-1}(1 - (k - log_M(n+1))/n) + 1/n,
// with the inverse's argument clamped into [0, 1].
double lambda_bound(int M, int k, int n);

// k-only variant: 2 H_M^{-1}(1/(k+1)). Below 1/M whenever
// k > 2M/log_M(2M^2) - 1.
double lambda_bound_k_only(int M, int k);

namespace detail {
double hamming_volume_log_exact(int M, int n, int t);
double hamming_volume_log_lse(int M, int n, int t);
// sign of V_n(t) - M^r, exact integer arithmetic
int compare_volume_exact(int M, int n, int t, int r);
}  // namespace detail

}  // namespace fbl
