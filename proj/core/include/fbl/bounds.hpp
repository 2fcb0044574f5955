#pragma once

#include "fbl/distance.hpp"
#include "fbl/specfun.hpp"

namespace fbl {

// Decision region radius R(eps) = sigma * F_chi_n^{-1}(1 - eps).
// Strictly increasing in n, decreasing in eps.
double decision_radius(int n, double sigma, double epsilon);

// Total block error probability of a radius-R bounded decoder:
// eps(R) = P(||w|| >= R) = 1 - F_chi_n(R/sigma).
Probability bler_from_radius(int n, double sigma, double R);

// Pairwise block confusion rate between codewords at Euclidean distance D:
//   P_pair(D) = int_{(D-R)/sigma}^{(D+R)/sigma} f_chi_n(u)
//               Omega_n[cap_angle(sigma u, D, R)] du,
// evaluated by adaptive Gauss-Legendre panels in log domain. The result's
// underflowed() flag reports a linear-scale underflow.
Probability p_pair(int n, double sigma, double R, double D);

struct RateBounds {
  Probability epsilon;
  Probability pcon_lb;
  Probability pcon_ub;
  Probability pers_lb;  // max(0, eps - pcon_ub)
  Probability pers_ub;  // eps - pcon_lb
  bool feasible = false;
};

// Confusion-rate lower bound
//   C(n, dmax) (M-1)^dmax / M^(n-k) * P_pair(sqrt(delta2 * dmax)),
// assembled in log domain. Degenerates to exact 0 when dmax > n.
Probability p_con_lb(const SystemConfig& cfg,
                     DistanceUnit unit = DistanceUnit::paper);

// ln(M^k - 1); -inf for k = 0 (a single codeword cannot be confused).
double log_mk_minus_one(int M, int k);

// Confusion-rate upper bound (M^k - 1) * P_pair(sqrt(delta2 * dmin)),
// clamped to <= 1.
Probability p_con_ub(const SystemConfig& cfg,
                     DistanceUnit unit = DistanceUnit::paper);

// Confusion bounds plus the erasure band they imply.
RateBounds p_ers_bounds(const SystemConfig& cfg,
                        DistanceUnit unit = DistanceUnit::paper);

/// One fully evaluated operating point.
struct PointReport {
  SystemConfig cfg;
  DistanceUnit unit = DistanceUnit::paper;
  double E = 0.0;
  double R = 0.0;
  DistanceBounds dist;
  RateBounds rates;
};

PointReport compute_point(const SystemConfig& cfg,
                          DistanceUnit unit = DistanceUnit::paper);

// Same report with the decision radius given directly instead of derived
// from cfg.epsilon; the effective epsilon becomes bler_from_radius(.., R).
PointReport compute_point_at_radius(const SystemConfig& cfg, double R,
                                    DistanceUnit unit = DistanceUnit::paper);

}  // namespace fbl
