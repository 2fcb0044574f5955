#include "fbl/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fbl/geometry.hpp"
#include "fbl/quadrature.hpp"

namespace fbl {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

Probability p_con_lb_impl(const SystemConfig& cfg, const DistanceBounds& db,
                          double R) {
  if (db.dmin_max > cfg.n) return Probability::zero();  // vacuous bound
  const double log_neighbors =
      log_binomial(cfg.n, db.dmin_max) +
      db.dmin_max * std::log(static_cast<double>(cfg.M - 1)) -
      cfg.redundancy() * std::log(static_cast<double>(cfg.M));
  const Probability pair = p_pair(cfg.n, cfg.sigma(), R, db.Dmin_max);
  if (pair.log_value() == kNegInf) return Probability::zero();
  return Probability::from_log(
      std::min(0.0, log_neighbors + pair.log_value()));
}

Probability p_con_ub_impl(const SystemConfig& cfg, const DistanceBounds& db,
                          double R) {
  const Probability pair = p_pair(cfg.n, cfg.sigma(), R, db.Dmin_min);
  if (pair.log_value() == kNegInf) return Probability::zero();
  return Probability::from_log(
      std::min(0.0, log_mk_minus_one(cfg.M, cfg.k) + pair.log_value()));
}

RateBounds assemble_rate_bounds(const SystemConfig& cfg,
                                const DistanceBounds& db, double R,
                                double epsilon) {
  RateBounds rb;
  rb.epsilon = Probability::from_value(epsilon);
  rb.pcon_lb = p_con_lb_impl(cfg, db, R);
  rb.pcon_ub = p_con_ub_impl(cfg, db, R);
  rb.pers_ub =
      Probability::from_value(std::clamp(epsilon - rb.pcon_lb.value(), 0.0, 1.0));
  rb.pers_lb =
      Probability::from_value(std::clamp(epsilon - rb.pcon_ub.value(), 0.0, 1.0));
  rb.feasible = db.feasible;
  return rb;
}

DistanceBounds distance_bounds_at_radius(const SystemConfig& cfg, double R,
                                         DistanceUnit unit) {
  DistanceBounds b;
  const double ratio = 4.0 * R * R / cfg.total_energy();
  const double snapped = std::nearbyint(ratio);
  double v = ratio;
  if (snapped >= 1.0 && std::fabs(ratio - snapped) <= 1e-13 * std::fabs(ratio))
    v = snapped;
  b.dmin_min = std::max(1, static_cast<int>(std::ceil(v)));
  b.dmin_max = dmin_upper(cfg.M, cfg.n, cfg.k);
  const double delta2 = distance_unit_delta2(cfg, unit);
  b.Dmin_min = euclid_from_hamming(b.dmin_min, delta2);
  b.Dmin_max = euclid_from_hamming(b.dmin_max, delta2);
  b.feasible = b.dmin_min <= b.dmin_max;
  return b;
}

}  // namespace

double log_mk_minus_one(int M, int k) {
  if (M < 2) throw std::domain_error("log_mk_minus_one requires M >= 2");
  if (k < 0) throw std::domain_error("log_mk_minus_one requires k >= 0");
  const double log_mk = k * std::log(static_cast<double>(M));
  if (log_mk == 0.0) return kNegInf;  // single codeword, nothing to confuse
  // the minus-one correction only matters while M^k is representable
  return log_mk < 700.0 ? std::log(std::expm1(log_mk)) : log_mk;
}

double decision_radius(int n, double sigma, double epsilon) {
  if (!(sigma > 0.0)) throw std::domain_error("decision_radius: sigma > 0");
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::domain_error("decision_radius: epsilon in (0,1)");
  return sigma * chi_inv_cdf(n, 1.0 - epsilon);
}

Probability bler_from_radius(int n, double sigma, double R) {
  if (!(sigma > 0.0)) throw std::domain_error("bler_from_radius: sigma > 0");
  if (!(R >= 0.0)) throw std::domain_error("bler_from_radius: R >= 0");
  return chi_sf(n, R / sigma);
}

Probability p_pair(int n, double sigma, double R, double D) {
  if (n < 1) throw std::domain_error("p_pair requires n >= 1");
  if (!(sigma > 0.0)) throw std::domain_error("p_pair requires sigma > 0");
  if (!(R > 0.0)) throw std::domain_error("p_pair requires R > 0");
  if (!(D > 0.0)) throw std::domain_error("p_pair requires D > 0");

  const double u_lo = std::max((D - R) / sigma, 1e-300);
  const double u_hi = (D + R) / sigma;
  if (u_hi <= u_lo) return Probability::zero();

  auto log_integrand = [&](double u) {
    const CapAngle th = cap_angle(sigma * u, D, R);
    if (th.theta <= 0.0) return kNegInf;
    return chi_log_pdf(n, u) + angle_fraction(n, th).log_value();
  };
  const double log_integral =
      log_integrate_adaptive(log_integrand, u_lo, u_hi, 1e-9, 20);
  if (log_integral == kNegInf) return Probability::zero();
  return Probability::from_log(std::min(0.0, log_integral));
}

Probability p_con_lb(const SystemConfig& cfg, DistanceUnit unit) {
  cfg.validate();
  const DistanceBounds db = distance_bounds(cfg, unit);
  const double R = decision_radius(cfg.n, cfg.sigma(), cfg.epsilon);
  return p_con_lb_impl(cfg, db, R);
}

Probability p_con_ub(const SystemConfig& cfg, DistanceUnit unit) {
  cfg.validate();
  const DistanceBounds db = distance_bounds(cfg, unit);
  const double R = decision_radius(cfg.n, cfg.sigma(), cfg.epsilon);
  return p_con_ub_impl(cfg, db, R);
}

RateBounds p_ers_bounds(const SystemConfig& cfg, DistanceUnit unit) {
  cfg.validate();
  const DistanceBounds db = distance_bounds(cfg, unit);
  const double R = decision_radius(cfg.n, cfg.sigma(), cfg.epsilon);
  return assemble_rate_bounds(cfg, db, R, cfg.epsilon);
}

PointReport compute_point(const SystemConfig& cfg, DistanceUnit unit) {
  cfg.validate();
  PointReport rep;
  rep.cfg = cfg;
  rep.unit = unit;
  rep.E = cfg.total_energy();
  rep.R = decision_radius(cfg.n, cfg.sigma(), cfg.epsilon);
  rep.dist = distance_bounds(cfg, unit);
  rep.rates = assemble_rate_bounds(cfg, rep.dist, rep.R, cfg.epsilon);
  return rep;
}

PointReport compute_point_at_radius(const SystemConfig& cfg, double R,
                                    DistanceUnit unit) {
  cfg.validate();
  if (!(R > 0.0)) throw std::domain_error("compute_point_at_radius: R > 0");
  PointReport rep;
  rep.cfg = cfg;
  rep.unit = unit;
  rep.E = cfg.total_energy();
  rep.R = R;
  const double eps_eff = bler_from_radius(cfg.n, cfg.sigma(), R).value();
  rep.cfg.epsilon = eps_eff;
  rep.dist = distance_bounds_at_radius(cfg, R, unit);
  rep.rates = assemble_rate_bounds(cfg, rep.dist, R, eps_eff);
  return rep;
}

}  // namespace fbl
