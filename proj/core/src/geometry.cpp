#include "fbl/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fbl/quadrature.hpp"

namespace fbl {

CapAngle cap_angle(double noise_norm, double D, double R) {
  if (!(D > 0.0)) throw std::domain_error("cap_angle requires D > 0");
  if (!(R > 0.0)) throw std::domain_error("cap_angle requires R > 0");
  if (!(noise_norm > 0.0))
    throw std::domain_error("cap_angle requires noise_norm > 0");
  if (R >= D + noise_norm) return {std::numbers::pi};  // ball swallows sphere
  if (noise_norm < D - R || noise_norm > D + R) return {0.0};
  double c = (noise_norm * noise_norm + D * D - R * R) / (2.0 * noise_norm * D);
  c = std::clamp(c, -1.0, 1.0);
  return {std::acos(c)};
}

Probability angle_fraction(int n, CapAngle theta) {
  if (n < 2) throw std::domain_error("angle_fraction requires n >= 2");
  const double th = theta.theta;
  if (!(th >= 0.0 && th <= std::numbers::pi))
    throw std::domain_error("angle_fraction requires theta in [0, pi]");
  if (th == 0.0) return Probability::zero();
  if (th == std::numbers::pi) return Probability::one();

  const double a = 0.5 * (n - 1);
  const double s = std::sin(th);
  const double s2 = s * s;
  if (th <= 0.5 * std::numbers::pi) {
    return Probability::from_log(std::log(0.5) +
                                 log_reg_inc_beta(a, 0.5, s2));
  }
  double upper = 0.5 * reg_inc_beta(a, 0.5, s2).value();
  return Probability::from_log(std::log1p(-upper));
}

double angle_fraction_quadrature(int n, CapAngle theta) {
  if (n < 2) throw std::domain_error("angle_fraction requires n >= 2");
  const double th = theta.theta;
  if (!(th >= 0.0 && th <= std::numbers::pi))
    throw std::domain_error("angle_fraction requires theta in [0, pi]");
  auto integrand = [n](double phi) {
    return std::pow(std::sin(phi), static_cast<double>(n - 2));
  };
  const double numer = integrate_adaptive(integrand, 0.0, th, 1e-12);
  const double denom =
      integrate_adaptive(integrand, 0.0, std::numbers::pi, 1e-12);
  return numer / denom;
}

}  // namespace fbl
