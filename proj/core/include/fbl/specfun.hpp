#pragma once

#include <cstdint>
#include <limits>

namespace fbl {

/// A probability carried in both linear and natural-log form.
///
/// The log companion is the primary representation for quantities that live
/// far below double range (confusion bounds reach 1e-100 and beyond); the
/// linear value is presentation. value() == exp(log_value()) whenever the
/// linear value is representable.
class Probability {
 public:
  Probability() = default;

  static Probability from_value(double v);
  static Probability from_log(double log_v);
  static Probability zero() { return Probability(); }
  static Probability one() { return from_log(0.0); }

  double value() const { return value_; }
  double log_value() const { return log_value_; }
  double log10_value() const;

  /// True when the linear value underflowed to 0 but the log value is a
  /// finite (meaningful) magnitude.
  bool underflowed() const {
    return value_ == 0.0 && log_value_ > -std::numeric_limits<double>::infinity();
  }

 private:
  double value_ = 0.0;
  double log_value_ = -std::numeric_limits<double>::infinity();
};

// ln Gamma(s) for s > 0. Stirling series for large s, Lanczos below.
double log_gamma(double s);

// Regularized lower incomplete gamma P(s,x) = gamma(s,x)/Gamma(s).
// Power series for x < s+1, Lentz continued fraction otherwise.
Probability reg_lower_gamma(double s, double x);

// Regularized upper incomplete gamma Q(s,x) = 1 - P(s,x), accurate in the
// far tail where P is indistinguishable from 1.
Probability reg_upper_gamma(double s, double x);

// CDF of the chi distribution with n degrees of freedom: P(n/2, x^2/2).
Probability chi_cdf(int n, double x);

// Survival function 1 - chi_cdf(n, x), log-accurate in the tail.
Probability chi_sf(int n, double x);

// Quantile of the chi distribution: the x with chi_cdf(n, x) = p, resolved
// to 1e-12 in probability space. p must lie in [0, 1).
double chi_inv_cdf(int n, double p);

// ln of the chi density f_{chi_n}(u), u > 0.
double chi_log_pdf(int n, double u);

// ln C(n, l) via log_gamma. Requires 0 <= l <= n.
double log_binomial(long long n, long long l);

// Regularized incomplete beta I_x(a, b).
Probability reg_inc_beta(double a, double b, double x);

// ln I_x(a, b), accurate when I_x underflows the linear scale.
double log_reg_inc_beta(double a, double b, double x);

}  // namespace fbl
