#include "fbl/quadrature.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace fbl {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct Gl64Rule {
  std::array<double, 64> nodes{};
  std::array<double, 64> weights{};
};

// Newton iteration on P_64 roots (standard Golub-Welsch-free construction).
Gl64Rule build_gl64() {
  constexpr int n = 64;
  Gl64Rule rule;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / pp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

const Gl64Rule& gl64() {
  static const Gl64Rule rule = build_gl64();
  return rule;
}

double panel_linear(const std::function<double(double)>& f, double a, double b) {
  const auto& rule = gl64();
  const double h = 0.5 * (b - a);
  const double m = 0.5 * (a + b);
  double sum = 0.0;
  for (int i = 0; i < 64; ++i) sum += rule.weights[i] * f(m + h * rule.nodes[i]);
  return sum * h;
}

double panel_log(const std::function<double(double)>& log_f, double a,
                 double b) {
  const auto& rule = gl64();
  const double h = 0.5 * (b - a);
  const double m = 0.5 * (a + b);
  double max_term = kNegInf;
  std::array<double, 64> terms;
  for (int i = 0; i < 64; ++i) {
    double lf = log_f(m + h * rule.nodes[i]);
    terms[i] = lf + std::log(rule.weights[i]);
    if (terms[i] > max_term) max_term = terms[i];
  }
  if (max_term == kNegInf) return kNegInf;
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - max_term);
  return max_term + std::log(sum) + std::log(h);
}

double adapt_linear(const std::function<double(double)>& f, double a, double b,
                    double whole, double rel_tol, int depth, int max_depth) {
  const double mid = 0.5 * (a + b);
  const double left = panel_linear(f, a, mid);
  const double right = panel_linear(f, mid, b);
  const double refined = left + right;
  if (depth >= max_depth ||
      std::fabs(refined - whole) <=
          rel_tol * std::fabs(refined) + 1e-320)
    return refined;
  return adapt_linear(f, a, mid, left, rel_tol, depth + 1, max_depth) +
         adapt_linear(f, mid, b, right, rel_tol, depth + 1, max_depth);
}

double adapt_log(const std::function<double(double)>& log_f, double a, double b,
                 double whole, double log_tol, int depth, int max_depth) {
  const double mid = 0.5 * (a + b);
  const double left = panel_log(log_f, a, mid);
  const double right = panel_log(log_f, mid, b);
  const double refined = log_add(left, right);
  if (refined == kNegInf && whole == kNegInf) return kNegInf;
  if (depth >= max_depth || std::fabs(refined - whole) <= log_tol)
    return refined;
  return log_add(adapt_log(log_f, a, mid, left, log_tol, depth + 1, max_depth),
                 adapt_log(log_f, mid, b, right, log_tol, depth + 1, max_depth));
}

}  // namespace

const std::array<double, 64>& gl64_nodes() { return gl64().nodes; }
const std::array<double, 64>& gl64_weights() { return gl64().weights; }

double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double rel_tol, int max_depth) {
  if (!(a <= b)) throw std::invalid_argument("integrate_adaptive: a > b");
  if (a == b) return 0.0;
  return adapt_linear(f, a, b, panel_linear(f, a, b), rel_tol, 0, max_depth);
}

double log_integrate_adaptive(const std::function<double(double)>& log_f,
                              double a, double b, double log_tol,
                              int max_depth) {
  if (!(a <= b)) throw std::invalid_argument("log_integrate_adaptive: a > b");
  if (a == b) return kNegInf;
  return adapt_log(log_f, a, b, panel_log(log_f, a, b), log_tol, 0, max_depth);
}

}  // namespace fbl
