#pragma once

#include <array>
#include <functional>

namespace fbl {

// 64-point Gauss-Legendre rule on [-1, 1].
const std::array<double, 64>& gl64_nodes();
const std::array<double, 64>& gl64_weights();

// Adaptive Gauss-Legendre quadrature: 64-point panels, recursive bisection
// until the relative change between a panel and its two halves drops below
// rel_tol or max_depth levels are reached.
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double rel_tol = 1e-10, int max_depth = 20);

// Same scheme carried entirely in log domain (log-sum-exp over nodes), for
// integrands whose values underflow the linear scale. log_f returns ln f(x)
// and may return -inf. The result is ln of the integral.
double log_integrate_adaptive(const std::function<double(double)>& log_f,
                              double a, double b, double log_tol = 1e-9,
                              int max_depth = 20);

// log(exp(a) + exp(b)) without leaving log domain.
double log_add(double a, double b);

}  // namespace fbl
