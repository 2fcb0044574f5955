#pragma once

#include "fbl/specfun.hpp"

namespace fbl {

/// Half-angle of a hyperspherical cap, radians in [0, pi].
struct CapAngle {
  double theta = 0.0;
};

// Cap angle of the intersection of the sphere of radius noise_norm centered
// at the origin with the ball of radius R centered at distance D:
//   theta = arccos((noise_norm^2 + D^2 - R^2) / (2 noise_norm D)).
// Outside the intersecting regime the sentinels apply: empty cap (theta = 0)
// when the sphere misses the ball, full cap (theta = pi) when R >= D +
// noise_norm and the ball swallows the sphere.
CapAngle cap_angle(double noise_norm, double D, double R);

// Fraction of the (n-1)-sphere surface covered by a cap of half-angle theta:
//   Omega_n(theta) = int_0^theta sin^(n-2) / int_0^pi sin^(n-2),
// evaluated through the regularized incomplete beta
//   Omega_n(theta) = 1/2 I_{sin^2 theta}((n-1)/2, 1/2)        theta <= pi/2
//                  = 1 - 1/2 I_{sin^2 theta}((n-1)/2, 1/2)    otherwise.
// The log companion stays meaningful when the fraction underflows.
Probability angle_fraction(int n, CapAngle theta);

// Independent route for the same quantity: adaptive quadrature of
// sin^(n-2). Kept separate so the two computations can be checked against
// each other; not used by the beta route.
double angle_fraction_quadrature(int n, CapAngle theta);

}  // namespace fbl
