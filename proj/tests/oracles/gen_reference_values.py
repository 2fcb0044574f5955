#!/usr/bin/env python3
"""Generates the frozen reference constants used by the C++ test suites.

Everything here is computed with mpmath at 50-digit working precision,
independently of the library code under test. Re-run and paste the output
into the test sources if a constant ever needs to change.
"""

import mpmath as mp

mp.mp.dps = 50


def chi_cdf(n, x):
    # F_chi_n(x) = P(n/2, x^2/2), regularized lower incomplete gamma
    return mp.gammainc(mp.mpf(n) / 2, 0, mp.mpf(x) ** 2 / 2, regularized=True)


def chi_quantile(n, p):
    lo, hi = mp.mpf(0), mp.mpf(10)
    while chi_cdf(n, hi) < p:
        hi *= 2
    for _ in range(300):
        mid = (lo + hi) / 2
        if chi_cdf(n, mid) < p:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def chi_log_pdf(n, u):
    n = mp.mpf(n)
    return (1 - n / 2) * mp.log(2) + (n - 1) * mp.log(u) - u * u / 2 - mp.loggamma(n / 2)


def omega(n, theta):
    # hypersphere cap fraction via mpmath's regularized incomplete beta
    # (hypergeometric evaluation, independent of the continued-fraction
    # route in the library). For n >= 3 the sin^(n-2) integrand peaks so
    # sharply at the right edge that naive quadrature loses mass; betainc
    # and an edge-refined quadrature agree to full precision.
    x = mp.sin(theta) ** 2
    a = mp.mpf(n - 1) / 2
    half = mp.betainc(a, mp.mpf("0.5"), 0, x, regularized=True) / 2
    return half if theta <= mp.pi / 2 else 1 - half


def omega_quad_check(n, theta):
    # edge-refined quadrature cross-check for omega
    pts = [0, theta * mp.mpf("0.9"), theta * mp.mpf("0.99"),
           theta * mp.mpf("0.999"), theta]
    num = mp.quad(lambda p: mp.sin(p) ** (n - 2), pts)
    den = mp.quad(lambda p: mp.sin(p) ** (n - 2), [0, mp.pi / 2, mp.pi])
    return num / den


def p_pair(n, sigma, R, D):
    lo = (D - R) / sigma
    hi = (D + R) / sigma

    def integrand(u):
        r = sigma * u
        c = (r * r + D * D - R * R) / (2 * r * D)
        c = max(min(c, mp.mpf(1)), mp.mpf(-1))
        th = mp.acos(c)
        if th == 0:
            return mp.mpf(0)
        return mp.e ** chi_log_pdf(n, u) * omega(n, th)

    return mp.quad(integrand, [lo, (lo + hi) / 2, hi])


def show(label, v, digits=30):
    print(f"{label} = {mp.nstr(v, digits)}")


print("== chi quantiles ==")
q32 = chi_quantile(32, mp.mpf("0.95"))
show("F_chi32_inv(0.95)", q32)
# paper operating point: sigma^2=0.5, E=16 (k=16, Eb/N0=0 dB)
ratio = 4 * mp.mpf("0.5") * q32 * q32 / 16
show("4R^2/E at (n=32,k=16,eps=0.05,s2=0.5,E=16)", ratio)
print("ceil =", mp.ceil(ratio))
show("F_chi16_inv(0.95)", chi_quantile(16, mp.mpf("0.95")))
show("F_chi128_inv(0.95)", chi_quantile(128, mp.mpf("0.95")))

print("== chi cdf values ==")
show("chi_cdf(3,1)", chi_cdf(3, 1))
show("log chi_sf(32,10)", mp.log(mp.gammainc(mp.mpf(16), 50, mp.inf, regularized=True)))

print("== cap fractions ==")
show("omega(8, 1.0)", omega(8, mp.mpf(1)))
show("omega(32, 0.5)", omega(32, mp.mpf("0.5")))
show("log omega(64, 0.1)", mp.log(omega(64, mp.mpf("0.1"))))

print("== pairwise confusion integrals ==")
show("log p_pair(n=8,sigma=1,R=2,D=4.5)", mp.log(p_pair(8, mp.mpf(1), mp.mpf(2), mp.mpf("4.5"))))
show("log p_pair(n=16,sigma=1,R=3,D=6.6)", mp.log(p_pair(16, mp.mpf(1), mp.mpf(3), mp.mpf("6.6"))))
show("log p_pair(n=64,sigma=1,R=5,D=11)", mp.log(p_pair(64, mp.mpf(1), mp.mpf(5), mp.mpf(11))))
show("log p_pair(n=2,sigma=1,R=2.447746830680816,D=4.895493661361632)",
     mp.log(p_pair(2, mp.mpf(1), mp.mpf("2.447746830680816"), mp.mpf("4.895493661361632"))))
