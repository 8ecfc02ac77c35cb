#!/usr/bin/env python3
"""Independent reference values frozen into the C++ unit tests.

Everything here is computed with mpmath (50 significant digits) or
scipy quadrature, i.e. by routes that share no code with the library:
special-function probes, the CLT parameters of the log-GLRT null, Roy
location/scale parameters, exact finite-sample moments via
digamma/trigamma sums, and bulk-CDF probe values.

Run from the repository root:  python3 scripts/oracle_reference.py
"""

import mpmath as mp
import numpy as np
from scipy.integrate import quad

mp.mp.dps = 50


def em(x, n=17):
    return mp.nstr(x, n, strip_zeros=False)


def header(s):
    print(f"\n// ---- {s} ----")


def clt_params(M, N):
    """Log-GLRT asymptotic mean/std and shifted-gamma parameters."""
    M, N = mp.mpf(M), mp.mpf(N)
    g = M / N
    m = M * (mp.log(g / (g - 1)) + ((g - 2) / g) * mp.log((g - 2) / (g - 1))) \
        + mp.mpf('0.5') * mp.log(g / (g - 2))
    s2 = 2 * (mp.log((g - 1) ** 2 / (g * (g - 2))) + (1 / M) * (1 / (g - 2)))
    s = mp.sqrt(s2)
    q = N * (N + 1) / 2
    p = mp.sqrt(1 / q)
    alpha = m - p * q * s
    return m, s, q, p, alpha


def exact_moments(N, M, b_num=None):
    """Finite-sample mean/variance of T' from digamma/trigamma sums.

    b_num overrides the second beta shape numerator (N+1 by default;
    N for the real-CCA parameterization).
    """
    if b_num is None:
        b_num = N + 1
    b = mp.mpf(b_num) / 2
    mean = mp.mpf(0)
    var = mp.mpf(0)
    for n in range(1, N + 1):
        a = mp.mpf(M - N - n + 1) / 2
        mean += mp.digamma(a + b) - mp.digamma(a)
        var += mp.polygamma(1, a) - mp.polygamma(1, a + b)
    return mean, var


def roy_params(N, M):
    Mf = mp.mpf(M)
    psi = mp.acos((Mf - 2 * N + 1) / Mf)
    phi = mp.acos((Mf - 2 * N - 1) / Mf)
    mu = 2 * mp.log(mp.tan((phi + psi) / 2))
    sigma3 = (16 / Mf ** 2) / (mp.sin(phi + psi) ** 2 * mp.sin(psi) * mp.sin(phi))
    return psi, phi, mu, mp.cbrt(sigma3)


def bulk_cdf(gamma, r):
    """CDF of the limiting bulk law by quadrature with t = asin(sqrt(x/c))."""
    c = 4 * (gamma - 1) / gamma ** 2
    if r <= 0:
        return 0.0
    r = min(r, c)

    def integrand(t):
        x = c * np.sin(t) ** 2
        disc = 4 * (gamma - 1) * (1 - x) / x - (gamma - 2) ** 2
        f = np.sqrt(max(disc, 0.0)) / (2 * np.pi * (1 - x))
        return f * 2 * c * np.sin(t) * np.cos(t)

    t1 = np.arcsin(np.sqrt(r / c))
    val, err = quad(integrand, 0.0, t1, epsabs=1e-13, epsrel=1e-13, limit=400)
    assert err < 1e-10
    return val


def main():
    header("lgamma / digamma / trigamma (arg >= 0.5)")
    for x in ['0.5', '1', '1.5', '2.5', '7.25', '10.25', '100.5', '1000.75', '20100']:
        xf = mp.mpf(x)
        print(f"{{{x}, {em(mp.loggamma(xf))}, {em(mp.digamma(xf))}, "
              f"{em(mp.polygamma(1, xf))}}},")

    header("regularized lower incomplete gamma P(a,x)")
    for a, x in [('0.5', '0.25'), ('1', '1'), ('2.5', '1.3'), ('10', '9.5'),
                 ('100', '95'), ('1000', '1050'), ('20100', '20300.5')]:
        af, xf = mp.mpf(a), mp.mpf(x)
        print(f"{{{a}, {x}, {em(mp.gammainc(af, 0, xf, regularized=True))}}},")

    header("standard normal quantile (and CDF at the quantile)")
    for p in ['1e-6', '0.005', '0.01', '0.025', '0.05', '0.5', '0.95', '0.99',
              '0.995', '0.999999']:
        pf = mp.mpf(p)
        z = mp.sqrt(2) * mp.erfinv(2 * pf - 1)
        print(f"{{{p}, {em(z)}}},")

    header("glrt clt params {M, N, m, s, alpha_shift} (q, p implied)")
    for M, N in [(10, 4), (100, 20), (1000, 200), (2000, 400),
                 (250, 100), (500, 100), (4000, 4), (1000000, 10)]:
        m, s, q, p, alpha = clt_params(M, N)
        print(f"{{{M}, {N}, {em(m)}, {em(s)}, {em(alpha)}}},")

    header("roy params {N, M, psi, phi, mu, sigma}")
    for N, M in [(100, 250), (100, 500), (10, 40), (50, 500), (4, 10), (3, 7)]:
        psi, phi, mu, sigma = roy_params(N, M)
        print(f"{{{N}, {M}, {em(psi)}, {em(phi)}, {em(mu)}, {em(sigma)}}},")

    header("exact T' moments {N, M, mean, variance}")
    for N, M in [(1, 4), (10, 40), (50, 500), (100, 250), (100, 500),
                 (200, 1000), (4, 4000)]:
        mean, var = exact_moments(N, M)
        print(f"{{{N}, {M}, {em(mean)}, {em(var)}}},")
    print("// N=1, M=4 mean minus 2/3 =", em(exact_moments(1, 4)[0] - mp.mpf(2) / 3, 3))

    header("cca-offset cross-check at (N=50, M=500)")
    mean_improp, _ = exact_moments(50, 500)
    mean_cca, _ = exact_moments(50, 500, b_num=50)
    diff = mean_cca - mean_improp
    print(f"// exact mean difference (cca - improp) = {em(diff)}")
    print(f"// ln((gamma-1)/gamma) = ln(9/10)       = {em(mp.log(mp.mpf(9) / 10))}")
    print(f"// gap between the two                  = {em(diff - mp.log(mp.mpf(9) / 10), 3)}")
    m500, s500, *_ = clt_params(500, 50)
    print(f"// thm-6 m at (500,50) = {em(m500)}  vs exact mean {em(mean_improp)}")

    header("clt-vs-exact consistency (fixed N, growing M)")
    for N, M in [(10, 1000), (10, 100000)]:
        m, s, *_ = clt_params(M, N)
        mean, var = exact_moments(N, M)
        print(f"// N={N} M={M}: m-mean = {em(m - mean, 3)}, s^2-var = {em(s * s - var, 3)}")

    header("bulk cdf probes {gamma, r, cdf}")
    for g, rs in [(5.0, [0.01, 0.05, 0.1, 0.2, 0.4, 0.6, 0.635]),
                  (2.5, [0.1, 0.3, 0.6, 0.9, 0.955]),
                  (2.0, [0.3])]:
        for r in rs:
            print(f"{{{g}, {r}, {bulk_cdf(g, r):.15e}}},")
    print(f"// gamma=2 closed form (2/pi)asin(sqrt(0.3)) = "
          f"{em(2 / mp.pi * mp.asin(mp.sqrt(mp.mpf('0.3'))))}")

    header("bulk moment sanity by quadrature")
    for g in [2.0, 2.5, 5.0, 10.0, 100.0]:
        c = 4 * (g - 1) / g ** 2

        def mom(k):
            def f(t):
                x = c * np.sin(t) ** 2
                disc = 4 * (g - 1) * (1 - x) / x - (g - 2) ** 2
                d = np.sqrt(max(disc, 0.0)) / (2 * np.pi * (1 - x))
                return x ** k * d * 2 * c * np.sin(t) * np.cos(t)
            return quad(f, 0, np.pi / 2, epsabs=1e-13, epsrel=1e-13, limit=400)[0]

        print(f"// gamma={g}: mass-1 = {mom(0) - 1:+.3e}, "
              f"mean-1/g = {mom(1) - 1 / g:+.3e}, "
              f"var-(g-1)/g^3 = {mom(2) - mom(1) ** 2 - (g - 1) / g ** 3:+.3e}")

    header("spike map checks")
    g = mp.mpf(5)
    lam2 = mp.mpf('0.4')
    rho = lam2 * ((g - 1) / g + 1 / (g * lam2)) ** 2
    print(f"// gamma=5 lambda^2=0.4: rho_bar = {em(rho)} (exact 0.676)")
    print(f"// rho_c = {em(1 / (g - 1))}, c = {em(4 * (g - 1) / g ** 2)}")


if __name__ == "__main__":
    main()
