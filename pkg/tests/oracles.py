"""Independent reference implementations used only by the test suite.

Everything here recomputes a quantity the package produces, by a different
route: integral representations instead of backend special functions, brute
divisor loops instead of sieves, series acceleration instead of Hurwitz
values.  Keeping them quarantined in the test tree means the library can
never quietly start testing itself against itself.
"""

from __future__ import annotations

import cmath
import math

import mpmath

from eisenkit.characters import DirichletCharacter, character_group


# ------------------------------------------------------------------
# K-Bessel via the cosh integral
# ------------------------------------------------------------------

def bessel_quadrature(t: float, x: float, dps: int | None = None) -> float:
    """K_{it}(x) = integral over u >= 0 of exp(-x cosh u) cos(t u).

    Gauss-Legendre quadrature on subintervals aligned with the zeros of the
    cosine, so the oscillation never defeats the quadrature rule.  The
    exponential is rescaled by e^{x} before integrating: mpmath's adaptive
    loop stops on an absolute error test, and for x large the raw integrand
    is uniformly of size e^{-x}, small enough to pass that test at any crude
    degree.  With the rescaling the integrand is O(1) near u = 0 and the
    working precision only has to cover the cancellation down to the answer
    at exp(-decay + x).
    """
    t = abs(float(t))
    x = float(x)
    lost = max(0.0, _decay(t, x) - x) / math.log(10)   # cancellation against e^{-x}
    if dps is None:
        dps = 30 + int(math.ceil(lost))
    # cutoff where exp(-x cosh u) is negligible next to the answer e^{-decay}
    goal = _decay(t, x) + (dps + 8) * math.log(10)
    u_max = math.acosh(max(2.0, goal / x))
    points = [0.0]
    if t > 0:
        k = 0
        while True:
            z = (k + 0.5) * math.pi / t
            if z >= u_max:
                break
            points.append(z)
            k += 1
    points.append(u_max)
    with mpmath.workdps(dps):
        xm = mpmath.mpf(x)
        tm = mpmath.mpf(t)
        val = mpmath.quadgl(lambda u: mpmath.exp(xm - xm * mpmath.cosh(u)) * mpmath.cos(tm * u),
                            points, maxdegree=8)
        return float(mpmath.exp(-xm) * val)


def _decay(t: float, x: float) -> float:
    if x >= t:
        return math.sqrt(x * x - t * t) + (t * math.asin(t / x) if t > 0 else 0.0)
    return 0.5 * math.pi * t


# ------------------------------------------------------------------
# the real-place integral behind the constant-term factor
# ------------------------------------------------------------------

def real_place_quadrature(s: complex) -> complex:
    """integral over the line of (1 + x^2)^(-s - 1/2), by scipy quadrature."""
    from scipy.integrate import quad

    s = complex(s)

    def integrand(x: float) -> complex:
        return (1.0 + x * x) ** complex(-s.real - 0.5, -s.imag)

    re, _ = quad(lambda x: integrand(x).real, -math.inf, math.inf, limit=400)
    im, _ = quad(lambda x: integrand(x).imag, -math.inf, math.inf, limit=400)
    return complex(re, im)


def bump_mellin_quadrature(s: complex) -> complex:
    """Mellin transform of the standard bump on [1, 2], by scipy quadrature."""
    from scipy.integrate import quad

    s = complex(s)

    def w(x: float) -> float:
        if x <= 1.0 or x >= 2.0:
            return 0.0
        return math.exp(-1.0 / ((x - 1.0) * (2.0 - x)))

    def integrand(x: float) -> complex:
        return w(x) * cmath.exp((s - 1) * math.log(x))

    re, _ = quad(lambda x: integrand(x).real, 1.0, 2.0, limit=200)
    im, _ = quad(lambda x: integrand(x).imag, 1.0, 2.0, limit=200)
    return complex(re, im)


# ------------------------------------------------------------------
# L-values by routes other than Hurwitz zeta
# ------------------------------------------------------------------

def leibniz_pi_over_four(levels: int = 12, terms: int = 40) -> float:
    """L(1) for the odd character mod 4, by Euler-transforming Leibniz.

    Repeatedly averaging the partial-sum sequence squeezes the alternating
    tail geometrically; a dozen levels on forty terms is already far below
    double-precision roundoff.
    """
    rows = [[math.fsum((-1.0) ** k / (2 * k + 1) for k in range(n + 1))
             for n in range(terms)]]
    for _ in range(levels):
        prev = rows[-1]
        rows.append([(a + b) / 2.0 for a, b in zip(prev, prev[1:])])
    return rows[-1][-1]


def direct_dirichlet_sum(s: complex, chi: DirichletCharacter, terms: int) -> complex:
    """Plain partial sum of the Dirichlet series; only sensible for Re s > 1."""
    total = 0j
    for block_start in range(1, terms + 1, 1 << 16):
        block = []
        for n in range(block_start, min(block_start + (1 << 16), terms + 1)):
            value = chi.evaluate(n)
            if value != 0:
                block.append(value * cmath.exp(-s * math.log(n)))
        total += complex(math.fsum(z.real for z in block),
                         math.fsum(z.imag for z in block))
    return total


def euler_product_l(s: complex, chi: DirichletCharacter, prime_bound: int) -> complex:
    """Product over primes p <= prime_bound of (1 - chi(p) p^{-s})^{-1}."""
    log_total = 0j
    sieve = bytearray([1]) * (prime_bound + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, prime_bound + 1):
        if not sieve[p]:
            continue
        for m in range(p * p, prime_bound + 1, p):
            sieve[m] = 0
        value = chi.evaluate(p)
        if value != 0:
            log_total -= cmath.log(1 - value * cmath.exp(-s * math.log(p)))
    return cmath.exp(log_total)


# ------------------------------------------------------------------
# characters by brute force
# ------------------------------------------------------------------

def brute_conductor(chi: DirichletCharacter) -> int:
    """Smallest d | q with chi trivial on units congruent to 1 mod d."""
    q = chi.modulus
    for d in sorted(_divisors_of(q)):
        if all(chi.phase(n) == 0
               for n in range(1, q + 1)
               if n % d == 1 % d and math.gcd(n, q) == 1):
            return d
    return q


def _divisors_of(n: int) -> list[int]:
    out = []
    for d in range(1, int(math.isqrt(n)) + 1):
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
    return out


def brute_gauss_sum(chi: DirichletCharacter) -> complex:
    """Direct exponential sum with float phases; fine for moduli in the hundreds."""
    q = chi.modulus
    total = 0j
    for u in range(1, q + 1):
        value = chi.evaluate(u)
        if value != 0:
            total += value * cmath.exp(2j * math.pi * u / q)
    return total


def character_count(q: int) -> int:
    return sum(1 for _ in character_group(q))


# ------------------------------------------------------------------
# amplifier by the unsieved double loop
# ------------------------------------------------------------------

def naive_amplifier_sum(cfg) -> complex:
    total = 0j
    for p in range(math.ceil(cfg.L), math.floor(2 * cfg.L) + 1):
        if p < 2 or any(p % d == 0 for d in range(2, int(math.isqrt(p)) + 1)):
            continue
        if p % cfg.q != 1 % cfg.q or cfg.level % p == 0:
            continue
        left = (cfg.chi1.evaluate(p) * p ** (1j * cfg.r1)
                + cfg.chi2.evaluate(p) * p ** (-1j * cfg.r1))
        right = (cfg.chi1.evaluate(p) * p ** (1j * cfg.r2)
                 + cfg.chi2.evaluate(p) * p ** (-1j * cfg.r2)).conjugate()
        total += cfg.weight(p / cfg.L) * math.log(p) * left * right
    return total


def weighted_prime_log_sum(q: int, L: float, weight) -> float:
    """sum of w(p/L) log p over p = 1 mod q in [L, 2L], double loop."""
    total = 0.0
    for p in range(math.ceil(L), math.floor(2 * L) + 1):
        if p < 2 or any(p % d == 0 for d in range(2, int(math.isqrt(p)) + 1)):
            continue
        if p % q != 1 % q:
            continue
        total += weight(p / L) * math.log(p)
    return total
