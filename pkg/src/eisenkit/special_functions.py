"""Complex-order K-Bessel values, Gamma factors, the amplifier bump weight,
and Fourier-tail truncation cutoffs.

The K-Bessel evaluator is split into two regimes.  When the order is it with
|t| at most 60 and the cancellation budget allows, the cosh integral

    K_nu(x) = int_0^oo exp(-x cosh u) cosh(nu u) du

is integrated by fixed Gauss-Legendre panels in float64, summed in a fixed
order with compensated addition so results are bitwise reproducible.  The
integrand has size exp(-x) while the value has size exp(-x - max(0, pi|t|/2
- x)); the difference is pure cancellation, so the float64 route is taken
only when the lost digits fit under the requested accuracy.  Everything else
goes to an arbitrary-precision backend with the working precision raised by
the number of cancelled digits.  The two routes are cross-checked against
each other on the 50 <= |t| <= 60 band in the test suite.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import lru_cache

import mpmath
import numpy as np

__all__ = [
    "BesselRequest",
    "BumpWeight",
    "NumericEnvelopeError",
    "NumericsError",
    "PoleError",
    "bessel_k",
    "bump_weight_and_mellin",
    "gamma_factor",
    "log_gamma_factor",
    "whittaker_tail_cutoff",
]


# ---------------------------------------------------------------------------
# error types
# ---------------------------------------------------------------------------

class NumericsError(RuntimeError):
    """A numeric routine could not meet its contract."""


class PoleError(NumericsError):
    """Evaluation requested at, or indistinguishably close to, a pole."""


class NumericEnvelopeError(NumericsError):
    """Request falls outside the supported parameter envelope."""


# ---------------------------------------------------------------------------
# K-Bessel
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BesselRequest:
    order: complex            # nu = sigma + it
    argument: float           # x > 0
    target_error: float = 1e-12   # relative

    def __post_init__(self):
        if not self.argument > 0:
            raise ValueError(f"argument must be positive, got {self.argument}")
        if self.target_error < 1e-14:
            raise ValueError(f"target_error below 1e-14 is not supported, got {self.target_error}")
        if abs(complex(self.order).imag) > 1e4:
            raise ValueError("orders with |Im nu| > 1e4 are out of scope")


# guaranteed envelope of bessel_k
_X_MIN = 1e-6
_X_MAX = 705.0          # beyond this K underflows double precision entirely
_IM_MAX = 200.0
_RE_MAX = 10.0

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(24)


def _decay_exponent(t: float, x: float) -> float:
    """-log of the leading size of K_{it}(x), up to polynomial factors.

    In the oscillatory range x < t the size is exp(-pi t / 2); past the
    turning point it is exp(-sqrt(x^2-t^2) - t arcsin(t/x)), which only
    relaxes to the familiar exp(-x) once x greatly exceeds t.  The cosh
    integrand has size exp(-x) throughout, so the difference between the two
    exponents measures the cancellation a fixed-precision quadrature suffers.
    """
    if x >= t:
        return math.sqrt(x * x - t * t) + (t * math.asin(t / x) if t > 0 else 0.0)
    return 0.5 * math.pi * t


def _f64_quadrature(sigma: float, t: float, x: float, target: float) -> complex:
    """Panelled 24-point Gauss-Legendre on the cosh integral, float64."""
    deficit = max(0.0, _decay_exponent(t, x) - x)
    # choose u_max so the discarded tail is below target relative accuracy;
    # the cosh(sigma*u) growth feeds back into the cutoff, so iterate
    u_max = 1.0
    for _ in range(4):
        margin = deficit + math.log(1.0 / target) + 7.0 + abs(sigma) * u_max
        u_max = math.acosh(1.0 + margin / x)
    h = min(0.5, math.pi / (t + 1.0))
    n_panels = int(math.ceil(u_max / h))
    re_parts = []
    im_parts = []
    for k in range(n_panels):
        a = k * h
        b = min((k + 1) * h, u_max)
        mid = 0.5 * (a + b)
        half = 0.5 * (b - a)
        u = mid + half * _GL_NODES
        damp = np.exp(-x * np.cosh(u))
        re_parts.extend(half * _GL_WEIGHTS * damp * np.cosh(sigma * u) * np.cos(t * u))
        if sigma != 0.0:
            im_parts.extend(half * _GL_WEIGHTS * damp * np.sinh(sigma * u) * np.sin(t * u))
    re = math.fsum(re_parts)
    im = math.fsum(im_parts) if im_parts else 0.0
    return complex(re, im)


def _mp_backend(sigma: float, t: float, x: float, digits_lost: float, target: float) -> complex:
    """Arbitrary-precision evaluation with cancellation-aware working precision."""
    digits_req = -math.log10(target)
    dps = int(math.ceil(digits_req + digits_lost)) + 8
    with mpmath.workdps(dps):
        val = mpmath.besselk(mpmath.mpc(sigma, t), mpmath.mpf(x))
        out = complex(val)
    if sigma == 0.0:
        out = complex(out.real, 0.0)
    return out


def bessel_k(req: BesselRequest) -> complex:
    """K_nu(x) to the requested relative accuracy.

    Supported envelope: 1e-6 <= x <= 705, |Re nu| <= 10, |Im nu| <= 200.
    Requests outside it raise NumericEnvelopeError ("unsupported regime")
    instead of silently degrading.
    """
    nu = complex(req.order)
    x = float(req.argument)
    if x < _X_MIN or x > _X_MAX:
        raise NumericEnvelopeError(f"unsupported regime: argument {x} outside [{_X_MIN}, {_X_MAX}]")
    if abs(nu.imag) > _IM_MAX:
        raise NumericEnvelopeError(f"unsupported regime: |Im order| = {abs(nu.imag)} exceeds {_IM_MAX}")
    if abs(nu.real) > _RE_MAX:
        raise NumericEnvelopeError(f"unsupported regime: |Re order| = {abs(nu.real)} exceeds {_RE_MAX}")

    # K is even in nu and conjugation-equivariant, so fold into the first quadrant
    sigma, t = abs(nu.real), abs(nu.imag)
    conj_back = (nu.imag < 0) != (nu.real < 0)

    digits_lost = max(0.0, _decay_exponent(t, x) - x) / math.log(10.0)
    digits_req = -math.log10(req.target_error)
    if t <= 60.0 and digits_lost <= 13.9 - digits_req:
        val = _f64_quadrature(sigma, t, x, req.target_error)
    else:
        val = _mp_backend(sigma, t, x, digits_lost, req.target_error)
    return val.conjugate() if conj_back else val


# ---------------------------------------------------------------------------
# Gamma factors
# ---------------------------------------------------------------------------

_POLE_TOL = 1e-10


def _nearest_pole(kind: str, s: complex) -> tuple[float, complex]:
    """Distance from s to the nearest pole of the requested factor."""
    if kind == "real-place":
        # poles of Gamma(s/2) at s = 0, -2, -4, ...
        n = max(0, round(-s.real / 2.0))
        pole = complex(-2 * n, 0.0)
    else:
        # plain Gamma and the complex-place factor share poles at 0, -1, -2, ...
        n = max(0, round(-s.real))
        pole = complex(-n, 0.0)
    return abs(s - pole), pole


def log_gamma_factor(kind: str, s: complex) -> complex:
    """log of gamma_factor(kind, s), safe for arguments far up a vertical line."""
    s = complex(s)
    dist, pole = _nearest_pole(kind, s)
    if dist < _POLE_TOL:
        raise PoleError(f"{kind} gamma factor pole at {pole}: input is {dist:.3e} away")
    with mpmath.workdps(30):
        if kind == "plain":
            out = mpmath.loggamma(s)
        elif kind == "real-place":
            out = mpmath.loggamma(s / 2) - (s / 2) * mpmath.log(mpmath.pi)
        elif kind == "complex-place":
            out = mpmath.log(2) - s * mpmath.log(2 * mpmath.pi) + mpmath.loggamma(s)
        else:
            raise ValueError(f"unknown gamma factor kind {kind!r}")
        return complex(out)


def gamma_factor(kind: str, s: complex) -> complex:
    """Gamma_R(s) = pi^{-s/2} Gamma(s/2), Gamma_C(s) = 2 (2 pi)^{-s} Gamma(s),
    or the plain Gamma function.

    Pole inputs are rejected with a distance-to-pole diagnostic.  Values too
    large for double precision overflow; use log_gamma_factor there.
    """
    return cmath.exp(log_gamma_factor(kind, s))


# ---------------------------------------------------------------------------
# the amplifier bump weight
# ---------------------------------------------------------------------------

def _bump(r: float) -> float:
    if r <= 1.0 or r >= 2.0:
        return 0.0
    return math.exp(-1.0 / ((r - 1.0) * (2.0 - r)))


@dataclass(frozen=True)
class BumpWeight:
    """The fixed smooth weight supported on (1,2) and its Mellin transform.

    w(r) = exp(-1/((r-1)(2-r))) inside the support, zero outside; all
    derivatives vanish at the endpoints.  mellin(s) is the transform
    int w(r) r^{s-1} dr, and the frequently used value at s = 1 (the plain
    integral of w) is cached on construction.
    """

    mellin_at_one: float = field(default=0.0)

    def __post_init__(self):
        if self.mellin_at_one == 0.0:
            object.__setattr__(self, "mellin_at_one", self.mellin(1.0).real)

    def weight(self, r: float) -> float:
        return _bump(float(r))

    __call__ = weight

    def mellin(self, s: complex) -> complex:
        with mpmath.workdps(30):
            s_mp = mpmath.mpc(s)
            val = mpmath.quad(lambda r: mpmath.exp(-1 / ((r - 1) * (2 - r))) * r ** (s_mp - 1), [1, 2])
            return complex(val)


@lru_cache(maxsize=1)
def _shared_bump() -> BumpWeight:
    return BumpWeight()


def bump_weight_and_mellin(x) -> float | complex:
    """w(x) for real x, or the Mellin transform w~(x) for complex x."""
    bw = _shared_bump()
    if isinstance(x, complex):
        return bw.mellin(x)
    return bw.weight(x)


# ---------------------------------------------------------------------------
# truncation cutoffs
# ---------------------------------------------------------------------------

def whittaker_tail_cutoff(t: float, y: float, eps: float) -> int:
    """Number of Fourier modes needed so the dropped tail is below eps.

    Bounds each dropped term by n^{0.6} (2 pi n y)^{-1/2} exp(-2 pi n y):
    the n^{0.5} part majorizes the divisor count (d(n) <= sqrt(3n)), the
    extra n^{0.1} absorbs the constant, and the rest is the exponential-regime
    Bessel envelope, valid once 2 pi n y > 1 + pi |t| / 2.  The returned M
    always clears that transition point, and the geometric-ratio tail bound
    past M is pushed below eps.
    """
    if y <= 0 or eps <= 0:
        raise ValueError("y and eps must be positive")
    t = abs(float(t))
    two_pi_y = 2.0 * math.pi * y
    m = max(1, math.ceil((1.0 + 0.5 * math.pi * t + 0.01) / two_pi_y))

    def term(n: int) -> float:
        z = two_pi_y * n
        return n**0.6 * math.exp(-z) / math.sqrt(z)

    def tail_bound(m0: int) -> float:
        # a_{n+1}/a_n <= (1 + 1/m0)^{0.1} e^{-2 pi y} =: rho < 1 for n >= m0
        rho = (1.0 + 1.0 / m0) ** 0.1 * math.exp(-two_pi_y)
        if rho >= 1.0:
            return math.inf
        return term(m0 + 1) / (1.0 - rho)

    while tail_bound(m) >= eps:
        m = math.ceil(m * 1.1) + 1
    return m
