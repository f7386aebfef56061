"""Newform Eisenstein series attached to a pair of primitive Dirichlet
characters: scattering constants, Fourier coefficients, and the truncated
evaluator at the cusp-infinity chart.

Conventions.  The series is parametrized on the unitary axis s = sigma + i t
with sigma = 0 in production use.  With chi1 mod q1 and chi2 mod q2 and
psi the primitive character inducing chi1 * conj(chi2), the expansion
implemented here is

    E(s; x, y) = [q1 = 1] y^{1/2+s}
               + c(s) [q2 = 1] y^{1/2-s}
               + P(s) sqrt(y) sum_{n >= 1} lambda_s(n) K_s(2 pi n y) 2 cos(2 pi n x)

with P(s) = b_r(s) / L(2s+1, psi) * 2 / Gamma_R(2s + 1 + a), where a is the
parity exponent of psi and b_r collects the ramified local normalizations.
At level one this reduces to the classical real-analytic Eisenstein series
with constant term y^{1/2+s} + c(s) y^{1/2-s}, which the modular-invariance
test checks end to end.

The scattering constant is assembled as c(s) = c_r(s) Lambda(2s, psi) /
Lambda(2s+1, psi); the functional-equation residual then exercises the
Dirichlet functional equation (Gauss sum against the completed-L ratio)
against the evaluator's independent path through L(2s+1), the Gamma factor,
the Bessel values, and the coefficients.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import lru_cache

from eisenkit.characters import (
    DirichletCharacter,
    conductor,
    conjugate,
    gauss_sum,
    local_component,
    local_epsilon,
    multiply,
    prime_to_p_part,
    primitive_part,
)
from eisenkit.lfunctions import LValueRequest, dirichlet_l, lambda_ratio, parity_exponent
from eisenkit.special_functions import (
    BesselRequest,
    PoleError,
    bessel_k,
    gamma_factor,
    whittaker_tail_cutoff,
)

__all__ = [
    "CoefficientTable",
    "ConstantTermData",
    "EisensteinParams",
    "build_coefficient_table",
    "coefficient_prefactor",
    "evaluate",
    "evaluate_truncated",
    "fourier_coefficient",
    "functional_equation_residual",
    "generalized_divisor_sum",
    "local_constant",
    "scattering_constant",
]

# Two conventions the defining references leave open: the sign of the
# exponent in the divisor-sum coefficients, and whether local epsilon factors
# are consumed with the conjugated character.  Both are implemented behind
# these switches and were frozen by calibrating the functional-equation
# residual matrix; do not flip one without re-running that suite.
_COEFFICIENT_EXPONENT_SIGN = +1
_EPSILON_CONJUGATE = True


# ---------------------------------------------------------------------------
# parameters
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EisensteinParams:
    """A newform Eisenstein series datum (chi1, chi2, s = sigma + i t)."""

    chi1: DirichletCharacter
    chi2: DirichletCharacter
    t_shift: float
    sigma: float = 0.0          # off-axis diagnostics only; acceptance runs keep 0
    level: int = field(init=False, compare=False)
    central_modulus: int = field(init=False, compare=False)
    l_modulus: int = field(init=False, compare=False)

    def __post_init__(self):
        for chi in (self.chi1, self.chi2):
            if conductor(chi) != chi.modulus:
                raise ValueError(f"characters must be primitive; {chi} has conductor {conductor(chi)}")
        object.__setattr__(self, "level", self.chi1.modulus * self.chi2.modulus)
        object.__setattr__(self, "central_modulus",
                           conductor(multiply(self.chi1, self.chi2)))
        object.__setattr__(self, "l_modulus", self.quotient_character.modulus)

    @property
    def quotient_character(self) -> DirichletCharacter:
        """The primitive character inducing chi1 * conj(chi2)."""
        return _quotient_character(self.chi1, self.chi2)

    @property
    def s(self) -> complex:
        return complex(self.sigma, self.t_shift)

    def dual(self) -> "EisensteinParams":
        """Swapped characters at the reflected point; E(s) = c(s) * dual E(-s)."""
        return EisensteinParams(self.chi2, self.chi1, -self.t_shift, -self.sigma)


@dataclass(frozen=True)
class ConstantTermData:
    section_value: complex          # finite-place new-vector value on the y^{1/2+s} side
    dual_section_value: complex     # same for the y^{1/2-s} side
    scattering: complex             # c(s)
    local_factors: dict             # prime -> local piece of c_r(s)
    ramified_product: complex       # c_r(s)


@dataclass(frozen=True)
class CoefficientTable:
    params: EisensteinParams
    prefactor: complex              # b_r(s) / L(2s+1, psi)
    coefficients: dict              # n -> lambda(n), 1 <= n <= M


# ---------------------------------------------------------------------------
# local data helpers
# ---------------------------------------------------------------------------

@lru_cache(maxsize=256)
def _quotient_character(chi1: DirichletCharacter, chi2: DirichletCharacter) -> DirichletCharacter:
    return primitive_part(multiply(chi1, conjugate(chi2)))


def _cond_exp(chi: DirichletCharacter, p: int) -> int:
    """v_p of the conductor of chi."""
    c = conductor(chi)
    e = 0
    while c % p == 0:
        c //= p
        e += 1
    return e


def _chi_at_uniformizer(chi: DirichletCharacter, p: int, k: int) -> complex:
    """The p-component of chi at the k-th uniformizer power.

    Under the classical dictionary the p-part of chi at p itself is read off
    the complementary component: chi_p(p^k) = (prime-to-p part of chi)(p)^k.
    """
    if k == 0:
        return 1.0 + 0j
    w = prime_to_p_part(chi, p).evaluate(p)
    return w**k


def _local_eps(chi: DirichletCharacter, p: int) -> complex:
    """Local epsilon value at the central point, in the frozen orientation."""
    target = chi if _EPSILON_CONJUGATE else conjugate(chi)
    return local_epsilon(target, p).epsilon_half


def _primes_of(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# coefficients
# ---------------------------------------------------------------------------

def _divisors(n: int) -> list[int]:
    divs = [1]
    for p in _primes_of(n):
        e = 0
        m = n
        while m % p == 0:
            m //= p
            e += 1
        divs = [d * p ** k for d in divs for k in range(e + 1)]
    return divs


def generalized_divisor_sum(chi1: DirichletCharacter, chi2: DirichletCharacter,
                            s: complex, n: int) -> complex:
    """sum over ab = n of chi1(a) a^s chi2(b) b^{-s}, with primitive values.

    Divisors come from the factorization of n, so prime powers cost their
    handful of divisors rather than a sqrt(n) scan.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    total = 0j
    for a in _divisors(n):
        c1 = chi1.evaluate(a)
        if c1 == 0:
            continue
        b = n // a
        c2 = chi2.evaluate(b)
        if c2 == 0:
            continue
        total += c1 * c2 * cmath.exp(s * math.log(a) - s * math.log(b))
    return total


def fourier_coefficient(params: EisensteinParams, n: int) -> complex:
    """lambda(n), the n-th Hecke eigenvalue of the series."""
    s_eff = _COEFFICIENT_EXPONENT_SIGN * params.s
    return generalized_divisor_sum(params.chi1, params.chi2, s_eff, n)


# ---------------------------------------------------------------------------
# ramified normalizations
# ---------------------------------------------------------------------------

def _b_local(params: EisensteinParams, p: int) -> complex:
    """The local piece of the Whittaker normalization b_r(s) at p | level."""
    s = params.s
    psi = params.quotient_character
    a2 = _cond_exp(params.chi2, p)
    out = p ** (-a2 / 2.0) * _chi_at_uniformizer(params.chi1, p, a2)
    out *= _local_eps(conjugate(params.chi2), p)
    if params.l_modulus % p != 0:
        psi_p = psi.evaluate(p)
        out /= 1.0 - psi_p * cmath.exp(-(2 * s + 1) * math.log(p))
    return out


def _b_ramified(params: EisensteinParams) -> complex:
    out = 1.0 + 0j
    for p in _primes_of(params.level):
        out *= _b_local(params, p)
    return out


def coefficient_prefactor(params: EisensteinParams) -> complex:
    """Global prefactor of the Whittaker expansion: b_r(s) / L(2s+1, psi)."""
    psi = params.quotient_character
    lvalue = dirichlet_l(LValueRequest(2 * params.s + 1, psi))
    return _b_ramified(params) / lvalue


# ---------------------------------------------------------------------------
# constant term
# ---------------------------------------------------------------------------

def local_constant(params: EisensteinParams, p: int) -> complex:
    """The local constant-term factor c_p(s), all three ramification cases.

    The unramified branch returns the local L-ratio; production code never
    multiplies these out (the completed global ratio supplies them), so this
    operation exists for unit-level cross-checks of the local formulas.
    """
    s = params.s
    psi = params.quotient_character
    a1 = _cond_exp(params.chi1, p)
    a2 = _cond_exp(params.chi2, p)

    if a1 == 0 and a2 == 0:
        psi_p = psi.evaluate(p)
        num = 1.0 - psi_p * cmath.exp(-2 * s * math.log(p))
        den = 1.0 - psi_p * cmath.exp(-(2 * s + 1) * math.log(p))
        return den / num     # L_p(2s)/L_p(2s+1) as a ratio of inverted Euler factors

    if a1 == 0 or a2 == 0:
        chi1_p = local_component(params.chi1, p)
        sign = chi1_p.evaluate(chi1_p.modulus - 1) if chi1_p.modulus > 1 else 1.0
        return sign * p ** (-a2)

    a_psi = _cond_exp(psi, p)
    n_p = a1 + a2
    chi1_p = local_component(params.chi1, p)
    sign = chi1_p.evaluate(chi1_p.modulus - 1)
    exponent = -2 * s * n_p - (0.5 - 2 * s) * a_psi + a1 / 2.0 - a2 / 2.0
    eps_block = (_local_eps(params.chi1, p)
                 * _local_eps(conjugate(params.chi2), p)
                 / _local_eps(psi, p))
    char_block = (_chi_at_uniformizer(params.chi2, p, -a1)
                  * _chi_at_uniformizer(params.chi1, p, a2))
    return sign * cmath.exp(exponent * math.log(p)) * eps_block * char_block


def scattering_constant(params: EisensteinParams) -> ConstantTermData:
    """The full constant-term datum: c(s), its local pieces, and the two
    finite-place section values.

    c(s) = c_r(s) * Lambda(2s, psi) / Lambda(2s+1, psi), with the ramified
    product c_r(s) = [b_r(s) / dual b_r(-s)] * eps(psi)^{-1} * l^{2s} spread
    over local factors whose product reproduces it exactly.  The section
    values are the new-vector values at the identity: the y^{1/2+s} side
    survives only when chi1 has conductor one, the dual side only when chi2
    does.
    """
    s = params.s
    psi = params.quotient_character
    ell = psi.modulus
    if ell == 1 and abs(s) < 1e-12:
        raise PoleError("scattering pole: principal quotient character at s = 0")

    dual = params.dual()
    local_factors: dict[int, complex] = {}
    for p in _primes_of(params.level):
        factor = _b_local(params, p) / _b_local(dual, p)
        if ell % p == 0:
            e = _cond_exp(psi, p)
            psi_p = primitive_part(local_component(psi, p))
            cofactor = psi_p.evaluate(ell // p**e)
            factor *= p ** (2 * s * e + e / 2.0) / (cofactor * gauss_sum(psi_p))
        local_factors[p] = factor

    a = parity_exponent(psi)
    if ell > 1:
        # the global i^a of the root number, folded into the smallest ramified prime
        smallest = min(p for p in local_factors if ell % p == 0)
        local_factors[smallest] *= 1j**a

    ramified = 1.0 + 0j
    for p in sorted(local_factors):
        ramified *= local_factors[p]

    c_value = ramified * lambda_ratio(s, psi)
    return ConstantTermData(
        section_value=1.0 + 0j if params.chi1.modulus == 1 else 0j,
        dual_section_value=1.0 + 0j if params.chi2.modulus == 1 else 0j,
        scattering=c_value,
        local_factors=local_factors,
        ramified_product=ramified,
    )


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

def build_coefficient_table(params: EisensteinParams, m_max: int) -> CoefficientTable:
    coeffs = {n: fourier_coefficient(params, n) for n in range(1, m_max + 1)}
    return CoefficientTable(params, coefficient_prefactor(params), coeffs)


def _archimedean_constant(params: EisensteinParams) -> complex:
    """The real-place Whittaker normalization 2 / Gamma_R(2s + 1 + a).

    The parity exponent of psi rides along in the Gamma argument so that odd
    quotient characters get the odd real-place factor; without it the
    functional equation would force a non-elementary Gamma ratio into c(s).
    """
    a = parity_exponent(params.quotient_character)
    return 2.0 / gamma_factor("real-place", 2 * params.s + 1 + a)


def _k_value(order: complex, arg: float, kcache: dict | None) -> complex:
    """bessel_k with an optional cache that exploits K's evenness in the order.

    The cache key folds the order into the first quadrant, so the two sides
    of the functional equation (orders s and -s) hit the same entries.
    """
    if kcache is None:
        return bessel_k(BesselRequest(order, arg, 1e-12))
    folded = complex(abs(order.real), abs(order.imag))
    key = (folded, arg)
    val = kcache.get(key)
    if val is None:
        val = bessel_k(BesselRequest(folded, arg, 1e-12))
        kcache[key] = val
    return val.conjugate() if (order.imag < 0) != (order.real < 0) else val


def _fourier_part(params: EisensteinParams, x: float, y: float, eps: float,
                  table: CoefficientTable | None, kcache: dict | None) -> complex:
    s = params.s
    prefactor = table.prefactor if table is not None else coefficient_prefactor(params)
    scale = prefactor * _archimedean_constant(params) * math.sqrt(y)
    # the tail estimate majorizes |lambda(n)| K(2 pi n y) by
    # 2.3 * n^{0.6} (2 pi n y)^{-1/2} e^{-2 pi n y}; budget eps against the
    # outer scale and the cosine's factor 2
    eps_tail = eps / (4.6 * max(abs(scale), 1e-300))
    m = whittaker_tail_cutoff(params.t_shift, y, eps_tail)
    if table is None or len(table.coefficients) < m:
        coeffs = {n: fourier_coefficient(params, n) for n in range(1, m + 1)}
        table = CoefficientTable(params, prefactor, coeffs)
    re_terms: list[float] = []
    im_terms: list[float] = []
    for n in range(1, m + 1):
        kval = _k_value(s, 2.0 * math.pi * n * y, kcache)
        term = table.coefficients[n] * kval * (2.0 * math.cos(2.0 * math.pi * n * x))
        re_terms.append(term.real)
        im_terms.append(term.imag)
    return scale * complex(math.fsum(re_terms), math.fsum(im_terms))


def evaluate_truncated(params: EisensteinParams, x: float, y: float, eps: float,
                       y_min: float = 0.3) -> complex:
    """F(s; x, y): the series with both constant terms removed."""
    if y < y_min:
        raise ValueError(f"y = {y} below the expansion floor y_min = {y_min}")
    return _fourier_part(params, x, y, eps, None, None)


def evaluate(params: EisensteinParams, x: float, y: float, eps: float,
             y_min: float = 0.3) -> complex:
    """E(s; x, y) on the cusp-infinity chart, truncation error below eps."""
    if y < y_min:
        raise ValueError(f"y = {y} below the expansion floor y_min = {y_min}")
    return _constant_terms(params, y) + _fourier_part(params, x, y, eps, None, None)


def _constant_terms(params: EisensteinParams, y: float) -> complex:
    s = params.s
    out = 0j
    if params.chi1.modulus == 1:
        out += cmath.exp((0.5 + s) * math.log(y))
    if params.chi2.modulus == 1:
        c = scattering_constant(params).scattering
        out += c * cmath.exp((0.5 - s) * math.log(y))
    return out


def functional_equation_residual(params: EisensteinParams, x: float, y: float,
                                 eps: float = 1e-8) -> float:
    """Normalized defect of E(s, z) = c(s) * dual E(-s, z) at one point.

    The Bessel values are shared between the two sides (K is even in its
    order), so the residual isolates the arithmetic constants rather than
    quadrature noise.
    """
    dual = params.dual()
    kcache: dict = {}
    e_here = _constant_terms(params, y) + _fourier_part(params, x, y, eps, None, kcache)
    e_dual = _constant_terms(dual, y) + _fourier_part(dual, x, y, eps, None, kcache)
    c = scattering_constant(params).scattering
    return abs(e_here - c * e_dual) / (1.0 + abs(e_here) + abs(e_dual))
