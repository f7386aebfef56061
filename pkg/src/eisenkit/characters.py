"""Exact Dirichlet character arithmetic.

Characters mod q are stored as discrete-log data on fixed generators of the
unit groups (Z/p^e)^x, one component per prime power of q.  Values are exact
rational phases (fractions of a full turn) materialized to complex floats only
at evaluation time, so Gauss sums and epsilon factors are reproducible to
machine precision.

Generator conventions (fixed once, for determinism across runs and platforms):
  * odd p^e: the smallest primitive root mod p^e;
  * 2^1: trivial group, no generators;
  * 2^2: the single generator 3;
  * 2^e, e >= 3: the pair (2^e - 1, 5), i.e. (-1, 5), in that order.
Character enumeration is lexicographic in the exponent vectors on these
generators, components ordered by increasing prime; index 0 is always the
principal character.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce

import numpy as np

__all__ = [
    "DirichletCharacter",
    "LocalEpsilonData",
    "build_character",
    "character_group",
    "conductor",
    "conjugate",
    "gauss_sum",
    "gauss_sum_moduli_squared",
    "local_component",
    "local_epsilon",
    "multiply",
    "primitive_part",
    "value_table",
]

TWO_PI = 2.0 * math.pi


# ---------------------------------------------------------------------------
# unit group structure of (Z/p^e)^x
# ---------------------------------------------------------------------------

def _factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization of n >= 1 as a list of (p, e), p increasing."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


@lru_cache(maxsize=None)
def _smallest_primitive_root(p: int) -> int:
    """Smallest primitive root mod an odd prime p."""
    phi = p - 1
    prime_divs = [q for q, _ in _factorize(phi)]
    g = 2
    while True:
        if all(pow(g, phi // q, p) != 1 for q in prime_divs):
            return g
        g += 1


@lru_cache(maxsize=None)
def _component_structure(p: int, e: int) -> tuple[tuple[int, ...], tuple[int, ...], dict[int, tuple[int, ...]]]:
    """Generators, their orders, and the discrete-log table for (Z/p^e)^x.

    The table maps each unit u mod p^e to its exponent vector on the
    generators.  Cached per prime power; read-only after construction, so it
    is safe to share between threads.
    """
    pe = p**e
    if p == 2:
        if e == 1:
            gens: tuple[int, ...] = ()
            orders: tuple[int, ...] = ()
        elif e == 2:
            gens, orders = (3,), (2,)
        else:
            gens, orders = (pe - 1, 5), (2, 2 ** (e - 2))
    else:
        g = _smallest_primitive_root(p)
        # a primitive root mod p^2 stays primitive for every higher power
        if e > 1 and pow(g, p - 1, p * p) == 1:
            g += p
        gens, orders = (g,), ((p - 1) * p ** (e - 1),)

    table: dict[int, tuple[int, ...]] = {}
    if not gens:
        table[1 % pe] = ()
    else:
        # enumerate the group as products of generator powers
        exps = [0] * len(gens)
        total = 1
        for o in orders:
            total *= o
        val_of_exps = {}
        for flat in range(total):
            rem = flat
            vec = []
            for o in reversed(orders):
                vec.append(rem % o)
                rem //= o
            vec = tuple(reversed(vec))
            u = 1
            for g, k in zip(gens, vec):
                u = (u * pow(g, k, pe)) % pe
            val_of_exps[vec] = u
        for vec, u in val_of_exps.items():
            table[u] = vec
        del exps
    return gens, orders, table


# ---------------------------------------------------------------------------
# the character type
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CharComponent:
    prime: int       # p
    exponent: int    # e, so the component lives mod p^e
    index: int       # mixed-radix rank of the exponent vector on the fixed generators

    @property
    def modulus(self) -> int:
        return self.prime**self.exponent

    @property
    def exps(self) -> tuple[int, ...]:
        _, orders, _ = _component_structure(self.prime, self.exponent)
        rem = self.index
        vec = []
        for o in reversed(orders):
            vec.append(rem % o)
            rem //= o
        return tuple(reversed(vec))


@dataclass(frozen=True)
class DirichletCharacter:
    """A Dirichlet character mod q, given by its prime-power components."""

    modulus: int
    local_components: tuple[CharComponent, ...]

    # -- evaluation ---------------------------------------------------------

    def phase(self, n: int) -> Fraction | None:
        """chi(n) as an exact fraction of a full turn, or None when gcd(n, q) > 1."""
        n %= self.modulus
        if math.gcd(n, self.modulus) != 1:
            return None
        total = Fraction(0)
        for comp in self.local_components:
            gens, orders, table = _component_structure(comp.prime, comp.exponent)
            dlog = table[n % comp.modulus]
            for k, d, o in zip(comp.exps, dlog, orders):
                total += Fraction(k * d, o)
        return total % 1

    def evaluate(self, n: int) -> complex:
        ph = self.phase(n)
        if ph is None:
            return 0j
        return cmath.exp(2j * math.pi * float(ph))

    __call__ = evaluate

    # -- basic attributes ---------------------------------------------------

    @property
    def parity(self) -> int:
        """chi(-1), which is +1 or -1."""
        ph = self.phase(self.modulus - 1 if self.modulus > 1 else 1)
        return 1 if ph == 0 else -1

    @property
    def is_principal(self) -> bool:
        return all(c.index == 0 for c in self.local_components)

    @property
    def order(self) -> int:
        result = 1
        for comp in self.local_components:
            _, orders, _ = _component_structure(comp.prime, comp.exponent)
            for k, o in zip(comp.exps, orders):
                result = math.lcm(result, o // math.gcd(k, o))
        return result

    def conjugate(self) -> "DirichletCharacter":
        return conjugate(self)

    def __mul__(self, other: "DirichletCharacter") -> "DirichletCharacter":
        return multiply(self, other)

    def __repr__(self) -> str:  # q:index, matching the CLI syntax
        return f"chi({self.modulus}:{character_index(self)})"


# ---------------------------------------------------------------------------
# construction and enumeration
# ---------------------------------------------------------------------------

def _group_orders(q: int) -> list[tuple[int, int, list[int]]]:
    """Per-component (p, e, generator orders) for modulus q."""
    out = []
    for p, e in _factorize(q):
        _, orders, _ = _component_structure(p, e)
        out.append((p, e, list(orders)))
    return out


def build_character(q: int, index: int) -> DirichletCharacter:
    """The index-th character mod q in the fixed lexicographic enumeration.

    Index 0 is the principal character; valid indices run over [0, phi(q)).
    """
    if q <= 0:
        raise ValueError(f"modulus must be positive, got {q}")
    structure = _group_orders(q)
    phi = 1
    for _, _, orders in structure:
        for o in orders:
            phi *= o
    if not (0 <= index < phi):
        raise ValueError(f"character index {index} out of range for modulus {q} (phi = {phi})")
    comps = []
    rem = index
    # last component varies fastest: lexicographic in the concatenated vector
    sizes = []
    for p, e, orders in structure:
        size = 1
        for o in orders:
            size *= o
        sizes.append(size)
    for (p, e, orders), size in zip(reversed(structure), reversed(sizes)):
        comps.append(CharComponent(p, e, rem % size))
        rem //= size
    comps.reverse()
    return DirichletCharacter(q, tuple(comps))


def character_index(chi: DirichletCharacter) -> int:
    """Inverse of build_character's enumeration."""
    idx = 0
    for comp in chi.local_components:
        _, orders, _ = _component_structure(comp.prime, comp.exponent)
        size = 1
        for o in orders:
            size *= o
        idx = idx * size + comp.index
    return idx


def character_group(q: int):
    """All phi(q) characters mod q, in enumeration order."""
    structure = _group_orders(q)
    phi = 1
    for _, _, orders in structure:
        for o in orders:
            phi *= o
    for k in range(phi):
        yield build_character(q, k)


# ---------------------------------------------------------------------------
# conductors and induction
# ---------------------------------------------------------------------------

def _component_conductor_exponent(comp: CharComponent) -> int:
    """Conductor exponent of a single prime-power component."""
    p, e = comp.prime, comp.exponent
    _, orders, _ = _component_structure(p, e)
    exps = comp.exps
    if all(k == 0 for k in exps):
        return 0
    if p != 2:
        # cyclic case: trivial on 1 + p^f O  iff  ord(chi_p) | phi(p^f)
        k = exps[0]
        o = orders[0]
        ord_chi = o // math.gcd(k, o)
        f = 1
        while (p - 1) * p ** (f - 1) % ord_chi != 0:
            f += 1
        return f
    # p = 2: components on (-1, 5) for e >= 3, on (3,) for e = 2
    if e == 2:
        return 2
    k_minus, k_five = exps
    o_five = orders[1]
    ord_five = o_five // math.gcd(k_five, o_five)
    if ord_five > 1:
        # the 5-part of order 2^m is trivial on 1 + 2^{m+2} Z and no smaller
        return ord_five.bit_length() + 1
    return 2 if k_minus else 0


def conductor(chi: DirichletCharacter) -> int:
    """Smallest f | q such that chi is induced from a character mod f."""
    f = 1
    for comp in chi.local_components:
        f *= comp.prime ** _component_conductor_exponent(comp)
    return f


def _solve_exps_on_generators(q: int, value_phase) -> DirichletCharacter:
    """Build the character mod q whose phase on each fixed generator is given.

    value_phase(residue) must return the exact phase (a Fraction) of the
    desired character at that residue; residues handed over are the canonical
    generators lifted by CRT to be 1 on every other component.
    """
    structure = _group_orders(q)
    moduli = [p**e for p, e, _ in structure]
    comps = []
    for i, (p, e, orders) in enumerate(structure):
        gens, _, _ = _component_structure(p, e)
        exps = []
        for g, o in zip(gens, orders):
            # lift g to a residue mod q that is 1 mod every other prime power
            residue = _crt_lift(g, i, moduli)
            ph = value_phase(residue)
            k = ph * o
            if k.denominator != 1:
                raise ArithmeticError("phase not compatible with generator order")
            exps.append(int(k) % o)
        comps.append(CharComponent(p, e, _rank(exps, orders)))
    return DirichletCharacter(q, tuple(comps))


def _rank(exps: list[int], orders) -> int:
    idx = 0
    for k, o in zip(exps, orders):
        idx = idx * o + k
    return idx


def _crt_lift(g: int, pos: int, moduli: list[int]) -> int:
    """Residue congruent to g mod moduli[pos] and 1 mod the others."""
    residue, mod = 0, 1
    for j, m in enumerate(moduli):
        target = g % m if j == pos else 1 % m
        # merge residue (mod mod) with target (mod m)
        inv = pow(mod, -1, m)
        residue = residue + mod * ((target - residue) * inv % m)
        mod *= m
    return residue % mod if mod > 1 else 0


def primitive_part(chi: DirichletCharacter) -> DirichletCharacter:
    """The primitive character mod conductor(chi) inducing chi."""
    f = conductor(chi)
    if f == chi.modulus:
        return chi
    q = chi.modulus

    def phase_at(residue: int) -> Fraction:
        # adjust the residue to be coprime to q without moving it mod f
        r = residue
        while math.gcd(r, q) != 1:
            r += f
        ph = chi.phase(r)
        assert ph is not None
        return ph

    return _solve_exps_on_generators(f, phase_at)


def multiply(chi1: DirichletCharacter, chi2: DirichletCharacter) -> DirichletCharacter:
    """Pointwise product, as a character mod lcm of the two moduli."""
    q = math.lcm(chi1.modulus, chi2.modulus)

    def phase_at(residue: int) -> Fraction:
        p1 = chi1.phase(residue)
        p2 = chi2.phase(residue)
        assert p1 is not None and p2 is not None
        return (p1 + p2) % 1

    return _solve_exps_on_generators(q, phase_at)


def conjugate(chi: DirichletCharacter) -> DirichletCharacter:
    """The complex conjugate (inverse) character."""
    comps = []
    for comp in chi.local_components:
        _, orders, _ = _component_structure(comp.prime, comp.exponent)
        exps = [(-k) % o for k, o in zip(comp.exps, orders)]
        comps.append(CharComponent(comp.prime, comp.exponent, _rank(exps, orders)))
    return DirichletCharacter(chi.modulus, tuple(comps))


def local_component(chi: DirichletCharacter, p: int) -> DirichletCharacter:
    """The p-part of chi, as a standalone character mod p^{v_p(q)}."""
    for comp in chi.local_components:
        if comp.prime == p:
            return DirichletCharacter(comp.modulus, (comp,))
    return DirichletCharacter(1, ())


def prime_to_p_part(chi: DirichletCharacter, p: int) -> DirichletCharacter:
    """chi with its p-component removed (trivial at p)."""
    comps = tuple(c for c in chi.local_components if c.prime != p)
    q = 1
    for c in comps:
        q *= c.modulus
    return DirichletCharacter(q, comps)


# ---------------------------------------------------------------------------
# Gauss sums and epsilon factors
# ---------------------------------------------------------------------------

def gauss_sum(chi: DirichletCharacter) -> complex:
    """The Gauss sum sum_{u mod q} chi(u) e(u/q), for primitive chi.

    Non-primitive input is rejected: the naive sum is not the normalized
    local quantity in that case.
    """
    q = chi.modulus
    if conductor(chi) != q:
        raise ValueError(f"gauss_sum requires a primitive character (conductor {conductor(chi)} != modulus {q})")
    if q == 1:
        return 1.0 + 0j
    total = 0j
    for u in range(1, q):
        ph = chi.phase(u)
        if ph is None:
            continue
        total += cmath.exp(2j * math.pi * (float(ph) + u / q))
    return total


@lru_cache(maxsize=256)
def value_table(chi: DirichletCharacter) -> np.ndarray:
    """chi(0), chi(1), ..., chi(q-1) as a complex array (cached)."""
    q = chi.modulus
    out = np.zeros(q, dtype=np.complex128)
    for u in range(q):
        out[u] = chi.evaluate(u)
    if q == 1:
        out[0] = 1.0
    return out


def gauss_sum_moduli_squared(q: int) -> np.ndarray:
    """|G(chi)|^2 for every primitive chi mod q, via one vectorized batch.

    Returns an array with one entry per primitive character (enumeration
    order).  Used by the classical-law sweep |G(chi)|^2 = q.
    """
    roots = np.exp(2j * np.pi * np.arange(q) / q)
    out = []
    for chi in character_group(q):
        if conductor(chi) != q:
            continue
        out.append(abs(np.dot(value_table(chi), roots)) ** 2)
    return np.asarray(out)


@dataclass(frozen=True)
class LocalEpsilonData:
    prime: int
    conductor_exponent: int
    epsilon_half: complex


def local_epsilon(chi: DirichletCharacter, p: int) -> LocalEpsilonData:
    """Unit-modulus local epsilon factor of chi at p, at the central point.

    Normalized as G(conj(chi_p)) / p^{a/2} with the additive character
    e(u / p^a); at an unramified place the trivial datum (a = 0, 1) is
    returned.  The conjugation orientation here is the one frozen by the
    global functional-equation suite; it is unobservable through any other
    code path.
    """
    a = 0
    for comp in chi.local_components:
        if comp.prime == p:
            a = _component_conductor_exponent(comp)
    if a == 0:
        return LocalEpsilonData(p, 0, 1.0 + 0j)
    comp_chi = primitive_part(local_component(chi, p))
    g = gauss_sum(conjugate(comp_chi))
    return LocalEpsilonData(p, a, g / p ** (a / 2.0))
