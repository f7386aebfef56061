"""Grid scans of the non-constant Fourier part over a Siegel-type region.

The scan measures |F| rather than |E| because the constant term dominates
high in the cusp while the sup-norm question concerns everything else.  The
region is {x + iy : 0 <= x <= 1/2, y >= y_min}: the expansion is even and
1-periodic in x, so the half-interval already sees the full supremum.  The
y-grid is geometric because the Bessel factors switch from oscillation to
decay near y = T/(2pi) and the interesting structure concentrates there.

Scans are deterministic by construction: the Bessel rows are produced by a
single serial pass (the arbitrary-precision backend keeps global state), and
each grid point is then assembled by a fixed-order compensated sum, so the
reported values do not depend on how the assembly work is partitioned.
"""

from __future__ import annotations

import json
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from eisenkit.characters import build_character, character_index
from eisenkit.eisenstein import (
    EisensteinParams,
    _archimedean_constant,
    _k_value,
    build_coefficient_table,
    coefficient_prefactor,
)
from eisenkit.special_functions import NumericsError, whittaker_tail_cutoff

__all__ = [
    "ScanAbortedError",
    "ScanReport",
    "exponent_fit",
    "geometric_grid",
    "load_report",
    "scan",
    "spectral_height",
    "theorem_reference",
]

_Y_FLOOR = 0.3
_SCHEMA = "eisenkit-scan-v1"


def spectral_height(t0: float) -> float:
    """T = max(1/2, |t0|), the height entering every bound and fit."""
    return max(0.5, abs(t0))


def geometric_grid(y_min: float, y_max: float, ratio: float = 1.05) -> list[float]:
    if not (y_max >= y_min > 0 and ratio > 1):
        raise ValueError("need 0 < y_min <= y_max and ratio > 1")
    grid = [y_min]
    while grid[-1] * ratio <= y_max:
        grid.append(grid[-1] * ratio)
    return grid


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

class ScanAbortedError(RuntimeError):
    """A grid evaluation failed; the message carries partial-progress data."""


@dataclass(frozen=True)
class ScanReport:
    params: EisensteinParams
    t0: float
    grid: tuple          # rows (x, y, |F|), y-major, fixed order
    supremum: float
    argmax: tuple        # (x, y) of the first row attaining the supremum
    truncation_eps: float
    wall_time: float
    metadata: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> str:
        payload = {
            "schema": _SCHEMA,
            "chi1": [self.params.chi1.modulus, character_index(self.params.chi1)],
            "chi2": [self.params.chi2.modulus, character_index(self.params.chi2)],
            "t0": self.t0,
            "supremum": self.supremum,
            "argmax": list(self.argmax),
            "truncation_eps": self.truncation_eps,
            "wall_time": self.wall_time,
            "metadata": self.metadata,
            "grid": [list(row) for row in self.grid],
        }
        return json.dumps(payload, indent=2)

    def to_csv(self) -> str:
        lines = ["x,y,absF"]
        for x, y, val in self.grid:
            lines.append(f"{x!r},{y!r},{val!r}")
        return "\n".join(lines) + "\n"


def load_report(text: str) -> ScanReport:
    payload = json.loads(text)
    if payload.get("schema") != _SCHEMA:
        raise ValueError(f"unrecognized report schema {payload.get('schema')!r}")
    chi1 = build_character(*payload["chi1"])
    chi2 = build_character(*payload["chi2"])
    t0 = float(payload["t0"])
    return ScanReport(
        params=EisensteinParams(chi1, chi2, t0),
        t0=t0,
        grid=tuple((row[0], row[1], row[2]) for row in payload["grid"]),
        supremum=payload["supremum"],
        argmax=tuple(payload["argmax"]),
        truncation_eps=payload["truncation_eps"],
        wall_time=payload["wall_time"],
        metadata=payload["metadata"],
    )


# ---------------------------------------------------------------------------
# scanning
# ---------------------------------------------------------------------------

def _assemble_row(scale_abs, y, weights, xs):
    """|F| along one horizontal row from precomputed coefficient*Bessel data."""
    root = math.sqrt(y)
    out = []
    for x in xs:
        re_terms = []
        im_terms = []
        for n, (wre, wim) in enumerate(weights, start=1):
            c = 2.0 * math.cos(2.0 * math.pi * n * x)
            re_terms.append(wre * c)
            im_terms.append(wim * c)
        val = scale_abs * root * math.hypot(math.fsum(re_terms), math.fsum(im_terms))
        out.append((x, y, val))
    return out


def scan(params: EisensteinParams, t0: float, x_steps: int = 64,
         y_grid=None, eps: float = 1e-8, threads: int | None = None) -> ScanReport:
    """Measure |F(it0, x + iy)| over the grid and extract the supremum.

    The character pair is taken from ``params``; the spectral point is pinned
    to s = i*t0.  ``y_grid`` may be any increasing sequence of heights above
    the evaluation floor; by default a geometric grid up to 1.2*T/(2pi),
    which covers the transition range where the supremum is attained.
    """
    if x_steps < 1:
        raise ValueError("x_steps must be positive")
    if eps <= 0:
        raise ValueError("eps must be positive")
    here = EisensteinParams(params.chi1, params.chi2, float(t0))
    T = spectral_height(t0)
    if y_grid is None:
        y_grid = geometric_grid(_Y_FLOOR, max(1.2 * T / (2.0 * math.pi), _Y_FLOOR * 1.3))
    ys = [float(y) for y in y_grid]
    if not ys or min(ys) < _Y_FLOOR * (1 - 1e-12):
        raise ValueError(f"y-grid must stay at or above the evaluation floor {_Y_FLOOR}")
    ys.sort()
    xs = [0.5 * i / (x_steps - 1) if x_steps > 1 else 0.0 for i in range(x_steps)]

    start = time.perf_counter()
    scale = coefficient_prefactor(here) * _archimedean_constant(here)
    scale_abs = abs(scale)
    budgets = []
    for y in ys:
        tail = eps / (4.6 * max(scale_abs * math.sqrt(y), 1e-300))
        budgets.append(whittaker_tail_cutoff(t0, y, tail))
    table = build_coefficient_table(here, max(budgets))

    # One serial pass produces every Bessel row; everything after is plain
    # float arithmetic and safe to farm out.
    kcache: dict = {}
    order = here.s
    row_weights = []
    for y, m in zip(ys, budgets):
        try:
            weights = []
            for n in range(1, m + 1):
                lam = table.coefficients[n]
                kval = _k_value(order, 2.0 * math.pi * n * y, kcache)
                prod = lam * kval
                weights.append((prod.real, prod.imag))
        except NumericsError as exc:
            raise ScanAbortedError(
                f"scan aborted at y = {y:.6g} after {len(row_weights)} of "
                f"{len(ys)} rows: {exc}") from exc
        row_weights.append(weights)

    if threads is None:
        threads = int(os.environ.get("EISENKIT_THREADS", "1") or "1")
    jobs = list(zip(ys, row_weights))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(
                lambda job: _assemble_row(scale_abs, job[0], job[1], xs), jobs))
    else:
        rows = [_assemble_row(scale_abs, y, w, xs) for y, w in jobs]

    grid = tuple(entry for row in rows for entry in row)
    sup = max(entry[2] for entry in grid)
    best = next(entry for entry in grid if entry[2] == sup)
    elapsed = time.perf_counter() - start
    metadata = {
        "chart": "cusp-infinity",
        "auxiliary_levels": "N0 = 1 and m1 = 1 in this chart over the rationals",
        "reference_bound": theorem_reference(here, t0),
        "x_steps": x_steps,
        "y_points": len(ys),
    }
    return ScanReport(params=here, t0=float(t0), grid=grid, supremum=sup,
                      argmax=(best[0], best[1]), truncation_eps=eps,
                      wall_time=elapsed, metadata=metadata)


# ---------------------------------------------------------------------------
# exponent fits and the comparison bound
# ---------------------------------------------------------------------------

def exponent_fit(reports) -> float:
    """Least-squares slope of log(supremum) against log(T) across reports."""
    reports = list(reports)
    if len(reports) < 3:
        raise ValueError("exponent fit needs at least 3 reports")
    pair = (reports[0].params.chi1, reports[0].params.chi2)
    for rep in reports[1:]:
        if (rep.params.chi1, rep.params.chi2) != pair:
            raise ValueError("exponent fit needs a fixed character pair")
    logt = [math.log(spectral_height(rep.t0)) for rep in reports]
    logs = [math.log(rep.supremum) for rep in reports]
    n = len(reports)
    mt = math.fsum(logt) / n
    ms = math.fsum(logs) / n
    num = math.fsum((a - mt) * (b - ms) for a, b in zip(logt, logs))
    den = math.fsum((a - mt) ** 2 for a in logt)
    if den == 0:
        raise ValueError("exponent fit needs distinct spectral heights")
    return num / den


def theorem_reference(params: EisensteinParams, T: float) -> float:
    """Shape of the comparison bound, (N*T)^eps * T^(3/8) with eps = 0.01.

    Annotation only: the implied constant is unknown, so reports display this
    next to the measured supremum without asserting anything.
    """
    t_eff = spectral_height(T)
    return (params.level * t_eff) ** 0.01 * t_eff ** 0.375
