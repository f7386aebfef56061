#!/usr/bin/env python3
"""Sweep the functional-equation residual over the standard character matrix.

Prints one line per (character pair, height) cell with the worst residual
over a strip of sample points, and a final verdict against the 1e-6 bar.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from eisenkit.characters import build_character
from eisenkit.eisenstein import EisensteinParams, functional_equation_residual

PAIRS = [
    ("1 x 1", (1, 0), (1, 0)),
    ("1 x mod4", (1, 0), (4, 1)),
    ("mod3 x mod4", (3, 1), (4, 1)),
    ("mod5 x mod5'", (5, 1), (5, 3)),
]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--points", type=int, default=20)
    parser.add_argument("--eps", type=float, default=1e-8)
    parser.add_argument("--heights", type=str, default="5,10")
    args = parser.parse_args()

    heights = [float(v) for v in args.heights.split(",")]
    start = time.time()
    overall = 0.0
    for label, c1, c2 in PAIRS:
        chi1 = build_character(*c1)
        chi2 = build_character(*c2)
        for t0 in heights:
            params = EisensteinParams(chi1, chi2, t0)
            worst = 0.0
            for k in range(args.points):
                x = -0.5 + (k + 0.5) / args.points
                y = 0.5 + 2.5 * k / max(args.points - 1, 1)
                worst = max(worst, functional_equation_residual(params, x, y, args.eps))
            overall = max(overall, worst)
            print(f"  {label:14s} t0={t0:5.1f}  max residual {worst:.3e}")
    ok = overall < 1e-6
    print(f"{'PASS' if ok else 'FAIL'}: overall max {overall:.3e} "
          f"({time.time() - start:.1f} s)")
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
