#!/usr/bin/env python3
"""Scan |F| over the Siegel region at a ladder of spectral heights.

Writes one JSON report per height, prints the supremum against the
reference bound, and fits the growth exponent when the ladder has at
least three rungs.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from eisenkit.characters import build_character
from eisenkit.eisenstein import EisensteinParams
from eisenkit.supnorm import exponent_fit, scan, spectral_height, theorem_reference


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--heights", type=str, default="20,40,80,160")
    parser.add_argument("--xsteps", type=int, default=64)
    parser.add_argument("--eps", type=float, default=1e-8)
    parser.add_argument("--threads", type=int, default=None)
    parser.add_argument("--outdir", type=Path, default=Path("scan-reports"))
    args = parser.parse_args()

    params = EisensteinParams(build_character(1, 0), build_character(1, 0), 0.0)
    args.outdir.mkdir(parents=True, exist_ok=True)

    reports = []
    for t0 in (float(v) for v in args.heights.split(",")):
        tick = time.time()
        report = scan(params, t0, x_steps=args.xsteps, eps=args.eps,
                      threads=args.threads)
        reports.append(report)
        ref = theorem_reference(params, spectral_height(t0))
        path = args.outdir / f"level1-t{t0:g}.json"
        path.write_text(report.to_json())
        print(f"  t0={t0:6.1f}: sup {report.supremum:8.4f}  reference {ref:8.4f}  "
              f"{time.time() - tick:5.1f} s  -> {path}")

    if len(reports) >= 3:
        print(f"fitted exponent {exponent_fit(reports):.4f} "
              f"(comparison bound exponent 0.375)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
