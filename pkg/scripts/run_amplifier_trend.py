#!/usr/bin/env python3
"""Track the normalized amplifier diagonal across dyadic prime windows.

For each progression modulus the ratio A_L phi(q) / (2 w~(1) L) is printed
per decade of L; equidistribution of primes in progressions drives every
column toward 1.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from eisenkit.amplifier import AmplifierConfig, asymptotic_report
from eisenkit.characters import build_character


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--moduli", type=str, default="1,3,4")
    parser.add_argument("--lmax", type=float, default=1e6)
    parser.add_argument("--r", type=float, default=20.0)
    args = parser.parse_args()

    principal = build_character(1, 0)
    windows = []
    L = 1e4
    while L <= args.lmax * 1.000001:
        windows.append(L)
        L *= 10.0

    start = time.time()
    for q in (int(v) for v in args.moduli.split(",")):
        cfgs = [AmplifierConfig(q=q, L=L, r1=args.r, r2=args.r,
                                chi1=principal, chi2=principal)
                for L in windows]
        rows = asymptotic_report(cfgs)
        cells = "  ".join(f"L=1e{len(f'{int(row.L)}') - 1}: {row.ratio:.4f}"
                          for row in rows)
        print(f"  q={q}: {cells}")
    print(f"done in {time.time() - start:.1f} s")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
