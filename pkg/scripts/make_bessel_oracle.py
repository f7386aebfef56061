#!/usr/bin/env python3
"""Freeze a reference table for the Bessel backend acceptance test.

Draws (t, x) pairs with t uniform in [-50, 50] and x log-uniform in
[1e-3, 100], evaluates K_{it}(x) by the cosh-integral quadrature that the
test suite keeps as an independent oracle, and writes the triples to a JSON
fixture.  The draw is seeded so the fixture is reproducible bit for bit;
regenerating it after an oracle change is a deliberate act, not drift.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
import time
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO / "tests"))

from oracles import bessel_quadrature  # noqa: E402


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--count", type=int, default=1000)
    parser.add_argument("--seed", type=int, default=20260822)
    parser.add_argument("--out", type=Path,
                        default=REPO / "tests" / "data" / "bessel_oracle.json")
    args = parser.parse_args()

    rng = random.Random(args.seed)
    entries = []
    start = time.time()
    for k in range(args.count):
        t = rng.uniform(-50.0, 50.0)
        x = 10.0 ** rng.uniform(-3.0, 2.0)
        entries.append([t, x, bessel_quadrature(t, x)])
        if (k + 1) % 100 == 0:
            print(f"  {k + 1}/{args.count}  ({time.time() - start:.1f} s)")

    payload = {
        "schema": "eisenkit-bessel-oracle-v1",
        "seed": args.seed,
        "count": args.count,
        "entries": entries,
    }
    args.out.parent.mkdir(parents=True, exist_ok=True)
    with open(args.out, "w") as fh:
        json.dump(payload, fh, indent=1)
        fh.write("\n")
    print(f"wrote {args.out} with {len(entries)} entries "
          f"in {time.time() - start:.1f} s")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
