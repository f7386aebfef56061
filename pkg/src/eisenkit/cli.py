"""Command-line surface: evaluation, scattering, identity checks, amplifier
tables, sup-norm scans, and a curated selftest.

Conventions shared by every subcommand:

* characters are written ``q:index`` against the fixed enumeration of
  build_character, so invocations are scriptable and unambiguous;
* ``--config FILE`` reads a flat ``key = value`` manifest whose entries act
  as defaults for the same-named flags (a flag given on the command line
  wins), which keeps experiment setups reproducible;
* results go to ``--out`` when given, otherwise to stdout, in JSON or CSV
  per ``--format``; the last stdout line is always a one-line summary;
* exit codes: 0 success, 2 validation problem, 3 numeric-envelope problem.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
import time

from eisenkit.characters import (
    DirichletCharacter,
    build_character,
    character_index,
    gauss_sum_moduli_squared,
)
from eisenkit.amplifier import AmplifierConfig, amplifier_sum, asymptotic_report, b_xi, factorization_check
from eisenkit.eisenstein import (
    EisensteinParams,
    evaluate,
    fourier_coefficient,
    functional_equation_residual,
    scattering_constant,
)
from eisenkit.lfunctions import LValueRequest, completed_lambda, dirichlet_l
from eisenkit.special_functions import BesselRequest, NumericsError, bessel_k
from eisenkit.supnorm import exponent_fit, load_report, scan, theorem_reference

__all__ = ["main", "run"]


# ---------------------------------------------------------------------------
# argument plumbing
# ---------------------------------------------------------------------------

def _character(text: str) -> DirichletCharacter:
    try:
        q_str, _, idx_str = text.partition(":")
        return build_character(int(q_str), int(idx_str))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad character spec {text!r}: {exc}") from exc


def _complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad complex number {text!r}") from exc


def _float_list(text: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad number list {text!r}") from exc


def _config_flags(path: str) -> list[str]:
    """Flat key = value manifest, rewritten as flags to prepend.

    Prepending keeps precedence right with no extra machinery: argparse lets
    a later occurrence of a flag override an earlier one, so anything typed
    on the command line beats the manifest.
    """
    flags: list[str] = []
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ValueError(f"{path}:{lineno}: expected key = value, got {raw.strip()!r}")
            key = key.strip().replace("_", "-")
            value = value.strip().strip("\"'")
            if value.lower() in ("true", "false"):
                if value.lower() == "true":
                    flags.append(f"--{key}")
            else:
                flags.extend([f"--{key}", value])
    return flags


def _emit(args, payload: dict, csv_text: str | None) -> None:
    if args.format == "csv" and csv_text is None:
        raise ValueError(f"subcommand {args.command!r} has no CSV form")
    body = csv_text if args.format == "csv" else json.dumps(payload, indent=2)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(body if body.endswith("\n") else body + "\n")
    else:
        print(body)


def _add_common(sub) -> None:
    sub.add_argument("--config", help="flat key = value manifest supplying flag defaults")
    sub.add_argument("--out", help="output file (default: print to stdout)")
    sub.add_argument("--format", choices=("json", "csv"), default="json")
    sub.add_argument("--threads", type=int, default=None,
                     help="worker cap (default: EISENKIT_THREADS or 1)")
    sub.add_argument("--seed", type=int, default=None, help="seed for randomized point draws")


def _pair(sub, required: bool = True) -> None:
    sub.add_argument("--chi1", type=_character, required=required, help="first character, q:index")
    sub.add_argument("--chi2", type=_character, required=required, help="second character, q:index")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eisenkit",
        description="Eisenstein series for character pairs: values, scattering, "
                    "identity checks, amplifier sums, sup-norm scans.")
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("eval", help="evaluate the series at one point")
    _pair(sub)
    sub.add_argument("--t0", type=float, required=True, help="spectral parameter t")
    sub.add_argument("--sigma", type=float, default=0.0, help="real part of s")
    sub.add_argument("--x", type=float, default=0.0)
    sub.add_argument("--y", type=float, required=True)
    sub.add_argument("--eps", type=float, default=1e-8, help="truncation target")
    _add_common(sub)

    sub = subs.add_parser("scatter", help="scattering constant and local factors")
    _pair(sub)
    sub.add_argument("--t0", type=float, required=True)
    sub.add_argument("--sigma", type=float, default=0.0)
    _add_common(sub)

    sub = subs.add_parser("fecheck", help="functional-equation residuals on a point set")
    _pair(sub)
    sub.add_argument("--t0", type=float, required=True)
    sub.add_argument("--points", type=int, default=20)
    sub.add_argument("--ymin", type=float, default=0.5)
    sub.add_argument("--ymax", type=float, default=3.0)
    sub.add_argument("--eps", type=float, default=1e-8)
    _add_common(sub)

    sub = subs.add_parser("amp", help="amplifier sums and the asymptotic ratio")
    sub.add_argument("--q", type=int, required=True, help="progression modulus")
    sub.add_argument("--L", type=_float_list, required=True,
                     help="window length, or comma list of lengths")
    sub.add_argument("--r", type=float, default=None, help="sets r1 = r2 = r")
    sub.add_argument("--r1", type=float, default=None)
    sub.add_argument("--r2", type=float, default=None)
    _pair(sub, required=False)
    _add_common(sub)

    sub = subs.add_parser("scan", help="grid scan of |F| and optional exponent fit")
    _pair(sub, required=False)
    sub.add_argument("--level1", action="store_true", help="shorthand for --chi1 1:0 --chi2 1:0")
    sub.add_argument("--t0", type=_float_list, required=True, help="comma list of spectral parameters")
    sub.add_argument("--xsteps", type=int, default=64)
    sub.add_argument("--eps", type=float, default=1e-8)
    sub.add_argument("--fit", action="store_true", help="fit log(sup) against log(T)")
    _add_common(sub)

    sub = subs.add_parser("bessel", help="one K-Bessel value")
    sub.add_argument("--sigma", type=float, default=0.0, help="real part of the order")
    sub.add_argument("--t", type=float, required=True, help="imaginary part of the order")
    sub.add_argument("--x", type=float, required=True)
    sub.add_argument("--target", type=float, default=1e-12)
    _add_common(sub)

    sub = subs.add_parser("lfunc", help="one Dirichlet L-value")
    sub.add_argument("--chi", type=_character, required=True, help="character, q:index")
    sub.add_argument("--s", type=_complex, required=True, help="complex point, e.g. 1+2j")
    sub.add_argument("--completed", action="store_true", help="completed Lambda instead of L")
    _add_common(sub)

    sub = subs.add_parser("selftest", help="curated internal checks with PASS/FAIL lines")
    _add_common(sub)

    return parser


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_eval(args) -> int:
    params = EisensteinParams(args.chi1, args.chi2, args.t0, args.sigma)
    value = evaluate(params, args.x, args.y, args.eps)
    payload = {
        "schema": "eisenkit-eval-v1",
        "s": [params.sigma, params.t_shift],
        "x": args.x, "y": args.y, "eps": args.eps,
        "value": [value.real, value.imag],
    }
    _emit(args, payload, f"x,y,re,im\n{args.x!r},{args.y!r},{value.real!r},{value.imag!r}\n")
    print(f"E at x={args.x:g}, y={args.y:g}, s={params.s:g}: {value:.12g}")
    return 0


def _cmd_scatter(args) -> int:
    params = EisensteinParams(args.chi1, args.chi2, args.t0, args.sigma)
    data = scattering_constant(params)
    c = data.scattering
    payload = {
        "schema": "eisenkit-scatter-v1",
        "s": [params.sigma, params.t_shift],
        "scattering": [c.real, c.imag],
        "modulus": abs(c),
        "ramified_product": [data.ramified_product.real, data.ramified_product.imag],
        "local_factors": {str(p): [v.real, v.imag] for p, v in sorted(data.local_factors.items())},
    }
    _emit(args, payload, None)
    print(f"c(s) at s={params.s:g}: {c:.12g}  |c| = {abs(c):.12g}")
    return 0


def _cmd_fecheck(args) -> int:
    params = EisensteinParams(args.chi1, args.chi2, args.t0)
    if args.points < 1:
        raise ValueError("need at least one point")
    if not 0 < args.ymin <= args.ymax:
        raise ValueError("need 0 < ymin <= ymax")
    if args.seed is not None:
        rng = random.Random(args.seed)
        pts = [(rng.uniform(0.0, 0.5), math.exp(rng.uniform(math.log(args.ymin), math.log(args.ymax))))
               for _ in range(args.points)]
    else:
        pts = []
        for j in range(args.points):
            frac = (j + 0.5) / args.points
            pts.append((0.5 * frac,
                        args.ymin * (args.ymax / args.ymin) ** frac))
    rows = []
    for x, y in pts:
        rows.append({"x": x, "y": y,
                     "residual": functional_equation_residual(params, x, y, args.eps)})
    worst = max(row["residual"] for row in rows)
    payload = {"schema": "eisenkit-fecheck-v1",
               "chi1": [args.chi1.modulus, character_index(args.chi1)],
               "chi2": [args.chi2.modulus, character_index(args.chi2)],
               "t0": args.t0, "eps": args.eps,
               "points": rows, "max_residual": worst}
    csv_text = "x,y,residual\n" + "".join(
        f"{r['x']!r},{r['y']!r},{r['residual']!r}\n" for r in rows)
    _emit(args, payload, csv_text)
    print(f"fecheck: {len(rows)} points, max residual {worst:.3e}")
    return 0


def _amp_config(args, length: float) -> AmplifierConfig:
    r1 = args.r1 if args.r1 is not None else (args.r if args.r is not None else 0.0)
    r2 = args.r2 if args.r2 is not None else (args.r if args.r is not None else 0.0)
    chi1 = args.chi1 if args.chi1 is not None else build_character(1, 0)
    chi2 = args.chi2 if args.chi2 is not None else build_character(1, 0)
    return AmplifierConfig(q=args.q, L=length, r1=r1, r2=r2, chi1=chi1, chi2=chi2)


def _cmd_amp(args) -> int:
    cfgs = [_amp_config(args, length) for length in args.L]
    rows = asymptotic_report(cfgs)
    payload = {"schema": "eisenkit-amp-v1",
               "q": args.q,
               "rows": [{"L": row.L,
                         "A": [row.amplifier_value.real, row.amplifier_value.imag],
                         "ratio": row.ratio} for row in rows]}
    csv_text = "L,A_re,A_im,ratio\n" + "".join(
        f"{row.L!r},{row.amplifier_value.real!r},{row.amplifier_value.imag!r},{row.ratio!r}\n"
        for row in rows)
    _emit(args, payload, csv_text)
    last = rows[-1]
    print(f"amp: q={args.q}, L={last.L:g}: ratio {last.ratio:.6g}")
    return 0


def _cmd_scan(args) -> int:
    if args.level1:
        chi1 = chi2 = build_character(1, 0)
    elif args.chi1 is not None and args.chi2 is not None:
        chi1, chi2 = args.chi1, args.chi2
    else:
        raise ValueError("give --level1 or both --chi1 and --chi2")
    if not args.t0:
        raise ValueError("need at least one t0")
    params = EisensteinParams(chi1, chi2, args.t0[0])
    reports = []
    for t in args.t0:
        rep = scan(params, t, x_steps=args.xsteps, eps=args.eps, threads=args.threads)
        reports.append(rep)
        if args.out:
            stem = f"{args.out}-t{t:g}"
            with open(stem + ".json", "w", encoding="utf-8") as handle:
                handle.write(rep.to_json() + "\n")
            with open(stem + ".csv", "w", encoding="utf-8") as handle:
                handle.write(rep.to_csv())
        print(f"scan t0={t:g}: sup {rep.supremum:.6g} at (x, y) = "
              f"({rep.argmax[0]:.4f}, {rep.argmax[1]:.4f}), "
              f"{rep.metadata['y_points']}x{rep.metadata['x_steps']} grid, "
              f"{rep.wall_time:.1f} s, reference {rep.metadata['reference_bound']:.4g}")
    if args.fit:
        slope = exponent_fit(reports)
        print(f"fitted exponent: {slope:.4f} (comparison bound exponent 0.375)")
    return 0


def _cmd_bessel(args) -> int:
    req = BesselRequest(complex(args.sigma, args.t), args.x, args.target)
    value = bessel_k(req)
    payload = {"schema": "eisenkit-bessel-v1",
               "order": [args.sigma, args.t], "x": args.x, "target": args.target,
               "value": [value.real, value.imag]}
    _emit(args, payload, None)
    print(f"K_({args.sigma:g}{args.t:+g}j)({args.x:g}) = {value:.12g}")
    return 0


def _cmd_lfunc(args) -> int:
    req = LValueRequest(args.s, args.chi, completed=args.completed)
    value = completed_lambda(req) if args.completed else dirichlet_l(req)
    payload = {"schema": "eisenkit-lfunc-v1",
               "modulus": args.chi.modulus, "s": [args.s.real, args.s.imag],
               "completed": args.completed, "value": [value.real, value.imag]}
    _emit(args, payload, None)
    name = "Lambda" if args.completed else "L"
    print(f"{name}({args.s:g}, chi mod {args.chi.modulus}) = {value:.12g}")
    return 0


# ---------------------------------------------------------------------------
# selftest
# ---------------------------------------------------------------------------

def _selftest_checks():
    import mpmath

    def gauss_law():
        worst = 0.0
        for q in range(3, 101):
            devs = gauss_sum_moduli_squared(q)
            if devs.size:
                worst = max(worst, float(abs(devs - q).max()))
        return worst < 1e-10, f"max |G|^2 deviation {worst:.2e}"

    def hecke():
        params = EisensteinParams(build_character(4, 1), build_character(3, 1), 1.5)
        lam = {n: fourier_coefficient(params, n) for n in range(1, 2001)}
        prod = params.chi1.evaluate(3) * params.chi2.evaluate(3)
        worst = 0.0
        for k in range(1, 6):
            lhs = lam[3 ** (k + 1)]
            rhs = lam[3] * lam[3 ** k] - prod * lam[3 ** (k - 1)]
            worst = max(worst, abs(lhs - rhs))
        for m, n in ((4, 9), (25, 49), (11, 13), (8, 27)):
            worst = max(worst, abs(lam[m * n] - lam[m] * lam[n]))
        return worst < 1e-12, f"max defect {worst:.2e}"

    def fe_residual():
        params = EisensteinParams(build_character(1, 0), build_character(4, 1), 5.0)
        worst = max(functional_equation_residual(params, 0.3, y) for y in (0.6, 1.1, 2.3))
        return worst < 1e-6, f"max residual {worst:.2e}"

    def bessel_half():
        worst = 0.0
        for x in (0.01, 0.5, 3.0, 40.0, 300.0):
            got = bessel_k(BesselRequest(0.5, x))
            ref = math.sqrt(math.pi / (2 * x)) * math.exp(-x)
            worst = max(worst, abs(got - ref) / ref)
        return worst < 1e-13, f"max closed-form deviation {worst:.2e}"

    def bessel_reference():
        worst = 0.0
        with mpmath.workdps(40):
            for t, x in ((12.0, 0.5), (30.0, 9.0), (50.0, 250.0), (60.0, 360.0)):
                got = bessel_k(BesselRequest(1j * t, x))
                ref = complex(mpmath.besselk(1j * t, x))
                worst = max(worst, abs(got - ref) / max(abs(ref), 1e-300))
        return worst < 1e-10, f"max cross-check deviation {worst:.2e}"

    def scattering_unitary():
        params = EisensteinParams(build_character(4, 1), build_character(3, 1), 7.0)
        c = scattering_constant(params).scattering
        dev = abs(abs(c) - math.sqrt(4.0 / 3.0))
        cdual = scattering_constant(params.dual()).scattering
        dev = max(dev, abs(c * cdual - 1))
        return dev < 1e-10, f"max deviation {dev:.2e}"

    def amp_window():
        triv = build_character(1, 0)
        cfg = AmplifierConfig(q=1, L=10.0, r1=0.0, r2=0.0, chi1=triv, chi2=triv)
        want = 4.0 * math.fsum(cfg.weight(p / 10) * math.log(p) for p in (11, 13, 17, 19))
        dev = abs(amplifier_sum(cfg) - want)
        return dev < 1e-12, f"window deviation {dev:.2e}"

    def amp_naive():
        chi1, chi2 = build_character(4, 1), build_character(3, 1)
        cfg = AmplifierConfig(q=5, L=1000.0, r1=2.0, r2=-1.0, chi1=chi1, chi2=chi2)
        naive = 0j
        for p in range(1000, 2001):
            if p % 5 != 1 or any(p % d == 0 for d in range(2, math.isqrt(p) + 1)):
                continue
            e1 = chi1.evaluate(p) * p ** (2j) + chi2.evaluate(p) * p ** (-2j)
            e2 = (chi1.evaluate(p) * p ** (-1j) + chi2.evaluate(p) * p ** (1j)).conjugate()
            naive += cfg.weight(p / 1000.0) * math.log(p) * e1 * e2
        dev = abs(amplifier_sum(cfg) - naive)
        return dev < 1e-12, f"sieve vs direct deviation {dev:.2e}"

    def factorization():
        rng = random.Random(11)
        triv = build_character(1, 0)
        worst = 0.0
        for _ in range(3):
            cfg = AmplifierConfig(q=5, L=10.0, r1=rng.uniform(-20, 20), r2=rng.uniform(-20, 20),
                                  chi1=triv, chi2=triv)
            xi = build_character(5, 2)
            for p in (7, 11, 101, 499):
                worst = max(worst, factorization_check(p, xi, cfg))
        return worst < 1e-10, f"max defect {worst:.2e}"

    def leibniz():
        value = dirichlet_l(LValueRequest(1.0, build_character(4, 1)))
        dev = abs(value - math.pi / 4)
        return dev < 1e-12, f"|L(1) - pi/4| = {dev:.2e}"

    def scan_roundtrip():
        params = EisensteinParams(build_character(1, 0), build_character(1, 0), 8.0)
        rep1 = scan(params, 8.0, x_steps=8, eps=1e-6, threads=1)
        rep2 = scan(params, 8.0, x_steps=8, eps=1e-6, threads=4)
        stable = all(a == b for a, b in zip(rep1.grid, rep2.grid))
        same = load_report(rep1.to_json()) == rep1
        return stable and same, f"thread-stable {stable}, round-trip {same}"

    return [
        ("gauss-modulus", gauss_law),
        ("hecke-recurrence", hecke),
        ("fe-residual", fe_residual),
        ("bessel-closed-form", bessel_half),
        ("bessel-reference", bessel_reference),
        ("scattering-unitarity", scattering_unitary),
        ("amplifier-window", amp_window),
        ("amplifier-naive", amp_naive),
        ("factorization-identity", factorization),
        ("l-value-leibniz", leibniz),
        ("scan-roundtrip", scan_roundtrip),
    ]


def _cmd_selftest(args) -> int:
    checks = _selftest_checks()
    start = time.perf_counter()
    failures = 0
    for name, fn in checks:
        t0 = time.perf_counter()
        try:
            ok, detail = fn()
        except Exception as exc:   # a crashed check is a failed check
            ok, detail = False, f"raised {type(exc).__name__}: {exc}"
        dt = time.perf_counter() - t0
        print(f"{'PASS' if ok else 'FAIL'} {name} ({detail}, {dt:.2f} s)")
        failures += 0 if ok else 1
    total = time.perf_counter() - start
    print(f"selftest: {len(checks) - failures}/{len(checks)} passed in {total:.1f} s")
    return 0 if failures == 0 else 1


# ---------------------------------------------------------------------------
# entry points
# ---------------------------------------------------------------------------

_DISPATCH = {
    "eval": _cmd_eval,
    "scatter": _cmd_scatter,
    "fecheck": _cmd_fecheck,
    "amp": _cmd_amp,
    "scan": _cmd_scan,
    "bessel": _cmd_bessel,
    "lfunc": _cmd_lfunc,
    "selftest": _cmd_selftest,
}


def run(argv) -> int:
    argv = list(argv)
    if argv and "--config" in argv[1:]:
        at = argv.index("--config")
        try:
            injected = _config_flags(argv[at + 1])
        except (OSError, ValueError, IndexError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        argv = [argv[0]] + injected + argv[1:]
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if not exc.code else 2
    try:
        return _DISPATCH[args.command](args)
    except NumericsError as exc:
        print(f"numeric envelope: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> int:
    return run(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
