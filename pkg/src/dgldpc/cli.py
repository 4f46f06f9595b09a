"""``dgldpc`` command line: analyze, growth, oracle and stopping subcommands.

Exit codes: 0 success, 2 invalid input, 3 size limit, 4 numerical failure.
Data goes to files or stdout; logs go to stderr.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .asymptotics import (
    GrowthSolver,
    classify,
    critical_exponent,
    small_alpha_expansion,
    stability_bound,
    stopping_set_expansion,
)
from .ensemble import derive, validate_graph_realizability
from .errors import (
    DGLDPCError,
    InfeasibleError,
    NotApplicableError,
    NumericalError,
    RealizabilityError,
    SizeLimitError,
)
from .oracle import exact_average_spectrum, monte_carlo_spectrum
from .specfile import build_report, derived_to_dict, load_ensemble

log = logging.getLogger("dgldpc")

EXIT_OK, EXIT_INVALID, EXIT_SIZE, EXIT_NUMERIC = 0, 2, 3, 4


def _write_json(obj, path: str | None) -> None:
    text = json.dumps(obj, indent=2) + "\n"
    if path:
        Path(path).write_text(text)
        log.info("wrote %s", path)
    else:
        sys.stdout.write(text)


def _theory_sections(par) -> dict:
    out = {"derived": derived_to_dict(par)}
    if not par.expansion_applicable:
        return out
    verdict = classify(par)
    out["classification"] = {"verdict": verdict.verdict, "discriminant": str(verdict.discriminant), "rule": verdict.rule}
    exp = small_alpha_expansion(par)
    out["expansion"] = {
        "alpha_log_alpha_coeff": str(exp.alpha_log_alpha_coeff),
        "linear_coeff": exp.linear_coeff,
        "xi": str(exp.xi),
    }
    if par.rp2:
        out["stability_bound"] = stability_bound(par)
    return out


def cmd_analyze(args) -> int:
    ens = load_ensemble(args.spec)
    par = derive(ens)
    sections = _theory_sections(par)
    report = build_report(ens, sections)
    if args.out or args.json:
        _write_json(report, args.out)
    if not args.json:
        d = sections["derived"]
        print(f"ensemble       {ens.name or Path(args.spec).stem}")
        print(f"design rate    {d['design_rate']}")
        print(f"r, p           {d['r']}, {d['p']}   psi = {d['psi']}")
        print(f"C, V           {d['C']}, {d['V']}")
        if "dominant_set" in d:
            dom = d["dominant_set"]
            print(f"T              {dom['T']}   Y_v = {dom['Y_v']}   P = {dom['P']}")
            c = sections["classification"]
            e = sections["expansion"]
            print(f"verdict        {c['verdict']} ({c['rule']}, discriminant {c['discriminant']})")
            print(f"expansion      G(a) = {e['alpha_log_alpha_coeff']} a log a + {e['linear_coeff']:.12g} a + O(a^{e['xi']})")
        else:
            print("small-weight analysis not applicable: " + "; ".join(d["issues"]))
    return EXIT_OK


def _alpha_grid(args) -> list[float]:
    if not 0 < args.alpha_min <= args.alpha_max:
        raise InfeasibleError("need 0 < --alpha-min <= --alpha-max")
    if args.points < 1:
        raise InfeasibleError("--points must be positive")
    if args.points == 1:
        return [args.alpha_min]
    if args.log:
        return [float(a) for a in np.geomspace(args.alpha_min, args.alpha_max, args.points)]
    return [float(a) for a in np.linspace(args.alpha_min, args.alpha_max, args.points)]


def _growth(args, stopping: bool) -> tuple[list, float | None, object]:
    ens = load_ensemble(args.spec)
    solver = GrowthSolver(derive(ens, stopping=stopping))
    states = [solver.point(a) for a in _alpha_grid(args)]
    star = None if args.no_alpha_star else critical_exponent(solver, stopping=stopping)
    return states, star, ens


def _write_curve(states, path: str | None) -> None:
    stream = open(path, "w", newline="") if path else sys.stdout
    try:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(["alpha", "G", "beta", "x", "y", "z"])
        for s in states:
            writer.writerow([repr(s.alpha), repr(s.value), repr(s.beta), repr(s.x), repr(s.y), repr(s.z)])
    finally:
        if path:
            stream.close()


def cmd_growth(args) -> int:
    states, star, ens = _growth(args, stopping=False)
    _write_curve(states, args.out)
    sidecar = {"alpha_star": star, "points": len(states), "stopping": False}
    if args.out:
        _write_json(build_report(ens, sidecar), str(Path(args.out).with_suffix(".json")))
    log.info("alpha* = %s", star)
    return EXIT_OK


def _realizable(ens, n: int) -> int:
    try:
        validate_graph_realizability(ens, n)
        return n
    except RealizabilityError as exc:
        if exc.suggested_n is None:
            raise
        log.warning("n=%d is not realizable; using n=%d instead", n, exc.suggested_n)
        return exc.suggested_n


def cmd_oracle(args) -> int:
    ens = load_ensemble(args.spec)
    n = _realizable(ens, args.n)
    if args.mode == "exact":
        spec = exact_average_spectrum(ens, n, stopping=args.stopping)
    else:
        spec = monte_carlo_spectrum(ens, n, args.trials, args.seed, stopping=args.stopping)
    rows = list(spec.rows())
    fields = ["weight", "mean", "variance", "trials", "mode"]
    if args.compare:
        fields += ["finite_rate", "asymptotic_rate", "delta"]
        solver = GrowthSolver(derive(ens, stopping=args.stopping))
        for row, w in zip(rows, spec.weights):
            finite = spec.log_growth(w) if w else math.nan
            try:
                asym = solver.point(w / n).value if w else math.nan
            except InfeasibleError:
                asym = math.nan
            row.update(finite_rate=repr(finite), asymptotic_rate=repr(asym), delta=repr(finite - asym))
    stream = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        writer = csv.DictWriter(stream, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    finally:
        if args.out:
            stream.close()
    if args.out:
        meta = {"n": n, "mode": args.mode, "stopping": args.stopping, "trials": spec.trials}
        _write_json(build_report(ens, {"oracle": meta}, seed=args.seed if args.mode == "mc" else None),
                    str(Path(args.out).with_suffix(".json")))
    return EXIT_OK


def cmd_stopping(args) -> int:
    ens = load_ensemble(args.spec)
    par = derive(ens, stopping=True)
    sections = {"derived": derived_to_dict(par)}
    sections["enumerators"] = {
        "vn": [[[u, v, c] for (u, v), c in e.items()] for e in par.vn_enums],
        "cn": [list(e.coeffs) for e in par.cn_enums],
    }
    try:
        exp = stopping_set_expansion(par)
        sections["expansion"] = {"alpha_log_alpha_coeff": "0", "linear_coeff": exp.linear_coeff, "xi": str(exp.xi)}
    except NotApplicableError as exc:
        log.info("%s", exc)
    if args.alpha_max is not None:
        if args.alpha_min is None:
            args.alpha_min = args.alpha_max / args.points
        states, star, _ = _growth(args, stopping=True)
        sections["curve"] = [{"alpha": s.alpha, "G": s.value, "beta": s.beta} for s in states]
        sections["alpha_star"] = star
    _write_json(build_report(ens, sections), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dgldpc", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"dgldpc {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="derived parameters, dominant set, verdict and expansion")
    p.add_argument("spec")
    p.add_argument("--out", help="write the JSON report here")
    p.add_argument("--json", action="store_true", help="print the JSON report instead of a summary")
    p.set_defaults(func=cmd_analyze)

    def curve_args(p, required: bool):
        p.add_argument("--alpha-min", type=float, default=None if not required else 1e-3)
        p.add_argument("--alpha-max", type=float, default=None if not required else 0.2)
        p.add_argument("--points", type=int, default=20)
        p.add_argument("--log", action="store_true", help="log-spaced grid")
        p.add_argument("--no-alpha-star", action="store_true", help="skip the critical-exponent search")

    p = sub.add_parser("growth", help="G(alpha) on a grid plus the critical exponent")
    p.add_argument("spec")
    curve_args(p, True)
    p.add_argument("--out", help="CSV path; a JSON sidecar with alpha* is written next to it")
    p.set_defaults(func=cmd_growth)

    p = sub.add_parser("oracle", help="finite-n average spectrum (exact or Monte Carlo)")
    p.add_argument("spec")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=["exact", "mc"], default="exact")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--stopping", action="store_true", help="stopping sets instead of codewords")
    p.add_argument("--compare", action="store_true", help="add (1/n) log E[N_w] versus G(w/n) columns")
    p.add_argument("--out")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("stopping", help="stopping-set enumerators, expansion and optional curve")
    p.add_argument("spec")
    curve_args(p, False)
    p.add_argument("--out")
    p.set_defaults(func=cmd_stopping)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except SizeLimitError as exc:
        log.error("%s", exc)
        return EXIT_SIZE
    except NumericalError as exc:
        log.error("numerical failure: %s", exc)
        return EXIT_NUMERIC
    except (DGLDPCError, ValueError, OSError) as exc:
        log.error("%s", exc)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
