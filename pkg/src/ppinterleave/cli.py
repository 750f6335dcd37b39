"""ppi: command-line front end.

Every command prints one JSON object on stdout (``export`` in txt/csv mode
prints the raw table instead).  Exit codes: 0 ok, 1 domain failure, 2 usage.
"""
from __future__ import annotations

import argparse
import csv
import json
import logging
import math
import sys
import time
from dataclasses import asdict

import numpy as np

from . import designs, geometry, inverse, metrics, permcheck, search
from .geometry import InterleaverCode, NotAPermutation
from .modring import RingPolynomial, evaluate_all, reduce_degree

SCHEMA_VERSION = "1"


class DomainFailure(Exception):
    def __init__(self, message: str, payload: dict | None = None):
        super().__init__(message)
        self.payload = payload or {}


class UsageError(Exception):
    pass


def parse_coeffs(text: str) -> list[int]:
    """Comma-separated residues, constant term first: f0,f1,f2,..."""
    try:
        out = [int(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"coefficients must be comma-separated integers, got {text!r}")
    if not out:
        raise UsageError("no coefficients given")
    return out


def _poly(args) -> RingPolynomial:
    if args.N < 2:
        raise UsageError("N must be >= 2")
    return RingPolynomial(args.N, parse_coeffs(args.coeffs))


def _poly_json(p: RingPolynomial | None):
    if p is None:
        return None
    return {"N": p.modulus, "coefficients": list(p.coefficients), "text": str(p)}


def _code_or_fail(poly: RingPolynomial) -> InterleaverCode:
    try:
        return InterleaverCode.from_poly(poly)
    except NotAPermutation as exc:
        x1, x2, y = exc.collision
        raise DomainFailure(str(exc), {"permutation": False, "collision": {"x1": x1, "x2": x2, "value": y}})


def cmd_validate(args) -> dict:
    poly = _poly(args)
    v = permcheck.verdict(poly)
    out = {
        "polynomial": _poly_json(poly),
        "permutation": v.is_permutation,
        "method": v.method.value,
        "irreducible_degree": v.irreducible_degree,
        "reduced": _poly_json(v.reduced),
    }
    if not v.is_permutation:
        x1, x2, y = v.collision
        out["collision"] = {"x1": x1, "x2": x2, "value": y}
        raise DomainFailure("not a permutation", out)
    return out


def cmd_metrics(args) -> dict:
    poly = _poly(args)
    _code_or_fail(poly)
    report = search.evaluate_candidate(poly)
    out = {"polynomial": _poly_json(poly), "metrics": report.to_dict()}
    if args.optimize_f0:
        f0, merit = metrics.optimize_constant(poly)
        out["optimize_f0"] = {"f0": f0, "corner_merit": merit}
    if args.fit_inverse is not None:
        inv = inverse.fit_polynomial_inverse(poly, args.fit_inverse)
        out["inverse"] = _poly_json(inv)
    return out


def _search_workers(args) -> int:
    if args.workers < 1:
        raise UsageError("--workers must be >= 1")
    return args.workers


def _search_payload(res: search.SearchResult, with_inverse: bool) -> dict:
    out = res.to_dict()
    out["winner"] = _poly_json(res.winner)
    if with_inverse:
        out["inverse"] = _poly_json(inverse.fit_polynomial_inverse(res.winner, 2))
    return out


def cmd_search_maxd(args) -> dict:
    spec = search.SearchSpec(args.N, objective=search.Objective.MAX_D, symmetry_pruning=args.prune)
    try:
        res = search.run_search(spec, _search_workers(args))
    except (search.NoQPPExists, search.NoCandidate) as exc:
        raise DomainFailure(str(exc), {"error": type(exc).__name__})
    return _search_payload(res, args.inverse)


def cmd_search_omega(args) -> dict:
    spec = search.SearchSpec(
        args.N,
        objective=search.Objective.MAX_OMEGA_REFINED,
        beta=args.beta,
        symmetry_pruning=args.prune,
    )
    try:
        res = search.run_search(spec, _search_workers(args))
    except (search.NoQPPExists, search.NoCandidate) as exc:
        raise DomainFailure(str(exc), {"error": type(exc).__name__})
    out = _search_payload(res, args.inverse)
    out["beta"] = spec.effective_beta
    out["spread_floor"] = spec.spread_floor
    if args.optimize_f0:
        f0, merit = metrics.optimize_constant(res.winner)
        out["optimize_f0"] = {"f0": f0, "corner_merit": merit}
    return out


def cmd_ms_seq(args) -> dict:
    if args.k < 1:
        raise UsageError("k must be >= 1")
    poly = designs.ms_qpp(args.k)
    N = poly.modulus
    out = {"k": args.k, "polynomial": _poly_json(poly), "reducible": designs.ms_qpp_is_reducible(args.k)}
    if designs.ms_qpp_is_reducible(args.k):
        out["reduced"] = _poly_json(reduce_degree(poly))
        return out
    report = search.evaluate_candidate(poly)
    inv = inverse.ms_inverse(args.k)
    code = InterleaverCode.from_poly(poly)
    round_trip = bool(np.array_equal(evaluate_all(inv)[code.perm], np.arange(N)))
    out.update(
        D=report.D,
        ub_D=math.isqrt(2 * N),
        maximum_spread=report.D == math.isqrt(2 * N),
        zeta=report.zeta,
        zeta_refined=report.zeta_refined,
        epsilon=report.epsilon,
        inverse=_poly_json(inv),
        inverse_round_trip=round_trip,
    )
    return out


def cmd_bounds(args) -> dict:
    if args.N < 2:
        raise UsageError("N must be >= 2")
    rep = designs.bounds(args.N)
    out = asdict(rep)
    out["ub_DE_family"] = rep.ub_DE_family.value if rep.ub_DE_family else None
    out["all_families"] = [
        {"family": f.value, "ub_DE": v} for f, v in designs.ub_DE_families(args.N)
    ]
    return out


def cmd_orbits(args) -> dict:
    poly = _poly(args)
    code = _code_or_fail(poly)
    dec = geometry.orbits(code)
    out = {
        "polynomial": _poly_json(poly),
        "zeta": dec.zeta,
        "orbit_size": dec.orbit_size,
        "translations": [list(t) for t in dec.translations],
        "representatives": dec.representatives,
    }
    if args.points:
        out["orbits"] = [[list(p) for p in orb] for orb in dec.orbits]
    qc = code.qpp_coefficients()
    if qc is not None:
        out["intra_orbit_bound"] = geometry.intra_orbit_bound(args.N, qc[1])
    return out


def cmd_profile(args) -> dict:
    poly = _poly(args)
    code = _code_or_fail(poly)
    reps = [args.rep] if args.rep is not None else list(range(geometry.translation_period(code)))
    profiles = {}
    for x in reps:
        if not 0 <= x < args.N:
            raise UsageError(f"--rep must lie in [0, {args.N})")
        profiles[str(x)] = {str(k): v for k, v in geometry.spread_profile(code, x).items()}
    return {"polynomial": _poly_json(poly), "profiles": profiles}


def cmd_linear_ms(args) -> dict:
    try:
        f1s = designs.linear_ms_enumerate(args.N)
    except ValueError as exc:
        raise DomainFailure(str(exc))
    return {"N": args.N, "D": math.isqrt(2 * args.N), "f1": f1s, "count": len(f1s)}


def cmd_scan_existence(args) -> dict:
    if args.Nmax < 2:
        raise UsageError("Nmax must be >= 2")
    Ns = permcheck.scan_existence(args.Nmax)
    out = {"Nmax": args.Nmax, "count": len(Ns)}
    if args.list:
        out["N"] = Ns
    return out


def cmd_export(args):
    poly = _poly(args)
    code = _code_or_fail(poly)
    # re-validate before anything is written
    if sorted(code.perm.tolist()) != list(range(args.N)):
        raise DomainFailure("export table is not a permutation")
    if args.format == "txt":
        sys.stdout.write("".join(f"{y}\n" for y in code.perm.tolist()))
        return None
    if args.format == "csv":
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["x", "fx"])
        w.writerows(enumerate(code.perm.tolist()))
        return None
    return {
        "polynomial": _poly_json(poly),
        "metrics": search.evaluate_candidate(poly).to_dict(),
        "perm": code.perm.tolist(),
    }


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ppi", description="Permutation-polynomial interleaver toolkit")
    parser.add_argument("-v", "--verbose", action="store_true", help="log diagnostics to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_poly(p):
        p.add_argument("N", type=int, help="interleaver length (modulus)")
        p.add_argument("coeffs", help="f0,f1,f2,... constant term first")
        return p

    def with_search(p):
        p.add_argument("N", type=int)
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--prune", action="store_true", help="skip f1, f2 > N/2 (reflection symmetry)")
        p.add_argument("--inverse", action="store_true", help="also fit a quadratic inverse")
        return p

    p = with_poly(sub.add_parser("validate", help="permutation and degree check"))
    p.set_defaults(func=cmd_validate)

    p = with_poly(sub.add_parser("metrics", help="spread, non-linearity and merit report"))
    p.add_argument("--optimize-f0", action="store_true")
    p.add_argument("--fit-inverse", type=int, metavar="MAXDEG")
    p.set_defaults(func=cmd_metrics)

    p = with_search(sub.add_parser("search-maxd", help="QPP with the largest spread"))
    p.set_defaults(func=cmd_search_maxd)

    p = with_search(sub.add_parser("search-omega", help="QPP maximizing ln(D)*zeta' above a spread floor"))
    p.add_argument("--beta", type=float, help="spread floor fraction (default 0.45 for N<=1600, else 0.30)")
    p.add_argument("--optimize-f0", action="store_true")
    p.set_defaults(func=cmd_search_omega)

    p = sub.add_parser("ms-seq", help="k-th maximum-spread QPP")
    p.add_argument("k", type=int)
    p.set_defaults(func=cmd_ms_seq)

    p = sub.add_parser("bounds", help="spread upper bounds")
    p.add_argument("N", type=int)
    p.set_defaults(func=cmd_bounds)

    p = with_poly(sub.add_parser("orbits", help="isometry orbits"))
    p.add_argument("--points", action="store_true", help="list every orbit's points")
    p.set_defaults(func=cmd_orbits)

    p = with_poly(sub.add_parser("profile", help="spread profile multiplicities"))
    p.add_argument("--rep", type=int, help="single point x (default: all orbit representatives)")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("linear-ms", help="maximum-spread linear interleavers for N = 2n^2")
    p.add_argument("N", type=int)
    p.set_defaults(func=cmd_linear_ms)

    p = sub.add_parser("scan-existence", help="count N <= Nmax with an irreducible QPP")
    p.add_argument("Nmax", type=int)
    p.add_argument("--list", action="store_true")
    p.set_defaults(func=cmd_scan_existence)

    p = with_poly(sub.add_parser("export", help="permutation table as txt, csv (x,fx) or json"))
    p.add_argument("--format", choices=["txt", "csv", "json"], default="txt")
    p.set_defaults(func=cmd_export)
    return parser


def _inputs(args) -> dict:
    return {k: v for k, v in vars(args).items() if k not in ("func", "verbose")}


def _emit(args, outputs, status: str, start: float) -> None:
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": args.command,
        "status": status,
        "inputs": _inputs(args),
        "outputs": outputs,
        "timing_ms": int((time.perf_counter() - start) * 1000),
    }
    json.dump(report, sys.stdout, sort_keys=True)
    sys.stdout.write("\n")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse already printed usage; --help exits 0, bad input 2
        return int(exc.code or 0)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    start = time.perf_counter()
    try:
        outputs = args.func(args)
    except UsageError as exc:
        print(f"ppi {args.command}: {exc}", file=sys.stderr)
        return 2
    except DomainFailure as exc:
        print(f"ppi {args.command}: {exc}", file=sys.stderr)
        _emit(args, exc.payload, "failure", start)
        return 1
    except ValueError as exc:
        print(f"ppi {args.command}: {exc}", file=sys.stderr)
        return 2
    if outputs is not None:
        _emit(args, outputs, "ok", start)
    return 0


if __name__ == "__main__":
    sys.exit(main())
