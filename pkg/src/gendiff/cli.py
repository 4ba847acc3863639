"""Command-line front end.

Every subcommand prints its effective configuration, is fully determined
by its flags (seeds included), and writes byte-identical outputs for
identical invocations.  Domain errors exit with code 2 and a JSON object
on stderr; I/O and parse errors exit with code 1.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys

import numpy as np

from . import decompose as dec
from . import integrals as itg
from . import partitions as par
from . import sharpness as shp
from . import spectrum as spe
from .errors import BadShiftSet, GendiffError


def _print_config(args: argparse.Namespace) -> None:
    cfg = {k: v for k, v in sorted(vars(args).items()) if k != "func"}
    print("config: " + json.dumps(cfg, sort_keys=True, default=str))


def _write_json(path: str, payload: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, sort_keys=True, indent=2)
        fh.write("\n")


def _read_spectrum(path: str) -> spe.Spectrum:
    with open(path, "r", encoding="utf-8") as fh:
        return spe.from_json_dict(json.load(fh))


def _parse_floats(text: str) -> list[float]:
    return [float(tok) for tok in text.replace(",", " ").split()]


def _mc_config(args: argparse.Namespace) -> itg.McConfig:
    return itg.McConfig(points=args.points, seed=args.seed,
                        scheme=args.scheme, epsilon=args.epsilon)


def _cmd_decompose(args) -> int:
    f = _read_spectrum(args.infile)
    attempts = max(int(args.retries), 0) + 1
    cert = None
    for attempt in range(attempts):
        if args.shifts is not None:
            shifts = _parse_floats(args.shifts)
        else:
            shifts = dec.random_shifts(args.s, args.seed + attempt)
        try:
            cert = dec.decompose_gd(f, args.alpha, args.beta, args.s, shifts)
            break
        except BadShiftSet:
            if args.shifts is not None or attempt == attempts - 1:
                raise
    _write_json(args.out, dec.to_json_dict(cert))
    print(f"residual: {cert.residual!r}")
    print(f"criterion: {cert.criterion_value!r}")
    return 0


def _cmd_criterion(args) -> int:
    f = _read_spectrum(args.infile)
    if args.shifts is not None:
        shifts = _parse_floats(args.shifts)
    else:
        shifts = dec.random_shifts(args.s, args.seed)
    measures = dec.shift_measures(args.alpha, args.beta, args.s, shifts)
    value = dec.ms_criterion(f, measures)
    print(json.dumps({"criterion": "inf" if math.isinf(value) else value,
                      "shifts": list(shifts)}, sort_keys=True))
    return 0


def _cmd_solve(args) -> int:
    from .operators import QuadraticSymbol, solve_quadratic

    f = _read_spectrum(args.infile)
    g = solve_quadratic(QuadraticSymbol(args.alpha, args.beta, args.s), f,
                        tol=args.tol)
    _write_json(args.out, spe.to_json_dict(g))
    print(f"solved: {len(g)} coefficients written to {args.out}")
    return 0


def _cmd_apply(args) -> int:
    from .operators import QuadraticSymbol, apply_quadratic

    g = _read_spectrum(args.infile)
    f = apply_quadratic(QuadraticSymbol(args.alpha, args.beta, args.s), g)
    _write_json(args.out, spe.to_json_dict(f))
    print(f"applied: {len(f)} coefficients written to {args.out}")
    return 0


def _cmd_partition_scan(args) -> int:
    rows = []
    for n in range(args.n_min, args.n_max + 1):
        if n in (args.alpha, args.beta):
            continue
        st = par.refinement_stats(n, args.alpha, args.beta)
        ok = st.count <= st.count_bound and st.max_length <= st.length_bound + 1e-15
        rows.append((n, args.alpha, args.beta, st.count, st.count_bound,
                     st.max_length, st.length_bound, ok))
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["n", "alpha", "beta", "cell_count", "bound",
                    "max_len", "len_bound", "ok"])
        for row in rows:
            w.writerow([repr(v) if isinstance(v, float) else v for v in row])
    bad = sum(1 for r in rows if not r[-1])
    print(f"scanned {len(rows)} rows, {bad} bound violations -> {args.out}")
    return 0


def _cmd_bound_scan(args) -> int:
    cfg = _mc_config(args)
    rows = itg.uniform_bound_scan(args.alpha, args.beta, args.s,
                                  (args.n_min, args.n_max), cfg)
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["n", "estimate", "std_error", "points", "epsilon",
                    "scheme", "seed"])
        for row in rows:
            if row.skipped:
                w.writerow([row.n, "", "", 0, repr(cfg.epsilon), cfg.scheme,
                            row.seed])
            else:
                est = row.estimate
                w.writerow([row.n, repr(est.value), repr(est.std_error),
                            est.points_used, repr(cfg.epsilon), cfg.scheme,
                            row.seed])
    done = sum(1 for r in rows if not r.skipped)
    print(f"scanned {done} frequencies ({len(rows) - done} skipped) -> {args.out}")
    return 0


def _cmd_identity_check(args) -> int:
    rel = itg.folding_identity_check(args.n, args.alpha, args.beta, args.s,
                                     args.m, args.epsilon, args.quad_points)
    print(json.dumps({"relative_difference": rel}, sort_keys=True))
    return 0


def _cmd_j_cell(args) -> int:
    cfg = _mc_config(args)
    ref = par.refinement_for(args.n, args.alpha, args.beta)
    rng = np.random.default_rng(cfg.seed)
    results = []
    for t in range(args.tuples):
        idx = rng.integers(0, len(ref.provenance), size=args.m)
        cells = [ref.provenance[i] for i in idx]
        cfg_t = itg.McConfig(points=cfg.points, seed=itg.derive_seed(cfg.seed, t),
                             scheme=cfg.scheme, epsilon=cfg.epsilon)
        est, bound, within = itg.estimate_J_cell(
            args.n, args.alpha, args.beta, args.s, cells, cfg_t)
        results.append({
            "cells": [list(c) for c in cells],
            "estimate": est.value,
            "std_error": est.std_error,
            "bound": bound,
            "within": within,
        })
    payload = {"n": args.n, "alpha": args.alpha, "beta": args.beta,
               "s": args.s, "m": args.m, "results": results}
    print(json.dumps(payload, sort_keys=True, indent=2))
    if args.out:
        _write_json(args.out, payload)
    return 0 if all(r["within"] for r in results) else 2


def _cmd_sharpness(args) -> int:
    c = _parse_floats(args.c)
    if args.bits is not None:
        path = shp.PhiPath(tuple(int(b) for b in
                                 args.bits.replace(",", " ").split()))
    else:
        path = shp.PhiPath.zeros(args.L)
    w = shp.build_witness(c, args.alpha, args.s, args.L, path, args.q_cap)
    report = shp.divergence_report(w, args.beta)
    if args.out:
        _write_json(args.out, shp.witness_to_json_dict(w, report))
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            wr = csv.writer(fh, lineterminator="\n")
            wr.writerow(["L", "S_L", "norm_sq", "criterion"])
            for row in report.rows:
                wr.writerow([row[0], repr(row[1]), repr(row[2]), repr(row[3])])
    print(json.dumps({
        "L": w.L,
        "max_q": w.q_path[-1],
        "S_L": report.s_final,
        "harmonic": report.harmonic,
        "norm_sq": report.norm_sq,
        "criterion": "inf" if math.isinf(report.criterion) else report.criterion,
    }, sort_keys=True))
    return 0


def _cmd_constants(args) -> int:
    consts = itg.lemma41_constants(args.m, args.s)
    print(json.dumps({"c_m": consts.c_m, "M": consts.m_lemma41,
                      "m": consts.m, "s": consts.s}, sort_keys=True))
    return 0


def _add_symbol_flags(p: argparse.ArgumentParser, with_s: bool = True) -> None:
    p.add_argument("--alpha", type=int, required=True,
                   help="first zero of the quadratic multiplier")
    p.add_argument("--beta", type=int, required=True,
                   help="second zero of the quadratic multiplier")
    if with_s:
        p.add_argument("--s", type=int, default=1,
                       help="operator/convolution power (default 1)")


def _add_mc_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--points", type=int, default=1 << 14,
                   help="sample count (lattice size for the shifted scheme)")
    p.add_argument("--seed", type=int, default=0, help="RNG seed")
    p.add_argument("--scheme", choices=itg.SCHEMES, default="lattice_shifted")
    p.add_argument("--epsilon", type=float, default=0.0,
                   help="denominator regularization")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="gendiff",
        description="Generalized-difference decompositions on the circle: "
                    "decomposition certificates, multiplier-operator solves, "
                    "partition and integral bound scans, and Diophantine "
                    "sharpness witnesses.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose",
                       help="write a certificate decomposing a spectrum into "
                            "a sum of generalized differences")
    _add_symbol_flags(p)
    p.add_argument("--seed", type=int, default=0,
                   help="seed for the random shift points")
    p.add_argument("--shifts", type=str, default=None,
                   help="explicit comma-separated shifts (overrides --seed)")
    p.add_argument("--retries", type=int, default=0,
                   help="resamples allowed on a bad shift set")
    p.add_argument("--in", dest="infile", required=True, help="spectrum JSON")
    p.add_argument("--out", required=True, help="certificate JSON")
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("criterion",
                       help="evaluate the decomposability criterion series "
                            "against shifted three-atom measures")
    _add_symbol_flags(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--shifts", type=str, default=None)
    p.add_argument("--in", dest="infile", required=True)
    p.set_defaults(func=_cmd_criterion)

    p = sub.add_parser("solve",
                       help="invert the quadratic multiplier operator on its "
                            "range (coefficients at alpha, beta must vanish)")
    _add_symbol_flags(p)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("apply",
                       help="apply the quadratic multiplier operator "
                            "(D^2 - i(alpha+beta)D - alpha*beta*I)^s")
    _add_symbol_flags(p)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_apply)

    p = sub.add_parser("partition-scan",
                       help="verify the refinement cell-count and cell-length "
                            "bounds over a frequency range (exact arithmetic)")
    _add_symbol_flags(p, with_s=False)
    p.add_argument("--n-min", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--out", required=True, help="CSV output")
    p.set_defaults(func=_cmd_partition_scan)

    p = sub.add_parser("bound-scan",
                       help="estimate the cosine-gap integral per frequency "
                            "to exhibit its uniform bound")
    _add_symbol_flags(p)
    p.add_argument("--n-min", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    _add_mc_flags(p)
    p.add_argument("--out", required=True, help="CSV output")
    p.set_defaults(func=_cmd_bound_scan)

    p = sub.add_parser("identity-check",
                       help="check the regularized folding identity between "
                            "the cosine-gap and product-of-sines integrals")
    _add_symbol_flags(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, default=1, choices=(1, 2))
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--quad-points", type=int, default=4096)
    p.set_defaults(func=_cmd_identity_check)

    p = sub.add_parser("j-cell",
                       help="estimate per-cell-tuple integrals against their "
                            "closed-form uniform bound")
    _add_symbol_flags(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, default=5,
                   help="cells per tuple (needs m >= 4s+1)")
    p.add_argument("--tuples", type=int, default=1,
                   help="number of seeded random cell tuples")
    _add_mc_flags(p)
    p.add_argument("--out", default=None, help="optional JSON output")
    p.set_defaults(func=_cmd_j_cell)

    p = sub.add_parser("sharpness",
                       help="build a Diophantine witness spectrum that no "
                            "fixed shift set decomposes, with partial-sum tables")
    p.add_argument("--c", type=str, required=True,
                   help="comma-separated shift points in [0, 2*pi]")
    p.add_argument("--alpha", type=int, default=1)
    p.add_argument("--beta", type=int, default=-1,
                   help="second multiplier zero used for the criterion report")
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--L", type=int, required=True, help="witness depth")
    p.add_argument("--q-cap", type=int, default=10 ** 6)
    p.add_argument("--bits", type=str, default=None,
                   help="explicit path bits (default: all zeros)")
    p.add_argument("--out", default=None, help="witness JSON")
    p.add_argument("--csv", default=None, help="partial-sum CSV")
    p.set_defaults(func=_cmd_sharpness)

    p = sub.add_parser("constants",
                       help="closed-form constants of the high-dimensional "
                            "quadratic-sum integral bound")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--s", type=int, default=1)
    p.set_defaults(func=_cmd_constants)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    _print_config(args)
    try:
        return args.func(args)
    except GendiffError as exc:
        payload = {"error": exc.__class__.__name__, "message": str(exc)}
        for attr in ("frequency", "magnitude", "level", "q_cap"):
            if hasattr(exc, attr):
                payload[attr] = getattr(exc, attr)
        print(json.dumps(payload, sort_keys=True), file=sys.stderr)
        return 2
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(json.dumps({"error": exc.__class__.__name__,
                          "message": str(exc)}, sort_keys=True),
              file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
