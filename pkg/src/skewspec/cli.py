"""Command-line front end.

Exit codes: 0 when the checked property holds, 1 when it is falsified or
could not be established, 2 for usage and config errors.
"""

import argparse
import csv
import random
import sys
from fractions import Fraction
from typing import List, Optional

from . import config
from .errors import (
    ConfigError,
    NoAnchorFound,
    NotExpanding,
    NotLeoWithinCap,
    NotPeriodic,
    NotPrimitive,
    PreconditionError,
    SkewSpecError,
)
from .kernel import BACKEND
from .nonshrink import ExpandingFamily, gamma_bound, shrinking_system, verify_nonshrink
from .numeric import UnitInterval, format_rational, parse_rational
from .pwl import expansion_rate, is_mixing, is_surjective, leo_exponent
from .skew import SkewPoint, fibre_orbit, verify_tracing
from .subshift import primitivity_exponent, verify_base_tracing
from .witness import anchor_from_word, witness

EXIT_OK, EXIT_FALSIFIED, EXIT_USAGE = 0, 1, 2


def _emit(obj, out: Optional[str] = None):
    text = config.dumps(obj)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _map_summary(T, cap):
    return {
        "expanding": expansion_rate(T) > 1,
        "rate": format_rational(expansion_rate(T)),
        "surjective": is_surjective(T),
        "mixing": is_mixing(T, cap),
        "critical_points": [format_rational(c) for c in T.critical_points],
    }


def cmd_map_check(args) -> int:
    maps = config.load_maps(args.config)
    if list(maps) == ["map"]:
        _emit(_map_summary(maps["map"], args.cap))
    else:
        _emit({k: _map_summary(T, args.cap) for k, T in maps.items()})
    return EXIT_OK


def cmd_leo(args) -> int:
    T = config.load_map(args.config)
    try:
        m = leo_exponent(T, args.gamma, cap=args.cap)
    except NotLeoWithinCap as exc:
        _emit({"gamma": format_rational(args.gamma), "m": None, "error": str(exc)})
        return EXIT_FALSIFIED
    _emit({"gamma": format_rational(args.gamma), "m": m})
    return EXIT_OK


def cmd_sft_info(args) -> int:
    B = config.load_sft(args.config)
    info = {"alphabet": B.alphabet_size, "matrix": B.to_json()["matrix"]}
    try:
        info.update(primitive=True, exponent=primitivity_exponent(B))
    except NotPrimitive:
        info.update(primitive=False, exponent=None)
    _emit(info)
    return EXIT_OK


def cmd_gamma(args) -> int:
    try:
        cert = gamma_bound(config.load_family(args.family), args.eps)
    except NotExpanding as exc:
        _emit({"eps": format_rational(args.eps), "error": str(exc)})
        return EXIT_FALSIFIED
    _emit(cert.to_json())
    return EXIT_OK


def random_interval(rng: random.Random, min_length: Fraction, grid: int = 1 << 12) -> UnitInterval:
    """Random ``[lo, hi]`` with ``hi - lo >= min_length`` on a dyadic-ish grid."""
    lo_len = -(-min_length.numerator * grid // min_length.denominator)
    length = Fraction(rng.randint(lo_len, grid), grid)
    lo = Fraction(rng.randint(0, int((1 - length) * grid)), grid)
    return UnitInterval(lo, lo + length)


def fuzz_nonshrink(maps, eps, trials: int, length: int, seed: int):
    """Random words and intervals ``|U| >= eps`` checked against the certificate."""
    fam = ExpandingFamily(tuple(maps))
    cert = gamma_bound(fam, eps)
    rng = random.Random(seed)
    n = len(fam.maps)
    worst = None
    failures = 0
    for _ in range(trials):
        word = [rng.randint(1, n) for _ in range(length)]
        U = random_interval(rng, cert.eps)
        ok, least = verify_nonshrink(fam, word, U, cert.gamma)
        failures += not ok
        worst = least if worst is None else min(worst, least)
    return cert, failures, worst


def cmd_fuzz(args) -> int:
    try:
        cert, failures, worst = fuzz_nonshrink(config.load_family(args.family), args.eps,
                                               args.trials, args.length, args.seed)
    except NotExpanding as exc:
        _emit({"error": str(exc)})
        return EXIT_FALSIFIED
    _emit({
        "eps": format_rational(cert.eps),
        "gamma": format_rational(cert.gamma),
        "trials": args.trials,
        "word_length": args.length,
        "seed": args.seed,
        "failures": failures,
        "min_length": format_rational(worst),
        "backend": BACKEND,
    })
    return EXIT_OK if failures == 0 else EXIT_FALSIFIED


def cmd_shrink_demo(args) -> int:
    trace = shrinking_system(args.xi, args.steps)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            csv.writer(fh).writerows(trace.csv_rows())
    else:
        sys.stderr.write("warning: no --out given, trace not written\n")
    sys.stderr.write("note: rational xi makes the schedule eventually periodic; "
                     "only the finite-horizon contraction is exhibited\n")
    _emit({
        "xi": format_rational(trace.xi),
        "steps": args.steps,
        "g_events": trace.g_events,
        "f_events": sum(1 for _, psi in trace.schedule if psi == "f"),
        "initial_length": format_rational(trace.lengths[0]),
        "final_length": format_rational(trace.lengths[-1]),
    })
    return EXIT_OK


def _write_orbit_csv(path, report):
    sys_, eta, z = report.system, report.eta, report.z
    wz = fibre_orbit(sys_, eta, 0, report.r[-1], z)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(("segment", "i", "time", "segment_x", "witness_x", "defect"))
        for j, seg in enumerate(report.segments):
            xs = fibre_orbit(sys_, seg.point.base, 0, seg.length - 1, seg.point.fibre)
            for i in range(seg.length):
                t = report.r[j] + i
                w.writerow((j + 1, i, t, format_rational(xs[i]), format_rational(wz[t]),
                            format_rational(abs(xs[i] - wz[t]))))


def cmd_witness(args) -> int:
    system = config.load_system(args.system)
    segments, settings = config.load_segments(args.segments)
    eps = args.eps if args.eps is not None else settings.get("eps")
    if eps is None:
        raise ConfigError("no eps given (use --eps or eps= in [witness])")
    anchor_word = args.anchor if args.anchor is not None else settings.get("anchor")
    try:
        anchor = anchor_from_word(system, anchor_word) if anchor_word else None
        report = witness(system, segments, eps, anchor=anchor, max_period=args.anchor_auto)
    except (NoAnchorFound, NotExpanding, NotPrimitive, NotLeoWithinCap) as exc:
        _emit({"error": type(exc).__name__, "detail": str(exc)})
        return EXIT_FALSIFIED
    _emit(report.to_json(), args.report)
    if args.csv:
        _write_orbit_csv(args.csv, report)
    return EXIT_OK if report.audit.passes(report.eps) else EXIT_FALSIFIED


def cmd_verify(args) -> int:
    rep = config.load_report(args.report)
    eps = args.eps if args.eps is not None else rep["eps"]
    segs = rep["segments"]
    gaps = rep["gaps"] or None
    result = {"eps": format_rational(eps)}
    try:
        audit = verify_tracing(rep["system"], segs, rep["M"], SkewPoint(rep["eta"], rep["z"]), gaps)
    except NotPeriodic as exc:
        result.update(passes=False, periodic=False, detail=str(exc))
        _emit(result)
        return EXIT_FALSIFIED
    periodic, base_defect = verify_base_tracing(
        [s.point.base for s in segs], [s.length for s in segs],
        gaps or [rep["M"]] * len(segs), rep["eta"])
    result.update(
        passes=audit.passes(eps),
        periodic=audit.periodic,
        max_defect=format_rational(audit.max_defect),
        base_periodic=periodic,
        base_max_defect=format_rational(base_defect),
        base_passes=periodic and base_defect <= eps,
        matches_report=audit.to_json() == rep["raw"]["audit"],
    )
    _emit(result)
    return EXIT_OK if result["passes"] and result["base_passes"] else EXIT_FALSIFIED


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="skewspec", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("map-check", help="expansion, surjectivity and mixing of fibre maps")
    q.add_argument("config")
    q.add_argument("--cap", type=int, default=64)
    q.set_defaults(func=cmd_map_check)

    q = sub.add_parser("leo", help="covering exponent m for intervals of length >= gamma")
    q.add_argument("config")
    q.add_argument("--gamma", type=parse_rational, required=True)
    q.add_argument("--cap", type=int, default=256)
    q.set_defaults(func=cmd_leo)

    q = sub.add_parser("sft-info", help="primitivity of a subshift of finite type")
    q.add_argument("config")
    q.set_defaults(func=cmd_sft_info)

    q = sub.add_parser("gamma", help="non-shrinking certificate for a map family")
    q.add_argument("--family", required=True)
    q.add_argument("--eps", type=parse_rational, required=True)
    q.set_defaults(func=cmd_gamma)

    q = sub.add_parser("fuzz", help="random falsification attempt of the certificate")
    q.add_argument("--family", required=True)
    q.add_argument("--eps", type=parse_rational, required=True)
    q.add_argument("--trials", type=int, default=1000)
    q.add_argument("--length", type=int, default=200)
    q.add_argument("--seed", type=int, default=0)
    q.set_defaults(func=cmd_fuzz)

    q = sub.add_parser("shrink-demo", help="adaptive system with slopes >= 1 that shrinks an interval")
    q.add_argument("--xi", type=parse_rational, required=True)
    q.add_argument("--steps", type=int, required=True)
    q.add_argument("--out")
    q.set_defaults(func=cmd_shrink_demo)

    q = sub.add_parser("witness", help="build a periodic tracing witness")
    q.add_argument("--system", required=True)
    q.add_argument("--segments", required=True)
    q.add_argument("--eps", type=parse_rational)
    g = q.add_mutually_exclusive_group()
    g.add_argument("--anchor", type=lambda s: tuple(int(c) for c in s),
                   help="cyclic base word whose fibre composite is mixing")
    g.add_argument("--anchor-auto", type=int, default=4, metavar="N",
                   help="search anchors of period up to N (default 4)")
    q.add_argument("--report", help="write the report here instead of stdout")
    q.add_argument("--csv", help="per-step orbit comparison")
    q.set_defaults(func=cmd_witness)

    q = sub.add_parser("verify", help="re-audit a witness report independently")
    q.add_argument("--report", required=True)
    q.add_argument("--eps", type=parse_rational)
    q.set_defaults(func=cmd_verify)
    return p


def run_command(argv: List[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ConfigError, PreconditionError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except SkewSpecError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_FALSIFIED


def main():
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
