"""Command-line front end: parse, matrix, reduce, invariants, compare, fuzz.

Commands compose through pipes: generators print the diagram text format and
every diagram argument accepts '-' for standard input.  Output is
deterministic byte-for-byte for a fixed (command, inputs, seed, cap).

Exit codes: 0 success; 1 invariant violation or a comparison that found a
difference; 2 usage or parse error; 3 undetermined (orbit cap exhausted).
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import homology
from .diagram import (Multistring, MoveError, ParseError, apply_move,
                      enumerate_applicable_moves, fixture_sigma, fixture_tau,
                      gen_alpha, gen_beta, parse_multistring, serialize,
                      validate)
from .homology import ReductionUndetermined, reduce_to_primitive
from .invariants import InvariantReport, invariant_report, u_invariant
from .iso import distinguish, homologous_primitive_equiv, woven_iso
from .pairing import format_matrix, matrix_to_json, multistring_based_matrix


def _load(path: str) -> Multistring:
    if path == "-":
        text = sys.stdin.read()
        name = "<stdin>"
    else:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ParseError(f"cannot read {path}: {exc.strerror}")
        name = path
    try:
        ms = parse_multistring(text)
    except ParseError as exc:
        raise ParseError(f"{name}: {exc}")
    bad = validate(ms)
    if bad:
        raise ParseError(f"{name}: invalid diagram: " + "; ".join(bad))
    return ms


def _emit_json(doc: dict) -> None:
    print(json.dumps(doc, indent=2, sort_keys=False))


def _report_text(rep: InvariantReport) -> str:
    lines = [
        "u = {" + ", ".join(str(p) for p in rep.u) + "}",
        f"rho = {rep.rho}",
        f"rho_prime = {rep.rho_prime}",
        f"rho_cap = {rep.rho_cap}",
        "rho_i = [" + ", ".join(str(v) for v in rep.rho_i) + "]",
        f"genus_lower_bound = {rep.genus_lower_bound}",
        f"primitive_size = (#G={rep.primitive_size[0]}, "
        f"#I={rep.primitive_size[1]})",
    ]
    return "\n".join(lines) + "\n"


def _cmd_matrix(args) -> int:
    T = multistring_based_matrix(_load(args.file))
    if args.format == "json":
        _emit_json(matrix_to_json(T))
    else:
        print(format_matrix(T), end="")
    return 0


def _cmd_reduce(args) -> int:
    T = multistring_based_matrix(_load(args.file))
    try:
        P, cert = reduce_to_primitive(T, args.cap)
    except ReductionUndetermined as exc:
        print(f"undetermined: {exc}", file=sys.stderr)
        return 3
    homology.replay_certificate(T, cert)
    if args.format == "json":
        _emit_json({"primitive": matrix_to_json(P),
                    "certificate": cert.to_json()})
    else:
        print(format_matrix(P), end="")
        print()
        print("certificate:")
        print(cert.to_text(), end="")
    return 0


def _cmd_invariants(args) -> int:
    T = multistring_based_matrix(_load(args.file))
    try:
        rep = invariant_report(T, args.cap)
    except ReductionUndetermined as exc:
        print(f"undetermined: {exc}", file=sys.stderr)
        return 3
    if args.format == "json":
        _emit_json(rep.to_json())
    else:
        print(_report_text(rep), end="")
    return 0


def _cmd_iso(args) -> int:
    T1 = multistring_based_matrix(_load(args.file1))
    T2 = multistring_based_matrix(_load(args.file2))
    witness = woven_iso(T1, T2)
    if args.format == "json":
        _emit_json({"isomorphic": witness is not None,
                    "witness": witness.to_json() if witness else None})
    elif witness is None:
        print("not isomorphic")
    else:
        doc = witness.to_json()
        print("isomorphic")
        print("sigma:", doc["sigma"])
        print("phi:", " ".join(f"{a}->{b}" for a, b in doc["phi"].items()))
    return 0 if witness is not None else 1


def _cmd_equiv(args) -> int:
    verdicts = {"equivalent": 0, "inequivalent": 1, "undetermined": 3}
    T1 = multistring_based_matrix(_load(args.file1))
    T2 = multistring_based_matrix(_load(args.file2))
    try:
        P1, _ = reduce_to_primitive(T1, args.cap)
        P2, _ = reduce_to_primitive(T2, args.cap)
        verdict = homologous_primitive_equiv(P1, P2, args.cap, check=False)
    except ReductionUndetermined:
        verdict = "undetermined"
    if args.format == "json":
        _emit_json({"verdict": verdict})
    else:
        print(verdict)
    return verdicts[verdict]


def _cmd_distinguish(args) -> int:
    ms1 = _load(args.file1)
    ms2 = _load(args.file2)
    out = distinguish(ms1, ms2, args.cap)
    if args.format == "json":
        _emit_json(out.to_json())
    else:
        print(f"verdict: {out.verdict}")
        print(f"evidence: {out.evidence}")
    return {"distinct": 1, "not-distinguished": 0, "undetermined": 3}[out.verdict]


def _cmd_gen(args) -> int:
    if args.family == "alpha":
        ms = gen_alpha(args.params[0], args.params[1])
    elif args.family == "beta":
        ms = gen_beta(*args.params)
    elif args.family == "sigma":
        ms = fixture_sigma()
    else:
        ms = fixture_tau()
    print(serialize(ms), end="")
    return 0


def _fingerprint(T, cap):
    P, _ = reduce_to_primitive(T, cap)
    from .invariants import _rho_fields
    return u_invariant(T), _rho_fields(P), P


def _cmd_fuzz(args) -> int:
    ms = _load(args.file)
    rng = random.Random(args.seed)
    try:
        u0, rho0, P_prev = _fingerprint(multistring_based_matrix(ms), args.cap)
    except ReductionUndetermined as exc:
        print(f"undetermined: {exc}", file=sys.stderr)
        return 3
    trace = []
    for step in range(1, args.moves + 1):
        candidates = enumerate_applicable_moves(ms)
        mv = candidates[rng.randrange(len(candidates))]
        trace.append(mv.describe())
        print(f"move {step}: {mv.describe()}")
        ms = apply_move(ms, mv)
        bad = validate(ms)
        if bad:
            print("violation: move produced an invalid diagram", file=sys.stderr)
            return 1
        try:
            u_k, rho_k, P_k = _fingerprint(multistring_based_matrix(ms),
                                           args.cap)
        except ReductionUndetermined as exc:
            print(f"undetermined: {exc}", file=sys.stderr)
            return 3
        if u_k != u0 or rho_k != rho0:
            print(f"violation: invariants changed at move {step}",
                  file=sys.stderr)
            return 1
        verdict = homologous_primitive_equiv(P_prev, P_k, args.cap,
                                             check=False)
        if verdict == "undetermined":
            print("undetermined: equivalence orbit truncated", file=sys.stderr)
            return 3
        if verdict == "inequivalent":
            print(f"violation: primitive changed at move {step}",
                  file=sys.stderr)
            return 1
        P_prev = P_k
    if args.format == "json":
        _emit_json({"moves": trace, "ok": True})
    else:
        print(f"fuzz ok: {args.moves} moves, invariants stable")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text",
                        help="output format (default: text)")
    common.add_argument("--cap", type=int, default=homology.DEFAULT_CAP,
                        help="orbit state limit (default: 10^6)")
    common.add_argument("--seed", type=int, default=0,
                        help="random seed for fuzzing (default: 0)")

    parser = argparse.ArgumentParser(
        prog="vstrings",
        description="Virtual n-strings: based matrices, reduction, invariants.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("matrix", parents=[common],
                       help="print the woven based matrix of a diagram")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_matrix)

    p = sub.add_parser("reduce", parents=[common],
                       help="reduce to the primitive matrix with a certificate")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_reduce)

    p = sub.add_parser("invariants", parents=[common],
                       help="u-invariant, rho family, genus bound")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_invariants)

    p = sub.add_parser("iso", parents=[common],
                       help="matrix isomorphism of two diagrams")
    p.add_argument("file1")
    p.add_argument("file2")
    p.set_defaults(fn=_cmd_iso)

    p = sub.add_parser("equiv", parents=[common],
                       help="primitive equivalence of two diagrams")
    p.add_argument("file1")
    p.add_argument("file2")
    p.set_defaults(fn=_cmd_equiv)

    p = sub.add_parser("distinguish", parents=[common],
                       help="compare all implemented invariants")
    p.add_argument("file1")
    p.add_argument("file2")
    p.set_defaults(fn=_cmd_distinguish)

    p = sub.add_parser("gen", parents=[common],
                       help="print a generated diagram (alpha P Q | "
                            "beta P1 Q1 P2 Q2 R S | sigma | tau)")
    p.add_argument("family", choices=("alpha", "beta", "sigma", "tau"))
    p.add_argument("params", type=int, nargs="*")
    p.set_defaults(fn=_cmd_gen)

    p = sub.add_parser("fuzz", parents=[common],
                       help="apply random homotopy moves, assert stability")
    p.add_argument("file")
    p.add_argument("--moves", type=int, default=5,
                   help="number of random moves (default: 5)")
    p.set_defaults(fn=_cmd_fuzz)

    return parser


_PARAM_COUNTS = {"alpha": 2, "beta": 6, "sigma": 0, "tau": 0}


def run(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    if args.command == "gen":
        want = _PARAM_COUNTS[args.family]
        if len(args.params) != want:
            print(f"gen {args.family} takes {want} parameters",
                  file=sys.stderr)
            return 2
        if any(v < 0 for v in args.params):
            print("generator parameters must be nonnegative", file=sys.stderr)
            return 2
    if getattr(args, "cap", 1) < 1 or getattr(args, "moves", 1) < 0:
        print("cap must be >= 1 and moves >= 0", file=sys.stderr)
        return 2
    try:
        return args.fn(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (MoveError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
