"""Command-line front end.

Exit codes: 0 success, 1 other error, 2 bad input, 3 input not invariant
under the Levi Weyl group, 4 character not polynomial, 5 a verified claim failed.
"""
from __future__ import annotations

import argparse
import contextlib
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import ximap
from .errors import (BadIndex, BadPartition, LevirepError, NotInLattice, NotDominant,
                     NotLeviInvariant, NotNested, NotPolynomialCharacter, OutOfStatedRange,
                     ParseError, RankMismatch, UnsupportedRank, VariableCountMismatch)
from .exactpoly import ExactPoly, LaurentPoly
from .properties import SUITES, run_property_suites
from .repring import (Character, irreducible_character, poly_membership, springer_torus_general,
                      tensor_decompose)
from .rootdata import build_root_system, parse_parabolic
from .schubert import SchubertCombination, borel_expand, cup_product

EXIT_OK, EXIT_ERROR, EXIT_PARSE, EXIT_NOT_INVARIANT, EXIT_NOT_POLY, EXIT_FAILED = 0, 1, 2, 3, 4, 5

_INPUT_ERRORS = (ParseError, BadIndex, UnsupportedRank, RankMismatch, VariableCountMismatch,
                 BadPartition, NotDominant, NotInLattice, OutOfStatedRange, NotNested)


class _Output:
    def __init__(self, args: argparse.Namespace, stdout):
        self.args = args
        self.stdout = stdout

    def emit(self, result, text: str, claims: list | None = None) -> None:
        if self.args.format == "json":
            payload = {"command": self.args.command, "inputs": _inputs(self.args), "result": result}
            if claims is not None:
                payload["claims"] = claims
            self.stdout.write(json.dumps(payload, indent=2, ensure_ascii=False) + "\n")
        else:
            self.stdout.write(text.rstrip("\n") + "\n")


def _inputs(args: argparse.Namespace) -> dict:
    skip = {"command", "format", "handler"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip and v is not None}


def _root_system(args):
    if args.family is None or args.rank is None:
        raise ParseError("--family and --rank are required")
    return build_root_system(args.family, args.rank)


def _weight(rs, text: str) -> tuple:
    try:
        coeffs = [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise ParseError(f"bad weight {text!r}") from exc
    if len(coeffs) != rs.rank:
        raise ParseError(f"weight needs {rs.rank} fundamental coefficients")
    w = rs.weight_from_fundamental(coeffs)
    if any(Fraction(c).denominator != 1 for c in w):
        raise NotInLattice(f"{coeffs} is a spin weight; only SO-lattice weights are supported")
    return tuple(int(c) for c in w)


def _fundamental(rs, weight) -> list:
    return [int(c) for c in rs.fundamental_coefficients(weight)]


# --- subcommands -----------------------------------------------------------

def cmd_expand(args, out: _Output) -> int:
    rs = _root_system(args)
    tag = parse_parabolic(rs, args.parabolic)
    f = ExactPoly.parse(args.poly, rs.coord_dim, "x")
    result = borel_expand(f, tag)
    out.emit(result.to_json(), str(result))
    return EXIT_OK


def cmd_xi(args, out: _Output) -> int:
    rs = _root_system(args)
    ctx = ximap.XiContext(rs, parse_parabolic(rs, args.parabolic))
    chi = ctx.character(args.char)
    try:
        result = ximap.xi(ctx, chi)
    except NotPolynomialCharacter as exc:
        out.emit({"member": False, "witness": exc.witness},
                 f"not a polynomial character; witness {exc.witness}")
        return EXIT_NOT_POLY
    out.emit(result.to_json(), str(result))
    return EXIT_OK


def cmd_product(args, out: _Output) -> int:
    rs = _root_system(args)
    tag = parse_parabolic(rs, args.parabolic)
    a = SchubertCombination.parse(tag, args.a)
    b = SchubertCombination.parse(tag, args.b)
    result = cup_product(a, b, method=args.method)
    out.emit(result.to_json(), str(result))
    return EXIT_OK


def cmd_membership(args, out: _Output) -> int:
    rs = _root_system(args)
    chi = Character(parse_parabolic(rs, args.parabolic), LaurentPoly.parse(args.char, rs.coord_dim))
    res = poly_membership(chi)
    lines = [f"member: {str(res.member).lower()}"]
    if res.member:
        lines.append(f"P_f: {res.P_f}")
        if res.Q_f is not None:
            lines.append(f"Q_f: {res.Q_f}")
        if res.block:
            lines.append("squared variables: " + ", ".join(f"x{k}" for k in res.block))
    else:
        lines.append(f"witness: {res.witness}")
    if not res.integral:
        lines.append("note: coefficients are not all integers")
    out.emit(res.to_json(), "\n".join(lines))
    return EXIT_OK if res.member else EXIT_NOT_POLY


def cmd_character(args, out: _Output) -> int:
    rs = _root_system(args)
    lam = _weight(rs, args.weight)
    chi = irreducible_character(rs, lam)
    out.emit({"character": str(chi.poly), "dimension": chi.dimension, "highest_weight": list(lam)},
             f"{chi.poly}\ndimension: {chi.dimension}")
    return EXIT_OK


def cmd_tensor(args, out: _Output) -> int:
    rs = _root_system(args)
    lam, mu = _weight(rs, args.weight), _weight(rs, args.weight2)
    dec = tensor_decompose(rs, lam, mu)
    rows = [{"weight": list(nu), "fundamental": _fundamental(rs, nu), "multiplicity": m}
            for nu, m in dec.items()]
    text = "\n".join(f"V({','.join(map(str, r['weight']))}) x {r['multiplicity']}" for r in rows)
    out.emit(rows, text)
    return EXIT_OK


def cmd_springer(args, out: _Output) -> int:
    rs = _root_system(args)
    coords = springer_torus_general(rs, _weight(rs, args.weight))
    out.emit([str(c) for c in coords], "\n".join(f"h{i}: {c}" for i, c in enumerate(coords, 1)))
    return EXIT_OK


def _verify_reports(args) -> list:
    suite = args.suite
    fam = args.family.upper() if args.family else None
    if suite == "thm3":
        pairs = [(args.r, args.n)] if args.r and args.n else [(1, 3), (2, 4), (2, 5)]
        return [ximap.verify_theorem3(r, n) for r, n in pairs]
    if suite in ("prop8", "prop9"):
        prop, default = ("P8", [(2, 1), (3, 1), (3, 2)]) if suite == "prop8" else \
            ("P9", [(2, 1), (2, 2), (3, 2), (3, 3)])
        pairs = [(args.n, args.r)] if args.n and args.r else default
        return [ximap.verify_proposition(prop, n, r) for n, r in pairs]
    if suite == "prop10":
        n = args.n or args.rank or 4
        rs_ = [args.r] if args.r else list(range(1, n + 1))
        return [ximap.verify_proposition("P10" if r <= n - 2 else "P10_rn", n, r) for r in rs_]
    if suite == "sec10":
        groups = [(fam, args.rank)] if fam and args.rank else \
            [("C", 2), ("C", 3), ("B", 2), ("B", 3), ("D", 4)]
        return [ximap.verify_proposition("S10", n, family=f) for f, n in groups]
    if suite == "diagram":
        if fam and args.rank:
            rs = build_root_system(fam, args.rank)
            q = ximap.XiContext(rs, parse_parabolic(rs, args.parabolic or "maximal:1"))
            p = ximap.XiContext(rs, parse_parabolic(rs, args.sub_parabolic or "borel"))
            return [ximap.verify_commutative_diagram(p, q)]
        return [ximap.verify_commutative_diagram(ximap.XiContext.create(f, n), ximap.XiContext.maximal(f, n, 1))
                for f, n in (("C", 2), ("A", 2))]
    if suite == "lemma-so":
        return [ximap.verify_lemma_so(n) for n in ([args.n] if args.n else [2, 3, 4])]
    if suite == "negative-irreps":
        groups = [(fam, args.rank)] if fam and args.rank else [("C", 2), ("B", 2), ("D", 4)]
        return [ximap.scan_negative_irreps(f, n) for f, n in groups]
    if suite == "properties":
        if args.property:
            return [SUITES[args.property](args.seed, args.cases)]
        return [run_property_suites(args.seed, args.cases)]
    raise ParseError(f"unknown suite {suite!r}")


def cmd_verify(args, out: _Output) -> int:
    reports = _verify_reports(args)
    merged = ximap.VerificationReport(args.suite)
    for r in reports:
        merged.extend(r)
    ok = merged.passed
    summary = f"{args.suite}: {'pass' if ok else 'FAIL'} ({len(merged.claims) - len(merged.failures)}/{len(merged.claims)} claims)"
    out.emit({"passed": ok, "data": merged.data}, merged.render() + "\n" + summary, merged.to_json())
    return EXIT_OK if ok else EXIT_FAILED


# --- parser ----------------------------------------------------------------

_SUITE_NAMES = ["thm3", "prop8", "prop9", "prop10", "sec10", "diagram", "lemma-so",
                "negative-irreps", "properties"]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--seed", type=int, default=0)

    group = argparse.ArgumentParser(add_help=False)
    group.add_argument("--family", choices=["A", "B", "C", "D", "a", "b", "c", "d"])
    group.add_argument("--rank", type=int)
    group.add_argument("--parabolic", default=None,
                       help="borel | full | maximal:r | levi:i,j,...")

    parser = argparse.ArgumentParser(prog="levirep", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", parents=[common, group], help="Schubert expansion of a polynomial")
    p.add_argument("--poly", required=True)
    p.set_defaults(handler=cmd_expand)

    p = sub.add_parser("xi", parents=[common, group], help="image of a polynomial character")
    p.add_argument("--char", required=True)
    p.set_defaults(handler=cmd_xi)

    p = sub.add_parser("product", parents=[common, group], help="cup product of two classes")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--method", choices=["divided", "chevalley"], default="divided")
    p.set_defaults(handler=cmd_product)

    p = sub.add_parser("membership", parents=[common, group], help="polynomiality test")
    p.add_argument("--char", required=True)
    p.set_defaults(handler=cmd_membership)

    for name, handler, helptext in (("character", cmd_character, "irreducible character"),
                                    ("springer", cmd_springer, "Springer image on the torus")):
        p = sub.add_parser(name, parents=[common, group], help=helptext)
        p.add_argument("--weight", required=True, help="fundamental-weight coefficients, e.g. 1,0")
        p.set_defaults(handler=handler)

    p = sub.add_parser("tensor", parents=[common, group], help="tensor product decomposition")
    p.add_argument("--weight", required=True)
    p.add_argument("--weight2", required=True)
    p.set_defaults(handler=cmd_tensor)

    p = sub.add_parser("verify", parents=[common, group], help="run a verification suite")
    p.add_argument("suite", choices=_SUITE_NAMES)
    p.add_argument("--r", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--sub-parabolic", default=None)
    p.add_argument("--cases", type=int, default=200)
    p.add_argument("--property", choices=sorted(SUITES))
    p.set_defaults(handler=cmd_verify)
    return parser


def _default_parabolic(args) -> None:
    if getattr(args, "parabolic", None) is None and args.command != "verify":
        args.parabolic = "full" if args.command in ("membership",) else "borel"


def main(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    _default_parabolic(args)
    out = _Output(args, stdout)
    try:
        return args.handler(args, out)
    except NotLeviInvariant as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_NOT_INVARIANT
    except _INPUT_ERRORS as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_PARSE
    except LevirepError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
