"""Command-line front end.

Exit codes: 0 success, 2 usage or parse error, 3 domain error, 4 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__, anomaly, fibersum, report
from .char_numbers import CharData8
from .char_numbers import report as charnum_report
from .errors import DomainError, NonIntegralCoefficient, ParseError, TmfCalcError
from .manifolds import check_compactification_eligibility, parse_manifold
from .mf_ring import format_monomial, parse_monomial, to_qseries
from .tmf_groups import lookup, toy_image
from .wzw import central_charge, parse_algebra, search_by_central_charge

EXIT_OK, EXIT_PARSE, EXIT_DOMAIN, EXIT_VERIFY = 0, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def _emit(payload: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
    elif fmt == "csv":
        out.write("key,value\n")
        for k in sorted(payload):
            v = payload[k]
            out.write(f"{k},{json.dumps(v, ensure_ascii=False) if isinstance(v, (list, dict)) else v}\n")
    else:
        for k in sorted(payload):
            v = payload[k]
            if isinstance(v, (list, tuple)):
                v = ", ".join(map(str, v)) or "-"
            elif isinstance(v, dict):
                v = json.dumps(v, sort_keys=True, ensure_ascii=False)
            out.write(f"{k}: {v}\n")


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational number: {text!r}") from exc


# -- subcommands ---------------------------------------------------------------


def cmd_manifold(a, out) -> int:
    x = parse_manifold(a.expr)
    payload = x.to_dict()
    payload["eligibility"] = check_compactification_eligibility(x)
    _emit(payload, a.format, out)
    return EXIT_OK


def cmd_degree(a, out) -> int:
    x = parse_manifold(a.expr)
    theory = anomaly.get_theory(a.theory, strict_paper=a.strict_paper)
    payload = {
        "manifold": x.name,
        "theory": theory.name,
        "c_R - c_L": anomaly.format_rational(anomaly.gravitational_anomaly(theory, x)),
    }
    if a.format == "text" and not a.verbose:
        out.write(f"{anomaly.tmf_degree(theory, x)}\n")
        return EXIT_OK
    payload["degree"] = anomaly.tmf_degree(theory, x)
    _emit(payload, a.format, out)
    return EXIT_OK


def cmd_tmf(a, out) -> int:
    if a.degree is not None:
        entry = lookup(a.degree)
    elif a.manifold is not None:
        x = parse_manifold(a.manifold)
        if a.theory == "toy":
            entry = toy_image(x)
        else:
            entry = lookup(anomaly.tmf_degree(a.theory, x, strict_paper=a.strict_paper))
    else:
        raise ParseError("tmf needs --degree or --manifold")
    _emit(entry.to_dict(), a.format, out)
    return EXIT_OK


def _identify(theory: str, left, right):
    """Pick the fiber-sum formula and its parameters from the operand families."""
    if theory == "hypermultiplet":
        return "hyper", None
    fam_l, fam_r = left.family, right.family
    if theory == "estring_rank1" and fam_l == "E" and fam_r == "E":
        return "estring-elliptic", {"r": left.params[0] // 2, "s": right.params[0] // 2}
    if fam_l == "X" and left.params[0] == 2 and fam_r in ("E", "EK") and right.params[0] % 2 == 0:
        inst = {"n": left.params[1], "r": right.params[0] // 2}
        if theory == "vector":
            return "vector", inst
        if theory == "estring_rank1":
            return "estring-Z", inst
    raise DomainError(f"no fiber-sum formula for the {theory} theory on {left.name} #f {right.name}")


def _default_genus(left, right) -> int:
    # an X bundle meets an elliptic surface along Sigma_{f+b}
    if left.family in ("X", "Xn") and right.family in ("E", "EK"):
        return left.gluing_genera[1]
    common = set(left.gluing_genera or ()) & set(right.gluing_genera or ())
    if len(common) != 1:
        raise ParseError("cannot infer the gluing genus, pass --genus")
    return common.pop()


def cmd_fibersum(a, out) -> int:
    theory = anomaly.get_theory(a.theory).name
    left, right = parse_manifold(a.left), parse_manifold(a.right)
    formula, inst = _identify(theory, left, right)
    if formula == "hyper":
        genus = a.genus if a.genus is not None else _default_genus(left, right)
        inst = {"left": a.left, "right": a.right, "genus": genus}
    verdict = fibersum.verify_formula(formula, inst)
    if verdict.status in ("out-of-domain", "error"):
        raise DomainError(verdict.message)
    payload = verdict.to_dict()
    payload["theory"] = theory
    if not a.verify:
        for k in ("lhs", "status", "message"):
            payload.pop(k)
    _emit(payload, a.format, out)
    return EXIT_VERIFY if a.verify and not verdict.passed else EXIT_OK


def cmd_qexp(a, out) -> int:
    mono = parse_monomial(a.monomial)
    s = to_qseries(mono, a.order)
    payload = {
        "monomial": format_monomial(mono),
        "order": a.order,
        "min_exponent": s.min_exponent,
        "coefficients": list(s.coefficients),
    }
    if a.format == "text":
        terms = [f"{c}*q^{e}" for e, c in s.items() if c]
        out.write(" + ".join(terms) + f" + O(q^{a.order})\n")
        return EXIT_OK
    _emit(payload, a.format, out)
    return EXIT_OK


def cmd_wzw(a, out) -> int:
    if a.algebra is not None:
        g = parse_algebra(a.algebra)
        c = central_charge(g, a.level)
        _emit({"algebra": g.label, "level": a.level, "dim": g.dim, "dual_coxeter": g.dual_coxeter,
               "central_charge": anomaly.format_rational(c)}, a.format, out)
        return EXIT_OK
    if a.central_charge is None:
        raise ParseError("wzw needs --central-charge or --algebra/--level")
    target = _rational(a.central_charge)
    hits = search_by_central_charge(target, a.max_rank, (a.level_min, a.level_max))
    if a.format == "text":
        for g, k in hits:
            out.write(f"{g.label} k={k}\n")
        return EXIT_OK
    _emit({"central_charge": anomaly.format_rational(target), "max_rank": a.max_rank,
           "levels": [a.level_min, a.level_max],
           "solutions": [[g.label, k] for g, k in hits]}, a.format, out)
    return EXIT_OK


def cmd_charnum(a, out) -> int:
    _emit(charnum_report(CharData8(a.p1, a.p2)), a.format, out)
    return EXIT_OK


def cmd_verify(a, out) -> int:
    if a.all or a.table is None:
        reps = report.reproduce_all(strict_paper=a.strict_paper)
    else:
        reps = [report.reproduce(a.table, strict_paper=a.strict_paper)]
    text = report.render(reps, a.format)
    if a.out:
        with open(a.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK if all(r.ok for r in reps) else EXIT_VERIFY


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json", "csv"), default="text")
    theories = sorted(set(anomaly.THEORY_NAMES) | set(anomaly.ALIASES))

    p = _Parser(prog="tmfcalc", description="TMF degrees and generators for 6d (1,0) theories on 4-manifolds.")
    p.add_argument("--version", action="version", version=f"tmfcalc {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("manifold", parents=[fmt], help="invariants of a manifold expression")
    s.add_argument("expr")
    s.set_defaults(func=cmd_manifold)

    s = sub.add_parser("degree", parents=[fmt], help="TMF degree 2(c_R - c_L)")
    s.add_argument("--theory", required=True, choices=theories)
    s.add_argument("--strict-paper", action="store_true", help="E-string coefficient exactly as printed")
    s.add_argument("-v", "--verbose", action="store_true")
    s.add_argument("expr")
    s.set_defaults(func=cmd_degree)

    s = sub.add_parser("tmf", parents=[fmt], help="pi_d TMF entry")
    s.add_argument("--degree", type=int)
    s.add_argument("--theory", choices=theories, default="toy")
    s.add_argument("--manifold")
    s.add_argument("--strict-paper", action="store_true")
    s.set_defaults(func=cmd_tmf)

    s = sub.add_parser("fibersum", parents=[fmt], help="fiber-sum generator formula")
    s.add_argument("--theory", required=True, choices=theories)
    s.add_argument("--left", required=True)
    s.add_argument("--right", required=True)
    s.add_argument("--genus", type=int)
    s.add_argument("--verify", action="store_true", help="compare with the direct generator; exit 4 on mismatch")
    s.set_defaults(func=cmd_fibersum)

    s = sub.add_parser("qexp", parents=[fmt], help="q-expansion of a monomial")
    s.add_argument("monomial")
    s.add_argument("--order", type=int, default=10)
    s.set_defaults(func=cmd_qexp)

    s = sub.add_parser("wzw", parents=[fmt], help="WZW central charges")
    s.add_argument("--central-charge")
    s.add_argument("--max-rank", type=int, default=24)
    s.add_argument("--level-min", type=int, default=-100)
    s.add_argument("--level-max", type=int, default=100)
    s.add_argument("--algebra")
    s.add_argument("--level", type=int, default=1)
    s.set_defaults(func=cmd_wzw)

    s = sub.add_parser("charnum", parents=[fmt], help="signature and A-hat genus from p1, p2")
    s.add_argument("--p1", type=int, required=True)
    s.add_argument("--p2", type=int, required=True)
    s.set_defaults(func=cmd_charnum)

    s = sub.add_parser("verify", parents=[fmt], help="reproduce the tabulated data")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--table", choices=report.TABLE_IDS + tuple(str(i) for i in range(1, 9)))
    g.add_argument("--all", action="store_true")
    s.add_argument("--out")
    s.add_argument("--strict-paper", action="store_true")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except ParseError as exc:
        sys.stderr.write(f"tmfcalc: parse error: {exc}\n")
        return EXIT_PARSE
    except (DomainError, NonIntegralCoefficient) as exc:
        sys.stderr.write(f"tmfcalc: {exc}\n")
        return EXIT_DOMAIN
    except TmfCalcError as exc:
        sys.stderr.write(f"tmfcalc: {exc}\n")
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
