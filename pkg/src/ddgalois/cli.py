"""Command line front end: equation parsing, pipeline runs, JSON reports.

The ``ddgalois`` entry point exposes the classification pipeline
(``classify``, ``relations``) plus the inner solvers (``residues``,
``telescope``, ``hypergeom``).  Input equations are written in a small
expression language over ``x``, ``y(x)``, ``y(x+1)``, ``y(x+2)``; the
parser normalizes to a monic second-order form and rejects anything
that is not genuinely second order.  Reports are emitted as JSON (one
object per input) or as aligned text, and are byte-identical across
runs for the same input and flags.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .classify import Classification, GroupDescriptor, classify_full
from .fields import quadratic_field
from .markers import (
    DegreeCap,
    Inconclusive,
    InternalInconsistency,
    NoSolution,
    OrderError,
    ParseError,
    UnsupportedField,
    ZeroInput,
)
from .ratfunc import RationalFunction as RF
from .relations import emit_relations, verify_certificate
from .riccati import solve_first_riccati
from .summation import discrete_residues, solve_telescoper

SCHEMA_VERSION = "1.0.0"

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INCONCLUSIVE = 3
EXIT_BUG = 4


# -- tokenizer -----------------------------------------------------------------

_SYMBOLS = "+-*/^()="


@dataclass(frozen=True)
class _Token:
    kind: str  # "int", "name", one of _SYMBOLS, or "end"
    text: str
    pos: int


def _tokenize(text: str) -> list:
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(_Token("int", text[i:j], i))
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < n and text[j].isalnum():
                j += 1
            tokens.append(_Token("name", text[i:j], i))
            i = j
            continue
        if ch in _SYMBOLS:
            tokens.append(_Token(ch, ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(_Token("end", "", n))
    return tokens


# -- linear combinations over the y-terms --------------------------------------


class _Combo:
    """A Q(x)-linear combination c2*y(x+2) + c1*y(x+1) + c0*y(x) + scalar."""

    __slots__ = ("coeffs", "scalar")

    def __init__(self, coeffs=None, scalar=None):
        self.coeffs = coeffs or {}
        self.scalar = scalar if scalar is not None else RF.zero()

    @classmethod
    def of_scalar(cls, f: RF) -> "_Combo":
        return cls({}, f)

    @classmethod
    def of_term(cls, shift: int) -> "_Combo":
        return cls({shift: RF.one()}, RF.zero())

    def is_scalar(self) -> bool:
        return not self.coeffs

    def _merge(self, other, sign: int) -> "_Combo":
        coeffs = dict(self.coeffs)
        for k, v in other.coeffs.items():
            merged = coeffs.get(k, RF.zero()) + sign * v
            if merged.is_zero():
                coeffs.pop(k, None)
            else:
                coeffs[k] = merged
        return _Combo(coeffs, self.scalar + sign * other.scalar)

    def __add__(self, other):
        return self._merge(other, 1)

    def __sub__(self, other):
        return self._merge(other, -1)

    def __neg__(self):
        return _Combo(
            {k: -v for k, v in self.coeffs.items()}, -self.scalar
        )

    def scaled(self, f: RF) -> "_Combo":
        if f.is_zero():
            return _Combo()
        return _Combo(
            {k: v * f for k, v in self.coeffs.items()}, self.scalar * f
        )


# -- parser --------------------------------------------------------------------


class _Parser:
    """Recursive descent over the grammar:

    sum     := product (("+" | "-") product)*
    product := unary (("*" | "/") unary)*
    unary   := ("-" | "+") unary | power
    power   := atom ("^" ("-")? integer)?
    atom    := integer | "x" | "y" "(" shiftarg ")" | "(" sum ")"

    ``^`` binds tighter than ``*``/``/``, which bind tighter than
    ``+``/``-``; division and exponentiation require purely rational
    operands, multiplication allows a rational factor on either side of
    a y-term.
    """

    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def take(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(
                f"expected {kind!r} but found {tok.text or 'end of input'!r}",
                tok.pos,
            )
        return self.take()

    def parse_sum(self) -> _Combo:
        node = self.parse_product()
        while self.peek().kind in "+-":
            op = self.take()
            rhs = self.parse_product()
            node = node + rhs if op.kind == "+" else node - rhs
        return node

    def parse_product(self) -> _Combo:
        node = self.parse_unary()
        while self.peek().kind in "*/":
            op = self.take()
            rhs = self.parse_unary()
            if op.kind == "*":
                if node.is_scalar():
                    node = rhs.scaled(node.scalar)
                elif rhs.is_scalar():
                    node = node.scaled(rhs.scalar)
                else:
                    raise ParseError(
                        "products of y-terms are not linear", op.pos
                    )
            else:
                if not rhs.is_scalar():
                    raise ParseError(
                        "cannot divide by a y-term", op.pos
                    )
                if rhs.scalar.is_zero():
                    raise ParseError("division by zero", op.pos)
                node = node.scaled(RF.one() / rhs.scalar)
        return node

    def parse_unary(self) -> _Combo:
        if self.peek().kind == "-":
            self.take()
            return -self.parse_unary()
        if self.peek().kind == "+":
            self.take()
            return self.parse_unary()
        return self.parse_power()

    def parse_power(self) -> _Combo:
        node = self.parse_atom()
        if self.peek().kind == "^":
            op = self.take()
            sign = 1
            if self.peek().kind == "-":
                self.take()
                sign = -1
            exponent = int(self.expect("int").text) * sign
            if not node.is_scalar():
                raise ParseError(
                    "powers of y-terms are not linear", op.pos
                )
            if node.scalar.is_zero() and exponent <= 0:
                raise ParseError("zero to a nonpositive power", op.pos)
            return _Combo.of_scalar(node.scalar**exponent)
        return node

    def parse_atom(self) -> _Combo:
        tok = self.peek()
        if tok.kind == "int":
            self.take()
            return _Combo.of_scalar(RF.of(Fraction(int(tok.text))))
        if tok.kind == "(":
            self.take()
            node = self.parse_sum()
            self.expect(")")
            return node
        if tok.kind == "name":
            if tok.text == "x":
                self.take()
                return _Combo.of_scalar(RF.x())
            if tok.text == "y":
                self.take()
                return self.parse_y_term()
            raise ParseError(f"unknown name {tok.text!r}", tok.pos)
        raise ParseError(
            f"expected a term but found {tok.text or 'end of input'!r}",
            tok.pos,
        )

    def parse_y_term(self) -> _Combo:
        self.expect("(")
        xtok = self.expect("name")
        if xtok.text != "x":
            raise ParseError("y takes arguments x, x+1, or x+2", xtok.pos)
        shift = 0
        if self.peek().kind == "+":
            self.take()
            stok = self.expect("int")
            shift = int(stok.text)
            if shift not in (1, 2):
                raise ParseError(
                    "y takes arguments x, x+1, or x+2", stok.pos
                )
        self.expect(")")
        return _Combo.of_term(shift)


# -- equation input ------------------------------------------------------------


@dataclass(frozen=True)
class EquationInput:
    """Monic second-order input sigma^2(y) + a*sigma(y) + b*y = 0."""

    a: RF
    b: RF
    source_text: str = ""


def parse_equation(text: str) -> EquationInput:
    """Parse an equation over y(x), y(x+1), y(x+2) to monic form.

    The equation is divided through by the coefficient of y(x+2);
    inputs where that coefficient vanishes, or where the y(x)
    coefficient vanishes after normalization, are not genuinely second
    order and are rejected with OrderError.
    """
    parser = _Parser(text)
    lhs = parser.parse_sum()
    eq = parser.expect("=")
    rhs = parser.parse_sum()
    parser.expect("end")
    combo = lhs - rhs
    if not combo.scalar.is_zero():
        raise ParseError(
            "only homogeneous equations (right-hand side 0) are supported",
            eq.pos,
        )
    lead = combo.coeffs.get(2, RF.zero())
    if lead.is_zero():
        raise OrderError("equation is not genuinely second order")
    a = combo.coeffs.get(1, RF.zero()) / lead
    b = combo.coeffs.get(0, RF.zero()) / lead
    if b.is_zero():
        raise OrderError("equation is not genuinely second order")
    return EquationInput(a=a, b=b, source_text=text)


def parse_ratfunc(text: str) -> RF:
    """Parse a pure rational expression in x."""
    parser = _Parser(text)
    combo = parser.parse_sum()
    parser.expect("end")
    if not combo.is_scalar():
        raise ParseError("expected a rational function without y-terms", 0)
    return combo.scalar


def format_equation(eq: EquationInput) -> str:
    """Canonical monic rendering; parses back to the same coefficients."""
    return f"y(x+2) + ({eq.a})*y(x+1) + ({eq.b})*y(x) = 0"


# -- options and field parsing ---------------------------------------------------


@dataclass(frozen=True)
class Options:
    json_output: bool = True
    max_degree: int | None = None
    number_field: object = None
    verify: bool = True
    step: int = 1


def parse_number_field(text: str):
    """A designated quadratic extension written like "t^2-5"."""
    compact = text.replace(" ", "")
    if not compact.startswith("t^"):
        raise ParseError("number field must be given as a minimal "
                         "polynomial in t, like t^2-5", 0)
    rest = compact[2:]
    k = 0
    while k < len(rest) and rest[k].isdigit():
        k += 1
    if k == 0:
        raise ParseError("missing exponent in the minimal polynomial", 2)
    degree = int(rest[:k])
    if degree != 2:
        raise UnsupportedField(
            "only quadratic constant-field extensions are supported"
        )
    tail = rest[k:]
    if not tail:
        raise ParseError("the minimal polynomial needs a constant term", 2)
    if tail[0] not in "+-":
        raise ParseError("expected a sign before the constant term", 2 + k)
    try:
        constant = Fraction(tail)
    except ValueError:
        raise ParseError(f"bad constant term {tail!r}", 2 + k) from None
    disc = -constant
    if disc <= 0:
        raise UnsupportedField(
            "only real quadratic extensions t^2 - D with D > 0 are supported"
        )
    return quadratic_field(disc)


# -- report building -----------------------------------------------------------


def _constraint_json(constraint) -> dict:
    return {"kind": constraint.kind, "params": constraint.params()}


def _descriptor_json(descriptor: GroupDescriptor) -> dict:
    return {
        "shape": descriptor.shape.value,
        "constraints": [
            _constraint_json(c) for c in descriptor.constraints
        ],
        "components": descriptor.components,
    }


def _diagnostics_json(result: Classification) -> dict:
    diag = {
        "branch": result.branch,
        "provenance": list(result.G.provenance),
    }
    if result.iterates is not None:
        diag["iterate_step"] = result.iterates.t
    return diag


def _relation_json(cert, verified) -> dict:
    entry = {"kind": cert.kind, "witnesses": cert.witnesses()}
    entry["verified"] = verified
    return entry


def build_report(
    eq: EquationInput, options: Options, with_relations: bool
) -> dict:
    result = classify_full(
        eq.a,
        eq.b,
        max_degree=options.max_degree,
        extra_field=options.number_field,
    )
    relations = []
    if with_relations:
        for cert in emit_relations(result.G, result):
            verified = (
                verify_certificate(cert, result) if options.verify else None
            )
            if options.verify and not verified:
                raise InternalInconsistency(
                    f"emitted certificate failed verification: {cert}"
                )
            relations.append(_relation_json(cert, verified))
    return {
        "schema_version": SCHEMA_VERSION,
        "input": {
            "a": str(eq.a),
            "b": str(eq.b),
            "source_text": eq.source_text,
        },
        "H": _descriptor_json(result.H),
        "G": _descriptor_json(result.G),
        "relations": relations,
        "diagnostics": _diagnostics_json(result),
    }


def run_classify(eq: EquationInput, options: Options) -> dict:
    return build_report(eq, options, with_relations=False)


def run_relations(eq: EquationInput, options: Options) -> dict:
    return build_report(eq, options, with_relations=True)


# -- text rendering ------------------------------------------------------------


def _render_text(report: dict) -> str:
    shown = report["input"]["source_text"] or (
        f"y(x+2) + ({report['input']['a']})*y(x+1)"
        f" + ({report['input']['b']})*y(x) = 0"
    )
    lines = [
        f"input:      {shown}",
        f"a:          {report['input']['a']}",
        f"b:          {report['input']['b']}",
    ]

    def descriptor_line(d):
        cons = ", ".join(
            c["kind"]
            + (
                "("
                + ", ".join(str(v) for v in c["params"].values())
                + ")"
                if c["params"]
                else ""
            )
            for c in d["constraints"]
        )
        return f"{d['shape']}[{cons}] (components: {d['components']})"

    lines.append(f"H:          {descriptor_line(report['H'])}")
    lines.append(f"G:          {descriptor_line(report['G'])}")
    if report["relations"]:
        lines.append("relations:")
        for entry in report["relations"]:
            mark = ""
            if entry["verified"] is True:
                mark = "  [verified]"
            elif entry["verified"] is False:
                mark = "  [FAILED]"
            witness = ", ".join(
                f"{k}={v}" for k, v in entry["witnesses"].items()
            )
            lines.append(f"  - {entry['kind']}({witness}){mark}")
    return "\n".join(lines)


# -- error mapping -------------------------------------------------------------


def _error_info(exc: Exception):
    if isinstance(exc, ParseError):
        payload = {"kind": "ParseError", "message": str(exc)}
        if exc.position is not None:
            payload["position"] = exc.position
        return payload, EXIT_INPUT
    if isinstance(exc, (OrderError, ZeroInput)):
        return {"kind": "OrderError", "message": str(exc)}, EXIT_INPUT
    if isinstance(exc, (Inconclusive, UnsupportedField, DegreeCap)):
        return {"kind": type(exc).__name__, "message": str(exc)}, (
            EXIT_INCONCLUSIVE
        )
    if isinstance(exc, InternalInconsistency):
        return {"kind": "InternalInconsistency", "message": str(exc)}, (
            EXIT_BUG
        )
    raise exc


def _emit(payload, options: Options, out) -> None:
    if options.json_output:
        print(json.dumps(payload), file=out)
    else:
        if "error" in payload:
            err = payload["error"]
            where = (
                f" (at position {err['position']})"
                if "position" in err
                else ""
            )
            print(f"error [{err['kind']}]: {err['message']}{where}", file=out)
        elif "schema_version" in payload:
            print(_render_text(payload), file=out)
        else:
            for key, value in payload.items():
                print(f"{key}: {value}", file=out)


# -- utility subcommands -------------------------------------------------------


def run_telescope(text: str, options: Options) -> dict:
    f = parse_ratfunc(text)
    g = solve_telescoper(f, options.step)
    if g is NoSolution:
        return {"g": None}
    return {"g": str(g)}


def run_residues(text: str, options: Options) -> dict:
    f = parse_ratfunc(text)
    table = discrete_residues(f, options.step)
    orbits = []
    for orbit in table.orbits():
        levels = {
            str(j): str(table.level(orbit, j))
            for j in range(1, table.max_level(orbit) + 1)
            if not table.level(orbit, j).is_zero()
        }
        orbits.append(
            {
                "representative": str(orbit.rep),
                "shift_class": orbit.residue,
                "residues": levels,
            }
        )
    return {"step": options.step, "summable": not orbits, "orbits": orbits}


def run_hypergeom(text: str, options: Options) -> dict:
    eq = parse_equation(text)
    solved = solve_first_riccati(
        eq.a,
        eq.b,
        max_degree=(
            options.max_degree if options.max_degree is not None else 30
        ),
        extra_field=options.number_field,
    )
    return {
        "certificates": [str(u) for u in solved.solutions],
        "cardinality": solved.cardinality.value,
        "completeness": solved.completeness.value,
    }


# -- batch driver --------------------------------------------------------------


def _job(line: str, options: Options, with_relations: bool):
    try:
        eq = parse_equation(line)
        report = (
            run_relations(eq, options)
            if with_relations
            else run_classify(eq, options)
        )
        return report, EXIT_OK
    except Exception as exc:  # mapped below; unknown kinds re-raise
        payload, code = _error_info(exc)
        return {"error": payload}, code


def _run_equation_command(arg: str, options: Options, with_relations: bool):
    if os.path.isfile(arg):
        with open(arg, encoding="utf-8") as handle:
            lines = [
                line.strip()
                for line in handle
                if line.strip() and not line.lstrip().startswith("#")
            ]
        with ThreadPoolExecutor() as pool:
            results = list(
                pool.map(
                    lambda line: _job(line, options, with_relations), lines
                )
            )
        worst = EXIT_OK
        for payload, code in results:
            _emit(payload, options, sys.stdout)
            worst = max(worst, code)
        return worst
    payload, code = _job(arg, options, with_relations)
    _emit(payload, options, sys.stdout)
    return code


def _run_simple(runner, arg: str, options: Options):
    try:
        payload = runner(arg, options)
        code = EXIT_OK
    except Exception as exc:
        info, code = _error_info(exc)
        payload = {"error": info}
    _emit(payload, options, sys.stdout)
    return code


# -- argument parsing ----------------------------------------------------------


def _build_argparser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="ddgalois",
        description=(
            "Classify difference and difference-differential Galois "
            "groups of second-order linear recurrences over Q(x) and "
            "emit verified relation certificates."
        ),
    )
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, with_step=False):
        group = p.add_mutually_exclusive_group()
        group.add_argument(
            "--json",
            dest="json_output",
            action="store_true",
            default=True,
            help="JSON output (default)",
        )
        group.add_argument(
            "--text",
            dest="json_output",
            action="store_false",
            help="aligned text output",
        )
        p.add_argument(
            "--max-degree",
            type=int,
            default=None,
            metavar="N",
            help="factorization degree cap",
        )
        p.add_argument(
            "--number-field",
            default=None,
            metavar="POLY",
            help='designated quadratic extension, e.g. "t^2-5"',
        )
        verify = p.add_mutually_exclusive_group()
        verify.add_argument(
            "--verify",
            dest="verify",
            action="store_true",
            default=True,
            help="re-check every emitted certificate (default)",
        )
        verify.add_argument(
            "--no-verify",
            dest="verify",
            action="store_false",
            help="skip certificate re-checking",
        )
        if with_step:
            p.add_argument(
                "--step",
                type=int,
                default=1,
                metavar="T",
                help="shift step t for the sigma^t solvers",
            )

    for name, doc in [
        ("classify", "group classification of an equation or batch file"),
        ("relations", "classification plus relation certificates"),
    ]:
        p = sub.add_parser(name, help=doc)
        p.add_argument("input", help="equation text or batch file path")
        common(p)

    p = sub.add_parser("residues", help="discrete residue table")
    p.add_argument("input", help="rational function in x")
    common(p, with_step=True)

    p = sub.add_parser("telescope", help="solve g(x+t) - g(x) = f")
    p.add_argument("input", help="rational function in x")
    common(p, with_step=True)

    p = sub.add_parser("hypergeom", help="first-order certificates")
    p.add_argument("input", help="equation text")
    common(p)

    return top


def _options_from(args) -> Options:
    return Options(
        json_output=args.json_output,
        max_degree=args.max_degree,
        number_field=(
            parse_number_field(args.number_field)
            if args.number_field
            else None
        ),
        verify=args.verify,
        step=getattr(args, "step", 1),
    )


def main(argv=None) -> int:
    args = _build_argparser().parse_args(argv)
    try:
        options = _options_from(args)
    except Exception as exc:
        info, code = _error_info(exc)
        print(json.dumps({"error": info}), file=sys.stderr)
        return code
    if args.command == "classify":
        return _run_equation_command(args.input, options, False)
    if args.command == "relations":
        return _run_equation_command(args.input, options, True)
    if args.command == "residues":
        return _run_simple(run_residues, args.input, options)
    if args.command == "telescope":
        return _run_simple(run_telescope, args.input, options)
    return _run_simple(run_hypergeom, args.input, options)


if __name__ == "__main__":
    sys.exit(main())
