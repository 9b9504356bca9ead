"""Command-line front end: check, eq, eval, classify, laws.

Exit codes are script-friendly: 0 for success or "equal", 1 for a
semantic failure (type error, unknown name, "not equal", a law that
broke), and 2 for I/O or parse problems.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from dataclasses import dataclass

from .diagram import ParseError, TypeMismatch, UnknownName, graph_eq, parse, to_graph, typecheck
from .frobenius import classify_cob, fuse, spiderize
from .lawcheck import (
    check_coherence,
    check_compact_structure,
    check_hopf_bialgebra,
    check_naturality_squares,
    check_scalar_laws,
    merge_reports,
    negative_suite,
)
from .scalars import COMPLEX
from .tqft import (
    Interpretation,
    basis_frobenius,
    hopf_group_z2,
    interpret,
    interpretation_from_data,
    verify_frobenius,
)


@dataclass
class Workspace:
    """Everything one invocation works with."""

    signature: object
    diagrams: dict
    interpretation: Interpretation | None = None
    tolerance: float | None = None
    seed: int | None = None
    path: str = ""

    def diagram(self, name):
        term = self.diagrams.get(name)
        if term is None:
            raise UnknownName(f"no diagram named {name!r} in {self.path}")
        return term


def _read_text(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _IOFailure(f"cannot read {path}: {exc.strerror or exc}") from exc


class _IOFailure(Exception):
    pass


def _load_workspace(args):
    result = parse(_read_text(args.file))
    ws = Workspace(
        signature=result.signature,
        diagrams=result.diagrams,
        tolerance=getattr(args, "tol", None),
        seed=getattr(args, "seed", None),
        path=args.file,
    )
    interp_path = getattr(args, "interp", None)
    if interp_path:
        raw = _read_text(interp_path)
        try:
            data = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise _IOFailure(f"{interp_path}: invalid JSON: {exc}") from exc
        ws.interpretation = interpretation_from_data(
            data, ws.signature, tolerance=ws.tolerance
        )
    return ws


def _format_value(tag, value):
    if tag.kind == "complex":
        if value.imag == 0:
            return "%g" % value.real
        return "%g%+gj" % (value.real, value.imag)
    if tag.kind == "bool":
        return "1" if value else "0"
    return str(value)


def _format_matrix(m):
    if m.rows == 1 and m.cols == 1:
        return _format_value(m.tag, m.entry(0, 0).value)
    rows = []
    for i in range(m.rows):
        cells = ", ".join(_format_value(m.tag, m.entry(i, j).value) for j in range(m.cols))
        rows.append(f"[{cells}]")
    return "[" + ", ".join(rows) + "]"


def _word_labels(word, interp):
    """Basis-element labels for a word, dotted across tensor factors."""
    pools = []
    for atom, _ in word.factors:
        d = interp.atom_dim(atom)
        names = interp.element_names.get(atom)
        pools.append(names if names and len(names) == d else [str(i) for i in range(d)])
    if not pools:
        return ["I"]
    return [".".join(parts) for parts in itertools.product(*pools)]


def _format_pairs(m, dom_labels, cod_labels):
    pairs = [
        f"({dom_labels[j]}, {cod_labels[i]})"
        for j in range(m.cols)
        for i in range(m.rows)
        if m.entry(i, j).value
    ]
    return "{" + ", ".join(pairs) + "}"


def cmd_check(args):
    ws = _load_workspace(args)
    for name, term in ws.diagrams.items():
        dom, cod = typecheck(term, ws.signature)
        print(f"{name} : {dom} -> {cod}")
    return 0


def cmd_eq(args):
    ws = _load_workspace(args)
    t1 = ws.diagram(args.first)
    t2 = ws.diagram(args.second)
    g1 = to_graph(t1, ws.signature)
    g2 = to_graph(t2, ws.signature)
    if args.frobenius:
        g1 = fuse(spiderize(g1, ws.signature), special=args.special)
        g2 = fuse(spiderize(g2, ws.signature), special=args.special)
    if graph_eq(g1, g2):
        print("equal")
        return 0
    print("not equal")
    return 1


def cmd_eval(args):
    ws = _load_workspace(args)
    if ws.interpretation is None:
        raise _IOFailure("eval needs --interp FILE")
    term = ws.diagram(args.diagram)
    m = interpret(term, ws.interpretation)
    print(_format_matrix(m))
    if m.tag.kind == "bool":
        dom, cod = typecheck(term, ws.signature)
        print(
            _format_pairs(
                m,
                _word_labels(dom, ws.interpretation),
                _word_labels(cod, ws.interpretation),
            )
        )
    return 0


def cmd_classify(args):
    ws = _load_workspace(args)
    term = ws.diagram(args.diagram)
    for line in classify_cob(term, ws.signature).render_lines():
        print(line)
    return 0


def cmd_laws(args):
    interp = None
    if args.interp:
        raw = _read_text(args.interp)
        try:
            data = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise _IOFailure(f"{args.interp}: invalid JSON: {exc}") from exc
        # the battery only needs the semiring, dimensions, and any
        # frobenius data; generator matrices would require a signature
        data = {k: v for k, v in data.items() if k != "generators"}
        interp = interpretation_from_data(data, tolerance=args.tol)
    tag = interp.tag if interp else COMPLEX
    seed = args.seed if args.seed is not None else 7
    nat_interp = interp if interp else Interpretation(COMPLEX, {"A": 2, "B": 3})
    reports = [
        check_coherence(tag),
        check_naturality_squares(nat_interp, seed=seed),
        check_scalar_laws(tag, seed=seed),
        check_compact_structure(tag),
    ]
    hopf, antipode = hopf_group_z2(COMPLEX)
    reports.append(check_hopf_bialgebra(hopf, antipode))
    presentations = (
        list(interp.frobenius_data.values())
        if interp and interp.frobenius_data
        else [basis_frobenius(2, tag)]
    )
    for p in presentations:
        reports.append(verify_frobenius(p))
    reports.append(negative_suite())
    report = merge_reports(reports)
    print(report.render())
    if report.ok:
        print("all laws as expected")
        return 0
    print("%d law(s) came out wrong" % len(report.surprises()))
    return 1


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="catkit", description="diagram toolkit for monoidal categories"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="parse a file and print every diagram's type")
    p_check.add_argument("file")
    p_check.set_defaults(func=cmd_check)

    p_eq = sub.add_parser("eq", help="compare two named diagrams up to wire homeomorphism")
    p_eq.add_argument("file")
    p_eq.add_argument("first")
    p_eq.add_argument("second")
    p_eq.add_argument("--frobenius", action="store_true", help="fuse spiders before comparing")
    p_eq.add_argument("--special", action="store_true", help="also discard handles while fusing")
    p_eq.set_defaults(func=cmd_eq)

    p_eval = sub.add_parser("eval", help="evaluate a diagram to a matrix")
    p_eval.add_argument("file")
    p_eval.add_argument("diagram")
    p_eval.add_argument("--interp", required=True, help="JSON interpretation data")
    p_eval.add_argument("--tol", type=float, default=None, help="comparison tolerance")
    p_eval.set_defaults(func=cmd_eval)

    p_cls = sub.add_parser("classify", help="normal-form classification of a surface diagram")
    p_cls.add_argument("file")
    p_cls.add_argument("diagram")
    p_cls.set_defaults(func=cmd_classify)

    p_laws = sub.add_parser("laws", help="run the equational law battery and print a report")
    p_laws.add_argument("--interp", default=None, help="JSON interpretation data")
    p_laws.add_argument("--seed", type=int, default=None)
    p_laws.add_argument("--tol", type=float, default=None)
    p_laws.set_defaults(func=cmd_laws)

    return parser


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _IOFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ParseError as exc:
        path = getattr(args, "file", "<input>")
        print(f"{path}:{exc.line}:{exc.col}: {exc}", file=sys.stderr)
        return 2
    except (TypeMismatch, UnknownName, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
