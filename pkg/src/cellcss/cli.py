"""Command line interface: ``cellcss <command> ...``.

Exit status is 0 on success, 1 when the input is mathematically or
syntactically unusable, and 2 for malformed command lines.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from typing import Sequence

from . import accformat
from .cellcomplex import BUILTINS, builtin, direct_sum, tensor_product_1d, validate
from .chaincomplex import from_cell_complex
from .csscode import (
    ClassicalCode,
    PauliVector,
    classical_metrics,
    classical_syndrome_table,
    classify,
    css_from_chain,
    distance_x,
    distance_z,
    render_stabilizers,
    syndrome_x,
    syndrome_z,
)
from .errors import CellCssError
from .homology import homology_z, logical_space
from .intlinalg import ModMatrix


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _load(args, path=None):
    path = path or args.file
    cx, g = _read(path)
    if args.no_glue:
        return cx
    try:
        return accformat.apply_gluing(cx, g)
    except CellCssError as exc:
        raise CellCssError(f"{path}: {exc}") from exc


def _read(path):
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        return accformat.parse_acc(text)
    except CellCssError as exc:
        raise CellCssError(f"{path}: {exc}") from exc


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _code(args):
    return css_from_chain(from_cell_complex(_load(args)), args.d)


def _operator(args, code, values) -> PauliVector:
    return PauliVector(args.type.upper(), tuple(values), code.modulus)


# -- commands ------------------------------------------------------------------

def cmd_validate(args) -> int:
    cx, g = _read(args.file)
    problems = validate(cx)
    if not problems and not args.no_glue:
        try:
            cx = accformat.apply_gluing(cx, g)
        except CellCssError as exc:
            raise CellCssError(f"{args.file}: {exc}") from exc
        problems = validate(cx)
    if problems:
        for p in problems:
            print(f"{args.file}: {p}", file=sys.stderr)
        return 1
    v, e, f = cx.counts
    print(f"ok: {v} vertices, {e} edges, {f} faces")
    return 0


def cmd_homology(args) -> int:
    c = from_cell_complex(_load(args))
    degrees = [args.degree] if args.degree is not None else range(c.degrees + 1)
    for n in degrees:
        prefix = "" if args.degree is not None else f"H_{n}: "
        if not 0 <= n <= c.degrees:
            print(f"{prefix}free rank 0; invariant factors: none")
            continue
        h = homology_z(c, n)
        print(f"{prefix}{h}")
        if args.representatives:
            for col in h.representatives.columns():
                terms = [f"{k}*{lab}" for k, lab in zip(col, c.labels[n]) if k]
                print("  " + (" + ".join(terms) or "0"))
    return 0


def cmd_logical(args) -> int:
    print(logical_space(from_cell_complex(_load(args)).truncate(2), args.d))
    return 0


def cmd_css(args) -> int:
    c = from_cell_complex(_load(args))
    code = css_from_chain(c, args.d)
    logical = logical_space(c.truncate(2), args.d)
    if args.format == "json":
        doc = {
            "modulus": code.modulus,
            "n": code.n_physical,
            "p_x": code.p_x.to_rows(),
            "p_z": code.p_z.to_rows(),
            "logical": {"k_free": logical.free_qudits, "torsion_dims": list(logical.torsion_dims)},
            "labels": {
                "qudits": list(code.qudit_labels),
                "x_checks": list(code.x_check_labels),
                "z_checks": list(code.z_check_labels),
            },
        }
        print(json.dumps(doc, indent=2, ensure_ascii=False))
        return 0
    print(f"n = {code.n_physical} qudits of dimension {code.modulus}")
    print(f"qudits: {' '.join(code.qudit_labels)}")
    print("stabilizer generators:")
    for line in render_stabilizers(code):
        print("  " + line)
    print(f"logical space: {logical}")
    return 0


def cmd_syndrome(args) -> int:
    code = _code(args)
    op = _operator(args, code, args.error)
    if op.pauli_type == "Z":
        s, labels = syndrome_x(code, op), code.x_check_labels
    else:
        s, labels = syndrome_z(code, op), code.z_check_labels
    print(s)
    for lab, v in zip(labels, s.values):
        print(f"  {lab}: {v}")
    return 0


def cmd_classify(args) -> int:
    code = _code(args)
    print(classify(code, _operator(args, code, args.op)))
    return 0


def cmd_distance(args) -> int:
    code = _code(args)
    fn = distance_z if args.type == "z" else distance_x
    print(fn(code, max_weight=args.max_weight, jobs=args.jobs))
    return 0


def cmd_builtin(args) -> int:
    _emit(accformat.serialize_acc(builtin(args.name, args.param)), args.out)
    return 0


def cmd_tensor(args) -> int:
    x, y = _load(args, args.a), _load(args, args.b)
    _emit(accformat.serialize_acc(tensor_product_1d(x, y)), args.out)
    return 0


def cmd_sum(args) -> int:
    x, y = _load(args, args.a), _load(args, args.b)
    _emit(accformat.serialize_acc(direct_sum(x, y)), args.out)
    return 0


def _parity(path) -> ClassicalCode:
    with open(path, encoding="utf-8", newline="") as fh:
        rows = [[int(x) for x in row] for row in csv.reader(fh) if row]
    if any(x not in (0, 1) for row in rows for x in row):
        raise CellCssError(f"{path}: parity entries must be 0 or 1")
    if len({len(r) for r in rows}) > 1:
        raise CellCssError(f"{path}: rows have different lengths")
    return ClassicalCode(ModMatrix.from_rows(rows, 2))


def _bits(v) -> str:
    return "".join(map(str, v))


def cmd_classical_table(args) -> int:
    for s, words in classical_syndrome_table(_parity(args.parity)).items():
        print(f"{_bits(s) or '-'}: {' '.join(_bits(w) for w in words)}")
    return 0


def cmd_classical_metrics(args) -> int:
    n, k, d = classical_metrics(_parity(args.parity))
    print(f"[{n}, {k}, {'-' if d is None else d}]")
    return 0


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cellcss", description="Homological qudit CSS codes from cell complexes.")
    sub = p.add_subparsers(dest="command", required=True)

    load = argparse.ArgumentParser(add_help=False)
    load.add_argument("--no-glue", action="store_true", help="ignore glue directives")

    def with_file(name, fn, help_):
        sp = sub.add_parser(name, parents=[load], help=help_)
        sp.add_argument("file")
        sp.set_defaults(func=fn)
        return sp

    def with_code(name, fn, help_):
        sp = with_file(name, fn, help_)
        sp.add_argument("--d", type=int, required=True, help="qudit dimension")
        return sp

    with_file("validate", cmd_validate, "check a .acc file")
    sp = with_file("homology", cmd_homology, "integral homology")
    sp.add_argument("--degree", type=int)
    sp.add_argument("--representatives", action="store_true")
    with_code("logical", cmd_logical, "logical space over Z_d")
    sp = with_code("css", cmd_css, "parity checks and stabilizers")
    sp.add_argument("--format", choices=["text", "json"], default="text")
    sp.add_argument("--higher", choices=["truncate"], default="truncate",
                    help="how to treat degrees above 2")
    sp = with_code("syndrome", cmd_syndrome, "syndrome of an error")
    sp.add_argument("--type", choices=["x", "z"], required=True, help="Pauli type of the error")
    sp.add_argument("--error", type=_int_list, required=True)
    sp = with_code("classify", cmd_classify, "detectable error, stabilizer or logical")
    sp.add_argument("--type", choices=["x", "z"], required=True)
    sp.add_argument("--op", type=_int_list, required=True)
    sp = with_code("distance", cmd_distance, "brute-force code distance")
    sp.add_argument("--type", choices=["x", "z"], required=True)
    sp.add_argument("--max-weight", type=int)
    sp.add_argument("--jobs", type=int, default=1)

    sp = sub.add_parser("builtin", help="write a named cellulation")
    sp.add_argument("name", choices=list(BUILTINS))
    sp.add_argument("--param", type=int)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_builtin)

    for name, fn in (("tensor", cmd_tensor), ("sum", cmd_sum)):
        sp = sub.add_parser(name, parents=[load], help=f"{name} of two complexes")
        sp.add_argument("a")
        sp.add_argument("b")
        sp.add_argument("--out", required=True)
        sp.set_defaults(func=fn)

    for name, fn in (("classical-table", cmd_classical_table), ("classical-metrics", cmd_classical_metrics)):
        sp = sub.add_parser(name, help="binary code from a CSV parity matrix")
        sp.add_argument("--parity", required=True)
        sp.set_defaults(func=fn)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (CellCssError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


run = main

if __name__ == "__main__":
    sys.exit(main())
