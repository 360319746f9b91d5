"""Reading and writing ``.acc`` cell complex files.

One statement per line, ``#`` starts a comment::

    vertex v1
    edge e1 v1 v2
    face f1 e1 e2 -e3
    glue edge e1 -e3

Declarations may come in any order; references are resolved once the whole
file has been read.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .cellcomplex import BoundaryCircle, CellComplex, Edge, Face, GluingSpec, Ref, quotient
from .errors import AccParseError, IncoherentGluing

__all__ = ["parse_acc", "serialize_acc", "load_acc", "AccDocument"]

NAME = re.compile(r"[A-Za-z0-9_]+")


@dataclass(frozen=True)
class AccDocument:
    complex: CellComplex
    gluing: GluingSpec

    def glued(self) -> CellComplex:
        return apply_gluing(self.complex, self.gluing)


def _name(token: str, line: int) -> str:
    if not NAME.fullmatch(token):
        raise AccParseError(line, f"bad name {token!r}")
    return token


def _ref(token: str, line: int) -> Ref:
    r = Ref.parse(token)
    _name(r.cell, line)
    return r


def parse_acc(text: str) -> tuple[CellComplex, GluingSpec]:
    vertices: list[tuple[str, int]] = []
    edges: list[tuple[str, str, str, int]] = []
    faces: list[tuple[str, list[Ref], int]] = []
    glues: dict[str, list[tuple[object, object, int]]] = {"vertex": [], "edge": [], "face": []}
    declared: dict[str, tuple[str, int]] = {}

    def declare(name: str, kind: str, line: int) -> None:
        if name in declared:
            raise AccParseError(line, f"duplicate name {name} (first declared on line {declared[name][1]})")
        declared[name] = (kind, line)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        kw, args = tokens[0], tokens[1:]
        if kw == "vertex":
            if len(args) != 1:
                raise AccParseError(lineno, "expected: vertex NAME")
            declare(_name(args[0], lineno), "vertex", lineno)
            vertices.append((args[0], lineno))
        elif kw == "edge":
            if len(args) != 3:
                raise AccParseError(lineno, "expected: edge NAME SRC TGT")
            name, src, tgt = (_name(a, lineno) for a in args)
            declare(name, "edge", lineno)
            edges.append((name, src, tgt, lineno))
        elif kw == "face":
            if not args:
                raise AccParseError(lineno, "expected: face NAME EDGE...")
            name = _name(args[0], lineno)
            if len(args) == 1:
                raise AccParseError(lineno, f"{name}: empty boundary")
            declare(name, "face", lineno)
            faces.append((name, [_ref(a, lineno) for a in args[1:]], lineno))
        elif kw == "glue":
            if len(args) != 3 or args[0] not in glues:
                raise AccParseError(lineno, "expected: glue vertex|edge|face A B")
            kind = args[0]
            if kind == "vertex":
                a, b = _name(args[1], lineno), _name(args[2], lineno)
            else:
                a, b = _ref(args[1], lineno), _ref(args[2], lineno)
            glues[kind].append((a, b, lineno))
        else:
            raise AccParseError(lineno, f"unknown keyword {kw!r}")

    def expect(name: str, kind: str, line: int) -> None:
        found = declared.get(name)
        if found is None:
            raise AccParseError(line, f"unresolved reference {name}")
        if found[0] != kind:
            raise AccParseError(line, f"{name} is a {found[0]}, expected a {kind}")

    for name, src, tgt, line in edges:
        expect(src, "vertex", line)
        expect(tgt, "vertex", line)
    for name, refs, line in faces:
        for r in refs:
            expect(r.cell, "edge", line)
    for kind, pairs in glues.items():
        for a, b, line in pairs:
            for x in (a, b):
                expect(x if kind == "vertex" else x.cell, kind, line)

    cx = CellComplex(
        tuple(v for v, _ in vertices),
        tuple(Edge(n, s, t) for n, s, t, _ in edges),
        tuple(Face(n, BoundaryCircle(refs)) for n, refs, _ in faces),
    )
    origin = {(kind, (a, b)): line for kind, pairs in glues.items() for a, b, line in pairs}
    spec = GluingSpec(
        vertex_pairs=tuple((a, b) for a, b, _ in glues["vertex"]),
        edge_pairs=tuple((a, b) for a, b, _ in glues["edge"]),
        face_pairs=tuple((a, b) for a, b, _ in glues["face"]),
        origin=origin,
    )
    return cx, spec


def _fmt(r: Ref) -> str:
    return ("-" if r.sign < 0 else "") + r.cell


def serialize_acc(x: CellComplex, g: GluingSpec | None = None) -> str:
    lines = [f"vertex {v}" for v in x.vertices]
    lines += [f"edge {e.name} {e.src} {e.tgt}" for e in x.edges]
    lines += [f"face {f.name} " + " ".join(_fmt(r) for r in f.boundary) for f in x.faces]
    if g is not None:
        lines += [f"glue vertex {a} {b}" for a, b in g.vertex_pairs]
        lines += [f"glue edge {_fmt(a)} {_fmt(b)}" for a, b in g.edge_pairs]
        lines += [f"glue face {_fmt(a)} {_fmt(b)}" for a, b in g.face_pairs]
    return "\n".join(lines) + "\n"


def apply_gluing(x: CellComplex, g: GluingSpec) -> CellComplex:
    """Quotient by ``g``; errors name the source line of the offending directive."""
    if g.is_empty():
        return x
    try:
        return quotient(x, g)
    except IncoherentGluing as exc:
        pair = exc.pair
        line = None
        if pair is not None:
            for kind in ("vertex", "edge", "face"):
                line = g.origin.get((kind, tuple(pair)))
                if line is not None:
                    break
        if line is None:
            raise
        raise AccParseError(line, str(exc)) from exc


def load_acc(path, glue: bool = True) -> CellComplex:
    with open(path, encoding="utf-8") as fh:
        cx, g = parse_acc(fh.read())
    return apply_gluing(cx, g) if glue else cx
