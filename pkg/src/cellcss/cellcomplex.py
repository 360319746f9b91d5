"""Abstract 2-dimensional cell complexes.

Vertices are bare names, edges carry a source and a target, and faces carry
an oriented boundary circle: a cyclic sequence of signed edges whose
endpoints chain together.  Complexes are immutable; gluing, sums and
products all return new complexes.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import BadColumnWeight, BadParam, DimensionTooHigh, IncoherentGluing, UnknownBuiltin
from .intlinalg import ModMatrix

__all__ = [
    "Ref",
    "OrientedCellRef",
    "BoundaryCircle",
    "Edge",
    "Face",
    "CellComplex",
    "GluingSpec",
    "validate",
    "quotient",
    "direct_sum",
    "tensor_product_1d",
    "connected_components",
    "lift_classical",
    "builtin",
    "BUILTINS",
]


@dataclass(frozen=True, order=True)
class Ref:
    """A cell name with an orientation sign (+1 or -1)."""

    sign: int
    cell: str

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"orientation sign must be +1 or -1, got {self.sign!r}")

    def __neg__(self) -> Ref:
        return Ref(-self.sign, self.cell)

    def __str__(self) -> str:
        return ("-" if self.sign < 0 else "+") + self.cell

    @classmethod
    def parse(cls, text: str) -> Ref:
        if text.startswith("-"):
            return cls(-1, text[1:])
        if text.startswith("+"):
            return cls(1, text[1:])
        return cls(1, text)


OrientedCellRef = Ref


class BoundaryCircle:
    """Cyclic sequence of oriented edges, compared up to rotation.

    The stored ``refs`` keep the starting point they were given so that
    serialization is stable; equality and hashing ignore it.
    """

    __slots__ = ("refs",)

    def __init__(self, refs: Iterable[Ref]):
        self.refs: tuple[Ref, ...] = tuple(refs)

    def __len__(self) -> int:
        return len(self.refs)

    def __iter__(self):
        return iter(self.refs)

    def __neg__(self) -> BoundaryCircle:
        return BoundaryCircle(-r for r in reversed(self.refs))

    def rotations(self) -> list[tuple[Ref, ...]]:
        r = self.refs
        return [r[k:] + r[:k] for k in range(len(r))] or [()]

    def _key(self) -> tuple:
        return min((tuple((x.cell, x.sign) for x in rot) for rot in self.rotations()), default=())

    def __eq__(self, other) -> bool:
        if not isinstance(other, BoundaryCircle):
            return NotImplemented
        return len(self) == len(other) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return "BoundaryCircle(" + ", ".join(str(r) for r in self.refs) + ")"

    @classmethod
    def of(cls, *items: str) -> BoundaryCircle:
        """``BoundaryCircle.of("e1", "-e2")``"""
        return cls(Ref.parse(s) for s in items)


@dataclass(frozen=True)
class Edge:
    name: str
    src: str
    tgt: str


@dataclass(frozen=True)
class Face:
    name: str
    boundary: BoundaryCircle


@dataclass(frozen=True)
class CellComplex:
    vertices: tuple[str, ...] = ()
    edges: tuple[Edge, ...] = ()
    faces: tuple[Face, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        object.__setattr__(self, "faces", tuple(self.faces))

    @classmethod
    def build(
        cls,
        vertices: Iterable[str],
        edges: Iterable[tuple[str, str, str]],
        faces: Iterable[tuple[str, Sequence[str]]] = (),
    ) -> CellComplex:
        """Convenience constructor from plain tuples and ``"-e1"`` strings."""
        return cls(
            tuple(vertices),
            tuple(Edge(*e) for e in edges),
            tuple(Face(name, BoundaryCircle.of(*refs)) for name, refs in faces),
        )

    @property
    def counts(self) -> tuple[int, int, int]:
        return len(self.vertices), len(self.edges), len(self.faces)

    @property
    def dimension(self) -> int:
        if self.faces:
            return 2
        if self.edges:
            return 1
        return 0 if self.vertices else -1

    def edge(self, name: str) -> Edge:
        return self._edge_map()[name]

    def _edge_map(self) -> dict[str, Edge]:
        return {e.name: e for e in self.edges}

    def endpoints(self, ref: Ref) -> tuple[str, str]:
        """Source and target of an oriented edge."""
        e = self.edge(ref.cell)
        return (e.src, e.tgt) if ref.sign > 0 else (e.tgt, e.src)

    def cell_names(self) -> list[str]:
        return list(self.vertices) + [e.name for e in self.edges] + [f.name for f in self.faces]


@dataclass(frozen=True)
class GluingSpec:
    """Requested identifications of cells of equal dimension.

    ``origin`` optionally maps each pair to a source line; it does not take
    part in equality.
    """

    vertex_pairs: tuple[tuple[str, str], ...] = ()
    edge_pairs: tuple[tuple[Ref, Ref], ...] = ()
    face_pairs: tuple[tuple[Ref, Ref], ...] = ()
    origin: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "vertex_pairs", tuple(tuple(p) for p in self.vertex_pairs))
        object.__setattr__(self, "edge_pairs", tuple(tuple(p) for p in self.edge_pairs))
        object.__setattr__(self, "face_pairs", tuple(tuple(p) for p in self.face_pairs))

    def is_empty(self) -> bool:
        return not (self.vertex_pairs or self.edge_pairs or self.face_pairs)


# -- validation ----------------------------------------------------------------

def validate(x: CellComplex) -> list[str]:
    """Return diagnostics; an empty list means the complex is well formed.

    Messages are ordered so the first one names the first offending cell in
    declaration order.
    """
    problems: list[str] = []
    seen: set[str] = set()
    for name in x.cell_names():
        if name in seen:
            problems.append(f"{name}: duplicate cell name")
        seen.add(name)
    vertices = set(x.vertices)
    edges = x._edge_map()
    for e in x.edges:
        for end in (e.src, e.tgt):
            if end not in vertices:
                problems.append(f"{e.name}: endpoint {end} is not a vertex")
    for f in x.faces:
        refs = f.boundary.refs
        if not refs:
            problems.append(f"{f.name}: empty boundary")
            continue
        missing = [r.cell for r in refs if r.cell not in edges]
        if missing:
            problems.append(f"{f.name}: boundary uses unknown edge {missing[0]}")
            continue
        ends = [x.endpoints(r) for r in refs]
        for k, (_, tgt) in enumerate(ends):
            nxt = ends[(k + 1) % len(ends)][0]
            if tgt != nxt:
                problems.append(
                    f"{f.name}: circle not closed ({refs[k]} ends at {tgt}, "
                    f"{refs[(k + 1) % len(refs)]} starts at {nxt})"
                )
                break
    return problems


def is_valid(x: CellComplex) -> bool:
    return not validate(x)


# -- gluing --------------------------------------------------------------------

class _SignedUnionFind:
    """Union-find where every element carries a sign relative to its root."""

    def __init__(self, items: Iterable[str]):
        self.parent = {i: i for i in items}
        self.sign = {i: 1 for i in self.parent}

    def copy(self) -> _SignedUnionFind:
        new = _SignedUnionFind(())
        new.parent = dict(self.parent)
        new.sign = dict(self.sign)
        return new

    def find(self, a: str) -> tuple[str, int]:
        s = 1
        path = []
        while self.parent[a] != a:
            path.append(a)
            s *= self.sign[a]
            a = self.parent[a]
        root = a
        # path compression keeping relative signs
        acc = s
        for node in path:
            old = self.sign[node]
            self.parent[node] = root
            self.sign[node] = acc
            acc *= old
        return root, s

    def union(self, a: Ref, b: Ref) -> bool:
        """Declare ``a ~ b``; False if that relates a cell to its own inverse."""
        ra, sa = self.find(a.cell)
        rb, sb = self.find(b.cell)
        sa *= a.sign
        sb *= b.sign
        if ra == rb:
            return sa == sb
        self.parent[rb] = ra
        self.sign[rb] = sa * sb
        return True

    def equivalent(self, a: Ref, b: Ref) -> bool:
        ra, sa = self.find(a.cell)
        rb, sb = self.find(b.cell)
        return ra == rb and sa * a.sign == sb * b.sign


class _PlainUnionFind:
    def __init__(self, items: Iterable[str]):
        self.parent = {i: i for i in items}

    def copy(self) -> _PlainUnionFind:
        new = _PlainUnionFind(())
        new.parent = dict(self.parent)
        return new

    def find(self, a: str) -> str:
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a: str, b: str) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def _glue_edges(x: CellComplex, verts: _PlainUnionFind, edges: _SignedUnionFind, a: Ref, b: Ref) -> bool:
    if not edges.union(a, b):
        return False
    (sa, ta), (sb, tb) = x.endpoints(a), x.endpoints(b)
    verts.union(sa, sb)
    verts.union(ta, tb)
    return True


def _fmt_pair(p) -> str:
    return f"{p[0]} ~ {p[1]}"


def quotient(x: CellComplex, g: GluingSpec) -> CellComplex:
    """Identify cells according to ``g`` and its coherence closure.

    Gluing two edges identifies their endpoints (respecting orientation).
    Gluing two faces identifies their boundary circles: if no rotation of one
    circle already matches the other under the current edge equivalence, the
    first rotation whose edge identifications are consistent is forced.
    Every class is represented by its earliest cell in input order, taken
    with positive orientation.
    """
    problems = validate(x)
    if problems:
        raise IncoherentGluing(f"input complex is invalid: {problems[0]}")
    names = set(x.vertices)
    edge_names = {e.name for e in x.edges}
    face_map = {f.name: f for f in x.faces}

    verts = _PlainUnionFind(x.vertices)
    edges = _SignedUnionFind(edge_names)
    faces = _SignedUnionFind(face_map)

    for a, b in g.vertex_pairs:
        for v in (a, b):
            if v not in names:
                raise IncoherentGluing(f"unknown vertex {v} in {a} ~ {b}", (a, b))
        verts.union(a, b)

    for pair in g.edge_pairs:
        a, b = pair
        for r in pair:
            if r.cell not in edge_names:
                raise IncoherentGluing(f"unknown edge {r.cell} in {_fmt_pair(pair)}", pair)
        if not _glue_edges(x, verts, edges, a, b):
            raise IncoherentGluing(
                f"{_fmt_pair(pair)} identifies an edge with its own inverse", pair
            )

    for pair in g.face_pairs:
        a, b = pair
        for r in pair:
            if r.cell not in face_map:
                raise IncoherentGluing(f"unknown face {r.cell} in {_fmt_pair(pair)}", pair)
        if not faces.union(a, b):
            raise IncoherentGluing(
                f"{_fmt_pair(pair)} identifies a face with its own inverse", pair
            )
        ca = face_map[a.cell].boundary
        cb = face_map[b.cell].boundary
        if a.sign < 0:
            ca = -ca
        if b.sign < 0:
            cb = -cb
        if len(ca) != len(cb):
            raise IncoherentGluing(
                f"{_fmt_pair(pair)}: boundary circles have lengths {len(ca)} and {len(cb)}", pair
            )
        rots = cb.rotations()
        if any(all(edges.equivalent(p, q) for p, q in zip(ca.refs, rot)) for rot in rots):
            continue
        for rot in rots:
            trial_v, trial_e = verts.copy(), edges.copy()
            if all(_glue_edges(x, trial_v, trial_e, p, q) for p, q in zip(ca.refs, rot)):
                verts, edges = trial_v, trial_e
                break
        else:
            raise IncoherentGluing(
                f"{_fmt_pair(pair)}: boundary circles cannot be matched by any rotation", pair
            )

    return _induced(x, verts, edges, faces)


def _induced(x: CellComplex, verts, edges, faces) -> CellComplex:
    vrep: dict[str, str] = {}
    for v in x.vertices:
        vrep.setdefault(verts.find(v), v)

    def canon_signed(uf, order):
        rep: dict[str, tuple[str, int]] = {}
        for name in order:
            root, s = uf.find(name)
            rep.setdefault(root, (name, s))
        out = {}
        for name in order:
            root, s = uf.find(name)
            rname, rs = rep[root]
            out[name] = Ref(s * rs, rname)
        return out

    emap = canon_signed(edges, [e.name for e in x.edges])
    fmap = canon_signed(faces, [f.name for f in x.faces])

    new_vertices = tuple(v for v in x.vertices if vrep[verts.find(v)] == v)
    new_edges = tuple(
        Edge(e.name, vrep[verts.find(e.src)], vrep[verts.find(e.tgt)])
        for e in x.edges
        if emap[e.name].cell == e.name
    )

    def relabel(r: Ref) -> Ref:
        m = emap[r.cell]
        return Ref(r.sign * m.sign, m.cell)

    new_faces = tuple(
        Face(f.name, BoundaryCircle(relabel(r) for r in f.boundary))
        for f in x.faces
        if fmap[f.name].cell == f.name
    )
    return CellComplex(new_vertices, new_edges, new_faces)


# -- combining complexes -------------------------------------------------------

def _renamed(x: CellComplex, prefix: str) -> CellComplex:
    p = lambda n: prefix + n  # noqa: E731
    return CellComplex(
        tuple(p(v) for v in x.vertices),
        tuple(Edge(p(e.name), p(e.src), p(e.tgt)) for e in x.edges),
        tuple(
            Face(p(f.name), BoundaryCircle(Ref(r.sign, p(r.cell)) for r in f.boundary))
            for f in x.faces
        ),
    )


def direct_sum(x: CellComplex, y: CellComplex) -> CellComplex:
    """Disjoint union.  If any names collide, every cell gets an ``L_``/``R_`` prefix."""
    if set(x.cell_names()) & set(y.cell_names()):
        x, y = _renamed(x, "L_"), _renamed(y, "R_")
    return CellComplex(x.vertices + y.vertices, x.edges + y.edges, x.faces + y.faces)


def product_name(a: str, b: str) -> str:
    return f"{a}__{b}"


def tensor_product_1d(x: CellComplex, y: CellComplex) -> CellComplex:
    """Product of two complexes without faces.

    Cells are ordered by (dimension of the left factor, left index, right
    index), the same order :func:`cellcss.chaincomplex.tensor` uses, so the
    cellular chain complex of the product equals the tensor product of the
    factors' chain complexes on the nose.
    """
    if x.faces or y.faces:
        raise DimensionTooHigh("tensor_product_1d needs complexes without faces")
    n = product_name
    vertices = tuple(n(v, w) for v in x.vertices for w in y.vertices)
    edges = tuple(Edge(n(v, f.name), n(v, f.src), n(v, f.tgt)) for v in x.vertices for f in y.edges)
    edges += tuple(Edge(n(e.name, w), n(e.src, w), n(e.tgt, w)) for e in x.edges for w in y.vertices)
    faces = tuple(
        Face(
            n(e.name, f.name),
            BoundaryCircle((
                Ref(1, n(e.name, f.src)),
                Ref(1, n(e.tgt, f.name)),
                Ref(-1, n(e.name, f.tgt)),
                Ref(-1, n(e.src, f.name)),
            )),
        )
        for e in x.edges
        for f in y.edges
    )
    out = CellComplex(vertices, edges, faces)
    names = out.cell_names()
    if len(set(names)) != len(names):
        raise ValueError("product cell names collide; rename the factors")
    return out


def connected_components(x: CellComplex) -> tuple[int, list[list[str]]]:
    """Components of the undirected 1-skeleton, each listed in vertex order."""
    uf = _PlainUnionFind(x.vertices)
    for e in x.edges:
        uf.union(e.src, e.tgt)
    groups: dict[str, list[str]] = {}
    for v in x.vertices:
        groups.setdefault(uf.find(v), []).append(v)
    parts = list(groups.values())
    return len(parts), parts


def lift_classical(parity: ModMatrix) -> CellComplex:
    """Turn a binary parity-check matrix into a graph.

    Each row becomes a vertex and each column an edge between the (one or
    two) rows it checks; weight-1 columns end at an extra vertex ``v_inf``.
    """
    if parity.modulus != 2:
        raise ValueError("lift_classical expects a binary matrix")
    rows = [f"v{i + 1}" for i in range(parity.rows)]
    edges = []
    need_inf = False
    for j in range(parity.cols):
        support = [i for i, x in enumerate(parity.column(j)) if x]
        if len(support) == 2:
            edges.append(Edge(f"e{j + 1}", rows[support[0]], rows[support[1]]))
        elif len(support) == 1:
            need_inf = True
            edges.append(Edge(f"e{j + 1}", rows[support[0]], "v_inf"))
        else:
            raise BadColumnWeight(j, len(support))
    vertices = tuple(rows) + (("v_inf",) if need_inf else ())
    return CellComplex(vertices, tuple(edges), ())


# -- named cellulations --------------------------------------------------------

def _square() -> CellComplex:
    return CellComplex.build(
        ["v1", "v2", "v3", "v4"],
        [("e1", "v1", "v2"), ("e2", "v2", "v3"), ("e3", "v3", "v4"), ("e4", "v4", "v1")],
        [("f1", ["e1", "e2", "e3", "e4"])],
    )


def _glued_square(edge_pairs) -> CellComplex:
    g = GluingSpec(edge_pairs=tuple((Ref.parse(a), Ref.parse(b)) for a, b in edge_pairs))
    return quotient(_square(), g)


def _torus(filled: bool = False) -> CellComplex:
    faces = [
        ("f1", ["e1", "e4", "e5", "-e1", "-e3"]),
        ("f2", ["e2", "e3", "-e2", "-e5", "-e4"]),
    ]
    if filled:
        faces.append(("f3", ["e4", "e5"]))
    return CellComplex.build(
        ["v1", "v2", "v3"],
        [("e1", "v1", "v2"), ("e2", "v2", "v1"), ("e3", "v1", "v1"),
         ("e4", "v2", "v3"), ("e5", "v3", "v2")],
        faces,
    )


def _rp2_halfsphere() -> CellComplex:
    return CellComplex.build(
        ["v1", "v2", "v3"],
        [("e1", "v1", "v2"), ("e2", "v2", "v1"), ("e3", "v2", "v3"),
         ("e4", "v3", "v2"), ("e5", "v1", "v3"), ("e6", "v3", "v1")],
        [("f1", ["e1", "e2"]), ("f2", ["e3", "e4"]), ("f3", ["e5", "e6"]),
         ("f4", ["-e1", "e5", "e4", "e2", "-e6", "-e3"])],
    )


def _square_split() -> CellComplex:
    return CellComplex.build(
        ["v1", "v2", "v3", "v4"],
        [("e1", "v1", "v2"), ("e2", "v2", "v4"), ("e3", "v4", "v1"),
         ("e4", "v2", "v3"), ("e5", "v3", "v4")],
        [("f1", ["e1", "e2", "e3"]), ("f2", ["-e2", "e4", "e5"])],
    )


def _polygon_torsion(q: int) -> CellComplex:
    return CellComplex.build(
        ["v1", "v2"],
        [("e1", "v1", "v2"), ("e2", "v2", "v1")],
        [("f1", ["e1", "e2"] * q)],
    )


def _circle(n: int) -> CellComplex:
    vs = [f"v{i + 1}" for i in range(n)]
    return CellComplex.build(vs, [(f"e{i + 1}", vs[i], vs[(i + 1) % n]) for i in range(n)])


def _line(n: int) -> CellComplex:
    vs = [f"v{i + 1}" for i in range(n + 1)]
    return CellComplex.build(vs, [(f"e{i + 1}", vs[i], vs[i + 1]) for i in range(n)])


# name -> (factory, minimum parameter or None when the builtin takes none)
BUILTINS = {
    "square": (_square, None),
    "square_split": (_square_split, None),
    "cylinder": (lambda: _glued_square([("e1", "-e3")]), None),
    "moebius": (lambda: _glued_square([("e1", "e3")]), None),
    "torus": (_torus, None),
    "torus_filled": (lambda: _torus(filled=True), None),
    "klein": (lambda: _glued_square([("e1", "-e3"), ("e2", "e4")]), None),
    "rp2_square": (lambda: _glued_square([("e1", "e3"), ("e2", "e4")]), None),
    "rp2_halfsphere": (_rp2_halfsphere, None),
    "polygon_torsion": (_polygon_torsion, 2),
    "circle": (_circle, 1),
    "line": (_line, 1),
}


def builtin(name: str, param: int | None = None) -> CellComplex:
    """Return one of the named cellulations in :data:`BUILTINS`."""
    if name not in BUILTINS:
        raise UnknownBuiltin(f"unknown builtin {name!r}; choose from {', '.join(BUILTINS)}")
    factory, minimum = BUILTINS[name]
    if minimum is None:
        if param is not None:
            raise BadParam(f"builtin {name} takes no parameter")
        return factory()
    if param is None:
        raise BadParam(f"builtin {name} needs an integer parameter >= {minimum}")
    if isinstance(param, bool) or not isinstance(param, int) or param < minimum:
        raise BadParam(f"builtin {name} needs an integer parameter >= {minimum}, got {param!r}")
    return factory(param)
