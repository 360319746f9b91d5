"""Chain complexes of free Z-modules with labeled bases."""
from __future__ import annotations

from dataclasses import dataclass

from .cellcomplex import CellComplex, product_name, validate
from .errors import BadModulus, IncoherentGluing, ShapeMismatch
from .intlinalg import IntMatrix, ModMatrix, reduce_mod

__all__ = [
    "ChainComplex",
    "ModChainComplex",
    "Violation",
    "from_cell_complex",
    "verify",
    "tensor",
    "direct_sum",
    "dual",
    "change_ring",
]


@dataclass(frozen=True)
class ChainComplex:
    """``labels[n]`` names the basis of C_n; ``diffs[n - 1]`` is ∂_n : C_n → C_{n-1}."""

    labels: tuple[tuple[str, ...], ...]
    diffs: tuple[IntMatrix, ...]

    def __post_init__(self):
        labels = tuple(tuple(x) for x in self.labels)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "diffs", tuple(self.diffs))
        if not labels:
            raise ShapeMismatch("a chain complex needs at least degree 0")
        if len(self.diffs) != len(labels) - 1:
            raise ShapeMismatch("need exactly one differential per positive degree")
        for n, dn in enumerate(self.diffs, start=1):
            if dn.shape != (len(labels[n - 1]), len(labels[n])):
                raise ShapeMismatch(
                    f"∂_{n} has shape {dn.shape}, expected {(len(labels[n - 1]), len(labels[n]))}"
                )

    @property
    def degrees(self) -> int:
        return len(self.labels) - 1

    @property
    def ranks(self) -> tuple[int, ...]:
        return tuple(len(x) for x in self.labels)

    def rank(self, n: int) -> int:
        return len(self.labels[n]) if 0 <= n <= self.degrees else 0

    def diff(self, n: int) -> IntMatrix:
        """∂_n, with the zero map outside 1..N."""
        if 1 <= n <= self.degrees:
            return self.diffs[n - 1]
        return IntMatrix.zeros(self.rank(n - 1), self.rank(n))

    def truncate(self, top: int) -> ChainComplex:
        return ChainComplex(self.labels[: top + 1], self.diffs[:top])


@dataclass(frozen=True)
class ModChainComplex:
    modulus: int
    labels: tuple[tuple[str, ...], ...]
    diffs: tuple[ModMatrix, ...]

    @property
    def degrees(self) -> int:
        return len(self.labels) - 1

    def diff(self, n: int) -> ModMatrix:
        if 1 <= n <= self.degrees:
            return self.diffs[n - 1]
        rows = len(self.labels[n - 1]) if 0 <= n - 1 <= self.degrees else 0
        cols = len(self.labels[n]) if 0 <= n <= self.degrees else 0
        return ModMatrix(self.modulus, rows, cols, (0,) * (rows * cols))


@dataclass(frozen=True)
class Violation:
    degree: int
    row: int
    col: int
    value: int

    def __str__(self) -> str:
        return f"∂_{self.degree}∂_{self.degree + 1} has entry {self.value} at ({self.row}, {self.col})"


def from_cell_complex(x: CellComplex) -> ChainComplex:
    problems = validate(x)
    if problems:
        raise IncoherentGluing(f"cannot build chains of an invalid complex: {problems[0]}")
    vidx = {v: i for i, v in enumerate(x.vertices)}
    eidx = {e.name: i for i, e in enumerate(x.edges)}
    d1 = [[0] * len(x.edges) for _ in x.vertices]
    for j, e in enumerate(x.edges):
        d1[vidx[e.tgt]][j] += 1
        d1[vidx[e.src]][j] -= 1
    d2 = [[0] * len(x.faces) for _ in x.edges]
    for j, f in enumerate(x.faces):
        for r in f.boundary:
            d2[eidx[r.cell]][j] += r.sign
    labels = [tuple(x.vertices), tuple(e.name for e in x.edges), tuple(f.name for f in x.faces)]
    diffs = [IntMatrix.from_rows(d1, len(x.edges)), IntMatrix.from_rows(d2, len(x.faces))]
    # drop empty top degrees so a graph yields a length-1 complex
    while len(labels) > 1 and not labels[-1]:
        labels.pop()
        diffs.pop()
    return ChainComplex(tuple(labels), tuple(diffs))


def verify(c: ChainComplex) -> Violation | None:
    """First entry where ∂_n ∂_{n+1} fails to vanish, or None."""
    for n in range(1, c.degrees):
        prod = c.diff(n) @ c.diff(n + 1)
        for i in range(prod.rows):
            for j in range(prod.cols):
                if prod[i, j]:
                    return Violation(n, i, j, prod[i, j])
    return None


def tensor(c: ChainComplex, e: ChainComplex) -> ChainComplex:
    """Tensor product with the Koszul sign: ∂(a⊗b) = ∂a⊗b + (-1)^i a⊗∂b."""
    top = c.degrees + e.degrees
    blocks: list[list[tuple[int, int]]] = []
    labels = []
    for n in range(top + 1):
        pairs = [(i, n - i) for i in range(n + 1) if i <= c.degrees and n - i <= e.degrees]
        blocks.append(pairs)
        labels.append(tuple(
            product_name(a, b) for i, j in pairs for a in c.labels[i] for b in e.labels[j]
        ))

    def index(n: int) -> dict:
        idx, k = {}, 0
        for i, j in blocks[n]:
            for a in range(c.rank(i)):
                for b in range(e.rank(j)):
                    idx[(i, a, j, b)] = k
                    k += 1
        return idx

    indices = [index(n) for n in range(top + 1)]
    diffs = []
    for n in range(1, top + 1):
        m = [[0] * len(labels[n]) for _ in labels[n - 1]]
        src, dst = indices[n], indices[n - 1]
        for (i, a, j, b), col in src.items():
            if i >= 1:
                di = c.diff(i)
                for a2 in range(di.rows):
                    if di[a2, a]:
                        m[dst[(i - 1, a2, j, b)]][col] += di[a2, a]
            if j >= 1:
                dj = e.diff(j)
                sign = -1 if i % 2 else 1
                for b2 in range(dj.rows):
                    if dj[b2, b]:
                        m[dst[(i, a, j - 1, b2)]][col] += sign * dj[b2, b]
        diffs.append(IntMatrix.from_rows(m, len(labels[n])))
    return ChainComplex(tuple(labels), tuple(diffs))


def _block_diag(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    top = a.hstack(IntMatrix.zeros(a.rows, b.cols))
    bottom = IntMatrix.zeros(b.rows, a.cols).hstack(b)
    return top.vstack(bottom)


def direct_sum(c: ChainComplex, e: ChainComplex) -> ChainComplex:
    """Block-diagonal sum; labels get ``L_``/``R_`` prefixes only if they collide."""
    top = max(c.degrees, e.degrees)
    left = [c.labels[n] if n <= c.degrees else () for n in range(top + 1)]
    right = [e.labels[n] if n <= e.degrees else () for n in range(top + 1)]
    if any(set(x) & set(y) for x, y in zip(left, right)):
        left = [tuple("L_" + s for s in x) for x in left]
        right = [tuple("R_" + s for s in x) for x in right]
    labels = tuple(x + y for x, y in zip(left, right))
    diffs = tuple(_block_diag(c.diff(n), e.diff(n)) for n in range(1, top + 1))
    return ChainComplex(labels, diffs)


def dual(c: ChainComplex) -> ChainComplex:
    """Reverse the grading and transpose every differential."""
    labels = tuple(reversed(c.labels))
    diffs = tuple(dn.transpose() for dn in reversed(c.diffs))
    return ChainComplex(labels, diffs)


def change_ring(c: ChainComplex, d: int) -> ModChainComplex:
    """Reduce every differential mod d (extension of scalars to Z_d)."""
    if isinstance(d, bool) or not isinstance(d, int) or d < 2:
        raise BadModulus(d)
    return ModChainComplex(d, c.labels, tuple(reduce_mod(dn, d) for dn in c.diffs))
