"""Exact integer linear algebra.

Matrices hold Python ints, so there is no overflow anywhere.  The normal
forms here are the only place where row and column operations happen; the
rest of the package works with kernels, images and Smith forms.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

from .errors import BadModulus, NotInLattice, ShapeMismatch

__all__ = [
    "IntMatrix",
    "ModMatrix",
    "SmithForm",
    "hermite_form",
    "hermite_form_with_transform",
    "smith_form",
    "kernel_basis",
    "image_basis",
    "solve_in_lattice",
    "reduce_mod",
    "determinant",
    "rank",
    "rank_mod_prime",
    "unimodular_inverse",
    "RowLattice",
]


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix stored row-major."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ShapeMismatch("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows * self.cols:
            raise ShapeMismatch(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ShapeMismatch("ragged rows")
        return cls(len(rows), cols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> IntMatrix:
        return cls.from_rows([list(c) for c in columns], rows).transpose()

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def diag(cls, values: Sequence[int], rows: int | None = None, cols: int | None = None) -> IntMatrix:
        rows = len(values) if rows is None else rows
        cols = len(values) if cols is None else cols
        out = [[0] * cols for _ in range(rows)]
        for i, v in enumerate(values):
            out[i][i] = v
        return cls.from_rows(out, cols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple[int, ...]:
        return self.entries[j::self.cols] if self.cols else ()

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def transpose(self) -> IntMatrix:
        return IntMatrix(
            self.cols, self.rows,
            tuple(self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)),
        )

    T = property(transpose)

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        a = self.to_rows()
        bt = other.transpose().to_rows()
        return IntMatrix(
            self.rows, other.cols,
            tuple(sum(x * y for x, y in zip(r, c)) for r in a for c in bt),
        )

    def __neg__(self) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, tuple(-x for x in self.entries))

    def __add__(self, other: IntMatrix) -> IntMatrix:
        if self.shape != other.shape:
            raise ShapeMismatch("shape mismatch in addition")
        return IntMatrix(self.rows, self.cols, tuple(x + y for x, y in zip(self.entries, other.entries)))

    def scale(self, k: int) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, tuple(k * x for x in self.entries))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def hstack(self, other: IntMatrix) -> IntMatrix:
        if self.rows != other.rows:
            raise ShapeMismatch("hstack needs equal row counts")
        return IntMatrix.from_rows(
            [a + b for a, b in zip(self.to_rows(), other.to_rows())], self.cols + other.cols
        )

    def vstack(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.cols:
            raise ShapeMismatch("vstack needs equal column counts")
        return IntMatrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    def select_columns(self, idx: Iterable[int]) -> IntMatrix:
        idx = list(idx)
        return IntMatrix.from_rows([[r[j] for j in idx] for r in self.to_rows()], len(idx))

    def __str__(self) -> str:
        if not self.rows or not self.cols:
            return f"<{self.rows}x{self.cols} matrix>"
        width = max(len(str(x)) for x in self.entries)
        return "\n".join(" ".join(str(x).rjust(width) for x in r) for r in self.to_rows())


@dataclass(frozen=True)
class ModMatrix:
    """Matrix over Z_d with entries kept as residues in [0, d)."""

    modulus: int
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.modulus, int) or self.modulus < 2:
            raise BadModulus(self.modulus)
        if len(self.entries) != self.rows * self.cols:
            raise ShapeMismatch("entry count does not match shape")
        if any(not 0 <= e < self.modulus for e in self.entries):
            raise ValueError("ModMatrix entries must lie in [0, modulus)")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], modulus: int, cols: int | None = None) -> ModMatrix:
        if not isinstance(modulus, int) or modulus < 2:
            raise BadModulus(modulus)
        m = IntMatrix.from_rows(rows, cols)
        return cls(modulus, m.rows, m.cols, tuple(x % modulus for x in m.entries))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def to_rows(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple[int, ...]:
        return self.entries[j::self.cols] if self.cols else ()

    def lift(self) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, self.entries)

    def transpose(self) -> ModMatrix:
        t = self.lift().transpose()
        return ModMatrix(self.modulus, t.rows, t.cols, t.entries)

    T = property(transpose)

    def __matmul__(self, other: ModMatrix) -> ModMatrix:
        if self.modulus != other.modulus:
            raise ValueError("moduli differ")
        p = self.lift() @ other.lift()
        return reduce_mod(p, self.modulus)

    def apply(self, vector: Sequence[int]) -> tuple[int, ...]:
        if len(vector) != self.cols:
            raise ShapeMismatch(f"vector of length {len(vector)} for {self.cols} columns")
        d = self.modulus
        return tuple(sum(a * b for a, b in zip(self.row(i), vector)) % d for i in range(self.rows))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __str__(self) -> str:
        return str(self.lift())


@dataclass(frozen=True)
class SmithForm:
    """``u @ a @ v == s`` with ``u``, ``v`` unimodular and ``s`` diagonal."""

    u: IntMatrix
    s: IntMatrix
    v: IntMatrix
    factors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.factors)


def reduce_mod(a: IntMatrix, d: int) -> ModMatrix:
    """Entrywise nonnegative residues of ``a`` modulo ``d``."""
    if not isinstance(d, int) or isinstance(d, bool) or d < 2:
        raise BadModulus(d)
    return ModMatrix(d, a.rows, a.cols, tuple(x % d for x in a.entries))


# -- row operations on list-of-lists -----------------------------------------

def _swap(m, i, j):
    m[i], m[j] = m[j], m[i]


def _addmul(m, dst, src, k):
    # row dst += k * row src
    if k:
        rs = m[src]
        m[dst] = [x + k * y for x, y in zip(m[dst], rs)]


def _neg(m, i):
    m[i] = [-x for x in m[i]]


def hermite_form_with_transform(a: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form ``h`` and unimodular ``u`` with ``u @ a == h``.

    Zero rows of ``h`` sit at the bottom.  Pivots are positive and entries
    above a pivot lie in ``[0, pivot)``.
    """
    m, n = a.shape
    h = a.to_rows()
    u = IntMatrix.identity(m).to_rows()
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if h[i][c]]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(h[i][c]))
            if p != r:
                _swap(h, p, r)
                _swap(u, p, r)
            done = True
            for i in range(r + 1, m):
                if h[i][c]:
                    q = h[i][c] // h[r][c]
                    _addmul(h, i, r, -q)
                    _addmul(u, i, r, -q)
                    if h[i][c]:
                        done = False
            if done:
                break
        if not h[r][c]:
            continue
        if h[r][c] < 0:
            _neg(h, r)
            _neg(u, r)
        piv = h[r][c]
        for i in range(r):
            q = h[i][c] // piv
            _addmul(h, i, r, -q)
            _addmul(u, i, r, -q)
        r += 1
    return IntMatrix.from_rows(h, n), IntMatrix.from_rows(u, m)


def hermite_form(a: IntMatrix) -> IntMatrix:
    """Row-style Hermite normal form of ``a`` (same shape, same row lattice)."""
    return hermite_form_with_transform(a)[0]


def _nonzero_rows(h: IntMatrix) -> list[tuple[int, ...]]:
    return [h.row(i) for i in range(h.rows) if any(h.row(i))]


def rank(a: IntMatrix) -> int:
    return len(_nonzero_rows(hermite_form(a)))


def smith_form(a: IntMatrix) -> SmithForm:
    """Smith normal form with transforms.

    Pivoting always picks the smallest nonzero absolute value in the active
    block, which keeps intermediate entries small.
    """
    m, n = a.shape
    s = a.to_rows()
    u = IntMatrix.identity(m).to_rows()
    # v is tracked transposed so column ops become row ops
    vt = IntMatrix.identity(n).to_rows()

    def col_swap(i, j):
        for row in s:
            row[i], row[j] = row[j], row[i]
        _swap(vt, i, j)

    def col_addmul(dst, src, k):
        if k:
            for row in s:
                row[dst] += k * row[src]
            _addmul(vt, dst, src, k)

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = s[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        if i != t:
            _swap(s, i, t)
            _swap(u, i, t)
        if j != t:
            col_swap(j, t)
        clean = True
        p = s[t][t]
        for i in range(t + 1, m):
            if s[i][t]:
                q = s[i][t] // p
                _addmul(s, i, t, -q)
                _addmul(u, i, t, -q)
                if s[i][t]:
                    clean = False
        for j in range(t + 1, n):
            if s[t][j]:
                q = s[t][j] // p
                col_addmul(j, t, -q)
                if s[t][j]:
                    clean = False
        if not clean:
            continue
        bad = next(
            (i for i in range(t + 1, m) for j in range(t + 1, n) if s[i][j] % p), None
        )
        if bad is not None:
            _addmul(s, t, bad, 1)
            _addmul(u, t, bad, 1)
            continue
        if p < 0:
            _neg(s, t)
            _neg(u, t)
        t += 1
    factors = tuple(s[i][i] for i in range(min(m, n)) if s[i][i])
    return SmithForm(
        u=IntMatrix.from_rows(u, m),
        s=IntMatrix.from_rows(s, n),
        v=IntMatrix.from_rows(vt, n).transpose(),
        factors=factors,
    )


def _canonical_columns(rows: list[tuple[int, ...]], length: int) -> IntMatrix:
    """Column basis in canonical form: HNF of the generators taken as rows."""
    if not rows:
        return IntMatrix.zeros(length, 0)
    h = hermite_form(IntMatrix.from_rows(rows, length))
    basis = _nonzero_rows(h)
    if not basis:
        return IntMatrix.zeros(length, 0)
    return IntMatrix.from_rows(basis, length).transpose()


def kernel_basis(a: IntMatrix) -> IntMatrix:
    """Saturated basis of ``{x : a @ x == 0}`` as columns, Hermite-reduced."""
    h, u = hermite_form_with_transform(a.transpose())
    kernel_rows = [u.row(i) for i in range(h.rows) if not any(h.row(i))]
    return _canonical_columns(kernel_rows, a.cols)


def image_basis(a: IntMatrix) -> IntMatrix:
    """Basis of the column lattice of ``a`` as columns, Hermite-reduced."""
    return _canonical_columns([a.column(j) for j in range(a.cols)], a.rows)


def solve_in_lattice(basis: IntMatrix, target: IntMatrix) -> IntMatrix:
    """Integer ``y`` with ``basis @ y == target``.

    Raises :class:`NotInLattice` naming the first target column that is not
    an integer combination of the basis columns.  When the basis columns are
    dependent, the returned solution sets the free coordinates to zero.
    """
    if basis.rows != target.rows:
        raise ShapeMismatch("basis and target need the same number of rows")
    sf = smith_form(basis)
    ut = sf.u @ target
    k = basis.cols
    r = sf.rank
    z = [[0] * target.cols for _ in range(k)]
    for col in range(target.cols):
        for i in range(ut.rows):
            x = ut[i, col]
            if i < r:
                q, rem = divmod(x, sf.factors[i])
                if rem:
                    raise NotInLattice(col)
                z[i][col] = q
            elif x:
                raise NotInLattice(col)
    return sf.v @ IntMatrix.from_rows(z, target.cols)


def unimodular_inverse(u: IntMatrix) -> IntMatrix:
    return solve_in_lattice(u, IntMatrix.identity(u.rows))


def determinant(a: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = a.rows
    if n != a.cols:
        raise ShapeMismatch("determinant of a non-square matrix")
    if n == 0:
        return 1
    m = a.to_rows()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def rank_mod_prime(a: IntMatrix | ModMatrix, p: int) -> int:
    """Rank over the field Z_p (p must be prime)."""
    rows = [[x % p for x in r] for r in a.to_rows()]
    r = 0
    ncols = a.cols
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


class RowLattice:
    """Membership oracle for the integer row span of a set of generators.

    Built from the Hermite form, so each query is a single triangular sweep.
    """

    def __init__(self, generators: IntMatrix):
        self.dim = generators.cols
        h = hermite_form(generators)
        self._rows = _nonzero_rows(h)
        self._pivots = [next(j for j, x in enumerate(r) if x) for r in self._rows]

    def __contains__(self, vector: Sequence[int]) -> bool:
        v = list(vector)
        if len(v) != self.dim:
            raise ShapeMismatch("vector length does not match lattice dimension")
        for row, c in zip(self._rows, self._pivots):
            if any(v[:c]):
                return False
            q, rem = divmod(v[c], row[c])
            if rem:
                return False
            if q:
                v = [x - q * y for x, y in zip(v, row)]
        return not any(v)

    @classmethod
    def modular(cls, generators: IntMatrix, d: int) -> RowLattice:
        """Lattice of integer lifts of the Z_d-span: ``rows + d * Z^n``."""
        if d < 2:
            raise BadModulus(d)
        return cls(generators.vstack(IntMatrix.identity(generators.cols).scale(d)))


def content(values: Iterable[int]) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g
