"""Qudit CSS codes read off a chain complex, plus classical-code helpers.

Qudits sit on edges.  X-checks are vertices (rows of ∂_1) and Z-checks are
faces (rows of ∂_2 transposed); everything is reduced mod d.
"""
from __future__ import annotations

import enum
import itertools
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import gcd, prod
from typing import Iterable, Sequence

import numpy as np

from .chaincomplex import ChainComplex
from .errors import (
    BadModulus,
    CssInvariantError,
    LengthMismatch,
    ModulusMismatch,
    TooLarge,
    TooShort,
    TypeMismatch,
)
from .intlinalg import ModMatrix, RowLattice, rank_mod_prime, reduce_mod, smith_form

__all__ = [
    "CssCode",
    "PauliVector",
    "Syndrome",
    "ClassicalCode",
    "OperatorClass",
    "Commutation",
    "DistanceResult",
    "LdpcProfile",
    "css_from_chain",
    "commutes",
    "syndrome_x",
    "syndrome_z",
    "combined_syndrome",
    "classify",
    "distance_z",
    "distance_x",
    "logical_group_order",
    "ldpc_profile",
    "classical_syndrome_table",
    "classical_metrics",
    "render_stabilizers",
    "render_operator",
]


@dataclass(frozen=True)
class PauliVector:
    pauli_type: str
    exponents: tuple[int, ...]
    modulus: int

    def __post_init__(self):
        if self.pauli_type not in ("X", "Z"):
            raise TypeMismatch(f"pauli_type must be 'X' or 'Z', got {self.pauli_type!r}")
        if isinstance(self.modulus, bool) or not isinstance(self.modulus, int) or self.modulus < 2:
            raise BadModulus(self.modulus)
        object.__setattr__(self, "exponents", tuple(int(e) % self.modulus for e in self.exponents))

    @classmethod
    def z(cls, exponents: Iterable[int], d: int) -> PauliVector:
        return cls("Z", tuple(exponents), d)

    @classmethod
    def x(cls, exponents: Iterable[int], d: int) -> PauliVector:
        return cls("X", tuple(exponents), d)

    def __len__(self) -> int:
        return len(self.exponents)

    @property
    def weight(self) -> int:
        return sum(1 for e in self.exponents if e)

    def __add__(self, other: PauliVector) -> PauliVector:
        _same_shape(self, other)
        if self.pauli_type != other.pauli_type:
            raise TypeMismatch("cannot add X-type and Z-type exponent vectors")
        return PauliVector(self.pauli_type, tuple(a + b for a, b in zip(self.exponents, other.exponents)), self.modulus)


@dataclass(frozen=True)
class Syndrome:
    values: tuple[int, ...]
    modulus: int

    def __bool__(self) -> bool:
        return any(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __str__(self) -> str:
        return "(" + ", ".join(map(str, self.values)) + ")"


@dataclass(frozen=True)
class CssCode:
    modulus: int
    p_x: ModMatrix
    p_z: ModMatrix
    qudit_labels: tuple[str, ...]
    x_check_labels: tuple[str, ...]
    z_check_labels: tuple[str, ...]
    truncated_degrees: int = 0

    def __post_init__(self):
        for m in (self.p_x, self.p_z):
            if m.modulus != self.modulus:
                raise ModulusMismatch("parity matrices must share the code's modulus")
        if self.p_x.cols != self.p_z.cols:
            raise LengthMismatch("P_X and P_Z must have the same number of columns")
        if not (self.p_x @ self.p_z.transpose()).is_zero():
            raise CssInvariantError("P_X P_Z^T is not zero mod d; the checks do not commute")

    @property
    def n_physical(self) -> int:
        return self.p_x.cols


def css_from_chain(c: ChainComplex, d: int) -> CssCode:
    """P_X = ∂_1 mod d and P_Z = ∂_2^T mod d; degrees above 2 are cut off."""
    if isinstance(d, bool) or not isinstance(d, int) or d < 2:
        raise BadModulus(d)
    if c.degrees < 2:
        raise TooShort(f"a CSS code needs degrees 0..2, this complex stops at {c.degrees}")
    extra = c.degrees - 2
    if extra:
        warnings.warn(f"truncating chain complex: degrees 3..{c.degrees} ignored", stacklevel=2)
    return CssCode(
        modulus=d,
        p_x=reduce_mod(c.diff(1), d),
        p_z=reduce_mod(c.diff(2).transpose(), d),
        qudit_labels=c.labels[1],
        x_check_labels=c.labels[0],
        z_check_labels=c.labels[2],
        truncated_degrees=extra,
    )


# -- commutation and syndromes ---------------------------------------------

@dataclass(frozen=True)
class Commutation:
    commutes: bool
    phase: int

    def __bool__(self) -> bool:
        return self.commutes


def _same_shape(a: PauliVector, b: PauliVector) -> None:
    if a.modulus != b.modulus:
        raise ModulusMismatch(f"moduli {a.modulus} and {b.modulus} differ")
    if len(a) != len(b):
        raise LengthMismatch(f"lengths {len(a)} and {len(b)} differ")


def commutes(z: PauliVector, x: PauliVector) -> Commutation:
    """Z(z) X(x) = ω^phase X(x) Z(z) with phase = <z, x> mod d."""
    _same_shape(z, x)
    if z.pauli_type != "Z" or x.pauli_type != "X":
        raise TypeMismatch("commutes expects a Z-type and an X-type operator, in that order")
    phase = sum(a * b for a, b in zip(z.exponents, x.exponents)) % z.modulus
    return Commutation(phase == 0, phase)


def _check_error(code: CssCode, op: PauliVector, kind: str) -> None:
    if op.pauli_type != kind:
        raise TypeMismatch(f"expected a {kind}-type operator, got {op.pauli_type}-type")
    if op.modulus != code.modulus:
        raise ModulusMismatch(f"operator is mod {op.modulus}, code is mod {code.modulus}")
    if len(op) != code.n_physical:
        raise LengthMismatch(f"operator has length {len(op)}, code has {code.n_physical} qudits")


def syndrome_x(code: CssCode, z_error: PauliVector) -> Syndrome:
    """Outcomes of the X-checks on a Z-type error."""
    _check_error(code, z_error, "Z")
    return Syndrome(code.p_x.apply(z_error.exponents), code.modulus)


def syndrome_z(code: CssCode, x_error: PauliVector) -> Syndrome:
    """Outcomes of the Z-checks on an X-type error."""
    _check_error(code, x_error, "X")
    return Syndrome(code.p_z.apply(x_error.exponents), code.modulus)


def _distinct_rows(m: ModMatrix) -> list[int]:
    seen, keep = set(), []
    for i in range(m.rows):
        r = m.row(i)
        if r not in seen:
            seen.add(r)
            keep.append(i)
    return keep


def combined_syndrome(code: CssCode, x_error: PauliVector, z_error: PauliVector) -> Syndrome:
    """Z-check outcomes followed by X-check outcomes.

    Checks whose rows repeat an earlier row exactly measure the same
    operator, so only the first copy is reported.
    """
    sz = syndrome_z(code, x_error).values
    sx = syndrome_x(code, z_error).values
    values = tuple(sz[i] for i in _distinct_rows(code.p_z)) + tuple(sx[i] for i in _distinct_rows(code.p_x))
    return Syndrome(values, code.modulus)


# -- classification and distance -----------------------------------------------

class OperatorClass(str, enum.Enum):
    DETECTABLE = "detectable-error"
    STABILIZER = "stabilizer"
    LOGICAL = "logical"

    def __str__(self) -> str:
        return self.value


def _roles(code: CssCode, kind: str) -> tuple[ModMatrix, ModMatrix]:
    """(matrix whose kernel holds undetectable errors, matrix whose rows are stabilizers)."""
    return (code.p_x, code.p_z) if kind == "Z" else (code.p_z, code.p_x)


def classify(code: CssCode, op: PauliVector) -> OperatorClass:
    _check_error(code, op, op.pauli_type)
    checks, gens = _roles(code, op.pauli_type)
    if any(checks.apply(op.exponents)):
        return OperatorClass.DETECTABLE
    if op.exponents in RowLattice.modular(gens.lift(), code.modulus):
        return OperatorClass.STABILIZER
    return OperatorClass.LOGICAL


def logical_group_order(code: CssCode, kind: str = "Z") -> int:
    """|ker(checks) / rowspan(gens)| over Z_d, from two Smith forms."""
    checks, gens = _roles(code, kind)
    d = code.modulus
    s_checks = smith_form(checks.lift()).factors
    kernel = prod(gcd(s, d) for s in s_checks) * d ** (checks.cols - len(s_checks))
    span = prod(d // gcd(s, d) for s in smith_form(gens.lift()).factors)
    return kernel // span


@dataclass(frozen=True)
class DistanceResult:
    """Exactly one of: a distance, a strict lower bound, or no logicals at all."""

    value: int | None = None
    lower_bound: int | None = None
    trivial: bool = False

    def __str__(self) -> str:
        if self.trivial:
            return "no logical operators"
        if self.value is not None:
            return str(self.value)
        return f"> {self.lower_bound}"

    def to_json(self):
        if self.trivial:
            return {"trivial": True}
        if self.value is not None:
            return {"value": self.value}
        return {"greater_than": self.lower_bound}


def _logical_in_supports(checks_rows, gens_rows, d: int, supports: list[tuple[int, ...]]) -> bool:
    checks = np.array(checks_rows, dtype=np.int64).reshape(len(checks_rows), -1)
    n = checks.shape[1]
    lattice = RowLattice.modular(
        ModMatrix.from_rows(gens_rows, d, cols=n).lift(), d
    )
    if not supports:
        return False
    w = len(supports[0])
    combos = np.array(list(itertools.product(range(1, d), repeat=w)), dtype=np.int64).reshape(-1, w)
    for support in supports:
        cols = checks[:, list(support)]
        synd = (combos @ cols.T) % d if checks.shape[0] else np.zeros((len(combos), 0), dtype=np.int64)
        for row in combos[~synd.any(axis=1)]:
            v = [0] * n
            for j, e in zip(support, row):
                v[j] = int(e)
            if v not in lattice:
                return True
    return False


def _distance(code: CssCode, kind: str, max_weight: int | None, jobs: int) -> DistanceResult:
    if logical_group_order(code, kind) == 1:
        return DistanceResult(trivial=True)
    checks, gens = _roles(code, kind)
    n, d = code.n_physical, code.modulus
    top = n if max_weight is None else min(max_weight, n)
    checks_rows, gens_rows = checks.to_rows(), gens.to_rows()
    pool = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        for w in range(1, top + 1):
            supports = list(itertools.combinations(range(n), w))
            if pool is None:
                found = _logical_in_supports(checks_rows, gens_rows, d, supports)
            else:
                size = max(1, -(-len(supports) // (4 * jobs)))
                chunks = [supports[i:i + size] for i in range(0, len(supports), size)]
                found = any(pool.map(
                    _logical_in_supports,
                    *zip(*[(checks_rows, gens_rows, d, ch) for ch in chunks]),
                ))
            if found:
                return DistanceResult(value=w)
    finally:
        if pool is not None:
            pool.shutdown()
    return DistanceResult(lower_bound=top)


def distance_z(code: CssCode, max_weight: int | None = None, jobs: int = 1) -> DistanceResult:
    """Smallest number of qudits touched by a logical Z-type operator."""
    return _distance(code, "Z", max_weight, jobs)


def distance_x(code: CssCode, max_weight: int | None = None, jobs: int = 1) -> DistanceResult:
    """Smallest number of qudits touched by a logical X-type operator."""
    return _distance(code, "X", max_weight, jobs)


# -- check weights -----------------------------------------------------------

@dataclass(frozen=True)
class MatrixWeights:
    row_weights: tuple[int, ...]
    column_weights: tuple[int, ...]
    degenerate_rows: tuple[int, ...] = field(default=())

    @property
    def max_row(self) -> int:
        return max(self.row_weights, default=0)

    @property
    def max_column(self) -> int:
        return max(self.column_weights, default=0)

    @property
    def mean_row(self) -> float:
        return sum(self.row_weights) / len(self.row_weights) if self.row_weights else 0.0

    @property
    def mean_column(self) -> float:
        return sum(self.column_weights) / len(self.column_weights) if self.column_weights else 0.0


@dataclass(frozen=True)
class LdpcProfile:
    p_x: MatrixWeights
    p_z: MatrixWeights


def _weights(m: ModMatrix) -> MatrixWeights:
    rows = tuple(sum(1 for x in m.row(i) if x) for i in range(m.rows))
    cols = tuple(sum(1 for x in m.column(j) if x) for j in range(m.cols))
    return MatrixWeights(rows, cols, tuple(i for i, w in enumerate(rows) if w == 0))


def ldpc_profile(code: CssCode) -> LdpcProfile:
    return LdpcProfile(_weights(code.p_x), _weights(code.p_z))


# -- rendering ---------------------------------------------------------------

def _factor(letter: str, e: int, d: int) -> str:
    if e > d / 2:
        e -= d
    if e == 0:
        return "1"
    if e == 1:
        return letter
    return f"{letter}^{e}"


def render_operator(letter: str, exponents: Sequence[int], d: int) -> str:
    return " ⊗ ".join(_factor(letter, e % d, d) for e in exponents)


def render_stabilizers(code: CssCode) -> list[str]:
    """One line per distinct Z generator, then per distinct X generator."""
    d = code.modulus
    lines = [render_operator("Z", code.p_z.row(i), d) for i in _distinct_rows(code.p_z)]
    lines += [render_operator("X", code.p_x.row(i), d) for i in _distinct_rows(code.p_x)]
    return lines


# -- classical codes -----------------------------------------------------------

CLASSICAL_LIMIT = 20


@dataclass(frozen=True)
class ClassicalCode:
    parity: ModMatrix

    @property
    def n(self) -> int:
        return self.parity.cols


def _binary_words(cc: ClassicalCode):
    if cc.parity.modulus != 2:
        raise ModulusMismatch("classical code utilities work over Z_2")
    n = cc.n
    if n > CLASSICAL_LIMIT:
        raise TooLarge(2**n, 2**CLASSICAL_LIMIT)
    return itertools.product((0, 1), repeat=n)


def classical_syndrome_table(cc: ClassicalCode) -> dict[tuple[int, ...], list[tuple[int, ...]]]:
    """Every word grouped by its syndrome; groups sorted by syndrome."""
    groups: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for word in _binary_words(cc):
        groups.setdefault(cc.parity.apply(word), []).append(word)
    return dict(sorted(groups.items()))


def classical_metrics(cc: ClassicalCode) -> tuple[int, int, int | None]:
    """(n, k, distance); distance is None when the code has no nonzero word."""
    words = _binary_words(cc)
    n = cc.n
    k = n - rank_mod_prime(cc.parity, 2)
    weights = [sum(w) for w in words if any(w) and not any(cc.parity.apply(w))]
    return n, k, min(weights, default=None)
