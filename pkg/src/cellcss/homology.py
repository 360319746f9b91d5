"""Integral homology, the induced logical space over Z_d, and a brute-force check.

Over Z the n-th homology is computed from a saturated kernel basis K of
∂_n: the image of ∂_{n+1} is rewritten in K-coordinates and the Smith form
of that coefficient matrix exposes the free rank and the invariant factors.
Passing to Z_d then only needs gcds, because for a cellular complex H_0 is
free and H_1 over Z_d is H_1 over Z tensored with Z_d.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd, prod

import numpy as np

from .chaincomplex import ChainComplex
from .errors import BadModulus, NonCellularComplex, TooLarge
from .intlinalg import (
    IntMatrix,
    hermite_form,
    image_basis,
    kernel_basis,
    smith_form,
    solve_in_lattice,
    unimodular_inverse,
)

__all__ = [
    "HomologyDecomposition",
    "LogicalSpace",
    "OracleResult",
    "homology_z",
    "h0_components",
    "logical_space",
    "homology_mod_oracle",
    "elementary_divisors",
    "DEFAULT_ORACLE_LIMIT",
]

DEFAULT_ORACLE_LIMIT = 10**7


@dataclass(frozen=True)
class HomologyDecomposition:
    degree: int
    free_rank: int
    invariant_factors: tuple[int, ...]
    representatives: IntMatrix

    @property
    def torsion_representatives(self) -> IntMatrix:
        k = self.free_rank
        return self.representatives.select_columns(range(k, self.representatives.cols))

    @property
    def free_representatives(self) -> IntMatrix:
        return self.representatives.select_columns(range(self.free_rank))

    def __str__(self) -> str:
        tors = ", ".join(map(str, self.invariant_factors)) or "none"
        return f"free rank {self.free_rank}; invariant factors: {tors}"


@dataclass(frozen=True)
class LogicalSpace:
    """H_1 over Z_d written as Z_d^k' plus the torsion summands Z_{d_i}."""

    modulus: int
    free_qudits: int
    torsion_dims: tuple[int, ...]

    @property
    def order(self) -> int:
        return self.modulus**self.free_qudits * prod(self.torsion_dims)

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return self.torsion_dims + (self.modulus,) * self.free_qudits

    @property
    def is_trivial(self) -> bool:
        return self.order == 1

    def __str__(self) -> str:
        tors = " + ".join(f"Z_{t}" for t in self.torsion_dims) or "none"
        return f"k' = {self.free_qudits} qudit(s) of dimension {self.modulus}; torsion: {tors}"


def _check_modulus(d) -> None:
    if isinstance(d, bool) or not isinstance(d, int) or d < 2:
        raise BadModulus(d)


def homology_z(c: ChainComplex, n: int) -> HomologyDecomposition:
    """H_n over Z; representatives list free generators first, then torsion."""
    if not 0 <= n <= c.degrees:
        raise ValueError(f"degree {n} outside 0..{c.degrees}")
    k = kernel_basis(c.diff(n))
    b = image_basis(c.diff(n + 1))
    y = solve_in_lattice(k, b)
    sf = smith_form(y)
    r = sf.rank
    # B v = K u^-1 s, so the columns of K u^-1 are adapted generators
    w = k @ unimodular_inverse(sf.u) if k.cols else k
    torsion_idx = [i for i in range(r) if sf.factors[i] > 1]
    free = w.select_columns(range(r, w.cols))
    if free.cols:
        h = hermite_form(free.transpose())
        free = IntMatrix.from_rows([h.row(i) for i in range(h.rows) if any(h.row(i))], w.rows).transpose()
    reps = free.hstack(w.select_columns(torsion_idx))
    return HomologyDecomposition(
        degree=n,
        free_rank=k.cols - r,
        invariant_factors=tuple(sf.factors[i] for i in torsion_idx),
        representatives=reps,
    )


def h0_components(c: ChainComplex) -> int:
    h = homology_z(c, 0)
    assert not h.invariant_factors, "torsion in degree 0 cannot come from a cell complex"
    return h.free_rank


def logical_space(c: ChainComplex, d: int) -> LogicalSpace:
    _check_modulus(d)
    if homology_z(c, 0).invariant_factors:
        raise NonCellularComplex(
            "H_0 has torsion, so H_1 over Z_d is not determined by H_1 over Z alone"
        )
    if c.degrees < 1:
        return LogicalSpace(d, 0, ())
    h1 = homology_z(c, 1)
    free = h1.free_rank
    tors = []
    for q in h1.invariant_factors:
        g = gcd(q, d)
        if g == d:
            free += 1
        elif g > 1:
            tors.append(g)
    return LogicalSpace(d, free, tuple(sorted(tors)))


# -- brute-force oracle --------------------------------------------------------

def _prime_factors(m: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= m:
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
        p += 1
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def elementary_divisors(invariant_factors) -> tuple[int, ...]:
    """Split cyclic orders into prime powers, sorted; trivial factors vanish."""
    out = []
    for q in invariant_factors:
        out.extend(p**e for p, e in _prime_factors(q).items())
    return tuple(sorted(out))


@dataclass(frozen=True)
class OracleResult:
    order: int
    elementary_divisors: tuple[int, ...]

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        by_prime: dict[int, list[int]] = {}
        for q in self.elementary_divisors:
            (p,) = _prime_factors(q)
            by_prime.setdefault(p, []).append(q)
        for qs in by_prime.values():
            qs.sort(reverse=True)
        length = max((len(qs) for qs in by_prime.values()), default=0)
        out = []
        for i in range(length):
            out.append(prod(qs[i] for qs in by_prime.values() if i < len(qs)))
        return tuple(reversed(out))


def _encode(vectors: np.ndarray, d: int) -> np.ndarray:
    weights = d ** np.arange(vectors.shape[1] - 1, -1, -1, dtype=np.int64)
    return vectors.astype(np.int64) @ weights


def _all_vectors(n: int, d: int, start: int, stop: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((stop - start, n), dtype=np.int64)
    for j in range(n - 1, -1, -1):
        out[:, j] = idx % d
        idx //= d
    return out


def _span(generators: np.ndarray, n: int, d: int) -> np.ndarray:
    """All Z_d-combinations of the given rows, as a (size, n) array."""
    group = np.zeros((1, n), dtype=np.int64)
    for g in generators:
        g = np.asarray(g, dtype=np.int64) % d
        if not g.any():
            continue
        shifted = (group[None, :, :] + np.arange(d)[:, None, None] * g[None, None, :]) % d
        shifted = shifted.reshape(-1, n)
        _, keep = np.unique(_encode(shifted, d), return_index=True)
        group = shifted[np.sort(keep)]
    return group


def homology_mod_oracle(
    c: ChainComplex, n: int, d: int, limit: int = DEFAULT_ORACLE_LIMIT, chunk: int = 1 << 20
) -> OracleResult:
    """H_n over Z_d by listing every chain; independent of the Smith form route.

    The p-primary part is read off from the counts |G[p^k]| of elements
    killed by p^k: each step up in k multiplies the count by p once per
    cyclic summand of order at least p^k.
    """
    _check_modulus(d)
    size = c.rank(n)
    required = d**size
    if required > limit:
        raise TooLarge(required, limit)
    dn = np.array(c.diff(n).to_rows(), dtype=np.int64).reshape(c.rank(n - 1), size)
    up = np.array(c.diff(n + 1).to_rows(), dtype=np.int64).reshape(size, c.rank(n + 1))

    kernel_parts = []
    for start in range(0, required, chunk):
        v = _all_vectors(size, d, start, min(required, start + chunk))
        image = (v @ dn.T) % d if dn.shape[0] else np.zeros((len(v), 0), dtype=np.int64)
        kernel_parts.append(v[~image.any(axis=1)])
    kernel = np.concatenate(kernel_parts) if kernel_parts else np.zeros((1, 0), dtype=np.int64)

    boundaries = _span(up.T, size, d)
    boundary_codes = np.sort(_encode(boundaries, d))
    order = len(kernel) // len(boundaries)

    divisors = []
    for p, top in _prime_factors(d).items():
        prev = 1
        for k in range(1, top + 1):
            killed = np.isin(_encode((kernel * p**k) % d, d), boundary_codes, assume_unique=False)
            count = int(killed.sum()) // len(boundaries)
            step = count // prev
            # step = p^(number of summands of order >= p^k)
            m = 0
            while step > 1:
                step //= p
                m += 1
            divisors.append((p, k, m))
            prev = count
    elementary = []
    for p, top in _prime_factors(d).items():
        at_least = {k: m for q, k, m in divisors if q == p}
        for k in range(1, top + 1):
            exact = at_least[k] - at_least.get(k + 1, 0)
            elementary.extend([p**k] * exact)
    return OracleResult(order=order, elementary_divisors=tuple(sorted(elementary)))
