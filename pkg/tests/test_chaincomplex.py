import itertools

import pytest

from cellcss.cellcomplex import builtin, tensor_product_1d
from cellcss.chaincomplex import (
    ChainComplex,
    change_ring,
    direct_sum,
    dual,
    from_cell_complex,
    tensor,
    verify,
)
from cellcss.errors import BadModulus, ShapeMismatch
from cellcss.homology import homology_z
from cellcss.intlinalg import IntMatrix, image_basis, kernel_basis, reduce_mod, smith_form

from test_intlinalg import RP2_D1, RP2_D2, TORUS_D1, TORUS_D2


def chain(name, p=None):
    return from_cell_complex(builtin(name, p))


def test_torus_matrices():
    c = chain("torus")
    assert c.diff(2).to_rows() == TORUS_D2
    assert c.diff(1).to_rows() == TORUS_D1
    assert c.labels == (("v1", "v2", "v3"), ("e1", "e2", "e3", "e4", "e5"), ("f1", "f2"))


def test_rp2_matrices():
    c = chain("rp2_halfsphere")
    assert c.diff(2).to_rows() == RP2_D2
    assert c.diff(1).to_rows() == RP2_D1


def test_polygon_torsion_matrices():
    c = chain("polygon_torsion", 3)
    assert c.diff(2).to_rows() == [[3], [3]]
    assert c.diff(1).to_rows() == [[-1, 1], [1, -1]]


def test_graph_gives_length_one_complex():
    c = chain("circle", 3)
    assert c.degrees == 1 and c.ranks == (3, 3)
    assert verify(c) is None


def test_verify_reports_violation():
    c = ChainComplex(
        (("a",), ("b",), ("c",)),
        (IntMatrix.from_rows([[1]]), IntMatrix.from_rows([[2]])),
    )
    v = verify(c)
    assert v.degree == 1 and v.value == 2


def test_shape_checked():
    with pytest.raises(ShapeMismatch):
        ChainComplex((("a",), ("b", "c")), (IntMatrix.zeros(1, 1),))


def test_tensor_unit():
    point = ChainComplex((("p",),), ())
    c = chain("torus")
    t = tensor(c, point)
    assert t.diffs == c.diffs
    assert t.labels[1][0] == "e1__p"


def test_tensor_lines_and_circles():
    line = chain("line", 1)
    assert tensor(line, line).ranks == (4, 4, 1)
    c3 = chain("circle", 3)
    t = tensor(c3, c3)
    assert t.ranks == (9, 18, 9)
    assert verify(t) is None


def one_dim_builtins():
    for n in (1, 2, 3):
        yield builtin("circle", n)
        yield builtin("line", n)


@pytest.mark.parametrize("pair", list(itertools.product(range(6), repeat=2)))
def test_cell_and_chain_tensors_agree(pair):
    xs = list(one_dim_builtins())
    x, y = xs[pair[0]], xs[pair[1]]
    cell = from_cell_complex(tensor_product_1d(x, y))
    alg = tensor(from_cell_complex(x), from_cell_complex(y))
    # our orderings coincide, so this holds entrywise; the lattice check is the portable one
    assert cell.ranks[: alg.degrees + 1] == alg.ranks[: cell.degrees + 1]
    for n in range(1, min(cell.degrees, alg.degrees) + 1):
        assert kernel_basis(cell.diff(n)) == kernel_basis(alg.diff(n))
        assert image_basis(cell.diff(n)) == image_basis(alg.diff(n))
    for n in range(min(cell.degrees, alg.degrees) + 1):
        a, b = homology_z(cell, n), homology_z(alg, n)
        assert (a.free_rank, a.invariant_factors) == (b.free_rank, b.invariant_factors)


def test_tensor_associative_on_ranks_and_factors():
    a, b, c = chain("line", 1), chain("circle", 2), chain("circle", 1)
    left = tensor(tensor(a, b), c)
    right = tensor(a, tensor(b, c))
    assert left.ranks == right.ranks
    for n in range(1, left.degrees + 1):
        assert smith_form(left.diff(n)).factors == smith_form(right.diff(n)).factors
    assert verify(left) is None and verify(right) is None


def test_length_four_tensor():
    t = tensor(chain("torus"), chain("rp2_halfsphere"))
    assert t.degrees == 4
    assert verify(t) is None


def test_direct_sum_blocks():
    t = chain("torus")
    s = direct_sum(t, t)
    assert s.diff(1).shape == (6, 10)
    d1 = s.diff(1)
    assert all(d1[i, j] == 0 for i in range(3) for j in range(5, 10))
    assert all(d1[i, j] == 0 for i in range(3, 6) for j in range(5))
    zero = ChainComplex(((),), ())
    assert direct_sum(t, zero).diffs == t.diffs


def test_dual():
    c = chain("torus")
    d = dual(c)
    assert dual(d) == c
    assert d.diff(1) == c.diff(2).transpose()
    assert d.diff(2) == c.diff(1).transpose()
    assert verify(d) is None
    line = chain("line", 1)
    assert dual(line).labels == (("e1",), ("v1", "v2"))


def test_dual_degree_one_homology_counts_x_logicals():
    d = dual(chain("torus"))
    assert homology_z(d, 1).free_rank == 2


def test_change_ring():
    c = chain("torus")
    m = change_ring(c, 2)
    assert m.diff(1).to_rows() == [[1, 1, 0, 0, 0], [1, 1, 0, 1, 1], [0, 0, 0, 1, 1]]
    assert m.diff(2).transpose().to_rows() == [[0, 0, 1, 1, 1], [0, 0, 1, 1, 1]]
    again = change_ring(ChainComplex(c.labels, tuple(x.lift() for x in m.diffs)), 2)
    assert again == m
    r = change_ring(chain("rp2_halfsphere"), 3)
    assert set(r.diff(2).entries) == {0, 1, 2}
    assert r.diff(2)[0, 3] == 2
    with pytest.raises(BadModulus):
        change_ring(c, 1)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_change_ring_commutes_with_sum_and_dual(d):
    a, b = chain("torus"), chain("rp2_halfsphere")
    assert change_ring(direct_sum(a, b), d).diffs == tuple(
        reduce_mod(x, d) for x in direct_sum(a, b).diffs)
    lhs = change_ring(dual(a), d)
    rhs = change_ring(a, d)
    assert lhs.diffs == tuple(x.transpose() for x in reversed(rhs.diffs))
