import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cellcss.cellcomplex import BUILTINS, CellComplex, builtin
from cellcss.chaincomplex import ChainComplex, from_cell_complex, tensor
from cellcss.csscode import (
    ClassicalCode,
    CssCode,
    OperatorClass,
    PauliVector,
    classical_metrics,
    classical_syndrome_table,
    classify,
    combined_syndrome,
    commutes,
    css_from_chain,
    distance_x,
    distance_z,
    ldpc_profile,
    logical_group_order,
    render_stabilizers,
    syndrome_x,
    syndrome_z,
)
from cellcss.errors import (
    CssInvariantError,
    LengthMismatch,
    ModulusMismatch,
    TooLarge,
    TooShort,
    TypeMismatch,
)
from cellcss.homology import logical_space
from cellcss.intlinalg import IntMatrix, ModMatrix

from oracles import accumulated_phase, css_logical_min_weight, kernel_mod, subgroup

HAMMING = [[1, 1, 0, 1, 1, 0, 0], [1, 0, 1, 1, 0, 1, 0], [0, 1, 1, 1, 0, 0, 1]]

TORIC_TABLE = [
    "1 ⊗ 1 ⊗ Z ⊗ Z ⊗ Z",
    "X ⊗ X ⊗ 1 ⊗ 1 ⊗ 1",
    "X ⊗ X ⊗ 1 ⊗ X ⊗ X",
    "1 ⊗ 1 ⊗ 1 ⊗ X ⊗ X",
]
RP2_TABLE = [
    "Z ⊗ Z ⊗ 1 ⊗ 1 ⊗ 1 ⊗ 1",
    "1 ⊗ 1 ⊗ Z ⊗ Z ⊗ 1 ⊗ 1",
    "1 ⊗ 1 ⊗ 1 ⊗ 1 ⊗ Z ⊗ Z",
    "Z^-1 ⊗ Z ⊗ Z^-1 ⊗ Z ⊗ Z ⊗ Z^-1",
    "X^-1 ⊗ X ⊗ 1 ⊗ 1 ⊗ X^-1 ⊗ X",
    "X ⊗ X^-1 ⊗ X^-1 ⊗ X ⊗ 1 ⊗ 1",
    "1 ⊗ 1 ⊗ X ⊗ X^-1 ⊗ X ⊗ X^-1",
]


def code(name, d, p=None):
    return css_from_chain(from_cell_complex(builtin(name, p)), d)


def surface_builtins():
    for name, (_, minimum) in BUILTINS.items():
        x = builtin(name, minimum)
        if x.faces:
            yield name, minimum


def Z(v, d):
    return PauliVector.z(v, d)


def X(v, d):
    return PauliVector.x(v, d)


# -- construction --------------------------------------------------------------

def test_toric_matrices():
    c = code("torus", 2)
    assert c.p_z.to_rows() == [[0, 0, 1, 1, 1], [0, 0, 1, 1, 1]]
    assert c.p_x.to_rows() == [[1, 1, 0, 0, 0], [1, 1, 0, 1, 1], [0, 0, 0, 1, 1]]
    assert c.qudit_labels == ("e1", "e2", "e3", "e4", "e5")
    assert c.n_physical == 5


def test_too_short_and_invariant():
    with pytest.raises(TooShort):
        css_from_chain(from_cell_complex(builtin("circle", 3)), 2)
    bad = ChainComplex(
        (("a",), ("b",), ("c",)),
        (IntMatrix.from_rows([[1]]), IntMatrix.from_rows([[1]])),
    )
    with pytest.raises(CssInvariantError):
        css_from_chain(bad, 3)


def test_truncation_is_reported():
    t = tensor(from_cell_complex(builtin("circle", 2)), from_cell_complex(builtin("torus")))
    with pytest.warns(UserWarning, match="truncating"):
        c = css_from_chain(t, 2)
    assert c.truncated_degrees == 1


# -- commutation ---------------------------------------------------------------

def test_commutes_examples():
    assert commutes(Z([1, 2], 3), X([2, 2], 3)).commutes
    assert commutes(Z([1, 2], 3), X([2, 2], 3)).phase == 0
    r = commutes(Z([1], 2), X([1], 2))
    assert not r.commutes and r.phase == 1
    assert commutes(Z([4, 1, 3], 5), X([0, 0, 0], 5))


def test_commutes_errors():
    with pytest.raises(LengthMismatch):
        commutes(Z([1], 2), X([1, 0], 2))
    with pytest.raises(ModulusMismatch):
        commutes(Z([1], 2), X([1], 3))
    with pytest.raises(TypeMismatch):
        commutes(X([1], 2), Z([1], 2))


@given(st.integers(2, 9).flatmap(lambda d: st.integers(1, 6).flatmap(lambda n: st.tuples(
    st.just(d),
    st.lists(st.integers(0, d - 1), min_size=n, max_size=n),
    st.lists(st.integers(0, d - 1), min_size=n, max_size=n)))))
def test_commutes_matches_clock_shift_matrices(data):
    d, z, x = data
    r = commutes(Z(z, d), X(x, d))
    assert r.phase == accumulated_phase(z, x, d)


@pytest.mark.parametrize("d", [2, 3, 4, 5, 6])
@pytest.mark.parametrize("name,p", list(surface_builtins()))
def test_generators_commute(name, p, d):
    c = code(name, d, p)
    for i in range(c.p_z.rows):
        for j in range(c.p_x.rows):
            assert commutes(Z(c.p_z.row(i), d), X(c.p_x.row(j), d))


# -- syndromes -----------------------------------------------------------------

@pytest.mark.parametrize("d,expected", [(3, (2, 2, 2)), (5, (4, 4, 2)), (7, (6, 6, 2))])
def test_rp2_syndrome(d, expected):
    s = syndrome_x(code("rp2_halfsphere", d), Z([1, 0, 2, 0, 0, 0], d))
    assert s.values == expected


def test_toric_syndromes():
    c = code("torus", 2)
    assert syndrome_x(c, Z([1, 0, 0, 0, 0], 2)).values == (1, 1, 0)
    assert syndrome_z(c, X([0, 0, 1, 0, 0], 2)).values == (1, 1)
    assert not syndrome_x(c, Z([0] * 5, 2))
    assert combined_syndrome(c, X([0] * 5, 2), Z([1, 0, 0, 0, 0], 2)).values == (0, 1, 1, 0)


def test_combined_syndrome_zero_and_logical():
    c = code("rp2_halfsphere", 2)
    s = combined_syndrome(c, X([0] * 6, 2), Z([0] * 6, 2))
    assert s.values == (0,) * 7
    s = combined_syndrome(c, X([0] * 6, 2), Z([0, 1, 0, 1, 0, 1], 2))
    assert not s


def test_syndrome_errors():
    c = code("torus", 2)
    with pytest.raises(TypeMismatch):
        syndrome_x(c, X([1, 0, 0, 0, 0], 2))
    with pytest.raises(LengthMismatch):
        syndrome_z(c, X([1, 0], 2))
    with pytest.raises(ModulusMismatch):
        syndrome_z(c, X([1, 0, 0, 0, 0], 3))


def x_syndrome_lattice() -> CellComplex:
    """Two rows of four vertices with three square plaquettes between them."""
    top = [f"v{i}" for i in range(1, 5)]
    bottom = [f"v{i}" for i in range(5, 9)]
    edges = [(f"h{i}", top[i - 1], top[i]) for i in range(1, 4)]
    edges += [(f"b{i}", bottom[i - 1], bottom[i]) for i in range(1, 4)]
    edges += [(f"u{i}", top[i - 1], bottom[i - 1]) for i in range(1, 5)]
    faces = [(f"f{i}", [f"h{i}", f"u{i + 1}", f"-b{i}", f"-u{i}"]) for i in range(1, 4)]
    return CellComplex.build(top + bottom, edges, faces)


def test_x_errors_on_internal_edges():
    x = x_syndrome_lattice()
    c = css_from_chain(from_cell_complex(x), 2)
    err = [1 if q in ("u2", "u3") else 0 for q in c.qudit_labels]
    s = syndrome_z(c, X(err, 2))
    assert dict(zip(c.z_check_labels, s.values)) == {"f1": 1, "f2": 0, "f3": 1}


@given(st.integers(2, 6).flatmap(lambda d: st.tuples(
    st.just(d),
    st.lists(st.integers(0, d - 1), min_size=6, max_size=6),
    st.lists(st.integers(0, d - 1), min_size=6, max_size=6))))
def test_syndrome_linearity(data):
    d, a, b = data
    c = code("rp2_halfsphere", d)
    sa, sb = syndrome_x(c, Z(a, d)), syndrome_x(c, Z(b, d))
    sab = syndrome_x(c, Z(a, d) + Z(b, d))
    assert sab.values == tuple((x + y) % d for x, y in zip(sa.values, sb.values))


# -- classification ------------------------------------------------------------

def test_classify_toric():
    c = code("torus", 2)
    assert classify(c, Z([0, 0, 1, 1, 1], 2)) is OperatorClass.STABILIZER
    assert classify(c, Z([0, 0, 1, 0, 0], 2)) is OperatorClass.LOGICAL
    assert classify(c, Z([1, 0, 0, 0, 0], 2)) is OperatorClass.DETECTABLE
    assert classify(c, Z([0] * 5, 2)) is OperatorClass.STABILIZER
    assert str(OperatorClass.DETECTABLE) == "detectable-error"


@pytest.mark.parametrize("d", [2, 3, 4])
@pytest.mark.parametrize("name,p", [("torus", None), ("rp2_halfsphere", None), ("klein", None),
                                    ("polygon_torsion", 4)])
def test_classify_partitions_consistently(name, p, d):
    c = code(name, d, p)
    n = c.n_physical
    if d**n > 5000:
        pytest.skip("too many operators")
    from itertools import product
    stab = subgroup(c.p_z.to_rows(), n, d)
    kernel = set(kernel_mod(c.p_x.to_rows(), n, d))
    for v in product(range(d), repeat=n):
        kind = classify(c, Z(v, d))
        syn = syndrome_x(c, Z(v, d))
        if kind is OperatorClass.DETECTABLE:
            assert syn and v not in kernel
        elif kind is OperatorClass.STABILIZER:
            assert not syn and v in stab
        else:
            assert not syn and v in kernel and v not in stab


# -- distance ------------------------------------------------------------------

def test_distance_examples():
    c = code("torus", 2)
    assert distance_z(c).value == 1
    r = code("rp2_halfsphere", 2)
    assert distance_z(r).value == 3
    assert distance_x(r).value == 2
    triv = code("rp2_halfsphere", 3)
    assert distance_z(triv).trivial and str(distance_z(triv)) == "no logical operators"
    assert distance_x(triv).trivial


def test_distance_bound():
    r = code("rp2_halfsphere", 2)
    res = distance_z(r, max_weight=2)
    assert res.value is None and res.lower_bound == 2
    assert str(res) == "> 2"


def test_distance_parallel_matches_serial():
    r = code("klein", 4)
    assert distance_z(r, jobs=2) == distance_z(r)
    assert distance_x(code("rp2_halfsphere", 2), jobs=3).value == 2


@pytest.mark.parametrize("d", [2, 3, 4])
@pytest.mark.parametrize("name,p", list(surface_builtins()))
def test_distance_matches_coset_oracle(name, p, d):
    c = code(name, d, p)
    n = c.n_physical
    if d**n > 10**5:
        pytest.skip("oracle enumeration too large")
    for kind, fn in (("Z", distance_z), ("X", distance_x)):
        checks, gens = (c.p_x, c.p_z) if kind == "Z" else (c.p_z, c.p_x)
        weight, cosets = css_logical_min_weight(checks.to_rows(), gens.to_rows(), n, d)
        res = fn(c)
        assert logical_group_order(c, kind) == cosets
        if weight is None:
            assert res.trivial
        else:
            assert res.value == weight


@pytest.mark.parametrize("d", [2, 3, 4, 6])
@pytest.mark.parametrize("name,p", list(surface_builtins()))
def test_coset_count_matches_logical_space(name, p, d):
    c = code(name, d, p)
    ls = logical_space(from_cell_complex(builtin(name, p)), d)
    assert logical_group_order(c, "Z") == ls.order
    assert logical_group_order(c, "X") == ls.order


# -- weights and rendering -------------------------------------------------------

def test_ldpc_profile():
    prof = ldpc_profile(code("torus", 2))
    assert prof.p_x.row_weights == (2, 4, 2)
    assert prof.p_x.column_weights == (2, 2, 0, 2, 2)
    assert prof.p_x.max_row == 4
    assert ldpc_profile(code("rp2_halfsphere", 3)).p_z.row_weights == (2, 2, 2, 6)
    zero = CssCode(2, ModMatrix.from_rows([[0, 0]], 2), ModMatrix.from_rows([[1, 1]], 2), ("a", "b"), ("x",), ("z",))
    assert ldpc_profile(zero).p_x.degenerate_rows == (0,)


def test_render_tables():
    assert render_stabilizers(code("torus", 2)) == TORIC_TABLE
    for d in (3, 5, 7):
        assert render_stabilizers(code("rp2_halfsphere", d)) == RP2_TABLE


def test_render_exponents():
    from cellcss.csscode import render_operator
    assert render_operator("Z", [0, 1, 2, 3], 4) == "1 ⊗ Z ⊗ Z^2 ⊗ Z^-1"
    assert render_operator("X", [0, 0], 3) == "1 ⊗ 1"
    assert render_operator("X", [3, 4], 6) == "X^3 ⊗ X^-2"


# -- classical codes -------------------------------------------------------------

def test_repetition_table():
    cc = ClassicalCode(ModMatrix.from_rows([[1, 1, 0], [1, 0, 1]], 2))
    table = classical_syndrome_table(cc)
    assert table == {
        (0, 0): [(0, 0, 0), (1, 1, 1)],
        (0, 1): [(0, 0, 1), (1, 1, 0)],
        (1, 0): [(0, 1, 0), (1, 0, 1)],
        (1, 1): [(0, 1, 1), (1, 0, 0)],
    }
    assert classical_metrics(cc) == (3, 1, 3)


def test_one_bit_code():
    cc = ClassicalCode(ModMatrix.from_rows([[1]], 2))
    assert classical_syndrome_table(cc) == {(0,): [(0,)], (1,): [(1,)]}


def test_hamming():
    p = ModMatrix.from_rows(HAMMING, 2)
    cc = ClassicalCode(p)
    assert p.apply((1, 1, 1, 0, 0, 0, 0)) == (0, 0, 0)
    singles = [p.apply(tuple(int(i == j) for i in range(7))) for j in range(7)]
    assert len(set(singles)) == 7
    assert singles == [p.column(j) for j in range(7)]
    assert classical_metrics(cc) == (7, 4, 3)


def test_classical_edge_cases():
    assert classical_metrics(ClassicalCode(ModMatrix.from_rows([[0, 0, 0]], 2))) == (3, 3, 1)
    assert classical_metrics(ClassicalCode(ModMatrix.from_rows([[1, 0], [0, 1]], 2))) == (2, 0, None)
    with pytest.raises(TooLarge):
        classical_metrics(ClassicalCode(ModMatrix.from_rows([[1] * 21], 2)))
    with pytest.raises(ModulusMismatch):
        classical_syndrome_table(ClassicalCode(ModMatrix.from_rows([[1]], 3)))


def test_random_classical_distance_vs_rank():
    rng = random.Random(5)
    for _ in range(10):
        rows = [[rng.randint(0, 1) for _ in range(6)] for _ in range(3)]
        n, k, dist = classical_metrics(ClassicalCode(ModMatrix.from_rows(rows, 2)))
        words = kernel_mod(rows, 6, 2)
        assert len(words) == 2**k
        nonzero = [sum(w) for w in words if any(w)]
        assert dist == (min(nonzero) if nonzero else None)
