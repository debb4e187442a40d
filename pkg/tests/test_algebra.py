import pytest
import sympy
from hypothesis import given, strategies as st
from sympy.matrices.normalforms import smith_normal_form

from khspan.algebra import BigradedGroups, DifferentialError, SparseComplex, rank_q, smith_diagonal


def matrices(max_dim=5, bound=6):
    return st.integers(1, max_dim).flatmap(
        lambda r: st.integers(1, max_dim).flatmap(
            lambda c: st.lists(st.lists(st.integers(-bound, bound), min_size=c, max_size=c),
                               min_size=r, max_size=r)))


def sympy_invariants(m):
    snf = smith_normal_form(sympy.Matrix(m), domain=sympy.ZZ)
    return [abs(int(snf[k, k])) for k in range(min(snf.shape)) if snf[k, k] != 0]


@given(matrices())
def test_smith_diagonal_agrees_with_sympy(m):
    assert smith_diagonal(m) == sympy_invariants(m)


@given(matrices())
def test_invariant_factors_divide(m):
    d = smith_diagonal(m)
    assert all(b % a == 0 for a, b in zip(d, d[1:]))


@given(matrices())
def test_rank_q_matches_sympy(m):
    assert rank_q(m) == sympy.Matrix(m).rank()


def test_smith_known_example():
    assert smith_diagonal([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]
    assert smith_diagonal([[0, 0], [0, 0]]) == []


def _two_torsion_complex():
    # Z --2--> Z in degrees (0, 0) -> (1, 0)
    cx = SparseComplex()
    cx.add_generator("a", 0, 0)
    cx.add_generator("b", 1, 0)
    cx.add_entry("a", "b", 2)
    return cx


def test_homology_with_torsion():
    h = _two_torsion_complex().homology()
    assert h.rank(0, 0) == 0 and h.rank(1, 0) == 0
    assert h.torsion(1, 0) == (2,)


def test_torsion_splits_into_prime_powers():
    h = BigradedGroups.from_parts({(0, 0): 1}, {(0, 0): [12]})
    assert h.torsion(0, 0) == (3, 4)


def test_eliminate_requires_unit():
    with pytest.raises(DifferentialError):
        _two_torsion_complex().eliminate("a", "b")


def test_check_detects_nonzero_square():
    cx = SparseComplex()
    for k, x in enumerate("abc"):
        cx.add_generator(x, k, 0)
    cx.add_entry("a", "b", 1)
    cx.add_entry("b", "c", 1)
    with pytest.raises(DifferentialError):
        cx.check()


def test_check_detects_wrong_degree():
    cx = SparseComplex()
    cx.add_generator("a", 0, 0)
    cx.add_generator("b", 1, 2)
    cx.add_entry("a", "b", 1)
    with pytest.raises(DifferentialError):
        cx.check()


@st.composite
def random_complexes(draw):
    """Small complexes built as d = B o A style compositions so that d o d = 0."""
    n0, n1, n2 = (draw(st.integers(0, 3)) for _ in range(3))
    cx = SparseComplex()
    for k in range(n0):
        cx.add_generator(("x", k), 0, 0)
    for k in range(n1):
        cx.add_generator(("y", k), 1, 0)
    for k in range(n2):
        cx.add_generator(("z", k), 2, 0)
    # pick d1 arbitrary; d2 from the left kernel of d1 built by hand
    d1 = [[draw(st.integers(-2, 2)) for _ in range(n1)] for _ in range(n0)]
    for a in range(n0):
        for b in range(n1):
            cx.add_entry(("x", a), ("y", b), d1[a][b])
    if n0 == 0 and n1:
        for b in range(n1):
            for c in range(n2):
                cx.add_entry(("y", b), ("z", c), draw(st.integers(-2, 2)))
    return cx


@given(random_complexes())
def test_reduction_preserves_homology(cx):
    cx.check()
    assert cx.homology(reduce_first=True) == cx.homology(reduce_first=False)


def test_change_basis_keeps_homology():
    cx = SparseComplex()
    for x, deg in (("a", 0), ("b", 0), ("c", 1)):
        cx.add_generator(x, deg, 0)
    cx.add_entry("a", "c", 1)
    cx.add_entry("b", "c", 1)
    before = cx.homology()
    cx.change_basis("b", "b'", {"b": 1, "a": -1})
    assert cx.entry("b'", "c") == 0
    assert cx.homology() == before
