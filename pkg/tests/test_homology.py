import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ktq.errors import CapExceeded, InputError, InvariantError
from ktq.homology import (
    ComplexSpec, TruncatedComplex, boundary, boundary_matrix, classify_cycles, cycle_residue,
    degenerate_triple, face, face_recursive, homology_group, is_degenerate, make_chain,
    nondegenerate_basis,
)

from conftest import dehn, small_ktqs

KTQS = small_ktqs()


def rand_tuple(rng, T, n):
    return tuple(rng.randrange(T.size) for _ in range(n + 2))


def rand_chain(rng, T, n, terms=6):
    return make_chain((rand_tuple(rng, T, n), rng.randint(-3, 3)) for _ in range(terms))


# -- faces -------------------------------------------------------------

def test_face_small_examples(five):
    a, b, c = 0, 3, 2
    abc = five(a, b, c)
    assert face(five, "L", 0, 1, (a, b, c)) == (b, c)
    assert face(five, "L", 1, 1, (a, b, c)) == (abc, c)
    assert face(five, "R", 0, 1, (a, b, c)) == (a, abc)
    assert face(five, "R", 1, 1, (a, b, c)) == (a, b)


def test_face_dehn_example():
    # ([ab[bcd]], [bcd], d) with x - y + z arithmetic in Z5
    assert face(dehn(5), "L", 2, 2, (1, 2, 3, 4)) == (2, 3, 4)


def test_face_argument_errors(five):
    with pytest.raises(InputError):
        face(five, "L", 0, 2, (0, 1, 2))
    with pytest.raises(InputError):
        face(five, "L", 3, 2, (0, 1, 2, 3))
    with pytest.raises(InputError):
        face(five, "X", 0, 1, (0, 1, 2))


@pytest.mark.parametrize("T", KTQS, ids=lambda T: f"n{T.size}")
def test_coordinate_faces_match_inductive_definition(T):
    rng = random.Random(T.size)
    for n in range(0, 6):
        for _ in range(25):
            t = rand_tuple(rng, T, n)
            for i in range(n + 1):
                for side in "LR":
                    assert face(T, side, i, n, t) == face_recursive(T, side, i, n, t)


def _expansions(T, t):
    """The low-dimensional differentials written out term by term."""
    B = T
    if len(t) == 2:
        a, b = t
        return make_chain([((b,), 1), ((a,), -1)])
    if len(t) == 3:
        a, b, c = t
        abc = B(a, b, c)
        return make_chain([((b, c), 1), ((a, abc), -1), ((abc, c), -1), ((a, b), 1)])
    if len(t) == 4:
        a, b, c, d = t
        abc, bcd = B(a, b, c), B(b, c, d)
        return make_chain([
            ((b, c, d), 1), ((a, abc, B(abc, c, d)), -1),
            ((abc, c, d), -1), ((a, b, bcd), 1),
            ((B(a, b, bcd), bcd, d), 1), ((a, b, c), -1)])
    a, b, c, d, e = t
    abc, bcd, cde = B(a, b, c), B(b, c, d), B(c, d, e)
    abccd = B(abc, c, d)
    bc_cde = B(b, c, cde)
    return make_chain([
        ((b, c, d, e), 1), ((a, abc, abccd, B(abccd, d, e)), -1),
        ((abc, c, d, e), -1), ((a, b, bcd, B(bcd, d, e)), 1),
        ((B(a, b, bcd), bcd, d, e), 1), ((a, b, c, cde), -1),
        ((B(a, b, bc_cde), bc_cde, cde, e), -1), ((a, b, c, d), 1)])


@pytest.mark.parametrize("T", KTQS, ids=lambda T: f"n{T.size}")
def test_low_dimensional_expansions(T):
    rng = random.Random(3 * T.size)
    spec = ComplexSpec(T, normalized=False)
    for n in range(4):
        for _ in range(40):
            t = rand_tuple(rng, T, n)
            assert boundary(spec, n, {t: 1}) == _expansions(T, t)


def test_boundary_examples():
    T = dehn(3)
    spec = ComplexSpec(T, normalized=False)
    assert boundary(spec, 0, {(0, 2): 1}) == {(2,): 1, (0,): -1}
    assert boundary(spec, 1, {(0, 1, 2): 1}) == {}
    assert boundary(ComplexSpec(T, 2, 1, normalized=False), 2, {(0, 1, 2, 0): 1}) == {}


# -- presimplicial identity and d^2 = 0 ---------------------------------

def d_i(T, i, n, chain):
    out = {}
    for t, c in chain.items():
        for side, s in (("L", 1), ("R", -1)):
            f = face(T, side, i, n, t)
            out[f] = out.get(f, 0) + s * c
    return {t: c for t, c in out.items() if c}


@pytest.mark.parametrize("T", KTQS, ids=lambda T: f"n{T.size}")
def test_presimplicial_identity(T):
    rng = random.Random(5 * T.size)
    for n in range(1, 5):
        for _ in range(6):
            z = rand_chain(rng, T, n)
            for j in range(1, n + 1):
                for i in range(j):
                    assert d_i(T, i, n - 1, d_i(T, j, n, z)) == d_i(T, j - 1, n - 1, d_i(T, i, n, z))


@settings(max_examples=120, deadline=None)
@given(st.sampled_from(KTQS), st.integers(0, 2), st.integers(0, 2), st.integers(1, 5),
       st.booleans(), st.randoms(use_true_random=False))
def test_boundary_squares_to_zero(T, p, k, n, normalized, rng):
    spec = ComplexSpec(T, p, k, normalized)
    z = rand_chain(rng, T, n)
    assert boundary(spec, n - 1, boundary(spec, n, z)) == {}


# -- degeneracy --------------------------------------------------------

def test_degeneracy_examples():
    T = dehn(5)
    # in x - y + z arithmetic b = [abc] means a + c = 2b
    assert is_degenerate(T, (0, 1, 2)) and is_degenerate(T, (1, 3, 0))
    assert not is_degenerate(T, (2, 0, 2))
    assert is_degenerate(T, (1, 3, 0, 2), p=1)
    assert [x for x in range(5) if is_degenerate(T, (1, 3, 0, x), p=1)] == [2]
    for t in itertools.product(range(5), repeat=3):
        assert not is_degenerate(T, t, 1, 1)


@pytest.mark.parametrize("T", KTQS, ids=lambda T: f"n{T.size}")
def test_three_degeneracy_conditions_agree(T):
    for a, b, c in itertools.product(range(T.size), repeat=3):
        d2 = degenerate_triple(T, a, b, c, "D2")
        assert degenerate_triple(T, a, b, c, "D1") == d2
        assert degenerate_triple(T, a, b, c, "D3") == d2
    with pytest.raises(InputError):
        degenerate_triple(T, 0, 0, 0, "D4")


def _degenerate_tuples(rng, T, n, p, k, count):
    out = []
    while len(out) < count:
        t = list(rand_tuple(rng, T, n))
        i = rng.randint(p, n - k - 1)
        t[i + 2] = T.right_table[t[i]][t[i + 1]][t[i + 1]]     # condition D1
        t = tuple(t)
        assert is_degenerate(T, t, p, k)
        out.append(t)
    return out


@pytest.mark.parametrize("T", KTQS, ids=lambda T: f"n{T.size}")
@pytest.mark.parametrize("side", [None, "L", "R"])
def test_degenerate_submodule_is_closed(T, side):
    rng = random.Random(T.size + 17)
    for p, k in itertools.product(range(3), repeat=2):
        spec = ComplexSpec(T, p, k, normalized=True)
        for n in range(p + k + 1, p + k + 4):
            if n > 5:
                continue
            for t in _degenerate_tuples(rng, T, n, p, k, 8):
                assert boundary(spec, n, {t: 1}, side=side) == {}


# -- bases and matrices ------------------------------------------------

def test_basis_counts(five):
    assert len(nondegenerate_basis(ComplexSpec(five), 1)) == 100
    assert len(nondegenerate_basis(ComplexSpec(five, 1, 0), 1)) == 125
    assert len(nondegenerate_basis(ComplexSpec(five, normalized=False), 2)) == 625
    T = dehn(2)
    brute = [t for t in itertools.product(range(2), repeat=4)
             if not any(T(t[i], t[i + 1], t[i + 2]) == t[i + 1] for i in range(2))]
    basis = nondegenerate_basis(ComplexSpec(T), 2)
    assert list(basis) == brute
    assert all(basis.index[t] == i for i, t in enumerate(basis))


@pytest.mark.parametrize("T", KTQS[:5], ids=lambda T: f"n{T.size}")
def test_boundary_matrices_compose_to_zero(T):
    for p, k in itertools.product(range(2), repeat=2):
        C = TruncatedComplex(ComplexSpec(T, p, k))
        for n in range(1, 4):
            A, B = C.boundary_matrix(n), C.boundary_matrix(n + 1)
            assert (A.rows, A.cols) == (len(C.basis(n - 1)), len(C.basis(n)))
            assert (A @ B).is_zero()


def test_truncated_matrix_is_zero_when_range_empty(five):
    assert boundary_matrix(ComplexSpec(five, 2, 1), 2).is_zero()
    assert boundary(ComplexSpec(five, 2, 1), 2, {(0, 1, 2, 3): 1}) == {}


def test_matrix_dimensions_match_bases(five):
    spec = ComplexSpec(five, 1, 0)
    M = boundary_matrix(spec, 2)
    assert M.cols == len(nondegenerate_basis(spec, 2))
    assert M.rows == len(nondegenerate_basis(spec, 1))


def test_cap(five):
    with pytest.raises(CapExceeded):
        homology_group(ComplexSpec(five), 3, cap=1000)
    with pytest.raises(InputError):
        ComplexSpec(five, -1, 0)


# -- homology groups ---------------------------------------------------

@pytest.mark.parametrize("p,k,n,torsion", [(0, 0, 1, ()), (1, 0, 2, (5,)), (0, 1, 2, (5,))])
def test_five_element_torsion(five, p, k, n, torsion):
    assert homology_group(ComplexSpec(five, p, k), n).torsion == torsion


@pytest.mark.parametrize("p,k,n,torsion", [(0, 0, 1, (3,)), (1, 0, 2, (3, 3)), (0, 1, 2, (3, 3, 9, 9))])
def test_six_element_torsion(six, p, k, n, torsion):
    assert homology_group(ComplexSpec(six, p, k), n).torsion == torsion


def test_betti_bookkeeping(five):
    C = TruncatedComplex(ComplexSpec(five, 1, 0))
    h = C.homology(2)
    assert h.betti == len(C.basis(2)) - C.smith(2).rank - C.smith(3).rank
    assert h.to_json()["torsion"] == [5]


def test_unnormalized_chain_complex(five):
    for p, k in ((0, 0), (1, 0)):
        C = TruncatedComplex(ComplexSpec(five, p, k, normalized=False))
        assert (C.boundary_matrix(1) @ C.boundary_matrix(2)).is_zero()
        assert C.homology(1).betti >= 0


# -- cycle classes -----------------------------------------------------

def test_residues(five):
    spec = ComplexSpec(five, 1, 0)
    C = TruncatedComplex(spec)
    assert C.residue(2, {}) == ()
    t = (0, 1, 2, 3, 4)
    assert C.residue(2, boundary(spec, 3, {t: 1})) == ()
    bad = next(t for t in C.basis(2) if not C.is_cycle(2, {t: 1}))
    with pytest.raises(InvariantError):
        C.residue(2, {bad: 1})
    assert cycle_residue(spec, 2, {}) == ()


def test_classify_identical_cycles(five):
    spec = ComplexSpec(five, 1, 0)
    rng = random.Random(2)
    z = boundary(spec, 3, rand_chain(rng, five, 3))
    assert classify_cycles(spec, 2, [z] * 4) == [4]
