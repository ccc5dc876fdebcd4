"""Acceptance criteria, one pass/fail line each.

Run ``pytest tests/test_acceptance.py -v -s`` or ``python tests/test_acceptance.py``.
All expected values are exact; there are no tolerances.
"""

import itertools
import random
import sys

import pytest

from ktq import builtin_ktq
from ktq.algebra import check_ktq, check_latin
from ktq.braidknot import build_diagram
from ktq.census import enumerate_ktq
from ktq.homology import ComplexSpec, TruncatedComplex

from conftest import ACCEPTANCE_LINES

TREFOIL = (1, 1, 1)
SIX_ONE = (1, 1, 2, -1, -3, 2, -3)
SEVEN_FOUR = (1, 1, 2, -1, 2, 2, 3, -2, 3)


def report(name, checks):
    """Print one line per criterion and fail with the list of bad checks."""
    bad = [f"{what}: got {got!r}, expected {want!r}" for what, got, want in checks if got != want]
    line = f"[{'PASS' if not bad else 'FAIL'}] {name}"
    if bad:
        line += " -- " + "; ".join(bad)
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert not bad, line


def _partition(T, D, p, k, base, seeds):
    C = TruncatedComplex(ComplexSpec(T, p, k))
    lcs = D.enumerate_layered(T, p, k, base, seeds)
    return C.classify(p + k + 1, [D.cycle(lc) for lc in lcs])


def test_criterion_1_census():
    checks = []
    for n, want, budget in ((2, 2, 5), (3, 7, 5), (4, 37, 600)):
        res = enumerate_ktq(n)
        checks.append((f"size {n} count", res.count, want))
        checks.append((f"size {n} within {budget}s", res.elapsed <= budget and res.complete, True))
    report("criterion 1: census sizes 2, 3, 4 -> 2, 7, 37", checks)


def test_criterion_1_stretch_size_five():
    res = enumerate_ktq(5)
    report(f"criterion 1 (stretch): census size 5 -> 23 ({res.elapsed:.0f}s)",
           [("size 5 count", res.count, 23), ("complete", res.complete, True)])


def test_criterion_2_five_element():
    T = builtin_ktq("five")
    h = lambda p, k, n: TruncatedComplex(ComplexSpec(T, p, k)).homology(n).torsion
    report("criterion 2: five-element KTQ check and torsion", [
        ("Latin", check_latin(T.table), None),
        ("LN/RN", check_ktq(T), None),
        ("H1^(0,0) torsion", h(0, 0, 1), ()),
        ("H2^(1,0) torsion", h(1, 0, 2), (5,)),
        ("H2^(0,1) torsion", h(0, 1, 2), (5,)),
    ])


def test_criterion_3_six_element():
    T = builtin_ktq("six")
    h = lambda p, k, n: TruncatedComplex(ComplexSpec(T, p, k)).homology(n).torsion
    report("criterion 3: six-element KTQ torsion", [
        ("H1^(0,0) torsion", h(0, 0, 1), (3,)),
        ("H2^(1,0) torsion", h(1, 0, 2), (3, 3)),
        ("H2^(0,1) torsion", h(0, 1, 2), (3, 3, 9, 9)),
    ])


def test_criterion_4_long_knots():
    T = builtin_ktq("six")
    want = {
        "3_1": (TREFOIL, [1, 2], [1, 1, 1]),
        "6_1": (SIX_ONE, [3], [3]),
        "7_4": (SEVEN_FOUR, [1, 2], [1, 2]),
    }
    checks = []
    for name, (word, w10, w01) in want.items():
        D = build_diagram(word, mode="long")
        # 1-based path (1,2) and seeds 2
        base, _ = D.long_knot_constraints(0, 1, 1, 1)
        checks.append((f"{name} base colorings", len(D.enumerate_colorings(T, base)), 3))
        for (p, k), w in (((1, 0), w10), ((0, 1), w01)):
            base, seeds = D.long_knot_constraints(0, 1, 1, 1, p, k)
            checks.append((f"{name} ({p},{k}) partition", _partition(T, D, p, k, base, seeds), w))
    report("criterion 4: long knots 3_1, 6_1, 7_4 on the six-element KTQ", checks)


def test_criterion_5_plane_diagram():
    T = builtin_ktq("five")
    D = build_diagram(SEVEN_FOUR)
    outer = {D.unbounded_region: 0}
    base = D.enumerate_colorings(T, outer)
    C0 = TruncatedComplex(ComplexSpec(T))
    trivial = C0.classify(1, [D.cycle(lc) for lc in D.enumerate_layered(T, 0, 0, outer)])
    residues = {C0.residue(1, D.cycle(lc)) for lc in D.enumerate_layered(T, 0, 0, outer)}
    lcs = D.enumerate_layered(T, 1, 0, outer)
    report("criterion 5: 7_4 closure with outer region 1 on the five-element KTQ", [
        ("base colorings", len(base), 25),
        ("H1^(0,0) classes", trivial, [25]),
        ("all trivial", residues, {()}),
        ("(1,0) colorings", len(lcs), 125),
        ("(1,0) partition", _partition(T, D, 1, 0, outer, None), [40, 40, 45]),
    ])


def test_criterion_6_link_family():
    T = builtin_ktq("five")
    D = build_diagram((), strands=2)
    checks = [("trivial 2-component link colorings", len(D.enumerate_colorings(T)), 125)]
    # Torus links T(2,2m) close sigma_1^(2m); those up to eight crossings are
    # two-component links of the table.
    for m in range(1, 5):
        n = len(build_diagram((1,) * (2 * m)).enumerate_colorings(T))
        checks.append((f"T(2,{2 * m}) count in {{25,125}}", n in (25, 125), True))
    report("criterion 6: link family on the five-element KTQ", checks)


def test_criterion_7_property_suites():
    import test_algebra as ta
    import test_braidknot as tb
    import test_homology as th
    import test_intlinalg as ti
    from conftest import small_ktqs

    five, six = builtin_ktq("five"), builtin_ktq("six")
    suites = {
        "d^2 = 0 (p,k <= 2, n <= 5)": lambda: _square_zero(small_ktqs()),
        "presimplicial identity": lambda: [th.test_presimplicial_identity(T) for T in small_ktqs()],
        "degenerate closure (full, L, R)": lambda: [th.test_degenerate_submodule_is_closed(T, s)
                                                    for T in small_ktqs() for s in (None, "L", "R")],
        "D1 <=> D2 <=> D3": lambda: [th.test_three_degeneracy_conditions_agree(T) for T in small_ktqs()],
        "low-dimensional expansions": lambda: [th.test_low_dimensional_expansions(T) for T in small_ktqs()],
        "inductive faces = coordinate formulas":
            lambda: [th.test_coordinate_faces_match_inductive_definition(T) for T in small_ktqs()],
        "braid relations and Markov moves": lambda: _moves(tb, five, six),
        "layered count = base x |X|^(p+k)":
            lambda: [tb.test_layered_count(five, p, k) for p, k in ((0, 0), (1, 0), (0, 1), (1, 1))],
        "coloring cycles are cycles":
            lambda: [tb.test_cycles_have_zero_boundary(six, w, p, k)
                     for w in (TREFOIL, SIX_ONE) for p, k in ((0, 0), (1, 0), (0, 1))],
        "division round trips": lambda: [ta.test_division_round_trips_exhaustive(T) for T in small_ktqs()],
        "SNF vs minor gcds": ti.test_snf_vs_minor_gcd_random,
        "HNF and residues vs search": ti.test_residue_vs_bounded_search,
    }
    checks = []
    for name, fn in suites.items():
        try:
            fn()
            ok = True
        except AssertionError:
            ok = False
        checks.append((name, ok, True))
    report("criterion 7: property suites", checks)


def _square_zero(ktqs):
    from ktq.homology import boundary, make_chain
    rng = random.Random(0)
    for T in ktqs:
        for p, k, n in itertools.product(range(3), range(3), range(1, 6)):
            for normalized in (True, False):
                spec = ComplexSpec(T, p, k, normalized)
                z = make_chain((tuple(rng.randrange(T.size) for _ in range(n + 2)), rng.randint(-3, 3))
                               for _ in range(4))
                assert boundary(spec, n - 1, boundary(spec, n, z)) == {}


def _moves(tb, five, six):
    for a, b in (((1, 3, 2), (3, 1, 2)), ((1, 2, 1), (2, 1, 2)), ((1, -1, 2), (2,))):
        tb.test_braid_relations_preserve_counts_and_partitions(five, a, b)
    for sign in (1, -1):
        tb.test_markov_stabilization(five, TREFOIL, 2, sign)
    tb.test_markov_conjugation(six)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
