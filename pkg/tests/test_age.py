import cmath
import math
import random
from fractions import Fraction

import numpy as np
import pytest

from permquot.age import (
    OracleError,
    VerdictKind,
    WeightVector,
    age_lower_bound,
    age_report,
    age_via_spectrum,
    ages_by_cycle_type,
    chart_age,
    chart_ages,
    lemma_shortcut,
    min_age,
    oracle_disagreements,
    permutation_matrix,
    quasi_reflection_charts,
    reid_tai_verdict,
    tangent_weights,
    weights_of,
)
from permquot.groups import (
    all_permutations,
    close_generators,
    heisenberg_mod_p,
    power,
    cyclic,
    regular_representation,
)
from permquot.perm import Permutation, cycle_type, inverse, is_forbidden_type, parse_cycles

from conftest import random_perm


def P(text, n):
    return parse_cycles(text, n)


def tangent_ages_numeric(g):
    """Ages at every eigen-fixed-point from tangent eigenvalues mu_i / lambda.

    Uses only numpy eigenvalues and complex arguments; no orders or weights.
    """
    mu = np.linalg.eigvals(permutation_matrix(g))
    out = []
    for p, lam in enumerate(mu):
        total = 0.0
        for i, x in enumerate(mu):
            if i == p:
                continue
            t = (cmath.phase(x / lam) / (2 * math.pi)) % 1.0
            if t > 1 - 1e-9:
                t = 0.0
            total += t
        out.append(total)
    return sorted(out)


def test_weights_examples():
    assert weights_of(Permutation.identity(3)) == WeightVector(1, (0, 0, 0))
    w = weights_of(P("(1 2)(3 4 5)", 5))
    assert w.modulus == 6
    assert sorted(w.weights) == sorted([0, 3, 0, 2, 4])
    w = weights_of(P("(1 2 3)", 3))
    assert w.modulus == 3 and sorted(w.weights) == [0, 1, 2]


def test_weights_match_spectrum_multiset(rng):
    for _ in range(40):
        g = random_perm(7, rng)
        w = weights_of(g)
        mu = np.linalg.eigvals(permutation_matrix(g))
        got = sorted(round(cmath.phase(x) * w.modulus / (2 * math.pi)) % w.modulus for x in mu)
        assert got == sorted(w.weights)


def test_chart_age_examples():
    w = weights_of(P("(1 2)", 2))
    assert chart_age(w, 0) == Fraction(1, 2)
    assert chart_age(weights_of(P("(1 2 3)", 3)), 0) == 1
    assert chart_age(weights_of(Permutation.identity(4)), 0) == 0
    assert chart_age(weights_of(P("(1 2 3 4 5)", 5)), 1) == 2


def test_chart_age_rejects_missing_weight():
    with pytest.raises(ValueError):
        chart_age(weights_of(P("(1 2)", 2)), 5)


def test_lower_bound_examples():
    assert age_lower_bound(Permutation.identity(4)) == 0
    assert age_lower_bound(P("(1 2 3 4 5)", 5)) == 2
    assert age_lower_bound(P("(1 2)(3 4)", 4)) == 1


def test_min_age_examples():
    assert min_age(P("(1 2)", 4)) == Fraction(1, 2)
    assert min_age(P("(1 2 3)", 5)) == 1
    assert min_age(P("(1 2)(3 4)", 6)) == 1
    assert min_age(P("(1 2 3 4 5)", 5)) == 2
    assert set(chart_ages(P("(1 2 3 4 5)", 5)).values()) == {2}
    assert min_age(P("(1 2)(3 4)(5 6)", 6)) > 1
    assert min_age(Permutation.identity(3)) == 0


def test_mixed_cycle_chart_ages():
    # (1 2)(3 4 5): weights {0,3,0,2,4} mod 6; chart 2 residues {4,1,4,2}
    ages = chart_ages(P("(1 2)(3 4 5)", 5))
    assert ages[2] == Fraction(11, 6)
    assert ages[4] == Fraction(13, 6)


def test_quasi_reflection_examples():
    assert quasi_reflection_charts(P("(1 2)", 4)) == [0]
    assert quasi_reflection_charts(P("(1 2 3)", 3)) == []
    assert quasi_reflection_charts(P("(1 2 3 4)", 4)) == []
    assert quasi_reflection_charts(P("(1 2)", 2)) == [0, 1]


def test_only_transposition_types_have_quasi_reflections():
    for n in range(2, 7):
        for g in all_permutations(n):
            if g.is_identity():
                continue
            has_qr = bool(quasi_reflection_charts(g))
            assert has_qr == (cycle_type(g).nontrivial == (2,))


def test_lower_bound_exhaustive_s6():
    for g in all_permutations(6):
        bound = age_lower_bound(g)
        for a in chart_ages(g).values():
            assert a >= bound


def test_chart_ages_against_tangent_eigenvalues_s5():
    for g in all_permutations(5):
        w = weights_of(g)
        exact = sorted(float(chart_age(w, c)) for c in w.weights)  # one per coordinate
        assert np.allclose(exact, tangent_ages_numeric(g), atol=1e-9)


def test_conjugation_invariance_s7(rng):
    for _ in range(100):
        g, q = random_perm(7, rng), random_perm(7, rng)
        h = q * g * inverse(q)
        assert sorted(chart_ages(g).values()) == sorted(chart_ages(h).values())
        # independent of the cached path
        assert sorted(tangent_ages_numeric(g)) == pytest.approx(sorted(tangent_ages_numeric(h)), abs=1e-9)


def test_inverse_pairing_s6():
    # at a fixed point with chart weight w, g^-1 sees chart weight -w
    for g in all_permutations(6):
        w = weights_of(g)
        m = w.modulus
        h = inverse(g)
        for c in w.charts:
            nonzero = sum(1 for r in tangent_weights(w, c) if r)
            assert chart_ages(g)[c] + chart_ages(h)[(-c) % m] == nonzero


def test_boundary_classification_s6():
    values = {}
    for g in all_permutations(6):
        if g.is_identity():
            continue
        a = min_age(g)
        assert (a <= 1) == is_forbidden_type(g)
        if is_forbidden_type(g):
            values.setdefault(cycle_type(g).nontrivial, set()).add(a)
    assert values == {(2,): {Fraction(1, 2)}, (3,): {Fraction(1)}, (2, 2): {Fraction(1)}}


def test_shortcut_examples():
    assert lemma_shortcut(close_generators([P("(1 2 3 4 5)", 5)]))
    assert not lemma_shortcut(close_generators([P("(1 2 3)", 4), P("(1 2)(3 4)", 4)]))
    assert lemma_shortcut(regular_representation(heisenberg_mod_p(3)))
    assert lemma_shortcut(regular_representation(heisenberg_mod_p(3), add_fixed_point=True))


def test_verdict_examples():
    v = reid_tai_verdict(close_generators([P("(1 2 3 4 5)", 5)]))
    assert v.kind is VerdictKind.TERMINAL and v.min_age == 2 and v.witnesses == ()

    v = reid_tai_verdict(close_generators([P("(1 2 3)", 3)]))
    assert v.kind is VerdictKind.CANONICAL_NOT_TERMINAL
    assert {w.element for w in v.witnesses} == {P("(1 2 3)", 3), P("(1 3 2)", 3)}
    assert all(w.age == 1 for w in v.witnesses)
    assert v.is_extension

    v = reid_tai_verdict(regular_representation(power(cyclic(2), 2)))
    assert v.kind is VerdictKind.CANONICAL_NOT_TERMINAL
    assert len({w.element for w in v.witnesses}) == 3

    v = reid_tai_verdict(close_generators([P("(1 2)", 4)]))
    assert v.kind is VerdictKind.INCONCLUSIVE_QUASI_REFLECTION
    assert v.witnesses[0].element == P("(1 2)", 4)
    assert v.witnesses[0].chart == 0


def test_verdict_trivial_group():
    v = reid_tai_verdict(close_generators([], degree=3))
    assert v.kind is VerdictKind.TERMINAL and v.min_age is None


def test_only_transposition_types_have_age_below_one():
    # so a permutation group with age < 1 always has a quasi-reflection
    for g in all_permutations(6):
        if g.is_identity() or cycle_type(g).nontrivial == (2,):
            continue
        assert min_age(g) >= 1


def test_verdict_independent_of_order():
    G = close_generators([P("(1 2 3)", 5), P("(3 4 5)", 5)])
    v1 = reid_tai_verdict(G.elements)
    v2 = reid_tai_verdict(tuple(reversed(G.elements)))
    assert v1.kind == v2.kind and v1.min_age == v2.min_age
    assert set(v1.witnesses) == set(v2.witnesses)


def test_spectrum_oracle_examples():
    assert age_via_spectrum(Permutation.identity(3), 0) == 0.0
    assert age_via_spectrum(P("(1 2)", 2), 0) == pytest.approx(0.5, abs=1e-9)
    with pytest.raises(OracleError):
        age_via_spectrum(P("(1 2)", 2), 7)


def test_spectrum_oracle_exhaustive_s5():
    assert oracle_disagreements(all_permutations(5)) == []


def test_age_report_fields():
    r = age_report(P("(1 2)(3 4 5)", 6))
    assert r.cycle_type == (3, 2, 1) and r.order == 6
    assert r.min_age == min(r.chart_ages.values())
    assert all(a >= r.lower_bound for a in r.chart_ages.values())


def test_ages_by_cycle_type_matches_full_analysis():
    G = close_generators([P("(1 2 3 4)", 6), P("(1 5)(2 6)", 6)])
    digest = ages_by_cycle_type(G)
    assert sum(mult for _, mult in digest.values()) == G.order
    for g in G.elements:
        rep, _ = digest[cycle_type(g).lengths]
        assert age_report(g).chart_ages == rep.chart_ages
