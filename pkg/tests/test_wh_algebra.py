import dataclasses
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fracsusy import (
    CyclicSpec,
    InadmissibleSpec,
    LinearSpec,
    NegativeStructureFunction,
    TabulatedSpec,
    build_rep,
    build_space,
    interior_projector,
    projectors,
    structure_F,
    verify_wk_relations,
)
from fracsusy.wh_algebra import RelationReport, grade_indicators, scaled_residual, structure_table

from conftest import random_cyclic, random_tabulated, spec_sweep


# -- graded space ------------------------------------------------------------


@pytest.mark.parametrize("k, n_max, dim", [(3, 9, 30), (2, 4, 10)])
def test_space_dimension(k, n_max, dim):
    assert build_space(k, n_max).dim == dim


def test_space_rejects_small_order_and_size():
    with pytest.raises(ValueError):
        build_space(1, 9)
    with pytest.raises(ValueError):
        build_space(3, 5)


def test_basis_is_lexicographic():
    sp = build_space(3, 6)
    assert sp.basis == sorted(sp.basis)
    for i, (n, s) in enumerate(sp.basis):
        assert sp.index(n, s) == i


# -- structure functions ------------------------------------------------------


def test_linear_structure_function_examples():
    assert structure_F(LinearSpec(2, 3), 0, 2, k=3) == 8
    assert structure_F(LinearSpec(0, 1), 1, 5, k=2) == 5
    for s in range(3):
        assert structure_F(random_cyclic(3), s, 0) == 0


@given(
    a=st.floats(-3, 3),
    b=st.floats(0, 10),
    k=st.integers(2, 6),
    n=st.integers(0, 30),
    s=st.integers(0, 5),
)
def test_linear_F_is_grade_independent(a, b, k, n, s):
    got = structure_F(LinearSpec(a, b), s % k, n, k=k)
    assert got == pytest.approx(0.5 * a * n * (n - 1) + b * n, abs=1e-9 * (1 + abs(a) * n * n + b * n))


@settings(max_examples=50)
@given(k=st.integers(2, 6), seed=st.integers(0, 2**16))
def test_recurrence_consistency(k, seed):
    n_max = 15
    for spec in (random_cyclic(k, seed), random_tabulated(k, n_max, seed)):
        for s in range(k):
            for n in range(n_max):
                lhs = structure_F(spec, (s + 1) % k, n + 1) - structure_F(spec, s, n)
                assert abs(lhs - float(spec.gap(s, n))) <= 1e-12 * (1 + n)


def test_structure_table_matches_brute_force():
    for spec in spec_sweep(4):
        F = structure_table(spec, 4, 15)
        for n in range(16):
            for s in range(4):
                assert F[n, s] == pytest.approx(structure_F(spec, s, n, k=4), abs=1e-12)


# -- linear spec flags ------------------------------------------------------


def test_linear_admissibility_cases():
    assert LinearSpec(0, 1).admissible
    assert not LinearSpec(0, 0).admissible
    assert LinearSpec(2, 0).admissible and LinearSpec(2, 0).degenerate_first_gap
    assert LinearSpec(-2, 5).cutoff == 2
    with pytest.raises(InadmissibleSpec):
        LinearSpec(-2, 4).cutoff


# -- representation -----------------------------------------------------------


def test_rep_entries_and_truncation():
    sp = build_space(2, 6)
    rep = build_rep(sp, LinearSpec(0, 1))
    assert rep.Xplus[sp.index(1, 1), sp.index(0, 0)] == 1
    for s in range(2):
        assert not np.any(rep.Xplus[:, sp.index(6, s)])
    assert np.all(rep.Xplus.real >= 0) and not np.any(rep.Xplus.imag)
    assert np.array_equal(rep.Xminus, rep.Xplus.conj().T)


def test_rep_matrices_are_read_only():
    rep = build_rep(build_space(2, 6), LinearSpec(0, 1))
    with pytest.raises(ValueError):
        rep.Xplus[0, 0] = 1


def test_morse_chain_stops_at_cutoff():
    sp = build_space(3, 9)
    rep = build_rep(sp, LinearSpec(-2, 5))
    assert rep.top == 2
    # F(2) = 8 is the last radical; the chain is cut before F(3) = 9
    assert rep.Xplus[sp.index(2, 1), sp.index(1, 0)] == pytest.approx(math.sqrt(8))
    assert not np.any(rep.Xplus[:, sp.index(2, 0)])


def test_negative_structure_function_is_named():
    spec = CyclicSpec((1.0, -3.0, 1.0))
    with pytest.raises(NegativeStructureFunction) as exc:
        build_rep(build_space(3, 6), spec)
    assert exc.value.value < 0
    assert f"F_{exc.value.s}({exc.value.n})" in str(exc.value)


def test_spec_order_must_match_space():
    with pytest.raises(ValueError):
        build_rep(build_space(3, 6), CyclicSpec((1.0, 2.0)))


def test_tabulated_needs_enough_levels():
    spec = TabulatedSpec(np.ones((2, 5)))
    with pytest.raises(InadmissibleSpec):
        build_rep(build_space(2, 8), spec)


def test_tabulated_from_mapping():
    spec = TabulatedSpec.from_mapping({(0, 0): 1.0, (1, 0): 2.0, (0, 1): 3.0, (1, 1): 4.0}, 2)
    assert spec.table.tolist() == [[1.0, 3.0], [2.0, 4.0]]


# -- projectors and interior -----------------------------------------------------


@pytest.mark.parametrize("k", [2, 3, 4, 5, 6])
def test_projectors_are_grade_indicators(k):
    rep = build_rep(build_space(k, 2 * k), CyclicSpec(np.ones(k)))
    for pi, ind in zip(projectors(rep), grade_indicators(rep.space)):
        assert np.max(np.abs(pi - ind)) <= 1e-12
    assert np.max(np.abs(sum(projectors(rep)) - np.eye(rep.space.dim))) <= 1e-12


def test_k2_even_projector():
    rep = build_rep(build_space(2, 4), LinearSpec(0, 1))
    pi0 = projectors(rep)[0]
    assert np.allclose(pi0, (np.eye(10) + rep.Kop) / 2, atol=1e-15)
    assert np.allclose(np.diag(pi0).real, [1, 0] * 5)


def test_interior_projector_ranks():
    sp = build_space(3, 9)
    assert np.array_equal(interior_projector(sp, 0), np.eye(30))
    assert not np.any(interior_projector(sp, 10))
    assert np.trace(interior_projector(sp, 3)) == 21


# -- relation suite ---------------------------------------------------------------


def test_wk_relations_sweep(k):
    sp = build_space(k, 24)
    for spec in spec_sweep(k):
        rep = build_rep(sp, spec)
        report = verify_wk_relations(rep, tol=1e-10)
        assert report.ok, (spec, report.failures(), report.residuals)


def test_wk_relations_finite_chain_small_guard():
    rep = build_rep(build_space(3, 12), LinearSpec(-2, 5))
    report = verify_wk_relations(rep, guard=1)
    assert report.interior_levels == (0, 1)
    assert report.ok


def test_fault_injection_breaks_commutator():
    rep = build_rep(build_space(3, 9), CyclicSpec((2, 3, 5)))
    sp = rep.space
    bad = rep.Xplus.copy()
    bad[sp.index(2, 1), sp.index(1, 0)] += 0.1
    broken = dataclasses.replace(rep, Xplus=bad, Xminus=bad.conj().T.copy())
    report = verify_wk_relations(broken, tol=1e-10)
    assert not report.ok
    assert "commutator" in report.failures()
    P = interior_projector(sp, 3)
    comm = broken.Xminus @ broken.Xplus - broken.Xplus @ broken.Xminus
    assert np.max(np.abs(P @ (comm - (rep.Xminus @ rep.Xplus - rep.Xplus @ rep.Xminus)) @ P)) >= 0.1


def test_guard_must_be_positive():
    rep = build_rep(build_space(2, 6), LinearSpec(0, 1))
    with pytest.raises(ValueError):
        verify_wk_relations(rep, guard=0)


def test_relation_report_pass_flags():
    rep = RelationReport(tol=1e-3, interior_levels=(0, 3), residuals={"a": 1e-4, "b": 1e-2})
    assert rep.passed == {"a": True, "b": False}
    assert rep.failures() == ["b"] and not rep.ok
    merged = rep.merge(RelationReport(1e-3, (0, 3), {"a": 5e-4}))
    assert merged.residuals["a"] == 5e-4
    names = [c["name"] for c in rep.to_dict()["checks"]]
    assert names == ["a", "b"]


def test_scaled_residual_is_relative():
    big = np.full((2, 2), 1e6)
    assert scaled_residual(big, big + 1.0) == pytest.approx(1e-6, rel=1e-6)
    assert scaled_residual(np.zeros(2), np.full(2, 0.5)) == 0.5
