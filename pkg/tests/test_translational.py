import io
import math

import numpy as np
import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from fracsusy import (
    DomainError,
    HarmonicOscillator,
    InadmissibleSpec,
    LinearSpec,
    Morse,
    PoschlTeller,
    PotentialModel,
    build_rep,
    build_space,
    classify_spectrum,
    linear_F,
    potential_value,
    sector_shift_check,
    si_energies,
    translational_flow,
    verify_translational_SI,
)
from fracsusy.fsusy import sector_symbol
from fracsusy.translational import (
    closed_form_hierarchy,
    effective_b,
    hierarchy_offset,
    k2_reduction_residual,
    write_potential_csv,
)

FAMILIES = [HarmonicOscillator(), PoschlTeller(2.0, 2.0), PoschlTeller(1.5, 3.25), Morse(2), Morse(5)]


def test_linear_F_values():
    assert linear_F(0, LinearSpec(2, 5)) == 0
    assert linear_F(3, LinearSpec(2, 5)) == 21
    assert linear_F(2, LinearSpec(-2, 5)) == 8


def test_classify_spectrum():
    assert classify_spectrum(LinearSpec(0, 1)).kind == "infinite"
    fin = classify_spectrum(LinearSpec(-2, 5))
    assert (fin.kind, fin.cutoff) == ("finite", 2)
    with pytest.raises(InadmissibleSpec):
        classify_spectrum(LinearSpec(-2, 4))
    with pytest.raises(InadmissibleSpec):
        classify_spectrum(LinearSpec(0, -1))
    assert classify_spectrum(LinearSpec(2, 0)).degenerate_first_gap


@pytest.mark.parametrize("spec", [LinearSpec(0, 1), LinearSpec(2, 5), LinearSpec(-2, 41)])
def test_xx_spectrum_is_linear_F(spec):
    rep = build_rep(build_space(3, 24), spec)
    keep = rep.space.levels <= rep.top
    diag = np.real(np.diag(rep.XX))[keep]
    assert np.allclose(diag, linear_F(rep.space.levels[keep], spec), rtol=1e-12, atol=1e-12)


# -- hierarchy link ------------------------------------------------------------


def test_sector_shift_examples():
    assert sector_shift_check(2, LinearSpec(0, 1), 20) <= 1e-12
    assert sector_shift_check(3, LinearSpec(2, 5), 20) <= 1e-10


@pytest.mark.parametrize("family", FAMILIES[:4])
def test_sector_shift_sweep(family, k):
    assert sector_shift_check(k, family.params, 24) <= 1e-10


@given(
    k=st.integers(2, 6),
    a=st.floats(-3, 3),
    b=st.floats(0.1, 20),
)
def test_factorized_hierarchy_matches_sector_formula(k, a, b):
    p = LinearSpec(a, b)
    n = np.arange(3 * k, 3 * k + 10)
    for s in range(k):
        j = k if s == 0 else k - s
        lhs = sector_symbol(p, k, j, n)
        rhs = closed_form_hierarchy(k, s, p, n)
        assert np.max(np.abs(lhs - rhs)) <= 1e-9 * (1 + np.max(np.abs(lhs)))


def test_factorized_hierarchy_symbolically():
    # Oracle: expand the sector formula by hand with sympy for a few orders.
    N, a, b = sp.symbols("N a b")
    F = lambda m, bb: a * m * (m - 1) / 2 + bb * m
    for k in (2, 3, 4, 5):
        for s in range(k):
            j = k if s == 0 else k - s
            expr = (k - 1) * F(N, b)
            expr -= sum((t - 1) * (a * (N - j + t) + b) for t in range(2, k))
            expr += (k - 1) * sum(a * (N - j + t) + b for t in range(j, k))
            bb = b - sp.Rational(k, 2) * a + a + s * a
            off = (k - 1) * ((k - 2) * (k * a - 3 * b) / 6 + sp.Rational(1, 2) * s * (s - k + 1) * a + s * b)
            assert sp.simplify(expr - ((k - 1) * F(N, bb) + off)) == 0


def test_effective_b_and_offset_at_k2():
    p = LinearSpec(2.0, 5.0)
    assert effective_b(2, 0, p) == 5.0
    assert hierarchy_offset(2, 0, p) == 0.0
    assert hierarchy_offset(2, 1, p) == 5.0


# -- potentials ------------------------------------------------------------------


def test_potential_examples():
    assert potential_value(PotentialModel(HarmonicOscillator()), 1.0) == 1.0
    assert potential_value(PotentialModel(HarmonicOscillator(), k=3), 0.0) == -1.0
    assert potential_value(PotentialModel(Morse(1)), 0.0) == 0.0


def test_poschl_teller_domain():
    model = PotentialModel(PoschlTeller(2, 2))
    with pytest.raises(DomainError):
        potential_value(model, 0.0)
    with pytest.raises(DomainError):
        potential_value(model, math.pi)
    assert np.isfinite(potential_value(model, 1.0))


def test_family_parameter_validation():
    with pytest.raises(ValueError):
        PotentialModel(PoschlTeller(1.0, 2.0))
    with pytest.raises(ValueError):
        PotentialModel(Morse(1.5))
    with pytest.raises(ValueError):
        PotentialModel(HarmonicOscillator(), k=3, s=3)


@pytest.mark.parametrize("family", FAMILIES)
def test_translational_shape_invariance(family, k):
    assert verify_translational_SI(family, k) <= 1e-10


@pytest.mark.parametrize("family", FAMILIES)
def test_k2_reduction(family):
    assert k2_reduction_residual(family) <= 1e-12


def test_oscillator_hierarchy_offset():
    xs = np.linspace(-3, 3, 20)
    for k in (2, 3, 4):
        assert verify_translational_SI(HarmonicOscillator(), k, xs) <= 1e-12


def test_parameter_shifts():
    assert PoschlTeller(2, 3).shifted(2) == PoschlTeller(4, 5)
    assert Morse(4).shifted(1) == Morse(3)
    assert PoschlTeller(2, 2).shifted(1).params.b == PoschlTeller(2, 2).params.b + 2


# -- energy accumulation ---------------------------------------------------------


def test_si_energy_examples():
    flow = translational_flow()
    assert si_energies(flow, LinearSpec(0, 1), 7) == 7
    assert si_energies(flow, LinearSpec(2, 5), 3) == 21
    assert si_energies(flow, LinearSpec(2, 5), 0) == 0


@given(a=st.integers(-3, 3), b=st.integers(0, 12), n=st.integers(0, 50))
def test_si_energies_equal_linear_F(a, b, n):
    p = LinearSpec(float(a), float(b))
    assert abs(si_energies(translational_flow(), p, n) - linear_F(n, p)) <= 1e-12 * (1 + abs(linear_F(n, p)))


def test_potential_csv_export():
    buf = io.StringIO()
    write_potential_csv(PotentialModel(HarmonicOscillator()), [0.0, 1.0, 2.0], buf)
    rows = [tuple(map(float, line.split(","))) for line in buf.getvalue().splitlines()]
    assert rows == [(0.0, 0.0), (1.0, 1.0), (2.0, 4.0)]
