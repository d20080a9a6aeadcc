"""Tests for photon statistics and uncertainty relations."""

import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from modn import (
    DegenerateNormalizationError,
    StateVector,
    UnnormalizedStateError,
    UnsupportedFormulaError,
    cat_uncertainty_check,
    coherent_state,
    kaleidoscope_state,
    make_context,
    observable_report,
    photon_number_fock,
    photon_number_formula,
    uncertainty_formula,
    uncertainty_product,
)

# 200-term rational-series references for |alpha|^2 * e_{k-1}/e_k
MEAN_N3_K1_A1P1 = 1.209593191569822
MEAN_N5_K4_A0P5 = 4.000000322937316
MEAN_N2_K0_A2 = 3.997317198956268  # = 4 tanh 4


def fock_basis_state(m, dim):
    amps = np.zeros(dim, dtype=complex)
    amps[m] = 1.0
    return StateVector(amps)


class TestPhotonNumberFock:
    def test_number_state(self):
        assert photon_number_fock(fock_basis_state(3, 12)) == pytest.approx(3.0)

    def test_coherent_state_mean(self):
        assert photon_number_fock(coherent_state(1 + 1j)) == pytest.approx(
            2.0, abs=1e-10
        )

    def test_rejects_unnormalized(self):
        with pytest.raises(UnnormalizedStateError):
            photon_number_fock(StateVector(np.array([1.0, 1.0])))


class TestPhotonNumberFormula:
    def test_even_cat_is_tanh(self):
        ctx = make_context(2)
        for x in [0.3, 1.0, 2.7]:
            alpha = math.sqrt(x)
            got = photon_number_formula(ctx, 0, alpha)
            assert got == pytest.approx(x * math.tanh(x), rel=1e-13)

    def test_odd_cat_is_coth(self):
        ctx = make_context(2)
        for x in [0.4, 1.5, 3.2]:
            alpha = math.sqrt(x)
            got = photon_number_formula(ctx, 1, alpha)
            assert got == pytest.approx(x / math.tanh(x), rel=1e-13)

    @pytest.mark.parametrize(
        "n,k,alpha,want",
        [
            (3, 1, 1.1, MEAN_N3_K1_A1P1),
            (5, 4, 0.5, MEAN_N5_K4_A0P5),
            (2, 0, 2.0, MEAN_N2_K0_A2),
        ],
    )
    def test_frozen_values(self, n, k, alpha, want):
        ctx = make_context(n)
        assert photon_number_formula(ctx, k, alpha) == pytest.approx(want, rel=1e-13)

    def test_phase_of_alpha_is_irrelevant(self):
        ctx = make_context(4)
        base = photon_number_formula(ctx, 2, 1.3)
        assert photon_number_formula(ctx, 2, 1.3j) == pytest.approx(base, rel=1e-14)
        assert photon_number_formula(ctx, 2, 1.3 * np.exp(0.7j)) == pytest.approx(
            base, rel=1e-14
        )

    def test_zero_amplitude(self):
        ctx = make_context(3)
        assert photon_number_formula(ctx, 0, 0.0) == 0.0
        with pytest.raises(DegenerateNormalizationError):
            photon_number_formula(ctx, 2, 0.0)

    def test_kitten_limit(self):
        # alpha -> 0 pins the photon number at the component index
        alpha = 1e-3  # |alpha|^2 = 1e-6
        for n in range(2, 7):
            ctx = make_context(n)
            for k in range(n):
                got = photon_number_formula(ctx, k, alpha)
                assert abs(got - k) <= 1e-5

    def test_underflowed_component_falls_back_to_leading_term(self):
        # x^k underflows to zero for k = 40 at x = 1e-8, so the ratio
        # must come from the leading-term limit k/x, giving exactly k
        ctx = make_context(41)
        assert photon_number_formula(ctx, 40, 1e-4) == 40.0

    def test_matches_fock_route(self):
        for n in range(2, 7):
            ctx = make_context(n)
            for alpha in [0.6, 1.3 + 0.4j]:
                for k in range(n):
                    state = kaleidoscope_state(ctx, k, alpha)
                    formula = photon_number_formula(ctx, k, alpha)
                    fock = photon_number_fock(state)
                    assert abs(formula - fock) <= 1e-9 * (1.0 + formula)

    def test_large_amplitude_limit(self):
        # at |alpha|^2 = 25 both cat branches sit on the coherent mean
        ctx = make_context(2)
        for k in range(2):
            got = photon_number_formula(ctx, k, 5.0)
            assert abs(got - 25.0) <= 1e-3 * 25.0


class TestUncertaintyProduct:
    def test_vacuum(self):
        unc = uncertainty_product(fock_basis_state(0, 16))
        assert unc.delta_q == pytest.approx(1 / math.sqrt(2), rel=1e-12)
        assert unc.delta_p == pytest.approx(1 / math.sqrt(2), rel=1e-12)
        assert unc.product == pytest.approx(0.5, rel=1e-12)

    def test_number_state(self):
        # |m> has delta_q = delta_p = sqrt(m + 1/2)
        unc = uncertainty_product(fock_basis_state(1, 16))
        assert unc.product == pytest.approx(1.5, rel=1e-12)

    def test_coherent_state_saturates(self):
        for alpha in [1.0, 0.8 + 0.6j]:
            unc = uncertainty_product(coherent_state(alpha))
            assert unc.product == pytest.approx(0.5, abs=1e-10)

    def test_rejects_unnormalized(self):
        with pytest.raises(UnnormalizedStateError):
            uncertainty_product(StateVector(np.array([0.5, 0.5])))

    def test_quadratures_equal_for_higher_moduli(self):
        ctx = make_context(4)
        for k in range(4):
            unc = uncertainty_product(kaleidoscope_state(ctx, k, 1.2 + 0.3j))
            assert abs(unc.delta_q - unc.delta_p) <= 1e-9

    def test_kitten_product(self):
        ctx = make_context(4)
        unc = uncertainty_product(kaleidoscope_state(ctx, 1, 1e-3))
        assert abs(unc.product - 1.5) <= 1e-4


class TestUncertaintyFormula:
    def test_needs_modulus_three(self):
        for n in (1, 2):
            with pytest.raises(UnsupportedFormulaError):
                uncertainty_formula(make_context(n), 0, 1.0)

    def test_frozen_value(self):
        ctx = make_context(5)
        want = 0.5 * (1.0 + 2.0 * MEAN_N5_K4_A0P5)
        assert uncertainty_formula(ctx, 4, 0.5) == pytest.approx(want, rel=1e-13)

    def test_small_amplitude_limit(self):
        ctx = make_context(3)
        for k in range(3):
            got = uncertainty_formula(ctx, k, 1e-3)
            assert abs(got - (2 * k + 1) / 2) <= 1e-4

    def test_matches_measured_product(self):
        for n in (3, 4, 6):
            ctx = make_context(n)
            for k in range(n):
                formula = uncertainty_formula(ctx, k, 1.1)
                measured = uncertainty_product(kaleidoscope_state(ctx, k, 1.1)).product
                assert abs(formula - measured) <= 1e-9


class TestCatUncertainty:
    @pytest.mark.parametrize("alpha", [0.5, 1.2, 2.0, 0.9 + 0.5j, 1.0j])
    @pytest.mark.parametrize("k", [0, 1])
    def test_squared_relation(self, alpha, k):
        if alpha == 0:
            return
        rec = cat_uncertainty_check(alpha, k)
        assert rec.relation_residual <= 1e-8
        assert rec.relation_lhs == pytest.approx(4.0 * rec.product**2, rel=1e-12)

    def test_record_is_consistent(self):
        rec = cat_uncertainty_check(0.8, 0)
        assert rec.alpha == 0.8 + 0j
        assert rec.k == 0
        assert rec.product == pytest.approx(rec.delta_q * rec.delta_p, rel=1e-12)
        assert rec.mean_photons == pytest.approx(0.64 * math.tanh(0.64), rel=1e-10)

    def test_quoted_form_when_radicand_positive(self):
        rec = cat_uncertainty_check(0.5, 0)
        cross = 2 * 0.25
        want = 0.5 * math.sqrt((1 + 2 * rec.mean_photons) - cross**2)
        assert rec.quoted_product == pytest.approx(want, rel=1e-12)

    def test_quoted_form_goes_nan_at_large_amplitude(self):
        # the unsquared variant has a negative radicand here, which is
        # the numerical evidence that it cannot be the general law
        rec = cat_uncertainty_check(2.0, 0)
        assert math.isnan(rec.quoted_product)
        assert rec.relation_residual <= 1e-8


class TestObservableReport:
    def test_formula_and_fock_routes_agree(self):
        ctx = make_context(3)
        rep = observable_report(ctx, 1, 1.2)
        gap = abs(rep.mean_photons_formula - rep.mean_photons_fock)
        assert gap <= 1e-9 * (1.0 + rep.mean_photons_formula)

    def test_product_formula_present_for_higher_moduli(self):
        ctx = make_context(4)
        rep = observable_report(ctx, 2, 0.9)
        assert rep.product_formula is not None
        assert abs(rep.product - rep.product_formula) <= 1e-9

    def test_product_formula_absent_for_cats(self):
        ctx = make_context(2)
        rep = observable_report(ctx, 0, 0.9)
        assert rep.product_formula is None

    def test_accepts_prebuilt_state(self):
        ctx = make_context(3)
        state = kaleidoscope_state(ctx, 2, 1.4)
        rep = observable_report(ctx, 2, 1.4, state=state)
        assert rep.dim == state.dim
        assert rep.mean_photons_fock == pytest.approx(photon_number_fock(state))

    def test_as_dict_round_trip(self):
        ctx = make_context(3)
        d = observable_report(ctx, 0, 0.7).as_dict()
        assert d["n"] == 3
        assert d["k"] == 0
        assert set(d) == {
            "n",
            "k",
            "alpha",
            "dim",
            "mean_photons_formula",
            "mean_photons_fock",
            "delta_q",
            "delta_p",
            "product",
            "product_formula",
        }


@given(
    n=st.integers(min_value=2, max_value=5),
    data=st.data(),
    re=st.floats(min_value=-1.6, max_value=1.6, allow_nan=False),
    im=st.floats(min_value=-1.6, max_value=1.6, allow_nan=False),
)
@settings(max_examples=60, deadline=None)
def test_photon_routes_agree_property(n, data, re, im):
    """Formula and Fock expectations of N stay within 1e-9 relative."""
    alpha = complex(re, im)
    assume(abs(alpha) > 0.05)
    ctx = make_context(n)
    k = data.draw(st.integers(min_value=0, max_value=n - 1))
    formula = photon_number_formula(ctx, k, alpha)
    fock = photon_number_fock(kaleidoscope_state(ctx, k, alpha))
    assert abs(formula - fock) <= 1e-9 * (1.0 + formula)


@given(
    n=st.integers(min_value=3, max_value=5),
    data=st.data(),
    re=st.floats(min_value=-1.6, max_value=1.6, allow_nan=False),
    im=st.floats(min_value=-1.6, max_value=1.6, allow_nan=False),
)
@settings(max_examples=40, deadline=None)
def test_uncertainty_formula_property(n, data, re, im):
    """For n >= 3 the measured product matches (1 + 2<N>)/2."""
    alpha = complex(re, im)
    assume(abs(alpha) > 0.05)
    ctx = make_context(n)
    k = data.draw(st.integers(min_value=0, max_value=n - 1))
    unc = uncertainty_product(kaleidoscope_state(ctx, k, alpha))
    assert abs(unc.delta_q - unc.delta_p) <= 1e-9
    assert abs(unc.product - uncertainty_formula(ctx, k, alpha)) <= 1e-9
