"""Tests for mod-n exponentials of operators and the identity suite.

scipy.linalg.expm (scaling and squaring) serves as the reference
implementation here; the library's own Taylor-scan route never calls
it, which is what makes the comparison meaningful.
"""

import math

import numpy as np
import pytest
from scipy.linalg import expm

from modn import (
    IdentityReport,
    UnsafeParameterError,
    NonConvergenceError,
    certified_block_norm,
    ladder_operators,
    make_context,
    operator_modn_exp,
    operator_modn_exp_all,
    run_identity_suite,
    verify_addition_formulas,
    verify_exchange_identities,
    verify_mod2_factorization,
    verify_q_commutation,
)

CTX1 = make_context(1)
CTX2 = make_context(2)
CTX3 = make_context(3)


class TestOperatorSeries:
    def test_n1_matches_expm(self):
        rng = np.random.default_rng(5)
        M = rng.normal(size=(12, 12)) + 1j * rng.normal(size=(12, 12))
        M *= 0.4
        (got,) = operator_modn_exp_all(M, CTX1)
        want = expm(M)
        assert np.linalg.norm(got - want) <= 1e-12 * np.linalg.norm(want)

    def test_components_sum_to_expm(self):
        a, adag = ladder_operators(32)
        M = 0.5 * (a + adag)
        comps = operator_modn_exp_all(M, CTX2)
        assert np.linalg.norm(sum(comps) - expm(M)) <= 1e-10

    def test_nilpotent_series_terminates_exactly(self):
        # alpha * adag is nilpotent, so the scan must stop on a zero term
        _, adag = ladder_operators(10)
        M = (0.7 + 0.2j) * adag
        comps = operator_modn_exp_all(M, CTX3, max_terms=50)
        assert np.linalg.norm(sum(comps) - expm(M)) <= 1e-12

    def test_component_band_structure(self):
        # component s of exp(alpha adag) lives on subdiagonals j = s mod n
        _, adag = ladder_operators(12)
        M = 0.9 * adag
        comps = operator_modn_exp_all(M, CTX3)
        for s, C in enumerate(comps):
            for j in range(12):
                band = np.diagonal(C, offset=-j)
                if j % 3 != s:
                    assert np.max(np.abs(band)) == 0.0

    def test_single_component_slice(self):
        a, adag = ladder_operators(16)
        M = 0.3 * (a + adag)
        batch = operator_modn_exp_all(M, CTX2)
        got = operator_modn_exp(M, CTX2, 1)
        assert np.array_equal(got, batch[1])

    def test_rejects_non_square(self):
        with pytest.raises(ValueError):
            operator_modn_exp_all(np.zeros((3, 4)), CTX2)

    def test_term_budget_exhaustion(self):
        a, adag = ladder_operators(32)
        with pytest.raises(NonConvergenceError):
            operator_modn_exp_all(0.5 * (a + adag), CTX2, max_terms=3)

    def test_term_overflow(self):
        a, adag = ladder_operators(32)
        with pytest.raises(NonConvergenceError):
            operator_modn_exp_all(400.0 * (a + adag), CTX2)


class TestCertifiedBlock:
    def test_measures_low_quarter(self):
        X = np.zeros((64, 64))
        X[0, 0] = 3.0
        X[17, 17] = 100.0  # outside the 17x17 certified block
        assert certified_block_norm(X) == pytest.approx(3.0)

    def test_block_size_rounds_up(self):
        X = np.zeros((10, 10))
        X[3, 3] = 2.0  # dim//4 + 1 = 3 rows -> index 3 excluded
        assert certified_block_norm(X) == 0.0


class TestVerifyFunctions:
    def test_factorization_passes(self):
        reports = verify_mod2_factorization(0.8, -0.5 + 0.3j)
        assert len(reports) == 2
        assert all(r.passed for r in reports)
        assert all(r.residual <= 1e-12 for r in reports)

    def test_q_commutation_passes(self):
        reports = verify_q_commutation(0.3, 0.3)
        assert len(reports) == 1
        assert reports[0].passed
        assert reports[0].residual <= 1e-12

    def test_q_commutation_imaginary_pair(self):
        # alpha = beta = 0.3i flips the sign of the commutator scalar
        reports = verify_q_commutation(0.3j, 0.3j)
        assert reports[0].passed

    def test_exchange_passes(self):
        reports = verify_exchange_identities(1.1, 0.6 - 0.8j)
        assert len(reports) == 4
        assert all(r.passed for r in reports)

    def test_addition_passes(self):
        reports = verify_addition_formulas(0.9 + 0.4j, 0.7)
        assert len(reports) == 4
        assert all(r.passed for r in reports)

    def test_trivial_beta_gives_zero_residual(self):
        # B = 0 collapses every identity to an exact bookkeeping check
        for r in verify_mod2_factorization(0.7, 0.0):
            assert r.residual == 0.0
        for r in verify_exchange_identities(0.7, 0.0):
            assert r.residual == 0.0

    def test_report_fields(self):
        (r,) = verify_q_commutation(0.2, 0.1, dim=48, tolerance=1e-6)
        assert isinstance(r, IdentityReport)
        assert r.dim == 48
        assert r.tolerance == 1e-6
        assert r.alpha == 0.2 + 0j
        d = r.as_dict()
        assert d["identity"] == "exp_exchange"
        assert d["passed"] is True

    def test_passed_tracks_tolerance(self):
        reports = verify_exchange_identities(0.3, 0.4, tolerance=1e-30)
        assert all(not r.passed for r in reports if r.residual > 0)
        assert any(not r.passed for r in reports)

    @pytest.mark.parametrize("dim", [2, 8, 31])
    def test_small_dim_refused(self, dim):
        with pytest.raises(UnsafeParameterError):
            verify_q_commutation(0.5, 0.5, dim=dim)

    def test_large_amplitude_refused(self):
        with pytest.raises(UnsafeParameterError):
            verify_mod2_factorization(2.5, 0.1)
        with pytest.raises(UnsafeParameterError):
            verify_mod2_factorization(0.1, -2.1)

    def test_bad_tolerance_refused(self):
        with pytest.raises(ValueError):
            verify_q_commutation(0.5, 0.5, tolerance=0.0)


class TestIdentitySuite:
    def test_eleven_distinct_checks(self):
        reports = run_identity_suite(0.6, 0.9 - 0.2j)
        assert len(reports) == 11
        names = [r.identity for r in reports]
        assert len(set(names)) == 11
        assert all(r.passed for r in reports)

    def test_matches_individual_functions(self):
        alpha, beta = 0.5 + 0.5j, -0.4
        suite = {r.identity: r.residual for r in run_identity_suite(alpha, beta)}
        for r in verify_exchange_identities(alpha, beta):
            assert suite[r.identity] == pytest.approx(r.residual, rel=1e-12, abs=1e-300)
        for r in verify_q_commutation(alpha, beta):
            assert suite[r.identity] == pytest.approx(r.residual, rel=1e-12, abs=1e-300)

    def test_residuals_bounded_at_every_dim(self):
        alpha, beta = 0.8, 0.55 + 0.3j
        for dim in (32, 64, 128):
            for r in run_identity_suite(alpha, beta, dim=dim):
                assert r.residual <= 1e-10

    def test_residuals_non_increasing_on_fixed_window(self):
        # growing the space must not change what a fixed low window
        # sees: the identities are not truncation artifacts.  Residual
        # matrices are rebuilt here from public pieces so the window
        # can be held at the smallest certified block.
        alpha, beta = 0.8, 0.55 + 0.3j
        c = -alpha * beta
        window = 32 // 4 + 1

        def window_residuals(dim):
            a, adag = ladder_operators(dim)
            A, B = alpha * adag, beta * a
            A0, A1 = operator_modn_exp_all(A, CTX2)
            B0, B1 = operator_modn_exp_all(B, CTX2)
            S0, S1 = operator_modn_exp_all(A + B, CTX2)
            half = np.exp(-0.5 * c)
            mats = {
                "even_fact": S0 - (A0 @ B0 + A1 @ B1) * half,
                "odd_fact": S1 - (A0 @ B1 + A1 @ B0) * half,
                "qcomm": (A0 + A1) @ (B0 + B1)
                - np.exp(c) * ((B0 + B1) @ (A0 + A1)),
                "cosh_cosh": A0 @ B0
                - (B0 @ A0 * np.cosh(c) + B1 @ A1 * np.sinh(c)),
            }
            return {
                k: float(np.linalg.norm(v[:window, :window])) for k, v in mats.items()
            }

        r32 = window_residuals(32)
        r64 = window_residuals(64)
        r128 = window_residuals(128)
        for name in r32:
            assert r64[name] <= 1.5 * r32[name] + 1e-14
            assert r128[name] <= 1.5 * r64[name] + 1e-14


def test_even_factor_applied_to_vacuum_builds_cat():
    # even component of the displacement generator acting on |0> is the
    # even coherent superposition with cosh-series amplitudes
    alpha = 1.2
    dim = 64
    a, adag = ladder_operators(dim)
    M = alpha * adag - alpha * a  # generator of D(alpha) for real alpha
    even = operator_modn_exp(M, CTX2, 0)
    vac = np.zeros(dim)
    vac[0] = 1.0
    got = even @ vac
    want = np.zeros(dim, dtype=complex)
    for m in range(0, dim, 2):
        want[m] = math.exp(-0.5 * alpha * alpha) * alpha**m / math.sqrt(
            math.factorial(m)
        )
    assert np.max(np.abs(got - want)[: dim // 2]) <= 1e-10
