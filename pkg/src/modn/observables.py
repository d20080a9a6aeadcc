"""Photon statistics and quadrature uncertainties of kaleidoscope states.

Two routes to every number: closed forms built from scalar mod-n
exponentials of |alpha|^2, and direct matrix expectations in the
truncated Fock space.  The tests live on the gap between them.

Conventions: hbar = 1, q = (a + adag)/sqrt(2), p = (a - adag)/(i sqrt(2)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .core import (
    DEFAULT_SERIES,
    ModulusContext,
    SeriesConfig,
    check_component_index,
    modn_exp_series,
)
from .errors import (
    DegenerateNormalizationError,
    UnnormalizedStateError,
    UnsupportedFormulaError,
)
from .fock import StateVector, default_dim, kaleidoscope_state, ladder_operators

# below this the normalizing component has underflowed and the ratio of
# components must come from its leading term instead of a division
_RATIO_UNDERFLOW = 1e-280

_NORM_SLACK = 1e-8


class Uncertainty(NamedTuple):
    delta_q: float
    delta_p: float
    product: float


def photon_number_fock(state: StateVector) -> float:
    """Mean photon number sum_m m |amps[m]|^2 of a unit-norm state."""
    _require_normalized(state)
    weights = np.abs(state.amps) ** 2
    return float(np.dot(np.arange(state.dim), weights))


def _consecutive_ratio(
    ctx: ModulusContext, k: int, x: float, config: SeriesConfig
) -> float:
    """Ratio of component k-1 (cyclic) to component k of exp at real x >= 0."""
    den = modn_exp_series(ctx, k, x, config).real
    if den < _RATIO_UNDERFLOW:
        # only reachable for k >= 1 since component 0 is >= 1 at x >= 0;
        # leading terms give x^{k-1}/(k-1)! over x^k/k! = k/x, with
        # relative corrections O(x^n) far below any tolerance here
        return k / x
    num = modn_exp_series(ctx, (k - 1) % ctx.n, x, config).real
    return num / den


def photon_number_formula(
    ctx: ModulusContext,
    k: int,
    alpha: complex,
    config: SeriesConfig = DEFAULT_SERIES,
) -> float:
    """Mean photon number |alpha|^2 * (k-1 component / k component) at |alpha|^2.

    The index shift is cyclic, so k = 0 divides the top component by
    the bottom one.  For n = 2 this reduces to |alpha|^2 tanh|alpha|^2
    (even cat) and |alpha|^2 coth|alpha|^2 (odd cat); as alpha -> 0 the
    value approaches k, the photon content of the kitten states.
    """
    check_component_index(ctx, k)
    alpha = complex(alpha)
    x = abs(alpha) ** 2
    if x == 0.0:
        if k >= 1:
            raise DegenerateNormalizationError(
                f"component {k} of the zero-amplitude state has zero norm"
            )
        return 0.0
    return x * _consecutive_ratio(ctx, k, x, config)


def _require_normalized(state: StateVector) -> None:
    nrm = state.norm()
    if abs(nrm - 1.0) > _NORM_SLACK:
        raise UnnormalizedStateError(
            f"expected a unit-norm state, got norm {nrm:.12g}"
        )


def uncertainty_product(state: StateVector) -> Uncertainty:
    """Quadrature spreads of a unit-norm state from matrix expectations.

    Variances come from the truncated matrix realizations of q and p;
    both are Hermitian, so second moments are squared norms of q|psi>
    and p|psi>.  The creation part of each quadrature pushes one unit
    of weight past the cutoff, which for a tail-certified state costs
    less than the certification budget.
    """
    _require_normalized(state)
    a, ad = ladder_operators(state.dim)
    q = (a + ad) / math.sqrt(2.0)
    p = (a - ad) / (1j * math.sqrt(2.0))
    amps = state.amps
    qv = q @ amps
    pv = p @ amps
    mean_q = float(np.vdot(amps, qv).real)
    mean_p = float(np.vdot(amps, pv).real)
    var_q = max(float(np.vdot(qv, qv).real) - mean_q**2, 0.0)
    var_p = max(float(np.vdot(pv, pv).real) - mean_p**2, 0.0)
    dq = math.sqrt(var_q)
    dp = math.sqrt(var_p)
    return Uncertainty(delta_q=dq, delta_p=dp, product=dq * dp)


def uncertainty_formula(
    ctx: ModulusContext,
    k: int,
    alpha: complex,
    config: SeriesConfig = DEFAULT_SERIES,
) -> float:
    """Closed-form uncertainty product, valid for modulus n >= 3 only.

    For n >= 3 the states have <a> = <a^2> = 0 by residue-class
    orthogonality, so both quadratures share one variance and

        delta_q * delta_p = (1 + 2 <N>) / 2 ,

    approaching (2k + 1)/2 as alpha -> 0.  For n = 2 the interference
    term alpha^2 + conj(alpha)^2 survives and no single product formula
    applies; use cat_uncertainty_check instead.
    """
    if ctx.n < 3:
        raise UnsupportedFormulaError(
            "the symmetric product formula needs modulus n >= 3; "
            "for n = 2 see cat_uncertainty_check"
        )
    mean_n = photon_number_formula(ctx, k, alpha, config)
    return 0.5 * (1.0 + 2.0 * mean_n)


@dataclass(frozen=True)
class CatUncertainty:
    """Measured cat-state (n = 2) uncertainties and the squared relation.

    The verifiable statement, which follows from cats being eigenstates
    of a^2 with eigenvalue alpha^2, is

        (2 delta_q delta_p)^2 = (1 + 2<N>)^2 - (alpha^2 + conj(alpha)^2)^2 ;

    relation_residual is the gap between its two sides.  quoted_product
    evaluates the widely quoted unsquared variant
    (1/2) sqrt((1 + 2<N>) - (alpha^2 + conj(alpha)^2)^2) for comparison;
    it is reported, never asserted, and is nan when its radicand is
    negative (which already signals that the unsquared form cannot be
    the general law).
    """

    alpha: complex
    k: int
    mean_photons: float
    delta_q: float
    delta_p: float
    product: float
    relation_lhs: float
    relation_rhs: float
    relation_residual: float
    quoted_product: float


def cat_uncertainty_check(
    alpha: complex,
    k: int,
    dim: int | None = None,
    config: SeriesConfig = DEFAULT_SERIES,
) -> CatUncertainty:
    """Build the cat state |k = 0 or 1> mod 2 and audit its uncertainty."""
    from .core import make_context

    alpha = complex(alpha)
    ctx = make_context(2)
    check_component_index(ctx, k)
    state = kaleidoscope_state(ctx, k, alpha, dim)
    unc = uncertainty_product(state)
    mean_n = photon_number_fock(state)
    cross = (alpha**2 + alpha.conjugate() ** 2).real
    lhs = 4.0 * unc.product**2
    rhs = (1.0 + 2.0 * mean_n) ** 2 - cross**2
    quoted_radicand = (1.0 + 2.0 * mean_n) - cross**2
    quoted = 0.5 * math.sqrt(quoted_radicand) if quoted_radicand >= 0.0 else math.nan
    return CatUncertainty(
        alpha=alpha,
        k=k,
        mean_photons=mean_n,
        delta_q=unc.delta_q,
        delta_p=unc.delta_p,
        product=unc.product,
        relation_lhs=lhs,
        relation_rhs=rhs,
        relation_residual=abs(lhs - rhs),
        quoted_product=quoted,
    )


@dataclass(frozen=True)
class ObservableReport:
    """Photon number and quadrature summary for one kaleidoscope state."""

    n: int
    k: int
    alpha: complex
    dim: int
    mean_photons_formula: float
    mean_photons_fock: float
    delta_q: float
    delta_p: float
    product: float
    product_formula: float | None

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "alpha": self.alpha,
            "dim": self.dim,
            "mean_photons_formula": self.mean_photons_formula,
            "mean_photons_fock": self.mean_photons_fock,
            "delta_q": self.delta_q,
            "delta_p": self.delta_p,
            "product": self.product,
            "product_formula": self.product_formula,
        }


def observable_report(
    ctx: ModulusContext,
    k: int,
    alpha: complex,
    dim: int | None = None,
    config: SeriesConfig = DEFAULT_SERIES,
    state: StateVector | None = None,
) -> ObservableReport:
    """Assemble both observable routes for one state.

    Pass a prebuilt state to avoid constructing it twice; it must match
    the requested component (this is not rechecked beyond dimensions).
    """
    check_component_index(ctx, k)
    alpha = complex(alpha)
    if state is None:
        state = kaleidoscope_state(ctx, k, alpha, dim, config=config)
    unc = uncertainty_product(state)
    mean_formula = photon_number_formula(ctx, k, alpha, config)
    mean_fock = photon_number_fock(state)
    product_formula = None
    if ctx.n >= 3:
        product_formula = uncertainty_formula(ctx, k, alpha, config)
    return ObservableReport(
        n=ctx.n,
        k=k,
        alpha=alpha,
        dim=state.dim,
        mean_photons_formula=mean_formula,
        mean_photons_fock=mean_fock,
        delta_q=unc.delta_q,
        delta_p=unc.delta_p,
        product=unc.product,
        product_formula=product_formula,
    )
