"""Truncated Fock space: states, ladder operators, displacements.

Everything lives in the first dim number states.  Operators are plain
complex ndarrays; states are thin immutable wrappers around 1-d arrays
so tail bookkeeping and inner products have one home.  The truncation
is certified, not assumed: constructors measure the weight sitting on
the top of the array and refuse to hand back a state that leaks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

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
    TruncationError,
)

DEFAULT_TAIL_TOL = 1e-10
MIN_AUTO_DIM = 16
MAX_AUTO_DIM = 512


def default_dim(alpha: complex, max_dim: int = MAX_AUTO_DIM) -> int:
    """Truncation size that comfortably holds a coherent state of amplitude alpha.

    The photon distribution is Poisson with mean |alpha|^2 and spread
    |alpha|, so mean + 8 spreads + 16 leaves the top of the array
    essentially empty.  Clamped to [16, max_dim].
    """
    a = abs(alpha)
    d = math.ceil(a * a + 8.0 * a + 16.0)
    return max(MIN_AUTO_DIM, min(d, max_dim))


def kaleidoscope_dim(ctx: ModulusContext, alpha: complex, max_dim: int = MAX_AUTO_DIM) -> int:
    """Truncation size for a kaleidoscope family mod ctx.n.

    Coherent-state sizing plus room for at least five occupied levels
    of every residue class (5n covers k = n-1); with fewer, the
    top-two-levels tail check would fire on levels nowhere near the
    cutoff.  The same value for all k lets one family share a dimension.
    """
    return max(default_dim(alpha, max_dim), min(5 * ctx.n, max_dim))


@dataclass(frozen=True)
class StateVector:
    """Immutable vector of number-state amplitudes amps[m] = <m|psi>."""

    amps: np.ndarray

    def __post_init__(self):
        arr = np.array(self.amps, dtype=complex)
        if arr.ndim != 1 or arr.size < 2:
            raise ValueError("state needs a 1-d amplitude array of length >= 2")
        arr.flags.writeable = False
        object.__setattr__(self, "amps", arr)

    @property
    def dim(self) -> int:
        return int(self.amps.size)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def tail_mass(self) -> float:
        """Probability weight on the top two levels of the truncation."""
        top = np.abs(self.amps[-2:]) ** 2
        return float(top.sum())

    def inner(self, other: "StateVector") -> complex:
        """<self|other>, conjugating self."""
        if other.dim != self.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
        return complex(np.vdot(self.amps, other.amps))


def ladder_operators(dim: int) -> tuple[np.ndarray, np.ndarray]:
    """Annihilation and creation matrices on the first dim number states.

    a[m-1, m] = sqrt(m); the creation operator is the transpose.  Both
    are nilpotent here, which later turns operator exponentials into
    finite sums.
    """
    if dim < 2:
        raise ValueError(f"dim must be >= 2, got {dim}")
    a = np.zeros((dim, dim), dtype=complex)
    ms = np.arange(1, dim)
    a[ms - 1, ms] = np.sqrt(ms)
    return a, a.conj().T


def coherent_state(
    alpha: complex,
    dim: int | None = None,
    tail_tol: float = DEFAULT_TAIL_TOL,
) -> StateVector:
    """Coherent state amplitudes e^{-|alpha|^2/2} alpha^m / sqrt(m!).

    Built by the recurrence amps[m] = amps[m-1] * alpha / sqrt(m); no
    factorials ever materialize.  Raises TruncationError when the top
    two levels carry more than tail_tol probability.
    """
    alpha = complex(alpha)
    if dim is None:
        dim = default_dim(alpha)
    if dim < 2:
        raise ValueError(f"dim must be >= 2, got {dim}")
    amps = np.zeros(dim, dtype=complex)
    amps[0] = math.exp(-0.5 * abs(alpha) ** 2)
    for m in range(1, dim):
        amps[m] = amps[m - 1] * alpha / math.sqrt(m)
    state = StateVector(amps)
    if state.tail_mass() > tail_tol:
        raise TruncationError(
            f"coherent state of |alpha| = {abs(alpha):.3g} leaks "
            f"{state.tail_mass():.3e} past dim = {dim}",
            suggested_dim=default_dim(alpha),
        )
    return state


def _exp_creation_band(alpha: complex, dim: int) -> np.ndarray:
    """exp(alpha * adag) on the truncated space, summed exactly.

    adag is nilpotent, so the exponential series terminates: term j is
    precisely the j-th subdiagonal, E[m+j, m] = alpha^j sqrt((m+j)!/m!) / j!.
    Filling diagonal by diagonal with the recurrence
    d_j[m] = d_{j-1}[m] * alpha * sqrt(m+j) / j is the series with the
    matrix products stripped out.
    """
    E = np.eye(dim, dtype=complex)
    d = np.ones(dim, dtype=complex)
    for j in range(1, dim):
        m = np.arange(dim - j)
        d = d[: dim - j] * alpha * np.sqrt(m + j) / j
        E[m + j, m] = d
    return E


def displacement_operator(alpha: complex, dim: int) -> np.ndarray:
    """Displacement D(alpha) = exp(alpha adag - conj(alpha) a), truncated.

    Uses the normal-ordered factorization
    D = e^{-|alpha|^2/2} exp(alpha adag) exp(-conj(alpha) a); each
    factor is a terminating series in a nilpotent operator, so the only
    inexactness is roundoff plus the truncation itself.  Unitarity
    holds on the low number states and degrades near the cutoff, which
    is the expected truncation artifact.
    """
    alpha = complex(alpha)
    if dim < 2:
        raise ValueError(f"dim must be >= 2, got {dim}")
    E = _exp_creation_band(alpha, dim)
    # exp(y a) is the transpose of exp(y adag): same band values, upper side.
    F = _exp_creation_band(-alpha.conjugate(), dim).T
    return math.exp(-0.5 * abs(alpha) ** 2) * (E @ F)


def modn_displacement(
    ctx: ModulusContext,
    k: int,
    alpha: complex,
    dim: int,
) -> np.ndarray:
    """Component k of the displacement operator under alpha -> q^2 alpha.

    The root-of-unity average (1/n) sum_j qbar^{2jk} D(q^{2j} alpha).
    Not unitary; applied to the vacuum it produces an unnormalized
    kaleidoscope state whose norm the caller can measure.
    """
    check_component_index(ctx, k)
    alpha = complex(alpha)
    acc = np.zeros((dim, dim), dtype=complex)
    for j in range(ctx.n):
        rot = ctx.q2_powers[j] * alpha
        acc += ctx.qbar2_powers[(j * k) % ctx.n] * displacement_operator(rot, dim)
    return acc / ctx.n


def kaleidoscope_state(
    ctx: ModulusContext,
    k: int,
    alpha: complex,
    dim: int | None = None,
    tail_tol: float = DEFAULT_TAIL_TOL,
    config: SeriesConfig = DEFAULT_SERIES,
) -> StateVector:
    """Normalized mod-n component k of a coherent state of amplitude alpha.

    Only number states with m = k (mod n) are occupied:

        amps[ns+k] = alpha^{ns+k} / sqrt((ns+k)!) / sqrt(ke(|alpha|^2))

    where ke is the k-th mod-n exponential, evaluated by its scalar
    series rather than by norming the vector, so the normalization does
    not inherit truncation error.  n = 2 gives the even and odd cat
    states; alpha = 0 with k >= 1 has nothing to normalize and raises.
    """
    check_component_index(ctx, k)
    alpha = complex(alpha)
    n = ctx.n
    if alpha == 0 and k >= 1:
        raise DegenerateNormalizationError(
            f"component {k} of the zero-amplitude state has zero norm"
        )
    if dim is None:
        dim = kaleidoscope_dim(ctx, alpha)
    if dim < 2:
        raise ValueError(f"dim must be >= 2, got {dim}")
    if dim <= k:
        raise ValueError(f"dim = {dim} cannot hold component index {k}")
    norm_sq = modn_exp_series(ctx, k, abs(alpha) ** 2, config).real
    if norm_sq <= 0.0:
        raise DegenerateNormalizationError(
            f"normalization underflowed for component {k} at |alpha| = {abs(alpha):.3g}"
        )
    root_norm = math.sqrt(norm_sq)
    amps = np.zeros(dim, dtype=complex)
    # unnormalized amplitude alpha^m / sqrt(m!) walked up one level at a time
    t = 1.0 + 0j
    for j in range(1, k + 1):
        t *= alpha / math.sqrt(j)
    occupied = []
    m = k
    while True:
        amps[m] = t / root_norm
        occupied.append(m)
        nxt = m + n
        if nxt >= dim:
            break
        for j in range(m + 1, nxt + 1):
            t *= alpha / math.sqrt(j)
        m = nxt
    state = StateVector(amps)
    # top two occupied levels, not the literal top two slots: for n >= 3
    # the last array entries are structurally zero and prove nothing.
    top = occupied[-2:]
    leak = float(sum(abs(amps[m]) ** 2 for m in top))
    if leak > tail_tol:
        raise TruncationError(
            f"kaleidoscope component {k} mod {n} at |alpha| = {abs(alpha):.3g} "
            f"leaks {leak:.3e} past dim = {dim}",
            suggested_dim=max(kaleidoscope_dim(ctx, alpha), dim + 2 * n),
        )
    return state
