"""Coordinate-space wave functions and mod-n Hermite generating sums.

The position representation of a kaleidoscope state is a root-of-unity
superposition of Gaussians,

    <x|k> = e^{-x^2/2} / (pi^{1/4} sqrt(ke(|alpha|^2))) * ke^{-alpha^2/2 + sqrt(2) alpha x},

where the mod-n component acts on alpha.  The same component of
e^{-z^2+2zx} is the generating function of the Hermite polynomials of
order = k (mod n), which provides the independent series route used to
audit the Gaussian one.  Hermite polynomials follow the physicists'
convention (weight e^{-x^2}).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson

from .core import (
    DEFAULT_SERIES,
    ModulusContext,
    SeriesConfig,
    check_component_index,
    modn_component,
    modn_exp_series,
)
from .errors import (
    ComponentIndexError,
    DegenerateNormalizationError,
    HermiteRangeError,
    NonConvergenceError,
    UnsafeParameterError,
)
from .fock import default_dim

_PI_QUARTER = math.pi ** 0.25
_SQRT2 = math.sqrt(2.0)

# Cramer's bound |H_m(x)| <= K 2^{m/2} sqrt(m!) e^{x^2/2} with K < 1.086435;
# it turns the generating series into one with factorially decaying majorant.
_CRAMER_K = 1.086435

MAX_GENERATING_Z = 5.0
GRID_CERTIFICATION_TOL = 1e-6
DEFAULT_GRID_SAMPLES = 1201


def hermite_values(m_max: int, x: float) -> np.ndarray:
    """H_0(x) .. H_m_max(x) by the three-term recurrence.

    H_{m+1} = 2x H_m - 2m H_{m-1}; no factorials, no closed forms.
    Values grow roughly like 2^{m/2} sqrt(m!) e^{x^2/2}, so high orders
    at large |x| overflow doubles; that raises rather than returning inf.
    """
    if m_max < 0:
        raise ValueError(f"m_max must be >= 0, got {m_max}")
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"x must be finite, got {x}")
    vals = np.empty(m_max + 1, dtype=float)
    vals[0] = 1.0
    if m_max >= 1:
        vals[1] = 2.0 * x
    # overflow is detected after the fact, so the intermediate inf/nan
    # arithmetic should stay quiet
    with np.errstate(over="ignore", invalid="ignore"):
        for m in range(1, m_max):
            vals[m + 1] = 2.0 * x * vals[m] - 2.0 * m * vals[m - 1]
    if not np.all(np.isfinite(vals)):
        bad = int(np.argmax(~np.isfinite(vals)))
        raise HermiteRangeError(
            f"Hermite recurrence overflowed at order {bad} for x = {x:g}"
        )
    return vals


def modn_gaussian_exp(
    ctx: ModulusContext, k: int, z: complex, x: float
) -> complex:
    """Component k of e^{-z^2+2zx} under rotations of z.

    The n-term composite Gaussian route: modn_component applied to
    f(w) = exp(-w^2 + 2wx).  For n = 2 this is e^{-z^2}cosh(2zx) at
    k = 0 and e^{-z^2}sinh(2zx) at k = 1.
    """
    x = float(x)
    return modn_component(lambda w: cmath.exp(-w * w + 2.0 * w * x), ctx, k, z)


def modn_hermite_generating_sum(
    ctx: ModulusContext,
    k: int,
    z: complex,
    x: float,
    config: SeriesConfig = DEFAULT_SERIES,
) -> complex:
    """sum_s z^{ns+k}/(ns+k)! H_{ns+k}(x), the series route.

    Independent of modn_gaussian_exp: Hermite values come from the
    recurrence and coefficients from multiplicative updates.  The tail
    is closed using the Cramer envelope, which caps the remaining class
    terms by a geometric series once the index passes 2|z|^2.
    """
    check_component_index(ctx, k)
    z = complex(z)
    x = float(x)
    az = abs(z)
    if az > MAX_GENERATING_Z:
        raise UnsafeParameterError(
            f"generating sum is certified for |z| <= {MAX_GENERATING_Z:g}, "
            f"got |z| = {az:.3g}"
        )
    n = ctx.n
    env_scale = _CRAMER_K * math.exp(0.5 * x * x)
    sq2z = _SQRT2 * az
    total = 0j
    c = 1.0 + 0j  # z^m / m!
    e = 1.0  # (sqrt(2)|z|)^m / sqrt(m!), the envelope coefficient
    term_peak = 1.0  # largest |c_m H_m| seen: the roundoff scale
    h_prev = 0.0
    h_cur = 1.0  # H_0
    m = 0
    max_steps = config.max_terms * n
    while m <= max_steps:
        term_peak = max(term_peak, abs(c) * abs(h_cur))
        if m % n == k:
            total += c * h_cur
            r = sq2z / math.sqrt(m + 1.0)
            if m >= k and r < 1.0:
                tail = env_scale * e * r / (1.0 - r)
                # the 1e-16 * term_peak floor is the accuracy limit set
                # by roundoff in the largest terms; components that
                # vanish identically (odd Hermite orders at x = 0)
                # terminate through it instead of running to overflow
                threshold = (
                    config.abs_tol
                    + config.rel_tol * abs(total)
                    + 1e-16 * term_peak
                )
                if tail <= threshold:
                    return total
        # advance H, coefficient, and envelope from order m to m+1
        h_prev, h_cur = h_cur, 2.0 * x * h_cur - 2.0 * m * h_prev
        if not math.isfinite(h_cur):
            raise HermiteRangeError(
                f"Hermite recurrence overflowed at order {m + 1} for x = {x:g}"
            )
        c *= z / (m + 1)
        e *= sq2z / math.sqrt(m + 1.0)
        m += 1
    raise NonConvergenceError(
        f"generating sum mod {n} did not settle within {max_steps} orders "
        f"at |z| = {az:.3g}, x = {x:g}",
        last_term=abs(c * h_cur),
    )


def _norm_constant(
    ctx: ModulusContext, k: int, alpha: complex, config: SeriesConfig
) -> float:
    norm_sq = modn_exp_series(ctx, k, abs(alpha) ** 2, config).real
    if norm_sq <= 0.0:
        raise DegenerateNormalizationError(
            f"component {k} of the zero-amplitude state has zero norm"
        )
    return math.sqrt(norm_sq)


def wavefunction(
    ctx: ModulusContext,
    k: int,
    alpha: complex,
    x: float,
    config: SeriesConfig = DEFAULT_SERIES,
) -> complex:
    """<x|k> for the normalized kaleidoscope state of amplitude alpha.

    alpha^2 is the complex square, so the value is genuinely complex
    for complex alpha; densities are |psi|^2.
    """
    check_component_index(ctx, k)
    alpha = complex(alpha)
    x = float(x)
    root_norm = _norm_constant(ctx, k, alpha, config)
    comp = modn_component(
        lambda w: cmath.exp(-0.5 * w * w + _SQRT2 * w * x), ctx, k, alpha
    )
    return math.exp(-0.5 * x * x) / (_PI_QUARTER * root_norm) * comp


def wavefunction_samples(
    ctx: ModulusContext,
    k: int,
    alpha: complex,
    xs: np.ndarray,
    config: SeriesConfig = DEFAULT_SERIES,
) -> np.ndarray:
    """Vectorized wavefunction over a sample array (same math as above)."""
    check_component_index(ctx, k)
    alpha = complex(alpha)
    xs = np.asarray(xs, dtype=float)
    root_norm = _norm_constant(ctx, k, alpha, config)
    acc = np.zeros(xs.shape, dtype=complex)
    for s in range(ctx.n):
        w = ctx.q2_powers[s] * alpha
        coeff = ctx.qbar2_powers[(s * k) % ctx.n]
        acc += coeff * np.exp(-0.5 * w * w + _SQRT2 * w * xs)
    acc /= ctx.n
    return np.exp(-0.5 * xs * xs) / (_PI_QUARTER * root_norm) * acc


def quartet_closed_form(k: int, alpha: complex, x: float) -> complex:
    """The four explicit n = 4 wave functions, evaluated literally.

    Numerators pair e^{-alpha^2/2} hyperbolic with e^{+alpha^2/2}
    trigonometric factors of sqrt(2) alpha x; normalizations are
    cosh |alpha|^2 +- cos |alpha|^2 and sinh |alpha|^2 +- sin |alpha|^2.
    The minus-type normalizations cancel catastrophically as alpha -> 0,
    so below |alpha|^2 = 1e-4 they switch to their leading Taylor terms.
    """
    if not isinstance(k, int) or isinstance(k, bool) or not 0 <= k <= 3:
        raise ComponentIndexError(f"quartet index must be 0..3, got {k}")
    alpha = complex(alpha)
    x = float(x)
    if alpha == 0 and k >= 1:
        raise DegenerateNormalizationError(
            f"component {k} of the zero-amplitude state has zero norm"
        )
    t = abs(alpha) ** 2
    w = _SQRT2 * alpha * x
    gm = cmath.exp(-0.5 * alpha * alpha)
    gp = cmath.exp(0.5 * alpha * alpha)
    if t < 1e-4:
        # cosh t - cos t = t^2 (1 + t^4/360 + ...),
        # sinh t - sin t = (t^3/3)(1 + t^4/840 + ...)
        norm_minus_even = t * t * (1.0 + t**4 / 360.0)
        norm_minus_odd = t**3 / 3.0 * (1.0 + t**4 / 840.0)
    else:
        norm_minus_even = math.cosh(t) - math.cos(t)
        norm_minus_odd = math.sinh(t) - math.sin(t)
    if k == 0:
        num = gm * cmath.cosh(w) + gp * cmath.cos(w)
        norm = math.cosh(t) + math.cos(t)
    elif k == 1:
        num = gm * cmath.sinh(w) + gp * cmath.sin(w)
        norm = math.sinh(t) + math.sin(t)
    elif k == 2:
        num = gm * cmath.cosh(w) - gp * cmath.cos(w)
        norm = norm_minus_even
    else:
        num = gm * cmath.sinh(w) - gp * cmath.sin(w)
        norm = norm_minus_odd
    if norm <= 0.0:
        raise DegenerateNormalizationError(
            f"quartet component {k} normalization vanished at |alpha| = {abs(alpha):.3g}"
        )
    return math.exp(-0.5 * x * x) / (_SQRT2 * _PI_QUARTER) * num / math.sqrt(norm)


@dataclass(frozen=True)
class WaveFunctionGrid:
    """Sampled wave function with its normalization audit."""

    x: np.ndarray
    psi: np.ndarray
    prob: np.ndarray
    n: int
    k: int
    alpha: complex
    dim: int
    integral: float
    certified: bool

    def __post_init__(self):
        for name in ("x", "psi", "prob"):
            arr = getattr(self, name)
            arr.flags.writeable = False


def default_grid_halfwidth(alpha: complex) -> float:
    """Half-width covering the displaced Gaussians plus 8 vacuum widths."""
    return max(8.0, _SQRT2 * abs(alpha) + 8.0)


def probability_grid(
    ctx: ModulusContext,
    k: int,
    alpha: complex,
    x_min: float | None = None,
    x_max: float | None = None,
    samples: int = DEFAULT_GRID_SAMPLES,
    config: SeriesConfig = DEFAULT_SERIES,
) -> WaveFunctionGrid:
    """Sample |psi|^2 on an even grid and certify its normalization.

    Simpson's rule needs an odd sample count.  The grid is certified
    when the integral lands within 1e-6 of 1; a wider range or more
    samples fixes an uncertified grid.
    """
    check_component_index(ctx, k)
    alpha = complex(alpha)
    if samples < 3 or samples % 2 == 0:
        raise ValueError(f"samples must be odd and >= 3, got {samples}")
    if x_min is None and x_max is None:
        half = default_grid_halfwidth(alpha)
        x_min, x_max = -half, half
    if x_min is None or x_max is None:
        raise ValueError("give both x_min and x_max, or neither")
    x_min, x_max = float(x_min), float(x_max)
    if not (x_min < x_max):
        raise ValueError(f"need x_min < x_max, got [{x_min}, {x_max}]")
    xs = np.linspace(x_min, x_max, samples)
    psi = wavefunction_samples(ctx, k, alpha, xs, config)
    prob = np.abs(psi) ** 2
    integral = float(simpson(prob, x=xs))
    certified = abs(integral - 1.0) <= GRID_CERTIFICATION_TOL
    return WaveFunctionGrid(
        x=xs,
        psi=psi,
        prob=prob,
        n=ctx.n,
        k=k,
        alpha=alpha,
        dim=default_dim(alpha),
        integral=integral,
        certified=certified,
    )
