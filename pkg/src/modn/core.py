"""Root-of-unity decompositions and mod-n exponential functions.

Any function f analytic at the origin splits into n pieces, one per
residue class of the power-series index mod n:

    f_k(x) = (1/n) * sum_{s=0}^{n-1} qbar^{2sk} f(q^{2s} x),   q^2 = exp(2*pi*i/n),

and f_k keeps exactly the x^{nm+k} terms of f.  Applied to exp this
produces the mod-n exponentials, a family interpolating between exp
(n = 1) and cosh/sinh (n = 2).  Two independent evaluation routes are
provided: the defining power series restricted to one residue class,
and the discrete-Fourier average over rotated copies of exp.  They
agree to roundoff and are kept separate so each can audit the other.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

from .errors import (
    ComponentIndexError,
    EvaluationError,
    InvalidModulusError,
    NonConvergenceError,
)

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class ModulusContext:
    """Modulus n with precomputed powers of the primitive root.

    q2_powers[s] holds q^{2s} = exp(2*pi*i*s/n) and qbar2_powers[s] its
    conjugate, for s = 0..n-1.  Exponents are always reduced mod n, so
    q^{2sk} is q2_powers[(s * k) % n]; building the table once keeps
    every consumer phase-consistent.
    """

    n: int
    q2_powers: tuple[complex, ...]
    qbar2_powers: tuple[complex, ...]

    def q2(self, e: int) -> complex:
        """Return q^{2e}, reducing e mod n."""
        return self.q2_powers[e % self.n]

    def qbar2(self, e: int) -> complex:
        """Return the conjugate root power qbar^{2e}, reducing e mod n."""
        return self.qbar2_powers[e % self.n]


def make_context(n: int) -> ModulusContext:
    """Validate n and build a ModulusContext for it.

    n = 1 is allowed and degenerates to ordinary single-function
    calculus (the only component of exp is exp itself), which makes a
    useful regression anchor.
    """
    if not isinstance(n, int) or isinstance(n, bool):
        raise InvalidModulusError(f"modulus must be an int, got {type(n).__name__}")
    if n < 1:
        raise InvalidModulusError(f"modulus must be >= 1, got {n}")
    q2 = tuple(cmath.rect(1.0, _TWO_PI * s / n) for s in range(n))
    qbar2 = tuple(z.conjugate() for z in q2)
    return ModulusContext(n=n, q2_powers=q2, qbar2_powers=qbar2)


@dataclass(frozen=True)
class SeriesConfig:
    """Termination policy for power-series evaluation.

    A term t_m is accepted and the sum closed once |t_m| drops below
    abs_tol + rel_tol * |partial sum|, but only after the term index
    has passed |z|: before that point the terms of exp-type series can
    still be growing and a small early term proves nothing.
    """

    rel_tol: float = 1e-15
    abs_tol: float = 1e-300
    max_terms: int = 10000

    def __post_init__(self):
        if not (self.rel_tol > 0.0 and math.isfinite(self.rel_tol)):
            raise ValueError(f"rel_tol must be positive and finite, got {self.rel_tol}")
        if not (self.abs_tol >= 0.0 and math.isfinite(self.abs_tol)):
            raise ValueError(f"abs_tol must be >= 0 and finite, got {self.abs_tol}")
        if self.max_terms < 1:
            raise ValueError(f"max_terms must be >= 1, got {self.max_terms}")


DEFAULT_SERIES = SeriesConfig()


def check_component_index(ctx: ModulusContext, k: int) -> None:
    """Raise unless 0 <= k < ctx.n."""
    if not isinstance(k, int) or isinstance(k, bool):
        raise ComponentIndexError(f"component index must be an int, got {type(k).__name__}")
    if not 0 <= k < ctx.n:
        raise ComponentIndexError(
            f"component index {k} out of range for modulus {ctx.n}"
        )


def modn_component(
    f: Callable[[complex], complex],
    ctx: ModulusContext,
    k: int,
    x: complex,
) -> complex:
    """Evaluate the k-th mod-n component of an arbitrary callable f.

    Averages f over the n rotated arguments q^{2s} x with conjugate
    root-of-unity weights.  Requires only n evaluations of f; f must be
    analytic at 0 for the result to mean anything, and must return a
    finite value at every rotated point.
    """
    check_component_index(ctx, k)
    x = complex(x)
    acc = 0j
    for s in range(ctx.n):
        val = complex(f(ctx.q2_powers[s] * x))
        if not (math.isfinite(val.real) and math.isfinite(val.imag)):
            raise EvaluationError(
                f"function returned non-finite value at rotated point index {s}"
            )
        acc += ctx.qbar2_powers[(s * k) % ctx.n] * val
    return acc / ctx.n


def modn_exp_series(
    ctx: ModulusContext,
    s: int,
    z: complex,
    config: SeriesConfig = DEFAULT_SERIES,
) -> complex:
    """Mod-n exponential of index s by direct power series.

    Sums z^{nm+s} / (nm+s)! with multiplicative term updates (never a
    standalone factorial, which would overflow long before the sum
    does).  For n = 2 this is cosh (s = 0) or sinh (s = 1); for n = 1
    it is exp.
    """
    check_component_index(ctx, s)
    z = complex(z)
    n = ctx.n
    # term at m = 0: z^s / s!
    t = 1.0 + 0j
    for j in range(1, s + 1):
        t *= z / j
    total = t
    idx = s
    az = abs(z)
    for _ in range(config.max_terms):
        for j in range(idx + 1, idx + n + 1):
            t *= z / j
        idx += n
        total += t
        if not (math.isfinite(t.real) and math.isfinite(t.imag)):
            raise NonConvergenceError(
                f"series term overflowed at index {idx} for |z| = {az:.3g}",
                last_term=math.inf,
            )
        if idx > az and abs(t) <= config.abs_tol + config.rel_tol * abs(total):
            return total
    raise NonConvergenceError(
        f"series for component {s} mod {n} did not settle within "
        f"{config.max_terms} blocks at |z| = {az:.3g}",
        last_term=abs(t),
    )


def modn_exp_dft(
    ctx: ModulusContext,
    s: int,
    z: complex,
    config: SeriesConfig = DEFAULT_SERIES,
) -> complex:
    """Mod-n exponential of index s as a root-of-unity average of exp.

    Independent of modn_exp_series: cmath.exp does the analytic work
    and only the n-point discrete Fourier average is ours.  Kept as a
    cross-check route; config is accepted for signature symmetry but
    unused.
    """
    del config
    check_component_index(ctx, s)
    return modn_component(cmath.exp, ctx, s, z)


def modn_exp_all(
    ctx: ModulusContext,
    z: complex,
    config: SeriesConfig = DEFAULT_SERIES,
) -> list[complex]:
    """All n series-route components of exp at z in one pass.

    One multiplicative term scan feeding n accumulators; the sum of the
    returned list reconstructs exp(z) to roundoff.  The stopping rule
    watches the smallest accumulator so every component, not just the
    largest, is converged when the scan ends.
    """
    z = complex(z)
    n = ctx.n
    totals = [0j] * n
    t = 1.0 + 0j
    totals[0] = t
    az = abs(z)
    max_idx = config.max_terms * n
    for idx in range(1, max_idx + 1):
        t *= z / idx
        totals[idx % n] += t
        if not (math.isfinite(t.real) and math.isfinite(t.imag)):
            raise NonConvergenceError(
                f"series term overflowed at index {idx} for |z| = {az:.3g}",
                last_term=math.inf,
            )
        if idx >= n and idx > az:
            floor = min(abs(v) for v in totals)
            if abs(t) <= config.abs_tol + config.rel_tol * floor:
                return totals
    raise NonConvergenceError(
        f"joint series mod {n} did not settle within {max_idx} terms at |z| = {az:.3g}",
        last_term=abs(t),
    )


def derivative_index(ctx: ModulusContext, s: int) -> int:
    """Index of the derivative of the s-th mod-n exponential.

    d/dz of component s is component s-1, with 0 wrapping to n-1; after
    n derivatives every component returns to itself, the mod-n analogue
    of exp' = exp.
    """
    check_component_index(ctx, s)
    return (s - 1) % ctx.n
