"""Operator-argument mod-2 exponential identities, verified numerically.

For A = alpha * adag and B = beta * a the commutator [A, B] = -alpha*beta
is a scalar, so both operators commute with it and the
Baker-Campbell-Hausdorff factorization e^{A+B} = e^A e^B e^{-[A,B]/2}
holds exactly.  Splitting each exponential into even and odd parts
(operator cosh and sinh) yields a family of identities: mod-2
factorization of e^{A+B}, a q-commutation rule for exchanging e^A and
e^B, four exchange identities for the even/odd parts, and four addition
formulas.  Everything here evaluates both sides on a truncated Fock
space and reports the Frobenius residual on the certified low block;
nothing is trusted symbolically.

One ordering note: products of the even/odd parts of e^A and e^B do not
commute, and the consistent form of the sinh addition formulas keeps
every A-factor to the left, matching the factorization identities they
follow from:

    sinh(A+B) = (sinh A cosh B + cosh A sinh B) e^{-[A,B]/2}
    sinh(A-B) = (sinh A cosh B - cosh A sinh B) e^{+[A,B]/2}

With the A-factors on the left all four addition formulas hold to
roundoff; swapping the factors of the cross term breaks them by O(1).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .core import ModulusContext, check_component_index, make_context
from .errors import NonConvergenceError, UnsafeParameterError

DEFAULT_TOLERANCE = 1e-8
DEFAULT_DIM = 64
MIN_VERIFY_DIM = 32
MAX_VERIFY_AMPLITUDE = 2.0

_CTX2 = make_context(2)


@dataclass(frozen=True)
class IdentityReport:
    """Residual of one operator identity at one parameter point."""

    identity: str
    residual: float
    tolerance: float
    passed: bool
    dim: int
    alpha: complex
    beta: complex

    def as_dict(self) -> dict:
        return {
            "identity": self.identity,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "dim": self.dim,
            "alpha": self.alpha,
            "beta": self.beta,
        }


def operator_modn_exp_all(
    M: np.ndarray,
    ctx: ModulusContext,
    rel_tol: float = 1e-16,
    max_terms: int = 10000,
) -> list[np.ndarray]:
    """All n mod-n exponential components of a square matrix M.

    One Taylor scan M^m / m! feeding n accumulators.  Terms are built
    multiplicatively (T <- T M / (m+1)); the scan closes once the term
    index passes the growth bound min(||M||_F, sqrt(||M||_1 ||M||_inf))
    and the term norm drops below rel_tol times the smallest
    accumulated component norm, or immediately when a term vanishes
    exactly (nilpotent argument).  The components sum to the matrix
    exponential, but expm is never called here; this series is the
    independent route that expm can be checked against.
    """
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"need a square matrix, got shape {M.shape}")
    if max_terms < 1:
        raise ValueError(f"max_terms must be >= 1, got {max_terms}")
    n = ctx.n
    dim = M.shape[0]
    growth = min(
        np.linalg.norm(M, "fro"),
        math.sqrt(np.linalg.norm(M, 1) * np.linalg.norm(M, np.inf)),
    )
    comps = [np.zeros((dim, dim), dtype=complex) for _ in range(n)]
    T = np.eye(dim, dtype=complex)
    comps[0] += T
    m = 0
    while m < max_terms:
        T = T @ M / (m + 1)
        m += 1
        tn = float(np.linalg.norm(T, "fro"))
        if tn == 0.0:
            return comps
        if not math.isfinite(tn):
            raise NonConvergenceError(
                f"matrix series term overflowed at index {m}", last_term=math.inf
            )
        comps[m % n] += T
        if m >= n - 1 and m > growth:
            floor = min(float(np.linalg.norm(C, "fro")) for C in comps)
            if tn <= rel_tol * floor:
                return comps
    raise NonConvergenceError(
        f"matrix series mod {n} did not settle within {max_terms} terms",
        last_term=tn,
    )


def operator_modn_exp(
    M: np.ndarray,
    ctx: ModulusContext,
    s: int,
    rel_tol: float = 1e-16,
    max_terms: int = 10000,
) -> np.ndarray:
    """Component s of the mod-n exponential of a square matrix."""
    check_component_index(ctx, s)
    return operator_modn_exp_all(M, ctx, rel_tol=rel_tol, max_terms=max_terms)[s]


def certified_block_norm(X: np.ndarray) -> float:
    """Frobenius norm of the low quarter block, where truncation is clean.

    Identities involving adag push weight upward, so rows near the
    cutoff are polluted by the truncation itself.  Restricting to
    X[:dim//4+1, :dim//4+1] measures the identity, not the cutoff.
    """
    b = X.shape[0] // 4 + 1
    return float(np.linalg.norm(X[:b, :b], "fro"))


def _check_verify_inputs(alpha: complex, beta: complex, dim: int, tolerance: float):
    if dim < MIN_VERIFY_DIM:
        raise UnsafeParameterError(
            f"identity checks need dim >= {MIN_VERIFY_DIM}, got {dim}; "
            "smaller spaces let truncation pollute the certified block"
        )
    if abs(alpha) > MAX_VERIFY_AMPLITUDE or abs(beta) > MAX_VERIFY_AMPLITUDE:
        raise UnsafeParameterError(
            f"identity checks are certified for |alpha|, |beta| <= "
            f"{MAX_VERIFY_AMPLITUDE:g}, got |alpha| = {abs(alpha):.3g}, "
            f"|beta| = {abs(beta):.3g}"
        )
    if not (tolerance > 0.0 and math.isfinite(tolerance)):
        raise ValueError(f"tolerance must be positive and finite, got {tolerance}")


def _ladder_pair(alpha: complex, beta: complex, dim: int):
    # local import keeps fock free to import identities later if needed
    from .fock import ladder_operators

    a, ad = ladder_operators(dim)
    return alpha * ad, beta * a


def _factorization_residuals(c, A0, A1, B0, B1, S0, S1):
    half = cmath.exp(-0.5 * c)
    return [
        ("even_part_of_exp_sum", certified_block_norm(S0 - (A0 @ B0 + A1 @ B1) * half)),
        ("odd_part_of_exp_sum", certified_block_norm(S1 - (A0 @ B1 + A1 @ B0) * half)),
    ]


def _qcomm_residual(c, EA, EB):
    return [
        ("exp_exchange", certified_block_norm(EA @ EB - cmath.exp(c) * (EB @ EA))),
    ]


def _exchange_residuals(c, A0, A1, B0, B1):
    ch = cmath.cosh(c)
    sh = cmath.sinh(c)
    return [
        ("cosh_cosh_exchange", certified_block_norm(A0 @ B0 - (B0 @ A0 * ch + B1 @ A1 * sh))),
        ("sinh_sinh_exchange", certified_block_norm(A1 @ B1 - (B1 @ A1 * ch + B0 @ A0 * sh))),
        ("cosh_sinh_exchange", certified_block_norm(A0 @ B1 - (B1 @ A0 * ch + B0 @ A1 * sh))),
        ("sinh_cosh_exchange", certified_block_norm(A1 @ B0 - (B0 @ A1 * ch + B1 @ A0 * sh))),
    ]


def _addition_residuals(c, A0, A1, B0, B1, S0p, S1p, S0m, S1m):
    ep = cmath.exp(-0.5 * c)
    em = cmath.exp(0.5 * c)
    return [
        ("cosh_of_sum", certified_block_norm(S0p - (A0 @ B0 + A1 @ B1) * ep)),
        ("cosh_of_difference", certified_block_norm(S0m - (A0 @ B0 - A1 @ B1) * em)),
        ("sinh_of_sum", certified_block_norm(S1p - (A1 @ B0 + A0 @ B1) * ep)),
        ("sinh_of_difference", certified_block_norm(S1m - (A1 @ B0 - A0 @ B1) * em)),
    ]


def _reports(pairs, tolerance, dim, alpha, beta) -> list[IdentityReport]:
    return [
        IdentityReport(
            identity=name,
            residual=res,
            tolerance=tolerance,
            passed=res <= tolerance,
            dim=dim,
            alpha=alpha,
            beta=beta,
        )
        for name, res in pairs
    ]


def verify_mod2_factorization(
    alpha: complex,
    beta: complex,
    dim: int = DEFAULT_DIM,
    tolerance: float = DEFAULT_TOLERANCE,
) -> list[IdentityReport]:
    """Check the even/odd split of e^{A+B} against products of parts."""
    alpha, beta = complex(alpha), complex(beta)
    _check_verify_inputs(alpha, beta, dim, tolerance)
    A, B = _ladder_pair(alpha, beta, dim)
    c = -alpha * beta
    A0, A1 = operator_modn_exp_all(A, _CTX2)
    B0, B1 = operator_modn_exp_all(B, _CTX2)
    S0, S1 = operator_modn_exp_all(A + B, _CTX2)
    pairs = _factorization_residuals(c, A0, A1, B0, B1, S0, S1)
    return _reports(pairs, tolerance, dim, alpha, beta)


def verify_q_commutation(
    alpha: complex,
    beta: complex,
    dim: int = DEFAULT_DIM,
    tolerance: float = DEFAULT_TOLERANCE,
) -> list[IdentityReport]:
    """Check e^A e^B = e^{[A,B]} e^B e^A on the certified block."""
    alpha, beta = complex(alpha), complex(beta)
    _check_verify_inputs(alpha, beta, dim, tolerance)
    A, B = _ladder_pair(alpha, beta, dim)
    c = -alpha * beta
    A0, A1 = operator_modn_exp_all(A, _CTX2)
    B0, B1 = operator_modn_exp_all(B, _CTX2)
    pairs = _qcomm_residual(c, A0 + A1, B0 + B1)
    return _reports(pairs, tolerance, dim, alpha, beta)


def verify_exchange_identities(
    alpha: complex,
    beta: complex,
    dim: int = DEFAULT_DIM,
    tolerance: float = DEFAULT_TOLERANCE,
) -> list[IdentityReport]:
    """Check the four reorderings of even/odd part products."""
    alpha, beta = complex(alpha), complex(beta)
    _check_verify_inputs(alpha, beta, dim, tolerance)
    A, B = _ladder_pair(alpha, beta, dim)
    c = -alpha * beta
    A0, A1 = operator_modn_exp_all(A, _CTX2)
    B0, B1 = operator_modn_exp_all(B, _CTX2)
    pairs = _exchange_residuals(c, A0, A1, B0, B1)
    return _reports(pairs, tolerance, dim, alpha, beta)


def verify_addition_formulas(
    alpha: complex,
    beta: complex,
    dim: int = DEFAULT_DIM,
    tolerance: float = DEFAULT_TOLERANCE,
) -> list[IdentityReport]:
    """Check cosh(A +- B) and sinh(A +- B) addition formulas."""
    alpha, beta = complex(alpha), complex(beta)
    _check_verify_inputs(alpha, beta, dim, tolerance)
    A, B = _ladder_pair(alpha, beta, dim)
    c = -alpha * beta
    A0, A1 = operator_modn_exp_all(A, _CTX2)
    B0, B1 = operator_modn_exp_all(B, _CTX2)
    S0p, S1p = operator_modn_exp_all(A + B, _CTX2)
    S0m, S1m = operator_modn_exp_all(A - B, _CTX2)
    pairs = _addition_residuals(c, A0, A1, B0, B1, S0p, S1p, S0m, S1m)
    return _reports(pairs, tolerance, dim, alpha, beta)


def run_identity_suite(
    alpha: complex,
    beta: complex,
    dim: int = DEFAULT_DIM,
    tolerance: float = DEFAULT_TOLERANCE,
) -> list[IdentityReport]:
    """All eleven identity checks with the component series shared.

    Computing the four mod-2 component batches once and reusing them
    across every identity keeps a full parameter sweep fast.
    """
    alpha, beta = complex(alpha), complex(beta)
    _check_verify_inputs(alpha, beta, dim, tolerance)
    A, B = _ladder_pair(alpha, beta, dim)
    c = -alpha * beta
    A0, A1 = operator_modn_exp_all(A, _CTX2)
    B0, B1 = operator_modn_exp_all(B, _CTX2)
    S0p, S1p = operator_modn_exp_all(A + B, _CTX2)
    S0m, S1m = operator_modn_exp_all(A - B, _CTX2)
    pairs = (
        _factorization_residuals(c, A0, A1, B0, B1, S0p, S1p)
        + _qcomm_residual(c, A0 + A1, B0 + B1)
        + _exchange_residuals(c, A0, A1, B0, B1)
        + _addition_residuals(c, A0, A1, B0, B1, S0p, S1p, S0m, S1m)
    )
    return _reports(pairs, tolerance, dim, alpha, beta)
