"""Command-line surface: eval, state, grid, verify.

Output is deterministic byte for byte: every float is rendered with 17
significant digits in lowercase scientific notation, JSON keys keep
insertion order, CSV rows follow sample order, verify sweeps use a
fixed seed.  Exit codes: 0 success, 1 verification failure, 2 invalid
input, 3 numerical failure, 4 uncertified output.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from .coordinate import default_grid_halfwidth, probability_grid
from .core import (
    SeriesConfig,
    check_component_index,
    make_context,
    modn_exp_all,
    modn_exp_dft,
)
from .errors import (
    ComponentIndexError,
    DegenerateNormalizationError,
    EvaluationError,
    HermiteRangeError,
    InvalidModulusError,
    NonConvergenceError,
    TruncationError,
    UnnormalizedStateError,
    UnsafeParameterError,
    UnsupportedFormulaError,
)
from .fock import MAX_AUTO_DIM, kaleidoscope_dim, kaleidoscope_state
from .identities import (
    run_identity_suite,
    verify_addition_formulas,
    verify_exchange_identities,
    verify_mod2_factorization,
    verify_q_commutation,
)
from .observables import observable_report

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INVALID = 2
EXIT_NUMERICAL = 3
EXIT_UNCERTIFIED = 4

_INVALID_INPUT = (
    InvalidModulusError,
    ComponentIndexError,
    UnsafeParameterError,
    UnsupportedFormulaError,
)
_NUMERICAL_FAILURE = (
    NonConvergenceError,
    TruncationError,
    DegenerateNormalizationError,
    EvaluationError,
    HermiteRangeError,
    UnnormalizedStateError,
)

_VERIFY_SWEEP_SEED = 20240817


def fmt(v: float) -> str:
    """One float, 17 significant digits, lowercase scientific."""
    return f"{float(v):.16e}"


def fmt_complex(z: complex) -> str:
    z = complex(z)
    sign = "+" if z.imag >= 0 or math.isnan(z.imag) else "-"
    return f"{fmt(z.real)}{sign}{fmt(abs(z.imag))}j"


def render_json(obj) -> str:
    """Small deterministic JSON emitter.

    Floats go through fmt so identical inputs yield identical bytes;
    complex values become {"re": ..., "im": ...} objects.  Insertion
    order of dicts is preserved.
    """
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt(float(obj))
    if isinstance(obj, (complex, np.complexfloating)):
        z = complex(obj)
        return f'{{"re": {fmt(z.real)}, "im": {fmt(z.imag)}}}'
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        inner = ", ".join(
            f"{json.dumps(str(key))}: {render_json(val)}" for key, val in obj.items()
        )
        return "{" + inner + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(render_json(v) for v in obj) + "]"
    raise TypeError(f"cannot render {type(obj).__name__} as JSON")


def _write_output(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")


def _max_dim_cap() -> int:
    raw = os.environ.get("MODN_MAX_DIM")
    if raw is None:
        return MAX_AUTO_DIM
    try:
        cap = int(raw)
    except ValueError:
        raise UnsafeParameterError(f"MODN_MAX_DIM must be an integer, got {raw!r}")
    if cap < 2:
        raise UnsafeParameterError(f"MODN_MAX_DIM must be >= 2, got {cap}")
    return cap


def _resolve_dim(ctx, alpha: complex, requested: int | None) -> int:
    cap = _max_dim_cap()
    dim = requested if requested is not None else kaleidoscope_dim(ctx, alpha, max_dim=cap)
    return min(dim, cap)


def cmd_eval(args) -> int:
    ctx = make_context(args.n)
    check_component_index(ctx, args.k)
    z = complex(args.z_re, args.z_im)
    config = (
        SeriesConfig(rel_tol=args.rel_tol) if args.rel_tol is not None else SeriesConfig()
    )
    series = modn_exp_all(ctx, z, config)[args.k]
    dft = modn_exp_dft(ctx, args.k, z)
    lines = [
        f"series={fmt_complex(series)}",
        f"dft={fmt_complex(dft)}",
        f"diff={fmt(abs(series - dft))}",
    ]
    _write_output("\n".join(lines), args.output)
    return EXIT_OK


def cmd_state(args) -> int:
    ctx = make_context(args.n)
    check_component_index(ctx, args.k)
    alpha = complex(args.alpha_re, args.alpha_im)
    dim = _resolve_dim(ctx, alpha, args.dim)
    state = kaleidoscope_state(ctx, args.k, alpha, dim)
    report = observable_report(ctx, args.k, alpha, dim=dim, state=state)
    payload = {
        "n": ctx.n,
        "k": args.k,
        "alpha": alpha,
        "dim": state.dim,
        "amps": [complex(a) for a in state.amps],
        "mean_photons": report.mean_photons_formula,
        "delta_q": report.delta_q,
        "delta_p": report.delta_p,
        "product": report.product,
    }
    _write_output(render_json(payload), args.output)
    return EXIT_OK


def _grid_csv(grid) -> str:
    meta = (
        f"# n={grid.n} k={grid.k} alpha={fmt_complex(grid.alpha)} "
        f"dim={grid.dim} integral={fmt(grid.integral)}"
    )
    rows = [meta, "x,psi_re,psi_im,prob"]
    for x, psi, prob in zip(grid.x, grid.psi, grid.prob):
        rows.append(f"{fmt(x)},{fmt(psi.real)},{fmt(psi.imag)},{fmt(prob)}")
    return "\n".join(rows)


def _grid_json(grid) -> str:
    payload = {
        "n": grid.n,
        "k": grid.k,
        "alpha": grid.alpha,
        "dim": grid.dim,
        "integral": grid.integral,
        "certified": grid.certified,
        "x": [float(v) for v in grid.x],
        "psi_re": [float(v.real) for v in grid.psi],
        "psi_im": [float(v.imag) for v in grid.psi],
        "prob": [float(v) for v in grid.prob],
    }
    return render_json(payload)


def cmd_grid(args) -> int:
    ctx = make_context(args.n)
    alpha = complex(args.alpha_re, args.alpha_im)
    grid = probability_grid(
        ctx,
        args.k,
        alpha,
        x_min=args.x_min,
        x_max=args.x_max,
        samples=args.samples,
    )
    text = _grid_csv(grid) if args.format == "csv" else _grid_json(grid)
    _write_output(text, args.output)
    if not grid.certified:
        half = default_grid_halfwidth(alpha)
        sys.stderr.write(
            f"grid integral {fmt(grid.integral)} misses 1 by more than "
            f"{1e-6:g}; try --x-min {-half:g} --x-max {half:g} or more samples\n"
        )
        return EXIT_UNCERTIFIED
    return EXIT_OK


def _verify_draws(args) -> list[tuple[complex, complex]]:
    explicit = any(
        getattr(args, name) is not None
        for name in ("alpha_re", "alpha_im", "beta_re", "beta_im")
    )
    if explicit:
        alpha = complex(args.alpha_re or 0.0, args.alpha_im or 0.0)
        beta = complex(args.beta_re or 0.0, args.beta_im or 0.0)
        return [(alpha, beta)]
    rng = np.random.default_rng(_VERIFY_SWEEP_SEED)
    draws = [(0j, 0j)]
    for _ in range(7):
        re_a, im_a, re_b, im_b = rng.uniform(-math.sqrt(0.5), math.sqrt(0.5), 4)
        draws.append((complex(re_a, im_a), complex(re_b, im_b)))
    return draws


_SUITES = {
    "mod2-identities": lambda a, b, d, t: (
        verify_mod2_factorization(a, b, d, t) + verify_exchange_identities(a, b, d, t)
    ),
    "addition": lambda a, b, d, t: verify_addition_formulas(a, b, d, t),
    "q-commutation": lambda a, b, d, t: verify_q_commutation(a, b, d, t),
    "all": lambda a, b, d, t: run_identity_suite(a, b, d, t),
}


def cmd_verify(args) -> int:
    reports = []
    for alpha, beta in _verify_draws(args):
        reports.extend(_SUITES[args.suite](alpha, beta, args.dim, args.tolerance))
    _write_output(render_json([r.as_dict() for r in reports]), args.output)
    if all(r.passed for r in reports):
        return EXIT_OK
    failed = sum(1 for r in reports if not r.passed)
    sys.stderr.write(f"{failed} of {len(reports)} identity checks failed\n")
    return EXIT_VERIFY_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="modn",
        description=(
            "Mod-n exponential functions and kaleidoscope superpositions "
            "of coherent states"
        ),
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p_eval = sub.add_parser(
        "eval", help="evaluate one mod-n exponential by both routes"
    )
    p_eval.add_argument("--n", type=int, required=True, help="modulus (>= 1)")
    p_eval.add_argument("--k", type=int, required=True, help="component index")
    p_eval.add_argument("--z-re", type=float, default=0.0)
    p_eval.add_argument("--z-im", type=float, default=0.0)
    p_eval.add_argument("--rel-tol", type=float, default=None)
    p_eval.add_argument("--output", default=None)
    p_eval.set_defaults(handler=cmd_eval)

    p_state = sub.add_parser(
        "state", help="build a kaleidoscope state and report observables (JSON)"
    )
    p_state.add_argument("--n", type=int, required=True)
    p_state.add_argument("--k", type=int, required=True)
    p_state.add_argument("--alpha-re", type=float, default=0.0)
    p_state.add_argument("--alpha-im", type=float, default=0.0)
    p_state.add_argument("--dim", type=int, default=None)
    p_state.add_argument("--output", default=None)
    p_state.set_defaults(handler=cmd_state)

    p_grid = sub.add_parser(
        "grid", help="sample |psi(x)|^2 on a grid and certify normalization"
    )
    p_grid.add_argument("--n", type=int, required=True)
    p_grid.add_argument("--k", type=int, required=True)
    p_grid.add_argument("--alpha-re", type=float, default=0.0)
    p_grid.add_argument("--alpha-im", type=float, default=0.0)
    p_grid.add_argument("--x-min", type=float, default=None)
    p_grid.add_argument("--x-max", type=float, default=None)
    p_grid.add_argument("--samples", type=int, default=1201)
    p_grid.add_argument("--format", choices=("csv", "json"), default="csv")
    p_grid.add_argument("--output", default=None)
    p_grid.set_defaults(handler=cmd_grid)

    p_verify = sub.add_parser(
        "verify", help="run operator-identity residual checks (JSON reports)"
    )
    p_verify.add_argument(
        "--suite",
        choices=tuple(_SUITES),
        default="all",
    )
    p_verify.add_argument("--alpha-re", type=float, default=None)
    p_verify.add_argument("--alpha-im", type=float, default=None)
    p_verify.add_argument("--beta-re", type=float, default=None)
    p_verify.add_argument("--beta-im", type=float, default=None)
    p_verify.add_argument("--dim", type=int, default=64)
    p_verify.add_argument("--tolerance", type=float, default=1e-8)
    p_verify.add_argument("--output", default=None)
    p_verify.set_defaults(handler=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else EXIT_OK
    try:
        return args.handler(args)
    except _INVALID_INPUT as exc:
        sys.stderr.write(f"invalid input: {exc}\n")
        return EXIT_INVALID
    except _NUMERICAL_FAILURE as exc:
        sys.stderr.write(f"numerical failure: {exc}\n")
        return EXIT_NUMERICAL
    except ValueError as exc:
        sys.stderr.write(f"invalid input: {exc}\n")
        return EXIT_INVALID
    except ArithmeticError as exc:
        sys.stderr.write(f"numerical failure: {exc}\n")
        return EXIT_NUMERICAL


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
