"""Command-line front door.

Subcommands evaluate the pair measures, generate decompositions, report the
extremal structure for a given p, run the unlocking sweep, and drive the
detection simulators. Output is JSON (CSV for sweep rows) with numbers
rounded to 12 significant digits, so identical invocations produce
byte-identical output.

Exit codes: 0 success, 2 usage error, 3 domain error, 4 internal invariant
violation.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import hidden, unlock
from .crypto import (
    B92Spec,
    BB84Spec,
    EveStrategy,
    b92_detection_analytic,
    bb84_detection_analytic,
    exact_enumeration,
    simulate,
)
from .measures import N2SearchConfig, n0, n1, n2
from .qstate import (
    DomainError,
    InvariantError,
    ValidationError,
    format_state_literal,
    overlap2,
    parse_state_literal,
)


def _round12(value):
    if isinstance(value, float):
        if not math.isfinite(value):
            return None
        return float(f"{value:.12g}")
    if isinstance(value, dict):
        return {k: _round12(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_round12(v) for v in value]
    return value


def _emit(payload: dict) -> None:
    print(json.dumps(_round12(payload), indent=2))


def _cmd_measure(args) -> int:
    psi1 = parse_state_literal(args.psi1)
    psi2 = parse_state_literal(args.psi2)
    payload: dict = {"overlap_sq": overlap2(psi1, psi2)}
    if args.which in ("n0", "all"):
        payload["n0"] = n0(psi1, psi2)
    if args.which in ("n1", "all"):
        payload["n1"] = n1(psi1, psi2)
    if args.which in ("n2", "all"):
        result = n2(psi1, psi2, N2SearchConfig())
        payload["n2"] = result.value
        payload["n2_avg"] = 0.5 * result.value
        payload["n2_converged"] = result.converged
    _emit(payload)
    return 0


def _cmd_decompose(args) -> int:
    p = args.p
    alpha_sq = args.alpha_sq
    alpha_phase = args.alpha_phase
    beta_phase = args.beta_phase
    canonicalized = False
    if args.canonicalize:
        if p < 0.5:
            p = 1.0 - p
            canonicalized = True
        if alpha_sq < 0.5:
            alpha_sq = 1.0 - alpha_sq
            alpha_phase, beta_phase = beta_phase, alpha_phase
            canonicalized = True
    params = hidden.DecompositionParams.from_weights(
        alpha_sq, alpha_phase, beta_phase)
    dec = hidden.decompose(p, params)
    report = unlock.unlock_report(p, dec.z)
    _emit({
        "p": p,
        "alpha_sq": alpha_sq,
        "canonicalized": canonicalized,
        "z": dec.z,
        "phi1": format_state_literal(dec.phi1),
        "phi2": format_state_literal(dec.phi2),
        "overlap_sq": overlap2(dec.phi1, dec.phi2),
        "N_pair": hidden.pair_nonortho(p, dec.z),
        "N_ens": report.n_ens,
        "U": report.u_bits,
        "I": report.i_bits,
        "E": report.e_bits,
    })
    return 0


def _cmd_maxima(args) -> int:
    p = args.p
    _emit({
        "p": p,
        "max_pair_z": hidden.max_pair_z(p),
        "max_ensemble": hidden.max_ensemble(p),
        "branch": hidden.max_ensemble_branch(p),
    })
    return 0


def _cmd_sweep(args) -> int:
    grid = unlock.SweepGrid(p_step=args.p_step, z_step=args.z_step,
                            eps=args.eps)
    result = unlock.conjecture_sweep(grid, out=args.out, jobs=args.jobs)
    _emit({
        "out": args.out,
        "rows": result.rows,
        "excluded": result.excluded,
        "min_ratio_U": result.min_ratio_u,
        "argmin_p": result.argmin_p,
        "argmin_z": result.argmin_z,
        "count_ratio_E_below_1": result.count_ratio_e_below_1,
        "count_ratio_E_at_least_1": result.count_ratio_e_at_least_1,
        "witness_E_below_1": result.witness_e_below_1,
        "witness_E_at_least_1": result.witness_e_at_least_1,
    })
    return 0


def _cmd_crypto(args) -> int:
    if args.protocol == "bb84":
        spec = BB84Spec(args.overlap)
    else:
        spec = B92Spec(args.overlap)
    eve = EveStrategy(args.eve)
    if args.exact:
        if args.protocol == "bb84":
            analytic = bb84_detection_analytic(spec)
        else:
            analytic = b92_detection_analytic(spec, eve)
        _emit({
            "protocol": args.protocol,
            "s_or_t": args.overlap,
            "eve": eve.value,
            "exact": exact_enumeration(spec, eve),
            "analytic": analytic,
        })
        return 0
    stats = simulate(spec, eve, trials=args.trials, seed=args.seed,
                     jobs=args.jobs)
    _emit(stats.to_json_dict())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nonortho",
        description="Quantify nonorthogonality, decompose qubit density "
                    "matrices, and simulate intercept-resend detection.")
    sub = parser.add_subparsers(dest="command", required=True)

    m = sub.add_parser("measure", help="evaluate pair measures on two states")
    m.add_argument("--psi1", required=True,
                   help="state literal 're,im;re,im' (up then down)")
    m.add_argument("--psi2", required=True, help="second state literal")
    m.add_argument("--which", choices=("n0", "n1", "n2", "all"),
                   default="all", help="which measures to report")
    m.set_defaults(func=_cmd_measure)

    d = sub.add_parser("decompose",
                       help="two-state decomposition of diag(p, 1-p)")
    d.add_argument("--p", type=float, required=True,
                   help="larger eigenvalue, in [1/2, 1]")
    d.add_argument("--alpha-sq", type=float, required=True,
                   help="|alpha|^2 of the parameter pair, in [1/2, 1]")
    d.add_argument("--alpha-phase", type=float, default=0.0,
                   help="phase of alpha in radians")
    d.add_argument("--beta-phase", type=float, default=0.0,
                   help="phase of beta in radians")
    d.add_argument("--canonicalize", action="store_true",
                   help="map p < 1/2 or alpha_sq < 1/2 into the canonical "
                        "cell instead of rejecting")
    d.set_defaults(func=_cmd_decompose)

    x = sub.add_parser("maxima",
                       help="extremal pair and ensemble values for a given p")
    x.add_argument("--p", type=float, required=True)
    x.set_defaults(func=_cmd_maxima)

    s = sub.add_parser("sweep",
                       help="sweep the (p, z) grid and export the cost table")
    s.add_argument("--p-step", type=float, default=5e-4)
    s.add_argument("--z-step", type=float, default=5e-4)
    s.add_argument("--eps", type=float, default=1e-9,
                   help="exclude grid points with N_ens at or below this")
    s.add_argument("--out", required=True, help="CSV output path")
    s.add_argument("--jobs", type=int, default=1,
                   help="worker processes; output is independent of this")
    s.set_defaults(func=_cmd_sweep)

    c = sub.add_parser("crypto",
                       help="detection probability, exact or Monte Carlo")
    c.add_argument("--protocol", choices=("bb84", "b92"), required=True)
    c.add_argument("--overlap", type=float, required=True,
                   help="squared overlap s (bb84) or t (b92), in (0, 1)")
    c.add_argument("--eve", choices=("none", "basis", "projector"),
                   default="basis")
    c.add_argument("--trials", type=int, default=1_000_000)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--exact", action="store_true",
                   help="exact branch enumeration instead of Monte Carlo")
    c.add_argument("--jobs", type=int, default=1,
                   help="worker processes; output is independent of this")
    c.set_defaults(func=_cmd_crypto)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValidationError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except InvariantError as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
