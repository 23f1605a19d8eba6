"""Command-line front end.

Reports go to standard output as JSON (default) or CSV. Energies are in units
where ħ = 1 and entropies are in nats.

Exit codes: 0 success, 2 invalid input (an error object is printed),
3 numerical failure, 64 unknown command.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import channels, ergotropy, io, states
from .errors import InvalidArgumentError, NumericalFailureError
from .oracle import fock, search
from .symplectic import symplectic_form, williamson

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NUMERICAL = 3
EXIT_USAGE = 64

UNITS_NOTE = "All energies use ħ = 1 units; entropies are in nats; matrices use xpxp ordering."


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InvalidArgumentError(message)


def _beta_star_field(beta: float):
    return None if math.isinf(beta) else beta


def cmd_ergotropy(args):
    H = io.parse_hamiltonian(io.load_json(args.hamiltonian))
    state = io.parse_state(io.load_json(args.state))
    return ergotropy.gaussian_ergotropy(H, state).to_dict()


def cmd_passive_state(args):
    H = io.parse_hamiltonian(io.load_json(args.hamiltonian))
    state = io.parse_state(io.load_json(args.state))
    return io.state_to_json(ergotropy.gaussian_passive_state(H, state))


def cmd_williamson(args):
    M = io.parse_matrix(io.load_json(args.matrix))
    res = williamson(M, order=args.order, tol=args.tol)
    omega = symplectic_form(len(res.d))
    return {
        "layout": io.LAYOUT,
        "order": args.order,
        "d": res.d.tolist(),
        "S": res.s.tolist(),
        "symplectic_residual": float(np.linalg.norm(res.s @ omega @ res.s.T - omega)),
        "reconstruction_residual": float(np.linalg.norm(res.s @ res.D @ res.s.T - M)),
    }


def cmd_thermal(args):
    H = io.parse_hamiltonian(io.load_json(args.hamiltonian))
    return io.state_to_json(states.thermal_state(H, args.beta))


def cmd_total_ergotropy(args):
    H = io.parse_hamiltonian(io.load_json(args.hamiltonian))
    state = io.parse_state(io.load_json(args.state))
    total = ergotropy.total_ergotropy(H, state)
    beta = states.intrinsic_beta(H, state.entropy)
    return {
        "total_ergotropy": total,
        "gaussian_ergotropy": ergotropy.gaussian_ergotropy(H, state).ergotropy,
        "energy": states.energy(H, state),
        "beta_star": _beta_star_field(beta),
        "pure_state": math.isinf(beta),
    }


def cmd_delta_tot(args):
    H = io.parse_hamiltonian(io.load_json(args.hamiltonian))
    state = io.parse_state(io.load_json(args.state))
    value = ergotropy.delta_tot(H, state)
    beta = states.intrinsic_beta(H, state.entropy)
    bound = ergotropy.totb_lower_bound_check(H, state)
    return {
        "delta_tot": value,
        "total_minus_gaussian": ergotropy.total_ergotropy(H, state) - ergotropy.gaussian_ergotropy(H, state).ergotropy,
        "mu": ergotropy.entropic_nongaussianity_mu(state),
        "beta_star": _beta_star_field(beta),
        "pure_state": math.isinf(beta),
        "total_bound": {"lhs": bound.lhs, "rhs": bound.rhs, "holds": bound.holds},
    }


def cmd_channel_min(args):
    ch = io.parse_channel(io.load_json(args.channel))
    H = io.parse_hamiltonian(io.load_json(args.hamiltonian))
    best = channels.optimal_input_state(ch, H)
    return {
        "min_output_energy": channels.min_output_energy(ch, H),
        "achieved_output_energy": channels.output_energy(ch, H, best),
        "optimal_input": io.state_to_json(best),
    }


def cmd_verify_lemma(args):
    rng = np.random.default_rng(args.seed)
    d_h = np.sort(rng.uniform(0.1, 3.0, args.n)) if args.d_h is None else np.array(args.d_h)
    d_V = np.sort(rng.uniform(1.0, 5.0, args.n))[::-1] if args.d_v is None else np.array(args.d_v)
    if d_h.size != args.n or d_V.size != args.n:
        raise InvalidArgumentError("--d-h and --d-v must each have --n entries")
    check = search.check_rearrangement_lemma(d_h, d_V, args.trials, args.seed, args.scale)
    return {
        "n": args.n,
        "trials": args.trials,
        "seed": args.seed,
        "scale": args.scale,
        "d_h": d_h.tolist(),
        "d_V": d_V.tolist(),
        "worst_margin": check.worst_margin,
        "all_hold": check.all_hold,
    }


def cmd_verify_oracle(args):
    if args.hamiltonian is not None:
        H = io.parse_hamiltonian(io.load_json(args.hamiltonian))
    else:
        H = states.random_hamiltonian(args.n, args.seed)
    if args.state is not None:
        V = io.parse_state(io.load_json(args.state)).V
    else:
        V = states.random_gaussian_state(H.n, args.seed + 1).V
    config = search.SymplecticSearchConfig(restarts=args.restarts, seed=args.seed, method=args.method)
    closed = ergotropy.gaussian_passive_energy(H, V)
    result = search.minimize_passive_energy_numerical(H.h, V, config)
    return {
        "closed_form": closed,
        "numerical": result.value,
        "gap": result.value - closed,
        "restarts_used": result.restarts_used,
        "converged": result.converged,
        "seed": result.seed,
    }


def _named_density(kind: str, param: float):
    builders = {
        "fock": lambda N: fock.fock_state(int(param), N),
        "thermal": lambda N: fock.thermal_density(param, N),
        "cat": lambda N: fock.cat_density(param, N),
        "coherent": lambda N: fock.coherent_density(param, N),
    }
    if kind not in builders:
        raise InvalidArgumentError(f"unknown state kind {kind!r}; choose from {sorted(builders)}")
    return builders[kind]


def fock_quantities(rho, H: states.QuadraticHamiltonian, cutoff: int) -> dict:
    """Energies and work quantities of a Fock density matrix, by Fock and moment routes."""
    ops = fock.build_fock_operators(cutoff)
    H_matrix = ops.hamiltonian(H)
    moments = fock.fock_moments_and_entropy(rho, ops)
    standard = fock.fock_standard_ergotropy(rho, H_matrix)
    total = ergotropy.total_ergotropy(H, moments)
    return {
        "energy": fock.fock_energy(rho, H_matrix),
        "energy_from_moments": states.energy(H, moments),
        "entropy": moments.entropy,
        "standard_ergotropy": standard,
        "gaussian_ergotropy": ergotropy.gaussian_ergotropy(H, moments).ergotropy,
        "delta": fock.non_gaussian_work_potential(rho, H_matrix, H, ops),
        "mu": ergotropy.entropic_nongaussianity_mu(moments),
        "delta_tot": ergotropy.delta_tot(H, moments),
        "total_ergotropy": total,
        "bound_ergotropy": total - standard,
    }


def cmd_fock_check(args):
    if args.hamiltonian is not None:
        H = io.parse_hamiltonian(io.load_json(args.hamiltonian))
    else:
        H = states.QuadraticHamiltonian.standard(1)
    build = _named_density(args.kind, args.param)
    values = fock_quantities(build(args.cutoff), H, args.cutoff)
    doubled = fock_quantities(build(2 * args.cutoff), H, 2 * args.cutoff)
    ops = fock.build_fock_operators(args.cutoff)
    bounds = []
    for beta in args.beta:
        rep = fock.entropic_bound_terms(build(args.cutoff), H, beta, ops)
        bounds.append(
            {
                "beta": beta,
                "identity_residual": rep.identity_residual,
                "lower_margin": rep.lower_margin,
                "upper_margin": rep.upper_margin,
            }
        )
    return {
        "kind": args.kind,
        "param": args.param,
        "cutoff": args.cutoff,
        **values,
        "cutoff_stability": max(abs(values[k] - doubled[k]) for k in values),
        "entropic_bounds": bounds,
    }


COMMANDS = {
    "ergotropy": cmd_ergotropy,
    "passive-state": cmd_passive_state,
    "williamson": cmd_williamson,
    "thermal": cmd_thermal,
    "total-ergotropy": cmd_total_ergotropy,
    "delta-tot": cmd_delta_tot,
    "channel-min": cmd_channel_min,
    "verify-lemma": cmd_verify_lemma,
    "verify-oracle": cmd_verify_oracle,
    "fock-check": cmd_fock_check,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--tol", type=float, default=1e-8, help="numerical tolerance (default 1e-8)")
    common.add_argument("--seed", type=int, default=0)

    parser = _Parser(prog="gaussian-ergotropy", description=UNITS_NOTE)
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    def add(name, help_text):
        return sub.add_parser(name, parents=[common], help=help_text, description=f"{help_text} {UNITS_NOTE}")

    p = add("ergotropy", "Gaussian ergotropy report with the optimal Gaussian unitary.")
    p.add_argument("--hamiltonian", required=True)
    p.add_argument("--state", required=True)

    p = add("passive-state", "Moments of the Gaussian-passive state.")
    p.add_argument("--hamiltonian", required=True)
    p.add_argument("--state", required=True)

    p = add("williamson", "Williamson decomposition of a symmetric positive matrix.")
    p.add_argument("--matrix", required=True)
    p.add_argument("--order", choices=("ascending", "descending"), default="ascending")

    p = add("thermal", "Gibbs state of a quadratic Hamiltonian.")
    p.add_argument("--hamiltonian", required=True)
    p.add_argument("--beta", type=float, required=True)

    p = add("total-ergotropy", "Total ergotropy from moments and entropy.")
    p.add_argument("--hamiltonian", required=True)
    p.add_argument("--state", required=True)

    p = add("delta-tot", "Total non-Gaussian work potential and entropic non-Gaussianity.")
    p.add_argument("--hamiltonian", required=True)
    p.add_argument("--state", required=True)

    p = add("channel-min", "Minimum output energy of a Gaussian channel and an optimal input.")
    p.add_argument("--channel", required=True)
    p.add_argument("--hamiltonian", required=True)

    p = add("verify-lemma", "Random-symplectic sweep of the trace rearrangement inequality.")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--scale", type=float, default=1.0)
    p.add_argument("--d-h", type=float, nargs="+", help="ascending spectrum (random if omitted)")
    p.add_argument("--d-v", type=float, nargs="+", help="descending spectrum (random if omitted)")

    p = add("verify-oracle", "Compare the closed-form passive energy with a numerical search.")
    p.add_argument("--hamiltonian")
    p.add_argument("--state")
    p.add_argument("--n", type=int, default=2, help="mode count for random inputs")
    p.add_argument("--restarts", type=int, default=32)
    p.add_argument("--method", choices=("gradient", "coordinate"), default="gradient")

    p = add("fock-check", "Single-mode truncated-Fock cross-check of all work quantities.")
    p.add_argument("--kind", choices=("fock", "thermal", "cat", "coherent"), default="fock")
    p.add_argument("--param", type=float, default=1.0, help="Fock number, mean occupation or amplitude")
    p.add_argument("--cutoff", type=int, default=32)
    p.add_argument("--hamiltonian", help="single-mode Hamiltonian (default: h = I, r = 0)")
    p.add_argument("--beta", type=float, nargs="+", default=[0.5, 1.0, 2.0])
    return parser


def _emit(report: dict, fmt: str) -> None:
    if fmt == "csv":
        sys.stdout.write(io.report_to_csv(report))
    else:
        sys.stdout.write(io.dumps_report(report) + "\n")


def _error(kind: str, exc: Exception) -> None:
    obj = {"error": {"kind": kind, "type": type(exc).__name__, "message": str(exc)}}
    residual = getattr(exc, "residual", None)
    if residual is not None:
        obj["error"]["residual"] = float(residual)
    sys.stdout.write(io.dumps_report(obj) + "\n")


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    if not argv or argv[0] in ("-h", "--help"):
        parser.print_help(sys.stdout if argv else sys.stderr)
        return EXIT_OK if argv else EXIT_USAGE
    if argv[0] not in COMMANDS:
        sys.stderr.write(f"unknown command {argv[0]!r}\n")
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        args = parser.parse_args(argv)
        report = COMMANDS[args.command](args)
    except NumericalFailureError as exc:
        _error("numerical-failure", exc)
        return EXIT_NUMERICAL
    except (InvalidArgumentError, ValueError) as exc:
        _error("invalid-input", exc)
        return EXIT_INVALID
    _emit(report, args.format)
    return EXIT_OK


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
