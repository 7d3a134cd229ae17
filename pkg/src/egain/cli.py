"""Command-line front end.

Subcommands expose the library's main computations as machine-readable
reports: ``gain`` (closed-form minimal entropy gain of a channel), ``sweep``
(Gibbs-state gains along a descending beta grid), ``fock`` (randomized
bound-verification campaign in the truncated number basis), ``classical``
(the infinite-entropy-gain classical counterexample), and ``williamson``
(normal form of a covariance matrix file).

The CLI only orchestrates and formats: every number in a report comes from a
library call. Reports are JSON (sorted keys) or CSV, written atomically, and
byte-identical for identical configuration and seed.

Exit codes: 0 success; 2 inadmissible input; 3 hypothesis violation;
4 unreliable truncation beyond threshold.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile

import numpy as np

from .channels import (
    PRESET_NAMES,
    GaussianChannel,
    default_beta_grid,
    gain_beta_sweep,
    general_lower_bound,
    make_channel,
    minimal_entropy_gain,
    preset_channel,
)
from .classical import doubly_stochastic_check, heavy_tail, xor_family
from .errors import (
    HypothesisViolationError,
    InadmissibleInputError,
    UnreliableTruncationError,
)
from .fock import (
    RELIABILITY_THRESHOLD,
    build_dilation,
    lower_bound_campaign,
    extremality_campaign,
)
from .gaussian import quadratic_hamiltonian
from .matio import decode_array, encode_array, load_matrix, read_json, write_json
from .symplectic import DEFAULT_TOL, canonical_form, check_hermitian_psd, williamson

EXIT_OK = 0
EXIT_INADMISSIBLE = 2
EXIT_HYPOTHESIS = 3
EXIT_UNRELIABLE = 4

# A campaign whose reliable fraction drops below this floor exits with code 4;
# the report is still written so the unreliable trials stay visible.
RELIABLE_FRACTION_FLOOR = 0.95

_PRESET_TO_KIND = {
    "attenuator": "attenuator",
    "amplifier": "amplifier",
    "classical-noise": "classical_noise",
}


def _fmt(x: float) -> str:
    return f"{float(x):.17g}"


def _emit_text(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(out)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, out)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit_json(payload: dict, out: str | None) -> None:
    if out is None:
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        write_json(out, payload)


def _resolve_tol(args: argparse.Namespace) -> float:
    if getattr(args, "tol", None) is not None:
        return float(args.tol)
    env = os.environ.get("EGAIN_TOL")
    if env is not None:
        try:
            return float(env)
        except ValueError as exc:
            raise InadmissibleInputError(f"EGAIN_TOL is not a number: {env!r}") from exc
    return DEFAULT_TOL


def _resolve_channel(args: argparse.Namespace, tol: float) -> tuple[GaussianChannel, dict]:
    """Build the channel named on the command line, plus its report stanza."""
    if getattr(args, "channel_file", None):
        data = read_json(args.channel_file)
        if not isinstance(data, dict) or "K" not in data or "mu" not in data:
            raise InadmissibleInputError("channel file must contain 'K' and 'mu' matrices")
        K = decode_array(data["K"])
        mu = decode_array(data["mu"])
        if K.ndim != 2 or K.shape[0] != K.shape[1] or K.shape[0] % 2 != 0:
            raise InadmissibleInputError("K must be square with even dimension")
        space = canonical_form(K.shape[0] // 2)
        channel = make_channel(K.real, mu.real, space, tol=tol)
        source = {"channel_file": args.channel_file}
    elif getattr(args, "preset", None):
        channel = preset_channel(args.preset, args.k, noise=args.noise, tol=tol)
        source = {"preset": args.preset, "k": float(args.k), "noise": float(args.noise)}
    else:
        raise InadmissibleInputError("provide --preset with --k, or --channel-file")
    return channel, source


def cmd_gain(args: argparse.Namespace) -> int:
    tol = _resolve_tol(args)
    channel, source = _resolve_channel(args, tol)
    report = {
        "command": "gain",
        "seed": None,
        "source": source,
        "modes": channel.space.s,
        "admissibility": {
            "min_eigenvalue": float(channel.cert.min_eigenvalue),
            "tolerance": float(channel.cert.tolerance),
            "verdict": channel.cert.verdict,
            "strict": bool(channel.strict),
        },
        "regular": bool(channel.regular),
        "gain_closed_form": minimal_entropy_gain(channel),
        "lower_bound_general": general_lower_bound(channel),
    }
    _emit_json(report, args.out)
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    tol = _resolve_tol(args)
    channel, source = _resolve_channel(args, tol)
    space = channel.space
    if getattr(args, "epsilon_file", None):
        epsilon = load_matrix(args.epsilon_file).real
        source["epsilon_file"] = args.epsilon_file
    else:
        epsilon = np.eye(2 * space.s)
    hamiltonian = quadratic_hamiltonian(space, epsilon, tol=tol)
    grid = default_beta_grid(args.beta_max, args.beta_min, args.beta_points)
    report = gain_beta_sweep(channel, hamiltonian, beta_grid=grid)
    lines = ["# seed: none"]
    for key, value in sorted(source.items()):
        lines.append(f"# {key}: {value}")
    lines.append(f"# closed_form: {_fmt(report.closed_form)}")
    lines.append(f"# converged: {str(report.converged).lower()}")
    if not report.converged:
        lines.append(
            "# warning: sweep did not converge above the beta floor; "
            "last gap " + _fmt(report.gains[-1] - report.closed_form)
        )
    lines.append("beta,gain,gap_to_closed_form")
    for beta, gain in zip(report.beta_grid, report.gains):
        lines.append(f"{_fmt(beta)},{_fmt(gain)},{_fmt(gain - report.closed_form)}")
    _emit_text("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_fock(args: argparse.Namespace) -> int:
    if not args.preset:
        raise InadmissibleInputError("fock campaigns require --preset")
    kind = _PRESET_TO_KIND.get(args.preset)
    if kind is None:
        raise InadmissibleInputError(f"unknown preset {args.preset!r}; choose from {PRESET_NAMES}")
    noise = args.noise if kind == "classical_noise" else None
    channel = build_dilation(kind, args.k, dim=args.dim, noise=noise)
    rng = np.random.default_rng(args.seed)
    if args.extremality:
        summary = extremality_campaign(channel, args.trials, rng)
        reference_key = "gaussian_gain"
    else:
        summary = lower_bound_campaign(channel, args.trials, rng)
        reference_key = "bound"
    records = [
        {
            "gain": r["gain"],
            reference_key: r[reference_key],
            "deficit": r["deficit"],
            "holds": r["holds"],
            "reliable": r["reliable"],
        }
        for r in summary["records"]
    ]
    margins = [r["gain"] - r[reference_key] for r in records]
    report = {
        "command": "fock",
        "campaign": "extremality" if args.extremality else "lower_bound",
        "seed": int(args.seed),
        "kind": kind,
        "k": float(args.k),
        "noise": float(noise) if noise is not None else 0.0,
        "dim": int(args.dim),
        "trials": int(args.trials),
        "support": summary["support"],
        "holds_count": summary["holds_count"],
        "reliable_count": summary["reliable_count"],
        "unreliable_count": args.trials - summary["reliable_count"],
        "worst_margin": min(margins),
        "max_deficit": max(r["deficit"] for r in records),
        "reliability_threshold": RELIABILITY_THRESHOLD,
        "records": records,
    }
    _emit_json(report, args.out)
    if args.trials > 0 and summary["reliable_count"] < RELIABLE_FRACTION_FLOOR * args.trials:
        return EXIT_UNRELIABLE
    return EXIT_OK


def cmd_classical(args: argparse.Namespace) -> int:
    k_max = int(args.k)
    if not 1 <= k_max <= 24:
        raise InadmissibleInputError("prefix exponent must be between 1 and 24")
    dist = heavy_tail(max(args.n_max, 1 << k_max))
    family = xor_family()
    lines = ["# seed: none", f"# n_max: {dist.n_max}", "k,H,doubly_stochastic"]
    for k in range(1, k_max + 1):
        entropy = dist.truncated_entropy(1 << k)
        verdict = doubly_stochastic_check(family, dist, k)
        lines.append(f"{k},{_fmt(entropy)},{str(verdict).lower()}")
    _emit_text("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_williamson(args: argparse.Namespace) -> int:
    tol = _resolve_tol(args)
    alpha = load_matrix(args.matrix_file).real
    if alpha.ndim != 2 or alpha.shape[0] != alpha.shape[1] or alpha.shape[0] % 2 != 0:
        raise InadmissibleInputError("covariance matrix must be square with even dimension")
    space = canonical_form(alpha.shape[0] // 2)
    decomposition = williamson(alpha, space, tol=tol)
    cert = check_hermitian_psd(alpha + 0.5j * space.delta, tol=tol)
    report = {
        "command": "williamson",
        "seed": None,
        "matrix_file": args.matrix_file,
        "modes": space.s,
        "symplectic_eigenvalues": [float(nu) for nu in decomposition.nu],
        "T": encode_array(decomposition.T),
        "admissibility": {
            "min_eigenvalue": float(cert.min_eigenvalue),
            "tolerance": float(cert.tolerance),
            "verdict": cert.verdict,
        },
    }
    _emit_json(report, args.out)
    return EXIT_OK


def _add_channel_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--preset", choices=PRESET_NAMES, help="named one-mode channel")
    parser.add_argument("--k", type=float, default=0.5, help="channel parameter k")
    parser.add_argument(
        "--noise", type=float, default=0.0, help="extra classical noise per quadrature"
    )
    parser.add_argument("--channel-file", help="JSON file holding matrices K and mu")
    parser.add_argument("--tol", type=float, default=None, help="certificate tolerance")
    parser.add_argument("--out", help="output path (stdout when omitted)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="egain",
        description="Minimal entropy gain of bosonic Gaussian channels.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gain = sub.add_parser("gain", help="closed-form minimal entropy gain")
    _add_channel_flags(p_gain)
    p_gain.set_defaults(func=cmd_gain)

    p_sweep = sub.add_parser("sweep", help="Gibbs-state gain along a beta grid")
    _add_channel_flags(p_sweep)
    p_sweep.add_argument("--epsilon-file", help="JSON matrix file for the Hamiltonian")
    p_sweep.add_argument("--beta-max", type=float, default=1.0)
    p_sweep.add_argument("--beta-min", type=float, default=1e-6)
    p_sweep.add_argument("--beta-points", type=int, default=25)
    p_sweep.set_defaults(func=cmd_sweep)

    p_fock = sub.add_parser("fock", help="randomized Kraus-oracle bound campaign")
    _add_channel_flags(p_fock)
    p_fock.add_argument("--dim", type=int, default=60, help="Fock-space cutoff")
    p_fock.add_argument("--trials", type=int, default=100)
    p_fock.add_argument("--seed", type=int, default=0)
    p_fock.add_argument(
        "--extremality",
        action="store_true",
        help="check Gaussian extremality instead of the universal bound",
    )
    p_fock.set_defaults(func=cmd_fock)

    p_classical = sub.add_parser("classical", help="classical counterexample table")
    p_classical.add_argument(
        "--k", type=float, default=14, help="largest prefix exponent to tabulate"
    )
    p_classical.add_argument(
        "--n-max", type=int, default=10_000_000, help="distribution truncation"
    )
    p_classical.add_argument("--out", help="output path (stdout when omitted)")
    p_classical.set_defaults(func=cmd_classical)

    p_will = sub.add_parser("williamson", help="normal form of a covariance file")
    p_will.add_argument("matrix_file", help="JSON matrix file")
    p_will.add_argument("--tol", type=float, default=None)
    p_will.add_argument("--out", help="output path (stdout when omitted)")
    p_will.set_defaults(func=cmd_williamson)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return int(args.func(args))
    except UnreliableTruncationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNRELIABLE
    except HypothesisViolationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except InadmissibleInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INADMISSIBLE
    except (OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INADMISSIBLE


if __name__ == "__main__":
    raise SystemExit(main())
