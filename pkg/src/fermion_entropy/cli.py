"""
Command-line entry point: compute, verify, minimize and sweep.

Machine-readable output goes to stdout (or --out); progress and summaries go to stderr.
Exit codes: 0 success, 1 numerical invariant violation / failed verification /
non-convergence, 2 usage or configuration error, 3 counterexample candidate.
"""
import argparse
import json
import logging
import math
import sys
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Sequence

import pandas as pd
from pydantic import BaseModel, Field, ValidationError, model_validator

from fermion_entropy.checks import clr_bound_rhs, k_bound_rhs
from fermion_entropy.combinadics import binomial
from fermion_entropy.entropy import entropy_profile, von_neumann
from fermion_entropy.errors import NumericalInvariantError
from fermion_entropy.fermion import load_state, random_state, rdm, slater, support_dimension
from fermion_entropy.linalg import EIGENSOLVERS
from fermion_entropy.models import OptimizationConfig, VerificationConfig, WedgeState
from fermion_entropy.optimize import minimize_entropy
from fermion_entropy.utils.config import setting
from fermion_entropy.utils.seeds import derive_seed
from fermion_entropy.verification_suite import run_suite

logger = logging.getLogger("CLI")

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_COUNTEREXAMPLE = 3

SWEEP_COLUMNS = [
    "d",
    "N",
    "k",
    "state",
    "seed",
    "S_1",
    "S_k",
    "coleman_rhs",
    "coleman_slack",
    "main21_rhs",
    "main21_slack",
    "kbound_rhs",
    "kbound_slack",
    "kbound_dpsi_rhs",
    "kbound_dpsi_slack",
    "conjecture_rhs",
    "conjecture_slack",
]

# columns measured in entropy units
_ENTROPY_COLUMNS = SWEEP_COLUMNS[5:]


# ANSI color codes
class Colors:
    HEADER = "\033[95m"
    CYAN = "\033[96m"
    GREEN = "\033[92m"
    YELLOW = "\033[93m"
    RED = "\033[91m"
    ORANGE = "\033[38;5;208m"
    ENDC = "\033[0m"
    BOLD = "\033[1m"


def _status(message: str, color: str = Colors.CYAN) -> None:
    print(f"{color}{message}{Colors.ENDC}", file=sys.stderr)


class RunConfig(BaseModel):
    """Validated command-line configuration; None means "use the YAML default"."""

    subcommand: Literal["compute", "verify", "minimize", "sweep"]
    d: Optional[int] = Field(None, ge=1)
    n_particles: Optional[int] = Field(None, ge=1)
    k: Optional[int] = Field(None, ge=1)
    slater: Optional[List[int]] = Field(None, description="Occupied orbitals, 1-based as typed on the command line.")
    state_file: Optional[str] = None
    random: bool = False
    seed: Optional[int] = Field(None, ge=0)
    tol: Optional[float] = Field(None, gt=0)
    out: Optional[str] = None
    format: Literal["json", "csv"] = "json"
    bits: bool = False
    eigensolver: Optional[Literal["lapack", "jacobi"]] = None
    spectra: bool = False

    min_d: Optional[int] = Field(None, ge=1)
    max_d: Optional[int] = Field(None, ge=1)
    min_n: Optional[int] = Field(None, ge=1)
    max_n: Optional[int] = Field(None, ge=1)
    trials: Optional[int] = Field(None, ge=0)
    workers: Optional[int] = Field(None, ge=1)
    claims: Optional[List[str]] = None

    restarts: Optional[int] = Field(None, ge=1)
    max_iters: Optional[int] = Field(None, ge=0)
    step: Optional[float] = Field(None, gt=0)
    shrink: Optional[float] = Field(None, gt=0, lt=1)
    grad_tol: Optional[float] = Field(None, gt=0)
    keep_traces: bool = True
    candidate_dir: Optional[str] = None

    @model_validator(mode="after")
    def _check_consistency(self) -> "RunConfig":
        if self.format == "csv" and self.subcommand != "sweep":
            raise ValueError("--format csv is only available for sweep")
        if self.d is not None and self.n_particles is not None and self.n_particles > self.d:
            raise ValueError(f"Need 1 <= N <= d, got N={self.n_particles}, d={self.d}")
        if self.k is not None and self.n_particles is not None and self.k > self.n_particles:
            raise ValueError(f"Need k <= N, got k={self.k}, N={self.n_particles}")

        if self.subcommand == "compute":
            sources = sum([self.slater is not None, self.state_file is not None, self.random])
            if sources != 1:
                raise ValueError("compute needs exactly one of --slater, --state-file or --random")
            if self.slater is not None:
                if self.d is None:
                    raise ValueError("--slater needs --d")
                if self.n_particles is not None and self.n_particles != len(self.slater):
                    raise ValueError(f"--N {self.n_particles} does not match {len(self.slater)} occupied orbitals")
                if any(not 1 <= label <= self.d for label in self.slater) or len(set(self.slater)) != len(self.slater):
                    raise ValueError(f"Orbital labels must be distinct and within 1..{self.d}, got {self.slater}")
            if self.random and (self.d is None or self.n_particles is None):
                raise ValueError("--random needs --d and --N")
        if self.subcommand == "minimize" and None in (self.d, self.n_particles, self.k):
            raise ValueError("minimize needs --d, --N and --k")
        return self


def _overrides(**values: Any) -> Dict[str, Any]:
    return {key: value for key, value in values.items() if value is not None}


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
        _status(f"Output written to {path}", Colors.GREEN)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _random_seed(config: RunConfig) -> int:
    return config.seed if config.seed is not None else 0


def _build_state(config: RunConfig) -> WedgeState:
    if config.slater is not None:
        return slater(config.d, sorted(label - 1 for label in config.slater))
    if config.state_file is not None:
        psi = load_state(config.state_file)
        if (config.d is not None and config.d != psi.d) or (config.n_particles is not None and config.n_particles != psi.n_particles):
            raise ValueError(f"State file holds (d, N) = ({psi.d}, {psi.n_particles}), flags disagree")
        return psi
    return random_state(config.d, config.n_particles, _random_seed(config))


def cmd_compute(config: RunConfig) -> int:
    psi = _build_state(config)
    profile = entropy_profile(psi, method=config.eigensolver)
    if config.bits:
        profile = profile.in_bits()

    output: Dict[str, Any] = {
        "d": psi.d,
        "N": psi.n_particles,
        "source": "slater" if config.slater is not None else "file" if config.state_file else "random",
        "seed": _random_seed(config) if config.random else None,
        "log_base": profile.log_base,
        "profile": profile.values,
        "support_dimension": support_dimension(rdm(psi, 1), method=config.eigensolver),
    }
    if config.spectra or config.k is not None:
        ks = [config.k] if config.k is not None else range(1, psi.n_particles + 1)
        output["spectra"] = {str(k): sorted(rdm(psi, k).spectrum(method=config.eigensolver).tolist(), reverse=True) for k in ks}

    _emit(json.dumps(output, indent=2), config.out)
    _status(f"S_1..S_N = {', '.join(f'{v:.10f}' for v in profile.values)} ({profile.log_base})")
    return EXIT_OK


def cmd_verify(config: RunConfig) -> int:
    verification = VerificationConfig(
        **_overrides(
            min_d=config.d if config.d is not None else config.min_d,
            max_d=config.d if config.d is not None else config.max_d,
            min_n=config.n_particles if config.n_particles is not None else config.min_n,
            max_n=config.n_particles if config.n_particles is not None else config.max_n,
            trials=config.trials,
            seed=config.seed,
            inequality_tol=config.tol,
            identity_tol=config.tol,
            workers=config.workers,
            claims=config.claims,
        )
    )
    _status(f"Verifying {len(verification.claims)} claims over d in [{verification.min_d}, {verification.max_d}], N in [{verification.min_n}, {verification.max_n}]...", Colors.HEADER + Colors.BOLD)
    report = run_suite(verification, eigensolver=config.eigensolver)
    _emit(report.model_dump_json(indent=2), config.out)

    summary = report.summary
    color = Colors.GREEN if report.ok else Colors.RED
    _status(f"{summary.passed} passed, {summary.failed} failed, {summary.informational} informational (of {summary.total})", color)
    return EXIT_OK if report.ok else EXIT_FAILURE


def cmd_minimize(config: RunConfig) -> int:
    optimization = OptimizationConfig(
        d=config.d,
        n_particles=config.n_particles,
        k=config.k,
        keep_traces=config.keep_traces,
        **_overrides(
            restarts=config.restarts,
            max_iters=config.max_iters,
            initial_step=config.step,
            shrink=config.shrink,
            grad_tol=config.grad_tol,
            seed=config.seed,
            workers=config.workers,
            eigensolver=config.eigensolver,
            candidate_dir=config.candidate_dir,
        ),
    )
    _status(f"Minimizing S_{config.k} for d={config.d}, N={config.n_particles} with {optimization.restarts} restarts...", Colors.HEADER + Colors.BOLD)
    result = minimize_entropy(optimization)
    _emit(result.model_dump_json(indent=2), config.out)

    if result.counterexample_candidate:
        _status(f"Sub-floor value {result.best_value!r} reproduced, state saved to {result.candidate_path}", Colors.ORANGE)
        return EXIT_COUNTEREXAMPLE
    if not result.converged:
        _status(f"Best restart did not converge within {optimization.max_iters} iterations (gap {result.gap:.3e})", Colors.YELLOW)
        return EXIT_FAILURE
    _status(f"Best S_{config.k} = {result.best_value:.12f}, floor ln C(N,k) = {result.conjectured_floor:.12f}, gap {result.gap:.3e}", Colors.GREEN)
    return EXIT_OK


def sweep_rows(
    min_d: int,
    max_d: int,
    min_n: int,
    max_n: int,
    k: int,
    trials: int,
    seed: int,
    method: Optional[str] = None,
) -> pd.DataFrame:
    """
    One row per (d, N, state): a Slater determinant and `trials` seeded random states for
    every N in [max(min_n, k, 2), max_n] and d in [max(N, min_d), max_d].
    """
    if k < 2:
        raise ValueError(f"sweep needs k >= 2, got {k}")
    limit = setting("optimize", "max_coefficients")
    rows = []
    for n in range(max(min_n, k, 2), max_n + 1):
        for d in range(max(n, min_d), max_d + 1):
            if binomial(d, n) > limit:
                raise ValueError(f"C({d},{n}) exceeds the coefficient cap {limit}")
            states = [("slater", None, slater(d, range(n)))]
            for t in range(trials):
                state_seed = derive_seed(seed, d, n, t)
                states.append(("random", state_seed, random_state(d, n, state_seed)))
            for label, state_seed, psi in states:
                s1 = von_neumann(rdm(psi, 1), method=method)
                sk = von_neumann(rdm(psi, k), method=method)
                s2 = sk if k == 2 else von_neumann(rdm(psi, 2), method=method)
                d_psi = support_dimension(rdm(psi, 1), method=method)
                rhs = {
                    "coleman": math.log(n),
                    "main21": clr_bound_rhs(s1, d, n),
                    "kbound": k_bound_rhs(s1, d, n, k),
                    "kbound_dpsi": k_bound_rhs(s1, d_psi, n, k),
                    "conjecture": math.log(binomial(n, k)),
                }
                lhs = {"coleman": s1, "main21": s2, "kbound": sk, "kbound_dpsi": sk, "conjecture": sk}
                row = {"d": d, "N": n, "k": k, "state": label, "seed": state_seed, "S_1": s1, "S_k": sk}
                for name, value in rhs.items():
                    row[f"{name}_rhs"] = value
                    row[f"{name}_slack"] = lhs[name] - value
                rows.append(row)
    frame = pd.DataFrame(rows, columns=SWEEP_COLUMNS)
    return frame.astype({"seed": "Int64"})


def _sweep_bound(pinned: Optional[int], explicit: Optional[int], key: str) -> int:
    if pinned is not None:
        return pinned
    return explicit if explicit is not None else setting("sweep", key)


def cmd_sweep(config: RunConfig) -> int:
    # --d and --N pin the range to a single point
    frame = sweep_rows(
        min_d=_sweep_bound(config.d, config.min_d, "min_d"),
        max_d=_sweep_bound(config.d, config.max_d, "max_d"),
        min_n=_sweep_bound(config.n_particles, config.min_n, "min_n"),
        max_n=_sweep_bound(config.n_particles, config.max_n, "max_n"),
        k=config.k if config.k is not None else setting("sweep", "k"),
        trials=config.trials if config.trials is not None else setting("sweep", "trials"),
        seed=config.seed if config.seed is not None else setting("sweep", "seed"),
        method=config.eigensolver,
    )
    if config.bits:
        frame[_ENTROPY_COLUMNS] = frame[_ENTROPY_COLUMNS] / math.log(2)

    if config.format == "csv":
        _emit(frame.to_csv(index=False), config.out)
    else:
        _emit(frame.to_json(orient="records", indent=2, double_precision=15), config.out)
    if len(frame):
        worst = frame[[c for c in SWEEP_COLUMNS if c.endswith("_slack")]].min()
        _status(f"{len(frame)} rows; smallest slacks: {', '.join(f'{name}={value:.3e}' for name, value in worst.items())}")
    else:
        _status("Empty range, header only", Colors.YELLOW)
    return EXIT_OK


COMMANDS = {
    "compute": cmd_compute,
    "verify": cmd_verify,
    "minimize": cmd_minimize,
    "sweep": cmd_sweep,
}


def _int_list(value: str) -> List[int]:
    try:
        return [int(part) for part in value.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"Expected a comma-separated list of integers, got '{value}'") from None


def _str_list(value: str) -> List[str]:
    return [part.strip() for part in value.split(",") if part.strip()]


def create_argument_parser() -> argparse.ArgumentParser:
    """Create and return the argument parser."""
    shared = argparse.ArgumentParser(add_help=False)
    shared_group = shared.add_argument_group("shared options")
    shared_group.add_argument("--d", type=int, help="Single-particle dimension d (pins the verify and sweep ranges)")
    shared_group.add_argument("--N", dest="n_particles", type=int, help="Number of fermions N (pins the verify and sweep ranges)")
    shared_group.add_argument("--k", type=int, help="Number of particles kept in γ_k")
    shared_group.add_argument("--seed", type=int, help="Master seed (default: per-subcommand value from the config)")
    shared_group.add_argument("--tol", type=float, help="Check tolerance override (verify)")
    shared_group.add_argument("--out", type=str, help="Write output to this file instead of stdout")
    shared_group.add_argument("--format", choices=["json", "csv"], default="json", help="Output format; csv only for sweep (default: %(default)s)")
    shared_group.add_argument("--bits", action="store_true", help="Report entropies in bits instead of nats (compute, sweep)")
    shared_group.add_argument("--eigensolver", choices=EIGENSOLVERS, help="Hermitian eigensolver (default: lapack)")
    shared_group.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO logging, -vv for DEBUG")

    parser = argparse.ArgumentParser(
        prog="fermion_entropy",
        description="Entanglement entropies of reduced density matrices of fermionic pure states",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Entropy profile of a Slater determinant (1-based orbital labels)
  python -m fermion_entropy compute --d 8 --N 4 --slater 1,2,3,4

  # Run every executable check over d <= 8, N <= 4
  python -m fermion_entropy verify --max-d 8 --max-N 4 --trials 50 --seed 42

  # Search for low S_2 states
  python -m fermion_entropy minimize --d 5 --N 4 --k 2 --restarts 32 --seed 7

  # Bound tightness table for plotting
  python -m fermion_entropy sweep --min-d 4 --max-d 8 --min-N 3 --max-N 4 --k 2 --format csv
        """,
    )
    subparsers = parser.add_subparsers(dest="subcommand", required=True)

    compute = subparsers.add_parser("compute", parents=[shared], help="Entropy profile of one state")
    state_group = compute.add_argument_group("state source options (exactly one)")
    state_group.add_argument("--slater", type=_int_list, help="Occupied orbitals, 1-based, e.g. 1,2,3")
    state_group.add_argument("--state-file", type=str, help="State JSON file {d, N, coeffs: [[re, im], ...]}")
    state_group.add_argument("--random", action="store_true", help="Seeded random state (uses --d, --N, --seed)")
    compute.add_argument("--spectra", action="store_true", help="Include the γ_k spectra (all k, or only --k)")

    verify = subparsers.add_parser("verify", parents=[shared], help="Run the executable checks")
    verify_group = verify.add_argument_group("verification options")
    verify_group.add_argument("--min-d", type=int, help="Smallest d (default: %s)" % setting("verify", "min_d"))
    verify_group.add_argument("--max-d", type=int, help="Largest d (default: %s)" % setting("verify", "max_d"))
    verify_group.add_argument("--min-N", dest="min_n", type=int, help="Smallest N (default: %s)" % setting("verify", "min_n"))
    verify_group.add_argument("--max-N", dest="max_n", type=int, help="Largest N (default: %s)" % setting("verify", "max_n"))
    verify_group.add_argument("--trials", type=int, help="Random trials (default: %s)" % setting("verify", "trials"))
    verify_group.add_argument("--workers", type=int, help="Worker threads (default: %s)" % setting("verify", "workers"))
    verify_group.add_argument("--claims", type=_str_list, help="Comma-separated claim ids to run (default: all)")

    minimize = subparsers.add_parser("minimize", parents=[shared], help="Minimize S_k over the unit sphere")
    minimize_group = minimize.add_argument_group("optimizer options")
    minimize_group.add_argument("--restarts", type=int, help="Random restarts (default: %s)" % setting("optimize", "restarts"))
    minimize_group.add_argument("--max-iters", type=int, help="Iterations per restart (default: %s)" % setting("optimize", "max_iters"))
    minimize_group.add_argument("--step", type=float, help="Initial step size (default: %s)" % setting("optimize", "initial_step"))
    minimize_group.add_argument("--shrink", type=float, help="Backtracking factor (default: %s)" % setting("optimize", "shrink"))
    minimize_group.add_argument("--grad-tol", type=float, help="Projected gradient threshold (default: %s)" % setting("optimize", "grad_tol"))
    minimize_group.add_argument("--workers", type=int, help="Worker threads (default: %s)" % setting("optimize", "workers"))
    minimize_group.add_argument("--no-traces", dest="keep_traces", action="store_false", help="Drop per-iteration traces from the result")
    minimize_group.add_argument("--candidate-dir", type=str, help="Where sub-floor states are saved (default: %s)" % setting("optimize", "candidate_dir"))

    sweep = subparsers.add_parser("sweep", parents=[shared], help="Tabulate bound slacks over (d, N)")
    sweep_group = sweep.add_argument_group("sweep options")
    sweep_group.add_argument("--min-d", type=int, help="Smallest d (default: %s)" % setting("sweep", "min_d"))
    sweep_group.add_argument("--max-d", type=int, help="Largest d (default: %s)" % setting("sweep", "max_d"))
    sweep_group.add_argument("--min-N", dest="min_n", type=int, help="Smallest N (default: %s)" % setting("sweep", "min_n"))
    sweep_group.add_argument("--max-N", dest="max_n", type=int, help="Largest N (default: %s)" % setting("sweep", "max_n"))
    sweep_group.add_argument("--trials", type=int, help="Random states per (d, N) (default: %s)" % setting("sweep", "trials"))

    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.DEBUG if verbosity >= 2 else logging.INFO if verbosity == 1 else logging.WARNING
    logging.basicConfig(level=level, stream=sys.stderr, format="%(asctime)s %(levelname)s %(name)s: %(message)s")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = create_argument_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.verbose)

    values = {key: value for key, value in vars(args).items() if key != "verbose"}
    try:
        config = RunConfig(**values)
        return COMMANDS[config.subcommand](config)
    except NumericalInvariantError as e:
        logger.error("Numerical invariant violated: %s", e)
        _status(f"Error: {e}", Colors.RED)
        return EXIT_FAILURE
    except (ValidationError, ValueError, OverflowError, OSError) as e:
        _status(f"Error: {e}", Colors.RED)
        return EXIT_USAGE
