"""
Charge-Conserving Circuit Simulator - Main Entry Point
======================================================

Runs the entanglement-growth certificates and the charge-transport
experiments from the command line. Results go to stdout or --out as CSV
(default) or JSON.

USAGE:
    # Certify every step of the entropy bound on sampled circuits
    python main.py certify --N 10 --d 2 --m 6 --depth 10 --alpha 2 --seed 7

    # Entropy growth over many realizations, with the bound next to it
    # (m grows like c sqrt(t ln t) unless --mode fixed is given)
    python main.py simulate --N 10 --depth 20 --realizations 50

    # Enumerate the good initial states at a few times
    python main.py sprime --N 10 --m 4 --t 2 6 10

    # Mean charge profile vs the random-walk prediction (CSV), or the decay fit (JSON)
    python main.py transport --kind profile --N 8 --charge-site 4 --depth 10
    python main.py transport --kind decay --N 10 --m 6 --depth 12
    python main.py transport --kind decay --oracle --N 200 --m 40 --depth 200

    # Any flag can come from a JSON file instead; flags still win
    python main.py certify --config run.json --depth 4

    # Quick invariant suite
    python main.py selftest

EXIT CODES:
    0  success
    1  some certificate or check failed
    2  invalid arguments
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from dotenv import load_dotenv
load_dotenv()  # QUDIT_WORKERS, QUDIT_PROGRESS, QUDIT_MAX_EXPONENT

import numpy as np

from config import config
from harness import (
    CERTIFICATE_COLUMNS,
    SUMMARY_COLUMNS,
    SWEEP_COLUMNS,
    S_PRIME_COLUMNS,
    ExperimentSpec,
    certify,
    entropy_growth_sweep,
    enumerate_s_prime,
    run_selftest,
)
from qudit_state import CertificateFailure, ChainConfig, DomainError, LocalBasisLabel
from reporting import write_records
from transport import (
    ChargeProfile,
    bulk_charge_decay,
    ensemble_profile_series,
    oracle_charge_decay,
    random_walk_oracle,
)

logger = logging.getLogger("main")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

# What a --config file may set and what each value must be. The names mirror
# the parsed flags, subcommand flags included.
CONFIG_TYPES: Dict[str, Any] = {
    "N": int, "d": int, "depth": int, "m": int, "seed": int, "realizations": int,
    "p_degree": int, "workers": int, "charge_site": int,
    "alpha": float, "scaling_c": float, "log_base": float,
    "mode": ("fixed", "scaling"),
    "format": ("csv", "json"),
    "kind": ("profile", "decay"),
    "out": str,
    "summary": str,
    "times": list,
    "oracle": bool,
}
CONFIG_KEYS = tuple(CONFIG_TYPES)
# keys whose default means "not given"
NULLABLE_KEYS = frozenset({"log_base", "out", "summary", "times", "charge_site"})

PROFILE_COLUMNS = ("t", "site", "mean_q", "stderr", "n_samples", "seed", "oracle")
DECAY_COLUMNS = ("slope", "intercept", "slope_ci_low", "slope_ci_high", "residual", "n_points")
SELFTEST_COLUMNS = ("name", "passed", "detail")


def build_parser() -> argparse.ArgumentParser:
    # ============================================
    # PYTHON CONCEPT: argparse parent parsers
    # ============================================
    # Flags shared by every subcommand live on one parser built with
    # add_help=False; each subparser lists it in parents=[...] and gets a
    # copy of its arguments.
    #
    # flags default to None so a config file can fill what the command line leaves out
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--N", type=int, help="number of sites (even)")
    common.add_argument("--d", type=int, help="local dimension")
    common.add_argument("--depth", type=int, help="number of brickwork layers t_max")
    common.add_argument("--m", type=int, help="width of the uncharged central region (even)")
    common.add_argument("--alpha", type=float, help="Renyi index > 1")
    common.add_argument("--seed", type=int, help="master RNG seed")
    common.add_argument("--realizations", type=int, help="independent circuit realizations")
    common.add_argument("--p-degree", dest="p_degree", type=int, help="degree of p(t) = t^k")
    common.add_argument("--scaling-c", dest="scaling_c", type=float,
                        help="coefficient c of m(t) = c sqrt(t ln t) in scaling mode")
    common.add_argument("--mode", choices=("fixed", "scaling"), help="how m is chosen per t")
    common.add_argument("--log-base", dest="log_base", type=float, help="logarithm base for entropies")
    common.add_argument("--workers", type=int, help="threads for realization-level parallelism")
    common.add_argument("--out", help="output path ('-' or omitted: stdout)")
    common.add_argument("--format", choices=("csv", "json"), help="output format")
    common.add_argument("--config", type=Path, help="JSON file with any of the flags above")
    common.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")

    parser = argparse.ArgumentParser(
        prog="main.py",
        description="Entanglement growth and charge transport in charge-conserving random circuits",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    commands.add_parser("certify", parents=[common], help="certify the entropy bound step by step")

    simulate = commands.add_parser("simulate", parents=[common], help="entropy growth sweep")
    simulate.add_argument("--summary", help="also write the per-t summary to this path")

    sprime = commands.add_parser("sprime", parents=[common], help="enumerate the good initial states")
    sprime.add_argument("--t", dest="times", type=int, nargs="+",
                        help="time steps to enumerate (default: --depth)")

    transport = commands.add_parser("transport", parents=[common], help="charge transport experiments")
    transport.add_argument("--kind", choices=("profile", "decay"), help="default: profile")
    transport.add_argument("--charge-site", dest="charge_site", type=int,
                           help="profile: site starting in |d-1> (default N/2), all others |0>")
    transport.add_argument("--oracle", action="store_true", default=None,
                           help="decay: use the random-walk map instead of sampled circuits")

    commands.add_parser("selftest", parents=[common], help="run the invariant suite")
    return parser


def _is_int(value: Any) -> bool:
    # JSON true/false load as bool, which is an int subclass
    return isinstance(value, int) and not isinstance(value, bool)


def check_config_value(key: str, value: Any) -> Any:
    """
    Validate one value from a --config file against CONFIG_TYPES.

    Ints stay ints, ints are accepted where a float is expected, and
    nothing is parsed out of strings: {"N": "6"} is an error, as
    --N six would be.

    Raises:
        DomainError: if the value has the wrong type or is not an allowed choice
    """
    if value is None and key in NULLABLE_KEYS:
        return None
    expected = CONFIG_TYPES[key]

    if isinstance(expected, tuple):
        ok = value in expected
        wanted = "one of " + ", ".join(expected)
    elif expected is int:
        ok = _is_int(value)
        wanted = "an integer"
    elif expected is float:
        ok = _is_int(value) or isinstance(value, float)
        wanted = "a number"
        value = float(value) if ok else value
    elif expected is list:
        ok = isinstance(value, list) and all(_is_int(v) for v in value)
        wanted = "a list of integers"
    else:
        ok = isinstance(value, expected)
        wanted = f"a {expected.__name__}"

    if not ok:
        raise DomainError(f"config key {key!r} must be {wanted}, got {value!r}")
    return value


def load_config_file(path: Path) -> Dict[str, Any]:
    try:
        loaded = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise DomainError(f"cannot read config file {path}: {e}") from e
    if not isinstance(loaded, dict):
        raise DomainError(f"config file {path} must hold a JSON object")
    unknown = sorted(set(loaded) - set(CONFIG_KEYS))
    if unknown:
        raise DomainError(f"unknown keys in config file: {', '.join(unknown)}")
    return {key: check_config_value(key, value) for key, value in loaded.items()}


def resolve_settings(args: argparse.Namespace) -> Dict[str, Any]:
    """
    Merge defaults, the optional JSON config file and the flags.

    Flags override the file, the file overrides config.experiment. Two
    defaults depend on the command when neither source sets them:
    simulate runs in scaling mode (everything else in fixed mode), and
    transport --kind decay writes its fit report as JSON (everything else
    as CSV).
    """
    defaults = config.experiment
    settings: Dict[str, Any] = {
        "N": defaults.N,
        "d": defaults.d,
        "depth": defaults.depth,
        "m": defaults.m,
        "alpha": defaults.alpha,
        "seed": defaults.seed,
        "realizations": defaults.realizations,
        "p_degree": defaults.p_degree,
        "scaling_c": defaults.scaling_c,
        "mode": None,
        "log_base": defaults.log_base,
        "out": None,
        "format": None,
        "workers": config.resources.workers,
        "summary": None,
        "times": None,
        "kind": "profile",
        "charge_site": None,
        "oracle": False,
    }

    if args.config is not None:
        settings.update(load_config_file(args.config))

    for key in CONFIG_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            settings[key] = value

    command = getattr(args, "command", None)
    if settings["mode"] is None:
        settings["mode"] = "scaling" if command == "simulate" else "fixed"
    if settings["format"] is None:
        decay_report = command == "transport" and settings["kind"] == "decay"
        settings["format"] = "json" if decay_report else "csv"
    return settings


def _spec(settings: Dict[str, Any]) -> ExperimentSpec:
    try:
        return ExperimentSpec(
            config=ChainConfig(N=settings["N"], d=settings["d"], seed=settings["seed"]),
            t_max=settings["depth"],
            m=settings["m"],
            alpha=settings["alpha"],
            n_realizations=settings["realizations"],
            p_degree=settings["p_degree"],
            mode=settings["mode"],
            scaling_c=settings["scaling_c"],
            log_base=settings["log_base"],
        )
    except TypeError as e:
        raise DomainError(f"invalid experiment settings: {e}") from e


def certify_command(settings: Dict[str, Any]) -> int:
    """Write one certificate row per (realization, t); exit 1 if any step fails."""
    spec = _spec(settings)
    certificates = certify(spec, np.random.default_rng(settings["seed"]))
    write_records([c.to_row() for c in certificates], CERTIFICATE_COLUMNS,
                  settings["out"], settings["format"])
    failed = [c for c in certificates if not c.all_steps_hold]
    if failed:
        first = failed[0]
        raise CertificateFailure(
            f"{len(failed)} certificates failed, first at realization={first.realization} t={first.t}"
        )
    return EXIT_OK


def simulate_command(settings: Dict[str, Any], summary_path: Optional[str]) -> int:
    """Entropy growth sweep; the per-t summary goes to --summary when given."""
    spec = _spec(settings)
    result = entropy_growth_sweep(spec, np.random.default_rng(settings["seed"]))
    write_records(result.records, SWEEP_COLUMNS, settings["out"], settings["format"])
    if summary_path is not None:
        write_records(result.summary, SUMMARY_COLUMNS, summary_path, settings["format"])
    if not result.all_hold:
        raise CertificateFailure("R_alpha exceeded the certified bound")
    return EXIT_OK


def sprime_command(settings: Dict[str, Any], times: Optional[Sequence[int]]) -> int:
    spec = _spec(settings)
    rng = np.random.default_rng(settings["seed"])
    reports = []
    for t in times or [settings["depth"]]:
        if t < 0:
            raise DomainError(f"time steps must be >= 0, got {t}")
        reports.append(enumerate_s_prime(spec, t, rng))
    write_records([r.to_row() for r in reports], S_PRIME_COLUMNS, settings["out"], settings["format"])
    if not all(r.holds for r in reports):
        raise CertificateFailure("an S' enumeration violated the Markov or Bessel bound")
    return EXIT_OK


def transport_command(settings: Dict[str, Any]) -> int:
    """
    Charge profile vs the random-walk prediction, or the bulk decay fit.

    Only the sampled-circuit paths hold a statevector; the oracle decay fit
    works on charge profiles and is not limited by the amplitude cap.
    """
    n_sites, d, depth, seed = settings["N"], settings["d"], settings["depth"], settings["seed"]
    n_samples = settings["realizations"]
    rng = np.random.default_rng(seed)

    match settings["kind"]:
        case "profile":
            chain = ChainConfig(N=n_sites, d=d, seed=seed)
            charge_site = settings["charge_site"]
            site = chain.check_site(n_sites // 2 if charge_site is None else charge_site)
            labels = [LocalBasisLabel.z(d - 1 if i == site else 0) for i in range(1, n_sites + 1)]
            series = ensemble_profile_series(chain, labels, depth, n_samples, rng)
            predicted = ChargeProfile(series[0].profile.values, time=0)
            rows: List[Dict[str, Any]] = []
            for t, averaged in enumerate(series):
                for i in range(1, n_sites + 1):
                    rows.append({
                        "t": t,
                        "site": i,
                        "mean_q": averaged.profile.at(i),
                        "stderr": float(averaged.stderr[i - 1]),
                        "n_samples": n_samples,
                        "seed": seed,
                        "oracle": predicted.at(i),
                    })
                predicted = random_walk_oracle(predicted, 1)
            write_records(rows, PROFILE_COLUMNS, settings["out"], settings["format"])

        case "decay":
            m = settings["m"]
            if settings["oracle"]:
                widths = list(range(2, m + 1, 2)) or [m]
                fit = oracle_charge_decay(n_sites, d, widths, list(range(1, depth + 1)))
            else:
                chain = ChainConfig(N=n_sites, d=d, seed=seed)
                fit = bulk_charge_decay(chain, m, depth, n_samples, rng)
            write_records([fit.to_report()], DECAY_COLUMNS, settings["out"], settings["format"])

        case kind:
            raise DomainError(f"unknown transport kind: {kind}")
    return EXIT_OK


def selftest_command(settings: Dict[str, Any]) -> int:
    results = run_selftest(settings["seed"])
    write_records([r._asdict() for r in results], SELFTEST_COLUMNS, settings["out"], settings["format"])
    if not all(r.passed for r in results):
        raise CertificateFailure("self-test failed")
    return EXIT_OK


def cli_main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse argv, run one command and return the exit code.

    Args:
        argv: Arguments without the program name; defaults to sys.argv[1:]
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on bad flags and 0 on --help
        return int(e.code or 0)

    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(message)s",
        stream=sys.stderr,
    )

    try:
        settings = resolve_settings(args)
        config.resources.workers = settings["workers"]

        # ============================================
        # PYTHON CONCEPT: match statement
        # ============================================
        # match compares args.command against each literal case in order;
        # case _ catches anything else.
        match args.command:
            case "certify":
                return certify_command(settings)
            case "simulate":
                return simulate_command(settings, settings["summary"])
            case "sprime":
                return sprime_command(settings, settings["times"])
            case "transport":
                return transport_command(settings)
            case "selftest":
                return selftest_command(settings)
            case _:
                raise DomainError(f"unknown command: {args.command}")

    except DomainError as e:
        print(f"❌ {e}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    except CertificateFailure as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(cli_main())
