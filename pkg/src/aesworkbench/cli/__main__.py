"""Entry point of the ``aes-workbench`` command.

Exit codes: 0 success, 1 failed verification, 2 usage error, 3 numerical
non-convergence.
"""

import argparse
import json
import logging
import sys

from aesworkbench.cli.commands import FAMILIES
from aesworkbench.cli.commands import build_state
from aesworkbench.cli.commands import state_record
from aesworkbench.cli.io import write_record
from aesworkbench.config import RunConfig
from aesworkbench.config import load_config
from aesworkbench.errors import AesError
from aesworkbench.errors import ConfigError
from aesworkbench.errors import InvalidSpec
from aesworkbench.logging_config import configure_logging

logger = logging.getLogger("aesworkbench.cli")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

SUITE_NAMES = (
    "commutators",
    "eigen-residuals",
    "reductions",
    "uncertainty",
    "kummer-duality",
    "all",
)
PLOT_KINDS = ("pn-dist", "husimi-q", "squeeze-ellipse")
PARAM_PREFIX = "param_"


def _add_family_parsers(
    parent: argparse.ArgumentParser, common: argparse.ArgumentParser
) -> None:
    """One subparser per family, with an option for each of its parameters."""
    families = parent.add_subparsers(dest="family", required=True, metavar="family")
    for family in FAMILIES.values():
        sub = families.add_parser(
            family.name,
            parents=[common],
            allow_abbrev=False,
            help=family.description,
            epilog="Complex values are written a+bi; use --name=value for values "
            "starting with '-'.",
        )
        for name, kind in family.params.items():
            default = family.defaults.get(name)
            sub.add_argument(
                f"--{name}",
                dest=f"{PARAM_PREFIX}{name}",
                default=None,
                help=kind if default is None else f"{kind}, default {default}",
            )


def family_params(args: argparse.Namespace) -> dict[str, str]:
    """Family parameters given on the command line, as strings."""
    return {
        key[len(PARAM_PREFIX) :]: value
        for key, value in vars(args).items()
        if key.startswith(PARAM_PREFIX) and value is not None
    }


def build_parser() -> argparse.ArgumentParser:
    """Command line parser with the state, verify, plot and serve subcommands.

    Returns:
        argparse.ArgumentParser: The parser.
    """
    common = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    common.add_argument("--log-level", default=None, help="Logging level")
    common.add_argument("--config", default=None, help="JSON run configuration")
    common.add_argument("--dim", type=int, default=None, help="Fock truncation N")
    common.add_argument("--output-dir", default=None, help="Output directory")
    common.add_argument("--format", choices=("json", "csv"), default=None)

    parser = argparse.ArgumentParser(
        prog="aes-workbench",
        description="Algebra eigenstates of the two-photon algebra.",
        allow_abbrev=False,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    state = sub.add_parser(
        "state", allow_abbrev=False, help="Build a state and write its record"
    )
    _add_family_parsers(state, common)

    verify = sub.add_parser(
        "verify", parents=[common], allow_abbrev=False, help="Run a verification suite"
    )
    verify.add_argument("suite", choices=SUITE_NAMES)

    plot = sub.add_parser("plot", allow_abbrev=False, help="Draw a figure of a state")
    plot.add_argument("kind", choices=PLOT_KINDS)
    _add_family_parsers(plot, common)

    serve = sub.add_parser(
        "serve", parents=[common], allow_abbrev=False, help="Start the report service"
    )
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", action="store", default="8000")
    serve.add_argument("--reload", action="store_true", default=False)
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    return load_config(
        args.config,
        truncation=args.dim,
        output_dir=args.output_dir,
        format=args.format,
    )


def cmd_state(args: argparse.Namespace, params: dict[str, str]) -> int:
    """Build a family member and write its record.

    Args:
        args (argparse.Namespace): Parsed arguments.
        params (dict[str, str]): Family parameters.

    Returns:
        int: Exit code.
    """
    config = _config(args)
    bundle = build_state(args.family, params, config)
    record = state_record(bundle, config)
    for path in write_record(record, config.output_dir, args.family, config.format):
        print(path)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    """Run a verification suite and write its report.

    Args:
        args (argparse.Namespace): Parsed arguments.

    Returns:
        int: 0 if every check passed, 1 otherwise.
    """
    from aesworkbench.cli.verification import run_suite
    from aesworkbench.cli.verification import suite_record

    config = _config(args)
    reports = run_suite(args.suite, config)
    record = suite_record(reports, config)
    stem = f"verify-{args.suite}"
    for path in write_record(record, config.output_dir, stem, config.format):
        print(path)
    for report in reports:
        status = "PASS" if report.passed else "FAIL"
        print(f"{status} {report.suite} ({len(report.checks)} checks)")
    return EXIT_OK if record["passed"] else EXIT_FAILED


def cmd_plot(args: argparse.Namespace, params: dict[str, str]) -> int:
    """Draw a figure of a family member.

    Args:
        args (argparse.Namespace): Parsed arguments.
        params (dict[str, str]): Family parameters.

    Returns:
        int: Exit code.
    """
    from aesworkbench.cli.plotting import plot

    config = _config(args)
    bundle = build_state(args.family, params, config)
    for path in plot(args.kind, bundle, config):
        print(path)
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    """Start the report service with uvicorn.

    Args:
        args (argparse.Namespace): Parsed arguments.

    Returns:
        int: Exit code.
    """
    import uvicorn

    uvicorn.run(
        app="aesworkbench.server.main:app",
        host=args.host,
        port=int(args.port),
        reload=args.reload,
    )
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    """Main entry point of the command line.

    Args:
        argv (list[str] | None, optional): Arguments, sys.argv[1:] by default.

    Returns:
        int: Exit code.
    """
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)

    try:
        if args.command == "state":
            return cmd_state(args, family_params(args))
        if args.command == "plot":
            return cmd_plot(args, family_params(args))
        if args.command == "verify":
            return cmd_verify(args)
        return cmd_serve(args)
    except (InvalidSpec, ConfigError) as exc:
        logger.error("%s", exc)
        return EXIT_USAGE
    except AesError as exc:
        logger.error("%s: %s", type(exc).__name__, exc)
        tail = getattr(exc, "tail_mass", None)
        if tail is not None:
            print(json.dumps({"error": type(exc).__name__, "tail_mass": tail}))
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
