"""Argument parsing and dispatch for the operad-forge command line."""

import argparse
from collections.abc import Sequence

from pydantic import ValidationError

from operad_forge.cli import commands
from operad_forge.cli.output import emit
from operad_forge.core.errors import ArgumentError
from operad_forge.core.logging import get_logger
from operad_forge.models.enums import DiffContext, DimsSelector, OutputFormat, Suite
from operad_forge.models.report_schemas import RunConfig

logger = get_logger(__name__)

# Tables default to csv, elements and scalars to plain text, reports to json
DEFAULT_FORMATS = {
    "schroeder": OutputFormat.CSV,
    "dims": OutputFormat.CSV,
    "diff": OutputFormat.PLAIN,
    "theta": OutputFormat.PLAIN,
    "count-trees": OutputFormat.PLAIN,
    "verify": OutputFormat.JSON,
}


class _Parser(argparse.ArgumentParser):
    """Usage errors become ArgumentError (exit 2) instead of SystemExit."""

    def error(self, message: str):
        raise ArgumentError(message, details={"usage": self.format_usage().strip()})


def _dims_selector(raw: str) -> DimsSelector:
    try:
        return DimsSelector.parse(raw)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _common(
    parser: argparse.ArgumentParser,
    max_n: int | None = None,
    *,
    degree: bool = False,
    long_run: bool = False,
    seed: bool = False,
) -> None:
    """Register the shared flags a command actually reads; the others are usage errors."""
    if max_n is not None:
        parser.add_argument(
            "--max-n", type=int, default=max_n, help="Max arity (default %(default)s)"
        )
    if degree:
        parser.add_argument("--degree", type=int, default=None, help="Only this degree")
    parser.add_argument(
        "--format",
        choices=[f.value for f in OutputFormat],
        default=None,
        help="Output format (csv, json or plain)",
    )
    parser.add_argument("--out", default=None, help="Write output to this file instead of stdout")
    if long_run:
        parser.add_argument(
            "--long-run", action="store_true", help="Lift the default arity bounds to --max-n"
        )
    if seed:
        parser.add_argument("--seed", type=int, default=0, help="Seed for sampled property checks")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="operad-forge",
        description="Exact computations with Lie, D∞, sΛPerm and sΛLeib∞.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("schroeder", help="Schröder numbers with cross-checks")
    _common(p, max_n=10)

    p = sub.add_parser("dims", help="Dimension tables")
    p.add_argument("which", type=_dims_selector, help="Lie, D, sPerm, sLeib∞ or Lie⊗D")
    _common(p, max_n=5, degree=True)

    p = sub.add_parser("diff", help="Apply ∂ (D) or the tree differential (tree)")
    p.add_argument("element", help='Element text, e.g. "d2|1|1" or "T3(1,2,3)"')
    p.add_argument(
        "--which",
        "--context",
        dest="which",
        choices=[c.value for c in DiffContext],
        default=DiffContext.D.value,
    )
    _common(p, max_n=5, long_run=True)

    p = sub.add_parser("theta", help="θ of a tree-monomial combination")
    p.add_argument("element", help='Tree text, e.g. "T2(T2(1,2),3)"')
    _common(p, max_n=5, long_run=True)

    p = sub.add_parser("verify", help="Run acceptance suites")
    p.add_argument(
        "suite",
        nargs="?",
        choices=[s.value for s in Suite],
        default=Suite.ALL.value,
    )
    _common(p, max_n=4, long_run=True, seed=True)

    p = sub.add_parser("count-trees", help="Count planar trees built from given corollas")
    p.add_argument("corollas", help='Corolla multiset, e.g. "c2:1,c3:1"')
    _common(p)

    return parser


def run_config(args: argparse.Namespace) -> RunConfig:
    """
    Validate the shared flags.

    Raises:
        ArgumentError: If --max-n < 1 or --degree < 0
    """
    fmt = args.format or DEFAULT_FORMATS[args.command]
    # flags a command does not register keep the RunConfig defaults
    given = {
        name: getattr(args, name)
        for name in ("max_n", "degree", "long_run", "seed")
        if hasattr(args, name)
    }
    try:
        return RunConfig(command=args.command, format=fmt, out=args.out, **given)
    except ValidationError as e:
        first = e.errors()[0]
        field = ".".join(str(part) for part in first["loc"])
        raise ArgumentError(f"--{field.replace('_', '-')}: {first['msg']}") from None


def run(argv: Sequence[str] | None = None) -> int:
    """
    Parse argv, run the command and write its output.

    Returns:
        Exit status: 0 success, 1 verification failure

    Raises:
        AppError: Usage, parse, context and resource errors (mapped to exit codes by main)
    """
    args = build_parser().parse_args(argv)
    config = run_config(args)
    logger.info("cli.start", command=config.command, max_n=config.max_n, seed=config.seed)

    status = 0
    if config.command == "schroeder":
        text = commands.cmd_schroeder(config)
    elif config.command == "dims":
        text = commands.cmd_dims(config, args.which)
    elif config.command == "diff":
        text = commands.cmd_diff(config, args.element, DiffContext(args.which))
    elif config.command == "theta":
        text = commands.cmd_theta(config, args.element)
    elif config.command == "count-trees":
        text = commands.cmd_count_trees(config, args.corollas)
    else:
        text, status = commands.cmd_verify(config, Suite(args.suite))

    emit(text, config.out)
    logger.info("cli.done", command=config.command, status=status)
    return status
