"""Command-line front end: ``gen``, ``verify`` and ``transform``."""

import argparse
import asyncio
import json
import logging
import sys
from typing import TextIO

from . import pipelines
from .config import FORMATS, Config
from .seqcore import Sequence, binomial_transform, read_bfile, to_bfile
from .verify import SCOPES, run_verification

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="octquad",
        description="Octant and quadrant lattice-walk sequences: generation and checks.",
    )
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="Log at DEBUG.")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="Log warnings only.")
    commands = parser.add_subparsers(dest="command", required=True)

    gen = commands.add_parser("gen", help="Print terms 0..n of a sequence.")
    gen.add_argument("model", choices=list(pipelines.MODELS))
    gen.add_argument("--n", type=int, default=20, help="Last index (default: 20).")
    gen.add_argument(
        "--method",
        choices=sorted({m for methods in pipelines.METHODS.values() for m in methods}),
        default=None,
        help="Pipeline to use (default: rec where defined, otherwise ct).",
    )
    gen.add_argument("--format", choices=FORMATS, default=None)

    verify = commands.add_parser("verify", help="Run the verification suite.")
    verify.add_argument("--scope", choices=SCOPES, default="all")
    verify.add_argument("--workers", type=int, default=4, help="Concurrent checks.")
    verify.add_argument("--format", choices=FORMATS, default=None)

    transform = commands.add_parser("transform", help="Binomial transform of a b-file.")
    transform.add_argument("input", nargs="?", default=None, help="b-file (default: stdin)")
    transform.add_argument("--k", type=int, default=1, help="Transform power, may be negative.")
    transform.add_argument("--format", choices=FORMATS, default=None)
    return parser


def _render(s: Sequence, output_format: str) -> str:
    if output_format == "json":
        return json.dumps({"tag": s.tag, "terms": list(s.terms)}) + "\n"
    return to_bfile(s)


def cmd_gen(config: Config, out: TextIO) -> int:
    assert config.model is not None
    s = pipelines.generate(config.model, config.n, config.method)
    out.write(_render(s, config.output_format))
    return EXIT_OK


def cmd_verify(config: Config, out: TextIO) -> int:
    report = asyncio.run(run_verification(config.scope, config.workers))
    out.write(report.to_json())
    for failure in report.failures:
        logger.error(f"{failure.name} failed: {failure.detail}")
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_transform(config: Config, out: TextIO, inp: TextIO) -> int:
    if config.input_path is None:
        text = inp.read()
        source = "stdin"
    else:
        text = config.input_path.read_text()
        source = str(config.input_path)
    s = read_bfile(text, tag=source)
    logger.info(f"Read {len(s)} terms from {source}")
    out.write(_render(binomial_transform(s, config.k), config.output_format))
    return EXIT_OK


def run(config: Config, out: TextIO | None = None, inp: TextIO | None = None) -> int:
    """Execute one configured command and return its exit code."""
    out = out or sys.stdout
    inp = inp or sys.stdin
    try:
        if config.command == "gen":
            return cmd_gen(config, out)
        if config.command == "verify":
            return cmd_verify(config, out)
        return cmd_transform(config, out, inp)
    except (ValueError, OSError) as e:
        logger.error(f"{config.command}: {e}")
        return EXIT_USAGE
    except ArithmeticError as e:
        logger.error(f"{config.command}: computation failed: {e}")
        return EXIT_FAILED


def main(
    argv: list[str] | None = None,
    out: TextIO | None = None,
    inp: TextIO | None = None,
) -> int:
    """Parse ``argv``, run the command and return the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    try:
        config = Config.from_args(args)
    except ValueError as e:
        logger.error(f"Configuration error: {e}")
        return EXIT_USAGE

    logging.getLogger().setLevel(config.log_level)
    return run(config, out, inp)
