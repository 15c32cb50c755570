"""Run configuration for the octquad command line."""

import argparse
import logging
from dataclasses import dataclass
from pathlib import Path
try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

from . import pipelines
from .verify import SCOPES

COMMANDS = ("gen", "verify", "transform")
FORMATS = ("bfile", "json")


@dataclass
class Config:
    """Settings for one invocation."""

    command: str
    model: str | None = None
    n: int = 20
    method: str | None = None
    k: int = 1
    scope: str = "all"
    output_format: str = "bfile"
    input_path: Path | None = None  # None reads standard input
    log_level: int = logging.INFO
    workers: int = 4  # concurrent verification checks

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> Self:
        """Build and validate a configuration from parsed arguments.

        Args:
            args: Namespace produced by ``cli.build_parser()``.

        Returns:
            Configuration instance with the default method filled in.

        Raises:
            ValueError: If the arguments do not describe a valid run.
        """
        command = getattr(args, "command", None)
        if command not in COMMANDS:
            raise ValueError(f"unknown command {command!r}; expected one of {COMMANDS}")

        if getattr(args, "verbose", False):
            log_level = logging.DEBUG
        elif getattr(args, "quiet", False):
            log_level = logging.WARNING
        else:
            log_level = logging.INFO

        default_format = "json" if command == "verify" else "bfile"
        output_format = getattr(args, "format", None) or default_format
        if output_format not in FORMATS:
            raise ValueError(f"unknown format {output_format!r}")
        if command == "verify" and output_format != "json":
            raise ValueError("verify writes a JSON report; --format bfile is not available")

        config = cls(command=command, output_format=output_format, log_level=log_level)

        if command == "gen":
            config.n = getattr(args, "n", 20)
            if config.n < 0:
                raise ValueError(f"--n must be nonnegative, got {config.n}")
            config.model = args.model
            config.method = pipelines.validate(args.model, getattr(args, "method", None))
        elif command == "verify":
            config.scope = getattr(args, "scope", "all")
            if config.scope not in SCOPES:
                raise ValueError(f"unknown scope {config.scope!r}")
            config.workers = getattr(args, "workers", 4)
            if config.workers < 1:
                raise ValueError(f"--workers must be positive, got {config.workers}")
        else:
            config.k = getattr(args, "k", 1)
            path = getattr(args, "input", None)
            config.input_path = Path(path) if path and path != "-" else None

        return config
