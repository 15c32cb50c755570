"""Entry point for octquad."""

import logging
import sys

from . import cli


def setup_logging(level: int = logging.INFO) -> None:
    """Set up logging configuration.

    Logs go to stderr so that b-files and reports on stdout stay clean.
    """
    logging.basicConfig(
        level=level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        handlers=[
            logging.StreamHandler(sys.stderr),
        ],
    )


def main() -> None:
    """Main entry point."""
    setup_logging()
    logger = logging.getLogger(__name__)

    try:
        code = cli.main()
    except KeyboardInterrupt:
        logger.info("Stopped by user")
        code = 130
    except Exception as e:
        logger.error(f"Unexpected error: {e}")
        code = cli.EXIT_FAILED
    sys.exit(code)


if __name__ == "__main__":
    main()
