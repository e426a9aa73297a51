"""
SudoCrypt command-line entry point.

Exit codes: 0 success, 1 usage, 2 media format or I/O, 3 key validation.
"""

import argparse
import sys
from typing import List, NoReturn, Optional

from sudocrypt import __version__
from sudocrypt.analysis.bench import SUITES
from sudocrypt.analysis.exceptions import DimensionError
from sudocrypt.ciphers.exceptions import PreconditionError
from sudocrypt.configs.config import get_config
from sudocrypt.keys.exceptions import InvalidArgumentError, SudokuKeyError
from sudocrypt.keys.keymat import MediaKind
from sudocrypt.media.exceptions import MediaError
from sudocrypt.utils.logger import Loggers, log

from .commands import cmd_analyze, cmd_bench, cmd_decrypt, cmd_encrypt, cmd_keygen
from .display import display_error
from .exceptions import UsageError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FORMAT = 2
EXIT_KEY = 3

MEDIA_CHOICES = [m.value for m in MediaKind]


class ArgumentParser(argparse.ArgumentParser):
    """Raises UsageError instead of exiting with argparse's status 2."""

    def error(self, message: str) -> NoReturn:
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(
        prog="sudocrypt",
        description="Sudoku-keyed encryption for images, WAV audio and frame-directory video.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", help="YAML config file (default: $CONFIG_PATH)")
    parser.add_argument("--log-level", help="stderr log level, e.g. INFO or DEBUG")
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=ArgumentParser)

    keygen = subparsers.add_parser("keygen", help="Derive a key file from a timestamp")
    keygen.add_argument("--size", type=int, help="Sudoku size: 4, 9, 16 or 25")
    keygen.add_argument("--timestamp", type=int, help="Unix seconds (default: now)")
    keygen.add_argument("--iterations", type=int, help="Encryption rounds")
    keygen.add_argument("--media", choices=MEDIA_CHOICES, default=MediaKind.IMAGE.value)
    keygen.add_argument("--blanks", type=int, default=0, help="Store the grid as a puzzle with K blank cells")
    keygen.add_argument("--alphabet", help="Symbols used to display the grid")
    keygen.add_argument("--out", required=True, help="Key file to write")
    keygen.set_defaults(handler=cmd_keygen)

    encrypt = subparsers.add_parser("encrypt", help="Encrypt media and record its shape in the key")
    encrypt.add_argument("--in", dest="input", required=True)
    encrypt.add_argument("--key", required=True)
    encrypt.add_argument("--out", dest="output", required=True)
    encrypt.add_argument("--media", choices=MEDIA_CHOICES, help="Override the inferred media kind")
    encrypt.add_argument("--frozen-key", action="store_true", help="Never rewrite the key file")
    encrypt.add_argument("--trace", help="Write per-stage timings to this CSV (images)")
    encrypt.set_defaults(handler=cmd_encrypt)

    decrypt = subparsers.add_parser("decrypt", help="Decrypt media with a key carrying its shape")
    decrypt.add_argument("--in", dest="input", required=True)
    decrypt.add_argument("--key", required=True)
    decrypt.add_argument("--out", dest="output", required=True)
    decrypt.set_defaults(handler=cmd_decrypt)

    analyze = subparsers.add_parser("analyze", help="Compare an original with its ciphertext")
    analyze.add_argument("--original", required=True)
    analyze.add_argument("--encrypted", required=True)
    analyze.add_argument("--crop", action="store_true", help="Crop images to their common region")
    analyze.add_argument("--csv", help="Also write the report as CSV")
    analyze.add_argument("--key", help="Key for --sensitivity")
    analyze.add_argument(
        "--sensitivity", action="store_true", help="Measure ciphertext change for a one-sample edit"
    )
    analyze.set_defaults(handler=cmd_analyze)

    bench = subparsers.add_parser("bench", help="Run a timing sweep")
    bench.add_argument("--suite", required=True, choices=list(SUITES))
    bench.add_argument("--out", required=True, help="CSV output")
    bench.set_defaults(handler=cmd_bench)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        display_error(str(e))
        return EXIT_USAGE
    except SystemExit as e:
        # --help and --version
        return e.code if isinstance(e.code, int) else EXIT_OK

    config = get_config(args.config)
    Loggers.init_config(
        log_level=args.log_level or config.logging.level, log_path=config.logging.path
    )

    try:
        return args.handler(args, config)
    except (UsageError, InvalidArgumentError) as e:
        display_error(str(e))
        return EXIT_USAGE
    except SudokuKeyError as e:
        log.warning(f"{args.command}: {e}")
        display_error(f"key validation failed: {e}")
        return EXIT_KEY
    except (MediaError, DimensionError, PreconditionError, OSError) as e:
        log.error(f"{args.command}: {e}")
        display_error(str(e))
        return EXIT_FORMAT


if __name__ == "__main__":
    sys.exit(main())
