import sys
from typing import List, Optional, TextIO

from app.api import measures, partitions, polys, transform, verify
from app.api.common import CliParser
from app.core.config import OUTPUT_FORMATS, get_settings
from app.core.errors import EXIT_OK, FreeCalcError, exit_code_for
from app.core.logs import configure_logging, get_logger
from app.schemas.results import CommandResult, results_to_csv, results_to_text

# Grupos de comandos (equivalente a los routers)
COMMAND_GROUPS = (partitions, transform, measures, polys, verify)

logger = get_logger("cli")


def build_parser() -> CliParser:
    parser = CliParser(prog="freecalc", description="Cálculo exacto de medidas estocásticas libres.")
    parser.add_argument("--format", choices=list(OUTPUT_FORMATS), default=None, help="NDJSON (por defecto), CSV o tabla de texto")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    subparsers = parser.add_subparsers(dest="command", required=True)
    for group in COMMAND_GROUPS:
        group.register(subparsers)
    return parser


def emit(results: List[CommandResult], fmt: str, out: TextIO) -> None:
    if not results:
        return
    if fmt == "csv":
        out.write(results_to_csv(results))
    elif fmt == "text":
        out.write(results_to_text(results))
    else:
        for r in results:
            out.write(r.to_line() + "\n")


def run(argv: Optional[List[str]] = None, out: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    try:
        settings = get_settings()
        args = build_parser().parse_args(argv)
        level = "DEBUG" if args.verbose > 1 else "INFO" if args.verbose else settings.log_level
        configure_logging(level)
        results = args.func(args)
        emit(results, args.format or settings.default_format, out)
        return EXIT_OK
    except SystemExit as exc:
        # --help
        return int(exc.code or 0)
    except (FreeCalcError, ValueError, ArithmeticError, IndexError) as exc:
        code = exit_code_for(exc)
        print(f"error: {exc}", file=sys.stderr)
        logger.debug("detalle", exc_info=exc)
        return code


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
