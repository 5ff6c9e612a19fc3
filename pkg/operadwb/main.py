import argparse
import logging
import sys

from pydantic import ValidationError

from operadwb.commands import check, compose, enumeration, normalize, render
from operadwb.config import settings
from operadwb.exceptions import INVARIANT_BREACH, DocumentParseError, OperadError

logger = logging.getLogger("operadwb")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="operad-wb", description="Exact workbench for coloured operads and bimodules")
    parser.add_argument("--log-level", default=settings.LOG_LEVEL, help="root log level (default from OPERAD_WB_LOG_LEVEL)")
    parser.add_argument("--json", action="store_true", help="machine-readable reports")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in (compose, normalize, check, enumeration, render):
        command.add_parser(subparsers)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=args.log_level.upper(), format="%(levelname)s %(name)s: %(message)s")
    try:
        try:
            return args.run(args)
        except ValidationError as exc:
            raise DocumentParseError(str(exc)) from exc
    except OperadError as exc:
        sys.stderr.write(f"error: {exc.detail}\n")
        return exc.exit_code
    except Exception:
        logger.exception("%s failed", args.command)
        return INVARIANT_BREACH


if __name__ == "__main__":
    sys.exit(main())
