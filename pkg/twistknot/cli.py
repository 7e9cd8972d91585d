#!/usr/bin/env python

import argparse
import logging
import sys
import traceback
from typing import Any, Callable, Dict, List, Optional

from . import __version__ as twistknot_version
from .calculator import Calculator
from .exceptions import ConfigError, GaussCodeError, TwistKnotException
from .families import FamilyName
from .gauss import serialize, to_json
from .log import configure_root_logger, log
from .render import render
from .search import CountedSet
from .utils import read_code_argument


def _bounded_int(minimum: int) -> Callable[[str], int]:
    def parse(text: str) -> int:
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"invalid integer value: '{text}'")
        if value < minimum:
            raise argparse.ArgumentTypeError(f"must be at least {minimum}, got {value}")
        return value

    return parse


_positive_int = _bounded_int(1)
_non_negative_int = _bounded_int(0)


def _common_options() -> argparse.ArgumentParser:
    # defaults are suppressed so options given before the subcommand survive
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    general_options = common.add_argument_group(title="general options")
    general_options.add_argument(
        "-h",
        "--help",
        action="help",
        help="Show this help message and quit",
    )
    general_options.add_argument(
        "-v",
        "--verbose",
        dest="verbose",
        action="count",
        help="Make output verbose. Use it multiple times to increase verbosity",
    )
    general_options.add_argument(
        "-c",
        "--config",
        dest="config",
        type=str,
        help="A YAML configuration file",
    )
    general_options.add_argument(
        "--format",
        dest="format",
        choices=["json", "text"],
        help="Output format (default: json)",
    )
    general_options.add_argument(
        "--seed",
        dest="seed",
        type=int,
        help="Seed for randomized commands",
    )
    general_options.add_argument(
        "--node-cap",
        dest="node_cap",
        type=_positive_int,
        help="Maximum number of search nodes (default: $TKC_NODE_CAP or 200000)",
    )
    general_options.add_argument(
        "--free-budget",
        dest="free_budget",
        type=_non_negative_int,
        help="Number of free move rewrites explored per simplification",
    )
    general_options.add_argument(
        "--allow-add-moves",
        dest="allow_add_moves",
        action="store_true",
        help="Let simplification insert kinks, bigons and bar pairs",
    )
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="tkc",
        description="Invariants, moves and bounded unknotting searches for twisted knot Gauss codes",
        add_help=False,
        parents=[common],
    )
    parser.add_argument(
        "--version",
        action="version",
        version=f"twistknot v{twistknot_version}",
        help="Print the program version and quit",
    )
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND", title="commands")
    subparsers.required = True

    def command(name: str, help_: str) -> argparse.ArgumentParser:
        return subparsers.add_parser(name, help=help_, description=help_, add_help=False, parents=[common])

    def code_argument(sub: argparse.ArgumentParser) -> None:
        sub.add_argument("code", help="Gauss code text (quoted), a JSON document with a 'code' field, or '-' for stdin")

    code_argument(command("parse", "Validate a code and print its canonical form"))

    invariants = command("invariants", "Print odd writhe, Q(s,t) and the per chord index table")
    code_argument(invariants)
    invariants.add_argument("--export",
                            dest="export",
                            type=str,
                            default=None,
                            help="Also write the chord table to a spreadsheet (.csv, .xlsx)")

    code_argument(command("bounds", "Print the lower bounds implied by the odd writhe"))

    search = command("search", "Search for a shortest unknotting sequence")
    code_argument(search)
    search.add_argument("--moves",
                        dest="moves",
                        choices=[c.value for c in CountedSet],
                        default="arcshift",
                        help="The counted move set (default: arcshift)")
    search.add_argument("--max",
                        dest="max",
                        type=_non_negative_int,
                        default=None,
                        help="Maximum number of counted moves")

    certify = command("certify", "Bound the arc shift, forbidden and region arc shift numbers")
    code_argument(certify)
    certify.add_argument("--max",
                         dest="max",
                         type=_non_negative_int,
                         default=None,
                         help="Maximum number of counted moves")

    family = command("family", "Print a member of a knot family")
    family.add_argument("name", choices=[f.value for f in FamilyName], help="The family")
    family.add_argument("--n", dest="n", type=int, required=True, help="The family member")

    command("examples", "List the built-in example codes")

    random = command("random", "Print a random code drawn with --seed")
    random.add_argument("--chords", dest="chords", type=_non_negative_int, required=True, help="Number of chords")
    random.add_argument("--bars", dest="bars", type=_non_negative_int, default=0, help="Number of bars")
    return parser


def _configure(calculator: Calculator, args: argparse.Namespace) -> None:
    options = vars(args)
    if options.get("config"):
        calculator.config(options["config"])
    for name in ("node_cap", "free_budget", "seed"):
        if options.get(name) is not None:
            getattr(calculator, name)(options[name])
    if options.get("allow_add_moves"):
        calculator.allow_add_moves(True)
    if options.get("format"):
        calculator.output_format(options["format"])


def _execute(calculator: Calculator, args: argparse.Namespace) -> Dict[str, Any]:
    command = args.command
    if command == "examples":
        return {"examples": [fixture.to_json() for fixture in calculator.examples()]}
    if command == "family":
        return calculator.family(args.name, args.n).to_json()
    if command == "random":
        code = calculator.random(args.chords, args.bars)
        return {"code": serialize(code), "chords": len(code.chord_ids), "bars": code.bar_count}

    code = calculator.parse(read_code_argument(args.code))
    if command == "parse":
        return to_json(code)
    if command == "invariants":
        return dict({"code": serialize(code)}, **calculator.invariants(code, args.export))
    if command == "bounds":
        return calculator.bounds(code).to_json()
    if command == "search":
        return calculator.search(code, args.moves, args.max).to_json()
    if command == "certify":
        return calculator.certify(code, args.max).to_json()
    raise ConfigError(f"Unknown command '{command}'")


def run(argv: Optional[List[str]] = None) -> int:
    """Run one command and return its exit code.

    Usage and configuration errors exit with 2, invalid codes and other
    domain errors with 1.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(sys.argv[1:] if argv is None else argv)
    except SystemExit as ex:
        return ex.code if isinstance(ex.code, int) else 2

    # initialize logger
    levels = ["WARNING", "V", "VV", "VVV", "DEBUG"]
    configure_root_logger(levels[min(len(levels) - 1, getattr(args, "verbose", 0))])

    try:
        calculator = Calculator()
        _configure(calculator, args)
        output_format = calculator.configuration().get("format")
        document = _execute(calculator, args)
        print(render(args.command, document, output_format))

    except KeyboardInterrupt:
        log.v("Interrupted by user, Exiting...")
        return 1
    except ConfigError as e:
        log.error(str(e))
        return 2
    except Exception as e:  #pylint: disable=broad-except
        # catch errors and print to stderr
        if logging.root.level <= logging.DEBUG:
            log.error(traceback.format_exc())
        else:
            log.error(str(e))
        if isinstance(e, GaussCodeError):
            for violation in e.violations:
                log.error("%s", violation)
        if not isinstance(e, TwistKnotException):
            log.debug("Unexpected failure of type %s", type(e).__name__)
        return 1

    log.v("twistknot finished, exiting now...")
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
