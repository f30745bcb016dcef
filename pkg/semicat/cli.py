"""Command line interface for semicat."""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path
from typing import Any, Callable, NoReturn, Optional

from colorama import Fore, Style, init
from rich.console import Console
from rich.logging import RichHandler

from semicat.core.exceptions import ConsistencyError, SemicatError, UnknownCommandError
from semicat.core.structure_analyzer import StructureAnalyzer, jsonable
from semicat.parsers.loader import parse_fix_set
from semicat.schema.config import AnalysisConfig
from semicat.schema.report import Report
from semicat.vars.suites import ALL_SUITES, SUITES
from semicat.verify.suites import run_suites

# Initialize colorama for Windows support
init()

# Reports go to stdout; status lines and logs to stderr
console = Console(stderr=True)

# Set up logging
logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INTERNAL = 2


def format_error(msg: str) -> str:
    """Format error message with color."""
    return f"{Fore.RED}Error: {msg}{Style.RESET_ALL}"


def format_success(msg: str) -> str:
    """Format success message with color."""
    return f"{Fore.GREEN}{msg}{Style.RESET_ALL}"


def format_info(msg: str) -> str:
    """Format info message with color."""
    return f"{Fore.CYAN}{msg}{Style.RESET_ALL}"


class CommandParser(argparse.ArgumentParser):
    """Argument parser that raises instead of exiting on bad input."""

    def error(self, message: str) -> NoReturn:
        raise UnknownCommandError(message)


def create_parser() -> argparse.ArgumentParser:
    """Create the argument parser for the CLI."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "text"], default="json", help="Report format")
    common.add_argument("-o", "--output", help="Output file path (default: print to stdout)", metavar="OUTPUT")
    common.add_argument("--no-pretty", help="Disable pretty printing", action="store_true")
    common.add_argument("--timing", help="Include seconds per phase in the report", action="store_true")
    common.add_argument("--config", help="semicat.toml or pyproject.toml with a [tool.semicat] table", metavar="PATH")
    common.add_argument("--max-order", type=int, help="Largest order handed to brute-force searches")
    common.add_argument("-v", "--verbose", help="Log search statistics", action="store_true")

    parser = CommandParser(
        prog="semicat",
        description=format_info("semicat - Automorphisms and orbit counts of finite semigroups and bipartite graphs"),
    )
    subparsers = parser.add_subparsers(dest="command", parser_class=CommandParser, help="Command to execute")

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        return subparsers.add_parser(name, parents=[common], help=format_info(help_text))

    add("check", "Parse and validate a structure file").add_argument("file")

    aut_parser = add("aut", "Enumerate automorphisms")
    aut_parser.add_argument("file")
    aut_parser.add_argument("--method", choices=["structured", "brute"], default="structured")

    iso_parser = add("iso", "Enumerate isomorphisms between two structures")
    iso_parser.add_argument("first")
    iso_parser.add_argument("second")

    orbits_parser = add("orbits", "Count orbits of the automorphism group on n-tuples")
    orbits_parser.add_argument("file")
    orbits_parser.add_argument("-n", type=int, help="Longest tuple length")
    orbits_parser.add_argument("--fix", nargs="+", default=[], metavar="SET", help="Files naming subsets to fix setwise")
    orbits_parser.add_argument("--method", choices=["burnside", "union-find", "both"], default="both")

    add("decompose", "Split into components and report eta, upsilon and xi").add_argument("file")
    add("normalize", "Graham normal form of a Rees matrix semigroup").add_argument("file")
    add("classify-graph", "Recognise a finite homogeneous bipartite graph").add_argument("file")
    add("predicates", "Evaluate structural predicates").add_argument("file")

    verify_parser = add("verify", "Run verification suites against brute-force oracles")
    verify_parser.add_argument("suite", choices=[*ALL_SUITES, "all"], help="Suite name, or all")
    verify_parser.add_argument("--quick", action="store_true", help="Use the reduced corpora")
    return parser


def parse_arguments(argv: list[str]) -> argparse.Namespace:
    """Parse argv.

    Raises:
        UnknownCommandError: If no known subcommand is given or an argument is invalid
    """
    args = create_parser().parse_args(argv)
    if not args.command:
        msg = "No command given"
        raise UnknownCommandError(msg)
    return args


def load_config(args: argparse.Namespace) -> AnalysisConfig:
    """Read ``--config`` if given and apply ``--max-order``."""
    config = AnalysisConfig.from_toml(args.config) if args.config else AnalysisConfig()
    if args.max_order is not None:
        config = config.model_copy(update={"max_order": args.max_order})
    return config


def _analyzer(args: argparse.Namespace, report: Report, config: AnalysisConfig, path: str) -> StructureAnalyzer:
    report.add_input(Path(path))
    return StructureAnalyzer(path, config)


def _verify(args: argparse.Namespace, report: Report, config: AnalysisConfig) -> dict[str, Any]:
    results = run_suites([args.suite], quick=args.quick, config=config)
    if not all(result.passed for result in results):
        report.status = "failed"
    return {"quick": args.quick, "suites": [result.model_dump() for result in results]}


def _orbits(args: argparse.Namespace, report: Report, config: AnalysisConfig) -> dict[str, Any]:
    analyzer = _analyzer(args, report, config, args.file)
    fix_sets = []
    for path in args.fix:
        report.add_input(Path(path))
        fix_sets.append(parse_fix_set(path))
    return analyzer.orbits(n=args.n, fix_sets=fix_sets, method=args.method)


def get_command_handler(command: str) -> Optional[Callable[[argparse.Namespace, Report, AnalysisConfig], dict[str, Any]]]:
    """Get the function that runs a subcommand and returns its results."""
    handlers: dict[str, Callable[[argparse.Namespace, Report, AnalysisConfig], dict[str, Any]]] = {
        "check": lambda args, report, config: _analyzer(args, report, config, args.file).check(),
        "aut": lambda args, report, config: _analyzer(args, report, config, args.file).automorphisms(args.method),
        "iso": lambda args, report, config: _analyzer(args, report, config, args.first).isomorphisms(
            _analyzer(args, report, config, args.second),
        ),
        "orbits": _orbits,
        "decompose": lambda args, report, config: _analyzer(args, report, config, args.file).decompose(),
        "normalize": lambda args, report, config: _analyzer(args, report, config, args.file).normalize(),
        "classify-graph": lambda args, report, config: _analyzer(args, report, config, args.file).classify_graph(),
        "predicates": lambda args, report, config: _analyzer(args, report, config, args.file).predicates(),
        "verify": _verify,
    }
    return handlers.get(command)


def execute_command(args: argparse.Namespace, argv: list[str]) -> Report:
    """Run the parsed command and package its results.

    Raises:
        UnknownCommandError: If the command has no handler
        SemicatError: Forwarded from the analysis
    """
    handler = get_command_handler(args.command)
    if handler is None:
        msg = f"Unknown command {args.command!r}"
        raise UnknownCommandError(msg)
    report = Report(command=list(argv))
    started = time.perf_counter()
    config = load_config(args)
    loaded = time.perf_counter()
    report.results = jsonable(handler(args, report, config))
    finished = time.perf_counter()
    if args.timing:
        report.timing = {"config": round(loaded - started, 6), "command": round(finished - loaded, 6)}
    return report


def run_command(argv: list[str]) -> Report:
    """Parse argv, run the command and return its report.

    Raises:
        UnknownCommandError: On an unknown command or bad arguments
        SemicatError: Forwarded from parsing or analysis
    """
    return execute_command(parse_arguments(argv), argv)


def _text_lines(value: Any, indent: int = 0) -> list[str]:
    pad = "  " * indent
    if isinstance(value, dict):
        lines = []
        for key in sorted(value):
            item = value[key]
            if isinstance(item, (dict, list)) and item:
                lines.append(f"{pad}{key}:")
                lines.extend(_text_lines(item, indent + 1))
            else:
                lines.append(f"{pad}{key}: {json.dumps(item)}")
        return lines
    if isinstance(value, list):
        if all(not isinstance(item, (dict, list)) for item in value):
            return [f"{pad}{json.dumps(value)}"]
        lines = []
        for item in value:
            if isinstance(item, dict):
                nested = _text_lines(item, indent + 1)
                lines.append(f"{pad}- {nested[0].strip()}" if nested else f"{pad}-")
                lines.extend(nested[1:])
            else:
                lines.append(f"{pad}- {json.dumps(item)}")
        return lines
    return [f"{pad}{json.dumps(value)}"]


def emit_report(report: Report, fmt: str = "json", pretty: bool = True, include_timing: bool = False) -> bytes:
    """Serialize a report with stable key order.

    Timing is dropped unless ``include_timing`` is set, so equal inputs give byte-identical output.
    The text format is a plain listing of every field, failure witnesses included.
    """
    data = report.model_dump()
    if not include_timing or data.get("timing") is None:
        data.pop("timing", None)
    if fmt == "text":
        return ("\n".join(_text_lines(data)) + "\n").encode("utf-8")
    return (json.dumps(data, indent=2 if pretty else None, sort_keys=True) + "\n").encode("utf-8")


def save_output(payload: bytes, output_file: Optional[str] = None) -> None:
    """Write the serialized report to a file, creating parent directories, or to stdout."""
    if output_file:
        output_path = Path(output_file)
        output_path.parent.mkdir(parents=True, exist_ok=True)
        output_path.write_bytes(payload)
        console.print(f"[green]Output saved to {output_file}[/green]")
    else:
        sys.stdout.buffer.write(payload)
        sys.stdout.flush()


def _setup_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(message)s",
        handlers=[RichHandler(console=console, show_path=False)],
        force=True,
    )


def main(argv: Optional[list[str]] = None) -> int:
    """Main CLI entry point; returns the exit code."""
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parse_arguments(argv)
    except UnknownCommandError as e:
        create_parser().print_usage(sys.stderr)
        console.print(format_error(str(e)))
        return EXIT_FAILED

    _setup_logging(args.verbose)
    if args.command == "verify":
        if args.suite == "all":
            console.print(format_info(f"Running all {len(ALL_SUITES)} suites"))
        else:
            console.print(format_info(f"Running {args.suite}: {SUITES[args.suite]}"))

    try:
        report = execute_command(args, argv)
    except ConsistencyError as e:
        logger.exception("Structured search and oracle disagree")
        console.print(format_error(str(e)))
        return EXIT_INTERNAL
    except SemicatError as e:
        logger.debug("Command failed", exc_info=True)
        console.print(format_error(str(e)))
        return EXIT_FAILED
    except Exception as e:  # noqa: BLE001
        logger.exception("Unexpected error executing command")
        console.print(format_error(f"Internal error: {e}"))
        return EXIT_INTERNAL

    save_output(emit_report(report, args.format, not args.no_pretty, args.timing), args.output)
    if report.status == "ok":
        console.print(format_success("Command completed successfully!"))
        return EXIT_OK
    console.print(format_error("Verification failed"))
    return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
