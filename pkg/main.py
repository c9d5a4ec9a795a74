"""
ED Degree Toolkit Entry Point

Provides the `edd` command line interface: one subcommand per formula path,
human-readable text by default, JSON with --json, and a single JSON error line
on stderr with a nonzero exit code on failure.
"""

import argparse
import json
import logging
import sys
from typing import List, Optional

from config import LOG_FORMAT, get_log_level
from dispatcher import EddDispatcher
from errors import EddError, UsageError, exit_code_for
from exactnum import parse_integer, parse_rational
from models import CommandConfig, EddReport

logger = logging.getLogger(__name__)

PRODUCT_METHOD_CHOICES = ("segre", "fo", "both")


# ==================== Argument types ====================

def _argument_type(parse):
    def convert(text: str):
        try:
            return parse(text)
        except (EddError, ValueError) as e:
            raise argparse.ArgumentTypeError(str(e))
    convert.__name__ = parse.__name__
    return convert


def integer_list(text: str) -> List[int]:
    return [parse_integer(part) for part in text.split(",")]


def rational_list(text: str) -> list:
    return [parse_rational(part) for part in text.split(",")]


def divisor_list(text: str) -> List[List[int]]:
    """'2,0;0,2' -> [[2, 0], [0, 2]]"""
    return [integer_list(part) for part in text.split(";") if part.strip()]


class EddArgumentParser(argparse.ArgumentParser):
    """argparse that raises UsageError instead of printing usage and exiting"""

    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


# ==================== CLI ====================

class EddCLI:
    """ED Degree Command Line Interface"""

    def __init__(self, stdout=None, stderr=None):
        self.stdout = stdout or sys.stdout
        self.stderr = stderr or sys.stderr
        self.dispatcher = EddDispatcher()
        self._setup_colors()

    def _setup_colors(self):
        """Setup terminal colors (stderr only, and only on a terminal)"""
        enabled = hasattr(self.stderr, "isatty") and self.stderr.isatty()
        self.COLORS = {
            "reset": "\033[0m",
            "cyan": "\033[96m",
            "green": "\033[92m",
            "red": "\033[91m",
        } if enabled else {}

    def _color(self, text: str, color: str) -> str:
        """Add color to text"""
        if not self.COLORS:
            return text
        return f"{self.COLORS.get(color, '')}{text}{self.COLORS['reset']}"

    def _print_event(self, message: str, color: str):
        print(self._color(message, color), file=self.stderr)

    def _setup_event_handlers(self):
        """Verbose mode: echo dispatcher events to stderr"""
        self.dispatcher.on("action_start", lambda data: self._print_event(
            f"┌─ [{data['action_type']}] {data['subcommand']} started", "cyan"))
        self.dispatcher.on("action_complete", lambda data: self._print_event(
            f"└─ {data['subcommand']} completed: {data['value']}", "green"))
        self.dispatcher.on("action_error", lambda data: self._print_event(
            f"└─ {data['subcommand']} failed: {data['error']}", "red"))

    def render(self, report: EddReport, as_json: bool) -> str:
        if as_json:
            return json.dumps(report.to_dict(), sort_keys=True, ensure_ascii=False)
        return report.to_display_string()

    def run(self, argv: Optional[List[str]] = None) -> int:
        try:
            args = build_parser().parse_args(argv)
            config = config_from_args(args)
        except UsageError as e:
            return self._fail(e)

        logging.basicConfig(
            level=logging.DEBUG if config.verbose else get_log_level(),
            format=LOG_FORMAT,
            stream=self.stderr
        )
        if config.verbose:
            self._setup_event_handlers()

        try:
            report = self.dispatcher.run_command(config)
        except EddError as e:
            return self._fail(e)
        except Exception as e:
            logger.exception("[CLI] unexpected failure")
            print(json.dumps({"error": str(e), "exit_code": 1, "kind": "internal"}, sort_keys=True), file=self.stderr)
            return 1

        print(self.render(report, config.json_output), file=self.stdout)
        return 0

    def _fail(self, error: EddError) -> int:
        code = exit_code_for(error)
        message = " ".join(str(error).split())
        print(json.dumps({"error": message, "exit_code": code, "kind": error.kind}, sort_keys=True,
                         ensure_ascii=False), file=self.stderr)
        return code


def config_from_args(args: argparse.Namespace) -> CommandConfig:
    params = {k: v for k, v in vars(args).items() if k not in ("command", "json", "verbose", "method")}
    return CommandConfig(
        subcommand=args.command,
        params=params,
        json_output=args.json,
        verbose=args.verbose,
        method=getattr(args, "method", None)
    )


def build_parser() -> argparse.ArgumentParser:
    parser = EddArgumentParser(
        prog="edd",
        description="Euclidean distance degrees by exact arithmetic",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  edd plane-curve --poly "x^5+y^5+z^5"
  edd segre --dims 3,9,12,14,25 --method both
  edd from-euler --dim 2 --chi 4,2,2,2
  edd from-segre --dim 2 --chern 4,4,2 --segre=-2,2 --json
        """
    )
    common = EddArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Print the report as JSON")
    common.add_argument("--verbose", "-v", action="store_true",
                        help="Echo dispatch events and debug logs to stderr; include the pullback form")

    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=EddArgumentParser)
    subparsers.required = True

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        return subparsers.add_parser(name, help=help_text, parents=[common])

    integers = _argument_type(integer_list)
    rationals = _argument_type(rational_list)
    integer = _argument_type(parse_integer)

    # curves
    p = add("plane-curve", "Edd = d(d-2) + R for a smooth plane curve F(x,y,z) = 0")
    p.add_argument("--poly", required=True, help="Homogeneous polynomial in x, y, z")
    p.add_argument("--assume-smooth", action="store_true", help="Skip the exact smoothness check")

    p = add("rational-curve", "Edd = e + #(Q∩C) - 2 for a parametrized rational curve")
    p.add_argument("--param", dest="params", action="append", required=True,
                   help="One coordinate as a binary form in s, t (repeat per coordinate)")
    p.add_argument("--weights", type=rationals, help="Quadric weights q_j of sum q_j x_j^2 (default all 1)")

    p = add("rnc", "Rational normal curve in P^(n-1)")
    p.add_argument("--n", type=integer, required=True)

    p = add("curve", "Edd = d + #(Q∩C) - chi(C)")
    p.add_argument("--degree", type=integer, required=True)
    p.add_argument("--num-qc", type=integer, required=True, help="Number of points of Q∩C")
    p.add_argument("--chi", type=integer, required=True, help="Euler characteristic of C")

    # products
    p = add("segre", "Segre product of P^(m_i - 1)")
    p.add_argument("--dims", type=integers, required=True, help="m_1,...,m_p")
    p.add_argument("--method", choices=PRODUCT_METHOD_CHOICES, default="segre")

    p = add("segre-veronese", "Segre-Veronese product with weights")
    p.add_argument("--dims", type=integers, required=True)
    p.add_argument("--weights", type=integers, required=True, help="omega_1,...,omega_p")
    p.add_argument("--coords", choices=("general", "invariant"), default="general")
    p.add_argument("--method", choices=PRODUCT_METHOD_CHOICES, default="segre")

    p = add("snc", "Normal-crossings divisors on a product of projective spaces")
    p.add_argument("--dims", type=integers, required=True)
    p.add_argument("--weights", type=integers, help="Hyperplane multidegree (default all 1)")
    p.add_argument("--divisors", type=_argument_type(divisor_list), default=[],
                   help="Divisor multidegrees separated by ';', e.g. '2,0;0,2'")

    # classes
    p = add("generic", "gEdd from Chern (or Chern-Mather) degrees")
    p.add_argument("--chern", type=rationals, required=True, help="Degrees by dimension, dimension 0 first")
    p.add_argument("--dim", type=integer, required=True, help="dim X")
    p.add_argument("--ambient", type=integer, help="N for classes in P^N (default: inferred)")
    p.add_argument("--mather", action="store_true", help="Inputs are Chern-Mather degrees")

    p = add("hypersurface", "gEdd of a smooth degree-d hypersurface of P^(n-1)")
    p.add_argument("--n", type=integer, required=True)
    p.add_argument("--d", type=integer, required=True)
    p.add_argument("--milnor-numbers", type=integers, help="Milnor numbers of isolated singularities of Q∩X")

    p = add("from-segre", "Edd = gEdd - gamma from the Segre class of J(Q∩X)")
    p.add_argument("--chern", type=rationals, required=True)
    p.add_argument("--dim", type=integer, required=True)
    p.add_argument("--segre", type=rationals, required=True)
    p.add_argument("--ambient", type=integer)

    p = add("from-milnor", "Edd = gEdd - alternating sum of the Milnor class")
    p.add_argument("--chern", type=rationals, required=True)
    p.add_argument("--dim", type=integer, required=True)
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--milnor", type=rationals, help="Milnor class degrees")
    source.add_argument("--segre", type=rationals, help="Segre class degrees, transformed to the Milnor class")
    p.add_argument("--ambient", type=integer)

    p = add("from-csm", "Edd from c(X) and c_SM(Q∩X)")
    p.add_argument("--chern", type=rationals, required=True)
    p.add_argument("--dim", type=integer, required=True)
    p.add_argument("--csm", type=rationals, required=True)
    p.add_argument("--ambient", type=integer)

    p = add("sphere", "The sphere in P^(n-1) through every formula path")
    p.add_argument("--n", type=integer, required=True)

    # topology
    p = add("from-euler", "Edd from chi(X), chi(X∩Q), chi(X∩H), chi(X∩Q∩H)")
    p.add_argument("--dim", type=integer, required=True)
    p.add_argument("--chi", type=integers, required=True, help="Four Euler characteristics")
    p.add_argument("--mather", action="store_true", help="Inputs are Euler-Mather characteristics")

    p = add("surface-p3", "Edd = d(d^2-3d+5) - chi(C) for a smooth surface of P^3")
    p.add_argument("--d", type=integer, required=True)
    p.add_argument("--chi", type=integer, required=True, help="chi(C), C = S∩Q")

    p = add("veronese-surface", "Veronese surface in P^5 meeting Q in the image of a plane curve")
    p.add_argument("--deg-c", type=integer, required=True)
    p.add_argument("--chi", type=integer, required=True)
    p.add_argument("--squares", type=rationals, help="Squared coordinate scalings q_1..q_6 for the rank diagnostic")

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main function"""
    return EddCLI().run(argv)


if __name__ == "__main__":
    sys.exit(main())
