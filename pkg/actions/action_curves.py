"""
Curve commands

plane-curve, rational-curve, rnc, curve
"""

import logging

from classcalc import curve_edd
from curves import plane_curve_edd, rational_curve_edd, rnc_input
from errors import UsageError
from expr_parser import parse_binary_form, parse_ternary_form
from models import CommandConfig, EddReport, PlaneCurveInput, RationalCurveInput

logger = logging.getLogger(__name__)


class CurvesAction:
    """ED degrees of plane and parametrized curves"""

    subcommands = ("plane-curve", "rational-curve", "rnc", "curve")

    def execute(self, config: CommandConfig) -> EddReport:
        """
        Run one curve subcommand

        Args:
            config: Parsed subcommand and its parameters

        Returns:
            ED degree report; plane curves carry R and, in verbose mode, the pullback
        """
        if config.subcommand == "plane-curve":
            config.require("poly")
            F = parse_ternary_form(config.params["poly"])
            curve = PlaneCurveInput(F, assume_smooth=config.params.get("assume_smooth", False))
            return plane_curve_edd(curve, include_pullback=config.verbose)

        if config.subcommand == "rational-curve":
            config.require("params")
            phi = tuple(parse_binary_form(text) for text in config.params["params"])
            weights = tuple(config.params.get("weights") or ())
            logger.info(f"[Curves] parametrization with {len(phi)} coordinates")
            return rational_curve_edd(RationalCurveInput(phi, weights))

        if config.subcommand == "rnc":
            config.require("n")
            report = rational_curve_edd(rnc_input(config.params["n"]))
            report.inputs = {"n": config.params["n"]}
            return report

        if config.subcommand == "curve":
            config.require("degree", "num_qc", "chi")
            return curve_edd(config.params["degree"], config.params["num_qc"], config.params["chi"])

        raise UsageError(f"curves action cannot run {config.subcommand}")
