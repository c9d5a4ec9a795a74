"""
Euler-characteristic commands

from-euler, surface-p3, veronese-surface
"""

import logging

from classcalc import (
    QUARTIC_RANK_MEANING,
    edd_from_euler,
    surface_p3_edd,
    veronese_quartic_rank,
    veronese_surface_edd,
)
from errors import UsageError
from models import CommandConfig, EddReport, EulerData

logger = logging.getLogger(__name__)


class TopologyAction:
    """ED degrees from Euler characteristics"""

    subcommands = ("from-euler", "surface-p3", "veronese-surface")

    def execute(self, config: CommandConfig) -> EddReport:
        """
        Run one Euler-characteristic subcommand

        Args:
            config: Parsed subcommand and its parameters

        Returns:
            ED degree report
        """
        if config.subcommand == "from-euler":
            config.require("dim", "chi")
            if len(config.params["chi"]) != 4:
                raise UsageError(f"--chi takes four values chi(X),chi(X∩Q),chi(X∩H),chi(X∩Q∩H), "
                                 f"got {len(config.params['chi'])}")
            data = EulerData.from_sequence(config.params["dim"], config.params["chi"],
                                           mather=config.params.get("mather", False))
            return edd_from_euler(data)

        if config.subcommand == "surface-p3":
            config.require("d", "chi")
            return surface_p3_edd(config.params["d"], config.params["chi"])

        if config.subcommand == "veronese-surface":
            config.require("deg_c", "chi")
            report = veronese_surface_edd(config.params["deg_c"], config.params["chi"])
            squares = config.params.get("squares")
            if squares is not None:
                rank = veronese_quartic_rank(squares)
                report.inputs["squares"] = list(squares)
                report.intermediates["quartic_rank"] = rank
                report.intermediates["quartic_type"] = QUARTIC_RANK_MEANING[rank]
                logger.info(f"[Topology] quartic matrix rank {rank}: {QUARTIC_RANK_MEANING[rank]}")
            return report

        raise UsageError(f"topology action cannot run {config.subcommand}")
