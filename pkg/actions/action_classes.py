"""
Class-calculus commands

generic, hypersurface, from-segre, from-milnor, from-csm, sphere
"""

import logging
from typing import Optional

from classcalc import (
    ProjClass,
    edd_from_csm,
    edd_from_milnor,
    edd_smooth_via_segre,
    generic_edd,
    hypersurface_edd,
    milnor_from_segre,
    sphere_pipeline,
)
from errors import UsageError
from models import CommandConfig, EddReport

logger = logging.getLogger(__name__)


class ClassesAction:
    """ED degrees from degree vectors of characteristic classes"""

    subcommands = ("generic", "hypersurface", "from-segre", "from-milnor", "from-csm", "sphere")

    def execute(self, config: CommandConfig) -> EddReport:
        """
        Run one characteristic-class subcommand

        Args:
            config: Parsed subcommand and its parameters

        Returns:
            ED degree report with the class vectors used as intermediates
        """
        handler = {
            "generic": self._generic,
            "hypersurface": self._hypersurface,
            "from-segre": self._from_segre,
            "from-milnor": self._from_milnor,
            "from-csm": self._from_csm,
            "sphere": self._sphere,
        }.get(config.subcommand)
        if handler is None:
            raise UsageError(f"classes action cannot run {config.subcommand}")
        return handler(config)

    @staticmethod
    def _ambient(config: CommandConfig, *keys: str) -> int:
        """Ambient dimension: explicit --ambient, else the longest vector"""
        lengths = [len(config.params[k]) - 1 for k in keys if config.params.get(k) is not None]
        candidates = lengths + [config.params["dim"]]
        explicit: Optional[int] = config.params.get("ambient")
        if explicit is not None:
            if explicit < max(candidates):
                raise UsageError(f"--ambient {explicit} is smaller than the data it must hold")
            return explicit
        return max(candidates)

    def _class(self, config: CommandConfig, key: str, ambient: int) -> ProjClass:
        return ProjClass.from_sequence(config.params[key], ambient)

    def _generic(self, config: CommandConfig) -> EddReport:
        config.require("chern", "dim")
        N = self._ambient(config, "chern")
        return generic_edd(self._class(config, "chern", N), config.params["dim"], config.params.get("mather", False))

    def _hypersurface(self, config: CommandConfig) -> EddReport:
        config.require("n", "d")
        return hypersurface_edd(config.params["n"], config.params["d"], config.params.get("milnor_numbers"))

    def _from_segre(self, config: CommandConfig) -> EddReport:
        config.require("chern", "dim", "segre")
        N = self._ambient(config, "chern", "segre")
        return edd_smooth_via_segre(self._class(config, "chern", N), config.params["dim"], self._class(config, "segre", N))

    def _from_milnor(self, config: CommandConfig) -> EddReport:
        config.require("chern", "dim")
        N = self._ambient(config, "chern", "milnor", "segre")
        chern = self._class(config, "chern", N)
        dim_x = config.params["dim"]
        if config.params.get("segre") is not None:
            milnor = milnor_from_segre(chern, dim_x, self._class(config, "segre", N))
            logger.info(f"[Classes] Milnor class from Segre class: {milnor.render()}")
        else:
            config.require("milnor")
            milnor = self._class(config, "milnor", N)
        return edd_from_milnor(chern, dim_x, milnor)

    def _from_csm(self, config: CommandConfig) -> EddReport:
        config.require("chern", "dim", "csm")
        N = self._ambient(config, "chern", "csm")
        return edd_from_csm(self._class(config, "chern", N), config.params["dim"], self._class(config, "csm", N))

    def _sphere(self, config: CommandConfig) -> EddReport:
        config.require("n")
        return sphere_pipeline(config.params["n"])
