"""
Product-variety commands

segre, segre-veronese, snc
"""

from errors import UsageError
from models import CommandConfig, Coordinates, EddReport, ProductSpec
from products import product_edd, snc_report


class ProductsAction:
    """ED degrees of Segre and Segre-Veronese varieties"""

    subcommands = ("segre", "segre-veronese", "snc")

    def execute(self, config: CommandConfig) -> EddReport:
        """
        Run one product subcommand

        Args:
            config: Parsed subcommand and its parameters

        Returns:
            ED degree report from the chosen method, or both values when --method both
        """
        config.require("dims")
        dims = tuple(config.params["dims"])
        method = config.method or "segre"

        if config.subcommand == "segre":
            return product_edd(ProductSpec(dims), method)

        if config.subcommand == "segre-veronese":
            config.require("weights")
            spec = ProductSpec(dims, tuple(config.params["weights"]),
                               Coordinates(config.params.get("coords") or "general"))
            return product_edd(spec, method)

        if config.subcommand == "snc":
            weights = tuple(config.params.get("weights") or (1,) * len(dims))
            divisors = config.params.get("divisors") or []
            return snc_report(dims, weights, divisors)

        raise UsageError(f"products action cannot run {config.subcommand}")
