"""
Actions Module

This module contains one action per command family of the ED degree toolkit.
"""

from actions.action_classes import ClassesAction
from actions.action_curves import CurvesAction
from actions.action_products import ProductsAction
from actions.action_topology import TopologyAction

__all__ = [
    "ClassesAction",
    "CurvesAction",
    "ProductsAction",
    "TopologyAction"
]
