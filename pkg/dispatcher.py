"""
ED Degree Dispatcher

Responsible for:
- Holding the action registry (one action per command family)
- Routing a CommandConfig to the action that owns its subcommand
- Emitting action_start / action_complete / action_error events
"""

import logging
from typing import Any, Callable, Dict, List

from actions.action_classes import ClassesAction
from actions.action_curves import CurvesAction
from actions.action_products import ProductsAction
from actions.action_topology import TopologyAction
from errors import UsageError
from models import CommandConfig, EddReport

logger = logging.getLogger(__name__)


class EddDispatcher:
    """Routes commands to the formula engines"""

    def __init__(self):
        self.actions = {
            "curves": CurvesAction(),
            "products": ProductsAction(),
            "classes": ClassesAction(),
            "topology": TopologyAction(),
        }
        self._routes: Dict[str, str] = {}
        for name, action in self.actions.items():
            for subcommand in action.subcommands:
                self._routes[subcommand] = name
        self._event_handlers: Dict[str, List[Callable]] = {}

    @property
    def subcommands(self) -> List[str]:
        return sorted(self._routes)

    # ==================== Event Handling ====================

    def on(self, event: str, handler: Callable):
        """Register event handler"""
        if event not in self._event_handlers:
            self._event_handlers[event] = []
        self._event_handlers[event].append(handler)

    def _emit(self, event: str, data: Any = None):
        """Trigger event"""
        for handler in self._event_handlers.get(event, []):
            try:
                handler(data)
            except Exception as e:
                logger.warning(f"[Dispatcher] event handler error: {e}")

    # ==================== Execution ====================

    def run_command(self, config: CommandConfig) -> EddReport:
        """Dispatch one command; errors propagate to the caller after the error event"""
        name = self._routes.get(config.subcommand)
        if name is None:
            raise UsageError(f"unknown subcommand: {config.subcommand}")

        self._emit("action_start", {
            "action_type": name,
            "subcommand": config.subcommand,
            "params": config.params
        })
        try:
            report = self.actions[name].execute(config)
        except Exception as e:
            self._emit("action_error", {"subcommand": config.subcommand, "error": str(e)})
            raise
        self._emit("action_complete", {"subcommand": config.subcommand, "value": report.value})
        return report
