from abc import ABC, abstractmethod
from typing import Dict, Optional, Tuple

from CoarseLab.Config.ExperimentConfig import ExperimentConfig, element_of
from CoarseLab.Group.Window import Window
from CoarseLab.Metric.WordMetric import WordMetric
from CoarseLab.Utils.Errors import ConfigError

OK = "ok"
VIOLATED = "violated"
INCONCLUSIVE = "inconclusive"


class BaseEngine(ABC):
    """
    Abstract base class for command engines.

    An engine owns the objects every command of its module needs (group, generator system,
    word metric) and answers `run(command)` with a JSON-ready result and a verdict.
    Methods
    -------
    run(command: str) -> tuple[dict, str | None]
        Execute one subcommand on the engine's configuration.
    """
    commands: Tuple[str, ...] = ()

    def __init__(self, config: ExperimentConfig):
        self.config = config
        self.spec = config.spec()
        self.system = config.system(self.spec)
        self.metric = WordMetric(self.system)

    @abstractmethod
    def run(self, command: str) -> Tuple[Dict, Optional[str]]:
        pass

    def element(self, value, name: str):
        if value is None:
            raise ConfigError(f"{name} is required for this command")
        return element_of(self.spec, value)

    def elements(self, values, name: str):
        if values is None:
            raise ConfigError(f"{name} is required for this command")
        return [element_of(self.spec, value) for value in values]

    def window(self) -> Window:
        if self.config.window is None:
            raise ConfigError("a window is required for this command")
        return Window.enumerate(self.spec, self.config.window.to_shape())

    def unknown(self, command: str):
        raise ConfigError(f"{type(self).__name__} has no command {command}")
