from CoarseLab.Config.ExperimentConfig import ExperimentConfig
from Engines.DimensionEngine import DimensionEngine
from Engines.EmbeddingEngine import EmbeddingEngine
from Engines.FunctionEngine import FunctionEngine
from Engines.MetricEngine import MetricEngine

ENGINES = (MetricEngine, EmbeddingEngine, DimensionEngine, FunctionEngine)


class EngineFactory:
    """
    Factory class for command engines.

    Maps a subcommand name to the engine of its module and builds that engine on the
    experiment configuration.
    Raises:
        ValueError: If the command belongs to no engine.
    Example:
        >>> engine = EngineFactory.create_engine("dist", config)
        >>> # Returns a MetricEngine
    """
    @classmethod
    def commands(cls):
        return [command for engine in ENGINES for command in engine.commands]

    @classmethod
    def create_engine(cls, command: str, config: ExperimentConfig):
        for engine in ENGINES:
            if command in engine.commands:
                return engine(config)
        raise ValueError(f"Unknown command: {command}")
