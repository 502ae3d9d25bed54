import logging
import os
import threading

import yaml

logger = logging.getLogger(__name__)

DEFAULT_CONFIG = os.path.abspath(os.path.join(os.path.dirname(__file__), "..", "..", "config.yaml"))


class OnePerFile(type):
    """Metaclass keeping one reader per resolved config path; `reset()` forgets them all."""
    _readers = {}
    _lock = threading.Lock()

    def __call__(cls, config_file=None):
        path = resolve_config_path(config_file)
        with cls._lock:
            reader = cls._readers.get(path)
            if reader is None:
                reader = super().__call__(path)
                cls._readers[path] = reader
        return reader

    def reset(cls):
        with cls._lock:
            cls._readers.clear()


def resolve_config_path(config_file=None):
    """An explicit path wins, then COARSE_LAB_CONFIG, then `config.yaml` at the repository root."""
    chosen = config_file or os.environ.get("COARSE_LAB_CONFIG") or DEFAULT_CONFIG
    return os.path.abspath(chosen)


class ConfigReader(metaclass=OnePerFile):
    """
    Reader for the tool-wide YAML defaults, shared by every caller that names the same file.

    The file is organised in sections (`Metric`, `Hamming`, `Dimension`, `Functions`, `Runtime`),
    each a mapping of setting names to values.
    Attributes:
        config_file (str): Absolute path to the configuration file.
        config (dict): Loaded configuration data.
    Example:
        >>> ConfigReader().get("Metric", "ball_cap", 10**6)
        1000000
    """
    def __init__(self, config_file):
        self.config_file = config_file
        self.config = self.load_config()
        logger.debug("tool config loaded from %s", config_file)

    def load_config(self):
        """
        Parse the YAML file with `yaml.safe_load`.

        Raises:
            FileNotFoundError: the file does not exist.
            yaml.YAMLError: the file cannot be parsed.
        """
        with open(self.config_file, 'r') as file:
            return yaml.safe_load(file) or {}

    def section(self, name):
        if name not in self.config:
            logger.warning("Section %s not found in config.", name)
        return self.config.get(name) or {}

    def get(self, section, key, default=None):
        """
        Retrieve one setting with an optional default fallback.

        Args:
            section (str): Section name, e.g. "Metric".
            key (str): Setting name inside the section.
            default (optional): Value returned when the setting is absent.

        Returns:
            The configured value, or `default`.
        """
        values = self.section(section)
        if key not in values:
            logger.warning("%s.%s not found in config.", section, key)
        return values.get(key, default)

    def threads(self):
        """Worker count for internal parallelism; COARSE_LAB_THREADS takes precedence."""
        env_value = os.environ.get("COARSE_LAB_THREADS")
        if env_value:
            try:
                return max(1, int(env_value))
            except ValueError:
                logger.warning("Ignoring non-integer COARSE_LAB_THREADS=%r", env_value)
        return max(1, int(self.get("Runtime", "threads", 1)))
