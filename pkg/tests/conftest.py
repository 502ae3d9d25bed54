import pytest

from CoarseLab.Group.GroupSpec import GroupSpec
from CoarseLab.Group.Window import SupportShape, Window
from CoarseLab.Metric.GeneratorSystem import GeneratorSystem
from CoarseLab.Metric.WordMetric import WordMetric
from CoarseLab.Utils.ConfigReader import ConfigReader


@pytest.fixture(autouse=True)
def tool_config(monkeypatch):
    """Every test reads the repository config.yaml, whatever the environment says."""
    monkeypatch.delenv("COARSE_LAB_CONFIG", raising=False)
    ConfigReader.reset()
    yield ConfigReader()
    ConfigReader.reset()


@pytest.fixture
def z2():
    return GroupSpec.bounded_sum(modulus=2, coordinate_bound=16)


@pytest.fixture
def z():
    return GroupSpec.integers()


@pytest.fixture
def cube_metric(z2):
    """⊕Z_2 with the first three basis vectors as generators."""
    return WordMetric(GeneratorSystem.basis(z2, 3))


@pytest.fixture
def cube(z2):
    return Window.enumerate(z2, SupportShape((0, 1, 2)))


@pytest.fixture
def line_metric(z):
    """Z with the single generator 1."""
    return WordMetric(GeneratorSystem.from_values(z, [1]))
