import pytest
from pydantic import ValidationError

from CoarseLab.Config.ExperimentConfig import ExperimentConfig, element_of
from CoarseLab.Group.GroupSpec import GroupSpec
from CoarseLab.Utils.ConfigReader import ConfigReader
from CoarseLab.Utils.Errors import ConfigError
from Engines.EngineFactory import EngineFactory
from Engines.MetricEngine import MetricEngine


class TestExperimentConfig:
    """Validation of experiment configs and the element notation."""

    def test_defaults_and_echo(self):
        config = ExperimentConfig.model_validate({"group": {"kind": "integers"},
                                                  "generators": {"kind": "powers", "base": 3, "count": 4}})
        echo = config.echo()
        assert echo["k"] == 1 and echo["r_list"] == [1] and echo["candidates"] == "singletons"
        assert "window" not in echo and "x" not in echo
        assert [x.value(0) for x in config.system().generators] == [1, 3, 9, 27]

    def test_unknown_keys_are_rejected(self):
        with pytest.raises(ValidationError):
            ExperimentConfig.model_validate({"group": {"kind": "integers", "rank": 1},
                                             "generators": {"kind": "basis", "count": 1}})

    def test_window_kind_must_match_the_group(self):
        with pytest.raises(ValidationError):
            ExperimentConfig.model_validate({"group": {"kind": "lattice", "rank": 2},
                                             "generators": {"kind": "basis", "count": 2},
                                             "window": {"kind": "support", "indices": [0, 1]}})

    def test_element_notation(self):
        plane = GroupSpec.lattice(2)
        z2 = GroupSpec.bounded_sum(modulus=2, coordinate_bound=8)
        assert element_of(GroupSpec.integers(), -4).entries == ((0, -4),)
        assert element_of(plane, [3, 0]).entries == ((0, 3),)
        assert element_of(plane, [[1, 2]]).entries == ((1, 2),)
        assert element_of(z2, [[0, 1], [5, 3]]).entries == ((0, 1), (5, 1))
        assert element_of(z2, []).is_identity


class TestEngineFactory:
    def test_dispatch(self):
        config = ExperimentConfig.model_validate({"group": {"kind": "integers"},
                                                  "generators": {"kind": "list", "values": [1]}, "x": 2, "y": 9})
        engine = EngineFactory.create_engine("dist", config)
        assert isinstance(engine, MetricEngine)
        result, verdict = engine.run("dist")
        assert result["distance"]["value"] == 7 and verdict is None
        assert len(EngineFactory.commands()) == 16

    def test_unknown_command(self):
        config = ExperimentConfig.model_validate({"group": {"kind": "integers"},
                                                  "generators": {"kind": "list", "values": [1]}})
        with pytest.raises(ValueError):
            EngineFactory.create_engine("teleport", config)
        with pytest.raises(ConfigError):
            EngineFactory.create_engine("osc", config).run("osc")


class TestConfigReader:
    def test_reads_the_tool_defaults(self):
        reader = ConfigReader()
        assert reader.get("Metric", "direct_depth") == 6
        assert reader.get("Nowhere", "nothing", 5) == 5

    def test_thread_override(self, monkeypatch):
        monkeypatch.setenv("COARSE_LAB_THREADS", "3")
        assert ConfigReader().threads() == 3
        monkeypatch.setenv("COARSE_LAB_THREADS", "many")
        assert ConfigReader().threads() == 1

    def test_environment_selects_another_file(self, tmp_path, monkeypatch):
        other = tmp_path / "tool.yaml"
        other.write_text("Metric:\n  direct_depth: 3\n")
        monkeypatch.setenv("COARSE_LAB_CONFIG", str(other))
        reader = ConfigReader()
        assert reader.config_file == str(other)
        assert reader.get("Metric", "direct_depth") == 3
        assert reader.get("Metric", "ball_cap", 7) == 7

    def test_one_reader_per_file(self, tool_config, tmp_path):
        other = tmp_path / "tool.yaml"
        other.write_text("Runtime:\n  threads: 2\n")
        assert ConfigReader() is tool_config
        assert ConfigReader(str(other)) is ConfigReader(str(other))
        assert ConfigReader(str(other)) is not tool_config
