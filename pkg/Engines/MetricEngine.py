import logging

from CoarseLab.Config.ExperimentConfig import element_of
from CoarseLab.Metric.IdealBase import IdealBase
from CoarseLab.Metric.SequenceMerge import merge_sequences
from CoarseLab.Utils.Errors import ConfigError
from Engines.BaseEngine import INCONCLUSIVE, OK, VIOLATED, BaseEngine

logger = logging.getLogger(__name__)


def entries(elements):
    return [x.to_json()["entries"] for x in sorted(elements)]


class MetricEngine(BaseEngine):
    """
    Word-metric commands: distances, balls, ideal balls, covering radii and sequence merging.
    Example:
        >>> engine = MetricEngine(config)
        >>> engine.run("dist")
        ({'x': [[0, 1]], 'y': [[1, 1]], 'distance': {'value': 2, 'search_bound': 6}}, None)
    """
    commands = ("dist", "ball", "ideal-ball", "cover-radius", "merge")

    def run(self, command: str):
        config = self.config
        if command == "dist":
            x = self.element(config.x, "x")
            y = self.element(config.y, "y")
            result = self.metric.distance(x, y, config.max_r)
            return {"x": x.to_json()["entries"], "y": y.to_json()["entries"], "distance": result.to_json()}, None
        if command == "ball":
            x = self.element(config.x, "x")
            members = self.metric.ball(x, config.n)
            return {"center": x.to_json()["entries"], "n": config.n, "size": len(members),
                    "elements": entries(members)}, None
        if command == "ideal-ball":
            centers = self.elements(config.centers, "centers")
            members = self.metric.ideal_ball(centers, config.n)
            return {"centers": entries(centers), "n": config.n, "size": len(members),
                    "elements": entries(members)}, None
        if command == "cover-radius":
            points = self.elements(config.points, "points")
            result = IdealBase(self.metric).cover_radius(points, config.k, config.max_r)
            if result.exceeds_bound:
                verdict = INCONCLUSIVE
            else:
                verdict = OK if result.verified else VIOLATED
            return {"points": entries(points), "k": config.k, "cover": result.to_json()}, verdict
        if command == "merge":
            if not config.sequences:
                raise ConfigError("merge needs at least one sequence")
            sequences = [[element_of(self.spec, v) for v in seq] for seq in config.sequences]
            merged = merge_sequences(sequences)
            return {"lengths": [len(seq) for seq in sequences],
                    "merged": [x.to_json()["entries"] for x in merged]}, None
        return self.unknown(command)
