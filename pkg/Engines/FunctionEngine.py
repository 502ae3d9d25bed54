import logging

from CoarseLab.Functions.FunctionClassifier import classify
from CoarseLab.Functions.Oscillation import eventual_constancy_index, oscillation
from CoarseLab.Functions.WindowFunction import WindowFunction
from CoarseLab.Metric.IdealBase import IdealStage
from Engines.BaseEngine import OK, BaseEngine

logger = logging.getLogger(__name__)


class FunctionEngine(BaseEngine):
    """Window-function commands: oscillation tables, eventual-constancy index and classification."""
    commands = ("osc", "so-index", "classify")

    def function(self, window) -> WindowFunction:
        spec = self.config.function
        point = self.element(spec.point, "function.point") if spec.point is not None else None
        return WindowFunction.family(spec.family, window, system=self.system, coordinate=spec.coordinate,
                                     point=point, coefficients=spec.coefficients, offset=spec.offset,
                                     base=spec.base, table=spec.table)

    def run(self, command: str):
        config = self.config
        f = self.function(self.window())
        if command == "osc":
            table = oscillation(f, config.r, self.metric, config.interior_margin)
            return table.to_json(), None
        if command == "so-index":
            m = eventual_constancy_index(f, config.r, self.metric)
            return {"r": config.r, "index": m, "function": f.name}, None
        if command == "classify":
            stages = None
            if config.stages is not None:
                stages = [IdealStage(s.n, frozenset(self.elements(s.centers, "stage centers"))) for s in config.stages]
            report = classify(f, self.metric, config.r_list, stages)
            return report.to_json(), OK
        return self.unknown(command)
