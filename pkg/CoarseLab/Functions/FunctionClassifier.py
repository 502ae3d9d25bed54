import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from CoarseLab.Functions.Oscillation import EventualConstancy, excised_oscillation, oscillation
from CoarseLab.Functions.WindowFunction import WindowFunction, fraction_json
from CoarseLab.Group.Element import Element
from CoarseLab.Metric.IdealBase import IdealStage
from CoarseLab.Metric.WordMetric import WordMetric
from CoarseLab.Utils.ConfigReader import ConfigReader

logger = logging.getLogger(__name__)

POSITIVE = "positive"
TREND = "unbounded-on-bounded trend"


@dataclass
class StageSupremum:
    """sup |f| over one ideal-base stage, with the full and the one-shorter generator list."""
    stage: IdealStage
    supremum: Fraction
    truncated_supremum: Optional[Fraction]

    @property
    def grows(self) -> bool:
        return self.truncated_supremum is not None and self.supremum > self.truncated_supremum

    def to_json(self) -> dict:
        return {"n": self.stage.n, "centers": [c.to_json()["entries"] for c in sorted(self.stage.centers)],
                "sup": fraction_json(self.supremum),
                "sup_truncated": None if self.truncated_supremum is None else fraction_json(self.truncated_supremum),
                "grows": self.grows}


@dataclass
class ClassReport:
    """
    Staged evidence for the four large-scale classes of a window function.

    On a finite window every function is bounded, so each verdict summarises a table:
        oscillation: osc(r) on the common interior.
        stages: sup |f| per ideal-base stage; `bornologous` is "unbounded-on-bounded trend" when
            some stage supremum grows as the last generator is added.
        macro_uniform: every osc(r) ≤ modulus_bound; otherwise `failure_scale` is the first r above it.
        excised: osc(r) outside origin + A_m for m = 0..max_stage.
        eventual_index: least m whose excised oscillation stays ≤ modulus_bound at every r.
        slowly_oscillating: every r has some m with excised osc(r) ≤ so_epsilon; `so_index` per r.
        constancy_index: eventual_constancy_index at the smallest r, for binary functions.
    """
    r_list: List[int]
    interior_margin: int
    oscillation: Dict[int, Fraction]
    stages: List[StageSupremum]
    modulus_bound: int
    failure_scale: Optional[int]
    excised: Dict[int, Dict[int, Fraction]]
    eventual_index: Optional[int]
    so_epsilon: Fraction
    so_index: Dict[int, Optional[int]]
    constancy_index: Optional[int] = None
    notes: List[str] = field(default_factory=list)

    @property
    def bornologous(self) -> str:
        return TREND if any(s.grows for s in self.stages) else POSITIVE

    @property
    def macro_uniform(self) -> bool:
        return self.failure_scale is None

    @property
    def eventually_macro_uniform(self) -> bool:
        return self.eventual_index is not None

    @property
    def slowly_oscillating(self) -> bool:
        return all(m is not None for m in self.so_index.values())

    def to_json(self) -> dict:
        return {
            "r_list": self.r_list,
            "interior_margin": self.interior_margin,
            "oscillation": {str(r): fraction_json(v) for r, v in self.oscillation.items()},
            "bornologous": {"verdict": self.bornologous, "stages": [s.to_json() for s in self.stages]},
            "macro_uniform": {"holds": self.macro_uniform, "modulus_bound": self.modulus_bound,
                              "modulus": {str(r): fraction_json(v) for r, v in self.oscillation.items()},
                              "failure_scale": self.failure_scale},
            "eventually_macro_uniform": {
                "holds": self.eventually_macro_uniform, "index": self.eventual_index,
                "table": {str(m): {str(r): fraction_json(v) for r, v in row.items()}
                          for m, row in self.excised.items()}},
            "slowly_oscillating": {"holds": self.slowly_oscillating, "epsilon": fraction_json(self.so_epsilon),
                                   "index": {str(r): m for r, m in self.so_index.items()}},
            "eventual_constancy_index": self.constancy_index,
            "notes": self.notes,
        }


def _stage_supremum(f: WindowFunction, metric: WordMetric, stage: IdealStage) -> Fraction:
    spec = metric.spec
    inside = [abs(f(x)) for x in f.window.elements if stage.contains_pair(metric, x, spec.identity)]
    return max(inside, default=Fraction(0))


def classify(f: WindowFunction, metric: WordMetric, r_list: Sequence[int],
             bounded_stages: Optional[Sequence[IdealStage]] = None, origin: Optional[Element] = None) -> ClassReport:
    """
    Evidence for bornologous, macro-uniform, eventually macro-uniform and slowly oscillating.

    Args:
        f (WindowFunction): the function.
        metric (WordMetric): word metric of the generator system.
        r_list: scales; oscillation is scored on the interior at margin max(r_list).
        bounded_stages: ideal-base stages (n, F); default origin + A_n for n ≤ Functions.max_stage.
        origin (Element, optional): center of the default stages and of the excisions.
    """
    config = ConfigReader()
    modulus_bound = int(config.get("Functions", "modulus_bound", 64))
    max_stage = int(config.get("Functions", "max_stage", 8))
    so_epsilon = Fraction(config.get("Functions", "so_epsilon", 0))
    spec = metric.spec
    origin = spec.identity if origin is None else origin
    r_list = sorted(set(r_list))
    margin = max(r_list)
    notes = []

    osc = {r: oscillation(f, r, metric, margin).maximum for r in r_list}
    failure_scale = next((r for r in r_list if osc[r] > modulus_bound), None)

    system = metric.system
    if bounded_stages is None:
        bounded_stages = [IdealStage(n, frozenset([origin])) for n in range(max_stage + 1)]
    truncated = None
    if len(system.generators) > 1:
        truncated = WordMetric(system.truncated(len(system.generators) - 1), metric.ball_cap,
                               metric.table_cap, metric.direct_depth)
    else:
        notes.append("single generator: stage suprema are not compared against a truncated list")
    stages = []
    for stage in bounded_stages:
        comparable = truncated is not None and stage.n <= len(system.generators) - 1
        stages.append(StageSupremum(stage, _stage_supremum(f, metric, stage),
                                    _stage_supremum(f, truncated, stage) if comparable else None))

    excised = excised_oscillation(f, metric, r_list, margin, max_stage, origin)
    eventual_index = next((m for m, row in excised.items() if all(v <= modulus_bound for v in row.values())), None)
    so_index = {r: next((m for m, row in excised.items() if row[r] <= so_epsilon), None) for r in r_list}

    constancy_index = None
    if f.is_binary and origin == spec.identity:
        constancy_index = EventualConstancy(f.window, metric, r_list[0]).index(f)
    report = ClassReport(r_list, margin, osc, stages, modulus_bound, failure_scale, excised, eventual_index,
                         so_epsilon, so_index, constancy_index, notes)
    logger.info("classified %s: bornologous %s, macro-uniform %s, slowly oscillating %s",
                f.name, report.bornologous, report.macro_uniform, report.slowly_oscillating)
    return report
