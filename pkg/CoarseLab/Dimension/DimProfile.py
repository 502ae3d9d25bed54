import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import pandas as pd

from CoarseLab.Dimension.CandidateRules import build_candidates
from CoarseLab.Dimension.CoverSearch import exact_min_classes, greedy_cover
from CoarseLab.Dimension.CoverWitness import CoverWitness
from CoarseLab.Group.Window import Window
from CoarseLab.Metric.WordMetric import WordMetric
from CoarseLab.Utils.ConfigReader import ConfigReader

logger = logging.getLogger(__name__)

CSV_COLUMNS = ["r", "D_rule", "D", "greedy", "exact", "exact_flag"]


@dataclass(frozen=True)
class LinearRule:
    """D_rule(r) = scale * r + offset, floored at 1."""
    scale: int = 1
    offset: int = 0

    def __call__(self, r: int) -> int:
        return max(1, self.scale * r + self.offset)

    def to_json(self) -> dict:
        return {"scale": self.scale, "offset": self.offset}


@dataclass(frozen=True)
class DimProfileRow:
    """One scale: `D_rule` sized the candidates, `D` is the boundedness radius of the reported witness."""
    r: int
    D_rule: int
    D: int
    classes_greedy: int
    classes_exact: Optional[int]
    exact_flag: bool
    witness: CoverWitness

    def to_json(self) -> dict:
        return {"r": self.r, "D_rule": self.D_rule, "D": self.D, "classes_greedy": self.classes_greedy,
                "classes_exact": self.classes_exact, "exact_flag": self.exact_flag,
                "witness": self.witness.to_json()}


@dataclass
class DimProfile:
    """
    Scale-dimension profile: class counts of valid covering witnesses across separation scales.

    The counts are relative to the candidate rule and are evidence about asdim ≤ n, not a proof.
    """
    candidate_rule: str
    rows: List[DimProfileRow] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"kind": "scale-dimension profile", "candidate_rule": self.candidate_rule,
                "rows": [row.to_json() for row in self.rows]}

    def to_frame(self) -> pd.DataFrame:
        records = [{"r": row.r, "D_rule": row.D_rule, "D": row.D, "greedy": row.classes_greedy,
                    "exact": row.classes_exact, "exact_flag": row.exact_flag} for row in self.rows]
        return pd.DataFrame.from_records(records, columns=CSV_COLUMNS).astype({"exact": "Int64"})

    def to_csv(self, path) -> None:
        self.to_frame().to_csv(path, index=False)


def dim_profile(window: Window, metric: WordMetric, candidate_rule: str, r_list: Sequence[int],
                D_rule=LinearRule(5, 0), budget: Optional[int] = None) -> DimProfile:
    """
    For each r, build candidates of size D_rule(r) by `candidate_rule`, run greedy_cover and,
    for windows up to Dimension.exact_window points, exact_min_classes within `budget`.
    """
    exact_window = int(ConfigReader().get("Dimension", "exact_window", 64))
    profile = DimProfile(candidate_rule)
    for r in sorted(set(r_list)):
        scale = D_rule(r)
        candidates = build_candidates(candidate_rule, window, metric, scale)
        witness = greedy_cover(window, metric, candidates, r)
        greedy = len(witness.classes)
        exact = None
        exact_flag = False
        if len(window) <= exact_window:
            result = exact_min_classes(window, metric, candidates, r, budget)
            exact, exact_flag = result.classes, result.exact
            if result.classes < greedy:
                witness = result.witness
        logger.info("profile row r=%d: greedy %d, exact %s", r, greedy, exact)
        profile.rows.append(DimProfileRow(r, scale, witness.D, greedy, exact, exact_flag, witness))
    return profile
