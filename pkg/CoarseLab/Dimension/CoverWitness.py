import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from CoarseLab.Group.Element import Element
from CoarseLab.Group.Window import Window
from CoarseLab.Metric.IdealBase import IdealBase
from CoarseLab.Metric.WordMetric import WordMetric
from CoarseLab.Utils.Parallel import parallel_map

logger = logging.getLogger(__name__)

COVER = "cover"
EMPTY_SET = "empty-set"
BOUNDEDNESS = "boundedness"
SEPARATION = "separation"


@dataclass(frozen=True)
class CoverWitness:
    """
    A candidate witness for the asymptotic-dimension definition at one scale: a cover of the
    window split into color classes, each class meant to be E_{A_r}-disjoint and every set
    meant to lie in a ball of radius D.

    Attributes:
        window (Window): the points to cover.
        metric (WordMetric): word metric of the generator system.
        classes: color classes, each a tuple of element sets.
        r (int): separation scale.
        D (int): boundedness radius.
    """
    window: Window
    metric: WordMetric
    classes: Tuple[Tuple[FrozenSet[Element], ...], ...]
    r: int
    D: int

    @property
    def sets(self) -> List[FrozenSet[Element]]:
        return [S for color in self.classes for S in color]

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "D": self.D,
            "class_count": len(self.classes),
            "classes": [[[x.to_json()["entries"] for x in sorted(S)] for S in color] for color in self.classes],
        }


@dataclass(frozen=True)
class Violation:
    """The first failing check of a witness; `detail` locates it."""
    category: str
    detail: Dict[str, object] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"category": self.category, "detail": self.detail}


@dataclass(frozen=True)
class WitnessVerdict:
    valid: bool
    violation: Optional[Violation] = None

    def to_json(self) -> dict:
        return {"valid": self.valid, "violation": None if self.violation is None else self.violation.to_json()}


def halos(metric: WordMetric, sets: Sequence[FrozenSet[Element]], r: int) -> List[FrozenSet[Element]]:
    """E_{A_r}[S] = S + A_r for each set, in the full group."""
    return parallel_map(lambda S: metric.ideal_ball(S, r), sets)


def verify_witness(witness: CoverWitness) -> WitnessVerdict:
    """
    Check a witness in the order empty-set, cover, boundedness, separation and report the
    first violation.

    Boundedness asks for some center c ∈ G (not necessarily in S) with S ⊆ c + A_D, decided
    by cover_radius(S, 1) ≤ D. Separation asks that distinct sets of one class have disjoint
    radius-r halos; halos are taken in the group, not clipped to the window.
    """
    metric = witness.metric
    for color, sets in enumerate(witness.classes):
        for position, S in enumerate(sets):
            if not S:
                return WitnessVerdict(False, Violation(EMPTY_SET, {"class": color, "set": position}))

    covered = frozenset().union(*witness.sets) if witness.sets else frozenset()
    missing = [x for x in witness.window.elements if x not in covered]
    if missing:
        return WitnessVerdict(False, Violation(COVER, {"point": missing[0].to_json()["entries"],
                                                       "missing": len(missing)}))

    ideal = IdealBase(metric)
    for color, sets in enumerate(witness.classes):
        for position, S in enumerate(sets):
            if not ideal.is_bounded(S, witness.D):
                return WitnessVerdict(False, Violation(BOUNDEDNESS, {"class": color, "set": position,
                                                                     "D": witness.D}))

    for color, sets in enumerate(witness.classes):
        if len(sets) < 2:
            continue
        ringed = halos(metric, sets, witness.r)
        pairs = list(itertools.combinations(range(len(sets)), 2))
        meets = parallel_map(lambda pair: ringed[pair[0]] & ringed[pair[1]], pairs)
        for (i, j), common in zip(pairs, meets):
            if common:
                logger.debug("class %d: halos of sets %d and %d meet", color, i, j)
                return WitnessVerdict(False, Violation(SEPARATION, {
                    "class": color, "sets": [i, j], "meet": min(common).to_json()["entries"]}))
    return WitnessVerdict(True)
