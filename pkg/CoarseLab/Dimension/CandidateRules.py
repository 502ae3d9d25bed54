import itertools
from typing import FrozenSet, Tuple

from CoarseLab.Group.Element import Element
from CoarseLab.Group.Window import BoxShape, Window
from CoarseLab.Metric.WordMetric import WordMetric
from CoarseLab.Utils.Errors import ConfigError

SINGLETONS = "singletons"
BALLS = "balls"
BRICKS = "bricks"
RULES = (SINGLETONS, BALLS, BRICKS)

Family = Tuple[FrozenSet[Element], ...]


def _dedupe(sets) -> Family:
    seen = set()
    family = []
    for S in sets:
        if S and S not in seen:
            seen.add(S)
            family.append(S)
    return tuple(family)


def singletons(window: Window) -> Family:
    return tuple(frozenset([x]) for x in window.elements)


def balls(window: Window, metric: WordMetric, radius: int) -> Family:
    """(x + A_radius) ∩ window for every window point x, first occurrence kept."""
    return _dedupe(metric.ball(x, radius) & window.members for x in window.elements)


def bricks(window: Window, side: int, step: int = None) -> Family:
    """
    Axis-aligned boxes of the given side, anchored at multiples of `step` (default `side`)
    in every coordinate, clipped to a box-window.
    """
    if not isinstance(window.shape, BoxShape):
        raise ConfigError("brick candidates need a box-window on Z or Z^d")
    side = max(1, side)
    step = side if step is None else max(1, step)
    spec = window.spec
    starts = []
    for lo, hi in window.shape.intervals:
        first = (lo - side + 1) // step * step
        starts.append([s for s in range(first, hi + 1, step) if s + side - 1 >= lo])
    family = []
    for corner in itertools.product(*starts):
        ranges = [range(max(c, lo), min(c + side - 1, hi) + 1)
                  for c, (lo, hi) in zip(corner, window.shape.intervals)]
        family.append(frozenset(spec.from_vector(v) for v in itertools.product(*ranges)))
    return _dedupe(family)


def build_candidates(rule: str, window: Window, metric: WordMetric, size: int = 1, step: int = None) -> Family:
    """
    Candidate family by rule name: `singletons`, `balls` of radius `size`, or `bricks` of side `size`.

    Raises:
        ConfigError: unknown rule.
    """
    if rule == SINGLETONS:
        return singletons(window)
    if rule == BALLS:
        return balls(window, metric, size)
    if rule == BRICKS:
        return bricks(window, size, step)
    raise ConfigError(f"Unknown candidate rule: {rule}")
