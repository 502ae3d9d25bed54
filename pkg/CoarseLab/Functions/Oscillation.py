import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from CoarseLab.Functions.WindowFunction import WindowFunction, fraction_json
from CoarseLab.Group.Element import Element
from CoarseLab.Group.Window import Window
from CoarseLab.Metric.WordMetric import WordMetric
from CoarseLab.Utils.Errors import ConfigError, EmptyInteriorError
from CoarseLab.Utils.Parallel import parallel_map

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OscillationTable:
    """diam f(ball(x, r) ∩ window) for every interior x, in window order."""
    r: int
    interior_margin: int
    rows: Tuple[Tuple[Element, Fraction], ...]

    @property
    def maximum(self) -> Fraction:
        return max((d for _, d in self.rows), default=Fraction(0))

    def to_json(self) -> dict:
        return {"r": self.r, "interior_margin": self.interior_margin, "max": fraction_json(self.maximum),
                "rows": [[x.to_json()["entries"], fraction_json(d)] for x, d in self.rows]}


def interior(window: Window, metric: WordMetric, margin: int) -> List[Element]:
    """Window points whose radius-`margin` ball lies inside the window."""
    inside = parallel_map(lambda x: metric.ball(x, margin) <= window.members, window.elements)
    return [x for x, keep in zip(window.elements, inside) if keep]


def diameters(f: WindowFunction, metric: WordMetric, points, r: int) -> List[Fraction]:
    def diam(x):
        values = [f(y) for y in metric.ball(x, r) if y in f.window]
        return max(values) - min(values)
    return parallel_map(diam, points)


def oscillation(f: WindowFunction, r: int, metric: WordMetric, interior_margin: Optional[int] = None) -> OscillationTable:
    """
    Oscillation of `f` at scale r, scored only where the radius-`interior_margin` ball stays
    in the window.

    Raises:
        ConfigError: interior_margin below r.
        EmptyInteriorError: no window point has its margin ball inside the window.
    """
    if interior_margin is None:
        interior_margin = r
    if interior_margin < r:
        raise ConfigError(f"interior margin {interior_margin} is below the scale {r}")
    points = interior(f.window, metric, interior_margin)
    if not points:
        raise EmptyInteriorError(f"no interior points at margin {interior_margin}")
    return OscillationTable(r, interior_margin, tuple(zip(points, diameters(f, metric, points, r))))


class EventualConstancy:
    """
    Eventual-constancy index of binary functions on one window, scale and metric.

    Norms, interior points and ball neighbourhoods are computed once as bitmasks over the
    window; a binary function is then a mask and each candidate m costs a few integer
    operations. m ranges over the radii for which window ∖ A_m is non-empty.
    Attributes:
        window (Window): the domain, centered at the identity.
        r (int): the scale.
        norms (dict[Element, int | None]): word norms, None past the metric's default bound.
    """
    def __init__(self, window: Window, metric: WordMetric, r: int):
        self.window = window
        self.r = r
        bound = metric.default_max_r
        self.norms = {x: metric.norm(x, bound).value for x in window.elements}
        position = {x: i for i, x in enumerate(window.elements)}
        finite = [n for n in self.norms.values() if n is not None]
        top = bound if len(finite) < len(self.norms) else max(max(finite, default=0) - 1, 0)
        self.radii = range(0, top + 1)
        inner = set(interior(window, metric, r))
        self._outside: List[int] = []
        self._balls: List[List[int]] = []
        for m in self.radii:
            outside = 0
            balls = []
            for x, i in position.items():
                n = self.norms[x]
                if n is None or n > m:
                    outside |= 1 << i
                    if x in inner:
                        balls.append(sum(1 << position[y] for y in metric.ball(x, r) if y in position))
            self._outside.append(outside)
            self._balls.append(balls)

    def mask_of(self, f: WindowFunction) -> int:
        if not f.is_binary:
            raise ConfigError("eventual constancy is defined for {0,1}-valued functions")
        return sum(1 << i for i, x in enumerate(self.window.elements) if f(x) == 1)

    def holds(self, mask: int, m: int) -> bool:
        """f is constant off A_m and has zero oscillation at every interior point off A_m."""
        outside = self._outside[m]
        if mask & outside not in (0, outside):
            return False
        return all(mask & ball in (0, ball) for ball in self._balls[m])

    def index_of_mask(self, mask: int) -> Optional[int]:
        return next((m for m in self.radii if self.holds(mask, m)), None)

    def index(self, f: WindowFunction) -> Optional[int]:
        return self.index_of_mask(self.mask_of(f))


def eventual_constancy_index(f: WindowFunction, r: int, metric: WordMetric) -> Optional[int]:
    """
    Least m such that f is constant on window ∖ A_m and every interior x outside A_m has
    diam f(ball(x, r)) = 0; None when no such m leaves a non-empty outside.
    """
    m = EventualConstancy(f.window, metric, r).index(f)
    logger.info("eventual constancy index at r=%d: %s", r, m)
    return m


def excised_oscillation(f: WindowFunction, metric: WordMetric, r_list, margin: int, max_m: int,
                        origin: Optional[Element] = None) -> Dict[int, Dict[int, Fraction]]:
    """
    table[m][r] = max diam f(ball(x, r)) over interior x outside origin + A_m, for the m ≤ max_m
    that leave some interior point outside.
    """
    spec = f.window.spec
    origin = spec.identity if origin is None else origin
    points = interior(f.window, metric, margin)
    if not points:
        raise EmptyInteriorError(f"no interior points at margin {margin}")
    norms = [metric.norm(spec.sub(x, origin), max(max_m, 0)).value for x in points]
    per_scale = {r: diameters(f, metric, points, r) for r in r_list}
    table = {}
    for m in range(max_m + 1):
        outside = [k for k, n in enumerate(norms) if n is None or n > m]
        if not outside:
            break
        table[m] = {r: max(per_scale[r][k] for k in outside) for r in r_list}
    return table
