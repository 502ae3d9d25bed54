import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import FrozenSet, Iterable, Optional, Tuple

from CoarseLab.Group.Element import Element
from CoarseLab.Metric.WordMetric import WordMetric

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IdealStage:
    """
    A member (n, F) of the ideal base {F + A_n}, read also as the entourage
    E = {(x, y): x - y ∈ F + A_n} of the induced coarse structure.

    The base is directed (`join`), closed under composition of entourages
    (E_{F+A_n} ∘ E_{F'+A_m} = E_{(F+F')+A_{n+m}}, `compose`) and under inversion
    (E^{-1} = E_{-F+A_n}, `inverse`, since A_n = -A_n).
    """
    n: int
    centers: FrozenSet[Element]

    @classmethod
    def around_identity(cls, n: int, spec) -> "IdealStage":
        return cls(n, frozenset([spec.identity]))

    def join(self, other: "IdealStage") -> "IdealStage":
        return IdealStage(max(self.n, other.n), self.centers | other.centers)

    def compose(self, other: "IdealStage", spec) -> "IdealStage":
        return IdealStage(self.n + other.n,
                          frozenset(spec.add(f, g) for f in self.centers for g in other.centers))

    def inverse(self, spec) -> "IdealStage":
        return IdealStage(self.n, frozenset(spec.neg(f) for f in self.centers))

    def members(self, metric: WordMetric, cap: Optional[int] = None) -> FrozenSet[Element]:
        return metric.ideal_ball(self.centers, self.n, cap)

    def contains_pair(self, metric: WordMetric, x: Element, y: Element) -> bool:
        difference = metric.spec.sub(x, y)
        return any(metric.in_sumset(metric.spec.sub(difference, f), self.n) for f in self.centers)

    def entourage_ball(self, metric: WordMetric, x: Element, cap: Optional[int] = None) -> FrozenSet[Element]:
        """E[x] = {y: (x, y) ∈ E} = x - F + A_n."""
        spec = metric.spec
        return metric.ideal_ball((spec.sub(x, f) for f in self.centers), self.n, cap)


@dataclass(frozen=True)
class CoverRadiusResult:
    """Least radius n with S ⊆ F + A_n for |F| ≤ k, or `radius=None` past `search_bound`."""
    radius: Optional[int]
    centers: Tuple[Element, ...]
    search_bound: int
    verified: bool = False

    @property
    def exceeds_bound(self) -> bool:
        return self.radius is None

    def to_json(self) -> dict:
        return {
            "radius": "exceeds-bound" if self.radius is None else self.radius,
            "centers": [c.to_json()["entries"] for c in self.centers],
            "search_bound": self.search_bound,
            "verified": self.verified,
        }


class IdealBase:
    """
    Membership in the ideal generated by the sequence: a finite set S belongs to the
    stage F + A_n exactly when it is covered by |F| balls of radius n.

    `cover_radius` solves that k-center problem exactly. Candidate centers are restricted to
    ∪_{s∈S} ball(s, max_r); a center farther than max_r from every point covers nothing
    within the search bound, so the restriction loses no solution.
    Attributes:
        metric (WordMetric): distance oracle for the generator system.
    """
    def __init__(self, metric: WordMetric):
        self.metric = metric
        self.spec = metric.spec

    def ideal_ball(self, centers: Iterable[Element], n: int, cap: Optional[int] = None) -> FrozenSet[Element]:
        return self.metric.ideal_ball(centers, n, cap)

    def cover_radius(self, S: Iterable[Element], k: int, max_r: Optional[int] = None) -> CoverRadiusResult:
        """
        Exact minimum over center sets F (|F| ≤ k) of max_{s∈S} d(s, F).

        Among optimal center sets the smallest one wins, then the lexicographically least
        sorted tuple. The result is re-checked by direct membership S ⊆ F + A_radius.

        Args:
            S: the finite set to cover.
            k (int): number of centers allowed, at least 1.
            max_r (int, optional): largest radius searched.

        Returns:
            CoverRadiusResult: radius and centers, or exceeds-bound.
        """
        if k < 1:
            raise ValueError("cover_radius needs k >= 1")
        if max_r is None:
            max_r = self.metric.default_max_r
        points = tuple(sorted(set(S)))
        if not points:
            return CoverRadiusResult(0, (), max_r, True)
        if k >= len(points):
            return CoverRadiusResult(0, points, max_r, True)

        candidates = sorted(self.metric.ideal_ball(points, max_r))
        distances = {}
        for c in candidates:
            row = []
            for s in points:
                row.append(self.metric.distance(s, c, max_r).value)
            distances[c] = row
        logger.debug("cover_radius: %d points, %d candidate centers, k=%d", len(points), len(candidates), k)

        if k == 1:
            best = None
            for c in candidates:
                row = distances[c]
                if None in row:
                    continue
                if best is None or max(row) < best[0]:
                    best = (max(row), c)
            if best is None:
                return CoverRadiusResult(None, (), max_r, False)
            return self._checked(points, best[0], (best[1],), max_r)

        for radius in range(max_r + 1):
            masks = {}
            for c in candidates:
                mask = 0
                for i, d in enumerate(distances[c]):
                    if d is not None and d <= radius:
                        mask |= 1 << i
                masks[c] = mask
            feasible = self._feasibility(set(masks.values()), len(points))
            size = next((b for b in range(1, k + 1) if feasible(0, b)), None)
            if size is None:
                continue
            chosen = []
            covered = 0
            remaining = size
            for c in candidates:
                if remaining == 0:
                    break
                gain = masks[c] & ~covered
                if gain and feasible(covered | masks[c], remaining - 1):
                    chosen.append(c)
                    covered |= masks[c]
                    remaining -= 1
            return self._checked(points, radius, tuple(chosen), max_r)
        return CoverRadiusResult(None, (), max_r, False)

    def _checked(self, points, radius, centers, max_r) -> CoverRadiusResult:
        verified = all(any(self.metric.in_sumset(self.spec.sub(s, c), radius) for c in centers)
                       for s in points)
        if not verified:
            logger.error("cover_radius result failed its membership check at radius %d", radius)
        return CoverRadiusResult(radius, centers, max_r, verified)

    @staticmethod
    def _feasibility(masks, size):
        full = (1 << size) - 1
        maximal = [m for m in masks if m and not any(m != o and m & o == m for o in masks)]
        by_point = [sorted((m for m in maximal if m >> i & 1), reverse=True) for i in range(size)]

        @lru_cache(maxsize=None)
        def feasible(covered, budget):
            if covered == full:
                return True
            if budget == 0:
                return False
            first = (~covered & full & -(~covered & full)).bit_length() - 1
            return any(feasible(covered | m, budget - 1) for m in by_point[first])

        return feasible

    def is_bounded(self, S: Iterable[Element], D: int) -> bool:
        """S ⊆ ball(c, D) for some c ∈ G."""
        return not self.cover_radius(S, 1, max_r=D).exceeds_bound
