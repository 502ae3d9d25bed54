import logging
import threading
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Set

from CoarseLab.Group.Element import Element
from CoarseLab.Metric.GeneratorSystem import GeneratorSystem
from CoarseLab.Utils.ConfigReader import ConfigReader
from CoarseLab.Utils.Errors import BallTooLargeError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DistanceResult:
    """A word distance, or `value=None` when it exceeds `search_bound`."""
    value: Optional[int]
    search_bound: int

    @property
    def exceeds_bound(self) -> bool:
        return self.value is None

    def to_json(self) -> dict:
        return {"value": "exceeds-bound" if self.value is None else self.value,
                "search_bound": self.search_bound}


class WordMetric:
    """
    Exact word metric of Cay(G, {a_n}) for a truncated generator system.

    The metric keeps the sumset layers of the identity: layer k holds the elements whose
    word norm is exactly k, so A_n is the union of layers 0..n. Layers up to `direct_depth`
    (and further while the table stays under `table_cap`) answer queries by lookup; past the
    table depth d a query is answered by meet-in-the-middle: prefixes of r-d letters come from the
    table while it is deep enough and otherwise from a depth-first walk over signed letter
    multisets, and each remainder is looked up in the table. Growth that would pass `ball_cap`
    stops the table instead of failing the query.

    Layers and caches are grown under a single writer lock and only read afterwards, so one
    instance can serve concurrent queries.
    Attributes:
        system (GeneratorSystem): the generator sequence.
        ball_cap (int): largest ball enumerated before BallTooLargeError.
        table_cap (int): optional table growth stops past this many stored elements.
        direct_depth (int): depth always covered by the table for a query.
    Example:
        >>> z = GroupSpec.integers()
        >>> metric = WordMetric(GeneratorSystem.powers(z, 3, 7))
        >>> metric.distance(z.from_int(0), z.from_int(5), 6).value
        3
    """
    def __init__(self, system: GeneratorSystem, ball_cap=None, table_cap=None, direct_depth=None):
        config = ConfigReader()
        self.system = system
        self.spec = system.spec
        self.ball_cap = int(ball_cap if ball_cap is not None else config.get("Metric", "ball_cap", 10 ** 6))
        self.table_cap = int(table_cap if table_cap is not None else config.get("Metric", "table_cap", 200000))
        self.direct_depth = int(direct_depth if direct_depth is not None else config.get("Metric", "direct_depth", 6))
        self.default_max_r = int(config.get("Metric", "default_max_r", 12))
        identity = self.spec.identity
        self._layers: List[FrozenSet[Element]] = [frozenset([identity])]
        self._norms: Dict[Element, int] = {identity: 0}
        self._exhausted = False
        self._found: Dict[Element, int] = {}
        self._lower: Dict[Element, int] = {}
        self._sumsets: Dict[int, FrozenSet[Element]] = {}
        # depth -> largest element limit the next layer is known to exceed
        self._stalled: Dict[int, int] = {}
        self._lock = threading.Lock()

    @property
    def depth(self) -> int:
        return len(self._layers) - 1

    @property
    def exhausted(self) -> bool:
        """True once the table holds the whole generated subgroup."""
        return self._exhausted

    def _grow(self, depth: int, limit: int, strict: bool) -> None:
        """Extend the layer table to `depth`, stopping (or raising, if strict) past `limit` elements."""
        if self.depth >= depth or self._exhausted:
            return
        with self._lock:
            while self.depth < depth and not self._exhausted:
                if limit <= self._stalled.get(self.depth, -1):
                    if strict:
                        raise BallTooLargeError(
                            f"sumset A_{self.depth + 1} has more than {limit} elements")
                    return
                fresh: Set[Element] = set()
                for x in self._layers[-1]:
                    for step in self.system.steps:
                        y = self.spec.add(x, step)
                        if y not in self._norms:
                            fresh.add(y)
                if len(self._norms) + len(fresh) > limit:
                    self._stalled[self.depth] = max(limit, self._stalled.get(self.depth, limit))
                    if strict:
                        raise BallTooLargeError(
                            f"sumset A_{self.depth + 1} has more than {limit} elements")
                    logger.debug("table growth stopped at depth %d (cap %d)", self.depth, limit)
                    return
                if not fresh:
                    self._exhausted = True
                    logger.debug("generated subgroup exhausted at depth %d", self.depth)
                    return
                next_norm = self.depth + 1
                for y in fresh:
                    self._norms[y] = next_norm
                self._layers.append(frozenset(fresh))
            logger.debug("word-metric table at depth %d, %d elements", self.depth, len(self._norms))

    def norm(self, t: Element, max_r: Optional[int] = None) -> DistanceResult:
        """Word norm of `t`: the least r ≤ max_r with t a sum of r letters ±a_n."""
        if max_r is None:
            max_r = self.default_max_r
        max_r = int(max_r)
        known = self._norms.get(t)
        if known is None:
            known = self._found.get(t)
        if known is not None:
            return DistanceResult(known if known <= max_r else None, max_r)
        if self._lower.get(t, -1) >= max_r:
            return DistanceResult(None, max_r)
        self._grow(min(max_r, self.direct_depth), self.ball_cap, strict=False)
        self._grow(max_r, self.table_cap, strict=False)
        known = self._norms.get(t)
        if known is not None:
            return DistanceResult(known if known <= max_r else None, max_r)
        if self._exhausted or max_r <= self.depth:
            self._lower[t] = max(self._lower.get(t, -1), max_r)
            return DistanceResult(None, max_r)
        # meet in the middle: a word of length r > d splits as a prefix of r - d letters
        # and a suffix of exactly d letters, which the table holds
        self._grow((max_r + 1) // 2, self.ball_cap, strict=False)
        d = self.depth
        for r in range(d + 1, max_r + 1):
            for prefix in self._prefix_sums(r - d):
                if self.spec.sub(t, prefix) in self._norms:
                    self._found[t] = r
                    return DistanceResult(r, max_r)
        self._lower[t] = max(self._lower.get(t, -1), max_r)
        return DistanceResult(None, max_r)

    def _prefix_sums(self, k: int) -> Iterator[Element]:
        """Sums of k signed letters, as multisets that never hold a letter together with its negative."""
        if k <= self.depth:
            yield from self._layers[k]
            return
        steps = self.system.steps
        opposite = [steps.index(self.spec.neg(s)) for s in steps]

        def walk(start: int, left: int, total: Element, used: FrozenSet[int]):
            if left == 0:
                yield total
                return
            for j in range(start, len(steps)):
                if opposite[j] in used:
                    continue
                yield from walk(j, left - 1, self.spec.add(total, steps[j]), used | {j})

        yield from walk(0, k, self.spec.identity, frozenset())

    def distance(self, x: Element, y: Element, max_r: Optional[int] = None) -> DistanceResult:
        """word_distance(x, y) = |x - y| in the word metric."""
        return self.norm(self.spec.sub(x, y), max_r)

    def in_sumset(self, x: Element, n: int) -> bool:
        """x ∈ A_n, exact for the truncated alphabet."""
        if n < 0:
            return False
        return not self.norm(x, n).exceeds_bound

    def sumset(self, n: int) -> FrozenSet[Element]:
        """A_n as an explicit set; raises BallTooLargeError past `ball_cap`."""
        cached = self._sumsets.get(n)
        if cached is not None:
            return cached
        self._grow(n, self.ball_cap, strict=True)
        layers = self._layers[:n + 1]
        if sum(len(layer) for layer in layers) > self.ball_cap:
            raise BallTooLargeError(f"sumset A_{n} has more than {self.ball_cap} elements")
        members = frozenset().union(*layers)
        self._sumsets[n] = members
        return members

    def ball(self, x: Element, n: int, cap: Optional[int] = None) -> FrozenSet[Element]:
        """E_{A_n}[x] = x + A_n."""
        members = self.sumset(n)
        if cap is not None and len(members) > cap:
            raise BallTooLargeError(f"ball of radius {n} has {len(members)} elements, cap {cap}")
        if x.is_identity:
            return members
        return frozenset(self.spec.add(x, a) for a in members)

    def ideal_ball(self, centers: Iterable[Element], n: int, cap: Optional[int] = None) -> FrozenSet[Element]:
        """F + A_n, the generic bounded set of the ideal."""
        cap = self.ball_cap if cap is None else cap
        members: Set[Element] = set()
        for f in centers:
            members |= self.ball(f, n, cap)
            if len(members) > cap:
                raise BallTooLargeError(f"ideal ball of radius {n} exceeds {cap} elements")
        return frozenset(members)

    def set_distance(self, S: Iterable[Element], T: Iterable[Element], max_r: int) -> Optional[int]:
        """min over s ∈ S, t ∈ T of word_distance(s, t), or None past max_r."""
        best = None
        for s in S:
            for t in T:
                bound = max_r if best is None else min(max_r, best)
                result = self.distance(s, t, bound)
                if result.value is not None and (best is None or result.value < best):
                    best = result.value
                    if best == 0:
                        return 0
        return best
