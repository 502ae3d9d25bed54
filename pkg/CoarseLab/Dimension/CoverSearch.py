import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import networkx as nx

from CoarseLab.Dimension.CoverWitness import CoverWitness, halos, verify_witness
from CoarseLab.Group.Element import Element
from CoarseLab.Group.Window import Window
from CoarseLab.Metric.IdealBase import IdealBase
from CoarseLab.Metric.WordMetric import WordMetric
from CoarseLab.Utils.ConfigReader import ConfigReader
from CoarseLab.Utils.Errors import CandidatesInsufficientError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MinClassesResult:
    """Least class count found, its witness, and whether the search proved minimality."""
    classes: int
    witness: CoverWitness
    exact: bool
    nodes: int = 0
    lower_bound: int = 0

    def to_json(self) -> dict:
        return {"classes": self.classes, "exact": self.exact, "nodes": self.nodes,
                "lower_bound": self.lower_bound, "witness": self.witness.to_json()}


def _eccentricity(metric: WordMetric, x0: Element, S: FrozenSet[Element], ceiling: int) -> int:
    """max over y ∈ S of d(x0, y), searched with doubling bounds."""
    worst = 0
    for y in S:
        bound = max(1, min(metric.default_max_r, ceiling))
        while True:
            result = metric.distance(x0, y, bound)
            if not result.exceeds_bound:
                worst = max(worst, result.value)
                break
            if metric.exhausted or bound >= ceiling:
                raise CandidatesInsufficientError(
                    f"candidate set is unbounded: {y!r} is not within {ceiling} letters of {x0!r}")
            bound = min(2 * bound, ceiling)
    return worst


def set_radius(metric: WordMetric, S: FrozenSet[Element], ceiling: Optional[int] = None) -> int:
    """
    cover_radius(S, 1), searched with doubling bounds. The radius never exceeds the
    eccentricity of min(S) inside S, so the search stops there.

    Raises:
        CandidatesInsufficientError: some point of S is farther than Dimension.radius_ceiling
            from the others, or outside the generated subgroup.
    """
    if len(S) <= 1:
        return 0
    if ceiling is None:
        ceiling = int(ConfigReader().get("Dimension", "radius_ceiling", 4096))
    upper = _eccentricity(metric, min(S), S, ceiling)
    ideal = IdealBase(metric)
    bound = 1
    while True:
        result = ideal.cover_radius(S, 1, max_r=min(bound, upper))
        if not result.exceeds_bound:
            return result.radius
        bound *= 2


def conflict_graph(metric: WordMetric, sets: Sequence[FrozenSet[Element]], r: int) -> nx.Graph:
    """Nodes are set positions; an edge joins two sets whose radius-r halos meet."""
    ringed = halos(metric, sets, r)
    graph = nx.Graph()
    graph.add_nodes_from(range(len(sets)))
    for i in range(len(sets)):
        for j in range(i + 1, len(sets)):
            if not ringed[i].isdisjoint(ringed[j]):
                graph.add_edge(i, j)
    return graph


def _check_cover(window: Window, candidates: Sequence[FrozenSet[Element]]) -> None:
    covered = frozenset().union(*candidates) if candidates else frozenset()
    missing = [x for x in window.elements if x not in covered]
    if missing:
        raise CandidatesInsufficientError(
            f"candidates miss {len(missing)} window points, first {missing[0]!r}")


def _witness(window, metric, sets, colors, r) -> CoverWitness:
    count = max(colors.values(), default=-1) + 1
    classes = tuple(tuple(S for i, S in enumerate(sets) if colors[i] == color) for color in range(count))
    D = max((set_radius(metric, S) for S in sets), default=0)
    return CoverWitness(window, metric, classes, r, D)


def greedy_cover(window: Window, metric: WordMetric, candidates: Sequence[FrozenSet[Element]], r: int) -> CoverWitness:
    """
    Greedy subcover by residual coverage, colored first-fit on the halo conflict graph.

    Ties in coverage go to the earlier candidate; first-fit visits sets in selection order.
    D is the largest cover_radius(S, 1) over selected sets, so the witness passes
    verify_witness by construction.

    Raises:
        CandidatesInsufficientError: the candidates do not cover the window.
    """
    _check_cover(window, candidates)
    uncovered = set(window.elements)
    selected: List[FrozenSet[Element]] = []
    while uncovered:
        best = max(range(len(candidates)), key=lambda i: (len(candidates[i] & uncovered), -i))
        selected.append(candidates[best])
        uncovered -= candidates[best]
    graph = conflict_graph(metric, selected, r)
    colors = nx.greedy_color(graph, strategy=lambda G, colors: range(len(selected)))
    witness = _witness(window, metric, selected, colors, r)
    logger.info("greedy cover: %d sets in %d classes at r=%d, D=%d",
                len(selected), len(witness.classes), r, witness.D)
    return witness


def _clique_bound(graph: nx.Graph, nodes) -> int:
    """Size of a clique grown greedily by descending degree inside `nodes`."""
    clique: List[int] = []
    for v in sorted(nodes, key=lambda v: (-graph.degree(v), v)):
        if all(graph.has_edge(v, u) for u in clique):
            clique.append(v)
    return len(clique)


def exact_min_classes(window: Window, metric: WordMetric, candidates: Sequence[FrozenSet[Element]], r: int,
                      budget: Optional[int] = None) -> MinClassesResult:
    """
    Exact minimum number of classes over subcovers drawn from `candidates`, by branch and bound.

    The greedy witness is the first incumbent. Each node takes the first uncovered window
    point and branches over the candidates containing it (larger coverage first) and over
    the classes it can join, opening at most one new class. The lower bound is a greedy
    clique among forced sets, those that alone cover some point. Minimality is relative to
    the candidate family.

    Args:
        budget (int, optional): node limit; defaults to Dimension.exact_budget. When it runs
            out the best witness so far is returned with `exact=False`.

    Raises:
        CandidatesInsufficientError: the candidates do not cover the window.
    """
    if budget is None:
        budget = int(ConfigReader().get("Dimension", "exact_budget", 200000))
    _check_cover(window, candidates)
    incumbent = greedy_cover(window, metric, candidates, r)
    if not window.elements:
        return MinClassesResult(0, incumbent, True)

    order = sorted(range(len(candidates)), key=lambda i: (-len(candidates[i] & window.members), i))
    family = [candidates[i] for i in order]
    points = list(window.elements)
    index = {x: i for i, x in enumerate(points)}
    masks = [sum(1 << index[x] for x in S if x in index) for S in family]
    full = (1 << len(points)) - 1
    containing = [[c for c in range(len(family)) if masks[c] >> p & 1] for p in range(len(points))]
    graph = conflict_graph(metric, family, r)

    forced = {cs[0] for cs in containing if len(cs) == 1}
    lower = max(1, _clique_bound(graph, forced))
    best = {"count": len(incumbent.classes), "assignment": None}
    nodes = 0
    exhausted = False

    def search(covered: int, assignment: Dict[int, int], used: int):
        nonlocal nodes, exhausted
        if exhausted or best["count"] <= lower:
            return
        nodes += 1
        if nodes > budget:
            exhausted = True
            return
        if covered == full:
            if used < best["count"]:
                best["count"] = used
                best["assignment"] = dict(assignment)
                logger.debug("exact search: %d classes after %d nodes", used, nodes)
            return
        point = (~covered & full & -(~covered & full)).bit_length() - 1
        for c in containing[point]:
            if c in assignment:
                continue
            for color in range(min(used + 1, best["count"] - 1)):
                if any(assignment[o] == color and graph.has_edge(c, o) for o in assignment):
                    continue
                assignment[c] = color
                search(covered | masks[c], assignment, max(used, color + 1))
                del assignment[c]

    search(0, {}, 0)
    if exhausted:
        logger.warning("exact_min_classes ran out of its %d-node budget; result is an upper bound", budget)

    if best["assignment"] is None:
        witness = incumbent
    else:
        chosen = sorted(best["assignment"])
        sets = [family[c] for c in chosen]
        colors = {i: best["assignment"][c] for i, c in enumerate(chosen)}
        witness = _witness(window, metric, sets, colors, r)
    if not verify_witness(witness).valid:
        logger.error("exact_min_classes produced a witness that fails verification")
    return MinClassesResult(len(witness.classes), witness, not exhausted, nodes, lower)
