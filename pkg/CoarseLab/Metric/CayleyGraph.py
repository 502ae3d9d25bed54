from collections import deque
from typing import Dict, FrozenSet

from CoarseLab.Group.Element import Element
from CoarseLab.Metric.GeneratorSystem import GeneratorSystem
from CoarseLab.Utils.Errors import BallTooLargeError


class CayleyGraph:
    """
    Cay(G, S) explored by breadth-first search: vertices G, edges {(x, y): x - y ∈ S ∪ (-S)}.

    This walk shares nothing with the sumset tables of WordMetric and serves as the
    independent side of the ball identity check.
    """
    def __init__(self, system: GeneratorSystem, cap: int = 10 ** 6):
        self.system = system
        self.spec = system.spec
        self.cap = cap

    def neighbours(self, x: Element):
        for a in self.system.generators:
            yield self.spec.add(x, a)
            yield self.spec.sub(x, a)

    def distances_from(self, x: Element, radius: int) -> Dict[Element, int]:
        distances = {x: 0}
        queue = deque([x])
        while queue:
            current = queue.popleft()
            d = distances[current]
            if d == radius:
                continue
            for y in self.neighbours(current):
                if y not in distances:
                    distances[y] = d + 1
                    if len(distances) > self.cap:
                        raise BallTooLargeError(f"Cayley ball of radius {radius} exceeds {self.cap} vertices")
                    queue.append(y)
        return distances

    def ball(self, x: Element, radius: int) -> FrozenSet[Element]:
        return frozenset(self.distances_from(x, radius))
