import itertools
import math
from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, Optional, Tuple, Union

from CoarseLab.Group.Element import Element
from CoarseLab.Group.GroupSpec import BOUNDED_SUM, GroupSpec
from CoarseLab.Utils.Errors import ConfigError, UnboundedWindowError


@dataclass(frozen=True)
class SupportShape:
    """All elements whose support lies in `indices` (finite-order coordinates only)."""
    indices: Tuple[int, ...]

    def cardinality(self, spec: GroupSpec) -> int:
        return math.prod(spec.modulus_of(i) for i in self.indices)

    def to_json(self) -> dict:
        return {"kind": "support", "indices": list(self.indices)}


@dataclass(frozen=True)
class BoxShape:
    """Per-coordinate inclusive integer intervals, for Z and Z^d."""
    intervals: Tuple[Tuple[int, int], ...]

    def cardinality(self, spec: GroupSpec) -> int:
        return math.prod(hi - lo + 1 for lo, hi in self.intervals)

    def to_json(self) -> dict:
        return {"kind": "box", "intervals": [list(interval) for interval in self.intervals]}


Shape = Union[SupportShape, BoxShape]


@dataclass(frozen=True)
class Window:
    """
    A finite truncation of the group: the point set described by `shape`,
    enumerated once in lexicographic Element order.

    Windows built with `from_elements` (translates, hand-picked sets) carry `shape=None`.
    """
    spec: GroupSpec
    shape: Optional[Shape]
    elements: Tuple[Element, ...]
    members: FrozenSet[Element] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.elements))

    @classmethod
    def enumerate(cls, spec: GroupSpec, shape: Shape) -> "Window":
        """
        Enumerate every element described by `shape`.

        Raises:
            UnboundedWindowError: support-window over coordinates of infinite order.
            ConfigError: a box-window on a bounded sum, or a box whose dimension
                differs from the rank.
        """
        if isinstance(shape, SupportShape):
            if spec.kind != BOUNDED_SUM:
                raise UnboundedWindowError(f"support-window is not finite on a {spec.kind} group")
            indices = tuple(sorted(set(shape.indices)))
            ranges = [range(spec.modulus_of(i)) for i in indices]
            points = (spec.canonical(zip(indices, values)) for values in itertools.product(*ranges))
            return cls(spec, SupportShape(indices), tuple(sorted(points)))
        if isinstance(shape, BoxShape):
            if spec.kind == BOUNDED_SUM:
                raise ConfigError("box-windows are defined for Z and Z^d")
            if len(shape.intervals) != spec.rank:
                raise ConfigError(f"box has {len(shape.intervals)} intervals for rank {spec.rank}")
            if any(lo > hi for lo, hi in shape.intervals):
                raise ConfigError("box interval with lower end above upper end")
            ranges = [range(lo, hi + 1) for lo, hi in shape.intervals]
            points = (spec.from_vector(values) for values in itertools.product(*ranges))
            return cls(spec, shape, tuple(sorted(points)))
        raise ConfigError(f"Unknown window shape: {shape!r}")

    @classmethod
    def from_elements(cls, spec: GroupSpec, elements: Iterable[Element]) -> "Window":
        return cls(spec, None, tuple(sorted(set(elements))))

    def translate(self, g: Element) -> "Window":
        return Window.from_elements(self.spec, (self.spec.add(x, g) for x in self.elements))

    def __contains__(self, x) -> bool:
        return x in self.members

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def to_json(self) -> dict:
        data = {"size": len(self.elements)}
        if self.shape is not None:
            data["shape"] = self.shape.to_json()
        else:
            data["elements"] = [x.to_json()["entries"] for x in self.elements]
        return data
