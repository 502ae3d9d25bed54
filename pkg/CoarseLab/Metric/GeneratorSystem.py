from dataclasses import dataclass, field
from typing import Tuple

from CoarseLab.Group.Element import Element
from CoarseLab.Group.GroupSpec import BOUNDED_SUM, INTEGERS, GroupSpec
from CoarseLab.Utils.Errors import ConfigError


@dataclass(frozen=True)
class GeneratorSystem:
    """
    A truncated generator sequence (a_0, ..., a_{N-1}) and its symmetric alphabet
    A = {0} ∪ {±a_n}.

    Every membership or distance answer derived from a system is exact for the truncated
    Cayley graph and therefore an under-approximation of membership in A_n for the full
    infinite sequence: a "true" stays true when more generators are added.
    Attributes:
        spec (GroupSpec): the ambient group.
        generators (tuple[Element]): the truncated sequence, in order, repetitions allowed.
        steps (tuple[Element]): the distinct non-zero letters ±a_n, sorted.
    """
    spec: GroupSpec
    generators: Tuple[Element, ...]
    steps: Tuple[Element, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.generators:
            raise ConfigError("a generator system needs at least one generator")
        for a in self.generators:
            if a.is_identity:
                raise ConfigError("generators must be non-zero")
            for index, _ in a.entries:
                self.spec.check_index(index)
        steps = set(self.generators) | {self.spec.neg(a) for a in self.generators}
        object.__setattr__(self, "steps", tuple(sorted(steps)))

    @property
    def symmetric(self) -> bool:
        return True

    @property
    def alphabet(self) -> Tuple[Element, ...]:
        """A = {0} ∪ {±a_n}."""
        return (self.spec.identity,) + self.steps

    def truncated(self, count: int) -> "GeneratorSystem":
        """The system of the first `count` generators."""
        return GeneratorSystem(self.spec, self.generators[:count])

    @classmethod
    def basis(cls, spec: GroupSpec, count: int) -> "GeneratorSystem":
        return cls(spec, tuple(spec.basis(i) for i in range(count)))

    @classmethod
    def powers(cls, spec: GroupSpec, base: int, count: int) -> "GeneratorSystem":
        if spec.kind != INTEGERS:
            raise ConfigError("powers generators are defined on the integers")
        return cls(spec, tuple(spec.from_int(base ** n) for n in range(count)))

    @classmethod
    def from_values(cls, spec: GroupSpec, values) -> "GeneratorSystem":
        """
        Build a system from serialized values: integers on Z, integer vectors on Z^d,
        or entry lists ([[i, v], ...]) on any group.
        """
        elements = []
        for value in values:
            if isinstance(value, int):
                elements.append(spec.from_int(value))
            elif value and all(isinstance(v, int) for v in value) and spec.kind != BOUNDED_SUM:
                elements.append(spec.from_vector(value))
            else:
                elements.append(spec.element(value))
        return cls(spec, tuple(elements))

    def to_json(self) -> dict:
        return {"kind": "list", "values": [a.to_json()["entries"] for a in self.generators]}
