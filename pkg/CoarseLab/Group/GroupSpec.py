import logging
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple

from CoarseLab.Group.Element import Element, IDENTITY
from CoarseLab.Utils.Errors import BoundExceededError, ConfigError

logger = logging.getLogger(__name__)

BOUNDED_SUM = "bounded_sum"
INTEGERS = "integers"
LATTICE = "lattice"
KINDS = (BOUNDED_SUM, INTEGERS, LATTICE)


@dataclass(frozen=True)
class GroupSpec:
    """
    A countable abelian group presented as a restricted direct sum of cyclic groups.

    Kinds:
        bounded_sum: ⊕ Z_{m_i}, either one repeated `modulus` or an explicit `moduli` list.
        integers: the group Z (a single coordinate of infinite order).
        lattice: Z^rank.
    Coordinates 0 .. coordinate_bound-1 are usable; touching any higher coordinate raises
    BoundExceededError instead of truncating. All arithmetic returns canonical Elements.
    Example:
        >>> z2 = GroupSpec.bounded_sum(modulus=2, coordinate_bound=8)
        >>> z2.add(z2.basis(0), z2.basis(0))
        Element(0)
    """
    kind: str
    modulus: Optional[int] = None
    moduli: Tuple[int, ...] = ()
    rank: int = 1
    coordinate_bound: int = 32

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConfigError(f"Unknown group kind: {self.kind}")
        if self.coordinate_bound < 1:
            raise ConfigError("coordinate_bound must be at least 1")
        if self.kind == BOUNDED_SUM:
            if (self.modulus is None) == (not self.moduli):
                raise ConfigError("bounded_sum needs exactly one of modulus or moduli")
            if any(m < 2 for m in self.moduli) or (self.modulus is not None and self.modulus < 2):
                raise ConfigError("every modulus must be at least 2")
            if self.moduli and self.coordinate_bound > len(self.moduli):
                raise ConfigError("coordinate_bound exceeds the number of listed moduli")
        elif self.rank < 1:
            raise ConfigError("rank must be at least 1")
        elif self.coordinate_bound != self.rank:
            raise ConfigError("coordinate_bound of Z and Z^d equals the rank")

    @classmethod
    def bounded_sum(cls, modulus=None, moduli=None, coordinate_bound=None):
        moduli = tuple(moduli or ())
        if coordinate_bound is None:
            coordinate_bound = len(moduli) if moduli else 32
        return cls(BOUNDED_SUM, modulus=modulus, moduli=moduli, coordinate_bound=coordinate_bound)

    @classmethod
    def integers(cls):
        return cls(INTEGERS, rank=1, coordinate_bound=1)

    @classmethod
    def lattice(cls, rank):
        return cls(LATTICE, rank=rank, coordinate_bound=rank)

    @property
    def identity(self) -> Element:
        return IDENTITY

    @property
    def is_boolean(self) -> bool:
        """True for ⊕Z_2."""
        if self.kind != BOUNDED_SUM:
            return False
        if self.moduli:
            return all(m == 2 for m in self.moduli[:self.coordinate_bound])
        return self.modulus == 2

    def modulus_of(self, index: int) -> Optional[int]:
        """Order of coordinate `index`, or None for a coordinate of infinite order."""
        self.check_index(index)
        if self.kind != BOUNDED_SUM:
            return None
        return self.moduli[index] if self.moduli else self.modulus

    def check_index(self, index: int) -> None:
        if index < 0 or index >= self.coordinate_bound:
            raise BoundExceededError(
                f"coordinate {index} outside 0..{self.coordinate_bound - 1} of {self.kind} group")

    def canonical(self, pairs: Iterable[Tuple[int, int]]) -> Element:
        """Sum (index, value) pairs into a canonical Element (reduced, sorted, zero-free)."""
        values = {}
        for index, value in pairs:
            values[index] = values.get(index, 0) + value
        entries = []
        for index in sorted(values):
            modulus = self.modulus_of(index)
            value = values[index] % modulus if modulus else values[index]
            if value:
                entries.append((index, value))
        return Element(tuple(entries))

    def add(self, x: Element, y: Element) -> Element:
        if not y.entries:
            return x
        if not x.entries:
            return y
        return self.canonical(x.entries + y.entries)

    def neg(self, x: Element) -> Element:
        return self.canonical((i, -v) for i, v in x.entries)

    def sub(self, x: Element, y: Element) -> Element:
        return self.add(x, self.neg(y))

    def scale(self, x: Element, k: int) -> Element:
        return self.canonical((i, k * v) for i, v in x.entries)

    def sum(self, elements: Iterable[Element]) -> Element:
        pairs = []
        for element in elements:
            pairs.extend(element.entries)
        return self.canonical(pairs)

    def basis(self, index: int) -> Element:
        return self.canonical([(index, 1)])

    def from_int(self, value: int) -> Element:
        if self.kind != INTEGERS:
            raise ConfigError("from_int is only defined on the integers")
        return self.canonical([(0, value)])

    def from_vector(self, values: Sequence[int]) -> Element:
        return self.canonical(enumerate(values))

    def element(self, entries) -> Element:
        """Build a canonical Element from serialized entries, e.g. [[0, 1], [3, 1]]."""
        return self.canonical((int(i), int(v)) for i, v in entries)

    def to_json(self) -> dict:
        if self.kind == BOUNDED_SUM:
            data = {"kind": BOUNDED_SUM, "coordinate_bound": self.coordinate_bound}
            if self.moduli:
                data["moduli"] = list(self.moduli)
            else:
                data["modulus"] = self.modulus
            return data
        if self.kind == INTEGERS:
            return {"kind": INTEGERS}
        return {"kind": LATTICE, "rank": self.rank}

    @classmethod
    def from_json(cls, data: dict) -> "GroupSpec":
        kind = data.get("kind")
        if kind == BOUNDED_SUM:
            return cls.bounded_sum(modulus=data.get("modulus"), moduli=data.get("moduli"),
                                   coordinate_bound=data.get("coordinate_bound"))
        if kind == INTEGERS:
            return cls.integers()
        if kind == LATTICE:
            return cls.lattice(int(data.get("rank", 1)))
        raise ConfigError(f"Unknown group kind: {kind}")
