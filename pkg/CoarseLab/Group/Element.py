from dataclasses import dataclass
from typing import Tuple


@dataclass(frozen=True, order=True)
class Element:
    """
    A point of a restricted direct sum of cyclic groups.

    `entries` is the canonical sparse form: (coordinate index, value) pairs in strictly
    increasing index order with no zero value. Canonical forms are produced by
    `GroupSpec.canonical`; two elements are equal exactly when their entry lists are.
    Ordering is lexicographic on the entry tuples, which fixes every enumeration order
    in the workbench (the identity, with no entries, sorts first).
    """
    entries: Tuple[Tuple[int, int], ...] = ()

    @property
    def is_identity(self) -> bool:
        return not self.entries

    @property
    def support(self) -> Tuple[int, ...]:
        return tuple(index for index, _ in self.entries)

    def value(self, index: int) -> int:
        for i, v in self.entries:
            if i == index:
                return v
        return 0

    def to_json(self) -> dict:
        return {"entries": [[i, v] for i, v in self.entries]}

    def __repr__(self):
        if not self.entries:
            return "Element(0)"
        body = ", ".join(f"{i}:{v}" for i, v in self.entries)
        return f"Element({body})"


IDENTITY = Element()
