import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from CoarseLab.Group.Element import Element
from CoarseLab.Group.GroupSpec import GroupSpec
from CoarseLab.Group.Window import Window
from CoarseLab.Metric.WordMetric import WordMetric
from CoarseLab.Utils.Errors import WrongGroupError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class HammingPoint:
    """A finite set of natural numbers, a point of H = [ω]^{<ω}."""
    indices: Tuple[int, ...] = ()

    def __post_init__(self):
        if any(i < 0 for i in self.indices) or any(a >= b for a, b in zip(self.indices, self.indices[1:])):
            raise ValueError(f"Hamming point indices must be strictly increasing naturals: {self.indices}")

    @classmethod
    def of(cls, indices: Iterable[int]) -> "HammingPoint":
        return cls(tuple(sorted(set(indices))))

    @classmethod
    def from_mask(cls, mask: int) -> "HammingPoint":
        return cls(tuple(i for i in range(mask.bit_length()) if mask >> i & 1))

    def symmetric_difference(self, other: "HammingPoint") -> "HammingPoint":
        return HammingPoint.of(set(self.indices) ^ set(other.indices))

    def __len__(self):
        return len(self.indices)

    def to_json(self) -> list:
        return list(self.indices)


def hamming_distance(F: HammingPoint, H: HammingPoint) -> int:
    """h(F, H) = |F △ H|."""
    return len(set(F.indices) ^ set(H.indices))


def _require_boolean(spec: GroupSpec) -> None:
    if not spec.is_boolean:
        raise WrongGroupError("the canonical bijection is defined on ⊕Z_2 only")


def to_hamming(x: Element, spec: GroupSpec) -> HammingPoint:
    """Canonical bijection ⊕Z_2 → H: an element goes to its support."""
    _require_boolean(spec)
    return HammingPoint(x.support)


def from_hamming(F: HammingPoint, spec: GroupSpec) -> Element:
    """Inverse of `to_hamming`: Σ_{i∈F} e_i."""
    _require_boolean(spec)
    return spec.canonical((i, 1) for i in F.indices)


@dataclass
class AsymorphismModuli:
    """
    Macro-uniformity moduli of a bijection f between finite metric windows:
    forward[i] = max d_target(f(x), f(y)) over pairs with d_source(x, y) ≤ i,
    backward[i] the same for f^{-1}. None marks a scale with no pair.
    """
    forward: List[Optional[int]] = field(default_factory=list)
    backward: List[Optional[int]] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"forward": self.forward, "backward": self.backward}


def asymorphism_moduli(points: Sequence, mapping: Callable, source_distance: Callable,
                       target_distance: Callable, max_scale: int) -> AsymorphismModuli:
    """
    Tabulate forward and backward moduli of `mapping` on all pairs of `points`.

    Distances past `max_scale` are ignored on the side that indexes the table.
    """
    images = [mapping(p) for p in points]
    forward: List[Optional[int]] = [None] * (max_scale + 1)
    backward: List[Optional[int]] = [None] * (max_scale + 1)
    for i, (p, fp) in enumerate(zip(points, images)):
        for q, fq in zip(points[i:], images[i:]):
            d_source = source_distance(p, q)
            d_target = target_distance(fp, fq)
            if d_source is not None and d_source <= max_scale:
                for scale in range(d_source, max_scale + 1):
                    if d_target is not None and (forward[scale] is None or d_target > forward[scale]):
                        forward[scale] = d_target
            if d_target is not None and d_target <= max_scale:
                for scale in range(d_target, max_scale + 1):
                    if d_source is not None and (backward[scale] is None or d_source > backward[scale]):
                        backward[scale] = d_source
    return AsymorphismModuli(forward, backward)


@dataclass
class IsometryReport:
    """Outcome of comparing word distance with Hamming distance under the canonical bijection."""
    pairs_checked: int
    mismatches: int
    first_mismatch: Optional[Dict] = None
    moduli: Optional[AsymorphismModuli] = None

    @property
    def ok(self) -> bool:
        return self.mismatches == 0

    def to_json(self) -> dict:
        return {"pairs_checked": self.pairs_checked, "mismatches": self.mismatches,
                "first_mismatch": self.first_mismatch, "ok": self.ok,
                "moduli": None if self.moduli is None else self.moduli.to_json()}


def sample_isometry(window: Window, metric: WordMetric, pairs: int, seed: int,
                    exhaustive_support: int = 0) -> IsometryReport:
    """
    Check word_distance(x, y) == h(support x, support y) on `pairs` uniformly sampled pairs of
    `window` plus every pair supported in {0 .. exhaustive_support-1}.
    The forward and backward moduli of the bijection are tabulated on that exhaustive part;
    both tables read μ(i) = i when the bijection is an isometry.

    Args:
        window (Window): a support-window of ⊕Z_2.
        metric (WordMetric): word metric of the basis generators.
        pairs (int): number of sampled pairs.
        seed (int): numpy Generator seed; the same seed reproduces the same sample.
        exhaustive_support (int): support size checked on all pairs.
    """
    spec = window.spec
    _require_boolean(spec)
    elements = window.elements
    rng = np.random.default_rng(seed)
    chosen = rng.integers(0, len(elements), size=(pairs, 2)) if pairs else np.empty((0, 2), dtype=int)
    sample = [(elements[int(i)], elements[int(j)]) for i, j in chosen]
    small = [x for x in elements if all(i < exhaustive_support for i in x.support)]
    sample.extend((x, y) for x in small for y in small)
    bound = max((len(x.support) for x in elements), default=0) * 2
    mismatches = 0
    first = None
    for x, y in sample:
        expected = hamming_distance(to_hamming(x, spec), to_hamming(y, spec))
        got = metric.distance(x, y, max(bound, expected)).value
        if got != expected:
            mismatches += 1
            if first is None:
                first = {"x": x.to_json(), "y": y.to_json(), "expected": expected,
                         "got": "exceeds-bound" if got is None else got}
    moduli = None
    if small:
        moduli = asymorphism_moduli(small, lambda x: to_hamming(x, spec),
                                    lambda x, y: metric.distance(x, y, bound).value, hamming_distance,
                                    exhaustive_support)
    if mismatches:
        logger.warning("isometry check found %d mismatches", mismatches)
    return IsometryReport(len(sample), mismatches, first, moduli)
