import itertools
import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from CoarseLab.Group.Element import Element
from CoarseLab.Group.GroupSpec import GroupSpec
from CoarseLab.Hamming.HammingPoint import HammingPoint
from CoarseLab.Metric.WordMetric import WordMetric
from CoarseLab.Utils.ConfigReader import ConfigReader
from CoarseLab.Utils.Errors import TooLongSequenceError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FSStrictResult:
    """Whether all subset sums are distinct; on failure a colliding pair (F, H)."""
    ok: bool
    witness: Optional[Tuple[HammingPoint, HammingPoint]] = None

    def to_json(self) -> dict:
        return {"ok": self.ok,
                "witness": None if self.witness is None else [p.to_json() for p in self.witness]}


@dataclass(frozen=True)
class SignedSumResult:
    """
    Whether t_{i_0} b_{i_0} + ... + t_{i_k} b_{i_k} ∉ A_k for every subset and sign vector;
    on failure the violating subset, its signs and k.
    """
    ok: bool
    subset: Optional[Tuple[int, ...]] = None
    signs: Optional[Tuple[int, ...]] = None
    k: Optional[int] = None

    def to_json(self) -> dict:
        return {"ok": self.ok, "subset": None if self.subset is None else list(self.subset),
                "signs": None if self.signs is None else list(self.signs), "k": self.k}


def fs_strict_check(b: Sequence[Element], spec: GroupSpec) -> FSStrictResult:
    """
    Enumerate all 2^|b| subset sums by bitmask; FS-strict iff they are pairwise distinct.

    Raises:
        TooLongSequenceError: |b| above Hamming.max_fs_length (default 24).
    """
    limit = int(ConfigReader().get("Hamming", "max_fs_length", 24))
    if len(b) > limit:
        raise TooLongSequenceError(f"fs_strict_check enumerates 2^{len(b)} sums; limit is {limit}")
    seen = {}
    for mask in range(1 << len(b)):
        total = spec.sum(b[i] for i in range(len(b)) if mask >> i & 1)
        if total in seen:
            return FSStrictResult(False, (HammingPoint.from_mask(seen[total]), HammingPoint.from_mask(mask)))
        seen[total] = mask
    return FSStrictResult(True)


def signed_sum_condition_check(b: Sequence[Element], metric: WordMetric) -> SignedSumResult:
    """
    Check every signed sum of k+1 distinct terms of `b` against A_k.

    Subsets are visited by size, then lexicographically; sign vectors in the order of
    itertools.product((-1, 1)). Σ_k C(|b|, k+1)·2^{k+1} = 3^|b| - 1 membership tests.

    Raises:
        TooLongSequenceError: |b| above Hamming.max_signed_length (default 14).
    """
    limit = int(ConfigReader().get("Hamming", "max_signed_length", 14))
    if len(b) > limit:
        raise TooLongSequenceError(f"signed-sum check needs 3^{len(b)} tests; limit is {limit}")
    spec = metric.spec
    for size in range(1, len(b) + 1):
        for subset in itertools.combinations(range(len(b)), size):
            for signs in itertools.product((-1, 1), repeat=size):
                total = spec.sum(spec.scale(b[i], t) for i, t in zip(subset, signs))
                if metric.in_sumset(total, size - 1):
                    logger.debug("signed sum over %s with signs %s lies in A_%d", subset, signs, size - 1)
                    return SignedSumResult(False, subset, signs, size - 1)
    return SignedSumResult(True)
