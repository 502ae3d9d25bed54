from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from CoarseLab.Group.Element import Element

VERIFIED = "verified"
VIOLATED = "violated"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class EmbeddingCertificate:
    """
    A selected subsequence (b_i) of the input sequence together with the checks it passed.

    Attributes:
        b_seq: the selected elements b_0 .. b_{L-1}.
        source_indices: position of each b_i in the input sequence, strictly increasing.
        support_bound: s such that all pairs F, H ⊆ {0..s-1} were compared (0 before any comparison).
        verified: every recorded check passed; never true while a counterexample is recorded.
        counterexample: (F, H, expected, got) from the isometry comparison.
        checks: verdicts of the checks run so far, by name.
        moduli: μ(i) for i = 0..support_bound.
    """
    b_seq: Tuple[Element, ...]
    source_indices: Tuple[int, ...]
    support_bound: int = 0
    verified: bool = False
    counterexample: Optional[Tuple] = None
    checks: Dict[str, object] = field(default_factory=dict)
    moduli: List[Optional[int]] = field(default_factory=list)

    def __post_init__(self):
        if any(a >= b for a, b in zip(self.source_indices, self.source_indices[1:])):
            raise ValueError("source indices must be strictly increasing")
        if len(self.source_indices) != len(self.b_seq):
            raise ValueError("one source index per selected element")
        if self.verified and self.counterexample is not None:
            raise ValueError("a verified certificate cannot carry a counterexample")

    def to_json(self) -> dict:
        counterexample = None
        if self.counterexample is not None:
            F, H, expected, got = self.counterexample
            counterexample = {"F": F.to_json(), "H": H.to_json(), "expected": expected,
                              "got": "exceeds-bound" if got is None else got}
        return {
            "b_seq": [b.to_json()["entries"] for b in self.b_seq],
            "source_indices": list(self.source_indices),
            "support_bound": self.support_bound,
            "verified": self.verified,
            "counterexample": counterexample,
            "checks": {name: check for name, check in sorted(self.checks.items())},
            "moduli": list(self.moduli),
        }


@dataclass(frozen=True)
class EmbeddingVerdict:
    """Result of comparing d(f(F), f(H)) with |F △ H| over a support bound."""
    status: str
    support_bound: int
    moduli: List[Optional[int]]
    counterexample: Optional[Tuple] = None
    pairs_checked: int = 0

    @property
    def verified(self) -> bool:
        return self.status == VERIFIED

    def to_json(self) -> dict:
        counterexample = None
        if self.counterexample is not None:
            F, H, expected, got = self.counterexample
            counterexample = {"F": F.to_json(), "H": H.to_json(), "expected": expected,
                              "got": "exceeds-bound" if got is None else got}
        return {"status": self.status, "support_bound": self.support_bound, "moduli": list(self.moduli),
                "counterexample": counterexample, "pairs_checked": self.pairs_checked}
