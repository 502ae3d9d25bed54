import dataclasses
import logging
from typing import List, Optional, Sequence, Tuple

from CoarseLab.Group.Element import Element
from CoarseLab.Hamming.EmbeddingCertificate import (INCONCLUSIVE, VERIFIED, VIOLATED, EmbeddingCertificate,
                                                    EmbeddingVerdict)
from CoarseLab.Hamming.HammingPoint import HammingPoint, hamming_distance
from CoarseLab.Hamming.SubsetSumChecks import fs_strict_check, signed_sum_condition_check
from CoarseLab.Metric.WordMetric import WordMetric
from CoarseLab.Utils.ConfigReader import ConfigReader
from CoarseLab.Utils.Errors import IndexOutOfRangeError, ScanExhaustedError, TooLongSequenceError
from CoarseLab.Utils.Parallel import parallel_map

logger = logging.getLogger(__name__)


class EmbeddingBuilder:
    """
    Builds an FS-strict subsequence (b_n) of a generator sequence whose finite sums form an
    isometric copy of the Hamming space, and verifies the copy.

    Selection is first-accept over increasing source index. A candidate c extends
    b_0..b_n when
      (1) c ∉ {Σ_F b_i - Σ_H b_i : F, H ⊆ {0..n}}, and
      (4) Σ_{s=0}^{k} t_s b_{i_s} + t c ∉ A_{k+1} for every i_0 < ... < i_k ≤ n and signs t.
    The finished sequence is then re-validated by full subset-sum enumeration and the
    global signed-sum condition.
    Attributes:
        metric (WordMetric): membership oracle for the sumsets A_k.
    Example:
        >>> builder = EmbeddingBuilder(WordMetric(GeneratorSystem.powers(z, 3, 9)))
        >>> builder.greedy_select(list(builder.metric.system.generators), 4).b_seq
        (Element(0:1), Element(0:3), Element(0:9), Element(0:27))
    """
    def __init__(self, metric: WordMetric):
        self.metric = metric
        self.spec = metric.spec

    def greedy_select(self, a: Sequence[Element], target_len: int,
                      scan_limit: Optional[int] = None) -> EmbeddingCertificate:
        """
        Select b_0 .. b_{target_len-1} from `a`.

        Args:
            a: the truncated input sequence.
            target_len (int): number of terms to select (≤ Hamming.max_target_len).
            scan_limit (int, optional): candidates are taken from indices below this bound.

        Raises:
            TooLongSequenceError: target_len above the configured budget.
            ScanExhaustedError: no candidate below scan_limit passes; carries the last failure.
        """
        limit = int(ConfigReader().get("Hamming", "max_target_len", 14))
        if target_len > limit:
            raise TooLongSequenceError(f"target length {target_len} above {limit}")
        scan_limit = len(a) if scan_limit is None else min(scan_limit, len(a))
        spec = self.spec

        start = next((m for m in range(scan_limit) if not a[m].is_identity), None)
        if start is None:
            raise ScanExhaustedError("no non-zero term within the scan limit", (), "all terms are zero")
        chosen: List[Element] = []
        indices: List[int] = []
        differences = {spec.identity}
        signed: List[Tuple[Element, int]] = []

        def extend(m):
            c = a[m]
            chosen.append(c)
            indices.append(m)
            nonlocal differences
            differences = {spec.add(d, spec.scale(c, t)) for d in differences for t in (-1, 0, 1)}
            fresh = [(spec.scale(c, t), 1) for t in (-1, 1)]
            fresh.extend((spec.add(v, spec.scale(c, t)), size + 1) for v, size in signed for t in (-1, 1))
            signed.extend(fresh)
            logger.info("selected b_%d = %r from index %d", len(chosen) - 1, c, m)

        if target_len > 0:
            extend(start)
        last_failure = None
        m = start + 1
        while len(chosen) < target_len:
            if m >= scan_limit:
                raise ScanExhaustedError(
                    f"no candidate for b_{len(chosen)} below index {scan_limit}", chosen, last_failure)
            failure = self._reject_reason(a[m], differences, signed)
            if failure is None:
                extend(m)
            else:
                last_failure = f"index {m}: {failure}"
                logger.debug("candidate %d rejected: %s", m, failure)
            m += 1

        b_seq = tuple(chosen)
        fs = fs_strict_check(b_seq, spec)
        ss = signed_sum_condition_check(b_seq, self.metric)
        checks = {"fs_strict": fs.to_json(), "signed_sum": ss.to_json()}
        return EmbeddingCertificate(b_seq, tuple(indices), verified=fs.ok and ss.ok, checks=checks)

    def _reject_reason(self, c: Element, differences, signed) -> Optional[str]:
        spec = self.spec
        if c.is_identity:
            return "zero term"
        if c in differences:
            return "condition (1): equals a difference of subset sums"
        for value, size in signed:
            for t in (-1, 1):
                if self.metric.in_sumset(spec.add(value, spec.scale(c, t)), size):
                    return f"condition (4): signed sum of {size + 1} terms lies in A_{size}"
        return None

    def fs_map(self, H: HammingPoint, cert: EmbeddingCertificate) -> Element:
        """f(H) = Σ_{i∈H} b_i; f(∅) is the identity."""
        if H.indices and H.indices[-1] >= len(cert.b_seq):
            raise IndexOutOfRangeError(f"index {H.indices[-1]} beyond {len(cert.b_seq)} selected terms")
        return self.spec.sum(cert.b_seq[i] for i in H.indices)

    def verify_isometric_embedding(self, cert: EmbeddingCertificate, support_bound: int,
                                   max_r: Optional[int] = None) -> Tuple[EmbeddingVerdict, EmbeddingCertificate]:
        """
        Compare word_distance(f(F), f(H)) with |F △ H| for all F, H ⊆ {0..support_bound-1}.

        The upper bound d ≤ |F △ H| holds whenever every b_i is a letter of the alphabet; the
        lower bound is what the signed-sum condition buys. A distance beyond the search bound
        makes the verdict inconclusive rather than failed.

        Returns:
            (EmbeddingVerdict, EmbeddingCertificate): the verdict and the certificate updated
            with support_bound, moduli and any counterexample.
        """
        if support_bound > len(cert.b_seq) or support_bound < 0:
            raise IndexOutOfRangeError(f"support bound {support_bound} outside 0..{len(cert.b_seq)}")
        if max_r is None:
            step = 1
            for b in cert.b_seq[:support_bound]:
                norm = self.metric.norm(b).value
                step = max(step, norm if norm is not None else self.metric.default_max_r)
            max_r = max(1, support_bound * step)
        points = [HammingPoint.from_mask(mask) for mask in range(1 << support_bound)]
        images = [self.fs_map(F, cert) for F in points]

        def compare_row(i):
            row = []
            for j in range(len(points)):
                expected = hamming_distance(points[i], points[j])
                got = self.metric.distance(images[i], images[j], max_r).value
                row.append((j, expected, got))
            return row

        rows = parallel_map(compare_row, range(len(points)))
        moduli: List[Optional[int]] = [None] * (support_bound + 1)
        status = VERIFIED
        counterexample = None
        pairs = 0
        for i, row in enumerate(rows):
            for j, expected, got in row:
                pairs += 1
                if got is None:
                    if status == VERIFIED:
                        status = INCONCLUSIVE
                        counterexample = (points[i], points[j], expected, None)
                    continue
                for scale in range(expected, support_bound + 1):
                    if moduli[scale] is None or got > moduli[scale]:
                        moduli[scale] = got
                if got != expected and status != VIOLATED:
                    status = VIOLATED
                    counterexample = (points[i], points[j], expected, got)
        if status != VERIFIED:
            logger.warning("embedding %s at support bound %d: %s", status, support_bound, counterexample)
        verdict = EmbeddingVerdict(status, support_bound, moduli, counterexample, pairs)
        checks = dict(cert.checks)
        checks["isometry"] = verdict.to_json()
        updated = dataclasses.replace(
            cert, support_bound=support_bound, moduli=moduli, checks=checks,
            verified=cert.verified and verdict.verified,
            counterexample=None if verdict.verified else counterexample)
        return verdict, updated
