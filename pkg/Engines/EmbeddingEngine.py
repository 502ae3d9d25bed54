import logging

from CoarseLab.Hamming.EmbeddingBuilder import EmbeddingBuilder
from CoarseLab.Hamming.EmbeddingCertificate import INCONCLUSIVE as CERT_INCONCLUSIVE, EmbeddingCertificate
from CoarseLab.Hamming.HammingPoint import sample_isometry
from CoarseLab.Hamming.SubsetSumChecks import fs_strict_check, signed_sum_condition_check
from CoarseLab.Utils.ConfigReader import ConfigReader
from CoarseLab.Utils.Errors import ScanExhaustedError
from Engines.BaseEngine import INCONCLUSIVE, OK, VIOLATED, BaseEngine

logger = logging.getLogger(__name__)


class EmbeddingEngine(BaseEngine):
    """
    Hamming-space commands: the greedy FS-strict constructor, isometry verification of a
    given sequence, the subset-sum checks and the sampled check of the canonical bijection.
    """
    commands = ("embed", "verify-embed", "fs-check", "hamming-check")

    def run(self, command: str):
        config = self.config
        builder = EmbeddingBuilder(self.metric)
        if command == "embed":
            a = self.elements(config.sequence, "sequence") if config.sequence else list(self.system.generators)
            try:
                cert = builder.greedy_select(a, config.target_len, config.scan_limit)
            except ScanExhaustedError as e:
                logger.warning("embed: %s", e)
                return {"scan_exhausted": {"message": str(e), "last_failure": e.last_failure,
                                           "selected": [b.to_json()["entries"] for b in e.selected]},
                        "certificate": None}, VIOLATED
            verdict = None
            if config.verify_support is not None:
                verdict, cert = builder.verify_isometric_embedding(cert, config.verify_support, config.max_r)
            return {"scan_exhausted": None, "certificate": cert.to_json()}, self._verdict(cert, verdict)
        if command == "verify-embed":
            b = self.elements(config.sequence, "sequence")
            cert = EmbeddingCertificate(tuple(b), tuple(range(len(b))))
            support = len(b) if config.verify_support is None else config.verify_support
            verdict, cert = builder.verify_isometric_embedding(cert, support, config.max_r)
            return {"verdict": verdict.to_json(), "certificate": cert.to_json()}, self._verdict(cert, verdict)
        if command == "fs-check":
            b = self.elements(config.sequence, "sequence")
            fs = fs_strict_check(b, self.spec)
            limit = int(ConfigReader().get("Hamming", "max_signed_length", 14))
            signed = signed_sum_condition_check(b, self.metric) if len(b) <= limit else None
            ok = fs.ok and (signed is None or signed.ok)
            return {"fs_strict": fs.to_json(), "signed_sum": None if signed is None else signed.to_json()}, \
                OK if ok else VIOLATED
        if command == "hamming-check":
            report = sample_isometry(self.window(), self.metric, config.pairs, config.seed, config.exhaustive_support)
            return report.to_json(), OK if report.ok else VIOLATED
        return self.unknown(command)

    @staticmethod
    def _verdict(cert, verdict):
        if verdict is not None and verdict.status == CERT_INCONCLUSIVE:
            return INCONCLUSIVE
        return OK if cert.verified else VIOLATED
