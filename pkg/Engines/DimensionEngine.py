import logging

from CoarseLab.Dimension.CandidateRules import SINGLETONS, build_candidates
from CoarseLab.Dimension.CoverSearch import exact_min_classes, greedy_cover
from CoarseLab.Dimension.CoverWitness import CoverWitness, verify_witness
from CoarseLab.Dimension.DimProfile import LinearRule, dim_profile
from CoarseLab.Utils.Errors import ConfigError
from Engines.BaseEngine import OK, VIOLATED, BaseEngine

logger = logging.getLogger(__name__)


class DimensionEngine(BaseEngine):
    """Covering-witness commands: verification, greedy and exact class counts, scale profiles."""
    commands = ("cover-verify", "cover-greedy", "min-colors", "dim-profile")

    def run(self, command: str):
        config = self.config
        window = self.window()
        if command == "cover-verify":
            if config.classes is None or config.D is None:
                raise ConfigError("cover-verify needs classes and D")
            classes = tuple(tuple(frozenset(self.elements(S, "set")) for S in color) for color in config.classes)
            verdict = verify_witness(CoverWitness(window, self.metric, classes, config.r, config.D))
            return verdict.to_json(), OK if verdict.valid else VIOLATED
        rule = LinearRule(config.d_scale, config.d_offset)
        if command == "dim-profile":
            profile = dim_profile(window, self.metric, config.candidates, config.r_list, rule, config.budget)
            if config.csv_output:
                profile.to_csv(config.csv_output)
            return profile.to_json(), OK
        size = config.candidate_size if config.candidate_size is not None else rule(config.r)
        candidates = build_candidates(config.candidates, window, self.metric, size, config.candidate_step)
        if command == "cover-greedy":
            witness = greedy_cover(window, self.metric, candidates, config.r)
            verdict = verify_witness(witness)
            return {"candidate_rule": config.candidates, "candidate_size": size,
                    "classes": len(witness.classes), "witness": witness.to_json(),
                    "verification": verdict.to_json()}, OK if verdict.valid else VIOLATED
        if command == "min-colors":
            result = exact_min_classes(window, self.metric, candidates, config.r, config.budget)
            payload = result.to_json()
            payload.update({"candidate_rule": config.candidates,
                            "candidate_size": None if config.candidates == SINGLETONS else size})
            return payload, OK
        return self.unknown(command)
