import itertools

import pytest
from hypothesis import given, settings, strategies as st

from CoarseLab.Group.GroupSpec import GroupSpec
from CoarseLab.Group.Window import SupportShape, Window
from CoarseLab.Hamming.EmbeddingBuilder import EmbeddingBuilder
from CoarseLab.Hamming.EmbeddingCertificate import INCONCLUSIVE, VIOLATED, EmbeddingCertificate
from CoarseLab.Hamming.HammingPoint import (HammingPoint, asymorphism_moduli, from_hamming, hamming_distance,
                                            sample_isometry, to_hamming)
from CoarseLab.Hamming.SubsetSumChecks import fs_strict_check, signed_sum_condition_check
from CoarseLab.Metric.CayleyGraph import CayleyGraph
from CoarseLab.Metric.GeneratorSystem import GeneratorSystem
from CoarseLab.Metric.WordMetric import WordMetric
from CoarseLab.Utils.Errors import (IndexOutOfRangeError, ScanExhaustedError, TooLongSequenceError,
                                    WrongGroupError)
from helpers import ints, value_of

Z = GroupSpec.integers()
Z2 = GroupSpec.bounded_sum(modulus=2, coordinate_bound=16)


def powers_builder(count):
    return EmbeddingBuilder(WordMetric(GeneratorSystem.powers(Z, 3, count)))


class TestHammingSpace:
    """Hamming distance and the canonical bijection with ⊕Z_2."""

    def test_distance(self):
        assert hamming_distance(HammingPoint.of([0, 2]), HammingPoint.of([2, 5])) == 2
        assert hamming_distance(HammingPoint(), HammingPoint()) == 0

    def test_points_are_strictly_increasing(self):
        with pytest.raises(ValueError):
            HammingPoint((3, 1))

    def test_from_mask(self):
        assert HammingPoint.from_mask(0b1011) == HammingPoint((0, 1, 3))

    @given(st.sets(st.integers(0, 15)))
    def test_bijection_round_trip(self, indices):
        F = HammingPoint.of(indices)
        x = from_hamming(F, Z2)
        assert x.support == F.indices
        assert to_hamming(x, Z2) == F

    @given(st.sets(st.integers(0, 15)), st.sets(st.integers(0, 15)), st.sets(st.integers(0, 15)))
    def test_translation_invariance(self, f, h, k):
        F, H, K = HammingPoint.of(f), HammingPoint.of(h), HammingPoint.of(k)
        assert hamming_distance(F, H) == hamming_distance(F.symmetric_difference(K), H.symmetric_difference(K))
        assert hamming_distance(F, H) == len(f ^ h)

    def test_wrong_group(self):
        with pytest.raises(WrongGroupError):
            to_hamming(Z.from_int(3), Z)
        with pytest.raises(WrongGroupError):
            from_hamming(HammingPoint.of([1]), GroupSpec.bounded_sum(moduli=[2, 3]))

    def test_canonical_bijection_moduli(self, cube, cube_metric, z2):
        points = cube.elements
        moduli = asymorphism_moduli(points, lambda x: to_hamming(x, z2),
                                    lambda x, y: cube_metric.distance(x, y, 6).value, hamming_distance, 3)
        assert moduli.forward == [0, 1, 2, 3]
        assert moduli.backward == [0, 1, 2, 3]

    def test_sample_isometry_on_the_cube(self, cube, cube_metric):
        report = sample_isometry(cube, cube_metric, pairs=200, seed=3, exhaustive_support=3)
        assert report.ok
        assert report.pairs_checked == 200 + 64
        assert report.to_json()["moduli"] == {"forward": [0, 1, 2, 3], "backward": [0, 1, 2, 3]}

    def test_sample_isometry_finds_a_shortcut(self, cube, z2):
        metric = WordMetric(GeneratorSystem(z2, (z2.basis(0), z2.basis(1), z2.basis(2),
                                                 z2.element([[0, 1], [1, 1]]))))
        report = sample_isometry(cube, metric, pairs=0, seed=0, exhaustive_support=3)
        assert not report.ok
        assert report.first_mismatch["expected"] == 2 and report.first_mismatch["got"] == 1

    @pytest.mark.slow
    def test_sampled_isometry_on_ten_coordinates(self, z2):
        window = Window.enumerate(z2, SupportShape(tuple(range(10))))
        metric = WordMetric(GeneratorSystem.basis(z2, 10))
        report = sample_isometry(window, metric, pairs=50000, seed=0, exhaustive_support=6)
        assert report.ok
        assert report.pairs_checked == 50000 + 64 * 64


class TestSubsetSums:
    """FS-strict enumeration and the signed-sum condition."""

    def test_fs_strict_collision(self):
        result = fs_strict_check(ints(Z, [1, 2, 3]), Z)
        assert not result.ok
        assert result.witness == (HammingPoint.of([0, 1]), HammingPoint.of([2]))

    def test_fs_strict_powers(self):
        assert fs_strict_check(ints(Z, [1, 3, 9, 27]), Z).ok
        assert fs_strict_check([], Z).ok

    def test_fs_strict_length_limit(self):
        with pytest.raises(TooLongSequenceError):
            fs_strict_check(ints(Z, range(1, 26)), Z)

    @settings(max_examples=80, deadline=None)
    @given(st.lists(st.integers(-20, 20).filter(bool), max_size=6))
    def test_fs_strict_means_distinct_images(self, values):
        b = tuple(ints(Z, values))
        builder = powers_builder(2)
        cert = EmbeddingCertificate(b, tuple(range(len(b))))
        images = [builder.fs_map(HammingPoint.from_mask(mask), cert) for mask in range(1 << len(b))]
        result = fs_strict_check(b, Z)
        assert result.ok == (len(set(images)) == len(images))
        if not result.ok:
            F, H = result.witness
            assert F != H and builder.fs_map(F, cert) == builder.fs_map(H, cert)

    def test_powers_of_three_against_breadth_first_norms(self):
        system = GeneratorSystem.powers(Z, 3, 9)
        norms = {value_of(x): d for x, d in CayleyGraph(system).distances_from(Z.identity, 3).items()}
        b = [1, 3, 9, 27]
        sums = [sum(v for i, v in enumerate(b) if mask >> i & 1) for mask in range(16)]
        assert len(set(sums)) == 16
        for size in range(1, 5):
            for subset in itertools.combinations(b, size):
                for signs in itertools.product((-1, 1), repeat=size):
                    total = sum(t * v for t, v in zip(signs, subset))
                    assert norms.get(total, size) >= size
        cert = EmbeddingBuilder(WordMetric(system)).greedy_select(list(system.generators), 4)
        assert [value_of(x) for x in cert.b_seq] == b and cert.source_indices == (0, 1, 2, 3)

    def test_signed_sum_powers_of_three(self):
        metric = WordMetric(GeneratorSystem.powers(Z, 3, 6))
        assert signed_sum_condition_check(ints(Z, [1, 3, 9]), metric).ok

    def test_signed_sum_powers_of_two(self):
        metric = WordMetric(GeneratorSystem.powers(Z, 2, 6))
        result = signed_sum_condition_check(ints(Z, [1, 2]), metric)
        assert not result.ok
        assert result.subset == (0, 1) and result.signs == (-1, 1) and result.k == 1

    def test_signed_sum_length_limit(self):
        with pytest.raises(TooLongSequenceError):
            signed_sum_condition_check(ints(Z, range(1, 16)), WordMetric(GeneratorSystem.powers(Z, 2, 4)))


class TestGreedySelect:
    """The first-accept constructor of FS-strict subsequences."""

    def test_boolean_basis(self, z2):
        metric = WordMetric(GeneratorSystem.basis(z2, 8))
        cert = EmbeddingBuilder(metric).greedy_select(list(metric.system.generators), 6)
        assert cert.b_seq == tuple(z2.basis(i) for i in range(6))
        assert cert.source_indices == tuple(range(6))
        assert cert.verified
        assert cert.checks["fs_strict"]["ok"] and cert.checks["signed_sum"]["ok"]

    def test_powers_of_three(self):
        builder = powers_builder(9)
        cert = builder.greedy_select(list(builder.metric.system.generators), 4)
        assert [value_of(b) for b in cert.b_seq] == [1, 3, 9, 27]
        assert cert.verified

    def test_skips_rejected_terms(self):
        builder = powers_builder(6)
        cert = builder.greedy_select(ints(Z, [0, 1, 1, 2, 3, 9]), 3)
        assert [value_of(b) for b in cert.b_seq] == [1, 3, 9]
        assert cert.source_indices == (1, 4, 5)

    def test_constant_sequence_is_exhausted(self):
        builder = powers_builder(4)
        with pytest.raises(ScanExhaustedError) as info:
            builder.greedy_select(ints(Z, [1, 1, 1, 1]), 2)
        assert [value_of(b) for b in info.value.selected] == [1]
        assert "condition (1)" in info.value.last_failure

    def test_zero_sequence_is_exhausted(self):
        with pytest.raises(ScanExhaustedError):
            powers_builder(4).greedy_select(ints(Z, [0, 0, 0]), 1)

    def test_scan_limit(self):
        builder = powers_builder(9)
        with pytest.raises(ScanExhaustedError):
            builder.greedy_select(list(builder.metric.system.generators), 4, scan_limit=3)

    def test_target_length_limit(self):
        builder = powers_builder(9)
        with pytest.raises(TooLongSequenceError):
            builder.greedy_select(list(builder.metric.system.generators), 15)


class TestIsometricEmbedding:
    """fs_map and the isometry verification over a support bound."""

    def test_fs_map(self):
        builder = powers_builder(9)
        cert = EmbeddingCertificate(tuple(ints(Z, [1, 3, 9, 27])), (0, 1, 2, 3))
        assert builder.fs_map(HammingPoint(), cert) == Z.identity
        assert value_of(builder.fs_map(HammingPoint.of([0, 2, 3]), cert)) == 37
        with pytest.raises(IndexOutOfRangeError):
            builder.fs_map(HammingPoint.of([4]), cert)

    def test_verified_with_identity_moduli(self):
        builder = powers_builder(9)
        cert = builder.greedy_select(list(builder.metric.system.generators), 4)
        verdict, cert = builder.verify_isometric_embedding(cert, 4)
        assert verdict.verified
        assert verdict.moduli == [0, 1, 2, 3, 4]
        assert verdict.pairs_checked == 256
        assert cert.verified and cert.support_bound == 4 and cert.moduli == [0, 1, 2, 3, 4]
        assert cert.checks["isometry"]["status"] == "verified"

    def test_empty_support_is_vacuous(self):
        builder = powers_builder(4)
        cert = EmbeddingCertificate(tuple(ints(Z, [1, 3])), (0, 1), verified=True)
        verdict, updated = builder.verify_isometric_embedding(cert, 0)
        assert verdict.verified and verdict.moduli == [0] and verdict.pairs_checked == 1
        assert updated.verified

    def test_violation_carries_a_counterexample(self):
        builder = EmbeddingBuilder(WordMetric(GeneratorSystem.from_values(Z, [1, 2, 3])))
        cert = EmbeddingCertificate(tuple(ints(Z, [1, 2, 3])), (0, 1, 2), verified=True)
        verdict, updated = builder.verify_isometric_embedding(cert, 3)
        assert verdict.status == VIOLATED
        F, H, expected, got = verdict.counterexample
        assert got != expected
        assert not updated.verified and updated.counterexample == verdict.counterexample

    def test_small_search_bound_is_inconclusive(self):
        builder = powers_builder(9)
        cert = EmbeddingCertificate(tuple(ints(Z, [1, 3, 9, 27])), (0, 1, 2, 3), verified=True)
        verdict, updated = builder.verify_isometric_embedding(cert, 4, max_r=1)
        assert verdict.status == INCONCLUSIVE
        assert verdict.counterexample[3] is None
        assert not updated.verified

    def test_support_bound_out_of_range(self):
        builder = powers_builder(4)
        cert = EmbeddingCertificate(tuple(ints(Z, [1, 3])), (0, 1))
        with pytest.raises(IndexOutOfRangeError):
            builder.verify_isometric_embedding(cert, 3)

    @settings(max_examples=40, deadline=None)
    @given(st.one_of(
        st.tuples(st.just("powers"), st.integers(3, 5), st.integers(1, 4)),
        st.tuples(st.just("list"), st.lists(st.integers(1, 40), min_size=1, max_size=6), st.integers(1, 3))))
    def test_signed_sum_condition_gives_isometry_at_every_bound(self, source):
        kind, values, target = source
        if kind == "powers":
            system = GeneratorSystem.powers(Z, values, 6)
        else:
            system = GeneratorSystem.from_values(Z, values)
        builder = EmbeddingBuilder(WordMetric(system))
        try:
            cert = builder.greedy_select(list(system.generators), target)
        except ScanExhaustedError:
            return
        assert cert.checks["signed_sum"]["ok"]
        for bound in range(len(cert.b_seq) + 1):
            verdict, _ = builder.verify_isometric_embedding(cert, bound)
            assert verdict.verified
            assert verdict.moduli == list(range(bound + 1))

    def test_boolean_certificate_at_every_bound(self, z2):
        builder = EmbeddingBuilder(WordMetric(GeneratorSystem.basis(z2, 6)))
        cert = builder.greedy_select(list(builder.metric.system.generators), 6)
        assert signed_sum_condition_check(cert.b_seq, builder.metric).ok
        for bound in range(7):
            assert builder.verify_isometric_embedding(cert, bound)[0].verified

    def test_certificate_invariants(self):
        with pytest.raises(ValueError):
            EmbeddingCertificate(tuple(ints(Z, [1, 3])), (1, 0))
        with pytest.raises(ValueError):
            EmbeddingCertificate(tuple(ints(Z, [1])), (0,), verified=True,
                                 counterexample=(HammingPoint(), HammingPoint.of([0]), 1, 0))
