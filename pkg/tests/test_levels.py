"""
Tests for the level-by-level m-point homogeneity check
"""

import pytest
from itertools import permutations
from fractions import Fraction

from groups.autgroup import automorphism_group
from homogeneity.levels import (
    LevelChecker, Verdict, WitnessCheck, check_witness, is_m_point_homogeneous,
    EXTENSION_CLASSES,
)
from homogeneity.oracle import brute_m_homog
from metric import catalog
from metric.distmat import antipodal_matching, label_exact
from metric.geometry import squared_distances
from utils.errors import ParamError


def analyzed(ps):
    ldm = label_exact(squared_distances(ps), name=ps.name)
    return ldm, automorphism_group(ldm)


def smallest_witness_by_enumeration(ldm, group, m):
    by_profile = {}
    for t in permutations(range(ldm.k), m):
        by_profile.setdefault(ldm.profile(t), []).append(t)
    for t in permutations(range(ldm.k), m):
        orbit = group.orbit_of_tuple(t)
        outside = [other for other in by_profile[ldm.profile(t)] if other not in orbit]
        if outside:
            return t, outside[0]
    return None


class TestExtensionClasses:
    def setup_method(self, method):
        self.ldm, self.group = analyzed(catalog.cube3())
        self.checker = LevelChecker(self.ldm, self.group)

    def test_classes_of_empty_tuple(self):
        classes = self.checker.extension_classes(())
        assert classes == [((), tuple(range(8)))]

    def test_classes_of_a_vertex_are_spheres(self):
        classes = self.checker.extension_classes((0,))
        assert [len(members) for _, members in classes] == [3, 3, 1]
        assert [vector for vector, _ in classes] == [(1,), (2,), (3,)]

    def test_universe_restricts_points(self):
        checker = LevelChecker(self.ldm, self.group, universe=(1, 2, 4))
        classes = checker.extension_classes((1,))
        assert classes == [((2,), (2, 4))]


class TestLevelChecker:
    def test_advance_counts_levels(self):
        ldm, group = analyzed(catalog.cube3())
        checker = LevelChecker(ldm, group)
        assert checker.advance() == Verdict(1, True)
        assert checker.advance() == Verdict(2, True)
        assert checker.length == 2

    def test_failure_is_sticky(self):
        ldm, group = analyzed(catalog.dodecahedron())
        checker = LevelChecker(ldm, group)
        verdict = checker.run(3)
        assert not verdict.holds
        assert verdict.witness is not None
        again = checker.run(4)
        assert not again.holds
        assert again.witness == verdict.witness
        assert checker.failure.m == 3

    def test_run_is_monotone(self):
        ldm, group = analyzed(catalog.truncated_simplex(4))
        checker = LevelChecker(ldm, group)
        assert checker.run(2).holds
        assert not checker.run(3).holds
        assert checker.run(2).holds

    def test_threads_do_not_change_verdicts(self):
        ldm, group = analyzed(catalog.truncated_simplex(5))
        serial = LevelChecker(ldm, group).run(3)
        threaded = LevelChecker(ldm, group, threads=4).run(3)
        assert serial.holds == threaded.holds
        assert serial.witness == threaded.witness

    def test_antipodal_folding_agrees(self):
        ldm, group = analyzed(catalog.cube(4))
        plain = LevelChecker(ldm, group)
        folded = LevelChecker(ldm, group, antipode=antipodal_matching(ldm))
        for m in range(1, 5):
            assert plain.run(m).holds == folded.run(m).holds
        assert folded.folded > 0

    def test_rank_probe_raises_on_contradiction(self):
        from homogeneity.levels import ConsistencyError
        ldm, group = analyzed(catalog.cube3())
        checker = LevelChecker(ldm, group, rank_probe=lambda t: True)
        with pytest.raises(ConsistencyError):
            checker.run(2)


class TestIsMPointHomogeneous:
    @pytest.mark.parametrize("builder,m,holds", [
        (lambda: catalog.cube3(), 3, True),
        (lambda: catalog.icosahedron(), 3, True),
        (lambda: catalog.dodecahedron(), 2, True),
        (lambda: catalog.dodecahedron(), 3, False),
        (lambda: catalog.icosidodecahedron(), 2, False),
        (lambda: catalog.cuboctahedron(), 3, True),
        (lambda: catalog.truncated_simplex(4), 3, False),
        (lambda: catalog.rhombus(Fraction(1, 2)), 1, False),
        (lambda: catalog.cube(4), 3, True),
        (lambda: catalog.cube(4), 4, False),
    ])
    def test_known_verdicts(self, builder, m, holds):
        ldm, group = analyzed(builder())
        verdict = is_m_point_homogeneous(ldm, group, m)
        assert verdict.holds == holds
        assert verdict.method == EXTENSION_CLASSES

    def test_abstract_octsev(self):
        ldm = catalog.octsev(Fraction(1, 3))
        group = automorphism_group(ldm)
        assert is_m_point_homogeneous(ldm, group, 3).holds
        assert is_m_point_homogeneous(ldm, group, 6).holds

    def test_m_beyond_k_is_vacuous(self):
        ldm, group = analyzed(catalog.simplex(2))
        assert is_m_point_homogeneous(ldm, group, 5).holds

    def test_m_must_be_positive(self):
        ldm, group = analyzed(catalog.simplex(2))
        with pytest.raises(ParamError):
            is_m_point_homogeneous(ldm, group, 0)

    @pytest.mark.parametrize("builder", [
        lambda: catalog.octahedron(),
        lambda: catalog.truncated_simplex(4),
        lambda: catalog.cuboctahedron(),
        lambda: catalog.rhombus(Fraction(1, 2)),
    ])
    def test_agrees_with_brute_force(self, builder):
        ldm, group = analyzed(builder())
        for m in range(1, 4):
            assert is_m_point_homogeneous(ldm, group, m).holds == brute_m_homog(ldm, m)


class TestWitnesses:
    def test_failure_witness_is_valid(self):
        ldm, group = analyzed(catalog.dodecahedron())
        verdict = is_m_point_homogeneous(ldm, group, 3)
        first, second = verdict.witness
        check = check_witness(ldm, group, first, second)
        assert check.profiles_equal
        assert not check.equivalent
        assert check.is_witness

    def test_truncated_simplex_pair(self):
        # {1,2},{1,3},{2,3} against {1,2},{1,3},{1,4}: points with two ones in R^5
        ps = catalog.truncated_simplex(4)
        ldm, group = analyzed(ps)
        triangle = tuple(ps.index_of(v) for v in [(1, 1, 0, 0, 0), (1, 0, 1, 0, 0), (0, 1, 1, 0, 0)])
        star = tuple(ps.index_of(v) for v in [(1, 1, 0, 0, 0), (1, 0, 1, 0, 0), (1, 0, 0, 1, 0)])
        assert check_witness(ldm, group, triangle, star).is_witness

    def test_hadamard_rows_in_four_cube(self):
        ps = catalog.cube(4)
        ldm, group = analyzed(ps)
        rows = [(1, 1, 1, 1), (1, -1, 1, -1), (1, 1, -1, -1), (1, -1, -1, 1)]
        other = [(1, 1, 1, 1), (1, -1, 1, -1), (1, 1, -1, -1), (-1, 1, 1, -1)]
        first = tuple(ps.index_of(v) for v in rows)
        second = tuple(ps.index_of(v) for v in other)
        check = check_witness(ldm, group, first, second)
        assert check.profiles_equal
        assert not check.equivalent

    def test_equivalent_pair_is_not_a_witness(self):
        ldm, group = analyzed(catalog.cube3())
        check = check_witness(ldm, group, (0, 1), (7, 6))
        assert check == WitnessCheck(profiles_equal=True, equivalent=True)
        assert not check.is_witness

    def test_different_profiles(self):
        ldm, group = analyzed(catalog.cube3())
        check = check_witness(ldm, group, (0, 1), (0, 7))
        assert not check.profiles_equal
        assert not check.is_witness

    def test_length_mismatch(self):
        ldm, group = analyzed(catalog.cube3())
        with pytest.raises(ParamError):
            check_witness(ldm, group, (0, 1), (0,))

    def test_point_out_of_range(self):
        ldm, group = analyzed(catalog.cube3())
        with pytest.raises(ParamError):
            check_witness(ldm, group, (0, 9), (0, 1))

    @pytest.mark.parametrize("builder,m", [
        (lambda: catalog.dodecahedron(), 3),
        (lambda: catalog.truncated_simplex(4), 3),
        (lambda: catalog.rhombus(Fraction(1, 2)), 1),
    ])
    def test_witness_is_lexicographically_smallest(self, builder, m):
        ldm, group = analyzed(builder())
        verdict = is_m_point_homogeneous(ldm, group, m)
        assert verdict.witness == smallest_witness_by_enumeration(ldm, group, m)

    def test_folding_keeps_the_smallest_witness(self):
        ldm, group = analyzed(catalog.cube(4))
        plain = is_m_point_homogeneous(ldm, group, 4)
        folded = is_m_point_homogeneous(ldm, group, 4, antipode=antipodal_matching(ldm))
        assert not plain.holds
        assert folded.witness == plain.witness

    def test_verdict_to_dict(self):
        verdict = Verdict(3, False, ((0, 1, 2), (0, 1, 3)))
        assert verdict.to_dict() == {
            "m": 3, "holds": False, "method": EXTENSION_CLASSES, "witness": [[0, 1, 2], [0, 1, 3]],
        }
        assert "witness" not in Verdict(2, True).to_dict()
