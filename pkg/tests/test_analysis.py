"""
Tests for the point homogeneity degree search
"""

import pytest
from fractions import Fraction
from unittest.mock import patch

from groups.autgroup import automorphism_group
from homogeneity.analysis import (
    Degree, homogeneity_degree, point_rank_probe,
    FAILED_AT_M, REACHED_AFFINE_RANK, REACHED_K, DISTINCT_DISTANCE_SHORTCUT, MAX_M_CAP,
)
from homogeneity.levels import (
    DISTINCT_DISTANCE, THREE_DISTANCE, TRANSITIVITY, EXTENSION_CLASSES,
    NeedsDimension, Verdict, check_witness,
)
from metric import catalog
from metric.distmat import label_exact
from metric.geometry import affine_rank, squared_distances


def degree_of(ps, **kwargs):
    ldm = label_exact(squared_distances(ps), name=ps.name)
    group = automorphism_group(ldm)
    kwargs.setdefault("n", affine_rank(ps))
    return ldm, group, homogeneity_degree(ldm, group, points=ps, **kwargs)


class TestDegree:
    def test_text(self):
        assert str(Degree.finite(2)) == "2"
        assert str(Degree.infinite()) == "inf"
        assert str(Degree.at_least(3)) == ">=3"

    @pytest.mark.parametrize("degree,expected,result", [
        (Degree.finite(2), "2", True),
        (Degree.finite(2), "3", False),
        (Degree.infinite(), "inf", True),
        (Degree.finite(3), "inf", False),
        (Degree.infinite(), ">=3", True),
        (Degree.at_least(3), ">=3", True),
        (Degree.at_least(2), ">=3", False),
        (Degree.at_least(3), "3", False),
    ])
    def test_satisfies(self, degree, expected, result):
        assert degree.satisfies(expected) is result

    def test_is_infinite(self):
        assert Degree.infinite().is_infinite
        assert not Degree.at_least(5).is_infinite


class TestHomogeneityDegree:
    @pytest.mark.parametrize("builder,expected", [
        (lambda: catalog.tetrahedron(), "inf"),
        (lambda: catalog.cube3(), "inf"),
        (lambda: catalog.octahedron(), "inf"),
        (lambda: catalog.icosahedron(), "inf"),
        (lambda: catalog.dodecahedron(), "2"),
        (lambda: catalog.cuboctahedron(), "inf"),
        (lambda: catalog.icosidodecahedron(), "1"),
        (lambda: catalog.truncated_simplex(4), "2"),
        (lambda: catalog.doubled_simplex(3), "inf"),
        (lambda: catalog.orthoplex(4), "inf"),
        (lambda: catalog.cube(4), "3"),
        (lambda: catalog.rhombus(Fraction(1, 2)), "0"),
        (lambda: catalog.rhombus(Fraction(1)), "inf"),
    ])
    def test_known_degrees(self, builder, expected):
        _, _, report = degree_of(builder())
        assert str(report.degree) == expected

    def test_regular_polyhedron_reaches_rank(self):
        _, _, report = degree_of(catalog.icosahedron())
        assert report.termination == REACHED_AFFINE_RANK
        assert [v.m for v in report.verdicts] == [1, 2, 3]
        assert report.verdicts[0].method == TRANSITIVITY
        assert all(v.method == THREE_DISTANCE for v in report.verdicts[1:])

    def test_finite_degree_has_witness(self):
        ldm, group, report = degree_of(catalog.dodecahedron())
        assert report.termination == FAILED_AT_M
        assert report.verdict(3).holds is False
        first, second = report.witness
        assert len(first) == 3
        assert check_witness(ldm, group, first, second).is_witness

    def test_non_transitive_space(self):
        _, _, report = degree_of(catalog.rhombus(Fraction(1, 2)))
        assert report.degree == Degree.finite(0)
        verdict = report.verdicts[0]
        assert verdict == Verdict(1, False, ((0,), (2,)), TRANSITIVITY)

    def test_distinct_distance_shortcut(self):
        _, _, report = degree_of(catalog.rectangle())
        assert report.degree.is_infinite
        assert report.termination == DISTINCT_DISTANCE_SHORTCUT
        assert report.verdicts[-1].method == DISTINCT_DISTANCE
        assert "distinct_distance" in report.timings

    def test_shortcut_survives_cross_check(self):
        _, _, report = degree_of(catalog.simplex_3edge(), cross_check=True)
        assert report.termination == DISTINCT_DISTANCE_SHORTCUT

    def test_without_accelerators_uses_levels(self):
        _, _, report = degree_of(catalog.rectangle(), accelerators=False)
        assert report.degree.is_infinite
        assert report.termination == REACHED_AFFINE_RANK
        assert all(v.method in (TRANSITIVITY, EXTENSION_CLASSES) for v in report.verdicts)

    def test_max_m_gives_lower_bound(self):
        _, _, report = degree_of(catalog.cube(4), max_m=2)
        assert report.degree == Degree.at_least(2)
        assert report.termination == MAX_M_CAP
        assert report.degree.satisfies(">=2")

    def test_reached_k(self):
        _, _, report = degree_of(catalog.simplex(3), n=6)
        assert report.degree.is_infinite
        assert report.termination == REACHED_K

    def test_abstract_matrix_uses_dimension_hint(self):
        ldm = catalog.octsev(Fraction(1, 3))
        report = homogeneity_degree(ldm, automorphism_group(ldm))
        assert report.n == 3
        assert report.degree.is_infinite

    def test_polygon(self):
        ldm = catalog.n_gon(7)
        report = homogeneity_degree(ldm, automorphism_group(ldm))
        assert report.degree.is_infinite
        assert report.group_order == 14

    def test_unit_prism_over_pentagon(self):
        ldm = catalog.prism(5, 1)
        report = homogeneity_degree(ldm, automorphism_group(ldm))
        assert str(report.degree) == "1"

    def test_needs_dimension(self):
        ldm = label_exact(squared_distances(catalog.cube3()))
        with pytest.raises(NeedsDimension):
            homogeneity_degree(ldm, automorphism_group(ldm))

    def test_cross_check_certifies_infinite_degree(self):
        _, _, report = degree_of(catalog.cube3(), cross_check=True)
        assert report.degree.is_infinite
        assert report.certificate == Verdict(4, True)
        assert "certificate" in report.timings
        assert "levels" in report.timings

    def test_antipodal_folding_gives_same_degree(self):
        _, _, plain = degree_of(catalog.cube(4))
        _, _, folded = degree_of(catalog.cube(4), antipodal_folding=True, cross_check=True)
        assert folded.degree == plain.degree
        assert folded.folded > 0

    def test_folding_without_antipodes_warns(self):
        with patch('homogeneity.analysis.logger') as mock_logger:
            _, _, report = degree_of(catalog.tetrahedron(), antipodal_folding=True)
        assert report.degree.is_infinite
        mock_logger.warning.assert_called_once()

    def test_threads(self):
        _, _, report = degree_of(catalog.truncated_simplex(5), threads=3)
        assert str(report.degree) == "2"

    def test_report_to_dict(self):
        _, _, report = degree_of(catalog.cube3(), cross_check=True)
        data = report.to_dict()
        assert data["degree"] == "inf"
        assert data["termination"] == REACHED_AFFINE_RANK
        assert data["n"] == 3
        assert data["group_order"] == "48"
        assert data["certificate"]["m"] == 4
        assert data["verdicts"][0] == {"m": 1, "holds": True, "method": TRANSITIVITY}


class TestRankProbe:
    def test_probe(self):
        ps = catalog.cube3()
        probe = point_rank_probe(ps, 3)
        assert not probe((0, 7))
        assert probe((0, 1, 2))
        # 7 is the antipode of 0
        assert not probe((0, 1, 7))


class TestLargerInstances:
    @pytest.mark.slow
    def test_demihypercube_five(self):
        _, _, report = degree_of(catalog.demihypercube(5))
        assert str(report.degree) == "3"

    @pytest.mark.slow
    def test_five_cube(self):
        _, _, report = degree_of(catalog.cube(5))
        assert str(report.degree) == "3"
        assert report.group_order == 3840
