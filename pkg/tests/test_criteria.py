"""
Tests for the shortcut and refuting criteria
"""

import pytest
from fractions import Fraction
from unittest.mock import patch

from groups.autgroup import automorphism_group
from homogeneity.criteria import (
    two_point_sphere_criterion, three_distance_accelerator, distinct_distance_shortcut,
    has_label_swapping_symmetry, reflection_falsifier_3d,
)
from homogeneity.levels import NotHomogeneous, check_witness
from metric import catalog
from metric.distmat import antipodal_matching, label_exact
from metric.geometry import squared_distances
from utils.errors import ParamError


def analyzed(ps):
    ldm = label_exact(squared_distances(ps), name=ps.name)
    return ldm, automorphism_group(ldm)


class TestSphereCriterion:
    @pytest.mark.parametrize("builder,expected", [
        (lambda: catalog.cube3(), True),
        (lambda: catalog.icosahedron(), True),
        (lambda: catalog.dodecahedron(), True),
        (lambda: catalog.truncated_simplex(4), True),
        (lambda: catalog.icosidodecahedron(), False),
    ])
    def test_matches_two_point_homogeneity(self, builder, expected):
        ldm, group = analyzed(builder())
        assert two_point_sphere_criterion(ldm, group) is expected

    def test_all_vertices_agree(self):
        ldm, group = analyzed(catalog.cuboctahedron())
        assert two_point_sphere_criterion(ldm, group, all_vertices=True)

    @pytest.mark.slow
    def test_goss6(self):
        ldm, group = analyzed(catalog.goss6())
        assert two_point_sphere_criterion(ldm, group)

    def test_requires_transitivity(self):
        ldm, group = analyzed(catalog.rhombus(Fraction(1, 2)))
        with pytest.raises(NotHomogeneous):
            two_point_sphere_criterion(ldm, group)


class TestThreeDistanceAccelerator:
    def test_applies_to_icosahedron(self):
        ps = catalog.icosahedron()
        ldm, group = analyzed(ps)
        assert three_distance_accelerator(ldm, group, 3, points=ps) is True

    def test_applies_to_cube_without_coordinates(self):
        ldm, group = analyzed(catalog.cube3())
        assert has_label_swapping_symmetry(ldm, antipodal_matching(ldm))
        assert three_distance_accelerator(ldm, group, 3) is True

    def test_four_cube_has_too_many_distances(self):
        ldm, group = analyzed(catalog.cube(4))
        assert three_distance_accelerator(ldm, group, 3) is None

    def test_tetrahedron_has_no_antipodes(self):
        ldm, group = analyzed(catalog.tetrahedron())
        assert three_distance_accelerator(ldm, group, 2) is None

    def test_icosahedron_six_points(self):
        ps = catalog.icosahedron()
        ldm, group = analyzed(ps)
        assert three_distance_accelerator(ldm, group, 6, points=ps) is True

    def test_cube_four_points(self):
        ldm, group = analyzed(catalog.cube3())
        assert three_distance_accelerator(ldm, group, 4) is True

    def test_m_one_is_trivial(self):
        ldm, group = analyzed(catalog.cube3())
        assert three_distance_accelerator(ldm, group, 1) is True

    def test_not_applicable_is_logged(self):
        ldm, group = analyzed(catalog.dodecahedron())
        with patch('homogeneity.criteria.logger') as mock_logger:
            assert three_distance_accelerator(ldm, group, 3) is None
            mock_logger.debug.assert_called_once()
            assert "5 distance classes" in mock_logger.debug.call_args[0][0]


class TestDistinctDistanceShortcut:
    def test_rectangle(self):
        ldm, group = analyzed(catalog.rectangle())
        assert distinct_distance_shortcut(ldm, group)

    def test_three_edge_simplex(self):
        ldm, group = analyzed(catalog.simplex_3edge())
        assert distinct_distance_shortcut(ldm, group)

    def test_one_point_space_fires(self):
        ldm = label_exact([[0]])
        assert distinct_distance_shortcut(ldm, automorphism_group(ldm))

    def test_square_repeats_a_distance(self):
        ldm, group = analyzed(catalog.rectangle(1, 1))
        assert not distinct_distance_shortcut(ldm, group)

    def test_needs_transitivity(self):
        # no two distances repeat at point 0, yet the group is trivial
        ldm = label_exact([[0, 1, 4], [1, 0, 9], [4, 9, 0]])
        assert not distinct_distance_shortcut(ldm, automorphism_group(ldm))


class TestReflectionFalsifier:
    def test_dodecahedron_is_refuted(self):
        ps = catalog.dodecahedron()
        ldm, group = analyzed(ps)
        quadruple = reflection_falsifier_3d(ps, group, ldm)
        assert quadruple is not None
        a, b, c, d = quadruple
        check = check_witness(ldm, group, (a, b, c), (a, b, d))
        assert check.is_witness

    @pytest.mark.parametrize("builder", [
        lambda: catalog.icosahedron(),
        lambda: catalog.cube3(),
        lambda: catalog.octahedron(),
    ])
    def test_three_point_homogeneous_sets_survive(self, builder):
        assert reflection_falsifier_3d(builder()) is None

    def test_needs_rank_three(self):
        with pytest.raises(ParamError):
            reflection_falsifier_3d(catalog.rectangle())
        with pytest.raises(ParamError):
            reflection_falsifier_3d(catalog.cube(4))
