"""
Tests for exact point-set geometry and instance files
"""

import json
import pytest
from fractions import Fraction

import numpy as np

from metric import catalog
from metric.geometry import (
    PointSet, GeometryError, squared_distances, squared_distance, barycenter,
    circumsphere_check, affine_rank, matrix_rank, central_symmetry, chord_cosines,
    spherical_angles, float_squared_distances, weighted_dot, save_point_set, load_point_set,
    loads_point_set, dumps_point_set,
)
from metric.scalar import Scalar, PHI, ZERO, RadicandMismatch
from utils.errors import InputError, ParamError


class TestPointSet:
    def test_basic_properties(self):
        ps = PointSet(points=[(0, 0), (1, 0), (0, 1)], name="corner")
        assert ps.k == 3
        assert ps.n == 2
        assert len(ps) == 3
        assert ps.column_weights == (1, 1)
        assert ps.radicand == 0

    def test_radicand_derived_from_coordinates(self):
        ps = PointSet(points=[(PHI, 0), (0, 1)])
        assert ps.radicand == 5

    def test_mixed_radicands_rejected(self):
        with pytest.raises(RadicandMismatch):
            PointSet(points=[(Scalar.sqrt(2), 0), (Scalar.sqrt(3), 0)])

    def test_ragged_rows_rejected(self):
        with pytest.raises(GeometryError):
            PointSet(points=[(0, 0), (1, 0, 0)])

    def test_empty_rejected(self):
        with pytest.raises(GeometryError):
            PointSet(points=[])

    def test_weights_must_be_positive(self):
        with pytest.raises(GeometryError):
            PointSet(points=[(0, 0), (1, 1)], column_weights=(1, 0))

    def test_weight_count_must_match(self):
        with pytest.raises(GeometryError):
            PointSet(points=[(0, 0), (1, 1)], column_weights=(1,))

    def test_index_of(self):
        ps = PointSet(points=[(0, 0), (1, 0)])
        assert ps.index_of((1, 0)) == 1
        with pytest.raises(ParamError):
            ps.index_of((2, 2))


class TestDistances:
    def test_squared_distances_symmetric_zero_diagonal(self):
        ps = catalog.cube(3)
        matrix = squared_distances(ps)
        for i in range(ps.k):
            assert matrix[i][i] == 0
            for j in range(ps.k):
                assert matrix[i][j] == matrix[j][i]
        assert sorted({matrix[0][j] for j in range(1, 8)}) == [4, 8, 12]

    def test_column_weights_scale_squares(self):
        ps = PointSet(points=[(0, 0), (1, 1)], column_weights=(2, 3))
        assert squared_distance(ps, 0, 1) == 5

    def test_weighted_dot(self):
        ps = PointSet(points=[(1, 2), (3, 4)], column_weights=(2, 1))
        assert weighted_dot(ps, ps.points[0], ps.points[1]) == 2 * 3 + 8

    def test_icosahedron_edge_is_exact(self):
        ps = catalog.icosahedron()
        values = {squared_distance(ps, 0, j) for j in range(1, ps.k)}
        assert Scalar(4) in values
        assert len(values) == 3

    def test_float_distances_match_exact(self):
        ps = catalog.goss6()
        exact = squared_distances(ps)
        approx = float_squared_distances(ps)
        assert np.allclose(approx, [[float(x) for x in row] for row in exact])


class TestCircumsphere:
    def test_barycenter_of_cube_is_origin(self):
        assert barycenter(catalog.cube(3)) == (ZERO, ZERO, ZERO)

    def test_goss6_radius(self):
        result = circumsphere_check(catalog.goss6())
        assert result.equidistant
        assert result.radius_sq == Fraction(2, 3)

    def test_dodecahedron_cosines(self):
        ps = catalog.dodecahedron()
        result = circumsphere_check(ps)
        assert result.equidistant
        chords = sorted({squared_distance(ps, 0, j) for j in range(1, ps.k)})
        cosines = chord_cosines(result.radius_sq, chords)
        assert cosines[0] == Scalar.sqrt(5) / 3
        assert cosines[1] == Fraction(1, 3)
        assert cosines[-1] == -1

    def test_not_on_a_sphere(self):
        ps = PointSet(points=[(0, 0), (1, 0), (3, 0)])
        result = circumsphere_check(ps)
        assert not result.equidistant
        assert result.radius_sq is None

    def test_spherical_angles(self):
        angles = spherical_angles(Scalar(1), [Scalar(2), Scalar(4)])
        assert angles == pytest.approx([np.pi / 2, np.pi])


class TestRank:
    @pytest.mark.parametrize("builder,expected", [
        (lambda: catalog.simplex(4), 4),
        (lambda: catalog.cube(3), 3),
        (lambda: catalog.truncated_simplex(4), 4),
        (lambda: catalog.goss6(), 6),
        (lambda: catalog.goss7(), 7),
        (lambda: catalog.dodecahedron(), 3),
        (lambda: catalog.rectangle(), 2),
    ])
    def test_affine_rank(self, builder, expected):
        assert affine_rank(builder()) == expected

    def test_collinear_points(self):
        assert affine_rank(PointSet(points=[(0, 0), (1, 1), (2, 2)])) == 1

    def test_matrix_rank_over_golden_field(self):
        rows = [(PHI, 1), (1, PHI - 1)]
        assert matrix_rank(rows) == 1
        assert matrix_rank([]) == 0


class TestCentralSymmetry:
    def test_cube_is_centrally_symmetric(self):
        ps = catalog.cube(3)
        pairing = central_symmetry(ps)
        assert pairing is not None
        assert all(pairing[pairing[i]] == i for i in range(ps.k))
        assert all(squared_distance(ps, i, pairing[i]) == 12 for i in range(ps.k))

    def test_goss7_pairs_in_reverse_order(self):
        pairing = central_symmetry(catalog.goss7())
        assert pairing == tuple(55 - i for i in range(56))

    def test_tetrahedron_is_not(self):
        assert central_symmetry(catalog.tetrahedron()) is None

    def test_point_on_center_has_no_partner(self):
        assert central_symmetry(PointSet(points=[(-1,), (0,), (1,)])) is None


class TestInstanceFiles:
    def test_save_and_load(self, tmp_path):
        ps = catalog.goss6()
        path = tmp_path / "goss6.json"
        save_point_set(ps, path)
        loaded = load_point_set(path)
        assert loaded.points == ps.points
        assert loaded.column_weights == ps.column_weights
        assert loaded.name == "goss6"
        data = json.loads(path.read_text(encoding="utf-8"))
        assert data["column_weights"] == ["2", "2", "2", "2", "2", "6"]

    def test_text_round_trip_keeps_surds(self):
        ps = catalog.icosahedron()
        assert loads_point_set(dumps_point_set(ps)).points == ps.points

    def test_missing_file(self, tmp_path):
        with pytest.raises(GeometryError):
            load_point_set(tmp_path / "absent.json")

    def test_invalid_json(self):
        with pytest.raises(GeometryError):
            loads_point_set("{not json")

    def test_missing_points(self):
        with pytest.raises(GeometryError):
            loads_point_set('{"name": "x"}')

    def test_bad_scalar_is_input_error(self):
        with pytest.raises(InputError):
            loads_point_set('{"points": [["1", "sqrt(x)"]]}')
