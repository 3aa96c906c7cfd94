"""
Tests for the brute-force references
"""

import pytest
from fractions import Fraction

from config import ORACLE_MAX_M, ORACLE_MAX_POINTS
from groups.autgroup import automorphism_group
from homogeneity.levels import is_m_point_homogeneous
from homogeneity.oracle import CapExceeded, brute_automorphisms, brute_m_homog
from metric import catalog
from metric.distmat import LabeledDistanceMatrix, label_exact
from metric.geometry import squared_distances
from utils.errors import ParamError


def exact_ldm(ps):
    return label_exact(squared_distances(ps), name=ps.name)


class TestBruteAutomorphisms:
    @pytest.mark.parametrize("builder,order", [
        (lambda: catalog.tetrahedron(), 24),
        (lambda: catalog.cube3(), 48),
        (lambda: catalog.rectangle(), 4),
        (lambda: catalog.truncated_simplex(4), 120),
    ])
    def test_orders(self, builder, order):
        assert len(brute_automorphisms(exact_ldm(builder()))) == order

    def test_pentagon(self):
        assert len(brute_automorphisms(catalog.n_gon(5))) == 10

    def test_matches_group_engine(self):
        ldm = exact_ldm(catalog.cuboctahedron())
        assert set(brute_automorphisms(ldm)) == set(automorphism_group(ldm).elements())

    def test_point_cap(self):
        ldm = exact_ldm(catalog.dodecahedron())
        with pytest.raises(CapExceeded) as excinfo:
            brute_automorphisms(ldm)
        assert excinfo.value.what == "k"
        assert excinfo.value.cap == ORACLE_MAX_POINTS


class TestBruteHomogeneity:
    @pytest.mark.parametrize("builder,m,expected", [
        (lambda: catalog.octahedron(), 3, True),
        (lambda: catalog.cube3(), 4, True),
        (lambda: catalog.truncated_simplex(4), 2, True),
        (lambda: catalog.truncated_simplex(4), 3, False),
        (lambda: catalog.rhombus(Fraction(1, 2)), 1, False),
        (lambda: catalog.rhombus(Fraction(1)), 2, True),
    ])
    def test_known_answers(self, builder, m, expected):
        assert brute_m_homog(exact_ldm(builder()), m) is expected

    def test_octsev(self):
        assert brute_m_homog(catalog.octsev(Fraction(1, 3)), 3)

    def test_m_cap(self):
        with pytest.raises(CapExceeded) as excinfo:
            brute_m_homog(exact_ldm(catalog.simplex(2)), ORACLE_MAX_M + 1)
        assert excinfo.value.what == "m"

    def test_m_must_be_positive(self):
        with pytest.raises(ParamError):
            brute_m_homog(exact_ldm(catalog.simplex(2)), 0)


def small_acceptance_instances():
    params = []
    for entry in catalog.acceptance_set():
        instance = catalog.generate(entry)
        ldm = instance if isinstance(instance, LabeledDistanceMatrix) else exact_ldm(instance)
        if ldm.k <= ORACLE_MAX_POINTS:
            params.append(pytest.param(ldm, id=entry.name))
    return params


@pytest.mark.integration
class TestOracleEquivalence:
    @pytest.mark.parametrize("ldm", small_acceptance_instances())
    def test_group_order_and_verdicts(self, ldm):
        group = automorphism_group(ldm)
        assert group.order == len(brute_automorphisms(ldm))
        for m in range(1, ORACLE_MAX_M + 1):
            assert is_m_point_homogeneous(ldm, group, m).holds == brute_m_homog(ldm, m), m

    def test_covers_the_small_instances(self):
        names = {param.id for param in small_acceptance_instances()}
        assert {"icosahedron", "cuboctahedron", "TS_4", "octsev(1/3)", "rhombus(1/2)"} <= names
        assert "dodecahedron" not in names
