"""
Known degrees, group orders and shells for the reference instances
"""

import pytest
from unittest.mock import MagicMock

from main import HomogeneityAnalyzer
from metric.catalog import acceptance_set, equal_edge_set

FAST = {"tetrahedron", "3-cube", "octahedron", "icosahedron", "dodecahedron", "cuboctahedron",
        "TS_3", "TS_4", "orthoplex(3)", "doubled_simplex(2)", "doubled_simplex(3)", "simplex(4)",
        "pentagon", "heptagon", "octsev(1/3)", "simplex_3edge(3,4,24/5)", "rhombus(1/2)",
        "rectangle(1,2)", "prism(4,9)", "antiprism(4,9)"}


def entries(fast):
    return [pytest.param(entry, id=entry.name) for entry in acceptance_set() if (entry.name in FAST) == fast]


@pytest.mark.integration
class TestAcceptance:
    def setup_method(self, method):
        self.analyzer = HomogeneityAnalyzer(db=MagicMock())

    @pytest.mark.parametrize("entry", entries(True))
    def test_small_instance(self, entry):
        row = self.analyzer._table_row(entry, threads=1)
        assert row["status"] == "PASS", row

    @pytest.mark.slow
    @pytest.mark.parametrize("entry", entries(False))
    def test_large_instance(self, entry):
        row = self.analyzer._table_row(entry, threads=2)
        assert row["status"] == "PASS", row

    @pytest.mark.slow
    def test_equal_edge_solids(self):
        rows, all_pass = self.analyzer.run_equal_edge(threads=1)
        assert all_pass, [row for row in rows if row["status"] != "PASS"]
        assert len(rows) == len(equal_edge_set())
