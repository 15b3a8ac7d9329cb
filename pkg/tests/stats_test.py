from manifoldstats import TriangulationStats, boundary_simplex, cyclic_bundle

from .fixtures_utils import FixturesUtils, projective_space
from .stats_test_base_class import StatsTestBaseClass


class TestTriangulationStats(StatsTestBaseClass):

    def test_report_keys_are_public_methods(self):
        report = TriangulationStats(boundary_simplex()).report()
        assert "report" not in report
        assert "from_file" not in report
        assert set(report) == {
            "betti_mod_2", "f_vector", "g_vector", "gamma_lower", "h_vector",
            "homology", "irreducibility", "min_vertices", "missing_facets",
            "mu", "name_hint", "neighborly", "orientable"}

    def test_fixture_matches_construction(self):
        f_utils = FixturesUtils()
        assert f_utils.get_complex("cyclic_bundle_9") == cyclic_bundle(9)
        assert f_utils.get_complex("boundary_simplex") == boundary_simplex()

    def test_projective_space(self):
        stats = TriangulationStats(projective_space())
        assert stats.homology() == "Z, Z_2, 0, Z"
        assert stats.name_hint() == "RP^3"
        assert stats.orientable()
        assert stats.betti_mod_2() == [1, 1, 1, 1]
        assert stats.gamma_lower() == 10
        assert stats.f_vector()[0] == 40
