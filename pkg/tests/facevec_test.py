from fractions import Fraction

import pytest

from manifoldstats import (FaceVector, admissible_pairs, f_from_pair,
                           g2_lower_bound, g_vector, h_vector,
                           heawood_min_vertices, min_vertices, mu_statistic,
                           predict_surgery, tight_neighborly_rows)
from manifoldstats.errors import (DimensionMismatchError,
                                  DimensionTooSmallError, InvalidEulerError)
from manifoldstats.facevec import (TightNeighborlyRow, f1_range_for, g2,
                                   passes_mu_filter, predicted_g_delta)


class TestVectors:

    def test_f_from_pair(self):
        assert f_from_pair(11, 51).proper == (11, 51, 80, 40)
        assert f_from_pair(5, 10).proper == (5, 10, 10, 5)

    def test_h_and_g(self):
        f = f_from_pair(11, 51)
        assert h_vector(f).entries == (1, 7, 24, 7, 1)
        assert g_vector(f).entries == (1, 6, 17)
        assert g2(11, 51) == 17

    def test_h_vector_is_symmetric(self, subtests):
        for f0, f1 in ((9, 36), (15, 86), (18, 96)):
            with subtests.test(msg=f"{f0},{f1}"):
                h = h_vector(f_from_pair(f0, f1)).entries
                assert h == tuple(reversed(h))

    def test_invalid_face_vector(self):
        with pytest.raises(ValueError):
            FaceVector(3, (1, 5, 10))


class TestSurgery:

    def test_connected_sum_of_projective_spaces(self):
        f = f_from_pair(11, 51)
        prediction = predict_surgery(f, "#", f)
        assert prediction.f.proper == (18, 96, 156, 78)
        assert prediction.g.entries == (1, 13, 34)
        assert prediction.g_delta == (0, 1, 0)

    def test_subdivision_and_handle(self, subtests):
        f = f_from_pair(18, 96)
        for op in ("S", "H"):
            with subtests.test(msg=op):
                prediction = predict_surgery(f, op)
                assert prediction.g_delta == predicted_g_delta(3, op)
        assert predict_surgery(f, "H").f.proper == (14, 90, 152, 76)
        assert predicted_g_delta(3, "H") == (0, -4, 10)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            predict_surgery(f_from_pair(5, 10), "#",
                            FaceVector.from_counts((3, 3, 2)))

    def test_unknown_operation(self):
        with pytest.raises(ValueError):
            predict_surgery(f_from_pair(5, 10), "X")


class TestBounds:

    def test_min_vertices(self, subtests):
        for beta1, expected in ((0, 5), (1, 9), (12, 20), (19, 24),
                                (21, 25), (30, 29)):
            with subtests.test(msg=f"beta1={beta1}"):
                assert min_vertices(3, beta1) == expected
                assert g2_lower_bound(3, beta1) == 10 * beta1

    def test_dimension_four(self):
        assert g2_lower_bound(4, 3) == 45
        assert min_vertices(4, 3) == 15

    def test_dimension_too_small(self):
        with pytest.raises(DimensionTooSmallError):
            g2_lower_bound(2, 1)
        with pytest.raises(DimensionTooSmallError):
            min_vertices(2, 1)

    def test_heawood(self, subtests):
        for chi, expected in ((2, 4), (1, 6), (0, 7), (-2, 9)):
            with subtests.test(msg=f"chi={chi}"):
                assert heawood_min_vertices(chi) == expected
        with pytest.raises(InvalidEulerError):
            heawood_min_vertices(3)

    def test_tight_neighborly_rows(self):
        rows = tight_neighborly_rows(1)
        assert rows[:2] == [TightNeighborlyRow(5, 0), TightNeighborlyRow(9, 1)]
        assert TightNeighborlyRow(20, 12) in rows
        assert TightNeighborlyRow(29, 30) in rows
        for row in rows:
            assert (row.f0 - 9) * row.f0 == 20 * (row.k - 1)


class TestIrreducibilityRegion:

    def test_mu_statistic(self):
        assert mu_statistic(f_from_pair(9, 36)) == Fraction(-9, 2)
        assert mu_statistic(f_from_pair(11, 51)) == Fraction(1, 2) + 1
        assert not passes_mu_filter(f_from_pair(9, 36))
        assert passes_mu_filter(f_from_pair(11, 51))

    def test_mu_needs_dimension_three(self):
        with pytest.raises(DimensionMismatchError):
            mu_statistic(FaceVector.from_counts((4, 6, 4)))

    def test_admissible_pairs(self):
        pairs = admissible_pairs(20)
        assert pairs[0] == (11, 51)
        assert (11, 51) in pairs
        assert (12, 58) in pairs
        assert all(g2(f0, f1) <= 20 for f0, f1 in pairs)
        assert all(2 * f1 > 9 * f0 + 1 for f0, f1 in pairs)
        assert admissible_pairs(0) == []

    def test_f1_range_for(self):
        assert f1_range_for(11) == (51, 55)
        assert f1_range_for(11, 20) == (51, 54)
