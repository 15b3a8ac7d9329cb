import pytest

from manifoldstats import (betti_mod_p, boundary_matrix, boundary_simplex,
                           cyclic_bundle, integral_homology, orientable,
                           smith_normal_form, stacked_sphere)
from manifoldstats.errors import NotPrimeError
from manifoldstats.homology import (HomologyProfile, IntegerMatrix,
                                    lens_space_names, name_hints)

from .fixtures_utils import projective_space

RP3 = projective_space()


@pytest.mark.parametrize("values,expected", [
    ([[2, 0], [0, 3]], ((1, 6), 2)),
    ([[2, 4], [6, 8]], ((2, 4), 2)),
    ([[1, 2, 3], [2, 4, 6]], ((1,), 1)),
    ([[0, 0], [0, 0]], ((), 0)),
])
def test_smith_normal_form(values, expected):
    assert smith_normal_form(IntegerMatrix.from_dense(values)) == expected


def test_boundary_matrices_compose_to_zero():
    K = cyclic_bundle(9)
    for k in (1, 2):
        product = boundary_matrix(K, k) @ boundary_matrix(K, k + 1)
        assert product.entries == {}
    M = boundary_matrix(K, 3)
    assert (M.rows, M.cols) == (54, 27)
    edges = boundary_matrix(boundary_simplex(), 1).to_dense()
    assert len(edges) == 5
    for column in zip(*edges):
        assert sorted(column) == [-1, 0, 0, 0, 1]
    with pytest.raises(ValueError):
        boundary_matrix(K, 4)


@pytest.mark.parametrize("K,text,names,is_orientable", [
    (boundary_simplex(), "Z, 0, 0, Z", ("S^3",), True),
    (stacked_sphere(8), "Z, 0, 0, Z", ("S^3",), True),
    (cyclic_bundle(9), "Z, Z, Z_2, 0", ("S^2~S^1",), False),
    (cyclic_bundle(10), "Z, Z, Z, Z", ("S^2xS^1",), True),
    (RP3, "Z, Z_2, 0, Z", ("RP^3",), True),
])
def test_integral_homology(K, text, names, is_orientable):
    profile = integral_homology(K)
    assert profile.format() == text
    assert profile.names == names
    assert profile.euler_characteristic == 0
    assert orientable(K, cross_check=True) is is_orientable


def test_betti_mod_p():
    assert betti_mod_p(cyclic_bundle(9), 2) == (1, 1, 1, 1)
    assert betti_mod_p(cyclic_bundle(9), 3) == (1, 1, 0, 0)
    assert betti_mod_p(RP3, 2) == (1, 1, 1, 1)
    assert betti_mod_p(RP3, 3) == (1, 0, 0, 1)
    for p in (1, 4, 9):
        with pytest.raises(NotPrimeError):
            betti_mod_p(RP3, p)


def test_profile_format():
    assert HomologyProfile((1, 3, 3, 1), ((),) * 4).format() == \
        "Z, Z^3, Z^3, Z"
    profile = HomologyProfile((1, 0, 0, 1), ((), (2, 2), (), ()))
    assert str(profile) == "Z, Z_2 + Z_2, 0, Z"
    assert profile.names == ()
    assert profile.name_hint == ""


def test_lens_space_names():
    assert lens_space_names(2) == ("RP^3",)
    assert lens_space_names(5) == ("L(5,1)", "L(5,2)")
    assert lens_space_names(7) == ("L(7,1)", "L(7,2)")
    profile = HomologyProfile((1, 0, 0, 1), ((), (5,), (), ()))
    assert name_hints(profile) == ("L(5,1)", "L(5,2)")
    assert profile.is_ambiguous
    assert profile.name_hint == "L(5,1)/L(5,2)"
    assert not HomologyProfile((1, 0, 0, 1), ((), (13,), (), ())).names
