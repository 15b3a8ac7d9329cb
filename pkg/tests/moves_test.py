import math

import pytest

from manifoldstats import (FlipState, MoveDescriptor, apply, boundary_simplex,
                           cyclic_bundle, integral_homology, legal_moves,
                           make_rng, stacked_sphere, validate,
                           weighted_random_move)
from manifoldstats.errors import IllegalMoveError, InvalidWeightsError
from manifoldstats.facevec import FaceVector, g_vector
from manifoldstats.moves import (check_move, ensure_relations, inverse_move,
                                 move_g_delta, validate_weights)

from .fixtures_utils import projective_space


def g_of(counts):
    return g_vector(FaceVector.from_counts(counts)).entries


def test_descriptor_shape():
    with pytest.raises(ValueError):
        MoveDescriptor(4, (1,), (2, 3, 4, 5, 6))
    with pytest.raises(ValueError):
        MoveDescriptor(1, (1, 2), (3, 4))
    m = MoveDescriptor(2, (1, 2), (3, 4, 5))
    assert len(m.removed_facets()) == 3
    assert len(m.added_facets()) == 2
    assert str(m) == "2-move A=(1,2) B=(3,4,5)"


def test_legal_moves_on_boundary_simplex():
    K = boundary_simplex()
    moves = legal_moves(K)
    # B of every 1- 2- and 3-move is already a face
    assert [m.kind for m in moves] == [0] * 5
    assert all(m.replacement_b == (6,) for m in moves)


def test_check_move_reasons():
    K = boundary_simplex()
    with pytest.raises(IllegalMoveError) as excinfo:
        check_move(K, MoveDescriptor(1, (1, 2, 3), (4, 5)))
    assert excinfo.value.reason == "B is face"
    with pytest.raises(IllegalMoveError) as excinfo:
        check_move(K, MoveDescriptor(0, (1, 2, 3, 4), (3,)))
    assert excinfo.value.reason == "B present"
    with pytest.raises(IllegalMoveError) as excinfo:
        check_move(K, MoveDescriptor(1, (1, 2, 7), (4, 5)))
    assert excinfo.value.reason == "link mismatch"
    K = stacked_sphere(6)
    with pytest.raises(IllegalMoveError) as excinfo:
        check_move(K, MoveDescriptor(1, (2, 3, 4), (1, 5)))
    assert excinfo.value.reason == "link mismatch"


def test_zero_move_then_three_move():
    K = boundary_simplex()
    m = MoveDescriptor(0, (1, 2, 3, 4), (6,))
    L = apply(K, m)
    assert L.f_vector() == (6, 14, 16, 8)
    assert validate(L).is_manifold
    back = inverse_move(K, m)
    assert back == MoveDescriptor(3, (6,), (1, 2, 3, 4))
    assert apply(L, back) == K


def test_one_move_and_inverse():
    K = stacked_sphere(6)
    m = MoveDescriptor(1, (2, 3, 4), (1, 6))
    check_move(K, m)
    L = apply(K, m)
    assert L.f_vector() == (6, 15, 18, 9)
    assert validate(L).is_manifold
    back = inverse_move(K, m)
    assert back.kind == 2
    assert apply(L, back) == K


def test_three_move_keeps_labels_contiguous():
    K = stacked_sphere(6)
    m = MoveDescriptor(3, (1,), (2, 3, 4, 5))
    L = apply(K, m)
    assert list(L.vertices) == [1, 2, 3, 4, 5]
    assert validate(L).is_manifold
    assert apply(L, inverse_move(K, m)).f_vector() == K.f_vector()


@pytest.mark.parametrize("K", [stacked_sphere(7), cyclic_bundle(9)])
def test_every_legal_move_keeps_manifold(K):
    for m in legal_moves(K):
        L = apply(K, m)
        assert validate(L).is_manifold
        delta = move_g_delta(m.kind)
        g, h = g_of(K.f_vector()), g_of(L.f_vector())
        assert (h[1] - g[1], h[2] - g[2]) == delta


def test_flip_state_matches_legal_moves():
    K = cyclic_bundle(9)
    state = FlipState(K)
    from_state = sorted(m for kind in range(4)
                        for m in state.legal_moves(kind))
    assert from_state == sorted(legal_moves(K))


def test_validate_weights():
    assert validate_weights((1, 0, 0, math.inf))[3] == math.inf
    for weights in [(0, 0, 0, 0), (1, -1, 0, 0), (1, 1, 1)]:
        with pytest.raises(InvalidWeightsError):
            validate_weights(weights)


def test_weighted_random_move_respects_weights():
    rng = make_rng(3)
    K = stacked_sphere(7)
    for _ in range(20):
        m, rng = weighted_random_move(K, (0, 1, 0, 0), rng)
        assert m.kind == 1
        check_move(K, m)
    m, _ = weighted_random_move(boundary_simplex(), (0, 1, 1, 1), rng)
    assert m is None


def test_priority_weight_wins():
    K = apply(stacked_sphere(6), MoveDescriptor(0, (1, 2, 3, 4), (7,)))
    m, _ = weighted_random_move(K, (1, 1, 1, math.inf), make_rng(0))
    assert m.kind == 3


def test_random_moves_are_reproducible():
    def walk(seed):
        state, rng = FlipState(cyclic_bundle(9)), make_rng(seed)
        history = []
        for _ in range(200):
            m = state.random_move((1, 1, 1, 1), rng)
            state.apply(m)
            history.append(m)
        return history

    assert walk(7) == walk(7)
    assert walk(7) != walk(8)


FLIP_COMPLEXES = {
    "boundary_simplex": boundary_simplex,
    "stacked_sphere_7": lambda: stacked_sphere(7),
    "cyclic_bundle_9": lambda: cyclic_bundle(9),
    "cyclic_bundle_10": lambda: cyclic_bundle(10),
    "projective_space": projective_space,
}


def flip_property_run(K, seed, steps, check_every):
    homology = integral_homology(K).format()
    rng = make_rng(seed)
    state = FlipState(K)
    for step in range(1, steps + 1):
        before = state.f_vector()
        m = state.random_move((1, 1, 1, 1), rng)
        assert m is not None
        state.apply(m)
        ensure_relations(state)
        g_before, g_after = g_of(before), g_of(state.f_vector())
        assert (g_after[1] - g_before[1],
                g_after[2] - g_before[2]) == move_g_delta(m.kind)
        if step % check_every == 0:
            assert validate(state.to_complex()).is_manifold
        if step % 1_000 == 0:
            assert integral_homology(state.to_complex()).format() == homology
    assert integral_homology(state.to_complex()).format() == homology


@pytest.mark.parametrize("name", FLIP_COMPLEXES)
@pytest.mark.parametrize("seed", range(3))
def test_flip_properties(name, seed):
    flip_property_run(FLIP_COMPLEXES[name](), seed, 500, 97)


@pytest.mark.slow
@pytest.mark.parametrize("name", FLIP_COMPLEXES)
@pytest.mark.parametrize("seed", range(5))
def test_flip_properties_long(name, seed):
    flip_property_run(FLIP_COMPLEXES[name](), seed, 10_000, 1)


@pytest.mark.parametrize("name", FLIP_COMPLEXES)
def test_moves_keep_homology(name):
    K = FLIP_COMPLEXES[name]()
    homology = integral_homology(K).format()
    moves = legal_moves(K)
    # one move of every available kind
    for m in {m.kind: m for m in moves}.values():
        L = apply(K, m)
        assert integral_homology(L).format() == homology
        assert integral_homology(apply(L, inverse_move(K, m))).format() == \
            homology
