"""
Bistellar i-moves on closed 3-manifold triangulations.

An i-move replaces ``A * boundary(B)`` by ``boundary(A) * B`` where A has
``4 - i`` vertices, B has ``i + 1`` vertices and the link of A is the
boundary of B. A 0-move subdivides a facet with a fresh vertex, a 3-move
removes a degree-4 vertex.

Random selection runs on :class:`FlipState`, a mutable triangulation with
incremental indices. Random numbers come from a ``numpy.random.Generator``
over ``PCG64`` that callers create with :func:`make_rng` and pass in
explicitly.
"""
import itertools
import logging
import math
from dataclasses import dataclass
from typing import (Dict, Generic, Iterable, Iterator, List, Optional,
                    Sequence, Set, Tuple, TypeVar)

import numpy as np

from .complex import Complex, Facet, Simplex
from .errors import (IllegalMoveError, InvalidWeightsError,
                     UnexpectedComplexError)

logger = logging.getLogger(__name__)

Weights = Tuple[float, float, float, float]
MAX_REJECTIONS = 64

T = TypeVar("T")


@dataclass(frozen=True, order=True)
class MoveDescriptor:
    """
    One bistellar move. For a 0-move ``replacement_b`` holds the fresh vertex
    label.
    """
    kind: int
    face_a: Simplex
    replacement_b: Simplex

    def __post_init__(self) -> None:
        if self.kind not in (0, 1, 2, 3):
            raise ValueError(f"Move kind has to be 0..3, got {self.kind}")
        if (len(self.face_a) != 4 - self.kind or
                len(self.replacement_b) != self.kind + 1):
            raise ValueError(
                f"{self.kind}-move needs |A| = {4 - self.kind} and "
                f"|B| = {self.kind + 1}")

    def removed_facets(self) -> List[Facet]:
        """Facets of ``A * boundary(B)``."""
        return [_join(self.face_a, (w for w in self.replacement_b if w != b))
                for b in self.replacement_b]

    def added_facets(self) -> List[Facet]:
        """Facets of ``boundary(A) * B``."""
        return [_join(self.replacement_b, (w for w in self.face_a if w != a))
                for a in self.face_a]

    def __str__(self) -> str:
        a = ",".join(str(v) for v in self.face_a)
        b = ",".join(str(v) for v in self.replacement_b)
        return f"{self.kind}-move A=({a}) B=({b})"


def _join(first: Iterable[int], second: Iterable[int]) -> Facet:
    return tuple(sorted(itertools.chain(first, second)))  # type: ignore


def validate_weights(weights: Sequence[float]) -> Weights:
    """
    Checks move weights; ``math.inf`` marks a priority kind.

    :raises InvalidWeightsError: When a weight is negative, there aren't four
        of them or none is positive.
    """
    if len(weights) != 4 or any(w < 0 or math.isnan(w) for w in weights):
        raise InvalidWeightsError(tuple(weights))
    if not any(w > 0 for w in weights):
        raise InvalidWeightsError(tuple(weights))
    return tuple(float(w) for w in weights)  # type: ignore


def make_rng(seed: int = 0) -> np.random.Generator:
    """Seeded PCG64 generator used by every random process of the package."""
    return np.random.Generator(np.random.PCG64(seed))


def legal_moves(K: Complex) -> List[MoveDescriptor]:
    """
    Complete list of legal moves of K ordered by kind and face.

    :param K: Valid complex.
    :return: List of move descriptors.
    """
    fresh = (K.vertex_count + 1,)
    moves = [MoveDescriptor(0, facet, fresh) for facet in K.facets]
    for triangle in K.faces(3):
        x, y = K.triangle_link(triangle)
        if y not in K.neighbors[x]:
            moves.append(MoveDescriptor(1, triangle, (x, y)))
    for edge in K.faces(2):
        if len(K.star(edge)) == 3:
            opposite = tuple(sorted(K.link_vertices(edge)))
            if not K.has_face(opposite):
                moves.append(MoveDescriptor(2, edge, opposite))
    for v in K.vertices:
        if len(K.neighbors[v]) == 4:
            opposite = tuple(sorted(K.neighbors[v]))
            if opposite not in K.facet_set:
                moves.append(MoveDescriptor(3, (v,), opposite))
    return moves


def check_move(K: Complex, m: MoveDescriptor) -> None:
    """
    Raises unless m is legal in K.

    :raises IllegalMoveError: With reason ``"link mismatch"`` when A isn't a
        face or its link isn't the boundary of B, ``"B present"`` when the
        0-move vertex isn't fresh, ``"B is face"`` when B is already a face.
    """
    if not K.has_face(m.face_a):
        raise IllegalMoveError("link mismatch", m)
    if m.kind == 0:
        if m.replacement_b != (K.vertex_count + 1,):
            raise IllegalMoveError("B present", m)
        return
    link = set(K.link(m.face_a))
    expected = set(itertools.combinations(m.replacement_b, m.kind))
    if link != expected:
        raise IllegalMoveError("link mismatch", m)
    if K.has_face(m.replacement_b):
        raise IllegalMoveError("B is face", m)


def apply(K: Complex, m: MoveDescriptor) -> Complex:
    """
    Applies a bistellar move. A 3-move removes vertex v and renames the last
    vertex f0 to v so labels stay contiguous.

    :param K: Valid complex.
    :param m: Move legal in K.
    :raises IllegalMoveError: When m isn't legal in K.
    :return: New complex.
    """
    check_move(K, m)
    removed = set(m.removed_facets())
    facets = [f for f in K.facets if f not in removed]
    facets.extend(m.added_facets())
    if m.kind == 0:
        result = Complex(facets, K.vertex_count + 1)
    elif m.kind == 3:
        gone, last = m.face_a[0], K.vertex_count
        rename = {last: gone} if gone != last else {}
        facets = [tuple(rename.get(v, v) for v in f) for f in facets]
        result = Complex(facets, K.vertex_count - 1)
    else:
        result = Complex(facets, K.vertex_count)
    result.check_relations()
    return result


def inverse_move(K: Complex, m: MoveDescriptor) -> MoveDescriptor:
    """
    Move undoing m, expressed in the labels of ``apply(K, m)``.

    :param K: Complex m is legal in.
    :param m: The move.
    :return: Move legal in ``apply(K, m)`` leading back to a complex equal to
        K up to the relabelling done by a 3-move.
    """
    if m.kind == 0:
        return MoveDescriptor(3, m.replacement_b, m.face_a)
    if m.kind == 3:
        gone, last = m.face_a[0], K.vertex_count
        renamed = tuple(sorted(gone if v == last else v
                               for v in m.replacement_b))
        return MoveDescriptor(0, renamed, (K.vertex_count,))
    return MoveDescriptor(3 - m.kind, m.replacement_b, m.face_a)


class IndexedSet(Generic[T]):
    """Set with O(1) add, remove and uniform random access."""

    def __init__(self, items: Iterable[T] = ()) -> None:
        self._items: List[T] = []
        self._positions: Dict[T, int] = {}
        for item in items:
            self.add(item)

    def __len__(self) -> int:
        return len(self._items)

    def __contains__(self, item: object) -> bool:
        return item in self._positions

    def __iter__(self) -> Iterator[T]:
        return iter(self._items)

    def __getitem__(self, index: int) -> T:
        return self._items[index]

    def add(self, item: T) -> None:
        if item not in self._positions:
            self._positions[item] = len(self._items)
            self._items.append(item)

    def discard(self, item: T) -> None:
        position = self._positions.pop(item, None)
        if position is None:
            return
        last = self._items.pop()
        if position < len(self._items):
            self._items[position] = last
            self._positions[last] = position


class FlipState:
    """
    Mutable closed 3-manifold triangulation for long move sequences.

    Labels are arbitrary positive integers; 0-moves take ``next_label``.
    :meth:`to_complex` compresses labels onto ``1..f0`` preserving order.

    :param K: Starting complex.
    """

    def __init__(self, K: Complex) -> None:
        self.facets: IndexedSet[Facet] = IndexedSet()
        self.triangles: IndexedSet[Simplex] = IndexedSet()
        self.degree3_edges: IndexedSet[Simplex] = IndexedSet()
        self.degree4_vertices: IndexedSet[int] = IndexedSet()
        self._triangle_count: Dict[Simplex, int] = {}
        self._edge_count: Dict[Simplex, int] = {}
        self._neighbors: Dict[int, Set[int]] = {}
        self.next_label = K.vertex_count + 1
        for facet in K.facets:
            self._add_facet(facet)

    @property
    def f0(self) -> int:
        return len(self._neighbors)

    @property
    def f1(self) -> int:
        return len(self._edge_count)

    def f_vector(self) -> Tuple[int, int, int, int]:
        return (len(self._neighbors), len(self._edge_count),
                len(self._triangle_count), len(self.facets))

    def degree(self, v: int) -> int:
        return len(self._neighbors[v])

    def adjacent(self, u: int, v: int) -> bool:
        return v in self._neighbors.get(u, ())

    def _add_facet(self, facet: Facet) -> None:
        self.facets.add(facet)
        for triangle in itertools.combinations(facet, 3):
            count = self._triangle_count.get(triangle, 0) + 1
            self._triangle_count[triangle] = count
            if count == 1:
                self.triangles.add(triangle)
        for u, v in itertools.combinations(facet, 2):
            count = self._edge_count.get((u, v), 0) + 1
            self._edge_count[(u, v)] = count
            if count == 3:
                self.degree3_edges.add((u, v))
            elif count == 4:
                self.degree3_edges.discard((u, v))
            if count == 1:
                self._link_vertices(u, v, 1)
        for v in facet:
            self._refresh_vertex(v)

    def _remove_facet(self, facet: Facet) -> None:
        self.facets.discard(facet)
        for triangle in itertools.combinations(facet, 3):
            count = self._triangle_count[triangle] - 1
            if count:
                self._triangle_count[triangle] = count
            else:
                del self._triangle_count[triangle]
                self.triangles.discard(triangle)
        for u, v in itertools.combinations(facet, 2):
            count = self._edge_count[(u, v)] - 1
            if count == 3:
                self.degree3_edges.add((u, v))
            elif count == 2:
                self.degree3_edges.discard((u, v))
            if count:
                self._edge_count[(u, v)] = count
            else:
                del self._edge_count[(u, v)]
                self._link_vertices(u, v, -1)
        for v in facet:
            self._refresh_vertex(v)

    def _link_vertices(self, u: int, v: int, step: int) -> None:
        for a, b in ((u, v), (v, u)):
            around = self._neighbors.setdefault(a, set())
            if step > 0:
                around.add(b)
            else:
                around.discard(b)

    def _refresh_vertex(self, v: int) -> None:
        around = self._neighbors.get(v)
        if around is None:
            return
        if not around:
            del self._neighbors[v]
            self.degree4_vertices.discard(v)
        elif len(around) == 4:
            self.degree4_vertices.add(v)
        else:
            self.degree4_vertices.discard(v)

    def _triangle_link(self, triangle: Simplex) -> Tuple[int, int]:
        a, b, c = triangle
        found = [x for x in self._neighbors[a]
                 if x != b and x != c and
                 tuple(sorted((a, b, c, x))) in self.facets]
        return found[0], found[1]

    def _edge_link(self, edge: Simplex) -> List[int]:
        a, b = edge
        return [x for x in self._neighbors[a] if x != b and
                tuple(sorted((a, b, x))) in self._triangle_count]

    def candidate_count(self, kind: int) -> int:
        return len(self._candidates(kind))

    def _candidates(self, kind: int) -> IndexedSet:
        return (self.facets, self.triangles, self.degree3_edges,
                self.degree4_vertices)[kind]

    def move_for(self, kind: int, candidate) -> Optional[MoveDescriptor]:
        """
        Move of given kind at a candidate face, or None when it's illegal.

        :param kind: Move kind.
        :param candidate: Facet, triangle, degree-3 edge or degree-4 vertex.
        """
        if kind == 0:
            return MoveDescriptor(0, candidate, (self.next_label,))
        if kind == 1:
            x, y = sorted(self._triangle_link(candidate))
            if self.adjacent(x, y):
                return None
            return MoveDescriptor(1, candidate, (x, y))
        if kind == 2:
            opposite = tuple(sorted(self._edge_link(candidate)))
            if len(opposite) != 3 or opposite in self._triangle_count:
                return None
            return MoveDescriptor(2, candidate, opposite)
        opposite = tuple(sorted(self._neighbors[candidate]))
        if opposite in self.facets:
            return None
        return MoveDescriptor(3, (candidate,), opposite)

    def legal_moves(self, kind: int) -> List[MoveDescriptor]:
        """Every legal move of one kind, sorted."""
        found = (self.move_for(kind, c) for c in self._candidates(kind))
        return sorted(m for m in found if m is not None)

    def apply(self, m: MoveDescriptor) -> None:
        """
        Applies a move produced by this state. Legality isn't rechecked.
        """
        for facet in m.removed_facets():
            self._remove_facet(facet)
        for facet in m.added_facets():
            self._add_facet(facet)
        if m.kind == 0:
            self.next_label += 1

    def random_move(self, weights: Sequence[float],
                    rng: np.random.Generator) -> Optional[MoveDescriptor]:
        """
        Samples a legal move; each legal move of kind i has probability
        proportional to ``weights[i]``. Kinds weighted ``math.inf`` take
        priority: when any has a legal move, one of those is chosen uniformly.

        :param weights: Four nonnegative weights.
        :param rng: Generator from :func:`make_rng`.
        :raises InvalidWeightsError: When weights are invalid.
        :return: Move, or None when no weighted kind has a legal move.
        """
        weights = validate_weights(weights)
        priority = [k for k in range(4) if math.isinf(weights[k])]
        if priority:
            found = [m for k in priority for m in self.legal_moves(k)]
            if found:
                return found[int(rng.integers(len(found)))]
        finite = [(k, weights[k]) for k in range(4)
                  if 0 < weights[k] < math.inf]
        if not finite:
            return None
        # rejection sampling over candidate faces keeps the per-move weight
        for _ in range(MAX_REJECTIONS):
            masses = [w * self.candidate_count(k) for k, w in finite]
            total = sum(masses)
            if total == 0:
                return None
            point = rng.random() * total
            for (kind, _), mass in zip(finite, masses):
                if point < mass:
                    break
                point -= mass
            candidates = self._candidates(kind)
            if not candidates:
                continue
            move = self.move_for(kind,
                                 candidates[int(rng.integers(len(candidates)))])
            if move is not None:
                return move
        legal = [(m, w) for k, w in finite for m in self.legal_moves(k)]
        if not legal:
            logger.debug("No legal move for weights %s", weights)
            return None
        point = rng.random() * sum(w for _, w in legal)
        for move, w in legal:
            if point < w:
                return move
            point -= w
        return legal[-1][0]

    def to_complex(self) -> Complex:
        """Snapshot with labels compressed onto ``1..f0``."""
        labels = sorted(self._neighbors)
        mapping = {old: new for new, old in enumerate(labels, start=1)}
        result = Complex((tuple(mapping[v] for v in f) for f in self.facets),
                         len(labels))
        return result

    def snapshot(self) -> List[Facet]:
        """Current facets, in the state's labels."""
        return list(self.facets)


def weighted_random_move(K: Complex, weights: Sequence[float],
                         rng: np.random.Generator
                         ) -> Tuple[Optional[MoveDescriptor],
                                    np.random.Generator]:
    """
    Samples a legal move of K, see :meth:`FlipState.random_move`.

    :param K: Valid complex.
    :param weights: ``(w0, w1, w2, w3)``, ``math.inf`` allowed.
    :param rng: Generator from :func:`make_rng`, advanced and returned.
    :raises InvalidWeightsError: When weights are negative or all zero.
    :return: Tuple of the move (None when nothing is legal) and the generator.
    """
    move = FlipState(K).random_move(weights, rng)
    return move, rng


def move_g_delta(kind: int) -> Tuple[int, int]:
    """Change of (g1, g2) caused by an i-move."""
    return ((1, 0), (0, 1), (0, -1), (-1, 0))[kind]


def ensure_relations(state: FlipState) -> None:
    """
    Checks Euler relation and ``f2 = 2 f3`` on a working state.

    :raises UnexpectedComplexError: When a relation fails.
    """
    f0, f1, f2, f3 = state.f_vector()
    if f0 - f1 + f2 - f3 != 0 or f2 != 2 * f3:
        raise UnexpectedComplexError(
            f"Face counts {(f0, f1, f2, f3)} break the Euler relation")
