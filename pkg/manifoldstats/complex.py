import itertools
from collections import Counter, defaultdict
from dataclasses import dataclass
from functools import cached_property
from typing import (Dict, FrozenSet, Iterable, List, Mapping, Optional,
                    Sequence, Tuple)

import networkx as nx

from .errors import (DuplicateFacetError, EmptyInputError, InvalidLabelsError,
                     NonPureInputError, NotAFaceError, UnexpectedComplexError)

Simplex = Tuple[int, ...]
Facet = Tuple[int, int, int, int]


class Complex:
    """
    Immutable closed 3-dimensional simplicial complex stored as a sorted tuple
    of sorted 4-vertex facets. Vertex labels are the contiguous range
    ``1..vertex_count``. Use :func:`build_complex` to construct one from
    untrusted input; the constructor trusts its arguments.

    Incidence indices are computed on first use and cached on the instance.

    >>> from manifoldstats import boundary_simplex
    >>> sphere = boundary_simplex()
    >>> sphere.f_vector()
    (5, 10, 10, 5)
    >>> sphere.link((1,))
    ((2, 3, 4), (2, 3, 5), (2, 4, 5), (3, 4, 5))
    """

    def __init__(self, facets: Iterable[Sequence[int]],
                 vertex_count: Optional[int] = None) -> None:
        normalized = sorted({tuple(sorted(f)) for f in facets})
        self._facets: Tuple[Facet, ...] = tuple(normalized)  # type: ignore
        if vertex_count is None:
            vertex_count = max((max(f) for f in self._facets), default=0)
        self._vertex_count = vertex_count

    def __repr__(self) -> str:
        return (f"{type(self).__name__}(f={self.f_vector()}, "
                f"facets={len(self._facets)})")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Complex):
            return NotImplemented
        return (self._vertex_count == other._vertex_count and
                self._facets == other._facets)

    def __hash__(self) -> int:
        return hash((self._vertex_count, self._facets))

    def __len__(self) -> int:
        return len(self._facets)

    def __contains__(self, simplex: Sequence[int]) -> bool:
        return self.has_face(simplex)

    @property
    def vertex_count(self) -> int:
        """Number of vertices f0."""
        return self._vertex_count

    @property
    def facets(self) -> Tuple[Facet, ...]:
        """Facets as sorted 4-tuples in ascending lexicographic order."""
        return self._facets

    @property
    def vertices(self) -> range:
        return range(1, self._vertex_count + 1)

    @cached_property
    def facet_set(self) -> FrozenSet[Facet]:
        return frozenset(self._facets)

    @cached_property
    def _faces(self) -> Dict[int, Tuple[Simplex, ...]]:
        faces: Dict[int, set] = {1: set(), 2: set(), 3: set()}
        for facet in self._facets:
            for size in (1, 2, 3):
                faces[size].update(itertools.combinations(facet, size))
        by_size = {size: tuple(sorted(found)) for size, found in faces.items()}
        by_size[4] = self._facets
        return by_size

    @cached_property
    def _cofacets(self) -> Dict[Simplex, Tuple[Facet, ...]]:
        """Maps every proper face to the facets containing it."""
        cofacets: Dict[Simplex, List[Facet]] = defaultdict(list)
        for facet in self._facets:
            for size in (1, 2, 3):
                for face in itertools.combinations(facet, size):
                    cofacets[face].append(facet)
        return {face: tuple(found) for face, found in cofacets.items()}

    @cached_property
    def neighbors(self) -> Dict[int, FrozenSet[int]]:
        """Vertex adjacency of the 1-skeleton."""
        adjacent: Dict[int, set] = {v: set() for v in self.vertices}
        for u, v in self._faces[2]:
            adjacent[u].add(v)
            adjacent[v].add(u)
        return {v: frozenset(found) for v, found in adjacent.items()}

    @cached_property
    def skeleton_graph(self) -> nx.Graph:
        """1-skeleton as a networkx graph on all vertices."""
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from(self._faces[2])
        return graph

    def faces(self, size: int) -> Tuple[Simplex, ...]:
        """
        Faces with given number of vertices.

        :param size: 1 for vertices, 2 for edges, 3 for triangles, 4 for
            facets.
        :return: Sorted tuple of faces.
        """
        if size not in self._faces:
            raise ValueError(f"Face size has to be in 1..4, got {size}")
        return self._faces[size]

    def f_vector(self) -> Tuple[int, int, int, int]:
        """
        Counts of vertices, edges, triangles and facets.

        :return: Tuple ``(f0, f1, f2, f3)``.
        """
        return (self._vertex_count, len(self._faces[2]),
                len(self._faces[3]), len(self._facets))

    def has_face(self, simplex: Sequence[int]) -> bool:
        face = tuple(sorted(simplex))
        if len(face) == 4:
            return face in self.facet_set
        return face in self._cofacets

    def star(self, simplex: Sequence[int]) -> Tuple[Facet, ...]:
        """
        Facets containing given face.

        :param simplex: Face of the complex.
        :raises NotAFaceError: When simplex isn't a face.
        :return: Sorted tuple of facets.
        """
        face = self._require_face(simplex)
        if len(face) == 4:
            return (face,)  # type: ignore
        return self._cofacets[face]

    def link(self, simplex: Sequence[int]) -> Tuple[Simplex, ...]:
        """
        Link of a face, given by its maximal simplices (each of size
        ``4 - len(simplex)``). The link of a facet is empty.

        :param simplex: Face of the complex.
        :raises NotAFaceError: When simplex isn't a face.
        :return: Sorted tuple of simplices.
        """
        face = self._require_face(simplex)
        removed = set(face)
        found = (tuple(w for w in facet if w not in removed)
                 for facet in self.star(face))
        return tuple(sorted(t for t in found if t))

    def link_vertices(self, simplex: Sequence[int]) -> FrozenSet[int]:
        """Vertices of the link of a face."""
        face = self._require_face(simplex)
        if len(face) == 1:
            return self.neighbors[face[0]]
        return frozenset(w for facet in self.star(face) for w in facet
                         if w not in face)

    def vertex_degree(self, v: int) -> int:
        """
        Number of vertices in the link of a vertex.

        :raises NotAFaceError: When v isn't a vertex.
        """
        if v not in self.neighbors:
            raise NotAFaceError((v,))
        return len(self.neighbors[v])

    def edge_degree(self, edge: Sequence[int]) -> int:
        """
        Number of vertices in the link of an edge.

        :raises NotAFaceError: When edge isn't an edge of the complex.
        """
        face = tuple(sorted(edge))
        if len(face) != 2:
            raise NotAFaceError(face)
        return len(self.link_vertices(face))

    def triangle_link(self, triangle: Sequence[int]) -> Tuple[int, ...]:
        """Vertices completing a triangle to a facet."""
        return tuple(sorted(self.link_vertices(triangle)))

    def relabel(self, mapping: Mapping[int, int]) -> "Complex":
        """
        Applies a vertex bijection onto ``1..f0``.

        :param mapping: Old label to new label, defined on every vertex.
        :return: Relabelled complex.
        """
        return Complex((tuple(mapping[v] for v in facet)
                        for facet in self._facets), self._vertex_count)

    def check_relations(self) -> None:
        """
        Asserts the Euler relation and ``f2 = 2 f3`` of closed 3-manifolds.

        :raises UnexpectedComplexError: When either relation fails.
        """
        f0, f1, f2, f3 = self.f_vector()
        if f0 - f1 + f2 - f3 != 0 or f2 != 2 * f3:
            raise UnexpectedComplexError(
                f"Face counts {(f0, f1, f2, f3)} break the Euler relation")

    def _require_face(self, simplex: Sequence[int]) -> Simplex:
        face = tuple(sorted(simplex))
        if not face or not self.has_face(face):
            raise NotAFaceError(face)
        return face


def build_complex(facets: Iterable[Sequence[int]],
                  relabel: bool = False) -> Complex:
    """
    Builds a complex from untrusted facets.

    :param facets: 4-element vertex tuples.
    :param relabel: Whether to map the used labels onto ``1..f0`` keeping
        their order. When False the labels have to already be ``1..f0``.
    :raises EmptyInputError: When no facet is given.
    :raises NonPureInputError: When some facet doesn't have 4 distinct labels.
    :raises DuplicateFacetError: When a facet repeats.
    :raises InvalidLabelsError: When labels aren't contiguous and relabel is
        False.
    :return: Normalized complex.
    """
    normalized: List[Facet] = []
    seen = set()
    for facet in facets:
        vertices = tuple(sorted(int(v) for v in facet))
        if len(vertices) != 4 or len(set(vertices)) != 4:
            raise NonPureInputError(tuple(facet))
        if vertices in seen:
            raise DuplicateFacetError(vertices)
        seen.add(vertices)
        normalized.append(vertices)  # type: ignore
    if not normalized:
        raise EmptyInputError()
    labels = sorted({v for facet in normalized for v in facet})
    if labels != list(range(1, len(labels) + 1)):
        if not relabel:
            raise InvalidLabelsError(
                "Vertex labels have to be 1..f0, pass relabel=True to " +
                "compress them")
        mapping = {old: new for new, old in enumerate(labels, start=1)}
        normalized = [tuple(mapping[v] for v in f)  # type: ignore
                      for f in normalized]
    return Complex(normalized, len(labels))


def compress_labels(facets: Iterable[Sequence[int]]) -> Complex:
    """Builds a complex from trusted facets, relabelling onto ``1..f0``."""
    facet_list = [tuple(f) for f in facets]
    labels = sorted({v for facet in facet_list for v in facet})
    mapping = {old: new for new, old in enumerate(labels, start=1)}
    return Complex((tuple(mapping[v] for v in f) for f in facet_list),
                   len(labels))


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of :func:`validate`."""
    is_pure: bool
    is_closed_pseudomanifold: bool
    is_connected: bool
    all_links_spheres: bool
    first_violation: Optional[str] = None

    @property
    def is_manifold(self) -> bool:
        return (self.is_pure and self.is_closed_pseudomanifold and
                self.is_connected and self.all_links_spheres)


def is_closed_sphere(triangles: Sequence[Sequence[int]]) -> bool:
    """
    Checks whether triangles form a triangulated 2-sphere: every edge in
    exactly two triangles, connected, Euler characteristic 2.

    :param triangles: Triangles as vertex triples.
    :return: True for a 2-sphere.
    """
    if not triangles:
        return False
    edge_counts: Counter = Counter()
    for triangle in triangles:
        for edge in itertools.combinations(sorted(triangle), 2):
            edge_counts[edge] += 1
    if any(count != 2 for count in edge_counts.values()):
        return False
    graph = nx.Graph(list(edge_counts))
    if not nx.is_connected(graph):
        return False
    return graph.number_of_nodes() - len(edge_counts) + len(triangles) == 2


def validate(K: Complex) -> ValidationReport:
    """
    Runs all closed 3-manifold checks on a complex.

    :param K: Complex to check.
    :return: Report with every check and the first violation found.
    """
    violations: List[str] = []

    used = {v for facet in K.facets for v in facet}
    is_pure = (all(len(set(f)) == 4 for f in K.facets) and
               used == set(K.vertices))
    if not is_pure:
        violations.append("some vertex of 1..f0 is unused")

    bad_triangles = [t for t in K.faces(3) if len(K.star(t)) != 2]
    is_closed = not bad_triangles
    if not is_closed:
        violations.append(
            f"triangle {bad_triangles[0]} lies in "
            f"{len(K.star(bad_triangles[0]))} facets")

    is_connected = K.vertex_count > 0 and nx.is_connected(K.skeleton_graph)
    if not is_connected:
        violations.append("complex is not connected")

    bad_vertices = [v for v in sorted(used)
                    if not is_closed_sphere(K.link((v,)))]
    all_spheres = not bad_vertices
    if not all_spheres:
        violations.append(f"link of vertex {bad_vertices[0]} is not a sphere")

    return ValidationReport(is_pure, is_closed, is_connected, all_spheres,
                            violations[0] if violations else None)


def barycentric_subdivide(K: Complex) -> Complex:
    """
    Barycentric subdivision. New vertices are the faces of K, numbered by
    size first and lexicographically second.

    :param K: Complex to subdivide.
    :return: Subdivision with ``24 * f3`` facets.
    """
    labels: Dict[Simplex, int] = {}
    for size in (1, 2, 3, 4):
        for face in K.faces(size):
            labels[face] = len(labels) + 1
    facets = []
    for facet in K.facets:
        for order in itertools.permutations(facet):
            chain = (labels[tuple(sorted(order[:k]))] for k in (1, 2, 3, 4))
            facets.append(tuple(chain))
    return Complex(facets, len(labels))


def disjoint_union(K1: Complex, K2: Complex) -> Complex:
    """Places K2 after K1, shifting K2's labels by f0(K1)."""
    shift = K1.vertex_count
    shifted = (tuple(v + shift for v in facet) for facet in K2.facets)
    return Complex(itertools.chain(K1.facets, shifted),
                   K1.vertex_count + K2.vertex_count)


# standard constructions
def boundary_simplex() -> Complex:
    """Boundary of the 4-simplex on vertices 1..5."""
    return Complex(itertools.combinations(range(1, 6), 4), 5)


def stacked_sphere(n: int) -> Complex:
    """
    Boundary of the stacked 4-ball made of the simplices
    ``{i, ..., i+4}`` for ``i = 1..n-4``. Vertices i and j are at 1-skeleton
    distance ``ceil(|i-j| / 4)``.

    :param n: Number of vertices, at least 5.
    :return: Stacked 3-sphere with f0 = n.
    """
    if n < 5:
        raise ValueError("Stacked sphere needs at least 5 vertices")
    counts: Counter = Counter()
    for start in range(1, n - 3):
        for facet in itertools.combinations(range(start, start + 5), 4):
            counts[facet] += 1
    return Complex((f for f, count in counts.items() if count == 1), n)


def cyclic_bundle(n: int) -> Complex:
    """
    Boundary of the cyclic solid torus made of the simplices
    ``{i, ..., i+4} mod n``. Odd n gives the twisted 2-sphere bundle over the
    circle, even n the product; n = 9 is the 9-vertex neighborly twisted
    bundle, n = 10 the (10, 40, 60, 30) product.

    :param n: Number of vertices, at least 9.
    :return: Sphere bundle triangulation.
    """
    if n < 9:
        raise ValueError("Cyclic bundle needs at least 9 vertices")
    facets = []
    for start in range(n):
        window = [(start + j) % n + 1 for j in range(5)]
        for dropped in (1, 2, 3):
            facets.append(window[:dropped] + window[dropped + 1:])
    return Complex(facets, n)
