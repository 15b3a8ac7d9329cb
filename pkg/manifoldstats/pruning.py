"""
Local necessary conditions on g2-irreducible triangulations, checked on
partial complexes during enumeration.

A vertex is finished when its link is a closed 2-sphere, an edge is closed
when its link is a single cycle. Every rule fires only on finished vertices
and closed edges; on anything still open it passes. The predicates return
True to keep a partial complex and False to prune it.
"""
import itertools
import math
from collections import Counter, defaultdict
from typing import (Dict, FrozenSet, Iterable, List, Mapping, Optional,
                    Sequence, Set, Tuple)

import networkx as nx

from .complex import Complex, Facet, Simplex, is_closed_sphere
from .link_types import (CATALOG_DEGREES, classify_graph,
                         classify_reduced_link, link_graph, load_catalog)

L10_1 = "L10_1"
L10_2 = "L10_2"
L10_4 = "L10_4"
L11_1 = "L11_1"
L10_7 = "L10_7"
F1_BOUND = "F1_BOUND"
ALL_RULES = frozenset((L10_1, L10_2, L10_4, L11_1, L10_7, F1_BOUND))


def cycle_state(pairs: Iterable[Tuple[int, int]]) -> str:
    """
    Shape of a graph given by its edges: ``"closed"`` for a single cycle,
    ``"open"`` for disjoint paths, ``"broken"`` when adding edges can never
    make it one cycle.
    """
    degree: Counter = Counter()
    parent: Dict[int, int] = {}

    def find(x: int) -> int:
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    cycles = 0
    for x, y in pairs:
        degree[x] += 1
        degree[y] += 1
        rx, ry = find(x), find(y)
        if rx == ry:
            cycles += 1
        else:
            parent[rx] = ry
    if any(d > 2 for d in degree.values()) or cycles > 1:
        return "broken"
    if cycles == 1:
        return "closed" if len({find(x) for x in degree}) == 1 else "broken"
    return "open"


def _joined(ends: Dict[int, int], pair: Sequence[int]) -> Dict[int, int]:
    """Path ends of an edge link after adding one link edge."""
    p, q = pair
    joined = dict(ends)
    if joined.get(p) == q:
        del joined[p], joined[q]
        return joined
    p_end = joined.pop(p, p)
    q_end = joined.pop(q, q)
    joined[p_end] = q_end
    joined[q_end] = p_end
    return joined


class PartialComplex:
    """
    Pure 3-dimensional complex under construction, every triangle in at most
    two facets. Facets are pushed and popped in stack order.

    Besides the link edges of every edge, the ends of the paths making up
    each edge link are tracked. They are exact as long as no edge link is
    broken, see :meth:`link_after`.

    :param vertex_count: Number of vertices the finished complex will have.
    """

    def __init__(self, vertex_count: int) -> None:
        self.vertex_count = vertex_count
        self.facets: List[Facet] = []
        self.facet_set: Set[Facet] = set()
        self.triangle_count: Dict[Simplex, int] = {}
        self.open_triangles: Set[Simplex] = set()
        self._edge_count: Counter = Counter()
        self._edge_link: Dict[Simplex, List[Tuple[int, int]]] = \
            defaultdict(list)
        self._path_end: Dict[Simplex, Dict[int, int]] = {}
        self._path_log: List[List[Tuple[Simplex, Optional[Dict[int, int]]]]] \
            = []
        self._open_at: Counter = Counter()
        self._facets_at: Counter = Counter()
        self._neighbors: Dict[int, Counter] = {}

    @classmethod
    def from_facets(cls, facets: Sequence[Sequence[int]],
                    vertex_count: Optional[int] = None) -> "PartialComplex":
        facet_list = [tuple(sorted(f)) for f in facets]
        if vertex_count is None:
            vertex_count = max((max(f) for f in facet_list), default=0)
        partial = cls(vertex_count)
        for facet in facet_list:
            partial.push(facet)  # type: ignore
        return partial

    @classmethod
    def from_complex(cls, K: Complex) -> "PartialComplex":
        return cls.from_facets(K.facets, K.vertex_count)

    def push(self, facet: Facet) -> None:
        """Adds a sorted facet; triangle counts may reach 3 (check
        :meth:`overfull` before)."""
        self.facets.append(facet)
        self.facet_set.add(facet)
        for triangle in itertools.combinations(facet, 3):
            count = self.triangle_count.get(triangle, 0) + 1
            self.triangle_count[triangle] = count
            if count == 1:
                self.open_triangles.add(triangle)
                for v in triangle:
                    self._open_at[v] += 1
            elif count == 2:
                self.open_triangles.discard(triangle)
                for v in triangle:
                    self._open_at[v] -= 1
        saved = []
        for edge in itertools.combinations(facet, 2):
            self._edge_count[edge] += 1
            rest = tuple(w for w in facet if w not in edge)
            self._edge_link[edge].append(rest)  # type: ignore
            ends = self._path_end.get(edge)
            saved.append((edge, ends))
            self._path_end[edge] = _joined(ends or {}, rest)
            u, v = edge
            self._neighbors.setdefault(u, Counter())[v] += 1
            self._neighbors.setdefault(v, Counter())[u] += 1
        self._path_log.append(saved)  # type: ignore
        for v in facet:
            self._facets_at[v] += 1

    def pop(self) -> Facet:
        """Removes the last pushed facet."""
        facet = self.facets.pop()
        self.facet_set.discard(facet)
        for triangle in itertools.combinations(facet, 3):
            count = self.triangle_count[triangle] - 1
            if count == 1:
                self.open_triangles.add(triangle)
                for v in triangle:
                    self._open_at[v] += 1
            elif count == 0:
                self.open_triangles.discard(triangle)
                for v in triangle:
                    self._open_at[v] -= 1
            if count:
                self.triangle_count[triangle] = count
            else:
                del self.triangle_count[triangle]
        for edge in itertools.combinations(facet, 2):
            self._edge_count[edge] -= 1
            if not self._edge_count[edge]:
                del self._edge_count[edge]
            self._edge_link[edge].pop()
            if not self._edge_link[edge]:
                del self._edge_link[edge]
            u, v = edge
            for a, b in ((u, v), (v, u)):
                self._neighbors[a][b] -= 1
                if not self._neighbors[a][b]:
                    del self._neighbors[a][b]
        for edge, ends in self._path_log.pop():
            if ends is None:
                del self._path_end[edge]
            else:
                self._path_end[edge] = ends
        for v in facet:
            self._facets_at[v] -= 1
            if not self._facets_at[v]:
                del self._facets_at[v]
                del self._neighbors[v]
        return facet

    def overfull(self, facet: Facet) -> bool:
        """Whether pushing facet would put a triangle into three facets."""
        return any(self.triangle_count.get(t, 0) >= 2
                   for t in itertools.combinations(facet, 3))

    @property
    def f1(self) -> int:
        return len(self._edge_count)

    @property
    def neighbors(self) -> Mapping[int, Counter]:
        """Neighbours of every used vertex, keyed by vertex."""
        return self._neighbors

    @property
    def used_vertices(self) -> List[int]:
        return sorted(self._facets_at)

    def degree(self, v: int) -> int:
        return len(self._neighbors.get(v, ()))

    def adjacent(self, u: int, v: int) -> bool:
        return v in self._neighbors.get(u, ())

    def is_finished(self, v: int) -> bool:
        return self._facets_at.get(v, 0) > 0 and self._open_at[v] == 0

    def link(self, simplex: Sequence[int]) -> Tuple[Simplex, ...]:
        """Link triangles of a vertex or link edges of an edge."""
        face = tuple(sorted(simplex))
        if len(face) == 1:
            v = face[0]
            return tuple(sorted(
                tuple(w for w in facet if w != v)
                for facet in self.facets if v in facet))
        if len(face) == 2:
            return tuple(sorted(self._edge_link.get(face, ())))
        raise ValueError("Only vertex and edge links are tracked")

    def edge_link_vertices(self, edge: Sequence[int]) -> Set[int]:
        return {w for pair in self._edge_link.get(tuple(sorted(edge)), ())
                for w in pair}

    def edge_state(self, edge: Sequence[int]) -> str:
        """
        ``"closed"`` when the edge link is one cycle, ``"open"`` while it's a
        union of paths, ``"broken"`` when it can't become a single cycle.
        """
        return cycle_state(self._edge_link.get(tuple(sorted(edge)), ()))

    def is_edge_closed(self, edge: Sequence[int]) -> bool:
        return self.edge_state(edge) == "closed"

    def edge_degree(self, edge: Sequence[int]) -> int:
        """Number of facets around an edge, its link size once closed."""
        return self._edge_count.get(tuple(sorted(edge)), 0)

    def link_after(self, edge: Simplex, pair: Tuple[int, int]
                   ) -> Optional[int]:
        """
        What adding the link edge ``pair`` does to the link of a sorted
        edge. Triangle counts aren't looked at, :meth:`overfull` covers them.

        :return: 0 while the link stays a union of paths, the number of link
            vertices when it closes into one cycle, None when it closes a
            cycle next to other paths or the link was closed already.
        """
        count = self._edge_count.get(edge, 0)
        if not count:
            return 0
        ends = self._path_end[edge]
        if not ends:
            return None
        p, q = pair
        if ends.get(p) != q:
            return 0
        return count + 1 if len(ends) == 2 else None

    def link_is_sphere(self, v: int) -> bool:
        return is_closed_sphere(self.link((v,)))


def _as_partial(K) -> PartialComplex:
    if isinstance(K, Complex):
        return PartialComplex.from_complex(K)
    return K


def _edge(e: Sequence[int]) -> Tuple[int, int]:
    u, v = sorted(e)
    return u, v


def prune_edge_link(K, e: Sequence[int]) -> bool:
    """
    Edges of a g2-irreducible triangulation have at least 4 vertices in their
    link.

    :param K: Partial or complete complex.
    :param e: Edge.
    :return: False when the closed edge link has at most 3 vertices.
    """
    K = _as_partial(K)
    if not K.is_edge_closed(e):
        return True
    return len(K.edge_link_vertices(e)) >= 4


def _w_set(K: PartialComplex, u: int, v: int) -> Set[int]:
    return ((set(K.neighbors[u]) & set(K.neighbors[v])) -
            K.edge_link_vertices((u, v)))


def prune_link_intersection(K, e: Sequence[int]) -> bool:
    """
    For an edge (u, v) the set ``Lk u & Lk v - Lk(u, v)`` is nonempty.

    :return: False when both ends are finished and the set is empty.
    """
    K = _as_partial(K)
    u, v = _edge(e)
    if not (K.is_finished(u) and K.is_finished(v)):
        return True
    return bool(_w_set(K, u, v))


def empty_triangles(K, u: int) -> List[Tuple[int, int, int]]:
    """3-cycles of the link of u that aren't link triangles."""
    K = _as_partial(K)
    triangles = set(K.link((u,)))
    adjacency: Dict[int, Set[int]] = defaultdict(set)
    for a, b, c in triangles:
        for x, y in ((a, b), (a, c), (b, c)):
            adjacency[x].add(y)
            adjacency[y].add(x)
    found = []
    for a in sorted(adjacency):
        for b in sorted(w for w in adjacency[a] if w > a):
            for c in sorted(w for w in adjacency[a] & adjacency[b] if w > b):
                if (a, b, c) not in triangles:
                    found.append((a, b, c))
    return found


def prune_empty_triangle_in_link(K, u: int) -> bool:
    """
    The link of a vertex contains every triangle whose boundary it contains.

    :return: False when u is finished and its link has an empty triangle.
    """
    K = _as_partial(K)
    if not K.is_finished(u):
        return True
    return not empty_triangles(K, u)


def prune_closed_triangle(K, triangle: Sequence[int]) -> bool:
    """
    Early form of :func:`prune_empty_triangle_in_link`. A triangle (v, a, b)
    in two facets takes no third one, so a vertex c with (v, a, c) and
    (v, b, c) present and (v, a, b, c) absent leaves an empty triangle in
    the link of v for good.

    :param K: Partial or complete complex.
    :param triangle: Triangle of K.
    :return: False when such a c exists for some vertex of the triangle.
    """
    K = _as_partial(K)
    face = tuple(sorted(triangle))
    if K.triangle_count.get(face, 0) < 2:
        return True
    count = K.triangle_count
    for v in face:
        a, b = (w for w in face if w != v)
        around = K.neighbors[v]
        for c in K.neighbors[a]:
            if c in face or c not in around or c not in K.neighbors[b]:
                continue
            if tuple(sorted((v, a, b, c))) in K.facet_set:
                continue
            if (count.get(tuple(sorted((v, a, c))), 0) and
                    count.get(tuple(sorted((v, b, c))), 0)):
                return False
    return True


def prune_unique_w(K, e: Sequence[int]) -> bool:
    """
    When ``Lk u & Lk v - Lk(u, v) = {w}`` the edge (u, w) has at least as
    many link vertices as (u, v). Checked for both orientations of e.

    :return: False when a finished end violates the condition.
    """
    K = _as_partial(K)
    u, v = _edge(e)
    if not (K.is_finished(u) and K.is_finished(v)):
        return True
    w_set = _w_set(K, u, v)
    if len(w_set) != 1:
        return True
    w = next(iter(w_set))
    size = len(K.edge_link_vertices((u, v)))
    for a in (u, v):
        if len(K.edge_link_vertices((a, w))) < size:
            return False
    return True


def edge_degree_floor(degree_u: int, edge_degree: int) -> int:
    """
    Floor on deg(v) from deg(u) and the degree of the edge (u, v) alone.
    Overlapping rules combine by maximum.
    """
    floors = [edge_degree + 2]
    if degree_u in (10, 11) and edge_degree == 5:
        floors.append(8)
    if degree_u == 10 and edge_degree == 6:
        floors.append(10)
    if degree_u in (11, 12, 13) and edge_degree == 6:
        floors.append(9)
    if 11 <= degree_u <= 15 and edge_degree == 7:
        floors.append(10)
    return max(floors)


def degree_floor(K, u: int, v: int) -> int:
    """
    Lower bound on deg(v) for a neighbour v of a finished vertex u in a
    g2-irreducible triangulation.

    >>> from manifoldstats import boundary_simplex
    >>> degree_floor(boundary_simplex(), 1, 2)
    5

    :param K: Partial or complete complex.
    :param u: Finished vertex.
    :param v: Neighbour of u.
    :raises ValueError: When u isn't finished or v isn't a neighbour.
    :return: Maximum of every applicable floor.
    """
    K = _as_partial(K)
    if not K.is_finished(u):
        raise ValueError(f"Vertex {u} is not finished")
    if not K.adjacent(u, v):
        raise ValueError(f"Vertex {v} is not in the link of {u}")
    return _floor(K, u, v, None)


def neighbor_floors(K, u: int) -> Dict[int, int]:
    """
    :func:`degree_floor` of every neighbour of a finished vertex u, the link
    of u read once.

    :raises ValueError: When u isn't finished.
    :return: Floors keyed by neighbour.
    """
    K = _as_partial(K)
    if not K.is_finished(u):
        raise ValueError(f"Vertex {u} is not finished")
    graph = (link_graph(K, u) if K.degree(u) in CATALOG_DEGREES
             else None)
    return {v: _floor(K, u, v, graph) for v in sorted(K.neighbors[u])}


def _floor(K: PartialComplex, u: int, v: int,
           graph: Optional[nx.Graph]) -> int:
    degree_u = K.degree(u)
    edge_degree = K.edge_degree((u, v))
    floor = edge_degree_floor(degree_u, edge_degree)
    if degree_u not in CATALOG_DEGREES:
        return floor
    catalog = load_catalog()
    if catalog.floor_bound(degree_u, edge_degree) <= floor:
        return floor
    if graph is None:
        link_type = classify_reduced_link(K, u, v)
    else:
        reduced = graph.copy()
        reduced.remove_node(v)
        link_type = classify_graph(reduced, catalog)
    if link_type is not None:
        floor = max(floor, catalog.floor(link_type.name) or 0)
    return floor


def base_degree_floor(rules: FrozenSet[str]) -> int:
    """
    Degree every vertex reaches: 4 in any closed 3-manifold, 6 when edge
    degrees are at least 4 (vertex links then have minimum degree 4).
    """
    return 6 if L10_1 in rules else 4


def f1_floor(K, rules: FrozenSet[str] = ALL_RULES,
             floors: Optional[Dict[int, int]] = None) -> int:
    """
    Lower bound on f1 of every completion: finished vertices count their
    degree, the others the largest of their current degree, the base floor
    and the floors passed in.

    :param K: Partial or complete complex.
    :param rules: Enabled rules, used for the base floor.
    :param floors: Known degree floors of unfinished vertices.
    :return: Half the degree sum, rounded up.
    """
    K = _as_partial(K)
    base = base_degree_floor(rules)
    floors = floors or {}
    total = 0
    for v in range(1, K.vertex_count + 1):
        if K.is_finished(v):
            total += K.degree(v)
        else:
            total += max(K.degree(v), base, floors.get(v, 0))
    return math.ceil(total / 2)


def f1_ceiling(K, max_degree: Optional[int] = None) -> int:
    """
    Upper bound on f1 of every completion. New edges only join unfinished
    vertices (unused ones included), so finished vertices count their degree
    and the others their degree plus their unfinished non-neighbours, at
    most max_degree.

    :param K: Partial or complete complex.
    :param max_degree: Largest degree a vertex may reach, ``f0 - 1`` when
        None.
    :return: Half the degree sum, rounded down.
    """
    K = _as_partial(K)
    vertices = range(1, K.vertex_count + 1)
    cap = K.vertex_count - 1 if max_degree is None else max_degree
    unfinished = [v for v in vertices if not K.is_finished(v)]
    total = 0
    for v in vertices:
        degree = K.degree(v)
        if K.is_finished(v):
            total += degree
            continue
        gain = sum(1 for w in unfinished
                   if w != v and not K.adjacent(v, w))
        total += max(degree, min(cap, degree + gain))
    return total // 2
