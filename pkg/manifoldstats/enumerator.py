"""
Facet-by-facet enumeration of closed 3-manifold triangulations with given
f0 and f1 range.

Vertex 1 is a vertex of maximum degree D. Its star is fixed first, from one
triangulated 2-sphere per isomorphism class; every such star is an
independent subtask (:func:`split_task`). The search then repeatedly closes
a triangle lying in a single facet, the one with the fewest viable closing
vertices, either with an unfinished vertex or with the next unused label.
Besides the enabled rules it prunes on the f1 range from both sides and on
the order of degree D vertex links. Complete complexes are deduplicated by
canonical digest.
"""
import builtins
import functools
import itertools
import logging
import math
from collections import Counter
from dataclasses import dataclass
from typing import (Dict, FrozenSet, Iterable, Iterator, List, Optional,
                    Sequence, Set, Tuple)

from joblib import Parallel, delayed

from .canonical import canonical_facets, canonicalize
from .complex import Complex, Facet, is_closed_sphere
from .errors import InfeasibleTaskError
from .facevec import FaceVector, f1_range_for, g2, g_vector
from .homology import HomologyProfile, integral_homology
from .pruning import (ALL_RULES, F1_BOUND, L10_1, L10_2, L10_4, L10_7, L11_1,
                      PartialComplex, base_degree_floor, cycle_state,
                      empty_triangles, f1_ceiling, f1_floor,
                      neighbor_floors, prune_closed_triangle,
                      prune_link_intersection, prune_unique_w)
from .surgery import missing_facets

logger = logging.getLogger(__name__)

Triangle = Tuple[int, int, int]


@dataclass(frozen=True)
class EnumerationTask:
    """
    One enumeration request.

    :param f0: Number of vertices.
    :param f1_range: Inclusive f1 interval.
    :param g2_cap: Optional cap on g2; the f1 interval is then clipped to
        the region allowed for g2-irreducible triangulations.
    :param rules: Enabled pruning rules, subset of
        :data:`~manifoldstats.pruning.ALL_RULES`.
    :param prefix: Star of vertex 1 to start from, vertex 1 being of maximum
        degree. None searches every star.
    """
    f0: int
    f1_range: Tuple[int, int]
    g2_cap: Optional[int] = None
    rules: FrozenSet[str] = ALL_RULES
    prefix: Optional[Tuple[Facet, ...]] = None
    label: str = ""

    def __post_init__(self) -> None:
        if self.f0 < 5:
            raise ValueError("Enumeration needs f0 >= 5")
        unknown = set(self.rules) - ALL_RULES
        if unknown:
            raise ValueError(f"Unknown pruning rules {sorted(unknown)}")
        low, high = self.f1_range
        if low > high:
            raise InfeasibleTaskError(f"Empty f1 range {self.f1_range}")

    @property
    def effective_range(self) -> Tuple[int, int]:
        """
        f1 interval actually searched: at least ``4 f0 - 10`` (g2 >= 0), at
        most ``C(f0, 2)``, clipped by the g2 cap when one is set.

        :raises InfeasibleTaskError: When the interval is empty.
        """
        low, high = self.f1_range
        low = max(low, 4 * self.f0 - 10)
        high = min(high, math.comb(self.f0, 2))
        if self.g2_cap is not None:
            cap_low, cap_high = f1_range_for(self.f0, self.g2_cap)
            low, high = max(low, cap_low), min(high, cap_high)
        if low > high:
            raise InfeasibleTaskError(
                f"No admissible f1 for f0={self.f0} in {self.f1_range}" +
                (f" with g2 <= {self.g2_cap}" if self.g2_cap is not None
                 else ""))
        return low, high

    @property
    def task_id(self) -> str:
        low, high = self.f1_range
        parts = [f"f0={self.f0}", f"f1={low}:{high}"]
        if self.g2_cap is not None:
            parts.append(f"cap={self.g2_cap}")
        parts.append("rules=" + ",".join(sorted(self.rules)))
        if self.label:
            parts.append(self.label)
        return ";".join(parts)


@dataclass(frozen=True)
class CensusRecord:
    """One triangulation found by a search, in canonical labelling."""
    facets: Tuple[Facet, ...]
    digest: str
    f_vector: Tuple[int, int, int, int]
    g_vector: Tuple[int, ...]
    homology: HomologyProfile
    provenance: str
    missing_facets: int = 0
    manifold_name: Optional[str] = None

    @classmethod
    def from_complex(cls, K: Complex, provenance: str = "",
                     manifold_name: Optional[str] = None) -> "CensusRecord":
        """Canonicalizes K and computes every stored statistic."""
        facets, digest = canonicalize(K)
        return cls.from_canonical(facets, digest, provenance, manifold_name)

    @classmethod
    def from_canonical(cls, facets: Sequence[Sequence[int]], digest: str,
                       provenance: str = "",
                       manifold_name: Optional[str] = None
                       ) -> "CensusRecord":
        canonical = Complex(facets)
        f = canonical.f_vector()
        homology = integral_homology(canonical)
        if manifold_name is None and homology.names:
            manifold_name = homology.name_hint
        return cls(canonical.facets, digest, f,  # type: ignore
                   g_vector(FaceVector.from_counts(f)).entries, homology,
                   provenance, len(missing_facets(canonical)),
                   manifold_name)

    @property
    def g2(self) -> int:
        return g2(self.f_vector[0], self.f_vector[1])

    def complex(self) -> Complex:
        return Complex(self.facets, self.f_vector[0])

    def row(self) -> Tuple[str, str, str, str, str]:
        """Summary row: digest, f-vector, g-vector, homology, name."""
        f = ",".join(str(c) for c in self.f_vector)
        g = ",".join(str(c) for c in self.g_vector)
        return (self.digest, f"({f})", f"({g})", self.homology.format(),
                self.manifold_name or "")


@dataclass(frozen=True)
class CensusRow:
    """Census counts of one homology class at one vertex count."""
    name: str
    homology: str
    f0: int
    f1_min: int
    f1_max: int
    g2_min: int
    g2_max: int
    count: int


@dataclass(frozen=True)
class MissingFacetReport:
    """Post hoc missing-facet filtering of a census."""
    total: int
    without_missing: int
    records: Tuple[CensusRecord, ...]


class _SphereSearch:
    """Closing search for triangulated 2-spheres on labels 1..n."""

    def __init__(self, n: int, min_degree: int,
                 no_separating_triangles: bool = False) -> None:
        self.n = n
        self.min_degree = min_degree
        self.no_separating_triangles = no_separating_triangles
        self.triangles: List[Triangle] = []
        self.triangle_set: Set[Triangle] = set()
        self.edge_count: Counter = Counter()
        self.open_edges: Set[Tuple[int, int]] = set()
        self.open_at: Counter = Counter()
        self.links: Dict[int, List[Tuple[int, int]]] = {}
        self.labels = [1]

    @property
    def next_label(self) -> int:
        return self.labels[-1]

    def _push(self, triangle: Triangle) -> None:
        self.triangles.append(triangle)
        self.triangle_set.add(triangle)
        for edge in itertools.combinations(triangle, 2):
            self.edge_count[edge] += 1
            step = 1 if self.edge_count[edge] == 1 else -1
            if step == 1:
                self.open_edges.add(edge)  # type: ignore
            else:
                self.open_edges.discard(edge)  # type: ignore
            for v in edge:
                self.open_at[v] += step
        for v in triangle:
            rest = tuple(w for w in triangle if w != v)
            self.links.setdefault(v, []).append(rest)  # type: ignore
        self.labels.append(max(self.next_label, triangle[-1] + 1))

    def _pop(self) -> None:
        triangle = self.triangles.pop()
        self.triangle_set.discard(triangle)
        for edge in itertools.combinations(triangle, 2):
            self.edge_count[edge] -= 1
            step = -1 if not self.edge_count[edge] else 1
            if step == -1:
                del self.edge_count[edge]
                self.open_edges.discard(edge)  # type: ignore
            else:
                self.open_edges.add(edge)  # type: ignore
            for v in edge:
                self.open_at[v] += step
        for v in triangle:
            self.links[v].pop()
            if not self.links[v]:
                del self.links[v]
        self.labels.pop()

    def _closed(self, v: int) -> bool:
        return v in self.links and not self.open_at[v]

    def _neighbors(self, v: int) -> Set[int]:
        return {w for pair in self.links.get(v, ()) for w in pair}

    def _admissible(self, triangle: Triangle) -> bool:
        if len(self.triangles) > 2 * self.n - 4:
            return False
        top = len(self.links[1]) if self._closed(1) else self.n
        for v in triangle:
            degree = len(self.links[v])
            if degree > top:
                return False
            if cycle_state(self.links[v]) == "broken":
                return False
            if self._closed(v) and degree < self.min_degree:
                return False
        if self.no_separating_triangles:
            # a closed edge has both its triangles, a third common neighbour
            # of its ends spans a separating triangle
            for a, b in itertools.combinations(triangle, 2):
                if (self.edge_count[(a, b)] == 2 and
                        len(self._neighbors(a) & self._neighbors(b)) > 2):
                    return False
        return True

    def run(self) -> Iterator[Tuple[Triangle, ...]]:
        self._push((1, 2, 3))
        yield from self._extend()
        self._pop()

    def _extend(self) -> Iterator[Tuple[Triangle, ...]]:
        if not self.open_edges:
            if (self.next_label == self.n + 1 and
                    len(self.triangles) == 2 * self.n - 4):
                yield tuple(sorted(self.triangles))
            return
        a, b = min(self.open_edges)
        candidates = [c for c in range(1, self.next_label)
                      if c not in (a, b) and not self._closed(c)]
        if self.next_label <= self.n:
            candidates.append(self.next_label)
        for c in candidates:
            triangle = tuple(sorted((a, b, c)))
            if triangle in self.triangle_set:
                continue
            if any(self.edge_count.get(e, 0) >= 2
                   for e in itertools.combinations(triangle, 2)):
                continue
            self._push(triangle)  # type: ignore
            if self._admissible(triangle):  # type: ignore
                yield from self._extend()
            self._pop()


def has_separating_triangle(triangles: Sequence[Triangle]) -> bool:
    """Whether some 3-cycle of a triangulated 2-sphere isn't a face."""
    faces = set(triangles)
    adjacency: Dict[int, Set[int]] = {}
    for triangle in triangles:
        for x, y in itertools.combinations(triangle, 2):
            adjacency.setdefault(x, set()).add(y)
            adjacency.setdefault(y, set()).add(x)
    for a in adjacency:
        for b in adjacency[a]:
            if b <= a:
                continue
            for c in adjacency[a] & adjacency[b]:
                if c > b and (a, b, c) not in faces:
                    return True
    return False


@functools.lru_cache(maxsize=None)
def triangulated_spheres(n: int, min_degree: int = 3,
                         no_separating_triangles: bool = False
                         ) -> Tuple[Tuple[Triangle, ...], ...]:
    """
    Triangulated 2-spheres with n vertices, one per isomorphism class, in
    canonical labelling sorted.

    :param n: Number of vertices, at least 4.
    :param min_degree: Minimum vertex degree.
    :param no_separating_triangles: Keep only spheres whose 3-cycles are
        all faces.
    """
    if n < 4:
        raise ValueError("A 2-sphere needs at least 4 vertices")
    found = set()
    for triangles in _SphereSearch(n, min_degree,
                                   no_separating_triangles).run():
        if no_separating_triangles and has_separating_triangle(triangles):
            continue
        found.add(canonical_facets(triangles))
    logger.debug("%d spheres with %d vertices, min degree %d", len(found), n,
                 min_degree)
    return tuple(sorted(found))  # type: ignore


def max_degree_range(task: EnumerationTask) -> range:
    """Possible degrees of vertex 1: at least the average degree."""
    low, _ = task.effective_range
    minimum = max(math.ceil(2 * low / task.f0),
                  base_degree_floor(task.rules))
    return range(minimum, task.f0)


def split_task(task: EnumerationTask) -> List[EnumerationTask]:
    """
    Partitions a task by the star of vertex 1.

    :param task: Task without prefix.
    :raises InfeasibleTaskError: When the task's f1 range is empty.
    :return: One subtask per (degree, sphere) pair, in a fixed order.
    """
    if task.prefix is not None:
        return [task]
    rules = frozenset(task.rules)
    subtasks = []
    for degree in max_degree_range(task):
        spheres = triangulated_spheres(degree, 4 if L10_1 in rules else 3,
                                       L10_4 in rules)
        for index, sphere in builtins.enumerate(spheres):
            prefix = tuple(sorted((1,) + tuple(v + 1 for v in triangle)
                                  for triangle in sphere))
            subtasks.append(EnumerationTask(
                task.f0, task.f1_range, task.g2_cap, task.rules,
                prefix, f"star={degree}/{index}"))  # type: ignore
    logger.info("Split %s into %d subtasks", task.task_id, len(subtasks))
    return subtasks


# the six ways of splitting a facet into an edge and its link edge
_EDGE_SPLITS = ((0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2),
                (1, 2, 0, 3), (1, 3, 0, 2), (2, 3, 0, 1))


class _StarSearch:
    """
    Depth first closing search from a fixed star of vertex 1.

    Every step closes the open triangle with the fewest viable closing
    vertices, ties going to the smallest triangle. A candidate is viable
    when the facet it makes keeps every triangle in at most two facets,
    every edge link a union of paths or one cycle, the degrees within D and
    f1 within range. Unused labels are interchangeable, only the smallest
    is tried.

    Vertex 1 is the vertex of degree D whose link comes first in the order
    of :meth:`_comes_before_star`; complexes with an earlier one are left to
    the subtask of that link.
    """

    def __init__(self, task: EnumerationTask) -> None:
        self.task = task
        self.rules = frozenset(task.rules)
        self.f1_low, self.f1_high = task.effective_range
        self.min_edge_degree = 4 if L10_1 in self.rules else 3
        self.partial = PartialComplex(task.f0)
        self.max_degree = 0
        self.next_label = 1
        self.star_degrees: Tuple[int, ...] = ()
        self.star_form: Optional[Tuple[Triangle, ...]] = None
        self.floors_from: Dict[int, Dict[int, int]] = {}
        self.floors: Dict[int, int] = {}
        self.finished_stack: List[List[int]] = []
        self.saved: List[Tuple[int, Dict[int, int]]] = []
        self.prunes: Counter = Counter()
        self.nodes = 0

    def _start(self) -> bool:
        prefix = self.task.prefix or ()
        if not prefix or any(1 not in f for f in prefix):
            raise ValueError("Prefix has to be the star of vertex 1")
        link = [tuple(v for v in f if v != 1) for f in prefix]
        if not is_closed_sphere(link):
            raise ValueError("Link of vertex 1 in prefix is not a 2-sphere")
        labels = sorted({v for t in link for v in t})
        if labels != list(range(2, len(labels) + 2)):
            raise ValueError("Prefix link has to use labels 2..D+1")
        self.max_degree = len(labels)
        if self.max_degree >= self.task.f0:
            return False
        for facet in prefix:
            self.partial.push(tuple(sorted(facet)))  # type: ignore
        self.next_label = self.max_degree + 2
        self.star_degrees = self._edge_degrees(1)
        if self.partial.f1 > self.f1_high:
            return self._prune("f1")
        self.finished_stack.append([])
        return self._check(prefix[-1])

    def run(self) -> Iterator[Complex]:
        if not self._start():
            return
        yield from self._extend()

    def _extend(self) -> Iterator[Complex]:
        P = self.partial
        self.nodes += 1
        if not P.open_triangles:
            if (self.next_label == self.task.f0 + 1 and
                    self.f1_low <= P.f1 <= self.f1_high):
                yield Complex(P.facets, self.task.f0)
            return
        triangle, candidates = self._branch()
        if not candidates:
            self._prune("dead end")
            return
        for x in candidates:
            facet: Facet = tuple(sorted(triangle + (x,)))  # type: ignore
            self._push(facet, x)
            if self._check(facet):
                yield from self._extend()
            self._retract()

    def _branch(self) -> Tuple[Triangle, List[int]]:
        P = self.partial
        pool = [v for v in range(2, self.next_label) if not P.is_finished(v)]
        if self.next_label <= self.task.f0:
            pool.append(self.next_label)
        best: Optional[Triangle] = None
        best_candidates: List[int] = []
        for triangle in sorted(P.open_triangles):
            candidates = []
            for x in pool:
                if x in triangle or not self._viable(triangle, x):
                    continue
                candidates.append(x)
                if best is not None and \
                        len(candidates) >= len(best_candidates):
                    break
            else:
                best, best_candidates = triangle, candidates
                if len(candidates) <= 1:
                    break
        return best, best_candidates  # type: ignore

    def _viable(self, triangle: Triangle, x: int) -> bool:
        P = self.partial
        facet = tuple(sorted(triangle + (x,)))
        if facet in P.facet_set or P.overfull(facet):  # type: ignore
            return False
        new_edges = 0
        for v in triangle:
            if not P.adjacent(v, x):
                if P.degree(v) >= self.max_degree:
                    return False
                new_edges += 1
        if (P.degree(x) + new_edges > self.max_degree or
                P.f1 + new_edges > self.f1_high):
            return False
        for i, j, k, m in _EDGE_SPLITS:
            closed = P.link_after((facet[i], facet[j]), (facet[k], facet[m]))
            if closed is None or (closed and closed < self.min_edge_degree):
                return False
        return True

    def _push(self, facet: Facet, x: int) -> None:
        self.partial.push(facet)
        self.saved.append((self.next_label, self.floors))
        if x == self.next_label:
            self.next_label += 1
        self.finished_stack.append([])

    def _retract(self) -> None:
        for v in self.finished_stack.pop():
            self.floors_from.pop(v, None)
        self.next_label, self.floors = self.saved.pop()
        self.partial.pop()

    def _prune(self, rule: str) -> bool:
        self.prunes[rule] += 1
        return False

    def _edge_degrees(self, v: int) -> Tuple[int, ...]:
        P = self.partial
        return tuple(sorted(P.edge_degree((v, w)) for w in P.neighbors[v]))

    def _comes_before_star(self, v: int) -> bool:
        """
        Whether the link of a finished vertex of degree D precedes the link
        of vertex 1: by sorted edge degrees first, by canonical form when
        those agree.
        """
        degrees = self._edge_degrees(v)
        if degrees != self.star_degrees:
            return degrees < self.star_degrees
        if self.star_form is None:
            self.star_form = canonical_facets(self.partial.link((1,)))
        return canonical_facets(self.partial.link((v,))) < self.star_form

    def _check(self, facet: Facet) -> bool:
        P = self.partial
        if L10_4 in self.rules:
            for triangle in itertools.combinations(facet, 3):
                if not prune_closed_triangle(P, triangle):
                    return self._prune(L10_4)
        finished = [v for v in facet if P.is_finished(v)]
        self.finished_stack[-1].extend(finished)
        for v in finished:
            if not P.link_is_sphere(v):
                return self._prune("vertex link")
            if L10_4 in self.rules and empty_triangles(P, v):
                return self._prune(L10_4)
            if not self._check_finished_edges(v):
                return False
            if (v != 1 and P.degree(v) == self.max_degree and
                    self._comes_before_star(v)):
                return self._prune("star order")
        if finished:
            if L10_7 in self.rules and not self._record_floors(finished):
                return self._prune(L10_7)
            if f1_ceiling(P, self.max_degree) < self.f1_low:
                return self._prune("f1 ceiling")
        if (F1_BOUND in self.rules and
                f1_floor(P, self.rules, self.floors) > self.f1_high):
            return self._prune(F1_BOUND)
        return True

    def _check_finished_edges(self, v: int) -> bool:
        P = self.partial
        for u in sorted(P.neighbors[v]):
            if not P.is_finished(u):
                continue
            edge = (min(u, v), max(u, v))
            if L10_2 in self.rules and not prune_link_intersection(P, edge):
                return self._prune(L10_2)
            if L11_1 in self.rules and not prune_unique_w(P, edge):
                return self._prune(L11_1)
        return True

    def _record_floors(self, finished: Sequence[int]) -> bool:
        P = self.partial
        merged = dict(self.floors)
        for v in finished:
            floors = {}
            for w, floor in neighbor_floors(P, v).items():
                if floor > self.max_degree:
                    return False
                if P.is_finished(w):
                    if P.degree(w) < floor:
                        return False
                    if P.degree(v) < self.floors_from.get(w, {}).get(v, 0):
                        return False
                else:
                    floors[w] = floor
                    merged[w] = max(merged.get(w, 0), floor)
            self.floors_from[v] = floors
        self.floors = merged
        return True


def _search(task: EnumerationTask) -> List[CensusRecord]:
    search = _StarSearch(task)
    seen: Set[str] = set()
    records = []
    for K in search.run():
        facets, digest = canonicalize(K)
        if digest in seen:
            continue
        seen.add(digest)
        records.append(CensusRecord.from_canonical(facets, digest,
                                                   task.task_id))
    logger.debug("Subtask %s: %d records, %d nodes, prunes %s", task.task_id,
                 len(records), search.nodes, dict(search.prunes))
    return records


def enumerate(task: EnumerationTask) -> Iterator[CensusRecord]:
    """
    Streams every closed 3-manifold triangulation of the task that passes
    the enabled rules, once per isomorphism class.

    :param task: Task to run.
    :raises InfeasibleTaskError: When the admissible f1 range is empty.
    :return: Iterator over records in a fixed order.
    """
    low, high = task.effective_range
    logger.info("Enumerating f0=%d, f1 in %d..%d", task.f0, low, high)
    seen: Set[str] = set()
    for subtask in split_task(task):
        for record in _search(subtask):
            if record.digest not in seen:
                seen.add(record.digest)
                yield record
        logger.info("Finished %s, %d records so far", subtask.task_id,
                    len(seen))


def merge_records(batches: Iterable[Iterable[CensusRecord]]
                  ) -> List[CensusRecord]:
    """Deduplicates by digest keeping the first record, sorted by digest."""
    merged: Dict[str, CensusRecord] = {}
    for batch in batches:
        for record in batch:
            merged.setdefault(record.digest, record)
    return [merged[digest] for digest in sorted(merged)]


def enumerate_parallel(task: EnumerationTask,
                       jobs: int = 1) -> List[CensusRecord]:
    """
    Runs the subtasks of :func:`split_task` on ``jobs`` processes and
    merges them.

    :param task: Task to run.
    :param jobs: Number of worker processes, 1 runs in process.
    :return: Records sorted by digest.
    """
    subtasks = split_task(task)
    if jobs == 1:
        batches = [_search(subtask) for subtask in subtasks]
    else:
        batches = Parallel(n_jobs=jobs)(delayed(_search)(subtask)
                                        for subtask in subtasks)
    return merge_records(batches)


def filter_missing_facets(records: Iterable[CensusRecord]
                          ) -> MissingFacetReport:
    """Keeps the records without missing facets, counting both sets."""
    records = list(records)
    kept = tuple(r for r in records if r.missing_facets == 0)
    return MissingFacetReport(len(records), len(kept), kept)


def census_summary(records: Iterable[CensusRecord]) -> List[CensusRow]:
    """
    Groups records by vertex count and homology.

    :return: Rows sorted by f0, then homology.
    """
    groups: Dict[Tuple[int, str], List[CensusRecord]] = {}
    for record in records:
        key = (record.f_vector[0], record.homology.format())
        groups.setdefault(key, []).append(record)
    rows = []
    for (f0, homology), group in sorted(groups.items()):
        f1s = [r.f_vector[1] for r in group]
        g2s = [r.g2 for r in group]
        rows.append(CensusRow(group[0].homology.name_hint or homology,
                              homology, f0, min(f1s), max(f1s), min(g2s),
                              max(g2s), len(group)))
    return rows


def g2_minimal_candidates(records: Iterable[CensusRecord],
                          g2_cap: int) -> List[CensusRecord]:
    """
    Records that can still be g2-irreducible: g2 at most the cap, no missing
    facets, not the boundary of the 4-simplex, and minimal g2 within their
    homology class.

    :return: Candidates sorted by g2, then digest.
    """
    by_class: Dict[str, List[CensusRecord]] = {}
    for record in records:
        if (record.g2 > g2_cap or record.missing_facets or
                record.f_vector[0] == 5):
            continue
        by_class.setdefault(record.homology.format(), []).append(record)
    candidates = []
    for group in by_class.values():
        lowest = min(r.g2 for r in group)
        candidates.extend(r for r in group if r.g2 == lowest)
    return sorted(candidates, key=lambda r: (r.g2, r.digest))
