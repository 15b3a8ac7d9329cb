import itertools
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Set, Tuple

import networkx as nx

from .complex import Complex, Facet, compress_labels, validate
from .errors import (DistanceTooSmallError, FacetsShareVerticesError,
                     NotAFacetError, ResultNotManifoldError)
from .moves import MoveDescriptor, apply
from .utils import parse_pairs

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FacetMatching:
    """
    Vertex bijection between two facets. ``orientation_tag`` is metadata
    only (``"+"`` or ``"-"``).

    >>> FacetMatching.parse("1:6,2:7,3:8,4:9")
    FacetMatching(facet_a=(1, 2, 3, 4), facet_b=(6, 7, 8, 9), pairing=((1, 6), (2, 7), (3, 8), (4, 9)), orientation_tag='+')
    """
    facet_a: Facet
    facet_b: Facet
    pairing: Tuple[Tuple[int, int], ...]
    orientation_tag: str = "+"

    def __post_init__(self) -> None:
        lefts = sorted(a for a, _ in self.pairing)
        rights = sorted(b for _, b in self.pairing)
        if (len(set(lefts)) != 4 or len(set(rights)) != 4 or
                lefts != list(self.facet_a) or
                rights != list(self.facet_b)):
            raise ValueError("Pairing has to be a bijection of the facets")
        if self.orientation_tag not in ("+", "-"):
            raise ValueError("Orientation tag has to be '+' or '-'")

    @classmethod
    def from_pairs(cls, pairs: Sequence[Tuple[int, int]],
                   orientation_tag: str = "+") -> "FacetMatching":
        pairing = tuple(sorted((int(a), int(b)) for a, b in pairs))
        return cls(tuple(sorted(a for a, _ in pairing)),  # type: ignore
                   tuple(sorted(b for _, b in pairing)),  # type: ignore
                   pairing, orientation_tag)

    @classmethod
    def parse(cls, text: str, orientation_tag: str = "+") -> "FacetMatching":
        """
        Parses ``a1:b1,a2:b2,a3:b3,a4:b4``.

        :raises ValueError: When the text isn't a bijection of two 4-sets.
        """
        return cls.from_pairs(parse_pairs(text), orientation_tag)

    @classmethod
    def in_order(cls, facet_a: Sequence[int], facet_b: Sequence[int],
                 orientation_tag: str = "+") -> "FacetMatching":
        """Pairs the sorted vertices of both facets position by position."""
        return cls.from_pairs(list(zip(sorted(facet_a), sorted(facet_b))),
                              orientation_tag)

    def as_dict(self) -> Dict[int, int]:
        return dict(self.pairing)


@dataclass(frozen=True)
class SplitResult:
    """
    Outcome of cutting along a missing facet: ``"connected_sum"`` with both
    capped summands, or ``"handle"`` with no parts.
    """
    kind: str
    parts: Tuple[Complex, ...] = ()


def _require_facet(K: Complex, facet: Sequence[int]) -> Facet:
    key = tuple(sorted(facet))
    if key not in K.facet_set:
        raise NotAFacetError(key)
    return key  # type: ignore


def subdivide(K: Complex, facet: Sequence[int]) -> Complex:
    """
    Subdivides a facet with the new vertex ``f0 + 1`` (the 0-move).

    :raises NotAFacetError: When facet isn't a facet of K.
    """
    key = _require_facet(K, facet)
    return apply(K, MoveDescriptor(0, key, (K.vertex_count + 1,)))


def connected_sum(K1: Complex, K2: Complex,
                  matching: FacetMatching) -> Complex:
    """
    Connected sum along ``matching.facet_a`` of K1 and ``matching.facet_b``
    of K2. K2's paired vertices take their partners' labels, its other
    vertices follow K1's in increasing order.

    :raises NotAFacetError: When a matched facet is missing.
    :return: Complex with ``f0(K1) + f0(K2) - 4`` vertices.
    """
    facet_a = _require_facet(K1, matching.facet_a)
    facet_b = _require_facet(K2, matching.facet_b)
    pairing = {b: a for a, b in matching.pairing}
    rest = [v for v in K2.vertices if v not in pairing]
    mapping = dict(pairing)
    mapping.update({v: K1.vertex_count + i
                    for i, v in enumerate(rest, start=1)})
    facets = [f for f in K1.facets if f != facet_a]
    facets.extend(tuple(mapping[v] for v in f) for f in K2.facets
                  if f != facet_b)
    result = Complex(facets, K1.vertex_count + len(rest))
    result.check_relations()
    logger.debug("Connected sum %s # %s -> %s", K1, K2, result)
    return result


def skeleton_distance(K: Complex, u: int, v: int,
                      cutoff: Optional[int] = None) -> Optional[int]:
    """1-skeleton distance, None when larger than cutoff or disconnected."""
    lengths = nx.single_source_shortest_path_length(K.skeleton_graph, u,
                                                    cutoff=cutoff)
    return lengths.get(v)


def add_handle(K: Complex, matching: FacetMatching) -> Complex:
    """
    Identifies two facets of K vertex by vertex and removes the interior of
    the identified facet. Labels are compressed onto ``1..f0 - 4``.

    :raises NotAFacetError: When a matched facet is missing.
    :raises FacetsShareVerticesError: When the facets share a vertex.
    :raises DistanceTooSmallError: When some paired vertices are closer than
        3 in the 1-skeleton.
    :raises ResultNotManifoldError: When the result fails validation.
    """
    facet_a = _require_facet(K, matching.facet_a)
    facet_b = _require_facet(K, matching.facet_b)
    if set(facet_a) & set(facet_b):
        raise FacetsShareVerticesError(
            f"Facets {facet_a} and {facet_b} share vertices")
    for a, b in matching.pairing:
        distance = skeleton_distance(K, a, b, cutoff=2)
        if distance is not None:
            raise DistanceTooSmallError((a, b), distance)
    identify = {b: a for a, b in matching.pairing}
    facets = {tuple(sorted(identify.get(v, v) for v in f))
              for f in K.facets if f not in (facet_a, facet_b)}
    if len(facets) != len(K.facets) - 2:
        raise ResultNotManifoldError("Identification merged facets")
    result = compress_labels(facets)
    report = validate(result)
    if not report.is_manifold:
        raise ResultNotManifoldError(
            f"Handle result is not a manifold: {report.first_violation}")
    result.check_relations()
    return result


def far_facet_pairs(K: Complex,
                    limit: Optional[int] = None) -> List[Tuple[Facet, Facet]]:
    """
    Facet pairs whose vertices are pairwise at 1-skeleton distance at least
    3, so any pairing is admissible for :func:`add_handle`. The search is
    plain enumeration; an empty answer is common for small complexes.

    :param limit: Stop after this many pairs.
    """
    near: Dict[int, Set[int]] = {}
    for v in K.vertices:
        near[v] = set(nx.single_source_shortest_path_length(
            K.skeleton_graph, v, cutoff=2))
    found = []
    for facet_a, facet_b in itertools.combinations(K.facets, 2):
        close = set().union(*(near[v] for v in facet_a))
        if not close & set(facet_b):
            found.append((facet_a, facet_b))
            if limit is not None and len(found) >= limit:
                break
    return found


def missing_facets(K: Complex) -> List[Tuple[int, int, int, int]]:
    """
    Vertex 4-sets that aren't facets although all their triangles are faces.

    :return: Sorted list of missing facets.
    """
    triangles = set(K.faces(3))
    found = []
    for a, b, c in K.faces(3):
        common = K.neighbors[a] & K.neighbors[b] & K.neighbors[c]
        for x in sorted(w for w in common if w > c):
            sigma = (a, b, c, x)
            if sigma in K.facet_set:
                continue
            if ((a, b, x) in triangles and (a, c, x) in triangles and
                    (b, c, x) in triangles):
                found.append(sigma)
    return sorted(found)


def split_along_missing_facet(K: Complex,
                              sigma: Sequence[int]) -> SplitResult:
    """
    Cuts K along the boundary of a missing facet. When that 2-sphere
    separates, both sides are capped with sigma and returned; otherwise the
    verdict is ``"handle"`` and nothing is cut.

    :param sigma: A missing facet of K.
    :raises ValueError: When sigma isn't a missing facet.
    """
    key = tuple(sorted(sigma))
    if key not in missing_facets(K):
        raise ValueError(f"{key} is not a missing facet")
    cut = set(itertools.combinations(key, 3))
    graph = nx.Graph()
    graph.add_nodes_from(K.facets)
    for triangle in K.faces(3):
        if triangle not in cut:
            graph.add_edge(*K.star(triangle))
    components = sorted((sorted(c) for c in nx.connected_components(graph)),
                        key=lambda c: c[0])
    if len(components) == 1:
        return SplitResult("handle")
    parts = tuple(compress_labels(component + [key])
                  for component in components)
    for part in parts:
        part.check_relations()
    return SplitResult("connected_sum", parts)
