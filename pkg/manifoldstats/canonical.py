"""
Canonical labelling of pure simplicial complexes.

The canonical facet list is the lexicographically smallest sorted facet list
over all labellings reachable by individualization and refinement of the
vertex partition. Refinement starts from the vertex-facet incidence structure,
so the first partition already separates vertices by degree and edge-degree
profile. Every complex isomorphic to K reaches the same set of relabelled
facet lists, which makes the minimum an isomorphism invariant.
"""
import hashlib
from collections import defaultdict
from typing import Dict, List, Optional, Sequence, Tuple

from .complex import Complex

Facets = Tuple[Tuple[int, ...], ...]


def _refine(colors: Dict[int, int],
            incidence: Dict[int, List[Tuple[int, ...]]]) -> Dict[int, int]:
    cell_count = len(set(colors.values()))
    while True:
        signatures = {}
        for v, color in colors.items():
            around = sorted(tuple(sorted(colors[w] for w in facet if w != v))
                            for facet in incidence[v])
            signatures[v] = (color, tuple(around))
        ranks = {s: i for i, s in enumerate(sorted(set(signatures.values())))}
        refined = {v: ranks[signatures[v]] for v in colors}
        if len(ranks) == cell_count:
            return refined
        colors, cell_count = refined, len(ranks)


def _relabelled(facets: Sequence[Tuple[int, ...]],
                colors: Dict[int, int]) -> Facets:
    return tuple(sorted(tuple(sorted(colors[v] + 1 for v in facet))
                        for facet in facets))


def canonical_facets(facets: Sequence[Sequence[int]]) -> Facets:
    """
    Canonical form of a pure complex of any facet size.

    :param facets: Facets of the complex, labels arbitrary.
    :return: Canonical sorted facet list on labels ``1..n``.
    """
    facet_list = [tuple(f) for f in facets]
    incidence: Dict[int, List[Tuple[int, ...]]] = defaultdict(list)
    for facet in facet_list:
        for v in facet:
            incidence[v].append(facet)
    best: List[Optional[Facets]] = [None]

    def search(colors: Dict[int, int]) -> None:
        colors = _refine(colors, incidence)
        cells: Dict[int, List[int]] = defaultdict(list)
        for v, color in colors.items():
            cells[color].append(v)
        target = next((c for c in sorted(cells) if len(cells[c]) > 1), None)
        if target is None:
            candidate = _relabelled(facet_list, colors)
            if best[0] is None or candidate < best[0]:
                best[0] = candidate
            return
        for chosen in sorted(cells[target]):
            individualized = {}
            for v, color in colors.items():
                if color < target:
                    individualized[v] = 2 * color
                elif v == chosen:
                    individualized[v] = 2 * target
                else:
                    individualized[v] = 2 * color + 1
            search(individualized)

    search({v: 0 for v in incidence})
    return best[0] or ()


def facets_digest(facets: Facets) -> str:
    """
    Stable SHA-256 digest of a canonical facet list in facet file format.

    :param facets: Canonical facets.
    :return: Hex digest.
    """
    d = len(facets[0]) - 1 if facets else 3
    n = max((max(f) for f in facets), default=0)
    text = f"d={d} n={n}\n" + "".join(
        " ".join(str(v) for v in facet) + "\n" for facet in facets)
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def canonicalize(K: Complex) -> Tuple[Facets, str]:
    """
    Canonical facet list and isomorphism-invariant digest.

    :param K: Complex to canonicalize.
    :return: Tuple of canonical facets and their digest.
    """
    facets = canonical_facets(K.facets)
    return facets, facets_digest(facets)


def canonical_complex(K: Complex) -> Complex:
    """Relabels K into its canonical form."""
    return Complex(canonical_facets(K.facets), K.vertex_count)


def digest(K: Complex) -> str:
    """Isomorphism-invariant digest of K."""
    return canonicalize(K)[1]
