"""
Integral simplicial homology of closed 3-manifold triangulations.

Boundary matrices are reduced in two stages: sparse elimination on unit
pivots first (boundary matrices consist almost entirely of them), then the
remaining core goes through :func:`sympy.matrices.normalforms.invariant_factors`.
"""
import functools
import logging
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Set, Tuple

import sympy
from sympy.matrices.normalforms import invariant_factors
from sympy.polys.domains import ZZ

from .complex import Complex
from .errors import NotPrimeError, UnexpectedComplexError

logger = logging.getLogger(__name__)


@dataclass
class IntegerMatrix:
    """Sparse integer matrix, ``entries`` maps ``(row, col)`` to a nonzero."""
    rows: int
    cols: int
    entries: Dict[Tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("Matrix extents have to be nonnegative")

    @classmethod
    def from_dense(cls, values: List[List[int]]) -> "IntegerMatrix":
        rows = len(values)
        cols = len(values[0]) if values else 0
        entries = {(i, j): int(v) for i, row in enumerate(values)
                   for j, v in enumerate(row) if v}
        return cls(rows, cols, entries)

    def to_dense(self) -> List[List[int]]:
        dense = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), value in self.entries.items():
            dense[i][j] = value
        return dense

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError("Matrix extents don't match")
        by_row: Dict[int, List[Tuple[int, int]]] = {}
        for (i, j), value in other.entries.items():
            by_row.setdefault(i, []).append((j, value))
        product: Dict[Tuple[int, int], int] = {}
        for (i, k), value in self.entries.items():
            for j, other_value in by_row.get(k, ()):
                product[(i, j)] = product.get((i, j), 0) + value * other_value
        return IntegerMatrix(self.rows, other.cols,
                             {key: v for key, v in product.items() if v})


def boundary_matrix(K: Complex, k: int) -> IntegerMatrix:
    """
    Matrix of the simplicial boundary map from k-faces to (k-1)-faces. Rows
    and columns follow the sorted face lists; deleting the i-th vertex of a
    sorted face has sign ``(-1)^i``.

    :param K: Complex.
    :param k: Dimension, 1..3.
    :return: Matrix with ``f_(k-1)`` rows and ``f_k`` columns.
    """
    if not 1 <= k <= 3:
        raise ValueError(f"Boundary dimension has to be in 1..3, got {k}")
    row_faces = K.faces(k)
    col_faces = K.faces(k + 1)
    index = {face: i for i, face in enumerate(row_faces)}
    entries = {}
    for j, face in enumerate(col_faces):
        for i in range(len(face)):
            entries[(index[face[:i] + face[i + 1:]], j)] = (-1) ** i
    return IntegerMatrix(len(row_faces), len(col_faces), entries)


def _divisibility_chain(values: List[int]) -> Tuple[int, ...]:
    chain = sorted(abs(v) for v in values if v)
    for i in range(len(chain)):
        for j in range(i + 1, len(chain)):
            a, b = chain[i], chain[j]
            chain[i], chain[j] = math.gcd(a, b), a * b // math.gcd(a, b)
    return tuple(chain)


def _eliminate_unit_pivots(M: IntegerMatrix
                           ) -> Tuple[int, Dict[int, Dict[int, int]]]:
    """
    Clears unit pivots by row operations and removes their rows and columns.

    :return: Tuple of pivot count and the remaining rows.
    """
    rows: Dict[int, Dict[int, int]] = {}
    cols: Dict[int, Set[int]] = {}
    for (i, j), value in M.entries.items():
        rows.setdefault(i, {})[j] = value
        cols.setdefault(j, set()).add(i)
    pivots = 0
    progress = True
    while progress:
        progress = False
        for r in sorted(rows):
            row = rows.get(r)
            if not row:
                continue
            units = [c for c, v in row.items() if abs(v) == 1]
            if not units:
                continue
            c = min(units, key=lambda col: (len(cols[col]), col))
            unit = row[c]
            for other in sorted(cols[c] - {r}):
                target = rows[other]
                factor = target[c] * unit
                for col, value in row.items():
                    updated = target.get(col, 0) - factor * value
                    if updated:
                        target[col] = updated
                        cols[col].add(other)
                    else:
                        target.pop(col, None)
                        cols[col].discard(other)
                if not target:
                    del rows[other]
            for col in row:
                cols[col].discard(r)
            del rows[r]
            pivots += 1
            progress = True
    return pivots, rows


@functools.lru_cache(maxsize=64)
def _reduced(M_key: Tuple[int, int, Tuple[Tuple[Tuple[int, int], int], ...]]
             ) -> Tuple[int, Tuple[int, ...]]:
    rows, cols, items = M_key
    pivots, rest = _eliminate_unit_pivots(IntegerMatrix(rows, cols,
                                                        dict(items)))
    if not rest:
        return pivots, ()
    row_ids = sorted(rest)
    col_ids = sorted({c for row in rest.values() for c in row})
    logger.debug("Residual core %dx%d after %d unit pivots",
                 len(row_ids), len(col_ids), pivots)
    core = sympy.Matrix(len(row_ids), len(col_ids),
                        lambda i, j: rest[row_ids[i]].get(col_ids[j], 0))
    factors = [int(f) for f in invariant_factors(core, domain=ZZ)]
    return pivots, _divisibility_chain(factors)


def _key(M: IntegerMatrix):
    return M.rows, M.cols, tuple(sorted(M.entries.items()))


def smith_normal_form(M: IntegerMatrix) -> Tuple[Tuple[int, ...], int]:
    """
    Nonzero diagonal of the Smith normal form.

    >>> smith_normal_form(IntegerMatrix.from_dense([[2, 0], [0, 3]]))
    ((1, 6), 2)

    :param M: Matrix.
    :return: Tuple of the diagonal ``d_1 | d_2 | ... | d_r`` and the rank r.
    """
    pivots, core = _reduced(_key(M))
    diagonal = (1,) * pivots + core
    diagonal = _divisibility_chain(list(diagonal))
    return diagonal, len(diagonal)


@dataclass(frozen=True)
class HomologyProfile:
    """
    Integral homology ``H_k = Z^betti[k] + Z_t1 + ... `` for k = 0..3.

    >>> HomologyProfile((1, 0, 0, 1), ((), (2,), (), ())).format()
    'Z, Z_2, 0, Z'
    """
    betti: Tuple[int, int, int, int]
    torsion: Tuple[Tuple[int, ...], ...]

    def group(self, k: int) -> str:
        parts = []
        if self.betti[k] == 1:
            parts.append("Z")
        elif self.betti[k] > 1:
            parts.append(f"Z^{self.betti[k]}")
        parts.extend(f"Z_{t}" for t in self.torsion[k])
        return " + ".join(parts) if parts else "0"

    def format(self) -> str:
        return ", ".join(self.group(k) for k in range(4))

    def __str__(self) -> str:
        return self.format()

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** k * b for k, b in enumerate(self.betti))

    @property
    def names(self) -> Tuple[str, ...]:
        """Known manifolds with this homology, see :func:`name_hints`."""
        return name_hints(self)

    @property
    def is_ambiguous(self) -> bool:
        """Whether several known manifolds share this homology."""
        return len(self.names) > 1

    @property
    def name_hint(self) -> str:
        return "/".join(self.names)


def lens_space_names(p: int) -> Tuple[str, ...]:
    """
    Homeomorphism classes of lens spaces ``L(p, q)``: ``L(p, q)`` and
    ``L(p, q')`` coincide iff ``q' = +-q^(+-1) mod p``.

    :param p: Order of the fundamental group, at least 2.
    :return: Names of one representative per class, smallest q first.
    """
    if p == 2:
        return ("RP^3",)
    seen: Set[int] = set()
    names = []
    for q in range(1, p):
        if math.gcd(p, q) != 1 or q in seen:
            continue
        inverse = pow(q, -1, p)
        seen.update({q, p - q, inverse, p - inverse})
        names.append(f"L({p},{q})")
    return tuple(names)


# small profiles of known 3-manifolds, keyed by formatted homology
_NAMED_PROFILES = {
    "Z, 0, 0, Z": ("S^3",),
    "Z, Z, Z, Z": ("S^2xS^1",),
    "Z, Z, Z_2, 0": ("S^2~S^1",),
    "Z, Z^3, Z^3, Z": ("T^3",),
    "Z, Z_2 + Z_2, Z_2, 0": ("RP^2xS^1",),
}
LENS_SPACE_ORDERS = range(2, 13)


def name_hints(profile: HomologyProfile) -> Tuple[str, ...]:
    """
    Names of the known manifolds (lens spaces up to order 12, sphere bundles
    over the circle, a few others) matching a homology profile. Homology
    alone can't tell them apart; an empty answer means nothing is known.
    """
    text = profile.format()
    if text in _NAMED_PROFILES:
        return _NAMED_PROFILES[text]
    if (profile.betti == (1, 0, 0, 1) and len(profile.torsion[1]) == 1 and
            not profile.torsion[2] and
            profile.torsion[1][0] in LENS_SPACE_ORDERS):
        return lens_space_names(profile.torsion[1][0])
    return ()


def _boundary_reductions(K: Complex) -> List[Tuple[Tuple[int, ...], int]]:
    return [smith_normal_form(boundary_matrix(K, k)) for k in (1, 2, 3)]


def integral_homology(K: Complex) -> HomologyProfile:
    """
    Integral homology of a valid connected complex.

    :param K: Complex.
    :return: Betti numbers and torsion coefficients of H_0..H_3.
    """
    reductions = _boundary_reductions(K)
    ranks = [0] + [rank for _, rank in reductions] + [0]
    faces = [len(K.faces(k + 1)) for k in range(4)]
    betti = tuple(faces[k] - ranks[k] - ranks[k + 1] for k in range(4))
    torsion = tuple(tuple(d for d in reductions[k][0] if d > 1)
                    if k < 3 else () for k in range(4))
    profile = HomologyProfile(betti, torsion)  # type: ignore
    logger.debug("Homology of %s: %s", K, profile)
    return profile


def _is_prime(p: int) -> bool:
    return bool(sympy.isprime(p))


def betti_mod_p(K: Complex, p: int) -> Tuple[int, int, int, int]:
    """
    Betti numbers with ``Z_p`` coefficients.

    :param K: Complex.
    :param p: Prime.
    :raises NotPrimeError: When p isn't prime.
    :return: Ranks of H_0..H_3 over ``Z_p``.
    """
    if not _is_prime(p):
        raise NotPrimeError(p)
    ranks = [0]
    for diagonal, _ in _boundary_reductions(K):
        ranks.append(sum(1 for d in diagonal if d % p))
    ranks.append(0)
    faces = [len(K.faces(k + 1)) for k in range(4)]
    return tuple(faces[k] - ranks[k] - ranks[k + 1]  # type: ignore
                 for k in range(4))


def _facet_orientations(K: Complex) -> Optional[Dict[tuple, int]]:
    """Coherent facet signs, None when none exist."""
    if not K.facets:
        return {}
    signs = {K.facets[0]: 1}
    queue = deque([K.facets[0]])
    while queue:
        facet = queue.popleft()
        for i in range(4):
            triangle = facet[:i] + facet[i + 1:]
            for other in K.star(triangle):
                if other == facet:
                    continue
                j = next(index for index, v in enumerate(other)
                         if v not in triangle)
                wanted = -signs[facet] * (-1) ** (i + j)
                if other not in signs:
                    signs[other] = wanted
                    queue.append(other)
                elif signs[other] != wanted:
                    return None
    return signs


def orientable(K: Complex, cross_check: bool = False) -> bool:
    """
    Whether K has a coherent facet orientation, found by propagating signs
    across triangles.

    :param K: Valid connected complex.
    :param cross_check: Also compare with ``H_3 = Z``.
    :raises UnexpectedComplexError: When the cross check disagrees.
    """
    result = _facet_orientations(K) is not None
    if cross_check and result != (integral_homology(K).betti[3] == 1):
        raise UnexpectedComplexError(
            "Orientation propagation disagrees with top homology")
    return result


def euler_characteristic(K: Complex) -> int:
    f0, f1, f2, f3 = K.f_vector()
    return f0 - f1 + f2 - f3
