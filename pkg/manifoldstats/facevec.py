"""
Exact face-vector algebra: f-, h- and g-vectors for dimensions up to 10,
the surgery deltas of facet subdivision, handle addition and connected sum,
and the closed-form bounds on g2 and f0.

All arithmetic is integral or rational. The only square roots are taken with
:func:`math.isqrt` and checked exactly.
"""
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .errors import (DimensionMismatchError, DimensionTooSmallError,
                     InvalidEulerError)

MAX_DIMENSION = 10


@dataclass(frozen=True)
class FaceVector:
    """
    Face counts ``(f_-1 = 1, f_0, ..., f_d)`` of a d-dimensional complex.

    >>> FaceVector.from_counts((5, 10, 10, 5))
    FaceVector(d=3, counts=(1, 5, 10, 10, 5))
    """
    d: int
    counts: Tuple[int, ...]

    def __post_init__(self) -> None:
        if not 1 <= self.d <= MAX_DIMENSION:
            raise ValueError(f"Dimension has to be in 1..{MAX_DIMENSION}")
        if len(self.counts) != self.d + 2 or self.counts[0] != 1:
            raise ValueError("Counts have to be (1, f_0, ..., f_d)")
        if any(c < 0 for c in self.counts):
            raise ValueError("Face counts have to be nonnegative")

    @classmethod
    def from_counts(cls, counts: Tuple[int, ...]) -> "FaceVector":
        """Builds a face vector from ``(f_0, ..., f_d)``."""
        return cls(len(counts) - 1, (1,) + tuple(counts))

    def f(self, k: int) -> int:
        """Number of k-faces, ``k = -1..d``."""
        return self.counts[k + 1]

    @property
    def proper(self) -> Tuple[int, ...]:
        """Counts without ``f_-1``."""
        return self.counts[1:]

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.proper) + ")"


@dataclass(frozen=True)
class HVector:
    entries: Tuple[int, ...]

    def __str__(self) -> str:
        return "(" + ",".join(str(h) for h in self.entries) + ")"


@dataclass(frozen=True)
class GVector:
    """Entries ``g_0..g_floor((d+1)/2)``; ``g_0 = 1``."""
    entries: Tuple[int, ...]

    def g(self, k: int) -> int:
        return self.entries[k]

    def __str__(self) -> str:
        return "(" + ",".join(str(g) for g in self.entries) + ")"


@dataclass(frozen=True)
class TightNeighborlyRow:
    """Vertex count f0 of a tight-neighborly triangulation with k summands."""
    f0: int
    k: int


@dataclass(frozen=True)
class SurgeryPrediction:
    """Predicted face vector of a surgery result and its g-vector change."""
    f: FaceVector
    g: GVector
    g_delta: Tuple[int, ...]


def f_from_pair(f0: int, f1: int) -> FaceVector:
    """
    Full face vector of a closed 3-manifold triangulation from f0 and f1.

    :return: ``(f0, f1, 2 f1 - 2 f0, f1 - f0)``.
    """
    return FaceVector.from_counts((f0, f1, 2 * f1 - 2 * f0, f1 - f0))


def h_vector(f: FaceVector) -> HVector:
    """
    h-vector ``h_k = sum_i (-1)^(k-i) C(d+1-i, d+1-k) f_(i-1)``.

    :param f: Face vector.
    :return: Entries ``h_0..h_(d+1)``.
    """
    d = f.d
    entries = []
    for k in range(d + 2):
        entries.append(sum((-1) ** (k - i) * math.comb(d + 1 - i, d + 1 - k)
                           * f.f(i - 1) for i in range(k + 1)))
    return HVector(tuple(entries))


def g_vector(f: FaceVector) -> GVector:
    """
    g-vector ``g_0 = 1``, ``g_k = h_k - h_(k-1)`` for
    ``k = 1..floor((d+1)/2)``. For d = 3 this is ``(1, f0 - 5,
    f1 - 4 f0 + 10)``.
    """
    h = h_vector(f).entries
    top = (f.d + 1) // 2
    return GVector((1,) + tuple(h[k] - h[k - 1] for k in range(1, top + 1)))


def g2(f0: int, f1: int) -> int:
    """g2 of a closed 3-manifold triangulation."""
    return f1 - 4 * f0 + 10


def predict_surgery(f: FaceVector, op: str,
                    other: Optional[FaceVector] = None) -> SurgeryPrediction:
    """
    Face vector after facet subdivision (``"S"``), handle addition (``"H"``)
    or connected sum (``"#"``, with ``other``).

    - S: ``f_k += C(d+1, k)`` for ``k < d``, ``f_d += d``.
    - H: ``f_k -= C(d+1, k+1)`` for ``k < d``, ``f_d -= 2``.
    - #: ``f_k = f_k + f'_k - C(d+1, k+1)`` for ``k < d``,
      ``f_d = f_d + f'_d - 2``.

    :param f: Face vector of the operand.
    :param op: One of ``"S"``, ``"H"``, ``"#"``.
    :param other: Second operand for ``"#"``.
    :raises DimensionMismatchError: When ``#`` operands differ in dimension.
    :return: Prediction holding the result, its g-vector and the change of
        every g entry against ``f`` (against the sum of both operands' g
        entries for ``#``, with ``g_0`` counted once).
    """
    d = f.d
    counts = list(f.proper)
    if op == "S":
        new = [c + math.comb(d + 1, k) for k, c in enumerate(counts[:-1])]
        new.append(counts[-1] + d)
    elif op == "H":
        new = [c - math.comb(d + 1, k + 1) for k, c in enumerate(counts[:-1])]
        new.append(counts[-1] - 2)
    elif op == "#":
        if other is None:
            raise ValueError("Connected sum needs a second face vector")
        if other.d != d:
            raise DimensionMismatchError(
                f"Can't form connected sum of dimensions {d} and {other.d}")
        new = [c + o - math.comb(d + 1, k + 1) for k, (c, o)
               in enumerate(zip(counts[:-1], other.proper[:-1]))]
        new.append(counts[-1] + other.proper[-1] - 2)
    else:
        raise ValueError(f"Unknown surgery operation '{op}'")
    result = FaceVector.from_counts(tuple(new))
    g_new = g_vector(result).entries
    g_old = list(g_vector(f).entries)
    if op == "#" and other is not None:
        g_old = [1] + [a + b for a, b
                       in zip(g_old[1:], g_vector(other).entries[1:])]
    delta = tuple(a - b for a, b in zip(g_new, g_old))
    return SurgeryPrediction(result, GVector(g_new), delta)


def predicted_g_delta(d: int, op: str) -> Tuple[int, ...]:
    """
    Closed-form g-vector change of a surgery, independent of the operand.

    - S: ``g_1 + 1``.
    - H: ``g_1 - (d+1)``, ``g_k + (-1)^k C(d+2, k)`` for ``k >= 2``.
    - #: ``g_1 + 1`` on top of the sum of both operands.

    :return: Changes of ``g_0..g_floor((d+1)/2)``.
    """
    top = (d + 1) // 2
    delta = [0] * (top + 1)
    if op in ("S", "#"):
        delta[1] = 1
    elif op == "H":
        delta[1] = -(d + 1)
        for k in range(2, top + 1):
            delta[k] = (-1) ** k * math.comb(d + 2, k)
    else:
        raise ValueError(f"Unknown surgery operation '{op}'")
    return tuple(delta)


def g2_lower_bound(d: int, beta1: int) -> int:
    """
    Lower bound ``C(d+2, 2) * beta1`` on g2 of a d-manifold with first Betti
    number beta1 over a field it is orientable over.

    :raises DimensionTooSmallError: When d < 3.
    """
    if d < 3:
        raise DimensionTooSmallError(d)
    if beta1 < 0:
        raise ValueError("Betti number has to be nonnegative")
    return math.comb(d + 2, 2) * beta1


def _ceil_half_plus_sqrt(base: int, radicand: int) -> int:
    """``ceil((base + sqrt(radicand)) / 2)`` for nonnegative integers."""
    root = math.isqrt(radicand)
    assert root * root <= radicand < (root + 1) ** 2
    if root * root == radicand:
        return -(-(base + root) // 2)
    # sqrt is irrational and lies strictly between root and root + 1
    return (base + root) // 2 + 1


def min_vertices(d: int, beta1: int) -> int:
    """
    Smallest f0 allowed by the g2 lower bound,
    ``ceil(((2d+3) + sqrt(1 + 4(d+1)(d+2) beta1)) / 2)``.

    :raises DimensionTooSmallError: When d < 3.
    """
    if d < 3:
        raise DimensionTooSmallError(d)
    if beta1 < 0:
        raise ValueError("Betti number has to be nonnegative")
    return _ceil_half_plus_sqrt(2 * d + 3,
                                1 + 4 * (d + 1) * (d + 2) * beta1)


def heawood_min_vertices(chi: int) -> int:
    """
    Heawood bound ``ceil((7 + sqrt(49 - 24 chi)) / 2)`` on the vertex count of
    a surface with Euler characteristic chi. The genus 2 surface needs one
    vertex more than this bound; no adjustment is made.

    :raises InvalidEulerError: When chi > 2.
    """
    if chi > 2:
        raise InvalidEulerError(chi)
    return _ceil_half_plus_sqrt(7, 49 - 24 * chi)


def tight_neighborly_rows(m_max: int) -> List[TightNeighborlyRow]:
    """
    Parameters (f0, k) solving ``(f0 - 9) f0 / 20 = k - 1`` for
    ``m = 0..m_max``, rows with f0 < 5 dropped.
    """
    if m_max < 0:
        raise ValueError("m_max has to be nonnegative")
    rows = []
    for m in range(m_max + 1):
        for f0, k in ((20 * m, 20 * m * m - 9 * m + 1),
                      (4 + 20 * m, 20 * m * m - m),
                      (5 + 20 * m, 20 * m * m + m),
                      (9 + 20 * m, 20 * m * m + 9 * m + 1)):
            if f0 >= 5:
                rows.append(TightNeighborlyRow(f0, k))
    return rows


def mu_statistic(f: FaceVector) -> Fraction:
    """
    ``f1 - 9/2 f0``; g2-irreducible triangulations have it above 1/2.

    :raises DimensionMismatchError: When f isn't 3-dimensional.
    """
    if f.d != 3:
        raise DimensionMismatchError("mu statistic is defined for d=3 only")
    return Fraction(f.f(1)) - Fraction(9, 2) * f.f(0)


IRREDUCIBILITY_THRESHOLD = Fraction(1, 2)


def passes_mu_filter(f: FaceVector) -> bool:
    return mu_statistic(f) > IRREDUCIBILITY_THRESHOLD


def admissible_pairs(g2_cap: int) -> List[Tuple[int, int]]:
    """
    All (f0, f1) with ``f1 > 9/2 f0 + 1/2``, ``f1 - 4 f0 + 10 <= g2_cap`` and
    ``f1 <= C(f0, 2)``, sorted.

    :param g2_cap: Upper bound on g2.
    :return: Sorted list of pairs.
    """
    if g2_cap < 0:
        raise ValueError("g2 cap has to be nonnegative")
    pairs = []
    # 9 f0 + 1 < 2 f1 <= 2 (4 f0 - 10 + cap) forces f0 < 2 cap - 21
    for f0 in range(5, max(5, 2 * g2_cap - 20)):
        low = (9 * f0 + 1) // 2 + 1
        high = min(4 * f0 - 10 + g2_cap, math.comb(f0, 2))
        pairs.extend((f0, f1) for f1 in range(low, high + 1))
    return pairs


def f1_range_for(f0: int, g2_cap: Optional[int] = None) -> Tuple[int, int]:
    """Admissible f1 interval for f0 (possibly empty, low > high)."""
    low = (9 * f0 + 1) // 2 + 1
    high = math.comb(f0, 2)
    if g2_cap is not None:
        high = min(high, 4 * f0 - 10 + g2_cap)
    return low, high
