from typing import Any, Optional, Tuple


class ManifoldStatsError(Exception):
    """
    Base class of all errors raised for invalid input or impossible requests.
    The CLI maps every subclass to exit status 1.

    :param message: Exception message to print when raised.
    """

    def __init__(self, message: str) -> None:
        super().__init__(message)
        self.message = message

    def __str__(self) -> str:
        return self.message


class EmptyInputError(ManifoldStatsError):
    """Exception to raise when a facet list has no facets."""

    def __init__(self, message: str = "Facet list is empty") -> None:
        super().__init__(message)


class NonPureInputError(ManifoldStatsError):
    """
    Exception to raise when some facet doesn't have exactly four distinct
    vertices.

    :param facet: The offending facet.
    """

    def __init__(self, facet: Any,
                 custom_message: Optional[str] = None) -> None:
        self.facet = facet
        super().__init__(custom_message or
                         f"Facet {facet} doesn't have 4 distinct vertices")


class DuplicateFacetError(ManifoldStatsError):
    """
    Exception to raise when the same facet occurs twice in a facet list.

    :param facet: The repeated facet.
    """

    def __init__(self, facet: Tuple[int, ...]) -> None:
        self.facet = facet
        super().__init__(f"Facet {facet} occurs more than once")


class InvalidLabelsError(ManifoldStatsError):
    """
    Exception to raise when vertex labels aren't the contiguous range 1..f0
    and relabelling wasn't requested.
    """


class NotAFaceError(ManifoldStatsError):
    """
    Exception to raise when a simplex passed to a query isn't a face of the
    complex.

    :param simplex: The simplex that was looked up.
    """

    def __init__(self, simplex: Tuple[int, ...]) -> None:
        self.simplex = simplex
        super().__init__(f"{simplex} is not a face of the complex")


class NotAFacetError(ManifoldStatsError):
    """
    Exception to raise when a 4-set passed to surgery isn't a facet.

    :param simplex: The simplex that was looked up.
    """

    def __init__(self, simplex: Tuple[int, ...]) -> None:
        self.simplex = simplex
        super().__init__(f"{simplex} is not a facet of the complex")


class IllegalMoveError(ManifoldStatsError):
    """
    Exception to raise when a bistellar move can't be applied.

    :param reason: One of ``"link mismatch"``, ``"B present"`` and
        ``"B is face"``.
    :param move: The rejected move.
    """
    REASONS = ("link mismatch", "B present", "B is face")

    def __init__(self, reason: str, move: Any = None) -> None:
        self.reason = reason
        self.move = move
        message = f"Illegal move ({reason})"
        if move is not None:
            message += f": {move}"
        super().__init__(message)


class InvalidWeightsError(ManifoldStatsError):
    """
    Exception to raise when move weights are negative or all zero.

    :param weights: The rejected weights.
    """

    def __init__(self, weights: Any) -> None:
        self.weights = weights
        super().__init__(
            f"Move weights {weights} must be nonnegative with at least one "
            "positive weight")


class DimensionMismatchError(ManifoldStatsError):
    """Exception to raise when face vectors of different dimension meet."""


class DimensionTooSmallError(ManifoldStatsError):
    """
    Exception to raise when a bound is requested for a dimension it doesn't
    hold in.

    :param d: The rejected dimension.
    """

    def __init__(self, d: int, minimum: int = 3) -> None:
        self.d = d
        super().__init__(f"Dimension {d} is smaller than {minimum}")


class InvalidEulerError(ManifoldStatsError):
    """
    Exception to raise when a surface Euler characteristic exceeds 2.

    :param chi: The rejected Euler characteristic.
    """

    def __init__(self, chi: int) -> None:
        self.chi = chi
        super().__init__(f"Euler characteristic {chi} is greater than 2")


class NotPrimeError(ManifoldStatsError):
    """
    Exception to raise when a field characteristic isn't prime.

    :param p: The rejected number.
    """

    def __init__(self, p: int) -> None:
        self.p = p
        super().__init__(f"{p} is not a prime")


class FacetsShareVerticesError(ManifoldStatsError):
    """Exception to raise when handle facets aren't vertex-disjoint."""


class DistanceTooSmallError(ManifoldStatsError):
    """
    Exception to raise when paired handle vertices are closer than 3 in the
    1-skeleton.

    :param pair: The offending vertex pair.
    :param distance: Their 1-skeleton distance.
    """

    def __init__(self, pair: Tuple[int, int], distance: int) -> None:
        self.pair = pair
        self.distance = distance
        super().__init__(
            f"Vertices {pair[0]} and {pair[1]} are at distance {distance}, "
            "at least 3 is needed")


class ResultNotManifoldError(ManifoldStatsError):
    """Exception to raise when a surgery result fails manifold validation."""


class DegreeOutOfRangeError(ManifoldStatsError):
    """
    Exception to raise when a reduced link is requested for a vertex whose
    degree isn't covered by the link type catalog.

    :param degree: The vertex degree.
    """

    def __init__(self, degree: int) -> None:
        self.degree = degree
        super().__init__(f"Vertex degree {degree} is outside 6..9")


class InfeasibleTaskError(ManifoldStatsError):
    """Exception to raise when an enumeration task has no admissible f1."""


class PathInvalidError(ManifoldStatsError):
    """
    Exception to raise when a flip path has an illegal step or changes f0.

    :param step: Zero-based index of the failing step.
    """

    def __init__(self, step: int, message: str) -> None:
        self.step = step
        super().__init__(f"Step {step}: {message}")


class EndpointNotCertifiedError(ManifoldStatsError):
    """
    Exception to raise when a flip path doesn't end in a neighborly complex
    with a Hamiltonian vertex link.
    """


class ParseError(ManifoldStatsError):
    """
    Exception to raise when a facet file can't be parsed.

    :param line_number: 1-based number of the offending line.
    """

    def __init__(self, line_number: int, message: str) -> None:
        self.line_number = line_number
        super().__init__(f"line {line_number}: {message}")


class UnexpectedComplexError(ManifoldStatsError):
    """
    Exception to raise when an internal invariant of a complex is broken,
    e.g. the Euler relation after a move.

    :param message: Exception message to print when raised.
    """

    def __init__(self,
                 message: str = "Unexpected complex state occurred") -> None:
        super().__init__(message)
