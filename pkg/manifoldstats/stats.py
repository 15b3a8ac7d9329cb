import inspect
from typing import Any, Callable, Dict, List, Optional, Tuple, Type

from .complex import Complex
from .errors import UnexpectedComplexError
from .facevec import (FaceVector, g_vector, h_vector, min_vertices,
                      mu_statistic, passes_mu_filter)
from .gamma import gamma_lower, is_neighborly
from .homology import betti_mod_p, integral_homology, orientable
from .surgery import missing_facets
from .utils import read_complex


class TriangulationStats:
    """
    Statistics of one closed 3-manifold triangulation. Every public method
    computes one statistic, :meth:`report` collects all of them.

    >>> from manifoldstats import boundary_simplex
    >>> TriangulationStats(boundary_simplex()).g_vector()
    [1, 0, 0]
    """

    _public_nonreport_methods = (
        "report",
        "from_file",
    )
    """Public methods that aren't called by `report` method."""

    def __init__(self, K: Complex, name: Optional[str] = None) -> None:
        """
        :param K: Valid complex.
        :param name: Label of the complex used in reports, e.g. file name.
        """
        self.complex = K
        self.name = name
        self._face_vector = FaceVector.from_counts(K.f_vector())

    def __repr__(self) -> str:
        return f"{type(self).__name__}(name='{self.name}')"

    @classmethod
    def from_file(cls, path: str) -> "TriangulationStats":
        """Stats of the complex in a facet file."""
        return cls(read_complex(path), path)

    def f_vector(self) -> List[int]:
        return list(self._face_vector.proper)

    def h_vector(self) -> List[int]:
        return list(h_vector(self._face_vector).entries)

    def g_vector(self) -> List[int]:
        return list(g_vector(self._face_vector).entries)

    def neighborly(self) -> bool:
        return is_neighborly(self.complex)

    def mu(self) -> float:
        """``f1 - 9/2 f0``."""
        return float(mu_statistic(self._face_vector))

    def irreducibility(self) -> str:
        """
        Verdict of the μ filter: ``"boundary of simplex"``,
        ``"not g2-irreducible"`` when μ is at most 1/2, otherwise
        ``"candidate"``.
        """
        if self.complex.f_vector() == (5, 10, 10, 5):
            return "boundary of simplex"
        if not passes_mu_filter(self._face_vector):
            return "not g2-irreducible"
        return "candidate"

    def homology(self) -> str:
        return integral_homology(self.complex).format()

    def name_hint(self) -> str:
        """Known manifolds with this homology joined by ``/``."""
        return integral_homology(self.complex).name_hint

    def orientable(self) -> bool:
        """
        :raises UnexpectedComplexError: When facet orientation and top
            homology disagree.
        """
        return orientable(self.complex, cross_check=True)

    def betti_mod_2(self) -> List[int]:
        return list(betti_mod_p(self.complex, 2))

    def gamma_lower(self) -> int:
        """Lower bound ``10 * beta_1`` over Z_2 on g2 of the manifold."""
        return gamma_lower(self.complex)

    def min_vertices(self) -> int:
        """Smallest f0 the g2 lower bound allows for this beta_1."""
        return min_vertices(3, betti_mod_p(self.complex, 2)[1])

    def missing_facets(self) -> int:
        return len(missing_facets(self.complex))

    def report(self,
               exceptions_to_ignore: Tuple[
                   Type[Exception], ...] = (UnexpectedComplexError,),
               none_when_unavailable: bool = True) -> Dict[str, Any]:
        """
        Creates JSON like dict by calling all statistic methods. Keys in dict
        are method names and values their results.

        :param exceptions_to_ignore: Tuple of exceptions that should be
            ignored when raised by statistic methods. Defaults to
            ``(UnexpectedComplexError,)``
        :param none_when_unavailable: Whether to set dict value to None when
            method raises ignored exception. When False the key value pair is
            skipped. Defaults to True.
        :return: Dict with statistic methods mapping to their results.
        """
        report = {}
        for method_name, method in self._report_methods():
            try:
                report[method_name] = method()
            except exceptions_to_ignore:
                if none_when_unavailable:
                    report[method_name] = None
        return report

    def _report_methods(self) -> List[Tuple[str, Callable]]:
        """
        Gets all statistic methods, that are all public methods except of
        methods listed in `_public_nonreport_methods`.

        :return: List of tuples of method names and methods.
        """
        methods = inspect.getmembers(self, predicate=inspect.ismethod)
        return [(method_name, method) for method_name, method in methods
                if method_name[0] != "_" and
                method_name not in self._public_nonreport_methods]
