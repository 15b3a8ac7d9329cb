"""
Bounds on the smallest g2 of a manifold and on the threshold above which
every (f0, f1) pair is realized.

Lower bounds come from the first Betti number, upper bounds from witnesses.
A neighborly triangulation with a Hamiltonian cycle in some vertex link
certifies the threshold directly; a flip path to such a triangulation
keeping f0 fixed certifies it through the path bound. Best known values are
kept in an append-only :class:`Ledger`.
"""
import logging
import math
import os
from dataclasses import dataclass, field, replace
from typing import (Dict, Iterable, List, Optional, Sequence, Set, Tuple,
                    Union)

import networkx as nx

from .complex import Complex
from .enumerator import CensusRecord
from .errors import (EndpointNotCertifiedError, IllegalMoveError,
                     PathInvalidError)
from .facevec import g2, g2_lower_bound
from .homology import HomologyProfile, betti_mod_p
from .link_types import link_graph
from .moves import FlipState, MoveDescriptor, apply, make_rng

logger = logging.getLogger(__name__)

# 1-moves add an edge, 2-moves remove one; the walk leans towards adding
PATH_WEIGHTS = (0, 10, 1, 0)


def is_neighborly(K: Complex) -> bool:
    """Whether every pair of vertices spans an edge."""
    return K.f_vector()[1] == math.comb(K.vertex_count, 2)


def _hamiltonian_cycle(graph: nx.Graph) -> Optional[Tuple[int, ...]]:
    """
    Exhaustive backtracking. An unvisited vertex needs two open slots among
    its unvisited neighbours, the path end and the start; a path end with
    two unvisited neighbours that can only use it is a dead end, one such
    neighbour has to come next.
    """
    nodes = sorted(graph.nodes)
    if len(nodes) < 3:
        return None
    adjacency: Dict[int, Set[int]] = {v: set(graph[v]) for v in nodes}
    start = nodes[0]
    path = [start]
    unvisited = set(nodes[1:])

    def open_slots(w: int, end: int) -> int:
        count = len(adjacency[w] & unvisited)
        if end in adjacency[w]:
            count += 1
        if start != end and start in adjacency[w]:
            count += 1
        return count

    def extend() -> bool:
        end = path[-1]
        if not unvisited:
            return start in adjacency[end]
        forced = []
        for w in unvisited:
            slots = open_slots(w, end)
            if slots < 2:
                return False
            if slots == 2 and end in adjacency[w] and end != start:
                forced.append(w)
        if len(forced) > 1:
            return False
        choices = forced or sorted(adjacency[end] & unvisited)
        for w in choices:
            path.append(w)
            unvisited.discard(w)
            if extend():
                return True
            unvisited.add(w)
            path.pop()
        return False

    return tuple(path) if extend() else None


def hamiltonian_cycle_in_link(K: Complex,
                              v: int) -> Optional[Tuple[int, ...]]:
    """
    Hamiltonian cycle in the 1-skeleton of the link of v. The search is
    complete, None means there is no such cycle.

    :param K: Valid complex.
    :param v: Vertex of K.
    :return: Cycle as a vertex sequence starting at the smallest link vertex.
    """
    return _hamiltonian_cycle(link_graph(K, v))


def hamiltonian_vertex(K: Complex) -> Optional[Tuple[int, Tuple[int, ...]]]:
    """First vertex whose link has a Hamiltonian cycle, with the cycle."""
    for v in K.vertices:
        cycle = hamiltonian_cycle_in_link(K, v)
        if cycle is not None:
            return v, cycle
    return None


def gamma_star_upper_direct(K: Complex) -> Optional[int]:
    """
    Threshold bound certified by K itself.

    >>> from manifoldstats import boundary_simplex
    >>> gamma_star_upper_direct(boundary_simplex())
    0

    :param K: Valid complex.
    :return: g2 of K when K is neighborly and some vertex link has a
        Hamiltonian cycle, None otherwise.
    """
    if not is_neighborly(K) or hamiltonian_vertex(K) is None:
        return None
    return g2(*K.f_vector()[:2])


def path_bound(f0: int) -> int:
    """
    Threshold bound contributed by a flip path at constant f0.

    >>> path_bound(15)
    46
    """
    return math.comb(f0 - 1, 2) - 4 * (f0 - 1) + 11


def follow_path(K: Complex, path: Sequence[MoveDescriptor]) -> Complex:
    """
    Applies a flip path of 1- and 2-moves.

    :param K: Start complex.
    :param path: Moves, each in the labels of the complex before it.
    :raises PathInvalidError: When a step isn't legal or would change f0.
    :return: Endpoint.
    """
    current = K
    for step, move in enumerate(path):
        if move.kind not in (1, 2):
            raise PathInvalidError(step, f"{move.kind}-move changes f0")
        try:
            current = apply(current, move)
        except IllegalMoveError as error:
            raise PathInvalidError(step, error.message) from error
    return current


def gamma_star_upper_via_path(K: Complex,
                              path: Sequence[MoveDescriptor]) -> int:
    """
    Threshold bound certified by a flip path from K to a neighborly
    complex with a Hamiltonian vertex link, all at f0 vertices.

    :param K: Valid complex.
    :param path: 1- and 2-moves.
    :raises PathInvalidError: When a step is illegal or changes f0.
    :raises EndpointNotCertifiedError: When the endpoint isn't neighborly
        or no vertex link of it has a Hamiltonian cycle.
    :return: ``max(g2(K), C(f0 - 1, 2) - 4(f0 - 1) + 11)``.
    """
    endpoint = follow_path(K, path)
    if not is_neighborly(endpoint):
        raise EndpointNotCertifiedError(
            f"Path endpoint f={endpoint.f_vector()} is not neighborly")
    if hamiltonian_vertex(endpoint) is None:
        raise EndpointNotCertifiedError(
            "No vertex link of the path endpoint has a Hamiltonian cycle")
    f0, f1 = K.f_vector()[:2]
    return max(g2(f0, f1), path_bound(f0))


def find_neighborly_path(K: Complex, seed: int = 0,
                         max_steps: int = 10_000
                         ) -> Optional[List[MoveDescriptor]]:
    """
    Random walk of 1- and 2-moves, mostly 1-moves, until a neighborly
    complex with a Hamiltonian vertex link is reached. Failure doesn't mean
    no path exists.

    :param K: Valid complex.
    :param seed: Seed of the walk.
    :param max_steps: Number of moves before giving up.
    :return: Path usable with :func:`gamma_star_upper_via_path`, or None.
    """
    rng = make_rng(seed)
    state = FlipState(K)
    target = math.comb(K.vertex_count, 2)
    path: List[MoveDescriptor] = []
    for _ in range(max_steps + 1):
        if state.f1 == target and hamiltonian_vertex(state.to_complex()):
            logger.info("Neighborly after %d moves", len(path))
            return path
        move = state.random_move(PATH_WEIGHTS, rng)
        if move is None:
            break
        state.apply(move)
        path.append(move)
    logger.info("No neighborly complex reached in %d moves", max_steps)
    return None


def gamma_lower(source: Union[Complex, HomologyProfile, int],
                p: int = 2) -> int:
    """
    Lower bound ``10 * beta_1`` on g2 of every triangulation.

    :param source: Complex, its integral homology, or beta_1 itself.
    :param p: Prime of the coefficient field; every closed manifold is
        orientable over Z_2.
    :return: Lower bound.
    """
    if isinstance(source, Complex):
        beta1 = betti_mod_p(source, p)[1]
    elif isinstance(source, HomologyProfile):
        # universal coefficients: H_1 tensor Z_p
        beta1 = source.betti[1] + sum(1 for t in source.torsion[1]
                                      if t % p == 0)
    else:
        beta1 = source
    return g2_lower_bound(3, beta1)


@dataclass(frozen=True)
class Certificate:
    """Everything :func:`certify` established about one complex."""
    f_vector: Tuple[int, int, int, int]
    g2: int
    neighborly: bool
    hamiltonian_vertex: Optional[int]
    cycle: Optional[Tuple[int, ...]]
    gamma_lower: int
    gamma_star_upper: Optional[int]


def certify(K: Complex, p: int = 2) -> Certificate:
    """Lower bound and direct threshold certificate of K."""
    f = K.f_vector()
    neighborly = is_neighborly(K)
    found = hamiltonian_vertex(K) if neighborly else None
    value = g2(f[0], f[1])
    return Certificate(
        f, value, neighborly,
        found[0] if found else None, found[1] if found else None,
        gamma_lower(K, p), value if found else None)


def _min(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None:
        return b
    return a if b is None else min(a, b)


def _max(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None:
        return b
    return a if b is None else max(a, b)


def pareto_minimal(vectors: Iterable[Tuple[int, int]]
                   ) -> Tuple[Tuple[int, int], ...]:
    """
    (g1, g2) pairs not dominated entrywise by another pair.

    >>> pareto_minimal([(13, 34), (10, 36), (13, 40)])
    ((10, 36), (13, 34))
    """
    unique = set(vectors)
    return tuple(sorted(
        v for v in unique
        if not any(w != v and w[0] <= v[0] and w[1] <= v[1] for w in unique)))


@dataclass(frozen=True)
class GammaEntry:
    """
    Best known bounds for one manifold.

    :param key: Formatted integral homology.
    :param name: Manifold name, homology alone may not identify it.
    :param gamma_lower: Lower bound on the smallest g2.
    :param gamma_upper: Smallest g2 of a witness.
    :param gamma_star_upper: Best certified threshold bound.
    :param witnesses: Digests of witness triangulations.
    :param g_vectors: Pareto-minimal (g1, g2) of the witnesses.
    """
    key: str
    name: Optional[str] = None
    gamma_lower: Optional[int] = None
    gamma_upper: Optional[int] = None
    gamma_star_upper: Optional[int] = None
    witnesses: Tuple[str, ...] = ()
    g_vectors: Tuple[Tuple[int, int], ...] = field(default=())

    def __post_init__(self) -> None:
        if (self.gamma_lower is not None and self.gamma_upper is not None
                and self.gamma_lower > self.gamma_upper):
            raise ValueError(
                f"Lower bound {self.gamma_lower} exceeds upper bound "
                f"{self.gamma_upper} for {self.key}")

    @classmethod
    def from_record(cls, record: CensusRecord, name: Optional[str] = None,
                    gamma_star_upper: Optional[int] = None) -> "GammaEntry":
        """Entry witnessed by one census or annealing record."""
        return cls(record.homology.format(),
                   name or record.manifold_name,
                   gamma_lower(record.homology),
                   record.g2, gamma_star_upper, (record.digest,),
                   ((record.g_vector[1], record.g_vector[2]),))

    @property
    def ident(self) -> Tuple[str, str]:
        return self.key, self.name or ""

    def merge(self, other: "GammaEntry") -> "GammaEntry":
        """Keeps the larger lower bound, the smaller upper bounds and every
        witness."""
        witnesses = self.witnesses + tuple(
            w for w in other.witnesses if w not in self.witnesses)
        return replace(
            self,
            gamma_lower=_max(self.gamma_lower, other.gamma_lower),
            gamma_upper=_min(self.gamma_upper, other.gamma_upper),
            gamma_star_upper=_min(self.gamma_star_upper,
                                  other.gamma_star_upper),
            witnesses=witnesses,
            g_vectors=pareto_minimal(self.g_vectors + other.g_vectors))

    def journal_lines(self) -> List[str]:
        """
        Journal lines, one per witness, of the form
        ``key=..;name=..;glo=..;gup=..;gsup=..;witness=..;g=g1,g2``.
        """
        def number(value: Optional[int]) -> str:
            return "" if value is None else str(value)

        lines = []
        for i, witness in enumerate(self.witnesses or ("",)):
            g = (",".join(str(x) for x in self.g_vectors[i])
                 if i < len(self.g_vectors) else "")
            lines.append(
                f"key={self.key};name={self.name or ''};"
                f"glo={number(self.gamma_lower)};"
                f"gup={number(self.gamma_upper)};"
                f"gsup={number(self.gamma_star_upper)};"
                f"witness={witness};g={g}")
        return lines

    @classmethod
    def parse(cls, line: str) -> "GammaEntry":
        """
        Entry from one journal line.

        :raises ValueError: When a field is missing or malformed.
        """
        fields = dict(part.split("=", 1) for part in line.strip().split(";"))

        def number(name: str) -> Optional[int]:
            value = fields.get(name, "")
            return int(value) if value else None

        g = fields.get("g", "")
        return cls(fields["key"], fields.get("name") or None,
                   number("glo"), number("gup"), number("gsup"),
                   (fields["witness"],) if fields.get("witness") else (),
                   (tuple(int(x) for x in g.split(",")),) if g else ())


class Ledger:
    """
    Best known bounds per manifold. With a path, every update is appended to
    the journal file and an existing journal is replayed on construction.
    A single process writes a journal.

    :param path: Journal file, None keeps the ledger in memory.
    """

    def __init__(self, path: Optional[str] = None) -> None:
        self.path = path
        self._entries: Dict[Tuple[str, str], GammaEntry] = {}
        if path is not None and os.path.exists(path):
            self._replay(path)

    def _replay(self, path: str) -> None:
        with open(path, "r", encoding="utf-8") as file:
            for line in file:
                if line.strip() and not line.startswith("#"):
                    self._merge(GammaEntry.parse(line))
        logger.debug("Replayed %d ledger entries from %s",
                     len(self._entries), path)

    def _merge(self, entry: GammaEntry) -> GammaEntry:
        current = self._entries.get(entry.ident)
        merged = entry if current is None else current.merge(entry)
        self._entries[entry.ident] = merged
        return merged

    def upsert(self, entry: GammaEntry) -> GammaEntry:
        """
        Merges an entry into the ledger.

        :return: The stored entry after merging.
        """
        merged = self._merge(entry)
        if self.path is not None:
            with open(self.path, "a", encoding="utf-8") as file:
                for line in entry.journal_lines():
                    file.write(line + "\n")
        return merged

    def query(self, key: Union[HomologyProfile, str, None] = None,
              name: Optional[str] = None) -> Optional[GammaEntry]:
        """
        Entry by homology and/or name. When several entries match, the one
        with the smallest (key, name) is returned.

        :return: Entry, None when nothing matches.
        """
        if isinstance(key, HomologyProfile):
            key = key.format()
        matches = [entry for ident, entry in sorted(self._entries.items())
                   if (key is None or ident[0] == key) and
                   (name is None or ident[1] == name)]
        return matches[0] if matches else None

    def entries(self) -> List[GammaEntry]:
        return [entry for _, entry in sorted(self._entries.items())]

    def __len__(self) -> int:
        return len(self._entries)
