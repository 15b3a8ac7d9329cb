"""
Catalog of reduced vertex links of degree 6 to 9.

The reduced link of u at v is the 1-skeleton of the link of u with v and its
incident edges removed. The catalog holds every type that can occur in a
g2-irreducible triangulation together with the degree floors they force on
v. Types are named ``<deg(u)><variant>(<edge degree>)``, primes mark
distinct types sharing the other parts of the name.
"""
import functools
import json
import logging
import os
import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import networkx as nx

from .complex import Complex
from .errors import DegreeOutOfRangeError

logger = logging.getLogger(__name__)

CATALOG_PATH = os.path.join(os.path.dirname(__file__), "data",
                            "link_types.json")
CATALOG_DEGREES = range(6, 10)
NAME_REGEX = re.compile(r"^(\d)([a-d]?)\((\d)('*)\)$")


@dataclass(frozen=True)
class LinkType:
    """
    One catalog entry.

    :param name: Type name e.g. ``"9b(4')"``.
    :param edges: Edges of the reduced link graph.
    """
    name: str
    edges: Tuple[Tuple[str, str], ...]

    @functools.cached_property
    def vertex_degree(self) -> int:
        """Degree of u."""
        return int(NAME_REGEX.match(self.name).group(1))  # type: ignore

    @functools.cached_property
    def edge_degree(self) -> int:
        """Degree of the edge (u, v), the length of the outer cycle."""
        return int(NAME_REGEX.match(self.name).group(3))  # type: ignore

    @functools.cached_property
    def graph(self) -> nx.Graph:
        return nx.Graph(self.edges)

    @functools.cached_property
    def graph_hash(self) -> str:
        return nx.weisfeiler_lehman_graph_hash(self.graph)


@dataclass(frozen=True)
class LinkCatalog:
    types: Tuple[LinkType, ...]
    floors: Dict[str, int]

    def __getitem__(self, name: str) -> LinkType:
        for link_type in self.types:
            if link_type.name == name:
                return link_type
        raise KeyError(name)

    def floor(self, name: str) -> Optional[int]:
        """Degree floor on v forced by a type, None when the type forces
        nothing beyond the edge-degree rule."""
        return self.floors.get(name)

    def floor_bound(self, vertex_degree: int, edge_degree: int) -> int:
        """Largest floor of a type with the given degrees of u and (u, v),
        0 when none has one."""
        return max((self.floors.get(t.name, 0) for t in self.types
                    if t.vertex_degree == vertex_degree and
                    t.edge_degree == edge_degree), default=0)

    def self_test(self) -> List[str]:
        """
        Consistency problems of the catalog: vertex counts, edge counts of
        a sphere link with the outer cycle removed, pairwise isomorphism and
        floors naming unknown types.

        :return: Problem descriptions, empty when the catalog is consistent.
        """
        problems = []
        for link_type in self.types:
            n = link_type.graph.number_of_nodes()
            if n != link_type.vertex_degree - 1:
                problems.append(f"{link_type.name} has {n} vertices")
            expected = 3 * (n + 1) - 6 - link_type.edge_degree
            if link_type.graph.number_of_edges() != expected:
                problems.append(f"{link_type.name} has "
                                f"{link_type.graph.number_of_edges()} edges, "
                                f"expected {expected}")
        for i, first in enumerate(self.types):
            for second in self.types[i + 1:]:
                if nx.is_isomorphic(first.graph, second.graph):
                    problems.append(f"{first.name} and {second.name} are "
                                    "isomorphic")
        names = {link_type.name for link_type in self.types}
        problems.extend(f"floor names unknown type {name}"
                        for name in self.floors if name not in names)
        return problems


@functools.lru_cache(maxsize=None)
def load_catalog(path: str = CATALOG_PATH) -> LinkCatalog:
    """
    Loads the catalog data file.

    :param path: Path to JSON file with ``link_types`` and ``degree_floors``.
    :return: Catalog.
    """
    with open(path, "r", encoding="utf-8") as file:
        data = json.load(file)
    types = tuple(LinkType(entry["name"],
                           tuple(tuple(edge) for edge in entry["edges"]))
                  for entry in data["link_types"])
    floors = {name: int(floor) for floor, names
              in data["degree_floors"].items() for name in names}
    logger.debug("Loaded %d link types from %s", len(types), path)
    return LinkCatalog(types, floors)


def link_graph(K, u: int) -> nx.Graph:
    """
    1-skeleton of the link of u.

    :param K: Complex or anything with a ``link`` method returning the link
        triangles of a vertex.
    """
    graph = nx.Graph()
    for triangle in K.link((u,)):
        graph.add_nodes_from(triangle)
        for i in range(3):
            x, y = triangle[i], triangle[(i + 1) % 3]
            graph.add_edge(x, y)
    return graph


def reduced_link_graph(K, u: int, v: int) -> nx.Graph:
    """1-skeleton of the link of u without v."""
    graph = link_graph(K, u)
    graph.remove_node(v)
    return graph


def classify_graph(graph: nx.Graph,
                   catalog: Optional[LinkCatalog] = None
                   ) -> Optional[LinkType]:
    """Catalog type isomorphic to a reduced link graph, if any."""
    catalog = catalog or load_catalog()
    graph_hash = nx.weisfeiler_lehman_graph_hash(graph)
    for link_type in catalog.types:
        if (link_type.graph_hash == graph_hash and
                nx.is_isomorphic(link_type.graph, graph)):
            return link_type
    return None


def classify_reduced_link(K: Complex, u: int, v: int,
                          catalog: Optional[LinkCatalog] = None
                          ) -> Optional[LinkType]:
    """
    Type of the reduced link of u at v.

    :param K: Complex whose link of u is complete.
    :param u: Vertex of degree 6..9.
    :param v: Vertex of the link of u.
    :raises DegreeOutOfRangeError: When deg(u) isn't in 6..9.
    :raises ValueError: When v isn't a neighbour of u.
    :return: Matching type, None when no type matches.
    """
    degree = len(K.neighbors[u])
    if degree not in CATALOG_DEGREES:
        raise DegreeOutOfRangeError(degree)
    if v not in K.neighbors[u]:
        raise ValueError(f"Vertex {v} is not in the link of {u}")
    return classify_graph(reduced_link_graph(K, u, v), catalog)
