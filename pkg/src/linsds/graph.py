"""Simple undirected dependency graphs and the word-expanded graph."""

import random
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import Any

import networkx as nx
import structlog
from pydantic import BaseModel, ConfigDict, PrivateAttr, model_validator

from .exceptions import BadMultiplicityError, InvalidGraphError, TooSmallError
from .field import FieldSpec
from .linalg import Matrix

logger = structlog.get_logger(__name__)


class Graph(BaseModel):
    """Finite simple undirected graph on vertices 0..n-1.

    Edges are stored normalised as sorted ``(i, j)`` pairs with ``i < j``.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    n: int
    edges: tuple[tuple[int, int], ...] = ()

    _edge_set: frozenset[tuple[int, int]] = PrivateAttr(default_factory=frozenset)

    @model_validator(mode="before")
    @classmethod
    def _normalise_edges(cls, data: Any) -> Any:
        if not isinstance(data, dict):
            return data
        n = data.get("n")
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise InvalidGraphError(f"Vertex count must be a positive integer, got {n!r}")
        seen: set[tuple[int, int]] = set()
        for k, edge in enumerate(data.get("edges") or ()):
            pair = tuple(edge) if isinstance(edge, (list, tuple)) else ()
            if len(pair) != 2 or not all(isinstance(v, int) for v in pair):
                raise InvalidGraphError(
                    f"Edge {k} is not a pair of vertices", pointer=f"/edges/{k}"
                )
            i, j = pair
            if not (0 <= i < n and 0 <= j < n):
                raise InvalidGraphError(
                    f"Edge {[i, j]} names a vertex outside 0..{n - 1}", pointer=f"/edges/{k}"
                )
            if i == j:
                raise InvalidGraphError(f"Self-loop at vertex {i}", pointer=f"/edges/{k}")
            key = (min(i, j), max(i, j))
            if key in seen:
                raise InvalidGraphError(f"Duplicate edge {list(key)}", pointer=f"/edges/{k}")
            seen.add(key)
        return {**data, "edges": tuple(sorted(seen))}

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]] = ()) -> "Graph":
        return cls(n=n, edges=tuple(tuple(e) for e in edges))

    @property
    def vertices(self) -> range:
        return range(self.n)

    def model_post_init(self, __context: Any) -> None:
        self._edge_set = frozenset(self.edges)

    def adjacent(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self._edge_set

    def neighbours(self, i: int) -> list[int]:
        return [j for j in self.vertices if j != i and self.adjacent(i, j)]

    def degree(self, i: int) -> int:
        return len(self.neighbours(i))

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.edges)
        return g

    def is_connected(self) -> bool:
        return nx.is_connected(self.to_networkx())

    def to_json(self) -> dict[str, Any]:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}


def warn_if_disconnected(g: Graph) -> bool:
    """Log a warning for a disconnected dependency graph; return connectivity."""
    connected = g.is_connected()
    if not connected:
        components = nx.number_connected_components(g.to_networkx())
        logger.warning("Dependency graph is disconnected", n=g.n, components=components)
    return connected


def circ(n: int) -> Graph:
    """The cycle graph Circ n with edges {i, i+1 mod n}."""
    if n < 3:
        raise TooSmallError(f"Circ n needs n >= 3, got {n}")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, j) for i in range(n) for j in range(i + 1, n)))


def empty_graph(n: int) -> Graph:
    return Graph.from_edges(n)


def random_graph(rng: random.Random, n: int, density: float = 0.5) -> Graph:
    """Erdos-Renyi style graph drawn from ``rng``."""
    return Graph.from_edges(
        n, ((i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < density)
    )


def support_graph(t: Matrix) -> Graph:
    """Graph with an edge wherever t[i][j] or t[j][i] is non-zero off the diagonal."""
    n = t.nrows
    return Graph.from_edges(
        n,
        (
            (i, j)
            for i in range(n)
            for j in range(i + 1, n)
            if t[i, j] != 0 or t[j, i] != 0
        ),
    )


def adjacency_matrix(g: Graph, field: FieldSpec) -> Matrix:
    """Symmetric 0/1 adjacency matrix with zero diagonal."""
    one, zero = field.one, field.zero
    rows = [[zero] * g.n for _ in range(g.n)]
    for i, j in g.edges:
        rows[i][j] = one
        rows[j][i] = one
    return Matrix(field, rows, ncols=g.n)


@dataclass(frozen=True)
class ExpandedGraph:
    """The graph on one vertex per schedule occurrence, with its projection.

    ``phi[u]`` is the base vertex of expanded vertex ``u``; ``blocks[i]`` is the
    contiguous range of expanded vertices over base vertex ``i``.
    """

    base: Graph
    graph: Graph
    phi: tuple[int, ...]
    blocks: tuple[range, ...]

    def fibre(self, i: int) -> range:
        return self.blocks[i]


def expand_graph(g: Graph, mult: Iterable[int]) -> ExpandedGraph:
    """Replace every vertex v_i by a clique of m_i copies.

    Two copies are adjacent iff they cover the same base vertex or adjacent
    base vertices.

    Raises:
        BadMultiplicityError: If ``mult`` has the wrong length or an entry below one
    """
    counts = tuple(mult)
    if len(counts) != g.n:
        raise BadMultiplicityError(f"Expected {g.n} multiplicities, got {len(counts)}")
    if any(not isinstance(c, int) or c < 1 for c in counts):
        raise BadMultiplicityError(f"Multiplicities must be >= 1, got {list(counts)}")

    blocks = []
    phi: list[int] = []
    offset = 0
    for i, c in enumerate(counts):
        blocks.append(range(offset, offset + c))
        phi.extend([i] * c)
        offset += c

    m = offset
    edges = [
        (u, w)
        for u in range(m)
        for w in range(u + 1, m)
        if phi[u] == phi[w] or g.adjacent(phi[u], phi[w])
    ]
    logger.debug("Expanded graph built", n=g.n, m=m, edges=len(edges))
    return ExpandedGraph(
        base=g,
        graph=Graph.from_edges(m, edges),
        phi=tuple(phi),
        blocks=tuple(blocks),
    )
