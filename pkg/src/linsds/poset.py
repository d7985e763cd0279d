"""Finite posets, their incidence algebra and the poset of an acyclic orientation.

A poset is stored as its closed reflexive relation ``leq[i][j]`` (``i <= j``).
Incidence elements are matrices whose support lies inside that relation, so
the convolution product is ordinary matrix multiplication.
"""

import random
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from itertools import islice
from typing import Any

import networkx as nx
import structlog
from pydantic import BaseModel, ConfigDict, model_validator

from .exceptions import (
    InvalidPosetError,
    PosetMismatchError,
    SupportViolationError,
    ValidationError,
)
from .field import FieldSpec, Raw
from .graph import Graph
from .linalg import Matrix, mat_inv, mat_mul, order_positions

logger = structlog.get_logger(__name__)


class Poset(BaseModel):
    """Finite partial order on elements 0..n-1."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    n: int
    leq: tuple[tuple[bool, ...], ...]
    labels: tuple[str, ...] = ()

    @model_validator(mode="after")
    def _check_order_axioms(self) -> "Poset":
        n = self.n
        if n < 0 or len(self.leq) != n or any(len(row) != n for row in self.leq):
            raise InvalidPosetError(f"Relation must be a {n}x{n} boolean matrix")
        if self.labels and len(self.labels) != n:
            raise InvalidPosetError(f"Expected {n} labels, got {len(self.labels)}")
        le = self.leq
        for i in range(n):
            if not le[i][i]:
                raise InvalidPosetError(f"Relation is not reflexive at {i}")
        for i in range(n):
            for j in range(i + 1, n):
                if le[i][j] and le[j][i]:
                    raise InvalidPosetError(
                        f"Relation is not antisymmetric: {i} <= {j} and {j} <= {i}"
                    )
        for i in range(n):
            for k in range(n):
                if not le[i][k]:
                    continue
                for j in range(n):
                    if le[k][j] and not le[i][j]:
                        raise InvalidPosetError(
                            f"Relation is not transitive: {i} <= {k} <= {j} but not {i} <= {j}"
                        )
        return self

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_strict_pairs(
        cls,
        n: int,
        pairs: Iterable[Sequence[int]],
        labels: Sequence[str] | None = None,
    ) -> "Poset":
        """Close a set of strict pairs ``(a, b)`` meaning ``a < b``.

        Raises:
            InvalidPosetError: If the pairs contain a cycle or name unknown elements
        """
        dag = nx.DiGraph()
        dag.add_nodes_from(range(n))
        for k, pair in enumerate(pairs):
            a, b = pair
            if not (0 <= a < n and 0 <= b < n):
                raise InvalidPosetError(
                    f"Pair {[a, b]} names an element outside 0..{n - 1}",
                    pointer=f"/strict_pairs/{k}",
                )
            if a == b:
                raise InvalidPosetError(
                    f"Strict pair {[a, b]} is reflexive", pointer=f"/strict_pairs/{k}"
                )
            dag.add_edge(a, b)
        if not nx.is_directed_acyclic_graph(dag):
            cycle = nx.find_cycle(dag)
            raise InvalidPosetError(
                f"Relation is not antisymmetric: cycle through {[u for u, _ in cycle]}"
            )
        closed = nx.transitive_closure_dag(dag)
        leq = tuple(tuple(i == j or closed.has_edge(i, j) for j in range(n)) for i in range(n))
        return cls(n=n, leq=leq, labels=tuple(labels or ()))

    @classmethod
    def antichain(cls, n: int) -> "Poset":
        return cls.from_strict_pairs(n, ())

    @classmethod
    def chain(cls, n: int) -> "Poset":
        return cls.from_strict_pairs(n, ((i, i + 1) for i in range(n - 1)))

    # -- queries ----------------------------------------------------------

    def le(self, i: int, j: int) -> bool:
        return self.leq[i][j]

    def lt(self, i: int, j: int) -> bool:
        return i != j and self.leq[i][j]

    def comparable(self, i: int, j: int) -> bool:
        return self.leq[i][j] or self.leq[j][i]

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else f"s{i + 1}"

    def strict_pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in range(self.n) if self.lt(i, j)]

    def cover_pairs(self) -> list[tuple[int, int]]:
        """Pairs i < j with nothing strictly between them."""
        return [
            (i, j)
            for i, j in self.strict_pairs()
            if not any(self.lt(i, k) and self.lt(k, j) for k in range(self.n))
        ]

    def interval(self, i: int, j: int) -> list[int]:
        return [k for k in range(self.n) if self.le(i, k) and self.le(k, j)]

    def is_chain(self, elements: Sequence[int]) -> bool:
        """True when ``elements`` are listed in strictly ascending order."""
        return all(self.lt(a, b) for a, b in zip(elements, elements[1:]))

    def to_networkx(self) -> nx.DiGraph:
        dag = nx.DiGraph()
        dag.add_nodes_from(range(self.n))
        dag.add_edges_from(self.strict_pairs())
        return dag

    def induced(self, elements: Sequence[int]) -> "Poset":
        """Sub-poset on ``elements``, re-indexed in the given order."""
        return Poset(
            n=len(elements),
            leq=tuple(tuple(self.le(a, b) for b in elements) for a in elements),
            labels=tuple(self.label(a) for a in elements),
        )

    def dual(self) -> "Poset":
        """The reversed order."""
        return Poset(
            n=self.n,
            leq=tuple(tuple(self.leq[j][i] for j in range(self.n)) for i in range(self.n)),
            labels=self.labels,
        )

    def to_json(self) -> dict[str, Any]:
        doc: dict[str, Any] = {"n": self.n, "strict_pairs": [list(p) for p in self.cover_pairs()]}
        if self.labels:
            doc["labels"] = list(self.labels)
        return doc


def acyclic_orientation(g: Graph, order: Sequence[int]) -> frozenset[tuple[int, int]]:
    """Orient each edge from the later-updated to the earlier-updated endpoint."""
    pos = order_positions(list(order), g.n)
    return frozenset((i, j) if pos[i] > pos[j] else (j, i) for i, j in g.edges)


def poset_from_acyclic_orientation(g: Graph, order: Sequence[int]) -> Poset:
    """Transitive closure of the orientation: v_i <= v_j along oriented paths.

    Raises:
        NotAPermutationError: If ``order`` is not a permutation of the vertices
    """
    pairs = acyclic_orientation(g, order)
    return Poset.from_strict_pairs(g.n, sorted(pairs))


def comparability_graph(p: Poset) -> Graph:
    return Graph.from_edges(
        p.n, ((i, j) for i in range(p.n) for j in range(i + 1, p.n) if p.comparable(i, j))
    )


def random_poset(rng: random.Random, n: int, density: float = 0.4) -> Poset:
    """Random poset: a random DAG under a shuffled ranking, closed transitively."""
    ranking = list(range(n))
    rng.shuffle(ranking)
    pairs = [
        (ranking[a], ranking[b])
        for a in range(n)
        for b in range(a + 1, n)
        if rng.random() < density
    ]
    return Poset.from_strict_pairs(n, pairs)


# -- incidence algebra ----------------------------------------------------


@dataclass(frozen=True)
class IncidenceElement:
    """A function on the intervals of a poset, held as a matrix.

    ``matrix[i][j]`` is the value on the interval [s_i, s_j]; it must vanish
    whenever s_i <= s_j fails.
    """

    poset: Poset
    matrix: Matrix

    def __post_init__(self) -> None:
        m = self.matrix
        if m.shape != (self.poset.n, self.poset.n):
            raise SupportViolationError(
                f"Matrix shape {m.shape} does not match a poset of {self.poset.n} elements"
            )
        for i in range(m.nrows):
            for j in range(m.ncols):
                if m[i, j] != 0 and not self.poset.le(i, j):
                    raise SupportViolationError(
                        f"Non-zero value on ({i}, {j}) but {i} <= {j} does not hold",
                        pointer=f"/matrix/{i}/{j}",
                    )

    @property
    def field(self) -> FieldSpec:
        return self.matrix.field

    def value(self, i: int, j: int) -> Raw:
        return self.matrix[i, j]

    def __matmul__(self, other: "IncidenceElement") -> "IncidenceElement":
        return incidence_mul(self, other)


def delta(p: Poset, field: FieldSpec) -> IncidenceElement:
    """The identity of the incidence algebra."""
    return IncidenceElement(p, Matrix.identity(p.n, field))


def zeta(p: Poset, field: FieldSpec) -> IncidenceElement:
    """zeta(x, y) = 1 for every x <= y."""
    one, zero = field.one, field.zero
    return IncidenceElement(
        p, Matrix._raw(field, ((one if le else zero for le in row) for row in p.leq), p.n)
    )


def moebius(p: Poset, field: FieldSpec) -> IncidenceElement:
    """The inverse of zeta, computed directly in ``field``.

    Over F_p this is the mod-p reduction of the integer Moebius values.
    """
    mu = mat_inv(zeta(p, field).matrix)
    logger.debug("Moebius function computed", n=p.n, field=str(field))
    return IncidenceElement(p, mu)


def incidence_mul(h: IncidenceElement, r: IncidenceElement) -> IncidenceElement:
    """Convolution (hr)(x, y) = sum over x <= z <= y of h(x, z) r(z, y).

    Raises:
        PosetMismatchError: If the elements live over different posets
    """
    if h.poset != r.poset:
        raise PosetMismatchError()
    return IncidenceElement(h.poset, mat_mul(h.matrix, r.matrix))


def chains(p: Poset, start: int, end: int, length: int, strict: bool) -> Iterator[tuple[int, ...]]:
    """Chains start = x_0 <= x_1 <= ... <= x_length = end, all links strict if asked."""
    if length == 0:
        if start == end:
            yield (start,)
        return
    if not p.le(start, end):
        return
    for z in p.interval(start, end):
        if strict and z == start:
            continue
        for tail in chains(p, z, end, length - 1, strict):
            yield (start, *tail)


def chain_power_oracle(h: IncidenceElement, k: int, strict: bool) -> Matrix:
    """Entry (i, j) is the sum over chains of length k from s_i to s_j of the
    product of h along the links.

    With ``strict=False`` this equals H^k; with ``strict=True`` it equals
    (H - Diag H)^k, and vanishes once k reaches the element count.
    """
    if k < 1:
        raise ValidationError(f"Chain length must be at least 1, got {k}")
    p = h.poset
    f = h.field
    rows = []
    for i in range(p.n):
        row = []
        for j in range(p.n):
            total = f.zero
            for chain in chains(p, i, j, k, strict):
                term = f.one
                for a, b in zip(chain, chain[1:]):
                    term = f.mul(term, h.value(a, b))
                total = f.add(total, term)
            row.append(total)
        rows.append(row)
    return Matrix._raw(f, rows, p.n)


def _extensions(p: Poset, placed: list[int], remaining: set[int]) -> Iterator[list[int]]:
    if not remaining:
        yield list(placed)
        return
    for x in sorted(remaining):
        if any(p.lt(y, x) for y in remaining if y != x):
            continue
        placed.append(x)
        remaining.discard(x)
        yield from _extensions(p, placed, remaining)
        remaining.add(x)
        placed.pop()


def linear_extensions(p: Poset, limit: int | None = None) -> list[list[int]]:
    """All linear extensions in lexicographic order, truncated to ``limit``."""
    found = _extensions(p, [], set(range(p.n)))
    if limit is not None:
        return list(islice(found, limit))
    return list(found)


def first_linear_extension(p: Poset) -> list[int]:
    """The lexicographically smallest linear extension."""
    return list(nx.lexicographical_topological_sort(p.to_networkx()))


def is_linear_extension(p: Poset, order: Sequence[int]) -> bool:
    if sorted(order) != list(range(p.n)):
        return False
    pos = {x: k for k, x in enumerate(order)}
    return all(pos[a] < pos[b] for a, b in p.strict_pairs())
