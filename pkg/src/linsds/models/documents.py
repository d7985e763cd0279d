"""Input documents: JSON forms of fields, matrices, graphs, posets, systems and cuts.

Every document converts to and from its domain object; conversion errors carry
a JSON pointer into the document.
"""

from collections.abc import Iterator
from contextlib import contextmanager

from pydantic import Field

from ..cut import ChainPartition, Cut
from ..exceptions import LinearSDSError, ValidationError
from ..field import FieldSpec
from ..graph import Graph
from ..linalg import Matrix
from ..poset import Poset
from ..sds import LinearSDS, schedule_from_json
from .base import BaseModel

ScalarLiteral = int | str
FieldLiteral = dict[str, int] | str
MatrixLiteral = list[list[ScalarLiteral]]


@contextmanager
def under(prefix: str) -> Iterator[None]:
    """Prefix the JSON pointer of any library error raised inside the block."""
    try:
        yield
    except LinearSDSError as exc:
        exc.pointer = prefix + (exc.pointer or "")
        raise


def matrix_from_literals(
    rows: MatrixLiteral, field: FieldSpec, pointer: str = "/matrix"
) -> Matrix:
    parsed = []
    for i, row in enumerate(rows):
        parsed_row = []
        for j, literal in enumerate(row):
            try:
                parsed_row.append(field.parse(literal))
            except LinearSDSError as exc:
                raise ValidationError(exc.message, pointer=f"{pointer}/{i}/{j}") from exc
        parsed.append(parsed_row)
    with under(pointer):
        return Matrix(field, parsed, ncols=len(parsed[0]) if parsed else 0)


class FieldDocument(BaseModel):
    """Documents that may name their field; absent means the configured default."""

    field: FieldLiteral | None = Field(None, description='{"prime": p} or "rational"')

    def resolve_field(self, default: FieldSpec | None = None) -> FieldSpec:
        if self.field is None:
            return default if default is not None else FieldSpec.prime(2)
        with under("/field"):
            return FieldSpec.from_json(self.field)


class MatrixDocument(FieldDocument):
    """A square or rectangular matrix of scalar literals."""

    matrix: MatrixLiteral

    def to_matrix(self, field: FieldSpec | None = None) -> Matrix:
        """Parse the entries, in ``field`` when given, else in the document's field."""
        return matrix_from_literals(self.matrix, field or self.resolve_field())

    @classmethod
    def from_matrix(cls, m: Matrix) -> "MatrixDocument":
        return cls(field=m.field.to_json(), matrix=m.to_literals())


class GraphDocument(BaseModel):
    n: int
    edges: list[list[int]] = Field(default_factory=list)

    def to_graph(self) -> Graph:
        return Graph.from_edges(self.n, self.edges)

    @classmethod
    def from_graph(cls, g: Graph) -> "GraphDocument":
        return cls(n=g.n, edges=[list(e) for e in g.edges])


class PosetDocument(FieldDocument):
    """A poset by its strict pairs ``[a, b]`` meaning a < b; closed on load."""

    n: int
    strict_pairs: list[list[int]] = Field(default_factory=list)
    labels: list[str] | None = None

    def to_poset(self) -> Poset:
        for k, pair in enumerate(self.strict_pairs):
            if len(pair) != 2:
                raise ValidationError("Strict pairs have two entries", pointer=f"/strict_pairs/{k}")
        return Poset.from_strict_pairs(self.n, self.strict_pairs, self.labels)

    @classmethod
    def from_poset(cls, p: Poset, field: FieldSpec | None = None) -> "PosetDocument":
        return cls(
            field=field.to_json() if field is not None else None,
            n=p.n,
            strict_pairs=[list(pair) for pair in p.cover_pairs()],
            labels=list(p.labels) if p.labels else None,
        )


class SystemDocument(FieldDocument):
    """A linear SDS: graph, local-function matrix and schedule."""

    graph: GraphDocument
    matrix: MatrixLiteral
    schedule: list[int] | str

    def to_sds(self, field: FieldSpec | None = None) -> LinearSDS:
        field = field or self.resolve_field()
        with under("/graph"):
            graph = self.to_graph()
        a = matrix_from_literals(self.matrix, field)
        schedule = schedule_from_json(self.schedule, graph.n)
        return LinearSDS(graph, a, schedule)

    def to_graph(self) -> Graph:
        return self.graph.to_graph()

    @classmethod
    def from_sds(cls, sds: LinearSDS) -> "SystemDocument":
        return cls(
            field=sds.field.to_json(),
            graph=GraphDocument.from_graph(sds.graph),
            matrix=sds.a.to_literals(),
            schedule=list(sds.schedule.word),
        )


class CutDocument(PosetDocument):
    """A poset with a chain-partition and cut positions."""

    chains: list[list[int]]
    h: list[int]

    def to_cut(self) -> Cut:
        poset = self.to_poset()
        partition = ChainPartition(poset, tuple(tuple(c) for c in self.chains))
        return Cut(partition, tuple(self.h))

    @classmethod
    def from_cut(cls, cut: Cut, field: FieldSpec | None = None) -> "CutDocument":
        p = cut.partition.poset
        return cls(
            field=field.to_json() if field is not None else None,
            n=p.n,
            strict_pairs=[list(pair) for pair in p.cover_pairs()],
            labels=list(p.labels) if p.labels else None,
            chains=[list(c) for c in cut.partition.chains],
            h=list(cut.h),
        )
