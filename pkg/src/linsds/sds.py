"""Linear sequential dynamical systems over permutation schedules.

A linear SDS (G, A, w) updates vertex w_1, then w_2, and so on; updating
vertex i replaces x_i by row i of A applied to the current state. The
brute-force product of local matrices is the ground truth every closed form
in this package is checked against.
"""

import json
import random
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from typing import Any, overload

import structlog

from .exceptions import (
    BadDiagonalError,
    DimensionMismatchError,
    InvalidScheduleError,
    NotAPermutationError,
    NotInvertibleError,
    SupportViolationError,
)
from .field import FieldSpec, random_scalar
from .graph import (
    Graph,
    adjacency_matrix,
    random_graph,
    support_graph,
    warn_if_disconnected,
)
from .linalg import (
    LUFactors,
    Matrix,
    NoLU,
    lu_decompose,
    lup_decompose,
    mat_inv,
    mat_mul,
    nilpotent_inverse_series,
    random_matrix,
    restrict_after,
)
from .poset import (
    IncidenceElement,
    Poset,
    acyclic_orientation,
    comparability_graph,
    first_linear_extension,
    poset_from_acyclic_orientation,
)

logger = structlog.get_logger(__name__)


@dataclass(frozen=True)
class Schedule:
    """An update word over vertices 0..n-1 in which every vertex occurs."""

    word: tuple[int, ...]
    n: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "word", tuple(self.word))
        for k, v in enumerate(self.word):
            if not isinstance(v, int) or not 0 <= v < self.n:
                raise InvalidScheduleError(
                    f"Schedule entry {v!r} is not a vertex of 0..{self.n - 1}",
                    pointer=f"/schedule/{k}",
                )
        missing = sorted(set(range(self.n)) - set(self.word))
        if missing:
            raise InvalidScheduleError(f"Schedule never updates vertices {missing}")

    @classmethod
    def identity(cls, n: int) -> "Schedule":
        return cls(tuple(range(n)), n)

    @classmethod
    def parse(cls, text: str, n: int) -> "Schedule":
        """Parse a digit string such as ``013120321`` (n <= 10) or a JSON array."""
        stripped = text.strip()
        if stripped.startswith("["):
            try:
                word = json.loads(stripped)
            except json.JSONDecodeError as exc:
                raise InvalidScheduleError(f"Malformed schedule {text!r}") from exc
            if not isinstance(word, list):
                raise InvalidScheduleError(f"Malformed schedule {text!r}")
            return cls(tuple(word), n)
        if n > 10:
            raise InvalidScheduleError("Digit-string schedules need n <= 10; use a JSON array")
        if not stripped.isdigit():
            raise InvalidScheduleError(f"Malformed schedule {text!r}")
        return cls(tuple(int(c) for c in stripped), n)

    @property
    def is_permutation(self) -> bool:
        return len(self.word) == self.n

    def reversed(self) -> "Schedule":
        return Schedule(self.word[::-1], self.n)

    def multiplicities(self) -> tuple[int, ...]:
        counts = [0] * self.n
        for v in self.word:
            counts[v] += 1
        return tuple(counts)

    def __len__(self) -> int:
        return len(self.word)

    def __iter__(self) -> Iterator[int]:
        return iter(self.word)

    @overload
    def __getitem__(self, k: int) -> int: ...

    @overload
    def __getitem__(self, k: slice) -> tuple[int, ...]: ...

    def __getitem__(self, k: int | slice) -> int | tuple[int, ...]:
        return self.word[k]

    def __str__(self) -> str:
        if self.n <= 10:
            return "".join(str(v) for v in self.word)
        return json.dumps(list(self.word))


@dataclass(frozen=True)
class LinearSDS:
    """A dependency graph, a local-function matrix A and an update schedule.

    a[i][j] must vanish whenever i != j and v_i, v_j are not adjacent.
    """

    graph: Graph
    a: Matrix
    schedule: Schedule

    def __post_init__(self) -> None:
        n = self.graph.n
        if self.a.shape != (n, n):
            raise DimensionMismatchError(
                f"Matrix shape {self.a.shape} does not match a graph on {n} vertices",
                pointer="/matrix",
            )
        if self.schedule.n != n:
            raise InvalidScheduleError(
                f"Schedule is over {self.schedule.n} vertices, graph has {n}", pointer="/schedule"
            )
        for i in range(n):
            for j in range(n):
                if i != j and self.a[i, j] != 0 and not self.graph.adjacent(i, j):
                    raise SupportViolationError(
                        f"a[{i}][{j}] is non-zero but {i} and {j} are not adjacent",
                        pointer=f"/matrix/{i}/{j}",
                    )
        warn_if_disconnected(self.graph)

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def field(self) -> FieldSpec:
        return self.a.field

    def with_schedule(self, schedule: Schedule) -> "LinearSDS":
        return LinearSDS(self.graph, self.a, schedule)


def local_matrix(sds: LinearSDS, i: int) -> Matrix:
    """F_{v_i}: the identity with row i replaced by row i of A."""
    return _local(sds.a, i)


def _local(a: Matrix, i: int) -> Matrix:
    if not 0 <= i < a.nrows:
        raise InvalidScheduleError(f"Vertex {i} is outside 0..{a.nrows - 1}")
    identity = Matrix.identity(a.nrows, a.field)
    return Matrix._raw(
        a.field, (a.row(k) if k == i else identity.row(k) for k in range(a.nrows)), a.ncols
    )


def compose_local_matrices(a: Matrix, word: Sequence[int]) -> Matrix:
    """F_{w_m} ... F_{w_1} by successive multiplication; ``word`` need not cover every vertex."""
    if not a.is_square:
        raise DimensionMismatchError(f"Local-function matrix must be square, got {a.shape}")
    result = Matrix.identity(a.nrows, a.field)
    for v in word:
        result = mat_mul(_local(a, v), result)
    return result


def compose_oracle(sds: LinearSDS) -> Matrix:
    """The system matrix as the literal product of local matrices in schedule order."""
    return compose_local_matrices(sds.a, sds.schedule.word)


def parallel_map(sds: LinearSDS) -> Matrix:
    """The synchronous map, where every vertex updates from the same state: A itself."""
    return sds.a


def _require_permutation(sds: LinearSDS) -> None:
    if not sds.schedule.is_permutation:
        raise NotAPermutationError(
            f"Schedule {sds.schedule} is a word, not a permutation of 0..{sds.n - 1}"
        )


def system_matrix_perm(sds: LinearSDS) -> Matrix:
    """Closed form (I - A_pi)^{-1} (A - A_pi) for a permutation schedule.

    Raises:
        NotAPermutationError: If the schedule repeats a vertex
    """
    _require_permutation(sds)
    a_pi = restrict_after(sds.a, sds.schedule.word)
    result = mat_mul(nilpotent_inverse_series(a_pi), sds.a - a_pi)
    logger.debug("Permutation closed form evaluated", n=sds.n, schedule=str(sds.schedule))
    return result


def incidence_function(sds: LinearSDS) -> IncidenceElement:
    """h_pi on the poset of Acyc(G, pi): [v_i, v_j] maps to a_ij.

    Its matrix is Diag A + A_pi, so A_pi = H_pi - Diag H_pi.
    """
    _require_permutation(sds)
    poset = poset_from_acyclic_orientation(sds.graph, sds.schedule.word)
    a_pi = restrict_after(sds.a, sds.schedule.word)
    return IncidenceElement(poset, sds.a.diagonal_part() + a_pi)


@dataclass(frozen=True)
class ReverseOrderFactors:
    """System matrix = inverse_part * reversed_part.

    ``inverse_part`` is (I - A_pi)^{-1}; ``reversed_part`` is Diag A + A_{pi^r},
    an incidence function on the dual of the orientation poset.
    """

    inverse_part: Matrix
    reversed_part: IncidenceElement

    def product(self) -> Matrix:
        return mat_mul(self.inverse_part, self.reversed_part.matrix)


def reverse_order_factors(sds: LinearSDS) -> ReverseOrderFactors:
    """Split the system matrix of a permutation SDS into two ordered factors.

    Args:
        sds: System with a permutation schedule

    Returns:
        Factors whose product is the system matrix

    Raises:
        NotAPermutationError: If the schedule repeats a vertex
    """
    _require_permutation(sds)
    word = sds.schedule.word
    poset = poset_from_acyclic_orientation(sds.graph, word)
    inverse_part = nilpotent_inverse_series(restrict_after(sds.a, word))
    reversed_part = sds.a.diagonal_part() + restrict_after(sds.a, word[::-1])
    return ReverseOrderFactors(inverse_part, IncidenceElement(poset.dual(), reversed_part))


def equivalent_schedules(g: Graph, first: Sequence[int], second: Sequence[int]) -> bool:
    """True when both permutations induce the same acyclic orientation of ``g``."""
    return acyclic_orientation(g, first) == acyclic_orientation(g, second)


def invert_sds(sds: LinearSDS) -> LinearSDS:
    """The SDS (G, B, pi^r) whose system map inverts that of ``sds``.

    B has diagonal D^{-1}, B_pi = -D^{-1} A_pi and B_{pi^r} = -D^{-1} A_{pi^r}
    where D = Diag A.

    Raises:
        NotInvertibleError: If some a_ii is zero
        NotAPermutationError: If the schedule is a word
    """
    _require_permutation(sds)
    f = sds.field
    zero_diagonal = [i for i, x in enumerate(sds.a.diag()) if x == 0]
    if zero_diagonal:
        raise NotInvertibleError(f"Diagonal entries {zero_diagonal} are zero")

    d_inv = Matrix.diagonal([f.inv(x) for x in sds.a.diag()], f)
    word = sds.schedule.word
    b_pi = -mat_mul(d_inv, restrict_after(sds.a, word))
    b_rev = -mat_mul(d_inv, restrict_after(sds.a, word[::-1]))
    b = d_inv + b_pi + b_rev
    logger.debug("Inverse SDS built", n=sds.n, schedule=str(sds.schedule.reversed()))
    return LinearSDS(sds.graph, b, sds.schedule.reversed())


def _synthesize(factors: LUFactors) -> LinearSDS:
    n = factors.lower.nrows
    f = factors.lower.field
    a_low = Matrix.identity(n, f) - mat_inv(factors.lower)
    a_loc = factors.upper + a_low
    return LinearSDS(support_graph(a_loc), a_loc, Schedule.identity(n))


def lu_synthesize(t: Matrix) -> LinearSDS | NoLU:
    """A linear SDS with schedule 0..n-1 whose system matrix is T.

    With T = LU: A_loc = U + (I - L^{-1}). Returns ``NoLU`` when T has no LU
    decomposition, in which case no such SDS exists.
    """
    factors = lu_decompose(t)
    if isinstance(factors, NoLU):
        logger.info("No LU decomposition; no SDS with identity schedule", n=t.nrows)
        return factors
    return _synthesize(factors)


@dataclass(frozen=True)
class LUPSynthesis:
    """An SDS realising P*T, with ``permutation[i]`` the row of T in row i."""

    sds: LinearSDS
    permutation: tuple[int, ...]


def lup_synthesize(t: Matrix) -> LUPSynthesis:
    """Synthesize an SDS for P*T; succeeds for every square T."""
    factors = lup_decompose(t)
    return LUPSynthesis(_synthesize(factors), factors.permutation)


def moebius_sds(h: IncidenceElement) -> LinearSDS:
    """SDS on the comparability graph whose system matrix is H^{-1}.

    a_ii = 1, a_ij = -h(s_i, s_j) for s_i < s_j, and the schedule is the
    reverse of the lexicographically smallest linear extension.

    Raises:
        BadDiagonalError: If some h(s_i, s_i) is not 1
    """
    p: Poset = h.poset
    f = h.field
    bad = [i for i in range(p.n) if h.value(i, i) != f.one]
    if bad:
        raise BadDiagonalError(f"Diagonal entries {bad} are not 1")
    a = h.matrix.map_entries(
        lambda i, j, x: f.one if i == j else (f.neg(x) if p.lt(i, j) else f.zero)
    )
    order = first_linear_extension(p)[::-1]
    return LinearSDS(comparability_graph(p), a, Schedule(tuple(order), p.n))


def moebius_via_sds(h: IncidenceElement) -> Matrix:
    """H^{-1} as a system matrix; with h = zeta this is the Moebius matrix."""
    return system_matrix_perm(moebius_sds(h))


def random_system(
    rng: random.Random,
    field: FieldSpec,
    n: int,
    word_length: int | None = None,
    density: float = 0.5,
    nonzero_diagonal: bool = False,
) -> LinearSDS:
    """Random graph, adjacency-supported A and schedule.

    Without ``word_length`` the schedule is a random permutation; otherwise a
    random word of that length (at least n) covering every vertex.
    """
    g = random_graph(rng, n, density)
    a = random_matrix(rng, field, n, support=lambda i, j: i == j or g.adjacent(i, j))
    if nonzero_diagonal:
        a = a.map_entries(lambda i, j, x: random_scalar(rng, field, nonzero=True) if i == j else x)
    word = list(range(n))
    if word_length is not None:
        word += [rng.randrange(n) for _ in range(max(word_length, n) - n)]
    rng.shuffle(word)
    return LinearSDS(g, a, Schedule(tuple(word), n))


def schedule_from_json(obj: Any, n: int) -> Schedule:
    """Accept a JSON array or a digit string."""
    if isinstance(obj, str):
        return Schedule.parse(obj, n)
    if isinstance(obj, list):
        return Schedule(tuple(obj), n)
    raise InvalidScheduleError(f"Malformed schedule {obj!r}", pointer="/schedule")


def par_matrix(g: Graph, field: FieldSpec) -> Matrix:
    """Local-function matrix of the parity function: a vertex plus its neighbours."""
    return Matrix.identity(g.n, field) + adjacency_matrix(g, field)
