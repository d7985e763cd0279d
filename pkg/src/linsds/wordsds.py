"""Word update schedules: block expansion and compression, the lifted word and
the closed form of the system matrix when vertices update more than once.

Conventions: the k-th occurrence (0-based) of vertex i in the word becomes the
expanded vertex ``offset_i + k``; expanded indices are 0-based internally and
rendered 1-based as ``u1 .. um``.
"""

from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from enum import Enum

import structlog

from .exceptions import BadCutError, BadMultiplicityError, DimensionMismatchError
from .graph import ExpandedGraph, Graph, expand_graph
from .linalg import Matrix, mat_mul, nilpotent_inverse_series, restrict_after
from .poset import Poset, poset_from_acyclic_orientation
from .sds import LinearSDS, Schedule, system_matrix_perm

logger = structlog.get_logger(__name__)


@dataclass(frozen=True)
class MultiplicityVector:
    """How often every vertex occurs in a word: (m_1, ..., m_n), each >= 1."""

    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "counts", tuple(self.counts))
        if any(not isinstance(c, int) or c < 1 for c in self.counts):
            raise BadMultiplicityError(f"Multiplicities must be >= 1, got {list(self.counts)}")

    @classmethod
    def from_schedule(cls, schedule: Schedule) -> "MultiplicityVector":
        return cls(schedule.multiplicities())

    @property
    def total(self) -> int:
        return sum(self.counts)

    @property
    def offsets(self) -> tuple[int, ...]:
        out, acc = [], 0
        for c in self.counts:
            out.append(acc)
            acc += c
        return tuple(out)

    def block(self, i: int) -> range:
        start = self.offsets[i]
        return range(start, start + self.counts[i])

    def __len__(self) -> int:
        return len(self.counts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.counts)


def _owner(sizes: Sequence[int]) -> list[int]:
    """Block index of every expanded position."""
    return [i for i, c in enumerate(sizes) for _ in range(c)]


def block_expand(t: Matrix, s: Sequence[int]) -> Matrix:
    """Replicate t_ij over an m_i x m_j block.

    Raises:
        DimensionMismatchError: If ``t`` is not n x n with n = len(s)
    """
    sizes = tuple(s)
    if t.shape != (len(sizes), len(sizes)):
        raise DimensionMismatchError(
            f"Cannot expand a {t.shape} matrix with {len(sizes)} multiplicities"
        )
    owner = _owner(sizes)
    return Matrix._raw(t.field, ((t[a, b] for b in owner) for a in owner), len(owner))


def padded_compress(t: Matrix, sizes: Sequence[int]) -> Matrix:
    """Sum every m_i x m_j block; zero-size blocks give zero rows and columns."""
    sizes = tuple(sizes)
    if any(c < 0 for c in sizes):
        raise BadMultiplicityError(f"Block sizes must be non-negative, got {list(sizes)}")
    m = sum(sizes)
    if t.shape != (m, m):
        raise DimensionMismatchError(f"Cannot compress a {t.shape} matrix into blocks {sizes}")
    f = t.field
    n = len(sizes)
    owner = _owner(sizes)
    sums = [[f.zero] * n for _ in range(n)]
    for a in range(m):
        row = sums[owner[a]]
        for b in range(m):
            x = t[a, b]
            if x != 0:
                row[owner[b]] = f.add(row[owner[b]], x)
    return Matrix._raw(f, sums, n)


def block_compress(t: Matrix, s: Sequence[int]) -> Matrix:
    """Sum every m_i x m_j block into one entry; every m_i must be >= 1."""
    sizes = tuple(MultiplicityVector(tuple(s)).counts)
    return padded_compress(t, sizes)


@dataclass(frozen=True)
class LiftedWord:
    """The word with its k-th occurrence of v_i replaced by u_{offset_i + k}.

    ``bar_word`` holds 0-based expanded indices and is a permutation of 0..m-1.
    """

    bar_word: tuple[int, ...]
    origin: Schedule
    multiplicities: MultiplicityVector

    def __post_init__(self) -> None:
        m = self.multiplicities.total
        if sorted(self.bar_word) != list(range(m)):
            raise BadMultiplicityError("Lifted word is not a permutation of the expanded vertices")
        owner = _owner(self.multiplicities.counts)
        if tuple(owner[u] for u in self.bar_word) != self.origin.word:
            raise BadMultiplicityError("Lifted word does not project onto its origin")

    @property
    def one_based(self) -> list[int]:
        return [u + 1 for u in self.bar_word]

    def __str__(self) -> str:
        return " ".join(f"u{u}" for u in self.one_based)


def lift_word(w: Schedule) -> LiftedWord:
    """Replace each occurrence by its own expanded vertex."""
    s = MultiplicityVector.from_schedule(w)
    offsets = s.offsets
    seen = [0] * w.n
    bar = []
    for v in w.word:
        bar.append(offsets[v] + seen[v])
        seen[v] += 1
    return LiftedWord(tuple(bar), w, s)


class Convention(str, Enum):
    """Which matrix is block-expanded in the word formula."""

    SHIFTED = "shifted"  # B = ^e(A - I, s)
    UNSHIFTED = "unshifted"  # B = ^e(A, s); does not reproduce the sequential map


@dataclass(frozen=True)
class WordTrace:
    """Every intermediate of the word closed form."""

    convention: Convention
    multiplicities: MultiplicityVector
    lifted: LiftedWord
    expanded: Matrix
    restricted: Matrix
    inverse: Matrix
    compressed: Matrix
    system_matrix: Matrix


def word_system_trace(
    sds: LinearSDS, convention: Convention | str = Convention.SHIFTED
) -> WordTrace:
    """Evaluate I + ^c((I - B_wbar)^{-1}, s)(A - I) and keep the intermediates."""
    convention = Convention(convention)
    f = sds.field
    lifted = lift_word(sds.schedule)
    s = lifted.multiplicities
    identity = Matrix.identity(sds.n, f)
    a_minus_i = sds.a - identity
    base = a_minus_i if convention is Convention.SHIFTED else sds.a
    b = block_expand(base, s.counts)
    b_bar = restrict_after(b, lifted.bar_word)
    inverse = nilpotent_inverse_series(b_bar)
    compressed = block_compress(inverse, s.counts)
    system = identity + mat_mul(compressed, a_minus_i)
    logger.debug(
        "Word closed form evaluated",
        n=sds.n,
        m=s.total,
        schedule=str(sds.schedule),
        convention=convention.value,
    )
    return WordTrace(
        convention=convention,
        multiplicities=s,
        lifted=lifted,
        expanded=b,
        restricted=b_bar,
        inverse=inverse,
        compressed=compressed,
        system_matrix=system,
    )


def system_matrix_word(sds: LinearSDS) -> Matrix:
    """Closed form of the system matrix for any word schedule."""
    return word_system_trace(sds, Convention.SHIFTED).system_matrix


def system_matrix(sds: LinearSDS) -> Matrix:
    """Route permutations to the permutation formula and words to the word formula."""
    if sds.schedule.is_permutation:
        return system_matrix_perm(sds)
    return system_matrix_word(sds)


def split_compose_check(sds: LinearSDS, cut_at: int) -> bool:
    """True when the map of the whole word is the map of its tail after its head.

    Raises:
        BadCutError: If either half misses a vertex
    """
    word = sds.schedule.word
    head, tail = word[:cut_at], word[cut_at:]
    for name, part in (("first", head), ("second", tail)):
        missing = sorted(set(range(sds.n)) - set(part))
        if missing:
            raise BadCutError(f"The {name} half of the word misses vertices {missing}")
    first = system_matrix_word(sds.with_schedule(Schedule(head, sds.n)))
    second = system_matrix_word(sds.with_schedule(Schedule(tail, sds.n)))
    return system_matrix_word(sds) == mat_mul(second, first)


@dataclass(frozen=True)
class WordPoset:
    """The poset on the expanded vertices induced by the lifted word."""

    expanded: ExpandedGraph
    lifted: LiftedWord
    poset: Poset

    def fibre_chains(self) -> list[list[int]]:
        """Each fibre in ascending order: later occurrences sit lower."""
        return [list(reversed(block)) for block in self.expanded.blocks]

    def fibres_are_chains(self) -> bool:
        return all(self.poset.is_chain(chain) for chain in self.fibre_chains())


def word_poset(graph: Graph, schedule: Schedule) -> WordPoset:
    """Poset of the expanded graph under the lifted word.

    Each vertex's copies form a chain, so the copies give a chain-partition.

    Args:
        graph: Dependency graph on n vertices
        schedule: Word covering every vertex

    Returns:
        The expanded graph, the lifted word and the induced poset
    """
    s = MultiplicityVector.from_schedule(schedule)
    expanded = expand_graph(graph, s.counts)
    lifted = lift_word(schedule)
    poset = poset_from_acyclic_orientation(expanded.graph, lifted.bar_word)
    return WordPoset(expanded, lifted, poset)
