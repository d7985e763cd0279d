"""Chain-partitions, cuts and the cut identity for compressed Moebius matrices.

Given a poset P partitioned into chains C_1..C_n (any two chains are either
completely comparable or completely incomparable) and a cut of every chain
into a low and an up segment, the compressed Moebius matrices satisfy

    ^c(U, s) J = ^c(U_low, s_low) J + ^c(U_up, s_up) J
                 - ^c(U_low, s_low) J ^c(U_up, s_up) J

where J = I + (adjacency of the chain graph). Matrices are indexed in block
order: chain 1's elements ascending, then chain 2's, and so on. A chain whose
segment is empty contributes a zero row and column.
"""

import random
from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum

import structlog

from .exceptions import InvalidCutError, InvalidPartitionError, SingularMatrixError
from .field import FieldSpec
from .graph import support_graph
from .linalg import Matrix, mat_inv, mat_mul
from .poset import Poset, first_linear_extension, moebius
from .sds import LinearSDS, Schedule, compose_local_matrices
from .wordsds import block_compress, padded_compress, system_matrix_word

logger = structlog.get_logger(__name__)


class Side(str, Enum):
    LOW = "low"
    UP = "up"


@dataclass(frozen=True)
class ChainPartition:
    """Disjoint chains, each listed ascending, covering every element."""

    poset: Poset
    chains: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        chains = tuple(tuple(c) for c in self.chains)
        object.__setattr__(self, "chains", chains)
        flat = [x for c in chains for x in c]
        if any(len(c) == 0 for c in chains):
            raise InvalidPartitionError("Chains must be non-empty")
        if sorted(flat) != list(range(self.poset.n)):
            raise InvalidPartitionError(
                f"Chains must cover each of the {self.poset.n} elements exactly once"
            )
        for k, c in enumerate(chains):
            if not self.poset.is_chain(c):
                raise InvalidPartitionError(
                    f"Chain {k} is not listed in strictly ascending order", pointer=f"/chains/{k}"
                )
        for a in range(len(chains)):
            for b in range(a + 1, len(chains)):
                hits = [self.poset.comparable(x, y) for x in chains[a] for y in chains[b]]
                if any(hits) and not all(hits):
                    raise InvalidPartitionError(
                        f"Chains {a} and {b} are only partially comparable"
                    )

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.chains)

    @property
    def block_order(self) -> list[int]:
        return [x for c in self.chains for x in c]

    def chain_of(self, x: int) -> int:
        for k, c in enumerate(self.chains):
            if x in c:
                return k
        raise InvalidPartitionError(f"Element {x} lies in no chain")

    def chains_comparable(self, a: int, b: int) -> bool:
        return self.poset.comparable(self.chains[a][0], self.chains[b][0])


@dataclass(frozen=True)
class Cut:
    """Splits chain C_i into its first h[i] elements (low) and the rest (up)."""

    partition: ChainPartition
    h: tuple[int, ...]

    def __post_init__(self) -> None:
        h = tuple(self.h)
        object.__setattr__(self, "h", h)
        sizes = self.partition.sizes
        if len(h) != len(sizes):
            raise InvalidCutError(f"Expected {len(sizes)} cut positions, got {len(h)}")
        for k, (pos, size) in enumerate(zip(h, sizes)):
            if not 0 <= pos <= size:
                raise InvalidCutError(
                    f"Cut position {pos} outside 0..{size} for chain {k}", pointer=f"/h/{k}"
                )
        p = self.partition.poset
        for x in self.elements(Side.LOW):
            for y in self.elements(Side.UP):
                if p.lt(y, x):
                    raise InvalidCutError(f"Up element {y} lies below low element {x}")

    def segment(self, k: int, side: Side | str) -> tuple[int, ...]:
        chain = self.partition.chains[k]
        return chain[: self.h[k]] if Side(side) is Side.LOW else chain[self.h[k] :]

    def elements(self, side: Side | str) -> list[int]:
        """Elements of one side in block order."""
        return [x for k in range(len(self.h)) for x in self.segment(k, side)]

    def sizes(self, side: Side | str) -> tuple[int, ...]:
        return tuple(len(self.segment(k, side)) for k in range(len(self.h)))


def c_graph(part: ChainPartition, field: FieldSpec) -> Matrix:
    """J = I + adjacency of the chain graph."""
    n = len(part.chains)
    one, zero = field.one, field.zero
    return Matrix._raw(
        field,
        (
            (one if a == b or part.chains_comparable(a, b) else zero for b in range(n))
            for a in range(n)
        ),
        n,
    )


def _moebius_in_order(p: Poset, elements: Sequence[int], field: FieldSpec) -> Matrix:
    return moebius(p.induced(elements), field).matrix


def sub_poset_moebius(cut: Cut, side: Side | str, field: FieldSpec) -> Matrix:
    """Moebius matrix of the low or up sub-poset, rows in block order."""
    return _moebius_in_order(cut.partition.poset, cut.elements(side), field)


@dataclass(frozen=True)
class CutIdentityCheck:
    """Both sides of the cut identity and, when J is invertible, its J-free form."""

    j: Matrix
    compressed: Matrix
    compressed_low: Matrix
    compressed_up: Matrix
    lhs: Matrix
    rhs: Matrix
    holds: bool
    j_invertible: bool
    j_free_holds: bool | None


def cut_identity_check(cut: Cut, field: FieldSpec) -> CutIdentityCheck:
    """Evaluate both sides of the cut identity for ``cut`` over ``field``.

    Compressed Moebius matrices of the whole poset and of its low and up
    sides are taken in chain-block order and multiplied by the chain graph J.

    Args:
        cut: Chain-partitioned poset with a cut
        field: Field for the Moebius values

    Returns:
        The matrices on each side, whether they agree, and the J-free
        comparison when J is invertible
    """
    part = cut.partition
    u = _moebius_in_order(part.poset, part.block_order, field)
    c_full = block_compress(u, part.sizes)
    c_low = padded_compress(sub_poset_moebius(cut, Side.LOW, field), cut.sizes(Side.LOW))
    c_up = padded_compress(sub_poset_moebius(cut, Side.UP, field), cut.sizes(Side.UP))
    j = c_graph(part, field)

    lhs = mat_mul(c_full, j)
    low_j = mat_mul(c_low, j)
    up_j = mat_mul(c_up, j)
    rhs = low_j + up_j - mat_mul(low_j, up_j)

    try:
        mat_inv(j)
        j_invertible = True
    except SingularMatrixError:
        j_invertible = False
    j_free = None
    if j_invertible:
        j_free = c_full == c_low + c_up - mat_mul(low_j, c_up)

    logger.debug(
        "Cut identity evaluated",
        elements=part.poset.n,
        chains=len(part.chains),
        holds=lhs == rhs,
        j_invertible=j_invertible,
    )
    return CutIdentityCheck(
        j=j,
        compressed=c_full,
        compressed_low=c_low,
        compressed_up=c_up,
        lhs=lhs,
        rhs=rhs,
        holds=lhs == rhs,
        j_invertible=j_invertible,
        j_free_holds=j_free,
    )


@dataclass(frozen=True)
class ConstructiveCheck:
    """The cut identity read off an SDS on the chain graph with local matrix I - J.

    ``word`` is ``word_up`` followed by ``word_low``; the system maps satisfy
    full = low * up, and each equals I - ^c(U_side, s_side) J.
    """

    word_up: tuple[int, ...]
    word_low: tuple[int, ...]
    full: Matrix
    low: Matrix
    up: Matrix
    full_matches: bool
    low_matches: bool
    up_matches: bool
    composition_holds: bool

    @property
    def agrees(self) -> bool:
        return self.full_matches and self.low_matches and self.up_matches and self.composition_holds


def _half_map(a: Matrix, word: tuple[int, ...], n: int, graph_sds: LinearSDS) -> Matrix:
    if set(word) == set(range(n)):
        return system_matrix_word(graph_sds.with_schedule(Schedule(word, n)))
    return compose_local_matrices(a, word)


def constructive_check(cut: Cut, field: FieldSpec) -> ConstructiveCheck:
    """Read the cut identity off an SDS on the chain graph.

    The word comes from the lexicographically smallest linear extensions of
    the low and up sides, each read backwards and mapped to chain indices.

    Args:
        cut: Chain-partitioned poset with a cut
        field: Field for the local matrix I - J

    Returns:
        Both half maps, the full map and which of the expected equalities hold
    """
    part = cut.partition
    p = part.poset
    n = len(part.chains)
    j = c_graph(part, field)
    identity = Matrix.identity(n, field)
    a = identity - j

    extension: list[list[int]] = []
    for side in (Side.LOW, Side.UP):
        elements = cut.elements(side)
        order = first_linear_extension(p.induced(elements)) if elements else []
        extension.append([elements[k] for k in order])
    w_low, w_up = extension
    word_up = tuple(part.chain_of(x) for x in reversed(w_up))
    word_low = tuple(part.chain_of(x) for x in reversed(w_low))

    sds = LinearSDS(support_graph(j), a, Schedule(word_up + word_low, n))
    full = system_matrix_word(sds)
    low = _half_map(a, word_low, n, sds)
    up = _half_map(a, word_up, n, sds)

    check = cut_identity_check(cut, field)
    return ConstructiveCheck(
        word_up=word_up,
        word_low=word_low,
        full=full,
        low=low,
        up=up,
        full_matches=full == identity - check.lhs,
        low_matches=low == identity - mat_mul(check.compressed_low, j),
        up_matches=up == identity - mat_mul(check.compressed_up, j),
        composition_holds=full == mat_mul(low, up),
    )


def random_cut_instance(
    seed: int, n_elems: int, n_chains: int, density: float = 0.5
) -> tuple[Poset, ChainPartition, Cut]:
    """Seeded poset built chain-first, with a chain-partition and a valid cut.

    Low elements precede up elements in a hidden total order; two chains are
    comparable when joined in a random chain graph, which is grown until the
    induced relation is transitive.
    """
    if not 1 <= n_chains <= n_elems:
        raise InvalidPartitionError(f"Need 1 <= n_chains <= n_elems, got {n_chains}, {n_elems}")
    rng = random.Random(seed)

    lengths = [1] * n_chains
    for _ in range(n_elems - n_chains):
        lengths[rng.randrange(n_chains)] += 1
    cuts = [rng.randint(0, size) for size in lengths]

    ids = list(range(n_elems))
    rng.shuffle(ids)
    chains: list[list[int]] = []
    for size in lengths:
        chains.append(ids[:size])
        ids = ids[size:]

    def interleave(segments: list[list[int]]) -> list[int]:
        pools = [list(s) for s in segments if s]
        out = []
        while pools:
            pick = rng.randrange(len(pools))
            out.append(pools[pick].pop(0))
            if not pools[pick]:
                pools.pop(pick)
        return out

    order = interleave([c[:h] for c, h in zip(chains, cuts)])
    order += interleave([c[h:] for c, h in zip(chains, cuts)])
    rank = {x: k for k, x in enumerate(order)}
    owner = {x: k for k, c in enumerate(chains) for x in c}

    adjacent = {
        (a, b) for a in range(n_chains) for b in range(a + 1, n_chains) if rng.random() < density
    }

    def related(x: int, y: int) -> bool:
        a, b = sorted((owner[x], owner[y]))
        return (a == b or (a, b) in adjacent) and rank[x] < rank[y]

    while True:
        grown = False
        for x in range(n_elems):
            for y in range(n_elems):
                if not related(x, y):
                    continue
                for z in range(n_elems):
                    if related(y, z) and not related(x, z):
                        adjacent.add(tuple(sorted((owner[x], owner[z]))))
                        grown = True
        if not grown:
            break

    pairs = [(x, y) for x in range(n_elems) for y in range(n_elems) if related(x, y)]
    poset = Poset.from_strict_pairs(n_elems, pairs)
    partition = ChainPartition(poset, tuple(tuple(c) for c in chains))
    return poset, partition, Cut(partition, tuple(cuts))
