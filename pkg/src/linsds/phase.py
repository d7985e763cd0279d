"""Exhaustive phase-space analysis of a linear SDS over F_p.

States are indexed lexicographically as base-p digit vectors with vertex 0 as
the most significant digit, so state 0b0101 over F_2 is index 5.
"""

from dataclasses import dataclass
from itertools import product
from typing import Any

import numpy as np
import structlog

from .config import DEFAULT_MAX_STATES
from .exceptions import RationalFieldUnsupportedError, StateSpaceTooLargeError
from .field import FieldSpec
from .linalg import Matrix, nullspace_basis
from .sds import LinearSDS
from .wordsds import system_matrix

logger = structlog.get_logger(__name__)


@dataclass(frozen=True, eq=False)
class PhaseSpace:
    """The functional graph of the system map on F_p^n."""

    field: FieldSpec
    n: int
    successor: np.ndarray
    cycles: tuple[tuple[int, ...], ...]
    fixed_points: tuple[int, ...]
    depth: np.ndarray
    tail_depth: int

    @property
    def num_states(self) -> int:
        return int(self.successor.shape[0])

    @property
    def in_degree(self) -> np.ndarray:
        return np.bincount(self.successor, minlength=self.num_states)

    @property
    def is_bijective(self) -> bool:
        return bool(np.all(self.in_degree == 1))

    @property
    def transient_count(self) -> int:
        return int(np.count_nonzero(self.depth))

    def state(self, index: int) -> tuple[int, ...]:
        return state_digits(index, self.field.characteristic, self.n)

    def label(self, index: int) -> str:
        digits = self.state(index)
        if self.field.characteristic <= 10:
            return "".join(str(d) for d in digits)
        return ",".join(str(d) for d in digits)


def state_digits(index: int, p: int, n: int) -> tuple[int, ...]:
    digits = []
    for _ in range(n):
        index, d = divmod(index, p)
        digits.append(d)
    return tuple(reversed(digits))


def state_index(state: tuple[int, ...], p: int) -> int:
    index = 0
    for d in state:
        index = index * p + d
    return index


def _check_budget(field: FieldSpec, n: int, max_states: int) -> int:
    if not field.is_prime:
        raise RationalFieldUnsupportedError("Phase spaces exist only over prime fields")
    count = field.characteristic**n
    if count > max_states:
        raise StateSpaceTooLargeError(
            f"{field.characteristic}^{n} = {count} states exceeds the budget of {max_states}"
        )
    return count


def successor_table(m: Matrix, max_states: int = DEFAULT_MAX_STATES) -> np.ndarray:
    """Index of M x for every state x."""
    p = m.field.characteristic
    n = m.nrows
    count = _check_budget(m.field, n, max_states)
    weights = np.array([p ** (n - 1 - k) for k in range(n)], dtype=np.int64)
    indices = np.arange(count, dtype=np.int64)
    states = (indices[:, None] // weights[None, :]) % p
    mat = np.array(m.rows, dtype=np.int64).reshape(n, n)
    images = (states @ mat.T) % p
    return images @ weights


def enumerate_phase_space(sds: LinearSDS, max_states: int = DEFAULT_MAX_STATES) -> PhaseSpace:
    """Build the full functional graph and decompose it into cycles and tails.

    Raises:
        RationalFieldUnsupportedError: If the SDS lives over Q
        StateSpaceTooLargeError: If p^n exceeds ``max_states``
    """
    _check_budget(sds.field, sds.n, max_states)
    successor = successor_table(system_matrix(sds), max_states)
    succ = successor.tolist()
    count = len(succ)

    # 0 unvisited, 1 on the current walk, 2 finished
    colour = [0] * count
    depth = [0] * count
    cycles: list[tuple[int, ...]] = []
    for start in range(count):
        if colour[start]:
            continue
        walk = []
        x = start
        while colour[x] == 0:
            colour[x] = 1
            walk.append(x)
            x = succ[x]
        tail = walk
        if colour[x] == 1:
            k = walk.index(x)
            cycle = walk[k:]
            low = cycle.index(min(cycle))
            cycles.append(tuple(cycle[low:] + cycle[:low]))
            tail = walk[:k]
        for y in reversed(tail):
            depth[y] = depth[succ[y]] + 1
        for y in walk:
            colour[y] = 2

    cycles.sort()
    fixed = tuple(sorted(c[0] for c in cycles if len(c) == 1))
    tail_depth = max(depth) if depth else 0
    logger.debug(
        "Phase space enumerated",
        states=count,
        cycles=len(cycles),
        fixed_points=len(fixed),
        tail_depth=tail_depth,
    )
    return PhaseSpace(
        field=sds.field,
        n=sds.n,
        successor=successor,
        cycles=tuple(cycles),
        fixed_points=fixed,
        depth=np.array(depth, dtype=np.int64),
        tail_depth=tail_depth,
    )


def fixed_points_algebraic(
    sds: LinearSDS, max_states: int = DEFAULT_MAX_STATES
) -> list[tuple[int, ...]]:
    """All x with M x = x, enumerated from a basis of the kernel of M - I."""
    m = system_matrix(sds)
    f = m.field
    if not f.is_prime:
        raise RationalFieldUnsupportedError("Fixed-point enumeration needs a prime field")
    basis = nullspace_basis(m - Matrix.identity(m.nrows, f))
    p = f.characteristic
    if p ** len(basis) > max_states:
        raise StateSpaceTooLargeError(f"Kernel has {p}^{len(basis)} elements")
    points = set()
    for coeffs in product(range(p), repeat=len(basis)):
        vec = [0] * m.nrows
        for c, b in zip(coeffs, basis):
            if c:
                vec = [(v + c * x) % p for v, x in zip(vec, b)]
        points.add(tuple(vec))
    return sorted(points, key=lambda s: state_index(s, p))


def to_dot(space: PhaseSpace) -> str:
    """Graphviz digraph with one node per state and one edge per successor."""
    lines = ["digraph phase_space {", "  node [shape=plaintext];"]
    for x in range(space.num_states):
        lines.append(f'  s{x} [label="{space.label(x)}"];')
    for x, y in enumerate(space.successor.tolist()):
        lines.append(f"  s{x} -> s{y};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cycle_inventory(space: PhaseSpace) -> dict[str, Any]:
    """JSON-ready summary: cycles with lengths and basin sizes, counts per length."""
    basin = [0] * len(space.cycles)
    cycle_of: dict[int, int] = {}
    for k, cycle in enumerate(space.cycles):
        for x in cycle:
            cycle_of[x] = k
    succ = space.successor.tolist()
    order = sorted(range(space.num_states), key=lambda x: int(space.depth[x]))
    owner = [-1] * space.num_states
    for x in order:
        owner[x] = cycle_of[x] if x in cycle_of else owner[succ[x]]
        basin[owner[x]] += 1

    counts: dict[int, int] = {}
    for cycle in space.cycles:
        counts[len(cycle)] = counts.get(len(cycle), 0) + 1
    return {
        "field": space.field.to_json(),
        "n": space.n,
        "states": space.num_states,
        "cycles": [
            {
                "length": len(cycle),
                "states": [space.label(x) for x in cycle],
                "basin_size": basin[k],
            }
            for k, cycle in enumerate(space.cycles)
        ],
        "cycle_length_counts": {str(length): c for length, c in sorted(counts.items())},
        "fixed_points": [space.label(x) for x in space.fixed_points],
        "tail_depth": space.tail_depth,
        "transient_states": space.transient_count,
        "bijective": space.is_bijective,
    }
