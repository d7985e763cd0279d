"""Worked examples and a seeded oracle batch, run by ``linsds selftest``."""

import random
from collections.abc import Callable

import structlog

from .cut import ChainPartition, Cut, constructive_check, cut_identity_check, random_cut_instance
from .exceptions import LinearSDSError
from .field import FieldSpec
from .graph import circ
from .linalg import Matrix, mat_mul, restrict_after
from .models.reports import CheckResult, SelftestReport
from .phase import enumerate_phase_space, fixed_points_algebraic
from .poset import Poset, moebius, zeta
from .sds import (
    LinearSDS,
    Schedule,
    compose_oracle,
    invert_sds,
    lu_synthesize,
    moebius_via_sds,
    par_matrix,
    random_system,
    system_matrix_perm,
)
from .wordsds import block_compress, lift_word, system_matrix_word

logger = structlog.get_logger(__name__)

F2 = FieldSpec.prime(2)

CIRC4_RESTRICT_0123 = [[0, 0, 0, 0], [1, 0, 0, 0], [0, 1, 0, 0], [1, 0, 1, 0]]
CIRC4_RESTRICT_3210 = [[0, 1, 0, 1], [0, 0, 1, 0], [0, 0, 0, 1], [0, 0, 0, 0]]
CIRC4_SYSTEM_0123 = [[1, 1, 0, 1], [1, 0, 1, 1], [1, 0, 0, 0], [0, 1, 0, 0]]
CIRC4_SYSTEM_WORD = [[0, 1, 1, 1], [1, 1, 1, 0], [1, 1, 0, 1], [0, 0, 0, 1]]
CIRC4_WORD = "013120321"
CIRC4_LIFTED = [1, 3, 8, 4, 6, 2, 9, 7, 5]

# Printed worked example under the unshifted expansion; its compression is
# reproduced exactly although the resulting map disagrees with the oracle.
PRINTED_INVERSE = [
    [1, 0, 0, 0, 0, 0, 0, 0, 0],
    [1, 1, 0, 1, 0, 0, 0, 1, 0],
    [1, 0, 1, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 1, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 1, 1, 1, 1, 1],
    [0, 0, 0, 1, 0, 1, 0, 1, 0],
    [1, 1, 0, 0, 0, 0, 1, 1, 1],
    [1, 0, 0, 0, 0, 0, 0, 1, 0],
    [1, 1, 0, 0, 0, 1, 0, 1, 1],
]
PRINTED_COMPRESSED = [[1, 1, 0, 1], [1, 1, 0, 0], [0, 1, 0, 1], [1, 0, 1, 1]]

Check = Callable[[], str | None]


def _run(name: str, check: Check) -> CheckResult:
    try:
        detail = check()
    except (LinearSDSError, AssertionError) as exc:
        logger.warning("Self-check failed", check=name, error=str(exc))
        return CheckResult(name=name, passed=False, detail=str(exc) or None)
    return CheckResult(name=name, passed=True, detail=detail)


def _circ4(schedule: str) -> LinearSDS:
    g = circ(4)
    return LinearSDS(g, par_matrix(g, F2), Schedule.parse(schedule, 4))


def _restriction() -> str | None:
    a = par_matrix(circ(4), F2)
    assert restrict_after(a, (0, 1, 2, 3)).to_literals() == CIRC4_RESTRICT_0123
    assert restrict_after(a, (3, 2, 1, 0)).to_literals() == CIRC4_RESTRICT_3210
    return None


def _permutation_formula() -> str | None:
    sds = _circ4("0123")
    m = system_matrix_perm(sds)
    assert m.to_literals() == CIRC4_SYSTEM_0123, "closed form differs from the worked example"
    assert m == compose_oracle(sds), "closed form differs from the sequential product"
    return None


def _word_formula() -> str | None:
    sds = _circ4(CIRC4_WORD)
    lifted = lift_word(sds.schedule)
    assert lifted.one_based == CIRC4_LIFTED, f"lifted word {lifted}"
    assert lifted.multiplicities.counts == (2, 3, 2, 2)
    m = system_matrix_word(sds)
    assert m == compose_oracle(sds), "word formula differs from the sequential product"
    assert m.to_literals() == CIRC4_SYSTEM_WORD
    return str(lifted)


def _printed_compression() -> str | None:
    inverse = Matrix(F2, PRINTED_INVERSE)
    assert block_compress(inverse, (2, 3, 2, 2)).to_literals() == PRINTED_COMPRESSED
    return "printed example follows the unshifted expansion"


def _inverse() -> str | None:
    sds = _circ4("0123")
    inverse = invert_sds(sds)
    assert inverse.a == sds.a and str(inverse.schedule) == "3210"
    product = mat_mul(system_matrix_perm(inverse), system_matrix_perm(sds))
    assert product.is_identity(), "inverse SDS does not undo the system map"
    return None


def _lu_synthesis() -> str | None:
    q = FieldSpec.rational()
    t = Matrix(q, [[2, 1], [4, 3]])
    sds = lu_synthesize(t)
    assert isinstance(sds, LinearSDS), "expected an LU decomposition"
    assert sds.a == Matrix(q, [[2, 1], [2, 1]])
    assert system_matrix_perm(sds) == t
    return None


def _moebius_chain() -> str | None:
    q = FieldSpec.rational()
    p = Poset.chain(2)
    expected = Matrix(q, [[1, -1], [0, 1]])
    assert moebius(p, q).matrix == expected
    assert moebius_via_sds(zeta(p, q)) == expected
    return None


def _phase() -> str | None:
    sds = _circ4("0123")
    space = enumerate_phase_space(sds)
    labels = [space.label(x) for x in space.fixed_points]
    assert labels == ["0000", "0101", "1010", "1111"], f"fixed points {labels}"
    assert space.is_bijective
    assert len(fixed_points_algebraic(sds)) == 4
    return None


def _two_chain_cut() -> str | None:
    q = FieldSpec.rational()
    p = Poset.chain(2)
    cut = Cut(ChainPartition(p, ((0, 1),)), (1,))
    check = cut_identity_check(cut, q)
    assert check.holds and check.compressed.to_literals() == [["1/1"]]
    return None


def worked_examples() -> list[CheckResult]:
    checks: list[tuple[str, Check]] = [
        ("restriction", _restriction),
        ("permutation-formula", _permutation_formula),
        ("word-formula", _word_formula),
        ("printed-compression", _printed_compression),
        ("inverse-sds", _inverse),
        ("lu-synthesis", _lu_synthesis),
        ("moebius-chain", _moebius_chain),
        ("phase-space", _phase),
        ("two-chain-cut", _two_chain_cut),
    ]
    return [_run(name, check) for name, check in checks]


def oracle_batch(seed: int, instances: int) -> list[CheckResult]:
    """Random systems, words and cuts compared against their oracles."""
    rng = random.Random(seed)
    fields = [FieldSpec.prime(2), FieldSpec.prime(3), FieldSpec.prime(5), FieldSpec.rational()]
    failures = {"permutation": 0, "word": 0, "inverse": 0, "cut": 0}

    for k in range(instances):
        field = fields[k % len(fields)]
        n = rng.randint(1, 5)
        sds = random_system(rng, field, n)
        if system_matrix_perm(sds) != compose_oracle(sds):
            failures["permutation"] += 1
        word = random_system(rng, field, n, word_length=rng.randint(n, 2 * n + 2))
        if system_matrix_word(word) != compose_oracle(word):
            failures["word"] += 1
        invertible = random_system(rng, field, n, nonzero_diagonal=True)
        inverse = invert_sds(invertible)
        product = mat_mul(system_matrix_perm(inverse), system_matrix_perm(invertible))
        if not product.is_identity():
            failures["inverse"] += 1
        elems = rng.randint(1, 8)
        _, _, cut = random_cut_instance(rng.randrange(2**31), elems, rng.randint(1, elems))
        if not (cut_identity_check(cut, field).holds and constructive_check(cut, field).agrees):
            failures["cut"] += 1

    return [
        CheckResult(
            name=f"oracle-{kind}",
            passed=count == 0,
            detail=f"{count} of {instances} instances disagree" if count else None,
        )
        for kind, count in failures.items()
    ]


def run_selftest(seed: int = 0, instances: int = 25) -> SelftestReport:
    checks = worked_examples() + oracle_batch(seed, instances)
    logger.info("Self-test finished", passed=sum(c.passed for c in checks), total=len(checks))
    return SelftestReport(seed=seed, checks=checks)


__all__ = ["run_selftest", "worked_examples", "oracle_batch"]
