"""Seeded cross-checks of every closed form against its brute-force oracle."""

import random

import pytest

from linsds.cut import constructive_check, cut_identity_check, random_cut_instance
from linsds.field import FieldSpec, random_scalar
from linsds.linalg import (
    Matrix,
    NoLU,
    lu_decompose,
    lup_decompose,
    mat_inv,
    mat_mul,
    random_matrix,
)
from linsds.phase import enumerate_phase_space, fixed_points_algebraic
from linsds.poset import IncidenceElement, chain_power_oracle, moebius, random_poset, zeta
from linsds.sds import (
    Schedule,
    compose_oracle,
    invert_sds,
    lu_synthesize,
    lup_synthesize,
    moebius_via_sds,
    random_system,
    system_matrix_perm,
)
from linsds.wordsds import split_compose_check, system_matrix_word, word_poset

FIELDS = [FieldSpec.prime(2), FieldSpec.prime(3), FieldSpec.prime(5), FieldSpec.rational()]
PRIME_FIELDS = FIELDS[:3]
F5_AND_Q = [FieldSpec.prime(5), FieldSpec.rational()]

# Per-field counts; totals are four (or two) times these
PERMUTATIONS = 250
WORDS = 250
INVERSES = 50
POSETS = 50
LU_PRODUCTS = 100
ZERO_PIVOTS = 25
INCIDENCE_ELEMENTS = 50
CUTS = 150


def unit_lower(rng: random.Random, field: FieldSpec, n: int) -> Matrix:
    strict = random_matrix(rng, field, n, support=lambda i, j: i > j)
    return strict + Matrix.identity(n, field)


def invertible_upper(rng: random.Random, field: FieldSpec, n: int) -> Matrix:
    upper = random_matrix(rng, field, n, support=lambda i, j: i <= j)
    return upper.map_entries(
        lambda i, j, x: random_scalar(rng, field, nonzero=True) if i == j else x
    )


@pytest.mark.parametrize("field", FIELDS, ids=str)
class TestSystemMatrices:
    """Closed forms against the product of local matrices."""

    def test_permutations(self, field):
        """Test permutation schedules, and the word formula on them."""
        rng = random.Random(101)
        for _ in range(PERMUTATIONS):
            sds = random_system(rng, field, rng.randint(1, 6))
            closed = system_matrix_perm(sds)
            assert closed == compose_oracle(sds)
            assert system_matrix_word(sds) == closed

    def test_words(self, field):
        """Test word schedules of up to twelve updates."""
        rng = random.Random(202)
        for _ in range(WORDS):
            n = rng.randint(1, 5)
            sds = random_system(rng, field, n, word_length=rng.randint(n, 12))
            assert system_matrix_word(sds) == compose_oracle(sds)
            assert word_poset(sds.graph, sds.schedule).fibres_are_chains()

    def test_split_words(self, field):
        """Test a word built from two covering halves composes."""
        rng = random.Random(303)
        for _ in range(15):
            n = rng.randint(1, 4)
            first = random_system(rng, field, n, word_length=n + rng.randint(0, 3))
            tail = list(range(n)) + [rng.randrange(n) for _ in range(rng.randint(0, 3))]
            rng.shuffle(tail)
            word = first.schedule.word + tuple(tail)
            sds = first.with_schedule(Schedule(word, n))
            assert split_compose_check(sds, len(first.schedule.word))

    def test_inverse(self, field):
        """Test the inverse SDS undoes the system map."""
        rng = random.Random(404)
        for _ in range(INVERSES):
            sds = random_system(rng, field, rng.randint(1, 6), nonzero_diagonal=True)
            product = mat_mul(compose_oracle(invert_sds(sds)), compose_oracle(sds))
            assert product.is_identity()


@pytest.mark.parametrize("field", FIELDS, ids=str)
class TestSynthesisAndMoebius:
    """Synthesis and Moebius inversion against direct computation."""

    def test_synthesis(self, field):
        """Test LU synthesis when it exists and LUP otherwise."""
        rng = random.Random(505)
        for _ in range(30):
            t = random_matrix(rng, field, rng.randint(1, 5))
            outcome = lu_synthesize(t)
            if not isinstance(outcome, NoLU):
                assert compose_oracle(outcome) == t
            lup = lup_synthesize(t)
            assert compose_oracle(lup.sds) == t.permute_rows(lup.permutation)

    def test_moebius(self, field):
        """Test the Moebius matrix via an SDS against the inverse of zeta."""
        rng = random.Random(606)
        for _ in range(POSETS):
            p = random_poset(rng, rng.randint(1, 8))
            z = zeta(p, field)
            mu = mat_inv(z.matrix)
            assert moebius(p, field).matrix == mu
            assert moebius_via_sds(z) == mu


@pytest.mark.parametrize("field", F5_AND_Q, ids=str)
class TestLUProducts:
    """Synthesis from constructed factorisations."""

    def test_unit_lower_times_upper(self, field):
        """Test T = L*U is realised exactly and factors back into L and U."""
        rng = random.Random(909)
        for _ in range(LU_PRODUCTS):
            n = rng.randint(1, 6)
            lower, upper = unit_lower(rng, field, n), invertible_upper(rng, field, n)
            t = mat_mul(lower, upper)
            factors = lu_decompose(t)
            assert not isinstance(factors, NoLU)
            assert (factors.lower, factors.upper) == (lower, upper)
            sds = lu_synthesize(t)
            assert not isinstance(sds, NoLU)
            assert sds.schedule.word == tuple(range(n))
            assert system_matrix_perm(sds) == t
            assert compose_oracle(sds) == t

    def test_zero_leading_pivot(self, field):
        """Test a zero top-left entry over a non-zero gives NoLU while LUP still factors."""
        rng = random.Random(1010)
        for _ in range(ZERO_PIVOTS):
            n = rng.randint(2, 6)
            t = random_matrix(rng, field, n, support=lambda i, j: (i, j) != (0, 0))
            t = t.map_entries(
                lambda i, j, x: random_scalar(rng, field, nonzero=True) if (i, j) == (1, 0) else x
            )
            outcome = lu_decompose(t)
            assert isinstance(outcome, NoLU)
            assert outcome.pivot_index == 0
            assert isinstance(lu_synthesize(t), NoLU)
            factors = lup_decompose(t)
            assert factors.reconstructs(t)
            assert not factors.is_pivot_free
            lup = lup_synthesize(t)
            assert system_matrix_perm(lup.sds) == t.permute_rows(lup.permutation)


@pytest.mark.parametrize("field", F5_AND_Q, ids=str)
def test_chain_powers(field):
    """Test chain sums of random incidence elements against matrix powers."""
    rng = random.Random(1111)
    for _ in range(INCIDENCE_ELEMENTS):
        n = rng.randint(1, 6)
        p = random_poset(rng, n)
        h = IncidenceElement(p, random_matrix(rng, field, n, support=p.le))
        strict = h.matrix.off_diagonal_part()
        for k in range(1, n + 1):
            assert chain_power_oracle(h, k, strict=False) == h.matrix.power(k)
            assert chain_power_oracle(h, k, strict=True) == strict.power(k)
        assert chain_power_oracle(h, n, strict=True).is_zero()


@pytest.mark.parametrize("field", F5_AND_Q, ids=str)
def test_cut_identity(field):
    """Test the cut identity, its J-free form and its constructive reading."""
    rng = random.Random(707)
    j_free_seen = 0
    for _ in range(CUTS):
        n_elems = rng.randint(1, 10)
        _, _, cut = random_cut_instance(rng.randrange(2**31), n_elems, rng.randint(1, n_elems))
        check = cut_identity_check(cut, field)
        assert check.holds
        if check.j_invertible:
            assert check.j_free_holds is True
            j_free_seen += 1
        else:
            assert check.j_free_holds is None
        assert constructive_check(cut, field).agrees
    assert j_free_seen > 0


@pytest.mark.parametrize("field", PRIME_FIELDS, ids=str)
def test_fixed_points(field):
    """Test enumerated fixed points against the kernel of M - I."""
    rng = random.Random(808)
    for _ in range(15):
        sds = random_system(rng, field, rng.randint(1, 3))
        space = enumerate_phase_space(sds)
        assert fixed_points_algebraic(sds) == [space.state(x) for x in space.fixed_points]
