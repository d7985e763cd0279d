"""Pytest fixtures and configuration for linsds tests."""

import json
import random

import pytest

from linsds.field import FieldSpec
from linsds.graph import circ
from linsds.sds import LinearSDS, Schedule, par_matrix

# Circ4 with the parity local functions over F_2
CIRC4_PAR = [[1, 1, 0, 1], [1, 1, 1, 0], [0, 1, 1, 1], [1, 0, 1, 1]]
CIRC4_EDGES = [[0, 1], [0, 3], [1, 2], [2, 3]]


@pytest.fixture
def f2() -> FieldSpec:
    return FieldSpec.prime(2)


@pytest.fixture
def f3() -> FieldSpec:
    return FieldSpec.prime(3)


@pytest.fixture
def f5() -> FieldSpec:
    return FieldSpec.prime(5)


@pytest.fixture
def q() -> FieldSpec:
    return FieldSpec.rational()


@pytest.fixture
def rng() -> random.Random:
    """Seeded generator so randomised tests are reproducible."""
    return random.Random(20240601)


@pytest.fixture
def circ4_sds(f2: FieldSpec) -> LinearSDS:
    """Circ4/Par with schedule 0123."""
    g = circ(4)
    return LinearSDS(g, par_matrix(g, f2), Schedule.identity(4))


@pytest.fixture
def circ4_word_sds(circ4_sds: LinearSDS) -> LinearSDS:
    """Circ4/Par with the word 013120321."""
    return circ4_sds.with_schedule(Schedule.parse("013120321", 4))


def system_json(schedule: str | list[int] = "0123", field: object = None) -> str:
    doc: dict[str, object] = {
        "graph": {"n": 4, "edges": CIRC4_EDGES},
        "matrix": CIRC4_PAR,
        "schedule": schedule,
    }
    if field is not None:
        doc["field"] = field
    return json.dumps(doc)


@pytest.fixture
def circ4_json() -> str:
    return system_json()


@pytest.fixture
def make_system_json():
    """Factory for Circ4/Par system documents with a chosen schedule and field."""
    return system_json
