"""Models package for linsds documents and reports."""

from .base import BaseModel
from .documents import (
    CutDocument,
    FieldDocument,
    GraphDocument,
    MatrixDocument,
    PosetDocument,
    SystemDocument,
)
from .reports import (
    CheckResult,
    ConstructiveReport,
    CutReport,
    CycleEntry,
    ErrorReport,
    InverseReport,
    LUSynthesisReport,
    MoebiusReport,
    NoLUReport,
    PhaseReport,
    SelftestReport,
    SystemReport,
)

__all__ = [
    "BaseModel",
    # Documents
    "CutDocument",
    "FieldDocument",
    "GraphDocument",
    "MatrixDocument",
    "PosetDocument",
    "SystemDocument",
    # Reports
    "CheckResult",
    "ConstructiveReport",
    "CutReport",
    "CycleEntry",
    "ErrorReport",
    "InverseReport",
    "LUSynthesisReport",
    "MoebiusReport",
    "NoLUReport",
    "PhaseReport",
    "SelftestReport",
    "SystemReport",
]
