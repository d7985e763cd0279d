"""Unit tests for models."""

import json

import pytest

from linsds.cut import constructive_check, cut_identity_check, random_cut_instance
from linsds.exceptions import (
    DimensionMismatchError,
    InvalidFieldError,
    InvalidGraphError,
    SupportViolationError,
    ValidationError,
)
from linsds.field import FieldSpec
from linsds.linalg import Matrix, lu_decompose
from linsds.models import (
    BaseModel,
    CutDocument,
    CutReport,
    MatrixDocument,
    NoLUReport,
    PhaseReport,
    PosetDocument,
    SelftestReport,
    SystemDocument,
)
from linsds.models.reports import CheckResult
from linsds.phase import cycle_inventory, enumerate_phase_space
from linsds.poset import Poset


class TestBaseModel:
    """Test base model functionality."""

    def test_to_dict_exclude_none(self):
        """Test excluding None values from dict."""

        class TestModel(BaseModel):
            required: str = "value"
            optional: str | None = None

        model = TestModel(required="test")

        result = model.to_dict(exclude_none=True)
        assert "required" in result
        assert "optional" not in result

        result = model.to_dict(exclude_none=False)
        assert result["optional"] is None

    def test_to_json(self):
        """Test converting model to JSON string."""
        result = CheckResult(name="x", passed=True).to_json()
        assert json.loads(result) == {"name": "x", "passed": True}

    def test_extra_fields_rejected(self, make_system_json):
        """Test unknown keys are reported with a pointer."""
        doc = json.loads(make_system_json())
        doc["colour"] = "red"
        with pytest.raises(ValidationError) as exc_info:
            SystemDocument.parse(doc)
        assert exc_info.value.pointer == "/colour"

    def test_missing_field(self, make_system_json):
        """Test missing keys are reported with a pointer."""
        doc = json.loads(make_system_json())
        del doc["schedule"]
        with pytest.raises(ValidationError) as exc_info:
            SystemDocument.parse(doc)
        assert exc_info.value.pointer == "/schedule"

    def test_parse_json(self, circ4_json):
        """Test parsing from text."""
        assert SystemDocument.parse_json(circ4_json).schedule == "0123"
        with pytest.raises(ValidationError):
            SystemDocument.parse_json("{")


class TestFieldDocument:
    """Test field resolution."""

    def test_default(self):
        """Test an absent field falls back to the default."""
        doc = MatrixDocument(matrix=[[1]])
        assert doc.resolve_field() == FieldSpec.prime(2)
        assert doc.resolve_field(FieldSpec.rational()) == FieldSpec.rational()

    def test_invalid_field(self):
        """Test a non-prime modulus points at the field."""
        doc = MatrixDocument(field={"prime": 4}, matrix=[[1]])
        with pytest.raises(InvalidFieldError) as exc_info:
            doc.resolve_field()
        assert exc_info.value.pointer == "/field"


class TestMatrixDocument:
    """Test matrix documents."""

    def test_to_matrix(self):
        """Test literals parse in the document's field."""
        doc = MatrixDocument(field="rational", matrix=[[1, "1/2"], [0, "-3"]])
        m = doc.to_matrix()
        assert m == Matrix(FieldSpec.rational(), [[1, "1/2"], [0, -3]])
        assert MatrixDocument.from_matrix(m).matrix == [["1/1", "1/2"], ["0/1", "-3/1"]]

    def test_override_field(self):
        """Test an explicit field wins over the document's."""
        doc = MatrixDocument(field={"prime": 2}, matrix=[[3]])
        assert doc.to_matrix(FieldSpec.prime(5)) == Matrix(FieldSpec.prime(5), [[3]])

    def test_bad_literal(self):
        """Test a bad entry points at its row and column."""
        doc = MatrixDocument(matrix=[[1, "x"]])
        with pytest.raises(ValidationError) as exc_info:
            doc.to_matrix()
        assert exc_info.value.pointer == "/matrix/0/1"

    def test_ragged(self):
        """Test ragged rows point at the matrix."""
        with pytest.raises(DimensionMismatchError) as exc_info:
            MatrixDocument(matrix=[[1, 0], [1]]).to_matrix()
        assert exc_info.value.pointer.startswith("/matrix")


class TestSystemDocument:
    """Test system documents."""

    def test_round_trip(self, circ4_sds):
        """Test a system survives conversion to a document and back."""
        doc = SystemDocument.from_sds(circ4_sds)
        assert doc.schedule == [0, 1, 2, 3]
        assert SystemDocument.parse(json.loads(doc.to_json())).to_sds() == circ4_sds

    def test_digit_schedule(self, make_system_json):
        """Test digit-string schedules."""
        doc = SystemDocument.parse_json(make_system_json("013120321"))
        assert doc.to_sds().schedule.multiplicities() == (2, 3, 2, 2)

    def test_graph_error_pointer(self, make_system_json):
        """Test graph errors are prefixed with /graph."""
        doc = json.loads(make_system_json())
        doc["graph"]["edges"].append([2, 2])
        with pytest.raises(InvalidGraphError) as exc_info:
            SystemDocument.parse(doc).to_sds()
        assert exc_info.value.pointer == "/graph/edges/4"

    def test_support_violation(self, make_system_json):
        """Test an entry off the graph."""
        doc = json.loads(make_system_json())
        doc["matrix"][0][2] = 1
        with pytest.raises(SupportViolationError) as exc_info:
            SystemDocument.parse(doc).to_sds()
        assert exc_info.value.pointer == "/matrix/0/2"


class TestPosetDocument:
    """Test poset and cut documents."""

    def test_to_poset(self):
        """Test strict pairs are closed transitively."""
        doc = PosetDocument(n=3, strict_pairs=[[0, 1], [1, 2]])
        assert doc.to_poset().lt(0, 2)

    def test_malformed_pair(self):
        """Test pairs need two entries."""
        doc = PosetDocument(n=3, strict_pairs=[[0, 1], [1]])
        with pytest.raises(ValidationError) as exc_info:
            doc.to_poset()
        assert exc_info.value.pointer == "/strict_pairs/1"

    def test_from_poset(self):
        """Test documents list cover pairs."""
        doc = PosetDocument.from_poset(Poset.chain(3), FieldSpec.rational())
        assert doc.strict_pairs == [[0, 1], [1, 2]]
        assert doc.field == "rational"

    def test_cut_round_trip(self):
        """Test cut documents rebuild the cut."""
        _, _, cut = random_cut_instance(3, 6, 3)
        doc = CutDocument.from_cut(cut)
        assert CutDocument.parse(json.loads(doc.to_json())).to_cut() == cut


class TestReports:
    """Test report construction."""

    def test_no_lu_report(self, f5):
        """Test the factorisation failure report."""
        report = NoLUReport.from_outcome(lu_decompose(Matrix(f5, [[0, 1], [1, 0]])))
        assert report.pivot_index == 0
        assert report.permutation_hint == [1, 0]

    def test_phase_report(self, circ4_sds):
        """Test the inventory becomes a report."""
        inv = cycle_inventory(enumerate_phase_space(circ4_sds))
        report = PhaseReport.from_inventory(inv, fixed_points_agree=True)
        assert report.fixed_points == ["0000", "0101", "1010", "1111"]
        assert report.bijective

    def test_cut_report(self, q):
        """Test a passing cut report."""
        _, _, cut = random_cut_instance(1, 5, 2)
        report = CutReport.from_check(
            cut, q, cut_identity_check(cut, q), constructive_check(cut, q)
        )
        assert report.passed
        assert report.via_sds is not None
        assert report.field == "rational"

    def test_selftest_report(self):
        """Test the overall verdict."""
        ok = CheckResult(name="a", passed=True)
        bad = CheckResult(name="b", passed=False, detail="differs")
        assert SelftestReport(seed=0, checks=[ok]).passed
        assert not SelftestReport(seed=0, checks=[ok, bad]).passed
