"""CLI entry point for linsds package."""

import logging
import sys
from collections.abc import Callable, Iterator
from contextlib import contextmanager
from typing import IO, Any, Literal, TypeVar

import click
import structlog
from pydantic import ConfigDict
from pydantic import ValidationError as PydanticValidationError

from .. import __version__
from ..config import OUTPUT_FORMATS, Settings
from ..cut import constructive_check, cut_identity_check, random_cut_instance
from ..exceptions import EXIT_VERIFICATION, LinearSDSError, ValidationError, VerificationError
from ..field import FieldSpec
from ..linalg import Matrix, NoLU, mat_mul
from ..models import (
    BaseModel,
    CutDocument,
    CutReport,
    FieldDocument,
    InverseReport,
    LUSynthesisReport,
    MatrixDocument,
    MoebiusReport,
    NoLUReport,
    PhaseReport,
    PosetDocument,
    SystemDocument,
    SystemReport,
)
from ..phase import cycle_inventory, enumerate_phase_space, fixed_points_algebraic, to_dot
from ..poset import moebius, zeta
from ..sds import (
    LinearSDS,
    compose_oracle,
    invert_sds,
    lu_synthesize,
    lup_synthesize,
    moebius_sds,
    system_matrix_perm,
)
from ..selftest import run_selftest
from ..wordsds import Convention, word_system_trace
from .formatters import error_report, render

logger = structlog.get_logger()

Command = Literal[
    "system", "oracle", "moebius", "lu-synth", "invert", "phase", "cut-check", "selftest"
]
F = TypeVar("F", bound=Callable[..., Any])


class RunConfig(BaseModel):
    """Everything one invocation needs, after flags and environment are merged."""

    model_config = ConfigDict(frozen=True)

    command: Command
    input_name: str | None = None
    field: FieldSpec | None = None
    default_field: FieldSpec
    output_format: str
    seed: int | None = None
    verify: bool = False
    max_states: int

    def field_for(self, doc: FieldDocument) -> FieldSpec:
        """A --field override wins over the document, which wins over the default."""
        return self.field or doc.resolve_field(self.default_field)


def _settings(**overrides: Any) -> Settings:
    try:
        return Settings.from_env(**overrides)
    except PydanticValidationError as exc:
        first = exc.errors()[0]
        raise ValidationError(str(first.get("msg", "invalid setting"))) from exc


def _run_config(
    command: Command,
    input_file: IO[str] | None = None,
    field_text: str | None = None,
    output_format: str | None = None,
    seed: int | None = None,
    verify: bool = False,
    max_states: int | None = None,
) -> RunConfig:
    settings = _settings(output_format=output_format, seed=seed, max_states=max_states)
    return RunConfig(
        command=command,
        input_name=getattr(input_file, "name", None),
        field=FieldSpec.from_string(field_text) if field_text else None,
        default_field=FieldSpec.from_json(settings.default_field),
        output_format=settings.output_format,
        seed=settings.seed,
        verify=verify,
        max_states=settings.max_states,
    )


@contextmanager
def reporting_errors() -> Iterator[None]:
    """Print library errors as structured JSON on stderr and exit with their code."""
    try:
        yield
    except LinearSDSError as exc:
        logger.debug("Command failed", code=exc.code, pointer=exc.pointer)
        click.echo(error_report(exc).to_json(), err=True)
        sys.exit(exc.exit_code)


def _emit(report: BaseModel, cfg: RunConfig) -> None:
    click.echo(render(report, cfg.output_format))


def _check(ok: bool, message: str, **matrices: Matrix) -> None:
    if not ok:
        raise VerificationError(message, {k: m.to_literals() for k, m in matrices.items()})


def output_options(f: F) -> F:
    f = click.option(
        "--format",
        "output_format",
        type=click.Choice(OUTPUT_FORMATS),
        default=None,
        help="Output format (default from LINSDS_FORMAT, else json)",
    )(f)
    f = click.option(
        "--field",
        "field_text",
        default=None,
        help='Field override: 2, F5, rational or {"prime": 7}',
    )(f)
    return f


verify_option = click.option(
    "--verify", is_flag=True, help="Cross-check against the sequential-composition oracle"
)
input_argument = click.argument("input_file", type=click.File("r"), default="-")


@click.group()
@click.option("--verbose", "-v", is_flag=True, help="Enable verbose logging")
@click.version_option(__version__, prog_name="linsds")
def cli(verbose: bool) -> None:
    """Exact linear sequential dynamical systems."""
    structlog.configure(
        wrapper_class=structlog.make_filtering_bound_logger(
            logging.DEBUG if verbose else logging.WARNING
        ),
        processors=[structlog.dev.ConsoleRenderer()],
        logger_factory=structlog.PrintLoggerFactory(sys.stderr),
    )


def _load_system(input_file: IO[str], cfg: RunConfig) -> LinearSDS:
    doc = SystemDocument.parse_json(input_file.read())
    return doc.to_sds(cfg.field_for(doc))


@cli.command()
@input_argument
@output_options
@verify_option
@click.option(
    "--convention",
    type=click.Choice([c.value for c in Convention]),
    default=Convention.SHIFTED.value,
    help="Block expansion used by the word formula",
)
def system(
    input_file: IO[str],
    field_text: str | None,
    output_format: str | None,
    verify: bool,
    convention: str,
) -> None:
    """Print the system matrix of a linear SDS from its closed form."""
    with reporting_errors():
        cfg = _run_config("system", input_file, field_text, output_format, verify=verify)
        sds = _load_system(input_file, cfg)
        extra: dict[str, Any] = {}
        if sds.schedule.is_permutation and convention == Convention.SHIFTED.value:
            method = "permutation"
            m = system_matrix_perm(sds)
        else:
            method = "word"
            trace = word_system_trace(sds, convention)
            m = trace.system_matrix
            extra["multiplicities"] = list(trace.multiplicities.counts)
            extra["lifted_word"] = trace.lifted.one_based
        if cfg.verify:
            expected = compose_oracle(sds)
            _check(
                m == expected, "Closed form disagrees with oracle", closed_form=m, oracle=expected
            )
            extra["verified"] = True
        report = SystemReport(
            field=sds.field.to_json(),
            method=method,
            schedule=list(sds.schedule.word),
            matrix=m.to_literals(),
            **extra,
        )
        _emit(report, cfg)


@cli.command()
@input_argument
@output_options
def oracle(input_file: IO[str], field_text: str | None, output_format: str | None) -> None:
    """Print the system matrix as the product of local matrices."""
    with reporting_errors():
        cfg = _run_config("oracle", input_file, field_text, output_format)
        sds = _load_system(input_file, cfg)
        report = SystemReport(
            field=sds.field.to_json(),
            method="oracle",
            schedule=list(sds.schedule.word),
            matrix=compose_oracle(sds).to_literals(),
        )
        _emit(report, cfg)


@cli.command(name="moebius")
@input_argument
@output_options
def moebius_command(
    input_file: IO[str], field_text: str | None, output_format: str | None
) -> None:
    """Moebius matrix of a poset, by direct inversion and by an SDS."""
    with reporting_errors():
        cfg = _run_config("moebius", input_file, field_text, output_format)
        doc = PosetDocument.parse_json(input_file.read())
        field = cfg.field_for(doc)
        p = doc.to_poset()
        z = zeta(p, field)
        direct = moebius(p, field).matrix
        sds = moebius_sds(z)
        via_sds = system_matrix_perm(sds)
        _check(
            direct == via_sds,
            "Moebius matrix differs between inversion and SDS",
            direct=direct,
            via_sds=via_sds,
        )
        report = MoebiusReport(
            field=field.to_json(),
            n=p.n,
            matrix=direct.to_literals(),
            sds_schedule=list(sds.schedule.word),
            paths_agree=True,
        )
        _emit(report, cfg)


@cli.command(name="lu-synth")
@input_argument
@output_options
@verify_option
@click.option("--lup", is_flag=True, help="Synthesize for P*T when T has no LU decomposition")
def lu_synth(
    input_file: IO[str],
    field_text: str | None,
    output_format: str | None,
    verify: bool,
    lup: bool,
) -> None:
    """Synthesize a linear SDS with schedule 0..n-1 realising a matrix."""
    with reporting_errors():
        cfg = _run_config("lu-synth", input_file, field_text, output_format, verify=verify)
        doc = MatrixDocument.parse_json(input_file.read())
        t = doc.to_matrix(cfg.field_for(doc))
        field = t.field.to_json()

        outcome = lu_synthesize(t)
        if isinstance(outcome, NoLU) and not lup:
            report = LUSynthesisReport(
                field=field, status="no_lu", no_lu=NoLUReport.from_outcome(outcome)
            )
            _emit(report, cfg)
            return

        permutation: tuple[int, ...] | None = None
        if isinstance(outcome, NoLU):
            synthesis = lup_synthesize(t)
            sds, permutation = synthesis.sds, synthesis.permutation
        else:
            sds = outcome
        report = LUSynthesisReport(
            field=field,
            status="lu" if permutation is None else "lup",
            system=SystemDocument.from_sds(sds),
            permutation=list(permutation) if permutation is not None else None,
        )
        if cfg.verify:
            target = t if permutation is None else t.permute_rows(permutation)
            realised = system_matrix_perm(sds)
            _check(
                realised == target,
                "Synthesized SDS does not realise the matrix",
                target=target,
                realised=realised,
            )
            report.verified = True
        _emit(report, cfg)


@cli.command()
@input_argument
@output_options
@verify_option
def invert(
    input_file: IO[str], field_text: str | None, output_format: str | None, verify: bool
) -> None:
    """Build the SDS whose system map inverts the given one."""
    with reporting_errors():
        cfg = _run_config("invert", input_file, field_text, output_format, verify=verify)
        sds = _load_system(input_file, cfg)
        inverse = invert_sds(sds)
        report = InverseReport(field=sds.field.to_json(), system=SystemDocument.from_sds(inverse))
        if cfg.verify:
            product = mat_mul(system_matrix_perm(inverse), system_matrix_perm(sds))
            _check(product.is_identity(), "Inverse does not undo the system map", product=product)
            report.verified = True
        _emit(report, cfg)


@cli.command()
@input_argument
@output_options
@verify_option
@click.option("--max-states", type=int, default=None, help="Largest phase space to enumerate")
def phase(
    input_file: IO[str],
    field_text: str | None,
    output_format: str | None,
    verify: bool,
    max_states: int | None,
) -> None:
    """Enumerate the phase space of a linear SDS over F_p."""
    with reporting_errors():
        cfg = _run_config(
            "phase", input_file, field_text, output_format, verify=verify, max_states=max_states
        )
        sds = _load_system(input_file, cfg)
        space = enumerate_phase_space(sds, cfg.max_states)
        if cfg.output_format == "dot":
            click.echo(to_dot(space), nl=False)
            return
        extra: dict[str, Any] = {}
        if cfg.verify:
            enumerated = [space.state(x) for x in space.fixed_points]
            algebraic = fixed_points_algebraic(sds, cfg.max_states)
            if enumerated != algebraic:
                raise VerificationError(
                    "Fixed points differ between enumeration and the kernel of M - I",
                    {"enumerated": enumerated, "algebraic": algebraic},
                )
            extra["fixed_points_agree"] = True
        _emit(PhaseReport.from_inventory(cycle_inventory(space), **extra), cfg)


@cli.command(name="cut-check")
@input_argument
@output_options
@click.option(
    "--seed",
    type=int,
    default=None,
    help="Check a random instance from this seed instead of INPUT",
)
@click.option("--elements", type=int, default=6, show_default=True, help="Poset size")
@click.option("--chains", type=int, default=3, show_default=True, help="Number of chains")
@click.option("--via-sds", is_flag=True, help="Also check the identity through an SDS")
def cut_check(
    input_file: IO[str],
    field_text: str | None,
    output_format: str | None,
    seed: int | None,
    elements: int,
    chains: int,
    via_sds: bool,
) -> None:
    """Check the cut identity for a chain-partitioned poset."""
    with reporting_errors():
        cfg = _run_config("cut-check", input_file, field_text, output_format)
        # Random instances come from --seed only; LINSDS_SEED never picks one
        if seed is not None:
            field = cfg.field or cfg.default_field
            _, _, cut = random_cut_instance(seed, elements, chains)
        else:
            text = input_file.read()
            if not text.strip():
                raise ValidationError("cut-check needs an INPUT document or --seed")
            doc = CutDocument.parse_json(text)
            field = cfg.field_for(doc)
            cut = doc.to_cut()

        check = cut_identity_check(cut, field)
        constructive = constructive_check(cut, field) if via_sds else None
        report = CutReport.from_check(cut, field, check, constructive)
        if not report.passed:
            raise VerificationError("Cut identity does not hold", report.to_dict())
        _emit(report, cfg)


@cli.command()
@output_options
@click.option("--seed", type=int, default=None, help="Seed for the random oracle batch")
@click.option("--instances", type=int, default=25, show_default=True, help="Random instances")
def selftest(
    field_text: str | None, output_format: str | None, seed: int | None, instances: int
) -> None:
    """Run the worked examples and a seeded oracle batch."""
    with reporting_errors():
        cfg = _run_config("selftest", None, field_text, output_format, seed=seed)
        report = run_selftest(cfg.seed if cfg.seed is not None else 0, instances)
        _emit(report, cfg)
    if not report.passed:
        sys.exit(EXIT_VERIFICATION)


def main() -> None:
    """Main CLI entry point."""
    cli()


if __name__ == "__main__":
    main()
