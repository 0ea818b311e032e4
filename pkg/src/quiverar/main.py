"""
Main module for quiverar.

This module wires the workspace format, the algebra builder and the
Auslander-Reiten computations into the ``quiverar`` command line.
"""

import logging
import sys
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any, Callable, List, Optional, Tuple

import click
import typer
from pydantic import BaseModel
from rich.console import Console
from rich.table import Table
from typer.core import TyperGroup

from quiverar.algebra.bound import BoundQuiverAlgebra
from quiverar.algebra.classify import ass_theorem_conclusions, classify
from quiverar.algebra.quiver import Quiver
from quiverar.algebra.rewriting import format_poly
from quiverar.ar.sequences import almost_split_sequence, almost_split_sequence_starting_at
from quiverar.ar.translate import Translate, tau, tau_minus, translate_summands
from quiverar.ar.verify import ar_duality_check, verify_almost_split
from quiverar.errors import InputError, QuiverarError, UndecidedError
from quiverar.homological.presentation import (
    minimal_presentation,
    pad_presentation,
    window_support,
)
from quiverar.models import (
    LOG_LEVELS,
    AlmostSplitReport,
    AppConfig,
    BuildReport,
    CanonicalFormReport,
    ClassificationReport,
    ConclusionsReport,
    DecompositionReport,
    Direction,
    DualityReport,
    DualizeReport,
    Flag,
    ModuleSummary,
    SummandTranslate,
    TranslateReport,
    load_config,
)
from quiverar.modules.decompose import Summand, decompose, is_isomorphic
from quiverar.modules.duality import dualize
from quiverar.modules.representation import Representation, direct_sum
from quiverar.workspace import Padding, Workspace, canonical_form, parse, parse_padding

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

EXIT_ERROR = 1
EXIT_UNDECIDED = 2


class QuiverarGroup(TyperGroup):
    """Command group whose usage and parameter errors exit with ``EXIT_ERROR``.

    Click reserves exit code 2 for usage errors; here 2 means undecided.
    """

    def main(self, *args: Any, standalone_mode: bool = True, **kwargs: Any) -> Any:
        try:
            result = super().main(*args, standalone_mode=False, **kwargs)
        except click.ClickException as e:
            e.exit_code = EXIT_ERROR
            if not standalone_mode:
                raise
            e.show()
            sys.exit(EXIT_ERROR)
        except click.Abort:
            if not standalone_mode:
                raise
            err_console.print("aborted", style="red", markup=False, highlight=False)
            sys.exit(EXIT_ERROR)
        if not standalone_mode:
            return result
        sys.exit(result if isinstance(result, int) else 0)


app = typer.Typer(
    help=(
        "Auslander-Reiten computations over bound quiver algebras. Monomials are read "
        "right to left: b*a means first a, then b."
    ),
    no_args_is_help=True,
    add_completion=False,
    cls=QuiverarGroup,
)
console = Console()
err_console = Console(stderr=True)

WorkspaceArgument = typer.Argument(..., exists=True, dir_okay=False, help="Workspace file.")
ModuleOption = typer.Option(..., "--module", "-m", help="Module name, or P<v>, I<v>, S<v>.")
SeedOption = typer.Option(None, "--seed", help="Seed for this command, overriding the global one.")


def setup_logging(level: str) -> None:
    """Set up logging to stderr so that machine output on stdout stays clean."""
    logging.basicConfig(
        level=getattr(logging, level),
        format=LOG_FORMAT,
        handlers=[logging.StreamHandler(sys.stderr)],
        force=True,
    )


@dataclass
class State:
    """Options shared by every command."""

    config: AppConfig
    json_output: bool
    seed: int


@app.callback()
def cli(
    ctx: typer.Context,
    config: Optional[Path] = typer.Option(None, "--config", help="JSON configuration file."),
    log_level: Optional[str] = typer.Option(None, "--log-level", help="Logging level."),
    json_output: bool = typer.Option(False, "--json", help="Print machine-readable JSON."),
    seed: Optional[int] = typer.Option(None, "--seed", help="Seed for randomized searches."),
) -> None:
    try:
        app_config = load_config(config)
    except InputError as e:
        err_console.print(f"error: {e}", style="red", markup=False, highlight=False)
        raise typer.Exit(EXIT_ERROR)
    level = (log_level or app_config.log_level).upper()
    if level not in LOG_LEVELS:
        choices = ", ".join(LOG_LEVELS)
        raise typer.BadParameter(f"expected one of {choices}", param_hint="--log-level")
    setup_logging(level)
    ctx.obj = State(app_config, json_output, app_config.seed if seed is None else seed)


def _reseed(state: State, seed: Optional[int]) -> State:
    return state if seed is None else replace(state, seed=seed)


def _run(ctx: typer.Context, action: Callable[[State], Tuple[BaseModel, Callable]]) -> None:
    """Run a command, print its report and map failures to exit codes."""
    state: State = ctx.obj
    try:
        report, render = action(state)
    except UndecidedError as e:
        err_console.print(f"undecided: {e}", style="yellow", markup=False, highlight=False)
        raise typer.Exit(EXIT_UNDECIDED)
    except QuiverarError as e:
        err_console.print(f"error: {e}", style="red", markup=False, highlight=False)
        raise typer.Exit(EXIT_ERROR)
    except Exception as e:
        logger.debug("Unexpected failure", exc_info=True)
        err_console.print(f"error: {e}", style="red", markup=False, highlight=False)
        raise typer.Exit(EXIT_ERROR)
    if state.json_output:
        typer.echo(report.model_dump_json(indent=2))
    else:
        render(report)
    if getattr(report, "window_unsafe", False):
        logger.warning("Result touches a boundary vertex of the window")
        err_console.print("window-unsafe", style="yellow", markup=False, highlight=False)
        raise typer.Exit(EXIT_UNDECIDED)
    algebra_status = getattr(report, "status", "")
    if isinstance(algebra_status, str) and algebra_status.startswith("undecided"):
        raise typer.Exit(EXIT_UNDECIDED)


def _load(path: Path, state: State) -> Tuple[Workspace, BoundQuiverAlgebra]:
    workspace = parse(path)
    return workspace, workspace.build(state.config)


def _dims(summary: ModuleSummary) -> str:
    return "(" + ", ".join(str(d) for d in summary.dims.values()) + ")"


def _window_unsafe(workspace: Workspace, algebra: BoundQuiverAlgebra, labels: List[str]) -> bool:
    if not workspace.boundary or not labels:
        return False
    support = window_support(algebra, labels, "projective")
    support |= window_support(algebra, labels, "injective")
    return workspace.window_unsafe(sorted(support))


def _module_table(title: str, rows: List[Tuple[str, ModuleSummary]]) -> Table:
    table = Table(title=title)
    table.add_column("Role")
    table.add_column("Module")
    table.add_column("Dimension vector")
    table.add_column("Certificate")
    for role, summary in rows:
        certificate = summary.certificate.value if summary.certificate else ""
        table.add_row(role, summary.name, _dims(summary), certificate)
    return table


def _summaries(module: Representation, state: State) -> List[ModuleSummary]:
    if module.is_zero():
        return []
    config = state.config
    return [
        s.module.summary(s.certificate)
        for s in decompose(module, state.seed, config.random_attempts, config.iso_enumeration_cap)
    ]


@app.command()
def build(ctx: typer.Context, workspace_file: Path = WorkspaceArgument) -> None:
    """Build the algebra and print its basis and saturation status."""

    def action(state: State) -> Tuple[BaseModel, Callable]:
        _, algebra = _load(workspace_file, state)
        q = algebra.quiver
        rules = sorted(algebra.rewriting.rules.values(), key=lambda r: q.sort_key(r.lead))
        report = BuildReport(
            field=algebra.field.descriptor(),
            status=str(algebra.status),
            complete=algebra.complete,
            rules=[f"{r.lead} -> {format_poly(r.tail, q)}" for r in rules],
        )
        if algebra.is_finite:
            report.dimension = algebra.dimension
            report.nilpotency_index = algebra.nilpotency_index
            report.basis = {
                f"{x}->{y}": [str(p) for p in algebra.basis(x, y)]
                for x in q.vertices
                for y in q.vertices
                if algebra.basis(x, y)
            }
        return report, _render_build

    _run(ctx, action)


def _render_build(report: BuildReport) -> None:
    console.print(f"field {report.field}, status {report.status}, dimension {report.dimension}")
    table = Table(title="Basis")
    table.add_column("Paths")
    table.add_column("Classes")
    for key, paths in report.basis.items():
        table.add_row(key, ", ".join(paths))
    console.print(table)


@app.command(name="classify")
def classify_command(
    ctx: typer.Context,
    workspace_file: Path = WorkspaceArgument,
    len_cap: Optional[int] = typer.Option(None, "--len-cap", min=2, help="Path length cap."),
    mult_cap: Optional[int] = typer.Option(None, "--mult-cap", min=2, help="Multiserial cap."),
) -> None:
    """Decide the structural flags of the algebra."""

    def action(state: State) -> Tuple[BaseModel, Callable]:
        _, algebra = _load(workspace_file, state)
        config = state.config
        report = classify(
            algebra,
            path_length_cap=len_cap or config.path_length_cap,
            multiserial_n_cap=mult_cap or config.multiserial_n_cap,
            seed=state.seed,
            attempts=config.random_attempts,
        )
        return report, _render_classification

    _run(ctx, action)


def _render_classification(report: ClassificationReport) -> None:
    table = Table(title=f"Classification over {report.field} ({report.status})")
    table.add_column("Property")
    table.add_column("Value")
    table.add_column("Bound")
    table.add_column("Witness")
    table.add_row("locally finite", str(report.locally_finite).lower(), "", "")
    for name, value in report:
        if isinstance(value, Flag):
            witness = ""
            if value.witness is not None:
                w = value.witness
                terms = " + ".join(f"{t.coefficient}*{t.path}" for t in w.terms)
                witness = f"{w.kind.value} {terms or w.path or ''}".strip()
            bound = "" if value.bound is None else str(value.bound)
            table.add_row(name.replace("_", " "), value.value.value, bound, witness)
    console.print(table)


@app.command()
def conclusions(ctx: typer.Context, workspace_file: Path = WorkspaceArgument) -> None:
    """List the almost split conclusions that follow from the classification."""

    def action(state: State) -> Tuple[BaseModel, Callable]:
        _, algebra = _load(workspace_file, state)
        config = state.config
        report = classify(
            algebra,
            path_length_cap=config.path_length_cap,
            multiserial_n_cap=config.multiserial_n_cap,
            seed=state.seed,
            attempts=config.random_attempts,
        )
        return ConclusionsReport(conclusions=ass_theorem_conclusions(report)), _render_conclusions

    _run(ctx, action)


def _render_conclusions(report: ConclusionsReport) -> None:
    table = Table(title="Conclusions")
    table.add_column("Key")
    table.add_column("Status")
    table.add_column("Hypotheses")
    table.add_column("Statement")
    for c in report.conclusions:
        table.add_row(c.key, c.status.value, ", ".join(c.hypotheses), c.statement)
    console.print(table)


@app.command(name="decompose")
def decompose_command(
    ctx: typer.Context,
    workspace_file: Path = WorkspaceArgument,
    module: str = ModuleOption,
    seed: Optional[int] = SeedOption,
) -> None:
    """Split a module into indecomposable summands."""

    def action(state: State) -> Tuple[BaseModel, Callable]:
        state = _reseed(state, seed)
        workspace, algebra = _load(workspace_file, state)
        m = workspace.representation(algebra, module)
        report = DecompositionReport(
            module=m.summary(), summands=_summaries(m, state), seed=state.seed
        )
        return report, _render_decomposition

    _run(ctx, action)


def _render_decomposition(report: DecompositionReport) -> None:
    rows = [("module", report.module)] + [("summand", s) for s in report.summands]
    console.print(_module_table(f"Decomposition (seed {report.seed})", rows))


def _translate_report(
    workspace: Workspace, algebra: BoundQuiverAlgebra, result: Translate, state: State
) -> TranslateReport:
    labels = result.labels0 + result.labels1
    return TranslateReport(
        module=result.module.summary(),
        direction=result.direction,
        result=result.result.summary(),
        summands=_summaries(result.result, state),
        p0=result.labels0,
        p1=result.labels1,
        note=result.note,
        window_unsafe=_window_unsafe(workspace, algebra, labels),
    )


def _summandwise_report(
    workspace: Workspace,
    algebra: BoundQuiverAlgebra,
    module: Representation,
    direction: Direction,
    state: State,
) -> TranslateReport:
    """Translate each indecomposable summand and report the sum of the translates."""
    config = state.config
    pairs = translate_summands(
        module, direction, state.seed, config.random_attempts, config.iso_enumeration_cap
    )
    if len(pairs) == 1:
        return _translate_report(workspace, algebra, pairs[0][1], state).model_copy(
            update={"parts": [_part(*pairs[0])]}
        )
    prefix = "τ" if direction == Direction.TAU else "τ⁻"
    name = f"{prefix}({module.name or 'M'})"
    translates = [t.result for _, t in pairs if not t.result.is_zero()]
    result = direct_sum(translates, algebra, name=name).module
    p0 = [label for _, t in pairs for label in t.labels0]
    p1 = [label for _, t in pairs for label in t.labels1]
    notes = [t.note for _, t in pairs if t.note]
    return TranslateReport(
        module=module.summary(),
        direction=direction,
        result=result.summary(),
        summands=_summaries(result, state),
        parts=[_part(s, t) for s, t in pairs],
        p0=p0,
        p1=p1,
        note="; ".join(notes) or None,
        window_unsafe=_window_unsafe(workspace, algebra, p0 + p1),
    )


def _part(summand: Summand, result: Translate) -> SummandTranslate:
    return SummandTranslate(
        summand=summand.module.summary(summand.certificate),
        translate=result.result.summary(),
        p0=result.labels0,
        p1=result.labels1,
        note=result.note,
    )


def _render_translate(report: TranslateReport) -> None:
    rows = [("module", report.module), ("translate", report.result)]
    rows += [("summand", s) for s in report.summands]
    console.print(_module_table(report.direction.value, rows))
    if len(report.parts) > 1:
        pieces = [(f"{p.summand.name} ->", p.translate) for p in report.parts]
        console.print(_module_table("Summandwise", pieces))
    first, second = ("P0", "P1") if report.direction == Direction.TAU else ("I0", "I1")
    console.print(f"{first}: {' '.join(report.p0) or '0'}   {second}: {' '.join(report.p1) or '0'}")
    if report.note:
        console.print(report.note, markup=False)


def _padding(presentation: str, quiver: Quiver) -> Padding:
    if presentation == "minimal":
        return Padding()
    path = Path(presentation)
    if not path.is_file():
        raise InputError(f"presentation file not found: {presentation}")
    return parse_padding(path, quiver)


@app.command(name="tau")
def tau_command(
    ctx: typer.Context,
    workspace_file: Path = WorkspaceArgument,
    module: str = ModuleOption,
    presentation: str = typer.Option(
        "minimal", "--presentation", help="'minimal' or a file of padding summands."
    ),
    pad_zero: Optional[List[str]] = typer.Option(
        None, "--pad-zero", help="Add P_v -> 0 to the minimal presentation."
    ),
    pad_identity: Optional[List[str]] = typer.Option(
        None, "--pad-identity", help="Add P_v -> P_v to the minimal presentation."
    ),
) -> None:
    """Compute τM summand by summand from minimal presentations, or from a padded one."""

    def action(state: State) -> Tuple[BaseModel, Callable]:
        workspace, algebra = _load(workspace_file, state)
        m = workspace.representation(algebra, module)
        padding = _padding(presentation, algebra.quiver)
        padding.zero += pad_zero or []
        padding.identity += pad_identity or []
        if padding.is_empty():
            report = _summandwise_report(workspace, algebra, m, Direction.TAU, state)
        else:
            padded = pad_presentation(minimal_presentation(m), padding.zero, padding.identity)
            report = _translate_report(workspace, algebra, tau(m, padded), state)
        return report, _render_translate

    _run(ctx, action)


@app.command(name="tau-minus")
def tau_minus_command(
    ctx: typer.Context, workspace_file: Path = WorkspaceArgument, module: str = ModuleOption
) -> None:
    """Compute τ⁻N summand by summand from minimal injective copresentations."""

    def action(state: State) -> Tuple[BaseModel, Callable]:
        workspace, algebra = _load(workspace_file, state)
        m = workspace.representation(algebra, module)
        report = _summandwise_report(workspace, algebra, m, Direction.TAU_MINUS, state)
        return report, _render_translate

    _run(ctx, action)


def _probes(
    workspace: Workspace, algebra: BoundQuiverAlgebra, selection: str, state: State
) -> List[Representation]:
    """Probe modules: named ones, or ``all`` for every indecomposable summand up to isomorphism."""
    if selection != "all":
        names = [n.strip() for n in selection.split(",") if n.strip()]
        return [workspace.representation(algebra, n) for n in names]
    config = state.config
    candidates = workspace.representations(algebra)
    for prefix in "PIS":
        candidates += [
            workspace.representation(algebra, f"{prefix}{v}") for v in algebra.quiver.vertices
        ]
    probes: List[Representation] = []
    for candidate in candidates:
        if candidate.is_zero():
            continue
        pieces = decompose(
            candidate, state.seed, config.random_attempts, config.iso_enumeration_cap
        )
        for piece in pieces:
            seen = any(
                is_isomorphic(piece.module, p, state.seed, config.random_attempts,
                              config.iso_enumeration_cap) is not None
                for p in probes
            )
            if not seen:
                probes.append(piece.module)
    logger.info(f"Using {len(probes)} probes")
    return probes


@app.command()
def ass(
    ctx: typer.Context,
    workspace_file: Path = WorkspaceArgument,
    module: str = ModuleOption,
    start: bool = typer.Option(False, "--start", help="Build the sequence starting at the module."),
    verify: bool = typer.Option(False, "--verify", help="Check every clause against probes."),
    probes: str = typer.Option("all", "--probes", help="'all' or comma-separated module names."),
    seed: Optional[int] = SeedOption,
) -> None:
    """Construct the almost split sequence ending (or starting) at a module."""

    def action(state: State) -> Tuple[BaseModel, Callable]:
        state = _reseed(state, seed)
        workspace, algebra = _load(workspace_file, state)
        config = state.config
        m = workspace.representation(algebra, module)
        build_sequence = almost_split_sequence_starting_at if start else almost_split_sequence
        sequence = build_sequence(m, state.seed, config.random_attempts, config.iso_enumeration_cap)
        labels: List[str] = []
        if sequence.translate is not None:
            labels = sequence.translate.labels0 + sequence.translate.labels1
        report = AlmostSplitReport(
            module=m.name,
            direction=Direction.TAU_MINUS if start else Direction.TAU,
            start=sequence.start.summary(),
            middle=sequence.middle.summary(),
            end=sequence.end.summary(),
            certificates=sequence.certificates,
            window_unsafe=_window_unsafe(workspace, algebra, labels),
        )
        if verify:
            report.verification = verify_almost_split(
                sequence,
                _probes(workspace, algebra, probes, state),
                seed=state.seed,
                sweep_dimension_cap=config.sweep_dimension_cap,
                attempts=config.random_attempts,
            )
        return report, _render_almost_split

    _run(ctx, action)


def _render_almost_split(report: AlmostSplitReport) -> None:
    rows = [("start", report.start), ("middle", report.middle), ("end", report.end)]
    console.print(_module_table(f"Almost split sequence for {report.module}", rows))
    for name, value in report.certificates.items():
        console.print(f"{name}: {'yes' if value else 'no'}")
    if report.verification is not None:
        table = Table(title=f"Verification against {len(report.verification.probes)} probes")
        table.add_column("Clause")
        table.add_column("Result")
        table.add_column("Witness")
        for clause in report.verification.clauses:
            result = "pass" if clause.passed else "FAIL"
            table.add_row(clause.name, result, clause.witness or clause.detail or "")
        console.print(table)


@app.command(name="duality-check")
def duality_check(
    ctx: typer.Context,
    workspace_file: Path = WorkspaceArgument,
    module: str = ModuleOption,
    probes: str = typer.Option("all", "--probes", help="'all' or comma-separated module names."),
) -> None:
    """Compare the Ext and stable Hom dimensions on both sides of the duality."""

    def action(state: State) -> Tuple[BaseModel, Callable]:
        workspace, algebra = _load(workspace_file, state)
        m = workspace.representation(algebra, module)
        report = ar_duality_check(m, _probes(workspace, algebra, probes, state))
        presentation = minimal_presentation(m)
        labels = presentation.p0_labels + presentation.p1_labels
        report.window_unsafe = _window_unsafe(workspace, algebra, labels)
        return report, _render_duality

    _run(ctx, action)


def _render_duality(report: DualityReport) -> None:
    table = Table(title=f"Duality for {report.module}, τ = {report.tau.name} {_dims(report.tau)}")
    for column in ("Probe", "Ext(X,τM)", "Hom(M,X)/P", "Ext(M,X)", "Hom(X,τM)/I", "Holds"):
        table.add_column(column)
    for r in report.rows:
        table.add_row(
            r.probe,
            str(r.ext_probe_tau),
            str(r.stable_module_probe),
            str(r.ext_module_probe),
            str(r.costable_probe_tau),
            "yes" if r.holds else "NO",
        )
    console.print(table)


@app.command(name="dualize")
def dualize_command(
    ctx: typer.Context, workspace_file: Path = WorkspaceArgument, module: str = ModuleOption
) -> None:
    """Print the dual module over the opposite algebra."""

    def action(state: State) -> Tuple[BaseModel, Callable]:
        workspace, algebra = _load(workspace_file, state)
        dual = dualize(workspace.representation(algebra, module))
        f = algebra.field
        report = DualizeReport(
            module=dual.name,
            dims=dual.dims,
            matrices={
                a: [[f.format(v) for v in row] for row in m.to_lists()]
                for a, m in dual.action.items()
                if m.rows and m.cols
            },
        )
        return report, _render_dualize

    _run(ctx, action)


def _render_dualize(report: DualizeReport) -> None:
    console.print(f"{report.module}: {report.dims}", markup=False)
    for arrow, rows in report.matrices.items():
        console.print(f"  {arrow} = {rows}", markup=False)


@app.command()
def canonical(ctx: typer.Context, workspace_file: Path = WorkspaceArgument) -> None:
    """Print the workspace in canonical form."""

    def action(state: State) -> Tuple[BaseModel, Callable]:
        report = CanonicalFormReport(text=canonical_form(parse(workspace_file)))
        return report, lambda r: typer.echo(r.text, nl=False)

    _run(ctx, action)


def main() -> None:
    """Main entry point."""
    app()


if __name__ == "__main__":
    main()
