"""Command-line interface"""

from __future__ import annotations

import sys
from collections.abc import Callable
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Annotated
from typing import TypeVar

import typer
from loguru import logger
from pydantic import BaseModel
from rich.console import Console
from rich.markup import escape
from rich.table import Table

from .documents import PlaneQuiverDocument
from .documents import PosetDocument
from .documents import QuiverDocument
from .documents import load_document
from .exceptions import InvalidParameterError
from .exceptions import InvariantError
from .exceptions import ParseError
from .exceptions import PreconditionError
from .reports import FlowDualReport
from .reports import PosetReport
from .reports import RootReport
from .reports import ToricReport
from .reports import flowdual_report
from .reports import poset_report
from .reports import root_report
from .reports import toric_report
from .toric import DEFAULT_MAX_WORKERS

app = typer.Typer(
    name="rootpoly",
    help="Root polytopes of starred quivers: facets, flow duality, order polytopes and toric invariants",
    add_completion=False,
)

console = Console()

EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_INVARIANT = 4


class OutputFormat(str, Enum):
    """Output format"""

    TABLE = "table"
    MACHINE = "machine"


InputPath = Annotated[Path, typer.Argument(help="JSON input document", exists=True, dir_okay=False)]
FormatOption = Annotated[OutputFormat, typer.Option("--format", "-f", help="Output format")]
VerboseOption = Annotated[int, typer.Option("--verbose", "-v", count=True, help="-v for info, -vv for debug logs")]


def _configure_logging(verbose: int) -> None:
    level = {0: "WARNING", 1: "INFO"}.get(verbose, "DEBUG")
    logger.remove()
    logger.add(sys.stderr, level=level)


R = TypeVar("R", bound=BaseModel)


def _run(build: Callable[[], R]) -> R:
    """Run a pipeline, mapping library errors to exit codes"""
    try:
        return build()
    except ParseError as e:
        logger.error(f"parse error: {e}")
        console.print(f"[red]Parse error: {e}[/red]")
        raise typer.Exit(EXIT_PARSE) from e
    except (PreconditionError, InvalidParameterError) as e:
        logger.error(f"{type(e).__name__}: {e}")
        console.print(f"[red]{type(e).__name__}: {e}[/red]")
        raise typer.Exit(EXIT_PRECONDITION) from e
    except InvariantError as e:
        logger.error(f"invariant violated: {e}")
        console.print(f"[red]Internal invariant violated: {e}[/red]")
        raise typer.Exit(EXIT_INVARIANT) from e


def _emit(report: BaseModel, output: OutputFormat, render: Callable[[BaseModel], None]) -> None:
    if output == OutputFormat.MACHINE:
        typer.echo(report.model_dump_json(indent=2))
    else:
        render(report)


def _print_log(lines: list[str]) -> None:
    for line in lines:
        console.print(f"[yellow]normalized: {escape(line)}[/yellow]")


def _point(v: list[int] | list[str]) -> str:
    return f"({', '.join(str(x) for x in v)})"


def _print_points(title: str, points: list[list[int]] | list[list[str]]) -> None:
    console.print(f"{title}: {len(points)}")
    for v in points:
        console.print(f"  {_point(v)}")


@app.command()
def root(
    path: InputPath,
    output: FormatOption = OutputFormat.TABLE,
    verbose: VerboseOption = 0,
) -> None:
    """Vertices, facet table, f-vector and reflexive/terminal flags of Root(Q)

    Examples:
      rootpoly root quiver.json
      rootpoly root quiver.json -f machine
    """
    _configure_logging(verbose)
    report = _run(lambda: root_report(load_document(path, QuiverDocument).to_quiver()))
    _emit(report, output, _render_root)


def _render_root(report: RootReport) -> None:
    _print_log(report.normalization_log)
    table = Table(title=f"Facets of Root(Q) in R^{report.dim}")
    table.add_column("offset", justify="right", style="yellow")
    for i in range(report.dim):
        table.add_column(f"x{i + 1}", justify="right", style="cyan")
    table.add_column("-1 arrows", style="magenta")
    for row in report.facets:
        table.add_row(str(row.offset), *(str(c) for c in row.coefficients), escape(", ".join(row.flat)))
    console.print(table)
    _print_points("vertices", report.vertices)
    console.print(f"f-vector: {tuple(report.f_vector)}")
    console.print(f"reflexive: {report.reflexive}  terminal: {report.terminal}")


@app.command()
def flowdual(
    path: InputPath,
    output: FormatOption = OutputFormat.TABLE,
    verbose: VerboseOption = 0,
) -> None:
    """Planar dual quiver of a plane acyclic quiver and the flow polytope duality check"""
    _configure_logging(verbose)
    report = _run(lambda: flowdual_report(load_document(path, PlaneQuiverDocument).to_plane_quiver()))
    _emit(report, output, _render_flowdual)


def _render_flowdual(report: FlowDualReport) -> None:
    _print_log(report.normalization_log)
    table = Table(title="Dual arrows")
    table.add_column("primal", style="cyan")
    table.add_column("left face", style="green")
    table.add_column("right face", style="green")
    for row in report.dual_arrows:
        table.add_row(escape(row.primal), escape(row.tail), escape(row.head))
    console.print(table)
    for name, arrows in report.faces.items():
        console.print(escape(f"{name}: {', '.join(arrows)}"))
    console.print(escape(f"outer face: {', '.join(report.outer_face)}"))
    _print_points("flow polytope vertices", report.flow_vertices)
    _print_points("Root(dual) vertices", report.dual_root_vertices)
    checks = {
        "flows are 0-sum labelings": report.flows_are_labelings,
        "lattices match": report.lattices_match,
        "polar dual matches": report.polar_matches,
        "integrally equivalent": report.equivalent,
        "flow polytope reflexive": report.reflexive,
    }
    for label, value in checks.items():
        console.print(f"  {label}: {value}")
    color = "green" if report.holds else "red"
    console.print(f"[{color}]duality holds: {report.holds}[/{color}]")


@app.command()
def poset(
    path: InputPath,
    order: Annotated[bool, typer.Option("--order", help="Order polytope and linear extension count")] = False,
    marked: Annotated[bool, typer.Option("--marked", help="Marked and shifted marked order polytopes")] = False,
    fan_compare: Annotated[
        bool,
        typer.Option("--fan-compare", help="Face fan of the bounded quiver against the order polytope normal fan"),
    ] = False,
    picard: Annotated[
        bool, typer.Option("--picard", help="Picard and class groups of the canonical extension")
    ] = False,
    canonical: Annotated[bool, typer.Option("--canonical", help="Canonical extension")] = False,
    output: FormatOption = OutputFormat.TABLE,
    verbose: VerboseOption = 0,
) -> None:
    """Order polytopes, fan comparison, canonical extension and Picard data of a poset

    Examples:
      rootpoly poset poset.json --marked
      rootpoly poset poset.json --fan-compare --picard -f machine
    """
    _configure_logging(verbose)

    def build() -> PosetReport:
        document = load_document(path, PosetDocument)
        return poset_report(
            document.to_poset(),
            starred=document.to_starred(),
            marks=document.marks,
            order=order,
            marked=marked,
            fan_compare=fan_compare,
            picard=picard,
            canonical=canonical,
            normalization_log=document.reduction_log(),
        )

    report = _run(build)
    _emit(report, output, _render_poset)


def _render_poset(report: PosetReport) -> None:
    _print_log(report.normalization_log)
    console.print(escape(f"elements: {', '.join(report.elements)}"))
    console.print(f"ranked: {report.ranked}  graded: {report.graded}")
    if report.order is not None:
        console.print("[cyan]order polytope[/cyan]")
        for line in report.order.inequalities:
            console.print(f"  {line}")
        console.print(f"  vertices: {report.order.vertices}  linear extensions: {report.order.linear_extensions}")
    if report.marked is not None:
        if report.marked.marked:
            console.print("[cyan]marked order polytope[/cyan]")
            for line in report.marked.marked:
                console.print(f"  {line}")
        console.print("[cyan]shifted marked order polytope[/cyan]")
        for line in report.marked.shifted:
            console.print(f"  {line}")
        ranks = ", ".join(f"{e}: {r}" for e, r in report.marked.ranks.items())
        console.print(escape(f"  ranks: {ranks}"))
    if report.fan_compare is not None:
        fc = report.fan_compare
        console.print(f"[cyan]fan comparison[/cyan]\n  refines: {fc.refines}  equal: {fc.equal}  ({fc.reason})")
        if fc.witness is not None:
            console.print(f"  witness cone: {fc.witness}")
    if report.picard is not None:
        pic = report.picard
        table = Table(title="Canonical extension divisors")
        table.add_column("group", style="cyan")
        table.add_column("rank", justify="right", style="yellow")
        table.add_column("torsion", style="magenta")
        table.add_row("Picard", str(pic.picard_rank), str(pic.picard_torsion or "-"))
        table.add_row("Class", str(pic.class_rank), str(pic.class_torsion or "-"))
        console.print(table)
        for name, vector in pic.generators.items():
            terms = [f"{c:+d} {a}" for c, a in zip(vector, pic.arrows, strict=True) if c]
            console.print(escape(f"  {name} = {' '.join(terms)}"))
    if report.canonical is not None:
        can = report.canonical
        console.print("[cyan]canonical extension[/cyan]")
        console.print(escape(f"  elements: {', '.join(can.elements)}"))
        console.print(escape(f"  stars: {', '.join(can.stars)}"))
        console.print(escape(f"  maximal: {', '.join(can.maximal)}"))
        for lower, upper in can.covers:
            console.print(escape(f"  {lower} < {upper}"))


def _parse_values(text: str) -> list[Fraction]:
    try:
        return [Fraction(part.strip()) for part in text.split(",") if part.strip()]
    except (ValueError, ZeroDivisionError) as e:
        raise InvalidParameterError(f"cannot read parameter values {text!r}") from e


@app.command()
def toric(
    path: InputPath,
    resolve: Annotated[bool, typer.Option("--resolve", help="Small resolution of the face fan")] = False,
    superpotential: Annotated[
        str | None,
        typer.Option(
            "--superpotential", "-s", help="Comma-separated parameter values r for the superpotential polytope"
        ),
    ] = None,
    fano_index: Annotated[bool, typer.Option("--fano-index", help="Picard group, class group and Fano index")] = False,
    threads: Annotated[
        int, typer.Option("--threads", "-t", envvar="ROOTPOLY_THREADS", min=1, help="Worker threads for cone sweeps")
    ] = DEFAULT_MAX_WORKERS,
    output: FormatOption = OutputFormat.TABLE,
    verbose: VerboseOption = 0,
) -> None:
    """Toric invariants of the face fan of Root(Q)

    Examples:
      rootpoly toric three_cycle.json --fano-index
      rootpoly toric quiver.json --superpotential 1,1
      rootpoly toric quiver.json --resolve --threads 8
    """
    _configure_logging(verbose)

    def build() -> ToricReport:
        document = load_document(path, QuiverDocument)
        values = _parse_values(superpotential) if superpotential is not None else None
        return toric_report(
            document.to_quiver(),
            resolve=resolve,
            parameters=values,
            weights=document.weights,
            fano=fano_index,
            max_workers=threads,
        )

    report = _run(build)
    _emit(report, output, _render_toric)


def _render_toric(report: ToricReport) -> None:
    _print_log(report.normalization_log)
    console.print(
        f"dim {report.dim}, {report.facets} facets, {report.singular_cones} singular cones, "
        f"reflexive: {report.reflexive}, terminal: {report.terminal}"
    )
    if report.resolve is not None:
        res = report.resolve
        console.print(f"[cyan]small resolution[/cyan]: {res.summary}")
        console.print(f"  maximal cones: {res.maximal_cones}  subdivided: {res.subdivided}  cones: {res.cones}")
        console.print(f"  unimodular: {res.unimodular}")
    if report.superpotential is not None:
        sp = report.superpotential
        console.print(f"[cyan]S_Q[/cyan] = {escape(sp.text)}")
        if sp.parameters:
            console.print(escape(f"  {', '.join(f'{p}={v}' for p, v in zip(sp.parameters, sp.values, strict=True))}"))
        for line in sp.inequalities:
            console.print(f"  {line}")
        _print_points("  vertices", sp.vertices)
    if report.fano is not None:
        fano = report.fano
        table = Table(title="Divisor classes")
        table.add_column("group", style="cyan")
        table.add_column("rank", justify="right", style="yellow")
        table.add_column("torsion", style="magenta")
        table.add_row("Picard", str(fano.picard_rank), str(fano.picard_torsion or "-"))
        table.add_row("Class", str(fano.class_rank), str(fano.class_torsion or "-"))
        console.print(table)
        console.print(f"Fano index: {fano.fano_index}")
        for line in fano.cartier_conditions:
            console.print(f"  {line}")


def main() -> None:
    app()


if __name__ == "__main__":
    main()
