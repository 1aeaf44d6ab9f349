import logging
from typing import List, Optional

import typer
from rich.console import Console
from rich.logging import RichHandler
from rich.panel import Panel
from rich.table import Table

from .analysis.oracle import enumerate_words
from .analysis.synth import synth_grammar
from .errors import OrdlexError
from .grammar.parser import format_grammar
from .logger import SessionLogger
from .models.base import ConsistencyReport, Report
from .models.ordinal import ord_parse
from .pipeline import analyze_paths, verify_file
from .settings import Settings
from .storage.data_store import ArtifactStore, dump_document

app = typer.Typer(help="ordlex - lexicographic order types of context-free languages")
console = Console()
error_console = Console(stderr=True)

settings = Settings.from_env()
session_logger = SessionLogger(settings.log_dir, enabled=settings.session_log)
store = ArtifactStore(settings.output_dir)

EXIT_NOT_SCATTERED = 2


def _fail(message: str) -> typer.Exit:
    error_console.print(f"[red]Error: {message}[/red]")
    return typer.Exit(1)


def _checks_table(consistency: ConsistencyReport) -> Table:
    table = Table(show_header=True, header_style="bold magenta")
    table.add_column("Check")
    table.add_column("Result")
    table.add_column("Detail")
    table.add_column("Witness")
    for check in consistency.checks:
        result = "[green]pass[/green]" if check.passed else "[red]fail[/red]"
        witness = "" if check.witness is None else (check.witness or "_eps")
        table.add_row(check.name, result, check.detail, witness)
    return table


def _render_report(report: Report) -> None:
    table = Table(show_header=False, box=None)
    table.add_column("Field", style="bold")
    table.add_column("Value")
    table.add_row("transforms", ", ".join(report.transforms))
    table.add_row("right-linear", str(report.right_linear).lower())
    if report.structure is not None:
        parts = [
            f"{{{', '.join(c)}}} h={h}"
            for c, h in zip(report.structure.components, report.structure.height)
        ]
        table.add_row("components", "; ".join(parts))
    if report.scatter is not None:
        table.add_row("scattered", str(report.scatter.scattered).lower())
        failure = report.scatter.failure
        if failure is not None:
            witness = failure.counterexample or "_eps"
            table.add_row("counterexample", f"{witness} ({failure.reason})")
    if report.rank is not None:
        table.add_row("rank", f"{report.rank.value} ({report.rank.exactness.value})")
    if report.rank_bound is not None:
        table.add_row("rank bound", f"{report.rank_bound.overall} (upper-bound)")
    if report.well_ordered is not None:
        entry = report.well_ordered
        value = "unknown" if entry.value is None else str(entry.value).lower()
        table.add_row("well-ordered", f"{value} ({entry.exactness.value})")
        if entry.triple is not None and not entry.triple.well_ordered:
            t = entry.triple
            table.add_row("descending", f"{t.u or ''}({t.v})^n{t.w}")
        elif entry.evidence is not None:
            e = entry.evidence
            table.add_row("descending", f"{e.x}({e.v})^n{e.w}({e.z})^n{e.tail}")
    if report.order_type is not None:
        table.add_row("order type", f"{report.order_type.value} (exact)")
    if report.note:
        table.add_row("note", report.note)
    console.print(Panel(table, title=report.path))
    if report.consistency is not None and report.consistency.checks:
        console.print(_checks_table(report.consistency))


@app.command()
def analyze(
    grammar_paths: List[str] = typer.Argument(..., help="Grammar files to analyze"),
    as_json: bool = typer.Option(False, "--json", help="Print a JSON document instead of tables"),
    jobs: int = typer.Option(1, "--jobs", "-j", min=1, help="Analyze files in parallel"),
    maxlen: Optional[int] = typer.Option(
        None, "--maxlen", min=0, max=20, help="Word length for enumeration checks"
    ),
):
    """Decide scatteredness, bound the rank and cross-check every result."""
    session_id = session_logger.start_session("analyze")
    try:
        run_settings = settings.model_copy(
            update={"max_len": settings.max_len if maxlen is None else maxlen}
        )
        results = analyze_paths(grammar_paths, run_settings, jobs)
        exit_code = 0
        reports = []
        for path, report, error in results:
            if error is not None:
                error_console.print(f"[red]Error: {error}[/red]")
                session_logger.log_interaction(
                    session_id, {"type": "error", "path": path, "error": error}
                )
                exit_code = 1
                continue
            assert report is not None
            reports.append(report)
            session_logger.log_interaction(
                session_id,
                {
                    "type": "report",
                    "path": path,
                    "scattered": report.scattered,
                    "consistent": report.consistency.passed if report.consistency else None,
                },
            )
            if not report.scattered and exit_code == 0:
                exit_code = EXIT_NOT_SCATTERED
        if as_json:
            typer.echo(dump_document({"reports": [r.model_dump(mode="json") for r in reports]}))
        else:
            for report in reports:
                _render_report(report)
        if exit_code:
            raise typer.Exit(exit_code)
    finally:
        session_logger.end_session(session_id)


@app.command()
def synth(
    ordinal: str = typer.Argument(..., help="Ordinal in Cantor normal form, e.g. 'w^2+w*3+1'"),
    out: Optional[str] = typer.Option(
        None, "--out", "-o", help="Write STEM.cfg and STEM.cert.json"
    ),
    as_json: bool = typer.Option(False, "--json", help="Print a JSON document"),
):
    """Build a grammar whose language has the given well-ordered order type."""
    session_id = session_logger.start_session("synth")
    try:
        try:
            alpha = ord_parse(ordinal)
            grammar, certificate = synth_grammar(alpha)
        except OrdlexError as exc:
            raise _fail(str(exc)) from None

        session_logger.log_interaction(
            session_id,
            {"type": "synth", "ordinal": alpha, "rules": grammar.rule_count()},
        )
        if out:
            try:
                grammar_file, cert_file = store.save_synthesis(out, grammar, certificate)
            except OSError as exc:
                raise _fail(str(exc)) from None
            session_logger.log_interaction(
                session_id, {"type": "files", "grammar": str(grammar_file), "cert": str(cert_file)}
            )
            if not as_json:
                console.print(f"[green]Wrote {grammar_file} and {cert_file}[/green]")

        if as_json:
            typer.echo(
                dump_document(
                    {
                        "ordinal": str(alpha),
                        "grammar": format_grammar(grammar),
                        "certificate": certificate.model_dump(mode="json"),
                    }
                )
            )
        else:
            if not out:
                console.print(Panel(format_grammar(grammar).rstrip(), title="Grammar"))
                typer.echo(dump_document({"certificate": certificate.model_dump(mode="json")}))
            console.print(f"Order type: [bold]{certificate.order_type}[/bold]")
    finally:
        session_logger.end_session(session_id)


@app.command(name="enum")
def enum_words(
    grammar_path: str = typer.Argument(..., help="Grammar file"),
    maxlen: Optional[int] = typer.Option(
        None, "--maxlen", help="Longest word to list (at most 20)"
    ),
):
    """List the words of the language up to a length, in lexicographic order."""
    session_id = session_logger.start_session("enum")
    try:
        cap = settings.max_len if maxlen is None else maxlen
        try:
            grammar = store.load_grammar(grammar_path)
            sample = enumerate_words(grammar, cap)
        except (OrdlexError, OSError) as exc:
            raise _fail(str(exc)) from None
        session_logger.log_interaction(
            session_id, {"type": "enum", "path": grammar_path, "count": len(sample.words)}
        )
        for word in sample.words:
            typer.echo(word or "_eps")
    finally:
        session_logger.end_session(session_id)


@app.command()
def verify(
    grammar_path: str = typer.Argument(..., help="Grammar file"),
    ordinal: Optional[str] = typer.Option(None, "--ordinal", help="Expected order type"),
    maxlen: Optional[int] = typer.Option(
        None, "--maxlen", min=0, max=20, help="Word length for enumeration agreement"
    ),
    cert: Optional[str] = typer.Option(
        None, "--cert", help="Certificate JSON (default: <grammar stem>.cert.json)"
    ),
    as_json: bool = typer.Option(False, "--json", help="Print a JSON document"),
):
    """Check a grammar against its certificate and an expected order type."""
    session_id = session_logger.start_session("verify")
    try:
        run_settings = settings.model_copy(
            update={"max_len": settings.max_len if maxlen is None else maxlen}
        )
        try:
            expected = ord_parse(ordinal) if ordinal else None
            report = verify_file(grammar_path, run_settings, expected, cert)
        except (OrdlexError, OSError, ValueError) as exc:
            raise _fail(str(exc)) from None

        consistency = report.consistency or ConsistencyReport()
        session_logger.log_interaction(
            session_id,
            {
                "type": "verify",
                "path": grammar_path,
                "passed": consistency.passed,
                "failures": [check.name for check in consistency.failures()],
            },
        )
        if as_json:
            typer.echo(
                dump_document(
                    {
                        "path": grammar_path,
                        "passed": consistency.passed,
                        **consistency.model_dump(mode="json"),
                    }
                )
            )
        else:
            console.print(_checks_table(consistency))
            if consistency.passed:
                console.print("[green]All checks passed.[/green]")
            else:
                console.print(f"[red]{len(consistency.failures())} check(s) failed.[/red]")
        if not consistency.passed:
            raise typer.Exit(1)
    finally:
        session_logger.end_session(session_id)


@app.callback()
def configure(
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Log analysis steps to stderr"),
):
    """Set up logging before any command runs."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(name)s: %(message)s",
        handlers=[RichHandler(console=error_console, show_time=False)],
    )


def main():
    """Run the application."""
    app()


if __name__ == "__main__":
    main()
