"""Command-line entry points: validate, score, diagnose, serve, chart.

Interactive prompts and status messages go to stderr; results tables and
CSV go to stdout, so batch and interactive runs produce byte-identical
result output for identical answers.

Exit codes: 0 success, 1 invalid input (KB lint errors, bad answers,
aborted session), 2 unreadable or unloadable files and startup failures.
"""

from __future__ import annotations

import json
import socket
import sys

import click

from .engine import AnswerSet, EngineConfig, diagnose
from .errors import (
    FuzzydxError,
    KnowledgeBaseParseError,
    KnowledgeBaseValidationError,
)
from .knowledge_base import KnowledgeBase, load_kb, validate_kb
from .render import confidence_chart_csv, results_table
from .session import Phase, PromptKind, pending_prompts, start_session, submit


def _fail(message: str, code: int) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _read_text(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        _fail(str(exc), 2)
        raise AssertionError  # unreachable


def _load_kb(path: str) -> KnowledgeBase:
    text = _read_text(path)
    try:
        return load_kb(text)
    except (KnowledgeBaseParseError, KnowledgeBaseValidationError) as exc:
        _fail(str(exc), 2)
        raise AssertionError  # unreachable


def _load_answers(path: str) -> tuple[str, AnswerSet]:
    text = _read_text(path)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        _fail(f"answers file is not valid JSON: {exc}", 1)
    if not isinstance(doc, dict):
        _fail("answers file must be a JSON object", 1)
    unknown = set(doc) - {"area_id", "symptoms", "history"}
    if unknown:
        _fail(f"unexpected answer fields: {sorted(unknown)}", 1)
    area_id = doc.get("area_id")
    symptoms = doc.get("symptoms", {})
    history = doc.get("history", {})
    if not isinstance(area_id, str):
        _fail("area_id must be a string", 1)
    if not isinstance(symptoms, dict) or not all(
        isinstance(k, str) and isinstance(v, str) for k, v in symptoms.items()
    ):
        _fail("symptoms must map symptom ids to level labels", 1)
    if not isinstance(history, dict) or not all(
        isinstance(k, str) and isinstance(v, bool) for k, v in history.items()
    ):
        _fail("history must map question ids to booleans", 1)
    answers = AnswerSet(
        selected_symptom_ids=set(symptoms),
        level_answers=dict(symptoms),
        catalyst_answers=dict(history),
    )
    return area_id, answers


@click.group()
@click.option("--kb", "kb_path", required=True, metavar="PATH",
              help="Knowledge-base JSON file.")
@click.option("--filter-threshold", type=float, default=5.0, show_default=True,
              help="Hide results below this percentage (0 disables).")
@click.option("--drop-per-test", type=float, default=15.0, show_default=True,
              help="Confidence points lost per required pathological test.")
@click.pass_context
def cli(ctx: click.Context, kb_path: str, filter_threshold: float,
        drop_per_test: float) -> None:
    """Staged symptom diagnosis against a declarative knowledge base."""
    ctx.obj = {
        "kb_path": kb_path,
        "config": EngineConfig(
            filter_threshold=filter_threshold, drop_per_test=drop_per_test
        ),
    }


@cli.command()
@click.pass_context
def validate(ctx: click.Context) -> None:
    """Lint the knowledge base; exit 0 only when it has no errors."""
    text = _read_text(ctx.obj["kb_path"])
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        _fail(f"malformed JSON: {exc}", 2)
        raise AssertionError
    report = validate_kb(doc)
    for issue in report.errors:
        click.echo(f"error {issue.code} at {issue.path}: {issue.message}")
    for issue in report.warnings:
        click.echo(f"warning {issue.code} at {issue.path}: {issue.message}")
    click.echo(f"{len(report.errors)} error(s), {len(report.warnings)} warning(s)")
    sys.exit(0 if report.ok else 1)


@cli.command()
@click.argument("answers_path", metavar="ANSWERS")
@click.pass_context
def score(ctx: click.Context, answers_path: str) -> None:
    """Diagnose a complete answer file and print the ranked table."""
    kb = _load_kb(ctx.obj["kb_path"])
    area_id, answers = _load_answers(answers_path)
    try:
        results = diagnose(kb, area_id, answers, ctx.obj["config"])
    except FuzzydxError as exc:
        _fail(str(exc), 1)
        raise AssertionError
    click.echo(results_table(kb, results), nl=False)


def _ask(prompt_text: str) -> str:
    click.echo("> ", err=True, nl=False)
    line = sys.stdin.readline()
    if line == "":
        raise EOFError
    return line.strip()


def _choose_one(options: tuple[tuple[str, str], ...]) -> str:
    while True:
        reply = _ask("")
        option_ids = [option_id for option_id, _ in options]
        if reply.isdigit() and 1 <= int(reply) <= len(options):
            return option_ids[int(reply) - 1]
        if reply in option_ids:
            return reply
        click.echo("please answer with one of the listed numbers", err=True)


def _choose_many(options: tuple[tuple[str, str], ...]) -> list[str]:
    while True:
        reply = _ask("")
        if not reply:
            return []
        option_ids = [option_id for option_id, _ in options]
        chosen = []
        ok = True
        for token in (t.strip() for t in reply.split(",")):
            if token.isdigit() and 1 <= int(token) <= len(options):
                chosen.append(option_ids[int(token) - 1])
            elif token in option_ids:
                chosen.append(token)
            else:
                ok = False
                break
        if ok:
            return chosen
        click.echo("please answer with listed numbers, separated by commas", err=True)


@cli.command(name="diagnose")
@click.pass_context
def diagnose_cmd(ctx: click.Context) -> None:
    """Run the staged question flow on the terminal."""
    kb = _load_kb(ctx.obj["kb_path"])
    session = start_session(kb)
    try:
        while session.phase is not Phase.COMPLETE:
            prompt = pending_prompts(kb, session)[0]
            click.echo(prompt.text, err=True)
            for i, (_option_id, label) in enumerate(prompt.options, start=1):
                click.echo(f"  {i}. {label}", err=True)
            if prompt.kind is PromptKind.SYMPTOM_MULTI:
                click.echo("(numbers separated by commas, empty for none)", err=True)
                selection: str | list[str] = _choose_many(prompt.options)
            else:
                selection = _choose_one(prompt.options)
            submit(kb, session, prompt.prompt_id, selection, ctx.obj["config"])
    except EOFError:
        _fail("input ended before the session was complete", 1)
        raise AssertionError
    assert session.results is not None
    click.echo(results_table(kb, session.results), nl=False)
    if not session.results:
        click.echo("no likely condition found", err=True)


@cli.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8080, show_default=True)
@click.option("--journal", "journal_path", metavar="PATH", default=None,
              help="Append-only session journal for restart recovery.")
@click.pass_context
def serve(ctx: click.Context, host: str, port: int, journal_path: str | None) -> None:
    """Run the HTTP diagnosis service until interrupted."""
    import uvicorn

    from .service import SessionStore, create_app

    kb = _load_kb(ctx.obj["kb_path"])
    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    probe.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
    try:
        probe.bind((host, port))
    except OSError as exc:
        _fail(f"cannot bind {host}:{port}: {exc}", 2)
    finally:
        probe.close()

    store = SessionStore(journal_path)
    app = create_app(kb, ctx.obj["config"], store)
    try:
        uvicorn.run(app, host=host, port=port, log_level="info")
    finally:
        store.close()


@cli.command()
@click.pass_context
def chart(ctx: click.Context) -> None:
    """Emit per-disease confidence data as CSV."""
    kb = _load_kb(ctx.obj["kb_path"])
    click.echo(
        confidence_chart_csv(kb, ctx.obj["config"].drop_per_test), nl=False
    )


def main() -> None:
    cli(auto_envvar_prefix="FUZZYDX")


if __name__ == "__main__":
    main()
