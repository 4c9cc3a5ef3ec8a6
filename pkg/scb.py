#!/usr/bin/env python3
"""
Command line entry point.

    scb.py seed --fixture s0 --out s0.json
    scb.py seed content/seed/default.json --out seeded.json
    scb.py serve --store s0.json --port 8080
    scb.py run fig1.json --store s0.json --event key:space@1 --answers alice
    scb.py lint program.json
    scb.py meta program.json
    scb.py examples out/

Exit codes: 0 ok, 1 lint errors, 2 bad input, 3 unknown viewer, 4 transport failure.
Transcripts, lint reports and metadata go to stdout; logs go to stderr.
"""

import asyncio
import sys
from pathlib import Path
from typing import Optional, Tuple

import click

sys.path.insert(0, str(Path(__file__).parent))

from api.accounting import RequestCounter
from api.server import serve as serve_api
from client.cache import FetchSession, get_fetch_session
from client.transport import HttpTransport, LocalTransport, Transport
from config import Config, load_config
from database.seed import build_fixture_s0, load_seed, load_seed_config
from database.store import CommunityStore
from interpreter.context import RunContext, parse_answers, parse_events
from interpreter.scheduler import run as run_program
from program.examples import LINT_FIXTURES, SHIPPED_EXAMPLES
from program.lint import has_errors, lint as lint_program, schema_diagnostic
from program.metadata import code_metadata
from program.parser import load_program, serialize_program
from utils.exceptions import ProgramSchemaError, ScbError
from utils.json_loader import canonical_json
from utils.logger import logger, setup_logger

EXIT_LINT_ERRORS = 1
EXIT_INPUT = 2


def _execute(coro):
    """Run a coroutine and map project errors onto exit codes"""
    try:
        return asyncio.run(coro)
    except ScbError as e:
        logger.debug(f"{type(e).__name__}: {e.message}")
        click.echo(f"error: {e.message}", err=True)
        raise click.exceptions.Exit(e.exit_code)
    except OSError as e:
        click.echo(f"error: {e}", err=True)
        raise click.exceptions.Exit(EXIT_INPUT)


def _load_program(path: str):
    try:
        return load_program(path)
    except ScbError as e:
        click.echo(f"error: {e.message}", err=True)
        raise click.exceptions.Exit(e.exit_code)
    except OSError as e:
        click.echo(f"error: {e}", err=True)
        raise click.exceptions.Exit(EXIT_INPUT)


async def _open_store(config: Config, store_path: Optional[str]) -> CommunityStore:
    path = store_path or config.paths.fixture_store
    return await CommunityStore.load(path, config.db.url, config.db.echo)


@click.group()
@click.option("--log-level", default=None, help="Override SCB_LOG_LEVEL.")
@click.pass_context
def cli(ctx: click.Context, log_level: Optional[str]) -> None:
    """Headless community blocks: store, API service and interpreter."""
    try:
        config = load_config()
    except ScbError as e:
        click.echo(f"error: {e.message}", err=True)
        raise click.exceptions.Exit(e.exit_code)
    setup_logger(
        log_level=(log_level or config.log_level).upper(),
        log_dir=config.paths.logs,
        enable_file=config.log_to_file,
    )
    ctx.obj = config


# -------------------------------------------------------------------- seed

@cli.command()
@click.argument("config_path", required=False, type=click.Path(dir_okay=False))
@click.option("--fixture", type=click.Choice(["s0"]), help="Write a built-in fixture instead of seeding.")
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False), help="Store file to write.")
@click.pass_obj
def seed(config: Config, config_path: Optional[str], fixture: Optional[str], out_path: str) -> None:
    """Write a deterministic store file and print its digest."""

    async def _seed() -> str:
        if fixture:
            store = await build_fixture_s0(config.db.url, config.db.echo)
        else:
            seed_config = load_seed_config(config_path or config.paths.default_seed_config)
            store = await load_seed(seed_config, config.db.url, config.db.echo)
        try:
            return await store.save(out_path)
        finally:
            await store.close()

    click.echo(_execute(_seed()))


# ------------------------------------------------------------------- serve

@cli.command()
@click.option("--store", "store_path", type=click.Path(dir_okay=False), help="Store file (default: fixture S0).")
@click.option("--host", default=None)
@click.option("--port", type=click.IntRange(0, 65535), default=None)
@click.option("--page-size", type=click.IntRange(1, 100), default=None, help="Default list limit.")
@click.pass_obj
def serve(config: Config, store_path: Optional[str], host: Optional[str], port: Optional[int],
          page_size: Optional[int]) -> None:
    """Serve the community API until interrupted."""

    async def _serve() -> None:
        store = await _open_store(config, store_path)
        try:
            await serve_api(
                store,
                host or config.api.host,
                config.api.port if port is None else port,
                page_size or config.api.page_size,
            )
        finally:
            await store.close()

    try:
        _execute(_serve())
    except KeyboardInterrupt:
        logger.info("Interrupted")


# --------------------------------------------------------------------- run

async def _open_transport(config: Config, store_path: Optional[str], url: Optional[str]
                          ) -> Tuple[Transport, Optional[CommunityStore]]:
    if url:
        return HttpTransport(url), None
    store = await _open_store(config, store_path)
    return LocalTransport(store, RequestCounter(), config.api.page_size), store


@cli.command()
@click.argument("program_path", type=click.Path(dir_okay=False))
@click.option("--viewer", default="", help="Username of the viewer (empty: logged out).")
@click.option("--store", "store_path", type=click.Path(dir_okay=False), help="Run against an in-process store file.")
@click.option("--url", help="Run against a running API service.")
@click.option("--event", "events", multiple=True, help="flag@T or key:K@T; repeatable.")
@click.option("--answers", default=None, help="Comma-separated answers for ask blocks.")
@click.option("--max-ticks", type=click.IntRange(min=1), default=None)
@click.option("--latency-ticks", type=click.IntRange(min=1), default=None)
@click.option("--session", "session_name", default=None,
              help="Reuse a named fetch session held in this process; sessions are not saved between invocations.")
@click.option("--fresh", is_flag=True, help="Flush the named session cache first (same process only).")
@click.option("--repeat", type=click.IntRange(min=1), default=1, help="Run N times in one session.")
@click.option("--show-requests", is_flag=True, help="Print request accounting to stderr.")
@click.pass_obj
def run(config: Config, program_path: str, viewer: str, store_path: Optional[str], url: Optional[str],
        events: Tuple[str, ...], answers: Optional[str], max_ticks: Optional[int],
        latency_ticks: Optional[int], session_name: Optional[str], fresh: bool, repeat: int,
        show_requests: bool) -> None:
    """Execute a program and print its transcript."""
    if store_path and url:
        raise click.UsageError("--store and --url are mutually exclusive")
    program = _load_program(program_path)

    async def _run() -> None:
        injections = parse_events(events)
        transport, store = await _open_transport(config, store_path, url)
        try:
            page_size = config.api.page_size
            if session_name:
                session = get_fetch_session(session_name, transport, page_size)
            else:
                session = FetchSession(transport, page_size)
            if fresh:
                session.flush()

            for index in range(1, repeat + 1):
                session.reset_counters()
                before = await transport.request_counts() if show_requests else None
                ctx = RunContext(
                    viewer=viewer,
                    session=session,
                    events=injections,
                    answers=parse_answers(answers),
                    max_ticks=max_ticks or config.interpreter.max_ticks,
                    latency_ticks=latency_ticks or config.interpreter.latency_ticks,
                )
                transcript = await run_program(program, ctx)
                click.echo(transcript.render(), nl=False)
                if show_requests:
                    after = await transport.request_counts()
                    click.echo(
                        f"run {index}: requests={after['requests'] - before['requests']} "
                        f"list_requests={after['list_requests'] - before['list_requests']} "
                        f"pages={session.page_requests}",
                        err=True,
                    )
        finally:
            await transport.close()
            if store is not None:
                await store.close()

    _execute(_run())


# -------------------------------------------------------------------- lint

@cli.command()
@click.argument("program_path", type=click.Path(dir_okay=False))
def lint(program_path: str) -> None:
    """Report community-block misuse; exit 1 on errors."""
    try:
        program = load_program(program_path)
    except ProgramSchemaError as e:
        click.echo(schema_diagnostic(e))
        raise click.exceptions.Exit(e.exit_code)
    except ScbError as e:
        click.echo(f"error: {e.message}", err=True)
        raise click.exceptions.Exit(e.exit_code)
    except OSError as e:
        click.echo(f"error: {e}", err=True)
        raise click.exceptions.Exit(EXIT_INPUT)

    diagnostics = lint_program(program)
    for diagnostic in diagnostics:
        click.echo(diagnostic.render())
    if has_errors(diagnostics):
        raise click.exceptions.Exit(EXIT_LINT_ERRORS)


# -------------------------------------------------------------------- meta

@cli.command()
@click.argument("program_path", type=click.Path(dir_okay=False))
def meta(program_path: str) -> None:
    """Print the code metadata of a program."""
    program = _load_program(program_path)
    click.echo(canonical_json(code_metadata(program).to_json(), indent=2), nl=False)


# ---------------------------------------------------------------- examples

@cli.command()
@click.argument("out_dir", type=click.Path(file_okay=False))
def examples(out_dir: str) -> None:
    """Write the shipped example projects and lint fixtures."""
    target = Path(out_dir)
    try:
        target.mkdir(parents=True, exist_ok=True)
        for name, builder in {**SHIPPED_EXAMPLES, **LINT_FIXTURES}.items():
            (target / name).write_text(serialize_program(builder()), encoding="utf-8")
            click.echo(name)
    except OSError as e:
        click.echo(f"error: {e}", err=True)
        raise click.exceptions.Exit(EXIT_INPUT)


if __name__ == "__main__":
    cli()
