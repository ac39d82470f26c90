"""Command-line entry points: interactive REPL, batch script runner, and the
HTTP service."""

from __future__ import annotations

import sys
from pathlib import Path

import click

from .errors import PrefqError
from .session import SessionState, execute, load_session, run_script


@click.group()
def main():
    """prefq — preference queries with revisable constraint preferences."""


@main.command()
@click.option("--state", "state_path", type=click.Path(), default=None,
              help="Session file to restore before starting.")
def repl(state_path):
    """Interactive session; ';'-separated commands, Ctrl-D to exit."""
    state = _initial_state(state_path)
    click.echo("prefq repl — LOAD / PREF / WINNOW / REVISE / CHECK / COMPAT / ...")
    while True:
        try:
            line = input("prefq> ")
        except EOFError:
            click.echo("")
            break
        for cmd in line.split(";"):
            if not cmd.strip():
                continue
            try:
                state, out = execute(cmd, state)
                if out:
                    click.echo(out)
            except PrefqError as exc:
                click.echo(f"error: {exc}", err=True)


@main.command()
@click.argument("script", type=click.Path(exists=True))
@click.option("--state", "state_path", type=click.Path(), default=None)
def run(script, state_path):
    """Run a command script and print each command's output."""
    state = _initial_state(state_path)
    text = Path(script).read_text(encoding="utf-8")
    try:
        _, outputs = run_script(text, state)
    except PrefqError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    for out in outputs:
        click.echo(out)


@main.command()
@click.option("--port", type=int, default=8642, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--state", "state_path", type=click.Path(), default=None,
              help="Session file to serve from.")
def serve(port, host, state_path):
    """Serve the HTTP API for the revision workbench."""
    from .server import serve as _serve

    _serve(_initial_state(state_path), port=port, host=host)


def _initial_state(state_path) -> SessionState:
    if state_path and Path(state_path).exists():
        return load_session(state_path)
    return SessionState()


if __name__ == "__main__":
    main()
