"""Command line front end.

Eight subcommands front the library: exec and graph run and draw
constellations, mll-check and mll-exec test and run proof structures,
tile and atam build tile-system encodings, resolve answers clause
queries, and tm compiles and steps Turing machines as tilings.

Exit codes form a trichotomy so scripts can tell refutation from
exhaustion: 0 is a definitive success, 1 a definitive failure (with a
certificate in the report), 2 an unknown verdict at the given fuel, and
3 a parse or I/O error.  Output is deterministic for fixed inputs and
flags; JSON is emitted with sorted keys.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from stellres import constellations as cons
from stellres import encodings, engine, mll, parsing

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_UNKNOWN = 2
EXIT_INPUT = 3

_INPUT_ERRORS = (parsing.ParseError, mll.StructureError, ValueError, OSError)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _fail_input(exc) -> None:
    click.echo(f"error: {exc}", err=True)
    raise SystemExit(EXIT_INPUT)


def _load(source: str) -> str:
    """Read from stdin for -, from a file when one exists, else inline."""
    if source == "-":
        return sys.stdin.read()
    try:
        path = Path(source)
        if path.exists() and path.is_file():
            return path.read_text()
    except OSError as exc:
        _fail_input(exc)
    return source


def _parse_sigma(source: str) -> cons.Constellation:
    text = _load(source)
    try:
        if text.lstrip().startswith("{"):
            return parsing.parse_constellation_json(text)
        return parsing.parse_constellation(text)
    except _INPUT_ERRORS as exc:
        _fail_input(exc)


def _colour_set(sigma: cons.Constellation, colors: str | None):
    _, inferred = cons.signature_of(sigma)
    if colors is None:
        return None
    chosen = {c.strip() for c in colors.split(",") if c.strip()}
    missing = chosen - inferred
    if missing:
        _fail_input("colours not in the signature: " + ", ".join(sorted(missing)))
    return chosen


def _parse_structure_source(source: str) -> mll.ProofStructure:
    """Structures come as conclusion/cut/ax lines or as a derivation
    s-expression; a leading ( selects the derivation reading."""
    text = _load(source)
    try:
        if text.lstrip().startswith("("):
            return mll.build_structure(mll.parse_derivation(text))
        return mll.parse_structure(text)
    except _INPUT_ERRORS as exc:
        _fail_input(exc)


def _status_code(status: str) -> int:
    if status == engine.COMPLETE:
        return EXIT_OK
    if status == engine.DIVERGENT:
        return EXIT_FAIL
    return EXIT_UNKNOWN


def _echo_divergence(certificate) -> None:
    if certificate is not None:
        click.echo("# divergence: pumpable cycle through occurrences "
                   f"{certificate['occurrences']} via edges {certificate['edges']}")


_fuel_option = click.option("--fuel", default=64, type=click.IntRange(min=1),
                            show_default=True, help="search depth bound")


@click.group()
@click.option("--seed", type=int, default=None,
              help="recorded in JSON reports; commands are deterministic")
@click.pass_context
def cli(ctx, seed):
    """Stellar resolution: run constellations, test proof structures,
    and drive the tile, clause, and machine encodings."""
    ctx.obj = {"seed": seed}


@cli.command("exec")
@click.argument("source")
@click.option("--colors", default=None, help="comma-separated colour set")
@_fuel_option
@click.option("--tree/--general", "tree", default=False,
              help="restrict to tree diagrams")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]),
              default="text", show_default=True)
@click.pass_context
def cmd_exec(ctx, source, colors, fuel, tree, fmt):
    """Execute a constellation and print the output constellation."""
    sigma = _parse_sigma(source)
    colours = _colour_set(sigma, colors)
    result = engine.execute(sigma, colours, fuel=fuel, tree_only=tree)
    if fmt == "json":
        payload = engine.execution_to_json(result)
        payload["seed"] = ctx.obj["seed"]
        click.echo(_dumps(payload))
    else:
        for star in result.output:
            click.echo(parsing.star_to_text(star, rename=True))
        click.echo(f"# status: {result.status} diagrams: {result.diagram_count}")
        _echo_divergence(result.divergence)
    return _status_code(result.status)


@cli.command("graph")
@click.argument("source")
@click.option("--colors", default=None, help="comma-separated colour set")
@click.option("--format", "fmt", type=click.Choice(["text", "json", "dot"]),
              default="text", show_default=True)
def cmd_graph(source, colors, fmt):
    """Print the unification graph of a constellation."""
    sigma = _parse_sigma(source)
    colours = _colour_set(sigma, colors)
    ug = engine.unification_graph(sigma, colours)
    if fmt == "dot":
        click.echo(engine.ugraph_to_dot(ug))
    elif fmt == "json":
        click.echo(_dumps({"stars": len(sigma),
                           "edges": [list(e) for e in ug.edges]}))
    else:
        for index, star in enumerate(sigma):
            click.echo(f"# {index}: {parsing.star_to_text(star, rename=True)}")
        for u, su, v, sv in ug.edges:
            click.echo(f"{u}.{su} -- {v}.{sv}")
    return EXIT_OK


@cli.command("mll-check")
@click.argument("source")
@_fuel_option
@click.option("--format", "fmt", type=click.Choice(["text", "json"]),
              default="text", show_default=True)
def cmd_mll_check(source, fuel, fmt):
    """Test a proof structure: switching tests versus graph correctness."""
    s = _parse_structure_source(source)
    report = mll.switching_report(s, fuel)
    dr = mll.dr_correct(s)
    mix = mll.mix_correct(s)
    if fmt == "json":
        payload = {
            "verdict": report["verdict"],
            "normalising": report["normalising"],
            "dr_correct": dr,
            "mix_correct": mix,
            "switchings": [
                {"switching": e["switching"], "status": e["status"],
                 "passed": e["passed"],
                 "output": [parsing.star_to_text(st, rename=True)
                            for st in e["output"]],
                 **({"certificate": e["certificate"]}
                    if "certificate" in e else {})}
                for e in report["switchings"]],
        }
        click.echo(_dumps(payload))
    else:
        click.echo(f"verdict: {report['verdict']}")
        click.echo(f"normalising: {report['normalising']}")
        click.echo(f"dr_correct: {dr}")
        click.echo(f"mix_correct: {mix}")
        for e in report["switchings"]:
            label = ",".join(f"{k}={v}" for k, v in sorted(e["switching"].items()))
            click.echo(f"switching [{label or 'empty'}]: {e['status']}"
                       f" passed={e['passed']}")
            if "certificate" in e:
                _echo_divergence(e["certificate"])
    if report["verdict"] == mll.PROOF_NET:
        return EXIT_OK
    if report["verdict"] == mll.NOT_PROOF_NET:
        return EXIT_FAIL
    return EXIT_UNKNOWN


@cli.command("mll-exec")
@click.argument("source")
@_fuel_option
@click.option("--format", "fmt", type=click.Choice(["text", "json"]),
              default="text", show_default=True)
def cmd_mll_exec(source, fuel, fmt):
    """Run a proof structure and compare with syntactic cut elimination."""
    s = _parse_structure_source(source)
    result = mll.exec_structure(s, fuel)
    is_net = mll.dr_correct(s)
    dynamics = mll.dynamics_check(s, fuel) if is_net else None
    try:
        shown = mll.decolourize(result.output)
    except ValueError:
        shown = result.output
    if fmt == "json":
        payload = {
            "status": result.status,
            "dr_correct": is_net,
            "dynamics_matches_reduction": dynamics,
            "output": [parsing.star_to_text(st, rename=True) for st in shown],
            "divergence": result.divergence,
        }
        click.echo(_dumps(payload))
    else:
        for star in shown:
            click.echo(parsing.star_to_text(star, rename=True))
        click.echo(f"# status: {result.status} dr_correct: {is_net}"
                   f" dynamics: {dynamics}")
        _echo_divergence(result.divergence)
    if not is_net or dynamics is False:
        return EXIT_FAIL
    if dynamics is None:
        return EXIT_UNKNOWN
    return EXIT_OK


@cli.command("tile")
@click.argument("source")
@click.option("--width", type=click.IntRange(min=1), default=None,
              help="enumerate tilings of a width x height window")
@click.option("--height", type=click.IntRange(min=1), default=None)
@click.option("--fuel", default=9, type=click.IntRange(min=1), show_default=True,
              help="diagram growth bound for enumeration")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]),
              default="text", show_default=True)
def cmd_tile(source, width, height, fuel, fmt):
    """Encode a Wang tile set; with --width/--height, enumerate tilings."""
    text = _load(source)
    try:
        tileset, _strengths = encodings.parse_tiles(text)
        sigma = encodings.encode_wang(tileset)
    except _INPUT_ERRORS as exc:
        _fail_input(exc)
    if (width is None) != (height is None):
        _fail_input("--width and --height go together")
    if width is None:
        if fmt == "json":
            click.echo(_dumps(parsing.constellation_to_json(sigma)))
        else:
            click.echo(parsing.constellation_to_text(sigma, rename=True))
        return EXIT_OK
    tilings = encodings.wang_tilings(tileset, width, height, fuel=fuel)
    listed = sorted(sorted(t) for t in tilings)
    if fmt == "json":
        click.echo(_dumps({"count": len(listed),
                           "tilings": [[list(p) for p in t] for t in listed]}))
    else:
        click.echo(f"# tilings: {len(listed)}")
        for t in listed:
            click.echo(" ".join(f"{c},{r}={i}" for c, r, i in t))
    return EXIT_OK


@cli.command("atam")
@click.argument("source")
@click.option("--temperature", type=click.IntRange(min=1), default=2,
              show_default=True)
@click.option("--paper-verbatim", is_flag=True, default=False,
              help="emit the historical display form of the encoding")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]),
              default="text", show_default=True)
def cmd_atam(source, temperature, paper_verbatim, fmt):
    """Encode a temperature tile assembly system as a constellation."""
    text = _load(source)
    try:
        tileset, strengths = encodings.parse_tiles(text)
        tiles = tuple(
            encodings.AssemblyTile(t.west, t.east, t.south, t.north, s)
            for t, s in zip(tileset.tiles, strengths))
        system = encodings.AssemblySystem(tiles, temperature)
        sigma = encodings.encode_atam(system, paper_verbatim=paper_verbatim)
    except _INPUT_ERRORS as exc:
        _fail_input(exc)
    if fmt == "json":
        click.echo(_dumps(parsing.constellation_to_json(sigma)))
    else:
        click.echo(parsing.constellation_to_text(sigma, rename=True))
    return EXIT_OK


@cli.command("resolve")
@click.argument("source")
@_fuel_option
@click.option("--format", "fmt", type=click.Choice(["text", "json"]),
              default="text", show_default=True)
def cmd_resolve(source, fuel, fmt):
    """Run a clause program's query and print its answers."""
    text = _load(source)
    try:
        clauses, query = encodings.parse_program(text)
        sigma = encodings.encode_clauses(clauses, query)
    except _INPUT_ERRORS as exc:
        _fail_input(exc)
    result = engine.execute(sigma, fuel=fuel)
    answers = sorted(parsing.term_to_text(t) for t in
                     encodings.answer_terms(result.output))
    if fmt == "json":
        click.echo(_dumps({"status": result.status, "answers": answers,
                           "divergence": result.divergence}))
    else:
        for answer in answers:
            click.echo(answer)
        click.echo(f"# status: {result.status} answers: {len(answers)}")
        _echo_divergence(result.divergence)
    return _status_code(result.status)


@cli.command("tm")
@click.argument("source")
@click.option("--input", "word", default="", help="initial tape word")
@click.option("--steps", type=click.IntRange(min=0), default=10,
              show_default=True)
@click.option("--width", type=click.IntRange(min=1), default=None,
              help="tape width (default fits input plus steps)")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]),
              default="text", show_default=True)
def cmd_tm(source, word, steps, width, fmt):
    """Compile a Turing machine to tiles and print its space-time rows."""
    text = _load(source)
    try:
        machine = encodings.parse_tm_text(text)
    except _INPUT_ERRORS as exc:
        _fail_input(exc)
    if width is None:
        width = len(word) + steps + 1
    if len(word) > width:
        _fail_input("input word longer than the tape width")
    tileset = encodings.compile_turing(machine)
    try:
        rows = encodings.run_rows(machine, word, width, steps)
    except ValueError as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_FAIL
    if fmt == "json":
        click.echo(_dumps({"tiles": len(tileset.tiles), "width": width,
                           "rows": [list(r) for r in rows]}))
    else:
        click.echo(f"# tiles: {len(tileset.tiles)} width: {width}")
        for row in rows:
            click.echo(" ".join(row))
    return EXIT_OK


def main(argv=None):
    try:
        code = cli.main(args=argv, standalone_mode=False)
    except click.exceptions.Exit as exc:
        sys.exit(exc.exit_code)
    except click.UsageError as exc:
        click.echo(f"error: {exc.format_message()}", err=True)
        sys.exit(EXIT_INPUT)
    except click.ClickException as exc:
        exc.show()
        sys.exit(EXIT_INPUT)
    sys.exit(code if isinstance(code, int) else EXIT_OK)


if __name__ == "__main__":
    main()
