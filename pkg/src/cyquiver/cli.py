"""
Command-line surface of cyquiver.

Every command reads its inputs from files, writes its result to stdout or
to ``--output`` and reports failures through the exit code:
0 pass, 1 check failed, 2 invalid quiver, 3 parse or degree error,
4 inadmissible W_0, 5 inadmissible transform.
"""

import logging
from contextlib import contextmanager
from pathlib import Path
from typing import List, Optional

import typer

from . import settings
from .ainfty import Pairing, check_ainfty, check_cyclicity_and_unit, extract_products
from .calculus import build_W_can, check_master, lift_potential, maurer_cartan_check
from .dgla import cohomology_ranks, psi_probe
from .exceptions import CyQuiverError, DegreeError
from .expressions import print_word
from .formats import (
    dump_json,
    ext_table_document,
    potential_document,
    quiver_document,
    read_automorphism,
    read_ext_table,
    read_generator,
    read_potential,
    read_quiver,
    render_check,
    render_cohomology,
    render_master,
    render_psi,
)
from .gauge import apply_automorphism, hamiltonian_flow
from .quiver import double_quiver, ext_table_from_quiver, quiver_from_ext_table
from .settings import JobConfig
from .words import CoordinateSpace, restrict

app = typer.Typer(
    help="Graded quivers with potential and cyclic A∞ structures.",
    no_args_is_help=True,
    add_completion=False,
)

CHECK_MODES = ("master", "mc", "ainfty", "all")
GAUGE_KINDS = ("auto", "flow")

D_OPTION = typer.Option(None, "--d", min=2, help="Expected CY dimension; must match the input.")
OUTPUT_OPTION = typer.Option(None, "--output", "-o", help="Write the result here instead of stdout.")
STRUCTURED_OPTION = typer.Option(
    settings.CYQUIVER_STRUCTURED, "--structured/--human", help="JSON report instead of text."
)
VERBOSE_OPTION = typer.Option(settings.CYQUIVER_VERBOSE, "--verbose", "-v", help="INFO logging.")
TRUNCATION_OPTION = typer.Option(
    settings.CYQUIVER_TRUNCATION, "--truncation", "-N", min=3, help="cyc.deg truncation N."
)
WINDOW_OPTION = typer.Option(settings.CYQUIVER_WINDOW, "--window", "-K", min=1, help="cyc.deg window K.")


@contextmanager
def _job(config):
    """Maps library failures to their exit codes."""
    try:
        yield config
    except CyQuiverError as e:
        typer.echo(f"error: {e}", err=True)
        raise typer.Exit(code=e.exit_code)


def _config(subcommand, inputs, **kwargs):
    try:
        return JobConfig(subcommand, [str(p) for p in inputs], **kwargs)
    except ValueError as e:
        raise typer.BadParameter(str(e))


def _emit(config, text):
    if config.output:
        Path(config.output).write_text(text)
        logging.info(f"wrote {config.output}")
    else:
        typer.echo(text, nl=False)


def _check_d(config, d):
    if config.d is not None and config.d != d:
        raise DegreeError(f"input has d={d}, but --d {config.d} was requested")


def _load_space(config, path):
    """Coordinate space of the quiver file, doubling a half quiver first."""
    quiver = read_quiver(path)
    _check_d(config, quiver.d)
    if quiver.half:
        quiver = double_quiver(quiver)
    return CoordinateSpace.from_quiver(quiver)


def _require_minimal(series):
    short = [w for w, _ in series.items() if len(w) < 3]
    if short:
        names = ", ".join(print_word(series.space, w) for w in short)
        raise DegreeError(f"potential is not minimal, words of cyc.deg below 3: {names}")


@app.command("build-double")
def build_double(
    quiver: Path = typer.Argument(..., help="Half quiver JSON."),
    d: Optional[int] = D_OPTION,
    output: Optional[Path] = OUTPUT_OPTION,
    verbose: bool = VERBOSE_OPTION,
):
    """Adds the dual arrow of degree 2-d-r to every arrow of a half quiver."""
    config = _config("build-double", [quiver], d=d, output=output, verbose=verbose)
    with _job(config):
        half = read_quiver(quiver)
        _check_d(config, half.d)
        _emit(config, quiver_document(double_quiver(half)))


@app.command("from-ext")
def from_ext(
    table: Path = typer.Argument(..., help="Ext table JSON."),
    d: Optional[int] = D_OPTION,
    output: Optional[Path] = OUTPUT_OPTION,
    verbose: bool = VERBOSE_OPTION,
):
    """Builds the double quiver of an Ext table with the default orientation."""
    config = _config("from-ext", [table], d=d, output=output, verbose=verbose)
    with _job(config):
        ext = read_ext_table(table)
        _check_d(config, ext.d)
        _emit(config, quiver_document(double_quiver(quiver_from_ext_table(ext))))


@app.command("ext-table")
def ext_table(
    quiver: Path = typer.Argument(..., help="Double quiver JSON."),
    d: Optional[int] = D_OPTION,
    output: Optional[Path] = OUTPUT_OPTION,
    verbose: bool = VERBOSE_OPTION,
):
    """Reads dim Ext^k(E_i, E_j) back from a double quiver."""
    config = _config("ext-table", [quiver], d=d, output=output, verbose=verbose)
    with _job(config):
        qbar = read_quiver(quiver)
        _check_d(config, qbar.d)
        _emit(config, ext_table_document(ext_table_from_quiver(qbar)))


@app.command()
def check(
    quiver: Path = typer.Argument(..., help="Quiver JSON (half quivers are doubled)."),
    potential: Path = typer.Argument(..., help="Potential W in the expression grammar."),
    mode: str = typer.Option("master", "--mode", "-m", help="master, mc, ainfty or all."),
    d: Optional[int] = D_OPTION,
    truncation: int = TRUNCATION_OPTION,
    structured: bool = STRUCTURED_OPTION,
    output: Optional[Path] = OUTPUT_OPTION,
    verbose: bool = VERBOSE_OPTION,
):
    """Verifies {W,W} = 0, the Maurer-Cartan equation or the A∞ relations."""
    if mode not in CHECK_MODES:
        raise typer.BadParameter(f"mode must be one of {', '.join(CHECK_MODES)}")
    config = _config(
        "check",
        [quiver, potential],
        d=d,
        truncation=truncation,
        structured=structured,
        output=output,
        verbose=verbose,
    )
    with _job(config):
        space = _load_space(config, quiver)
        w = read_potential(potential, space)
        _require_minimal(w)
        reports = []
        if mode in ("master", "all"):
            reports.append(check_master(w))
        if mode in ("mc", "all"):
            reports.append(maurer_cartan_check(w - build_W_can(space), space))
        if mode in ("ainfty", "all"):
            pairing = Pairing(space)
            products = extract_products(w, pairing, config.truncation)
            reports.append(check_ainfty(products))
            reports.append(check_cyclicity_and_unit(products, pairing, w))
        passed = all(r.passed for r in reports)
        if config.structured:
            data = {"pass": passed, "mode": mode, "truncation": config.truncation}
            for r in reports:
                data[getattr(r, "label", None) or r.name] = r.to_dict()
            text = dump_json(data)
        else:
            parts = [render_master(r) if hasattr(r, "label") else render_check(r) for r in reports]
            text = "\n".join(parts) + "\n"
        _emit(config, text)
        if not passed:
            raise typer.Exit(code=1)


@app.command()
def lift(
    quiver: Path = typer.Argument(..., help="Quiver JSON (half quivers are doubled)."),
    w0: Path = typer.Argument(..., help="Minimal potential W_0 in x and ξ."),
    d: Optional[int] = D_OPTION,
    output: Optional[Path] = OUTPUT_OPTION,
    verbose: bool = VERBOSE_OPTION,
):
    """Writes W = W_can + W_0."""
    config = _config("lift", [quiver, w0], d=d, output=output, verbose=verbose)
    with _job(config):
        space = _load_space(config, quiver)
        _emit(config, potential_document(lift_potential(read_potential(w0, space), space)))


@app.command("restrict")
def restrict_command(
    quiver: Path = typer.Argument(..., help="Quiver JSON (half quivers are doubled)."),
    potential: Path = typer.Argument(..., help="Potential W."),
    d: Optional[int] = D_OPTION,
    output: Optional[Path] = OUTPUT_OPTION,
    verbose: bool = VERBOSE_OPTION,
):
    """Sets α, β and ξ_(2-d) to zero in W."""
    config = _config("restrict", [quiver, potential], d=d, output=output, verbose=verbose)
    with _job(config):
        space = _load_space(config, quiver)
        w = read_potential(potential, space)
        _emit(config, potential_document(restrict(w, space.ideal_generators())))


@app.command()
def gauge(
    quiver: Path = typer.Argument(..., help="Quiver JSON (half quivers are doubled)."),
    potential: Path = typer.Argument(..., help="Potential W."),
    transform: Path = typer.Argument(..., help="Automorphism JSON, or the generator h for --kind flow."),
    kind: str = typer.Option("auto", "--kind", "-k", help="auto (substitution) or flow (exp{h, ·})."),
    d: Optional[int] = D_OPTION,
    truncation: int = TRUNCATION_OPTION,
    output: Optional[Path] = OUTPUT_OPTION,
    verbose: bool = VERBOSE_OPTION,
):
    """Applies a gauge transformation to W and re-checks the master equation."""
    if kind not in GAUGE_KINDS:
        raise typer.BadParameter(f"kind must be one of {', '.join(GAUGE_KINDS)}")
    config = _config(
        "gauge", [quiver, potential, transform], d=d, truncation=truncation, output=output, verbose=verbose
    )
    with _job(config):
        space = _load_space(config, quiver)
        w = read_potential(potential, space)
        if kind == "auto":
            result = apply_automorphism(read_automorphism(transform, space), w)
        else:
            h = read_generator(transform, space)
            result = hamiltonian_flow(h, w, config.truncation)
            logging.warning(f"flow result is exact up to cyc.deg {result.precision}")
        _emit(config, potential_document(result))
        report = check_master(result)
        typer.echo(render_master(report), err=True)
        if not report.passed:
            raise typer.Exit(code=1)


@app.command()
def dgla(
    quiver: Path = typer.Argument(..., help="Quiver JSON (half quivers are doubled)."),
    window: int = WINDOW_OPTION,
    d: Optional[int] = D_OPTION,
    structured: bool = STRUCTURED_OPTION,
    output: Optional[Path] = OUTPUT_OPTION,
    verbose: bool = VERBOSE_OPTION,
):
    """Cohomology ranks of ĝ, 𝔤_can and 𝔤 at cyc.deg <= K, and the 𝔥 -> 𝔤_can probe."""
    config = _config(
        "dgla", [quiver], d=d, window=window, structured=structured, output=output, verbose=verbose
    )
    with _job(config):
        space = _load_space(config, quiver)
        table = cohomology_ranks(space, config.window)
        probe = psi_probe(space, config.window)
        if config.structured:
            text = dump_json({"cohomology": table.to_dict(), "psi": probe.to_dict()})
        else:
            text = render_cohomology(table) + "\n" + render_psi(probe) + "\n"
        _emit(config, text)
        if table.vanishing_violations or table.nonpositive_violations or not probe.passed:
            raise typer.Exit(code=1)


@app.command()
def products(
    quiver: Path = typer.Argument(..., help="Quiver JSON (half quivers are doubled)."),
    potential: Path = typer.Argument(..., help="Potential W."),
    d: Optional[int] = D_OPTION,
    truncation: int = TRUNCATION_OPTION,
    output: Optional[Path] = OUTPUT_OPTION,
    verbose: bool = VERBOSE_OPTION,
):
    """Exports the unshifted products m_n of W as JSON records."""
    config = _config(
        "products", [quiver, potential], d=d, truncation=truncation, output=output, verbose=verbose
    )
    with _job(config):
        space = _load_space(config, quiver)
        w = read_potential(potential, space)
        _require_minimal(w)
        m = extract_products(w, Pairing(space), config.truncation)
        records: List[dict] = m.to_records()
        _emit(config, dump_json({"d": space.d, "n_max": m.n_max, "products": records}))
