"""``arqlab`` command line.

Exit codes: 0 success or short-cycle-free, 2 parse or parameter error,
3 has a short cycle, 4 budget exceeded, 5 internal inconsistency.
"""
from __future__ import annotations

import functools
import json
import sys

import click

from . import analysis as an
from . import artheory as ar
from . import modcat as mc
from . import zoo
from .errors import ArqlabError, BudgetExceeded, CharacteristicTooSmall, InternalInconsistency
from .exactla import Field
from .textformat import parse_algebra, render_algebra

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_SHORT_CYCLE = 3
EXIT_BUDGET = 4
EXIT_INTERNAL = 5


def _fail(code: int, msg: str):
    click.echo(f"arqlab: {msg}", err=True)
    sys.exit(code)


def _guarded(fn):
    """Map library exceptions onto the exit-code contract."""
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except BudgetExceeded as exc:
            _fail(EXIT_BUDGET, f"budget exceeded: {exc}")
        except InternalInconsistency as exc:
            _fail(EXIT_INTERNAL, f"internal inconsistency: {exc}")
        except (ArqlabError, ValueError) as exc:
            _fail(EXIT_USAGE, f"{type(exc).__name__}: {exc}")
        except OSError as exc:
            _fail(EXIT_USAGE, str(exc))
        except (ArithmeticError, LookupError, TypeError, AssertionError) as exc:
            _fail(EXIT_INTERNAL, f"unexpected {type(exc).__name__}: {exc}")
    return wrapper


def _field_option(value):
    if value is None:
        return None
    try:
        return Field.parse(value)
    except ValueError as exc:
        raise click.BadParameter(str(exc))


def _load(path: str, field: Field | None):
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    a = parse_algebra(text, field=field)
    p = a.field.p
    if p and p <= a.dim:
        raise CharacteristicTooSmall(f"characteristic {p} must exceed dim A = {a.dim}")
    return a


def analysis_options(fn):
    fn = click.option("--field", "field", default=None, callback=lambda c, p, v: _field_option(v),
                      help="Override the field: q or gf:p.")(fn)
    fn = click.option("--budget-dim", default=ar.DEFAULT_DIM_BUDGET, show_default=True,
                      type=click.IntRange(min=1), help="Largest module dimension while knitting.")(fn)
    fn = click.option("--budget-nodes", default=ar.DEFAULT_NODE_BUDGET, show_default=True,
                      type=click.IntRange(min=1), help="Largest number of indecomposables.")(fn)
    return fn


@click.group()
@click.version_option(package_name="artifact")
def main():
    """Selfinjective algebras, AR quivers and short cycles."""


# ---------------------------------------------------------------------------
# make
# ---------------------------------------------------------------------------

@main.group()
def make():
    """Build a zoo algebra and print it in the text format."""


def _emit(a):
    click.echo(render_algebra(a), nl=False)


@make.command("nakayama")
@click.argument("m", type=click.IntRange(min=1))
@click.argument("ell", type=click.IntRange(min=2))
@click.option("--field", default=None, callback=lambda c, p, v: _field_option(v))
@_guarded
def make_nakayama(m, ell, field):
    """Selfinjective Nakayama algebra N(M, ELL): M-cycle modulo paths of length ELL."""
    _emit(zoo.nakayama_selfinjective(m, ell, field or Field(0)))


@make.command("linear")
@click.argument("n", type=click.IntRange(min=1))
@click.option("--field", default=None, callback=lambda c, p, v: _field_option(v))
@_guarded
def make_linear(n, field):
    """Path algebra of the linearly oriented quiver of type A_N."""
    _emit(zoo.hereditary_nakayama(n, field or Field(0)))


@make.command("trivext")
@click.argument("path")
@click.argument("r", type=click.IntRange(min=1))
@_guarded
def make_trivext(path, r):
    """r-fold trivial extension T(B)^(R) of the algebra in PATH."""
    b = _load(path, None)
    _emit(zoo.trivial_extension_r(b, r))


@make.command("brauer")
@click.argument("shape", type=click.Choice(["star", "line"]))
@click.argument("edges", type=click.IntRange(min=1))
@click.argument("multiplicity", type=click.IntRange(min=1), default=1)
@click.option("--exceptional", type=click.IntRange(min=0), default=0,
              help="Exceptional vertex of a line (0-based).")
@_guarded
def make_brauer(shape, edges, multiplicity, exceptional):
    """Brauer tree algebra of a star or a line with EDGES edges."""
    if shape == "star":
        t = zoo.BrauerTree.star(edges, multiplicity)
    else:
        if exceptional > edges:
            raise ValueError("exceptional vertex out of range")
        t = zoo.BrauerTree.line(edges, multiplicity, exceptional)
    _emit(zoo.brauer_tree_algebra(t))


@make.command("reflect")
@click.argument("path")
@click.argument("vertex", type=click.IntRange(min=1))
@_guarded
def make_reflect(path, vertex):
    """Reflection of the triangular algebra in PATH at the sink VERTEX (1-based)."""
    b = _load(path, None)
    if vertex > b.n:
        raise ValueError(f"vertex {vertex} out of range")
    _emit(zoo.reflection(b, vertex - 1))


@make.command("opext")
@click.argument("path")
@click.argument("kind", type=click.Choice(["simple", "projective", "injective"]))
@click.argument("vertex", type=click.IntRange(min=1))
@_guarded
def make_opext(path, kind, vertex):
    """One-point extension of PATH by the KIND module at VERTEX (1-based)."""
    b = _load(path, None)
    if vertex > b.n:
        raise ValueError(f"vertex {vertex} out of range")
    _emit(zoo.one_point_extension(b, mc.standard_module(b, kind, vertex - 1)))


# ---------------------------------------------------------------------------
# analyses
# ---------------------------------------------------------------------------

def _dims(m) -> str:
    return "".join(map(str, m.dims)) if max(m.dims, default=0) < 10 else ",".join(map(str, m.dims))


@main.command()
@click.argument("path")
@analysis_options
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
@_guarded
def indec(path, budget_nodes, budget_dim, field, fmt):
    """List the indecomposable modules, one per line."""
    a = _load(path, field)
    g = ar.knit(a, budget_nodes, budget_dim)
    if fmt == "json":
        click.echo(json.dumps(g.to_json()["nodes"], indent=2))
        return
    for k, m in enumerate(g.nodes):
        flags = ("P" if g.projective[k] else "") + ("I" if g.injective[k] else "")
        click.echo(f"{g.labels[k]}\t{_dims(m)}\t{flags}".rstrip())


@main.command("ar-quiver")
@click.argument("path")
@analysis_options
@click.option("--format", "fmt", type=click.Choice(["text", "json", "dot"]), default="text")
@_guarded
def ar_quiver(path, budget_nodes, budget_dim, field, fmt):
    """Knit the Auslander-Reiten quiver."""
    a = _load(path, field)
    g = ar.knit(a, budget_nodes, budget_dim)
    if fmt == "json":
        click.echo(ar.ar_json(g))
    elif fmt == "dot":
        click.echo(g.to_dot(), nl=False)
    else:
        click.echo(f"{len(g.nodes)} indecomposables, {sum(g.projective)} projective")
        for (i, j), c in sorted(g.arrows.items()):
            mult = f" x{c}" if c > 1 else ""
            click.echo(f"{g.labels[i]} -> {g.labels[j]}{mult}")
        for k, t in sorted(g.tau.items()):
            click.echo(f"tau {g.labels[k]} = {g.labels[t]}")
        try:
            click.echo(f"type {ar.dynkin_type_of(g)}")
        except ArqlabError:
            pass


def _verdict_exit(cert):
    if cert.verdict == an.HAS_SHORT_CYCLE:
        sys.exit(EXIT_SHORT_CYCLE)


@main.command("short-cycles")
@click.argument("path")
@analysis_options
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
@click.option("--all-witnesses", is_flag=True, help="Report every pair and the Hom table.")
@_guarded
def short_cycles_cmd(path, budget_nodes, budget_dim, field, fmt, all_witnesses):
    """Search mod A for a short cycle X -> Y -> X (exit 3 if one exists)."""
    a = _load(path, field)
    g = ar.knit(a, budget_nodes, budget_dim)
    cert = an.short_cycles(a, g, all_witnesses=all_witnesses)
    if fmt == "json":
        click.echo(cert.to_json())
    else:
        click.echo(cert.render(), nl=False)
        for x, y in cert.extra.get("witnesses", [])[1:]:
            click.echo(f"also: {x} -> {y} -> {x}")
    _verdict_exit(cert)


@main.command()
@click.argument("path")
@analysis_options
@click.option("--mode", type=click.Choice(["all", "first", "from-projective"]), default="all")
@click.option("--projective", type=click.IntRange(min=1), default=None,
              help="Vertex i of P(i) for --mode from-projective.")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
@_guarded
def slices(path, budget_nodes, budget_dim, field, mode, projective, fmt):
    """Stable slices with their semiregular and double tau-rigid flags."""
    a = _load(path, field)
    g = ar.knit(a, budget_nodes, budget_dim)
    if mode == "from-projective":
        if projective is None or projective > a.n:
            raise ValueError("--mode from-projective needs --projective VERTEX")
        node = g.index_of(mc.projective(a, projective - 1))
        found = an.stable_slices(g, "from_projective", node)
    else:
        found = an.stable_slices(g, "enumerate_all" if mode == "all" else "first")
    table = an.HomTable(g)
    rows = []
    for s in found:
        semi, rigid = an.slice_props(g, s, table)
        rows.append({"slice": s.labels(g), "semiregular": semi, "double_tau_rigid": rigid})
    if fmt == "json":
        click.echo(json.dumps(rows, indent=2))
        return
    for r in rows:
        click.echo(", ".join(r["slice"]) + f"\tsemiregular={r['semiregular']}"
                   f"\tdouble_tau_rigid={r['double_tau_rigid']}")


@main.command("theorem-check")
@click.argument("path")
@analysis_options
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="json")
@_guarded
def theorem_check_cmd(path, budget_nodes, budget_dim, field, fmt):
    """Short-cycle verdict with the certificate chain (exit 3 if a short cycle exists)."""
    a = _load(path, field)
    cert = an.theorem_check(a, budget_nodes, budget_dim)
    if fmt == "json":
        click.echo(cert.to_json())
    else:
        click.echo(cert.render(), nl=False)
    _verdict_exit(cert)


@main.command()
@click.argument("fmt", type=click.Choice(["dot", "json"]))
@click.argument("path")
@analysis_options
@click.option("--what", type=click.Choice(["ar-quiver", "certificate", "schema"]), default="ar-quiver")
@_guarded
def export(fmt, path, budget_nodes, budget_dim, field, what):
    """Render the AR quiver (dot or json), the certificate or its schema (json)."""
    if what == "schema":
        click.echo(json.dumps(an.CERTIFICATE_SCHEMA, indent=2, sort_keys=True))
        return
    a = _load(path, field)
    if what == "certificate":
        if fmt != "json":
            raise ValueError("certificates are exported as json")
        click.echo(an.theorem_check(a, budget_nodes, budget_dim).to_json())
        return
    g = ar.knit(a, budget_nodes, budget_dim)
    click.echo(g.to_dot() if fmt == "dot" else ar.ar_json(g), nl=fmt == "json")


if __name__ == "__main__":
    main()
