"""Command-line front end: ``gen``, ``verify``, ``export``, ``elements`` and ``cache``."""
from __future__ import annotations

import csv
import json
import os
import shutil
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional

import click

from . import __version__, appendix, coxeter, eulerian, stability
from .eulerian import FAMILY_CODES, FamilySpec
from .multipoly import MPoly
from .report import passed
from .suites import DEFAULT_BOUNDS, SUITES, SuiteConfig, run_suite

CACHE_ENV = "STABLE_EULERIAN_CACHE_DIR"
NO_RECURRENCE = ("D", "DStar")
NO_BRUTE_FORCE = ("AffB", "DviaStembridge")


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "stable-eulerian"


@dataclass
class RunConfig:
    family: str
    n: int
    r: int = 1
    q: Optional[str] = None
    method: str = "rec"
    fmt: str = "text"
    jobs: int = 1
    cache_dir: Optional[Path] = None

    def spec(self) -> FamilySpec:
        family, r = self.family, self.r
        if ":" in family:
            family, _, rtext = family.partition(":")
            r = int(rtext)
        if family not in FAMILY_CODES:
            raise ValueError(f"unknown family code {family!r}; choose from {', '.join(FAMILY_CODES)}")
        return FamilySpec(FAMILY_CODES[family], self.n, r, eulerian.parse_qmode(self.q))

    def cache_key(self, spec: FamilySpec) -> str:
        q = "none" if spec.q is None else str(spec.q).replace("/", "_")
        return f"v{__version__}/{spec.family}-n{spec.n}-r{spec.r}-q{q}-{self.method}.json"


def compute(spec: FamilySpec, method: str, jobs: int = 1) -> MPoly:
    """Build a family by recurrence, brute force, or both (which must agree)."""
    if method in ("rec", "both") and spec.family in NO_RECURRENCE:
        raise ValueError(f"family {spec.family} has no recurrence; use --method brute")
    if method in ("brute", "both") and spec.family in NO_BRUTE_FORCE:
        raise ValueError(f"family {spec.family} has no brute-force model; use --method rec")
    if method == "rec":
        return eulerian.recurrence(spec)
    if method == "brute":
        return eulerian.brute_force(spec, jobs)
    rec = eulerian.recurrence(spec)
    brute = eulerian.brute_force(spec, jobs)
    if rec != brute:
        raise ArithmeticError("recurrence and brute force disagree")
    return rec


def generate(cfg: RunConfig) -> MPoly:
    spec = cfg.spec()
    path = cfg.cache_dir / cfg.cache_key(spec) if cfg.cache_dir else None
    if path is not None and path.exists():
        return MPoly.from_json(path.read_text())
    poly = compute(spec, cfg.method, cfg.jobs)
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(poly.to_json())
        tmp.replace(path)
    return poly


@click.group()
@click.version_option(__version__, prog_name="stable-eulerian")
def cli():
    """Multivariate Eulerian polynomials: generate, verify, export."""


@cli.command()
@click.option("--family", required=True,
              help="A, B, D, Dstar, G:r, affA, affC, affB or Dstem.")
@click.option("--n", "n", type=int, required=True, help="Rank.")
@click.option("--r", "r", type=int, default=1, show_default=True, help="Colours (family G).")
@click.option("--q", "q", default=None, help="sym, multisym or a rational value (default q = 1).")
@click.option("--method", type=click.Choice(["rec", "brute", "both"]), default="rec", show_default=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True)
@click.option("--jobs", type=int, default=1, show_default=True, help="Worker processes for brute force.")
@click.option("--cache-dir", type=click.Path(file_okay=False, path_type=Path), default=None,
              help=f"Results cache (default ${CACHE_ENV} or ~/.cache/stable-eulerian).")
@click.option("--no-cache", is_flag=True, help="Neither read nor write the cache.")
def gen(family, n, r, q, method, fmt, jobs, cache_dir, no_cache):
    """Print one polynomial in canonical text or JSON."""
    cfg = RunConfig(family, n, r, q, method, fmt, jobs,
                    None if no_cache else (cache_dir or default_cache_dir()))
    try:
        poly = generate(cfg)
    except ArithmeticError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    if method == "both":
        click.echo("recurrence = brute force: confirmed", err=True)
    click.echo(poly.to_json() if fmt == "json" else poly.to_text())


def _parse_bounds(values) -> dict:
    out = {}
    for item in values:
        name, sep, num = item.partition("=")
        if not sep or name not in DEFAULT_BOUNDS:
            raise click.BadParameter(f"{item!r}; known bounds: {', '.join(sorted(DEFAULT_BOUNDS))}",
                                     param_hint="--bound")
        try:
            out[name] = int(num)
        except ValueError:
            raise click.BadParameter(f"{item!r} needs an integer", param_hint="--bound")
    return out


@cli.command()
@click.argument("suite", type=click.Choice(list(SUITES) + ["all"]))
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--budget", type=int, default=stability.DEFAULT_BUDGET, show_default=True,
              help="Evaluation budget for each stability search.")
@click.option("--jobs", type=int, default=1, show_default=True)
@click.option("--bound", "bounds", multiple=True, metavar="NAME=N", help="Override a default bound.")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None,
              help="Write the JSON report here.")
def verify(suite, seed, budget, jobs, bounds, fmt, out):
    """Run a verification suite; exit 1 if an asserted check fails."""
    cfg = SuiteConfig(seed, budget, jobs, _parse_bounds(bounds))
    start = time.perf_counter()
    entries = run_suite(suite, cfg)
    elapsed = time.perf_counter() - start
    report = [e.to_dict() for e in entries]
    if fmt == "json":
        click.echo(json.dumps(report, indent=2))
    else:
        for e in entries:
            click.echo(e.line())
        failed = sum(e.failed for e in entries)
        click.echo(f"{len(entries)} checks, {failed} asserted failures, {elapsed:.1f}s")
    if out is not None:
        _write(out, json.dumps(report, indent=2) + "\n")
    sys.exit(0 if passed(entries) else 1)


def _write(path: Path, text: str) -> None:
    try:
        path.write_text(text)
    except OSError as exc:
        raise click.FileError(str(path), hint=exc.strerror or str(exc))


def _write_rows(path: Path, rows: List[dict]) -> None:
    if path.suffix == ".json":
        _write(path, json.dumps(rows, indent=2) + "\n")
        return
    try:
        with open(path, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=list(rows[0]))
            w.writeheader()
            w.writerows(rows)
    except OSError as exc:
        raise click.FileError(str(path), hint=exc.strerror or str(exc))


@cli.command()
@click.argument("what", type=click.Choice(["table1", "d3star", "appendix"]))
@click.argument("path", type=click.Path(dir_okay=False, path_type=Path))
def export(what, path):
    """Write Table 1 rows, D*_3, or the appendix set (CSV, or JSON for *.json)."""
    if what == "table1":
        rows = appendix.table1_rows()
    elif what == "appendix":
        rows = [{k: (json.dumps(v) if k == "json" and path.suffix != ".json" else v)
                 for k, v in row.items()} for row in appendix.appendix_rows()]
    else:
        p = eulerian.brute_force(FamilySpec("DStar", 3))
        w = stability.d3star_witness()
        rows = [{"name": "D*_3", "polynomial": p.to_text(), "terms": len(p),
                 "json": p.to_dict() if path.suffix == ".json" else p.to_json(),
                 "witness": w.to_dict() if path.suffix == ".json" else json.dumps(w.to_dict())}]
    _write_rows(path, rows)
    click.echo(f"wrote {len(rows)} rows to {path}")


_ELEMENT_STATS = {
    "A": (1, coxeter.stats_a), "B": (2, coxeter.stats_colored), "affA": (1, coxeter.affine_stats_a),
    "affC": (2, coxeter.affine_stats_c), "D": (2, coxeter.stats_colored),
}


@cli.command()
@click.option("--family", required=True, type=click.Choice(list(_ELEMENT_STATS) + ["G"]))
@click.option("--n", "n", type=int, required=True)
@click.option("--r", "r", type=int, default=3, show_default=True, help="Colours (family G).")
@click.argument("path", type=click.Path(dir_okay=False, path_type=Path))
def elements(family, n, r, path):
    """Write every group element with its descent/ascent tops as CSV."""
    r, stats = (r, coxeter.stats_colored) if family == "G" else _ELEMENT_STATS[family]
    if family == "D":
        elems = coxeter.enumerate_d(n)
    elif family == "affA":
        elems = coxeter.enumerate_group(n + 1, 1)
    else:
        elems = coxeter.enumerate_group(n, r)
    try:
        count = coxeter.export_csv(elems, stats, path)
    except OSError as exc:
        raise click.FileError(str(path), hint=exc.strerror or str(exc))
    except ValueError as exc:
        raise click.UsageError(str(exc))
    click.echo(f"wrote {count} elements to {path}")


@cli.group()
def cache():
    """Inspect or clear the results cache."""


@cache.command("info")
@click.option("--cache-dir", type=click.Path(file_okay=False, path_type=Path), default=None)
def cache_info(cache_dir):
    root = cache_dir or default_cache_dir()
    files = sorted(root.rglob("*.json")) if root.exists() else []
    click.echo(f"{root}: {len(files)} entries, {sum(f.stat().st_size for f in files)} bytes")


@cache.command("clear")
@click.option("--cache-dir", type=click.Path(file_okay=False, path_type=Path), default=None)
def cache_clear(cache_dir):
    root = cache_dir or default_cache_dir()
    if root.exists():
        shutil.rmtree(root)
    click.echo(f"cleared {root}")


def main() -> None:  # pragma: no cover
    cli()


if __name__ == "__main__":  # pragma: no cover
    main()
