"""Command-line surface: classify / spec / supp / lattice / verify / report.

All science-relevant parameters are explicit flags and are echoed in the
output header; runs are deterministic byte-for-byte for a fixed config,
independent of worker count and cache state.

Exit codes: 0 success, 1 config error, 2 violated invariant or failed
verification, 3 enumeration cap exceeded.
"""

from __future__ import annotations

import csv
import io
import json
import os
import re
import sys
from dataclasses import dataclass

import click

from . import cache as cache_mod
from .category import Caps, Universe
from .closures import IsoSet, MembershipMemo
from .errors import ConfigError, EnumerationCapExceeded
from .fdmodules import FdBackend, QuiverPreset, local_algebra_443, path_algebra
from .pgroups import AbGroupBackend
from .predicates import classify_all
from .spectrum import (Spectrum, closed_sets_dot, lattice_dot, nullity_lattice,
                       verify_bijection, verify_topology)

SCHEMA = "nullspec/1"


@dataclass
class RunConfig:
    backend: str
    p: int
    bound: int
    enum_bound: int
    fmt: str
    output: str | None
    cache_dir: str | None
    workers: int
    caps: Caps

    def header(self, command: str) -> dict:
        return {
            "schema": SCHEMA,
            "command": command,
            "config": {
                "backend": self.backend,
                "p": self.p,
                "bound": self.bound,
                "enum_bound": self.enum_bound,
                "caps": {
                    "subspace_enum": self.caps.subspace_enum,
                    "hom_scan": self.caps.hom_scan,
                    "group_order": self.caps.group_order,
                    "universe_candidates": self.caps.universe_candidates,
                },
            },
        }


def make_backend(cfg: RunConfig):
    spec = cfg.backend
    if spec.startswith("quiver:"):
        name = spec.split(":", 1)[1]
        if name.startswith("@"):
            path = name[1:]
            try:
                with open(path, "r", encoding="utf-8") as fh:
                    preset = QuiverPreset.from_text(fh.read(), name=os.path.basename(path))
            except OSError as exc:
                raise ConfigError(f"cannot read quiver config {path}: {exc}")
        else:
            m = re.fullmatch(r"A(\d+)", name)
            if not m:
                raise ConfigError(f"unknown quiver preset {name!r} (use A1..A9 or @file)")
            preset = QuiverPreset.linear(int(m.group(1)))
        return FdBackend(path_algebra(preset, cfg.p), cfg.caps)
    if spec == "local443":
        return FdBackend(local_algebra_443(cfg.p), cfg.caps)
    if spec == "abgrp":
        return AbGroupBackend(cfg.p, cfg.caps)
    raise ConfigError(f"unknown backend {spec!r} (quiver:<preset>, local443, abgrp)")


class RunContext:
    """Backend, universes, spectrum and the persistent memo for one run."""

    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self.backend = make_backend(cfg)
        self.memo = MembershipMemo()
        if cfg.cache_dir:
            self.memo.ext.update(
                cache_mod.load_membership(cfg.cache_dir, self.backend.fingerprint()))
        self.universe = self.backend.generate_universe(cfg.bound)
        self._enum_universe = None
        self._spectrum = None

    @property
    def enum_universe(self) -> Universe:
        if self._enum_universe is None:
            if self.cfg.enum_bound == self.cfg.bound:
                self._enum_universe = self.universe
            else:
                self._enum_universe = self.backend.generate_universe(self.cfg.enum_bound)
        return self._enum_universe

    @property
    def spectrum(self) -> Spectrum:
        if self._spectrum is None:
            self._spectrum = Spectrum(self.universe, self.memo)
            self._precompute_supports()
        return self._spectrum

    def _precompute_supports(self):
        objs = list(self.universe.objects)
        if self.cfg.workers > 1:
            from concurrent.futures import ThreadPoolExecutor
            with ThreadPoolExecutor(max_workers=self.cfg.workers) as pool:
                list(pool.map(self._spectrum.supp, objs))
        else:
            for M in objs:
                self._spectrum.supp(M)

    def finish(self):
        if self.cfg.cache_dir:
            cache_mod.save_membership(self.cfg.cache_dir, self.backend.fingerprint(),
                                      self.memo.ext)


def emit(cfg: RunConfig, payload: str):
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        click.echo(payload, nl=False)


def to_json(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def classify_csv(reports) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["object", "length", "simple", "indecomposable", "uniform",
                     "premonoform", "monoform"])
    for r in reports:
        writer.writerow([r.object.name, r.object.length, r.simple, r.indecomposable,
                         r.uniform, r.premonoform, r.monoform])
    return buf.getvalue()


def _common_options(fn):
    opts = [
        click.option("--backend", required=True,
                     help="quiver:<An|@file>, local443, or abgrp"),
        click.option("--p", "p", type=int, default=2, show_default=True,
                     help="prime modulus"),
        click.option("--bound", type=int, default=2, show_default=True,
                     help="verification length bound"),
        click.option("--enum-bound", type=int, default=None,
                     help="enumeration bound for extension checks (default: 2*bound)"),
        click.option("--format", "fmt", default=None,
                     type=click.Choice(["json", "text", "csv", "dot"]),
                     help="output format (default depends on the command)"),
        click.option("--output", "-o", default=None, help="write output to a file"),
        click.option("--cache-dir", default=None,
                     help="memo cache directory (env NULLSPEC_CACHE_DIR)"),
        click.option("--no-cache", is_flag=True, default=False,
                     help="disable the persistent cache"),
        click.option("--workers", type=int, default=1, show_default=True,
                     help="worker count; never changes results"),
        click.option("--cap-homs", type=int, default=None, help="hom-scan cap"),
        click.option("--cap-subspaces", type=int, default=None, help="subspace enumeration cap"),
        click.option("--cap-group-order", type=int, default=None, help="group order cap"),
        click.option("--cap-candidates", type=int, default=None, help="universe candidate cap"),
    ]
    for opt in reversed(opts):
        fn = opt(fn)
    return fn


def _build_config(backend, p, bound, enum_bound, fmt, output, cache_dir, no_cache,
                  workers, cap_homs, cap_subspaces, cap_group_order, cap_candidates,
                  default_fmt: str) -> RunConfig:
    if p < 2:
        raise ConfigError("p must be a prime >= 2")
    if bound < 1:
        raise ConfigError("bound must be >= 1")
    if workers < 1:
        raise ConfigError("workers must be >= 1")
    caps = Caps(
        subspace_enum=cap_subspaces or Caps.subspace_enum,
        hom_scan=cap_homs or Caps.hom_scan,
        group_order=cap_group_order or Caps.group_order,
        universe_candidates=cap_candidates or Caps.universe_candidates,
    )
    if cache_dir is None:
        cache_dir = os.environ.get("NULLSPEC_CACHE_DIR")
    if no_cache:
        cache_dir = None
    return RunConfig(
        backend=backend, p=p, bound=bound,
        enum_bound=enum_bound if enum_bound is not None else 2 * bound,
        fmt=fmt or default_fmt, output=output, cache_dir=cache_dir,
        workers=workers, caps=caps)


@click.group()
def cli():
    """Exact spectrum/nullity-class engine for small abelian categories."""


@cli.command("classify")
@_common_options
def classify_cmd(**kw):
    """Predicate flags for every object of the universe."""
    cfg = _build_config(**kw, default_fmt="json")
    ctx = RunContext(cfg)
    reports = classify_all(ctx.universe, workers=cfg.workers, strict=False)
    violations = [
        {"object": r.object.name, "violation": v}
        for r in reports for v in r.hierarchy_violations()
    ]
    if cfg.fmt == "csv":
        out = classify_csv(reports)
    elif cfg.fmt == "text":
        lines = [f"# classify backend={cfg.backend} p={cfg.p} bound={cfg.bound}"]
        for r in reports:
            flags = [name for name, val in [
                ("simple", r.simple), ("indecomposable", r.indecomposable),
                ("uniform", r.uniform), ("premonoform", r.premonoform),
                ("monoform", r.monoform)] if val]
            lines.append(f"{r.object.name}: " + (", ".join(flags) if flags else "-"))
        out = "\n".join(lines) + "\n"
    else:
        doc = cfg.header("classify")
        doc["objects"] = [r.to_json() for r in reports]
        doc["violations"] = violations
        out = to_json(doc)
    emit(cfg, out)
    ctx.finish()
    if violations:
        click.echo(json.dumps({"violations": violations}, sort_keys=True), err=True)
        return 2
    return 0


@cli.command("spec")
@_common_options
def spec_cmd(**kw):
    """Spectrum points (premonoform classes) of the universe."""
    cfg = _build_config(**kw, default_fmt="json")
    ctx = RunContext(cfg)
    spec = ctx.spectrum
    points = [{
        "id": pt.class_id,
        "representatives": [o.name for o in pt.representatives],
        "support": sorted(spec.supp(pt.canonical)),
    } for pt in spec.points]
    if cfg.fmt == "text":
        lines = [f"# spec backend={cfg.backend} p={cfg.p} bound={cfg.bound}",
                 f"{len(points)} spectrum point(s)"]
        for pt in points:
            lines.append(f"[{pt['id']}] reps: {', '.join(pt['representatives'])}; "
                         f"supp: {{{', '.join(pt['support'])}}}")
        out = "\n".join(lines) + "\n"
    else:
        doc = cfg.header("spec")
        doc["points"] = points
        out = to_json(doc)
    emit(cfg, out)
    ctx.finish()
    return 0


def _parse_object(ctx: RunContext, spec_str: str):
    be = ctx.backend
    if isinstance(be, AbGroupBackend):
        exps = [int(x) for x in spec_str.split(",") if x.strip()]
        return be.group(exps)
    if isinstance(be, FdBackend) and be.algebra.kind[0] == "path":
        total = be.zero_object()
        for token in spec_str.split("+"):
            m = re.fullmatch(r"(\d+)-(\d+)", token.strip())
            if not m:
                raise ConfigError(f"bad interval token {token!r} (use i-j, joined by +)")
            total = be.direct_sum(total, be.interval_module(int(m.group(1)), int(m.group(2))))
        return total
    if isinstance(be, FdBackend) and be.algebra.kind[0] == "local443":
        if spec_str == "R":
            return be.regular_module()
        if spec_str == "S":
            return be.simple_module()
        raise ConfigError("local443 objects: R or S")
    raise ConfigError("--object is not supported for this backend")


@cli.command("supp")
@_common_options
@click.option("--object", "object_spec", default=None,
              help="single object (abgrp: exponent list '2,1'; quiver: intervals '1-2+2-2')")
def supp_cmd(object_spec, **kw):
    """Support of every universe object (or of one given object)."""
    cfg = _build_config(**kw, default_fmt="json")
    ctx = RunContext(cfg)
    spec = ctx.spectrum
    if object_spec:
        targets = [_parse_object(ctx, object_spec)]
    else:
        targets = list(ctx.universe.objects)
    rows = [{"object": M.name, "length": M.length, "supp": sorted(spec.supp(M))}
            for M in targets]
    if cfg.fmt == "text":
        lines = [f"# supp backend={cfg.backend} p={cfg.p} bound={cfg.bound}"]
        lines += [f"supp {r['object']} = {{{', '.join(r['supp'])}}}" for r in rows]
        out = "\n".join(lines) + "\n"
    elif cfg.fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["object", "length", "supp"])
        for r in rows:
            writer.writerow([r["object"], r["length"], " ".join(r["supp"])])
        out = buf.getvalue()
    else:
        doc = cfg.header("supp")
        doc["supports"] = rows
        out = to_json(doc)
    emit(cfg, out)
    ctx.finish()
    return 0


def _lattice_payload(ctx: RunContext):
    lat = nullity_lattice(ctx.spectrum, ctx.enum_universe)
    verdict = ("distributive" if lat.distributive
               else "non-distributive: pentagon found")
    return lat, verdict


@cli.command("lattice")
@_common_options
@click.option("--fig", default=None, help="also render the Hasse diagram to this image file")
def lattice_cmd(fig, **kw):
    """Lattice of nullity classes: DOT digraph plus distributivity verdict."""
    cfg = _build_config(**kw, default_fmt="dot")
    ctx = RunContext(cfg)
    lat, verdict = _lattice_payload(ctx)
    if cfg.fmt == "json":
        doc = cfg.header("lattice")
        doc["nodes"] = [{"label": n.label, "support": sorted(n.support),
                         "trace_size": len(n.trace)} for n in lat.nodes]
        doc["covers"] = lat.covers()
        doc["distributive"] = lat.distributive
        doc["pentagon"] = list(lat.pentagon) if lat.pentagon else None
        doc["verdict"] = verdict
        out = to_json(doc)
    elif cfg.fmt == "text":
        out = (f"{len(lat.nodes)} nullity classes; {verdict}\n"
               + "\n".join(f"  {n.label} supp={{{','.join(sorted(n.support))}}}"
                           for n in lat.nodes) + "\n")
    else:
        out = f"// nullity-class lattice: {len(lat.nodes)} nodes; {verdict}\n" + lattice_dot(lat)
    if fig:
        from .plots import save_lattice_figure
        save_lattice_figure(lat, fig)
    emit(cfg, out)
    ctx.finish()
    return 0


@cli.command("verify")
@_common_options
def verify_cmd(**kw):
    """Run the topology and classification-bijection verification suites."""
    cfg = _build_config(**kw, default_fmt="text")
    ctx = RunContext(cfg)
    spec = ctx.spectrum
    topo = verify_topology(spec, ctx.enum_universe)
    bij = verify_bijection(spec, ctx.enum_universe)
    violations = topo["violations"] + bij["violations"]
    if cfg.fmt == "json":
        doc = cfg.header("verify")
        doc["topology"] = {k: v for k, v in topo.items()}
        doc["bijection"] = {k: v for k, v in bij.items() if k not in ("traces", "spec_sets")}
        doc["ok"] = not violations
        out = to_json(doc)
    else:
        order = "order preserved" if not bij["violations"] else "ORDER VIOLATED"
        lines = [
            f"# verify backend={cfg.backend} p={cfg.p} bound={cfg.bound} "
            f"enum_bound={cfg.enum_bound}",
            f"spectrum: {len(spec.points)} point(s)",
            f"topology: {topo['closed_count']} closed subsets, "
            f"{len(topo['violations'])} violation(s)",
            f"{bij['classes']} nullity classes <-> {bij['subsets']} "
            f"closed&ext-closed subsets; {order}",
        ]
        if violations:
            lines += [f"VIOLATION: {v}" for v in violations]
        out = "\n".join(lines) + "\n"
    emit(cfg, out)
    ctx.finish()
    if violations:
        if cfg.fmt != "json":
            click.echo(json.dumps({"violations": violations}, sort_keys=True), err=True)
        return 2
    return 0


@cli.command("report")
@_common_options
@click.option("--out-dir", required=True, help="directory for the report bundle")
def report_cmd(out_dir, **kw):
    """Full report bundle: CSV tables, JSON, DOT digraphs and PNG figures."""
    cfg = _build_config(**kw, default_fmt="json")
    ctx = RunContext(cfg)
    os.makedirs(out_dir, exist_ok=True)
    spec = ctx.spectrum

    reports = classify_all(ctx.universe, workers=cfg.workers, strict=False)
    with open(os.path.join(out_dir, "classify.csv"), "w", encoding="utf-8") as fh:
        fh.write(classify_csv(reports))

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["point", "representatives", "support"])
    for pt in spec.points:
        writer.writerow([pt.class_id, " ".join(o.name for o in pt.representatives),
                         " ".join(sorted(spec.supp(pt.canonical)))])
    with open(os.path.join(out_dir, "spectrum.csv"), "w", encoding="utf-8") as fh:
        fh.write(buf.getvalue())

    topo = verify_topology(spec, ctx.enum_universe)
    bij = verify_bijection(spec, ctx.enum_universe)
    lat, verdict = _lattice_payload(ctx)

    doc = cfg.header("report")
    doc["objects"] = [r.to_json() for r in reports]
    doc["violations"] = [{"object": r.object.name, "violation": v}
                         for r in reports for v in r.hierarchy_violations()]
    doc["topology"] = topo
    doc["bijection"] = {k: v for k, v in bij.items() if k not in ("traces", "spec_sets")}
    doc["lattice"] = {"nodes": [n.label for n in lat.nodes], "verdict": verdict}
    with open(os.path.join(out_dir, "report.json"), "w", encoding="utf-8") as fh:
        fh.write(to_json(doc))

    with open(os.path.join(out_dir, "lattice.dot"), "w", encoding="utf-8") as fh:
        fh.write(lattice_dot(lat))
    closed = spec.closed_subsets()
    with open(os.path.join(out_dir, "closed_sets.dot"), "w", encoding="utf-8") as fh:
        fh.write(closed_sets_dot(spec, closed))

    from .plots import save_closed_sets_figure, save_lattice_figure
    save_lattice_figure(lat, os.path.join(out_dir, "lattice.png"))
    save_closed_sets_figure(closed, os.path.join(out_dir, "closed_sets.png"))

    violations = doc["violations"] + topo["violations"] + bij["violations"]
    summary = [
        f"backend={cfg.backend} p={cfg.p} bound={cfg.bound} enum_bound={cfg.enum_bound}",
        f"universe: {len(ctx.universe.objects)} objects, "
        f"{len(ctx.universe.indecomposables)} indecomposable",
        f"spectrum: {len(spec.points)} point(s): "
        + ", ".join(pt.class_id for pt in spec.points),
        f"closed subsets: {topo['closed_count']}; "
        f"closed & extension-closed: {bij['subsets']}",
        f"nullity classes (window): {bij['classes']}; lattice {verdict}",
        f"violations: {len(violations)}",
    ]
    with open(os.path.join(out_dir, "summary.txt"), "w", encoding="utf-8") as fh:
        fh.write("\n".join(summary) + "\n")
    click.echo("\n".join(summary))
    ctx.finish()
    return 2 if violations else 0


def run(argv=None) -> int:
    """Entry point with the exit-code contract."""
    try:
        rv = cli.main(args=argv, standalone_mode=False)
        return rv if isinstance(rv, int) else 0
    except ConfigError as exc:
        click.echo(f"config error: {exc}", err=True)
        return 1
    except click.ClickException as exc:
        exc.show()
        return 1
    except click.Abort:
        return 1
    except EnumerationCapExceeded as exc:
        click.echo(f"enumeration cap exceeded: {exc}", err=True)
        return 3


if __name__ == "__main__":
    sys.exit(run())
