"""Batch command line front end.

Every command writes a deterministic report named by the command and a digest
of its parameters. Exit codes: 0 all checks held, 1 a check failed,
2 invalid parameters, 3 a resource cap was hit, 4 unknown command.
"""

from __future__ import annotations

import hashlib
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import click

from . import __version__

EXIT_OK, EXIT_FAIL, EXIT_PARAMS, EXIT_CAP, EXIT_UNKNOWN = 0, 1, 2, 3, 4
OUT_ENV = "MOPROPS_OUT"
DEFAULT_CAPS = {"max_basis": 10**6, "max_entries": 10**7, "time": None}


def q(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------- reports


@dataclass
class Report:
    command: str
    params: dict
    caps: dict
    lines: list[str] = field(default_factory=list)
    ok: bool = True
    cap_hit: bool = False

    def add(self, line: str = "") -> None:
        self.lines.append(line)

    def check(self, cond: bool, line: str) -> None:
        self.ok &= bool(cond)
        self.add(("ok    " if cond else "FAIL  ") + line)

    @property
    def digest(self) -> str:
        blob = json.dumps({"command": self.command, "params": self.params, "caps": self.caps}, sort_keys=True)
        return hashlib.sha256(blob.encode()).hexdigest()[:12]

    def status(self) -> str:
        return "cap exceeded" if self.cap_hit else ("ok" if self.ok else "failed")

    def text(self) -> str:
        caps = " ".join(f"{k}={'none' if v is None else v}" for k, v in self.caps.items())
        head = [
            f"# command: {self.command}",
            f"# params: {json.dumps(self.params, sort_keys=True)}",
            f"# caps: {caps}",
            f"# version: {__version__}",
        ]
        return "\n".join(head + self.lines + [f"status: {self.status()}"]) + "\n"

    def write(self, out_dir: Path) -> Path:
        out_dir.mkdir(parents=True, exist_ok=True)
        stem = f"{self.command.replace(' ', '_')}-{self.digest}"
        path = out_dir / f"{stem}.txt"
        n = 1
        while path.exists():  # never overwrite an earlier run
            n += 1
            path = out_dir / f"{stem}.{n}.txt"
        path.write_text(self.text())
        return path

    def exit_code(self) -> int:
        return EXIT_CAP if self.cap_hit else (EXIT_OK if self.ok else EXIT_FAIL)


def _finish(ctx: click.Context, rep: Report) -> None:
    obj = ctx.find_root().obj or {}
    path = rep.write(Path(obj.get("out_dir") or os.environ.get(OUT_ENV) or "reports"))
    click.echo(rep.text(), nl=False)
    click.echo(f"report: {path}")
    ctx.exit(rep.exit_code())


def _run(ctx: click.Context, command: str, params: dict, body) -> None:
    from .graphcore import CapExceeded

    obj = ctx.find_root().obj or {}
    rep = Report(command, params, dict(obj.get("caps", DEFAULT_CAPS)))
    try:
        body(rep)
    except CapExceeded as exc:
        rep.cap_hit = True
        rep.add(f"cap: {exc}")
    except ValueError as exc:
        raise click.BadParameter(str(exc)) from exc
    _finish(ctx, rep)


# ---------------------------------------------------------------- group


class _Group(click.Group):
    def resolve_command(self, ctx, args):
        name = args[0] if args else None
        if name is not None and self.get_command(ctx, name) is None and not name.startswith("-"):
            click.echo(f"unknown command: {name}", err=True)
            ctx.exit(EXIT_UNKNOWN)
        return super().resolve_command(ctx, args)


@click.group(cls=_Group)
@click.option("--out-dir", type=click.Path(file_okay=False), default=None, help=f"Report directory (default ${OUT_ENV} or ./reports).")
@click.option("--workers", type=click.IntRange(1), default=1, show_default=True, help="Worker count; runs are serial on one CPU.")
@click.option("--max-basis", type=click.IntRange(1), default=DEFAULT_CAPS["max_basis"], show_default=True)
@click.option("--max-entries", type=click.IntRange(1), default=DEFAULT_CAPS["max_entries"], show_default=True)
@click.version_option(__version__)
@click.pass_context
def main(ctx, out_dir, workers, max_basis, max_entries):
    """Multi-oriented graphs, props and graph complexes."""
    ctx.obj = {
        "out_dir": out_dir,
        "workers": workers,
        "caps": {"max_basis": max_basis, "max_entries": max_entries, "time": None},
    }


def _caps(ctx) -> dict:
    return ctx.find_root().obj["caps"]


# ---------------------------------------------------------------- graphs


@main.command("enum-graphs")
@click.option("--n", "n", type=click.IntRange(1), required=True, help="Vertices.")
@click.option("--e", "e", type=click.IntRange(0), required=True, help="Edges.")
@click.option("--k", type=click.IntRange(0), default=0, show_default=True)
@click.option("--l", type=click.IntRange(-1), default=-1, show_default=True)
@click.option("--d", type=int, default=2, show_default=True, help="Dimension parameter; only its parity matters.")
@click.option("--min-valence", type=click.IntRange(0), default=0, show_default=True)
@click.option("--connected/--any", default=False)
@click.pass_context
def enum_graphs(ctx, n, e, k, l, d, min_valence, connected):
    """Count nonvanishing graph classes."""
    from .graphcore import encode, enumerate_graphs

    _check_l(k, l)
    params = dict(n=n, e=e, k=k, l=l, d_parity=d % 2, min_valence=min_valence, connected=connected)

    def body(rep):
        gs = enumerate_graphs(n, e, k, l, min_valence, connected, "odd" if d % 2 else "even", cap=_caps(ctx)["max_basis"])
        rep.add(f"count: {len(gs)}")
        for cc in gs:
            rep.add(f"  {json.dumps(encode(cc.graph))}")

    _run(ctx, "enum-graphs", params, body)


def _check_l(k: int, l: int) -> None:
    if l > k:
        raise click.BadParameter(f"l={l} exceeds k={k}")


# ---------------------------------------------------------------- differentials


@main.command("verify-d2")
@click.argument("target", type=click.Choice(["assinf", "lieinf", "holb", "gc"]))
@click.option("--k", type=click.IntRange(0), default=0, show_default=True)
@click.option("--l", type=click.IntRange(-1), default=-1, show_default=True)
@click.option("--d", type=int, default=2, show_default=True)
@click.option("--c", "c", type=int, default=1, show_default=True, help="HoLB output parameter.")
@click.option("--hd", type=int, default=1, show_default=True, help="HoLB input parameter.")
@click.option("--max-arity", type=click.IntRange(2), default=5, show_default=True)
@click.option("--max-v", type=click.IntRange(1), default=4, show_default=True)
@click.option("--max-e", type=click.IntRange(0), default=5, show_default=True)
@click.pass_context
def verify_d2(ctx, target, k, l, d, c, hd, max_arity, max_v, max_e):
    """Check that a differential squares to zero."""
    if target == "gc":
        _check_l(k, l)
        params = dict(d=d, k=k, l=l, max_v=max_v, max_e=max_e)

        def body(rep):
            from .gcomplex import check_delta0_squared

            r = check_delta0_squared(d, k, l, max_v, max_e)
            rep.add(f"graphs checked: {r.checked}")
            rep.check(r.ok, "all zero" if r.ok else f"{len(r.failures)} nonzero squares")
            for key in r.failures[:20]:
                rep.add(f"  {key}")
    else:
        from .propcalc.families import AssInf, HoLB, LieInf

        fam = {"assinf": lambda: AssInf(k=k), "lieinf": lambda: LieInf(k=k), "holb": lambda: HoLB(c=c, d=hd, k=k)}[target]()
        params = dict(target=target, k=k, max_arity=max_arity, **({"c": c, "d": hd} if target == "holb" else {}))

        def body(rep):
            from .propcalc.differential import verify_d_squared

            r = verify_d_squared(fam, max_arity)
            rep.add(f"generators checked: {r.checked}")
            rep.check(r.ok, "all zero" if r.ok else f"{len(r.residuals)} nonzero squares")
            for res in r.residuals[:20]:
                rep.add(f"  {res.generator.verts[0]}")

    _run(ctx, f"verify-d2 {target}", params, body)


# ---------------------------------------------------------------- slices


def _operad(kind: str, k: int, resolution: bool):
    from .propcalc.families import AssInf, LieInf

    cls = AssInf if kind == "ass" else LieInf
    return cls(k=k) if resolution else cls(k=k, binary_only=True)


@main.command("slice-cohomology")
@click.option("--family", "kind", type=click.Choice(["ass", "lie"]), required=True)
@click.option("--k", type=click.IntRange(0), default=1, show_default=True)
@click.option("--max-arity", type=click.IntRange(2), default=4, show_default=True)
@click.pass_context
def slice_cohomology_cmd(ctx, kind, k, max_arity):
    """Cohomology of the resolution per leg profile (CSV rows)."""
    from .linalg import CompositionError
    from .propcalc.slices import profile_str, profiles, slice_cohomology

    params = dict(family=kind, k=k, max_arity=max_arity)

    def body(rep):
        fam = _operad(kind, k, True)
        rep.add("family,profile,degree,dim")
        for n in range(2, max_arity + 1):
            for prof in profiles(fam, 1, n):
                try:
                    for row in slice_cohomology(fam, prof).to_csv_rows():
                        rep.add(row)
                except CompositionError:
                    rep.check(False, f"{profile_str(prof)}: differential does not square to zero")

    _run(ctx, "slice-cohomology", params, body)


@main.command("quotient-dims")
@click.option("--family", "kind", type=click.Choice(["ass", "lie", "ib", "lieb"]), required=True)
@click.option("--k", type=click.IntRange(0), default=1, show_default=True)
@click.option("--max-arity", type=click.IntRange(2), default=4, show_default=True)
@click.pass_context
def quotient_dims(ctx, kind, k, max_arity):
    """Dimensions of the quadratic quotients per profile (CSV rows)."""
    from .propcalc.families import IB, LieBdiop
    from .propcalc.slices import profile_str, profiles, quotient_dim

    params = dict(family=kind, k=k, max_arity=max_arity)

    def body(rep):
        rep.add("family,profile,dim")
        if kind in ("ass", "lie"):
            fam = _operad(kind, k, False)
            for n in range(2, max_arity + 1):
                for prof in profiles(fam, 1, n):
                    rep.add(f"{fam.label()},{profile_str(prof)},{quotient_dim(fam, prof)}")
        else:
            fam = IB() if kind == "ib" else LieBdiop()
            for m in range(1, max_arity):
                n = max_arity - m
                for prof in profiles(fam, m, n):
                    rep.add(f"{fam.label()},{profile_str(prof)},{quotient_dim(fam, prof)}")

    _run(ctx, "quotient-dims", params, body)


# ---------------------------------------------------------------- graph complexes


@main.command("gc-cohomology")
@click.option("--d", type=int, default=2, show_default=True)
@click.option("--k", type=click.IntRange(0), default=0, show_default=True)
@click.option("--l", type=click.IntRange(-1), default=0, show_default=True)
@click.option("--max-v", type=click.IntRange(1), default=5, show_default=True)
@click.option("--max-loop", type=click.IntRange(1), default=2, show_default=True)
@click.pass_context
def gc_cohomology_cmd(ctx, d, k, l, max_v, max_loop):
    """Cohomology table per (loop order, degree) as CSV."""
    from .gcomplex import gc_cohomology

    _check_l(k, l)
    params = dict(d=d, k=k, l=l, max_v=max_v, max_loop=max_loop)

    def body(rep):
        caps = _caps(ctx)
        t = gc_cohomology(d, k, l, max_v, max_loop, cap=caps["max_basis"], entry_cap=caps["max_entries"])
        for line in t.to_csv().splitlines():
            rep.add(line)

    _run(ctx, "gc-cohomology", params, body)


# ---------------------------------------------------------------- claims

_CLAIMS = {
    "ass-resolution": "ass-resolution", "3.1.2": "ass-resolution",
    "lie-resolution": "lie-resolution", "3.3.1": "lie-resolution",
    "gc-extra-color": "gc-extra-color", "5.2.1": "gc-extra-color",
    "gc-shift": "gc-shift", "5.2.3": "gc-shift",
}


@main.command("check-theorem")
@click.argument("claim", metavar="{ass-resolution|lie-resolution|gc-extra-color|gc-shift}")
@click.option("--k", type=click.IntRange(0), default=1, show_default=True)
@click.option("--max-arity", type=click.IntRange(2), default=4, show_default=True)
@click.option("--max-v", type=click.IntRange(2), default=5, show_default=True)
@click.pass_context
def check_theorem(ctx, claim, k, max_arity, max_v):
    """Desk-scale check of a structural claim.

    ass-resolution / lie-resolution: slice cohomology of the resolution sits
    in degree 0 and matches the quotient dimension. gc-extra-color: an extra
    unoriented color leaves the oriented complex's cohomology unchanged.
    gc-shift: one degree shift aligns the d=2 oriented complex with the d=3
    complex that has one more color.
    """
    if claim not in _CLAIMS:
        raise click.BadParameter(f"unknown claim {claim!r}", param_hint="CLAIM")
    which = _CLAIMS[claim]

    if which.endswith("resolution"):
        kind = which.split("-")[0]
        params = dict(claim=which, k=k, max_arity=max_arity)

        def body(rep):
            from .propcalc.slices import profile_str, resolution_rows

            rep.add("profile,cohomology,quotient_dim,match")
            for row in resolution_rows(kind, k, max_arity):
                coh = "not-a-complex" if row.dims is None else " ".join(f"{d}:{v}" for d, v in sorted(row.dims.items()))
                rep.check(row.ok, f"{profile_str(row.profile)},{coh},{row.quotient},{str(row.ok).lower()}")
    else:
        params = dict(claim=which, max_v=max_v)

        def body(rep):
            from .gcomplex import compare_tables, gc_cohomology, shift_search

            caps = _caps(ctx)
            kw = dict(cap=caps["max_basis"], entry_cap=caps["max_entries"])
            if which == "gc-extra-color":
                a = gc_cohomology(2, 0, 0, max_v + 1, 2, **kw)
                b = gc_cohomology(2, 1, 0, max_v, 2, **kw)
                ok, n, nz = compare_tables(a, b)
                rep.add(f"cells compared: {n}, nonzero: {nz}")
                rep.check(ok and nz > 0, "tables agree on the trusted window")
            else:
                a = gc_cohomology(2, 0, 0, max_v + 1, 3, **kw)
                b = gc_cohomology(3, 1, 1, max_v, 3, **kw)
                found = shift_search(a, b)
                rep.add(f"aligning shifts: {found}")
                rep.check(len(found) == 1, "a unique uniform shift aligns the tables")

    _run(ctx, "check-theorem", params, body)


@main.command("verify-forgetful")
@click.argument("which", type=click.Choice(["alpha", "beta"]))
@click.option("--corrupt", is_flag=True, help="Negate one table entry (negative control).")
@click.pass_context
def verify_forgetful(ctx, which, corrupt):
    """Check that a forgetful map sends relations into the target relations."""
    from .propcalc import forgetful as fg

    params = dict(which=which, corrupt=corrupt)

    def body(rep):
        fmap = getattr(fg, which)
        if corrupt:
            fmap = fg.ForgetfulMap(fmap.name, fmap.source, fmap.target, corrupt=((1, 0, 0),))
        r = fg.verify_morphism(fmap)
        for name, ok, size in r.results:
            rep.check(ok, f"{name}: image of {size} terms in relation span")

    _run(ctx, "verify-forgetful", params, body)


# ---------------------------------------------------------------- representations


@main.command("manin-check")
@click.option("--count", type=click.IntRange(1), default=60, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.pass_context
def manin_check(ctx, count, seed):
    """Relation residuals versus a direct Lie bialgebra checker on random pairs."""
    from .reprengine import manin_suite

    params = dict(count=count, seed=seed)

    def body(rep):
        rows = manin_suite(count, seed)
        rep.add("index,dim,oracle,residual_zero")
        for i, (n, oracle, res) in enumerate(rows):
            rep.add(f"{i},{n},{str(oracle).lower()},{str(res).lower()}")
        agree = sum(a == b for _, a, b in rows)
        rep.check(agree == len(rows), f"agreement {agree}/{len(rows)}, bialgebras {sum(a for _, a, _ in rows)}")

    _run(ctx, "manin-check", params, body)


@main.command("divergence-probe")
@click.option("--levels", default="8,16,32", show_default=True, help="Comma-separated truncation sizes.")
@click.option("--zero", is_flag=True, help="Use zero tensors.")
@click.pass_context
def divergence_probe_cmd(ctx, levels, zero):
    """Probe one coefficient of the two two-edge diagrams across truncations."""
    from .reprengine import divergence_family, divergence_probe, two_edge_diagram

    try:
        ps = [int(x) for x in levels.split(",")]
    except ValueError:
        raise click.BadParameter("levels must be integers", param_hint="--levels")
    if not ps or any(p < 1 for p in ps):
        raise click.BadParameter("levels must be positive", param_hint="--levels")
    params = dict(levels=ps, zero=zero)

    def body(rep):
        fam = divergence_family(ps, zero=zero)
        legal = divergence_probe(fam, two_edge_diagram(False), {0: 0, 1: 0})
        illegal = divergence_probe(fam, two_edge_diagram(True), {0: 0, 1: 0})
        rep.add("diagram,p,coefficient")
        for name, tab in (("legal", legal), ("illegal", illegal)):
            for p, v in tab.items():
                rep.add(f"{name},{p},{q(v)}")
        lv = list(legal.values())
        iv = list(illegal.values())
        rep.check(len(set(lv)) == 1, "legal coefficient constant")
        if zero:
            rep.check(all(v == 0 for v in iv), "zero tensors give zero")
        else:
            rep.check(all(a < b for a, b in zip(iv, iv[1:])), "illegal coefficient strictly increasing")

    _run(ctx, "divergence-probe", params, body)


# ---------------------------------------------------------------- export


@main.command("export")
@click.argument("fmt", type=click.Choice(["json", "dot", "csv"]))
@click.option("--n", "n", type=click.IntRange(1), required=True)
@click.option("--e", "e", type=click.IntRange(0), required=True)
@click.option("--k", type=click.IntRange(0), default=0, show_default=True)
@click.option("--l", type=click.IntRange(-1), default=-1, show_default=True)
@click.option("--d", type=int, default=2, show_default=True)
@click.option("--min-valence", type=click.IntRange(0), default=2, show_default=True)
@click.pass_context
def export(ctx, fmt, n, e, k, l, d, min_valence):
    """Write the enumerated basis graphs as JSON, DOT or CSV."""
    from .gcomplex import graph_degree
    from .graphcore import enumerate_graphs, to_dot, to_json

    _check_l(k, l)
    params = dict(fmt=fmt, n=n, e=e, k=k, l=l, d=d, min_valence=min_valence)

    def body(rep):
        gs = enumerate_graphs(n, e, k, l, min_valence, True, "odd" if d % 2 else "even", cap=_caps(ctx)["max_basis"])
        if fmt == "json":
            rep.add(json.dumps([to_json(cc.graph) for cc in gs], sort_keys=True))
        elif fmt == "dot":
            for i, cc in enumerate(gs):
                rep.add(to_dot(cc.graph, f"G{i}"))
        else:
            rep.add("index,vertices,edges,degree")
            for i, cc in enumerate(gs):
                rep.add(f"{i},{cc.graph.n},{len(cc.graph.edges)},{graph_degree(cc.graph, d)}")

    _run(ctx, f"export {fmt}", params, body)


def run(argv=None) -> int:
    try:
        rv = main.main(args=argv, prog_name="moprops", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.UsageError as exc:
        exc.show()
        return EXIT_PARAMS
    except click.ClickException as exc:
        exc.show()
        return EXIT_FAIL
    return rv if isinstance(rv, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(run())
