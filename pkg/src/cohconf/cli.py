"""Command-line interface: ``cohconf <command> <input> [options]``.

Inputs are resolved by :func:`load_input`:

* ``catalog:NAME``      a built-in graph (``cohconf tables`` lists them)
* ``group:KIND/orbits=A+B`` or a bare ``KIND/orbits=...``  the 2-orbit configuration of a group
* ``empty:N`` / ``complete:N``  the empty or complete graph on N vertices
* ``path.edges``        an edge list (``n m`` header, then ``u v`` lines)
* ``path.json``         a color matrix ``{"n": N, "colors": [...]}``

Exit codes: 0 success, 2 invalid input or failed validation, 3 a resource bound was hit.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import catalog
from .candidates import Bounds, CandidateError, search
from .ccstruct import CoherenceError, ColorGraph, tensor
from .io import FormatError, format_edge_list, read_color_graph, read_edge_list
from .isomorph import SearchBoundError, automorphisms, color_isomorphic, is_schurian
from .perm import PermError, inv
from .planar import GraphError, SimpleGraph, count_faces, is_planar, is_polyhedral, \
    verify_embedding, verify_kuratowski, vertex_connectivity
from .rigidity import RigidityError, find_rigid_color, replay
from .spectral import SpectralError, adjacency_matrix, build_rep, fiber_class_count, \
    gram_classes, is_faithful, projection, rainbow_rho
from .wl import wl_close, wl_close_graph

VALIDATION_ERRORS = (FormatError, catalog.CatalogError, CoherenceError, PermError, GraphError,
                     SpectralError, RigidityError)
BOUND_ERRORS = (SearchBoundError, CandidateError, MemoryError)


@dataclass
class Input:
    name: str
    n: int
    edges: list[tuple[int, int]] | None  # None when the input is a configuration
    config: ColorGraph
    hints: catalog.Hints | None = None


def load_input(source: str) -> Input:
    if source.startswith("catalog:"):
        name = source[len("catalog:"):]
        n, edges = catalog.load_graph(name)
        return Input(source, n, list(edges), wl_close_graph(edges, n), catalog.SOLIDS.get(name))
    if source.startswith(("empty:", "complete:")):
        kind, _, num = source.partition(":")
        try:
            n = int(num)
        except ValueError:
            raise FormatError(f"bad vertex count in {source!r}") from None
        if n < 1:
            raise FormatError("need at least one vertex")
        edges = [(a, b) for a in range(n) for b in range(a + 1, n)] if kind == "complete" else []
        return Input(source, n, edges, wl_close_graph(edges, n))
    if source.startswith("group:") or "/orbits=" in source:
        name = source[len("group:"):] if source.startswith("group:") else source
        x = inv(catalog.load_group(name))
        return Input(source, x.n, None, x)
    path = Path(source)
    if not path.is_file():
        raise FormatError(f"cannot resolve input {source!r}")
    if path.suffix == ".json":
        x = read_color_graph(path)
        return Input(source, x.n, None, wl_close(x))
    n, edges = read_edge_list(path)
    SimpleGraph.from_edges(n, edges)
    return Input(source, n, edges, wl_close_graph(edges, n))


def _need_graph(inp: Input) -> SimpleGraph:
    if inp.edges is None:
        raise FormatError(f"{inp.name} is a configuration, this command needs a graph")
    return SimpleGraph.from_edges(inp.n, inp.edges)


def _emit(args, rows: list[dict]):
    if args.format == "json":
        out = rows[0] if len(rows) == 1 else rows
        print(json.dumps(out, sort_keys=True))
        return
    if not rows:
        return
    keys = list(rows[0])
    print("\t".join(keys))
    for r in rows:
        print("\t".join(_cell(r.get(k)) for k in keys))


def _cell(v) -> str:
    if isinstance(v, float):
        return f"{v:.9f}"
    if isinstance(v, (list, tuple, dict)):
        return json.dumps(v)
    return str(v)


def _eigenvalue(inp: Input, args):
    if args.eigenvalue == "hint":
        if inp.hints is None:
            raise FormatError(f"no eigenvalue hint for {inp.name}")
        return inp.hints.eigenvalue_value
    return args.eigenvalue


def _matrix(inp: Input, args) -> str:
    if args.matrix == "hint":
        if inp.hints is None:
            raise FormatError(f"no matrix hint for {inp.name}")
        return inp.hints.matrix
    return args.matrix


# ----------------------------------------------------------------------
# commands


def cmd_wl(args):
    x = load_input(args.input).config
    _emit(args, [{"n": x.n, "rank": x.rank, "fibers": len(x.fibers),
                  "color_sizes": x.sizes.tolist()}])


def cmd_inv(args):
    x = inv(catalog.load_group(args.group))
    if args.dump:
        Path(args.dump).write_text(x.dumps() + "\n")
    _emit(args, [{"group": args.group, "n": x.n, "rank": x.rank,
                  "fibers": [len(f) for f in x.fibers]}])


def cmd_tensor(args):
    x = load_input(args.input).config
    c = tensor(x).c
    rows = [{"r": int(r), "s": int(s), "t": int(t), "c": int(c[r, s, t])}
            for r, s, t in zip(*np.nonzero(c))]
    _emit(args, rows)


def cmd_aut(args):
    x = load_input(args.input).config
    res = automorphisms(x)
    row = {"order": res.order, "orbit_sizes": res.orbit_sizes, "base": res.base}
    if args.generators:
        row["generators"] = [list(g.images) for g in res.group.generators]
    _emit(args, [row])


def cmd_schurian(args):
    x = load_input(args.input).config
    _emit(args, [{"rank": x.rank, "schurian": is_schurian(x)}])


def cmd_iso(args):
    a, b = load_input(args.first).config, load_input(args.second).config
    f = color_isomorphic(a, b)
    _emit(args, [{"isomorphic": f is not None, "map": None if f is None else f.tolist()}])


def _rep(inp: Input, args):
    g = _need_graph(inp)
    matrix = _matrix(inp, args)
    proj = projection(inp.config, adjacency_matrix(g.edges, g.n), matrix, _eigenvalue(inp, args))
    return build_rep(inp.config, proj, require_injective=not args.allow_collisions)


def cmd_s2(args):
    inp = load_input(args.input)
    x = inp.config
    rep = _rep(inp, args)
    rb = rainbow_rho(x, rep) if rep.injective else gram_classes(rep)
    row = {"matrix": rep.matrix, "eigenvalue": rep.eigenvalue, "multiplicity": 3,
           "rank": x.rank, "W": len(rep.W), "classes": fiber_class_count(x, rep),
           "injective": rep.injective, "faithful": is_faithful(x, rb),
           "antipodal_classes": len(rep.antipodal.classes) if rep.antipodal else None}
    if args.coordinates:
        Path(args.coordinates).write_text(json.dumps(rep.to_json(), sort_keys=True) + "\n")
    _emit(args, [row])


def cmd_rigid(args):
    inp = load_input(args.input)
    x = inp.config
    rep = _rep(inp, args)
    found = find_rigid_color(x, rep, same_gram=not args.literal)
    if found.color is None:
        _emit(args, [{"rigid": False, "color": None, "tried": found.tried}])
        return 1
    cert = found.certificate
    if args.certificate:
        Path(args.certificate).write_text(json.dumps(cert.to_json(), sort_keys=True) + "\n")
    _emit(args, [{"rigid": True, "color": found.color, "seed": list(cert.seed_pair),
                  "steps": len(cert.trace), "replay": replay(x, rep, cert)}])


def cmd_planar(args):
    g = _need_graph(load_input(args.input))
    res = is_planar(g, witness=True)
    row = {"planar": res.planar}
    if res.planar:
        row["faces"] = count_faces(g, res.rotation)
        row["euler_ok"] = verify_embedding(g, res.rotation)
    else:
        row["kuratowski"] = verify_kuratowski(g, res.kuratowski)
        row["witness_edges"] = res.kuratowski
    _emit(args, [row])


def cmd_kappa(args):
    g = _need_graph(load_input(args.input))
    _emit(args, [{"n": g.n, "m": g.m, "kappa": vertex_connectivity(g), "polyhedral": is_polyhedral(g)}])


def _bounds(args) -> Bounds:
    return Bounds(total=True, fiber=not args.no_fiber_bound,
                  fiber_min_size=args.fiber_min_size, pair=args.pair_bound)


def cmd_search(args):
    x = load_input(args.input).config
    res = search(x, _bounds(args), reduce=not args.no_phi_reduce, wl=not args.no_wl_filter)
    if args.emit_witnesses:
        out = Path(args.emit_witnesses)
        out.mkdir(parents=True, exist_ok=True)
        for i, w in enumerate(res.witnesses):
            (out / f"witness_{i}.edges").write_text(format_edge_list(x.n, w.edges))
    _emit(args, [{"input": args.input, "rank": x.rank, **res.counts}])


# ----------------------------------------------------------------------
# tables

SEARCH_ROWS = ["alt4/orbits=6+4", "alt5/orbits=30", "alt5/orbits=20", "sym4II/orbits=12+6",
               "alt5/orbits=20+12", "sym4I/orbits=6+4"]


def solid_row(name: str) -> dict:
    h = catalog.SOLIDS[name]
    n, edges = catalog.load_graph(name)
    x = wl_close_graph(edges, n)
    proj = projection(x, adjacency_matrix(edges, n), h.matrix, h.eigenvalue_value)
    rep = build_rep(x, proj)
    found = find_rigid_color(x, rep)
    return {"name": name, "n": n, "S": x.rank, "S_rho": fiber_class_count(x, rep),
            "matrix": h.matrix, "lambda": rep.eigenvalue,
            "faithful": is_faithful(x, rainbow_rho(x, rep)), "rigid_color": found.color,
            "expected_S": h.rank, "expected_S_rho": h.rho_classes}


def search_row(name: str) -> dict:
    x = inv(catalog.load_group(name))
    res = search(x)
    return {"group": name, "rank": x.rank, **res.counts}


def cmd_tables(args):
    fn, items = (solid_row, list(catalog.SOLIDS)) if args.table == "solids" else (search_row, SEARCH_ROWS)
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            rows = list(pool.map(fn, items))
    else:
        rows = [fn(i) for i in items]
    _emit(args, rows)


# ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cohconf", description=__doc__.split("\n")[0])
    p.add_argument("--format", choices=["tsv", "json"], default="tsv")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, *inputs):
        sp = sub.add_parser(name, help=help_)
        for arg in inputs:
            sp.add_argument(arg)
        sp.add_argument("--format", choices=["tsv", "json"], default=argparse.SUPPRESS)
        sp.set_defaults(func=fn)
        return sp

    add("wl", cmd_wl, "coherent closure: rank and color sizes", "input")
    sp = add("inv", cmd_inv, "2-orbit configuration of a catalog group", "group")
    sp.add_argument("--dump", help="write the color matrix as JSON")
    add("tensor", cmd_tensor, "nonzero intersection numbers r s t c", "input")
    sp = add("aut", cmd_aut, "automorphism group order", "input")
    sp.add_argument("--generators", action="store_true")
    add("schurian", cmd_schurian, "is the closure the 2-orbit configuration of its automorphisms", "input")
    add("iso", cmd_iso, "color isomorphism between two closures", "first", "second")
    for name, fn, help_ in (("s2", cmd_s2, "spherical representation summary"),
                            ("rigid", cmd_rigid, "find a rigid color with a certificate")):
        sp = add(name, fn, help_, "input")
        sp.add_argument("--matrix", default="L", help="L, A, or 'hint' for the catalog value")
        sp.add_argument("--eigenvalue", default="auto",
                        help="auto, fiedler, a decimal, or 'hint' for the catalog value")
        sp.add_argument("--allow-collisions", action="store_true",
                        help="accept a non-injective map (s2 reports it as such)")
    sub.choices["s2"].add_argument("--coordinates", help="write points and Gram values as JSON")
    sub.choices["rigid"].add_argument("--certificate", help="write the certificate as JSON")
    sub.choices["rigid"].add_argument("--literal", action="store_true",
                                      help="do not restrict S(D; a, b) to one Gram value")
    add("planar", cmd_planar, "planarity with a checked certificate", "input")
    add("kappa", cmd_kappa, "vertex connectivity and polyhedrality", "input")
    sp = add("search", cmd_search, "candidate polyhedral graphs with a given closure", "input")
    sp.add_argument("--no-wl-filter", action="store_true")
    sp.add_argument("--no-phi-reduce", action="store_true")
    sp.add_argument("--no-fiber-bound", action="store_true")
    sp.add_argument("--fiber-min-size", type=int, default=Bounds().fiber_min_size,
                    help="smallest fiber the inside-fiber edge bound applies to")
    sp.add_argument("--pair-bound", action="store_true", help="also bound edges between fibers")
    sp.add_argument("--emit-witnesses", metavar="DIR")
    sp = add("tables", cmd_tables, "regenerate the solid and search tables")
    sp.add_argument("--table", choices=["solids", "search"], default="solids")
    sp.add_argument("--jobs", type=int, default=1)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code = args.func(args)
    except BOUND_ERRORS as exc:
        print(f"error[{type(exc).__module__.split('.')[-1]}]: {exc}", file=sys.stderr)
        return 3
    except VALIDATION_ERRORS as exc:
        print(f"error[{type(exc).__module__.split('.')[-1]}]: {exc}", file=sys.stderr)
        return 2
    return code or 0


if __name__ == "__main__":
    sys.exit(main())
