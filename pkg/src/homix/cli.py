"""``homix`` command line.

Exit codes: 0 success, 1 a checked property failed, 2 bad usage or input,
3 a search ran out of budget (a partial report is still printed).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import io as hio
from .config import FORMATS, RunConfig
from .errors import (
    BudgetExceeded,
    ClaimViolation,
    HomixError,
    ImproperColouring,
    NotNonFlat,
)
from .gadgets import build_sum_gadget
from .graph import VertexMap
from .homology import flat_profile, h1_presentation
from .homsearch import enumerate_homs, mix_bruteforce, reconfig_path
from .reduction import ReductionArtifact, build_Gstar, extract_colouring, witness_hom
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit(obj, cfg: RunConfig, out) -> None:
    if cfg.format == "text" and isinstance(obj, dict):
        for k, v in obj.items():
            out.write(f"{k}: {v if not isinstance(v, (list, dict)) else json.dumps(v)}\n")
    else:
        out.write(json.dumps(obj, separators=(",", ":")) + "\n")


def _pins(items) -> dict:
    pins = {}
    for it in items or []:
        try:
            v, h = it.split("=")
            pins[int(v)] = int(h)
        except ValueError:
            raise UsageError(f"bad --pin {it!r}, expected v=h") from None
    return pins


def _map(path, G, H) -> VertexMap:
    return VertexMap(G, H, hio.map_from_json(hio.read_json(path))).validated()


# -- subcommands -----------------------------------------------------------


def cmd_h1(a, cfg):
    G = hio.load_graph(a.graph)
    P = h1_presentation(G, max_dense=cfg.snf_limit)
    return {"rank": P.rank, "torsion": list(P.torsion), "basis": [list(w.vertices) for w in P.basis_cycles]}, EXIT_OK


def cmd_flat(a, cfg):
    G, H = hio.load_graph(a.g), hio.load_graph(a.h)
    phi = _map(a.map, G, H)
    prof = flat_profile(phi)
    return {"flat": all(not any(c) for c in prof), "classes": [list(c) for c in prof]}, EXIT_OK


def cmd_homs(a, cfg):
    G, H = hio.load_graph(a.g), hio.load_graph(a.h)
    hs = enumerate_homs(G, H, _pins(a.pin), node_budget=cfg.budget_nodes, max_maps=cfg.max_maps, count_only=a.count_only)
    out = {"count": hs.count}
    if not a.count_only:
        out["maps"] = [list(m) for m in hs.maps]
    return out, EXIT_OK


def cmd_mix(a, cfg):
    G, H = hio.load_graph(a.g), hio.load_graph(a.h)
    rep = mix_bruteforce(G, H, node_budget=cfg.budget_nodes, max_maps=cfg.max_maps)
    return {
        "connected": rep.connected,
        "components": rep.component_count,
        "maps": rep.vertex_count,
        "sizes": rep.component_sizes(),
        "representatives": [list(m) for m in rep.representatives],
    }, EXIT_OK


def cmd_path(a, cfg):
    G, H = hio.load_graph(a.g), hio.load_graph(a.h)
    phi, psi = _map(a.f, G, H), _map(a.f2, G, H)
    path = reconfig_path(phi, psi, budget=cfg.max_maps)
    return {"path": None if path is None else [list(m.values) for m in path]}, EXIT_OK


def cmd_gadget(a, cfg):
    S = build_sum_gadget(a.s, a.g)
    doc = hio.gadget_to_json(S)
    if a.out:
        hio.write_json(doc, a.out)
        return {"s": S.s, "g": S.g, "ell": S.ell, "n": S.graph.n, "out": a.out}, EXIT_OK
    return doc, EXIT_OK


def cmd_reduce(a, cfg):
    G, H = hio.load_graph(a.g), hio.load_graph(a.h)
    R = build_Gstar(G, H)
    doc = hio.artifact_to_json(R)
    if a.out:
        hio.write_json(doc, a.out)
    return {
        "n_Ga": R.Ga.n, "n_Gstar": R.Gstar.n, "g": R.g, "plugs": len(R.plug_vertices),
        "Zstar": list(R.Zstar.vertices), "out": a.out,
    }, EXIT_OK


def _artifact(path):
    R = hio.load_any(path)
    if not isinstance(R, ReductionArtifact):
        raise UsageError(f"{path} is not a reduction artifact (run `homix reduce --out`)")
    return R


def cmd_witness(a, cfg):
    R = _artifact(a.artifact)
    phi = witness_hom(R, hio.colouring_from_json(hio.read_json(a.colouring)))
    doc = hio.map_to_json(phi.values)
    if a.out:
        hio.write_json(doc, a.out)
    return doc, EXIT_OK


def cmd_extract(a, cfg):
    R = _artifact(a.artifact)
    vals = hio.map_from_json(hio.read_json(a.map))
    return {"colouring": extract_colouring(R, vals)}, EXIT_OK


def cmd_verify(a, cfg):
    rep = run_suite(a.suite, seed=cfg.seed, trials=cfg.trials)
    return rep.to_dict(with_timings=a.timings), rep.exit_code()


def cmd_dot(a, cfg):
    obj = hio.load_any(a.input)
    return hio.export_dot(obj, a.highlight or ()), EXIT_OK


# -- parser ----------------------------------------------------------------


def _globals(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = argparse.SUPPRESS if suppress else None
    p.add_argument("--seed", type=int, default=d, help="randomness seed (default 0)")
    p.add_argument("--budget-nodes", type=int, default=d, help="search-node budget")
    p.add_argument("--format", choices=FORMATS, default=d, help="output format")
    p.add_argument("--trials", type=int, default=d, help="trial count for sampling suites")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="homix", description="Homology, Hom-graphs and the non-flat colouring reduction.")
    _globals(p, suppress=False)
    sub = p.add_subparsers(dest="cmd", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        _globals(sp, suppress=True)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("h1", cmd_h1, "first homology of a graph's clique complex")
    sp.add_argument("graph")
    sp = add("flat", cmd_flat, "is a homomorphism flat")
    sp.add_argument("g")
    sp.add_argument("h")
    sp.add_argument("map")
    sp = add("homs", cmd_homs, "enumerate homomorphisms")
    sp.add_argument("g")
    sp.add_argument("h")
    sp.add_argument("--pin", action="append", metavar="V=H")
    sp.add_argument("--count-only", action="store_true")
    sp = add("mix", cmd_mix, "is the Hom-graph connected")
    sp.add_argument("g")
    sp.add_argument("h")
    sp = add("path", cmd_path, "reconfiguration path between two maps")
    sp.add_argument("g")
    sp.add_argument("h")
    sp.add_argument("f")
    sp.add_argument("f2", metavar="g_map")
    sp = add("gadget", cmd_gadget, "build a gadget")
    sp.add_argument("kind", choices=["sum"])
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--g", type=int, required=True)
    sp.add_argument("--out")
    sp = add("reduce", cmd_reduce, "build G* from a 3-colouring instance and a target")
    sp.add_argument("g")
    sp.add_argument("h")
    sp.add_argument("--out")
    sp = add("witness", cmd_witness, "non-flat map from a proper 3-colouring")
    sp.add_argument("artifact")
    sp.add_argument("colouring")
    sp.add_argument("--out")
    sp = add("extract", cmd_extract, "3-colouring from a non-flat map")
    sp.add_argument("artifact")
    sp.add_argument("map")
    sp = add("verify", cmd_verify, "run a verification suite")
    sp.add_argument("suite", choices=SUITES)
    sp.add_argument("--timings", action="store_true", help="include wall-clock timings (not deterministic)")
    sp = add("dot", cmd_dot, "export a graph or artifact as DOT")
    sp.add_argument("input")
    sp.add_argument("--highlight", action="append", metavar="NAME")
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        cfg = RunConfig.from_env(
            budget_nodes=a.budget_nodes, seed=a.seed, trials=a.trials, format=a.format,
            suite=getattr(a, "suite", None),
        )
    except ValueError as exc:
        err.write(f"homix: {exc}\n")
        return EXIT_USAGE
    # library defaults read the budget from the environment; scope the override to this call
    saved = os.environ.get("HOMIX_BUDGET_NODES")
    if a.budget_nodes is not None:
        os.environ["HOMIX_BUDGET_NODES"] = str(cfg.budget_nodes)
    try:
        obj, code = a.fn(a, cfg)
    except BudgetExceeded as exc:
        _emit({"error": "budget_exceeded", "message": str(exc), "partial": _jsonable(exc.partial)}, cfg, out)
        err.write(f"homix: {exc}\n")
        return EXIT_BUDGET
    except ClaimViolation as exc:
        err.write(f"homix: invariant violated: {exc}\n")
        return EXIT_FAIL
    except (UsageError, ImproperColouring, NotNonFlat, HomixError, OSError, KeyError, ValueError) as exc:
        err.write(f"homix: {exc}\n")
        return EXIT_USAGE
    finally:
        if saved is None:
            os.environ.pop("HOMIX_BUDGET_NODES", None)
        else:
            os.environ["HOMIX_BUDGET_NODES"] = saved
    if isinstance(obj, str):
        out.write(obj)
    else:
        _emit(obj, cfg, out)
    return code


def _jsonable(x):
    if isinstance(x, (int, float, str)) or x is None:
        return x
    if isinstance(x, (list, tuple)):
        return len(x)
    return str(x)


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
