"""JSON interchange for graphs, maps, walks and reduction artifacts, plus DOT export."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable, Mapping

from .errors import InvalidGraph, InvalidWalk
from .gadgets import SumGadget, build_sum_gadget
from .graph import ClosedWalk, Graph
from .reduction import GadgetCopy, ReductionArtifact

ARTIFACT_FORMAT = "homix-artifact/1"


# -- graphs ----------------------------------------------------------------


def graph_to_json(G: Graph) -> dict:
    if G.reflexive and G.n:
        refl = True
    elif not G.loops:
        refl = False
    else:
        refl = sorted(G.loops)
    d = {"n": G.n, "reflexive": refl, "edges": [list(e) for e in G.sorted_edges]}
    if G.name:
        d = {"name": G.name, **d}
    return d


def graph_from_json(d: Mapping) -> Graph:
    try:
        n = int(d["n"])
    except (KeyError, TypeError, ValueError):
        raise InvalidGraph("graph JSON needs an integer 'n'") from None
    refl = d.get("reflexive", False)
    loops: Iterable[int] = ()
    if isinstance(refl, list):
        loops = [int(v) for v in refl]
        refl = False
    elif not isinstance(refl, bool):
        raise InvalidGraph("'reflexive' must be a boolean or a list of vertices")
    edges = d.get("edges", [])
    for e in edges:
        if len(e) != 2:
            raise InvalidGraph(f"edge {e} must have two endpoints")
    return Graph.build(n, edges, loops, reflexive=refl, name=d.get("name"))


def read_json(path) -> object:
    with open(path) as fh:
        return json.load(fh)


def write_json(obj, path=None) -> str:
    text = json.dumps(obj, indent=None, separators=(",", ":"))
    if path is not None:
        Path(path).write_text(text + "\n")
    return text


def load_graph(path) -> Graph:
    return graph_from_json(read_json(path))


def save_graph(G: Graph, path) -> None:
    write_json(graph_to_json(G), path)


# -- maps, walks, colourings -----------------------------------------------


def map_from_json(d) -> tuple:
    vals = d["map"] if isinstance(d, Mapping) else d
    return tuple(int(x) for x in vals)


def map_to_json(values) -> dict:
    return {"map": [int(x) for x in values]}


def walk_from_json(d) -> ClosedWalk:
    vs = d["walk"] if isinstance(d, Mapping) else d
    if not vs:
        raise InvalidWalk("empty walk")
    return ClosedWalk.parse([int(x) for x in vs])


def colouring_from_json(d) -> list:
    vals = d.get("colouring", d.get("map")) if isinstance(d, Mapping) else d
    if vals is None:
        raise InvalidGraph("colouring JSON needs a 'colouring' list")
    return [int(x) for x in vals]


# -- gadgets and artifacts -------------------------------------------------


def gadget_to_json(S: SumGadget) -> dict:
    return {
        "s": S.s,
        "g": S.g,
        "ell": S.ell,
        "graph": graph_to_json(S.graph),
        "Z": list(S.Z.vertices),
        "A": [list(w.vertices) for w in S.A],
        "A_prime": [list(w.vertices) for w in S.A_prime],
        "T": sorted(S.T),
        "zero_vertices": dict(S.zero_vertices),
        "gadget_cycles": [list(w.vertices) for w in S.gadget_cycles],
    }


def artifact_to_json(R: ReductionArtifact) -> dict:
    return {
        "format": ARTIFACT_FORMAT,
        "source": graph_to_json(R.source),
        "target": graph_to_json(R.target),
        "Zcycle_H": list(R.Zcycle_H.vertices),
        "g": R.g,
        "Ga": graph_to_json(R.Ga),
        "Gstar": graph_to_json(R.Gstar),
        "Zstar": list(R.Zstar.vertices),
        "Av": {f"{v},{i}": list(w.vertices) for (v, i), w in sorted(R.Av.items())},
        "gadget_cycles": {k: list(w.vertices) for k, w in R.gadget_cycles.items()},
        "Tstar": sorted(R.Tstar),
        "basis_T": [list(w.vertices) for w in R.basis_T],
        "plug_vertices": list(R.plug_vertices),
        "provenance": R.provenance(),
    }


def artifact_from_json(d: Mapping) -> ReductionArtifact:
    if d.get("format") != ARTIFACT_FORMAT:
        raise InvalidGraph(f"not a {ARTIFACT_FORMAT} document")
    g = int(d["g"])
    copies = []
    for p in d["provenance"]:
        gad = build_sum_gadget(int(p["s"]), g)
        copies.append(GadgetCopy(p["name"], p["kind"], tuple(p["key"]), gad, tuple(p["projection"]), p["twisted"]))
    Av = {}
    for k, w in d["Av"].items():
        v, i = (int(x) for x in k.split(","))
        Av[(v, i)] = ClosedWalk(tuple(w))
    return ReductionArtifact(
        source=graph_from_json(d["source"]),
        target=graph_from_json(d["target"]),
        Zcycle_H=ClosedWalk(tuple(d["Zcycle_H"])),
        g=g,
        Ga=graph_from_json(d["Ga"]),
        Gstar=graph_from_json(d["Gstar"]),
        Zstar=ClosedWalk(tuple(d["Zstar"])),
        Av=Av,
        gadget_cycles={k: ClosedWalk(tuple(w)) for k, w in d["gadget_cycles"].items()},
        Tstar=frozenset(d["Tstar"]),
        basis_T=[ClosedWalk(tuple(w)) for w in d["basis_T"]],
        plug_vertices=list(d["plug_vertices"]),
        copies=copies,
    )


def named_walks(obj) -> dict:
    """Walk registry of a gadget or artifact, keyed by the names ``export_dot`` accepts."""
    if isinstance(obj, ReductionArtifact):
        out = dict(obj.gadget_cycles)
        for k, w in enumerate(obj.basis_T):
            out[f"basis_T{k}"] = w
        return out
    if isinstance(obj, SumGadget):
        out = {"Z": obj.Z}
        for i, w in enumerate(obj.A):
            out[f"A{i}"] = w
        for i, w in enumerate(obj.A_prime):
            out[f"A'{i}"] = w
        for t, w in enumerate(obj.slices):
            out[f"slice{t}"] = w
        return out
    return {}


# -- DOT -------------------------------------------------------------------

PALETTE = ("red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "teal")


def export_dot(obj, highlight: Iterable[str] = (), walks: Mapping[str, ClosedWalk] | None = None) -> str:
    """DOT text for a graph, gadget or artifact; walks named in ``highlight`` are coloured."""
    if isinstance(obj, ReductionArtifact):
        G = obj.Gstar
    elif isinstance(obj, SumGadget):
        G = obj.graph
    else:
        G = obj
    registry = dict(named_walks(obj))
    registry.update(walks or {})
    colour_of: dict = {}
    labels: dict = {}
    for k, name in enumerate(highlight):
        if name not in registry:
            raise KeyError(f"unknown walk {name!r}")
        w = registry[name]
        col = PALETTE[k % len(PALETTE)]
        for a, b in w.steps():
            if a != b:
                colour_of.setdefault((min(a, b), max(a, b)), col)
        for v in w.vertices:
            labels.setdefault(v, name)
    lines = [f"graph {json.dumps(G.name or 'G')} {{"]
    for v in range(G.n):
        attrs = f' [label="{v}\\n{labels[v]}"]' if v in labels else ""
        lines.append(f"  {v}{attrs};")
    for u, v in G.sorted_edges:
        col = colour_of.get((u, v))
        attrs = f' [color="{col}", penwidth=2, highlight="true"]' if col else ""
        lines.append(f"  {u} -- {v}{attrs};")
    for v in sorted(G.loops):
        lines.append(f"  {v} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def load_any(path):
    """A graph, a sum gadget, or an artifact when the file carries the artifact format tag."""
    d = read_json(path)
    if isinstance(d, Mapping) and d.get("format") == ARTIFACT_FORMAT:
        return artifact_from_json(d)
    if isinstance(d, Mapping) and {"s", "g", "graph"} <= d.keys():
        return build_sum_gadget(int(d["s"]), int(d["g"]))
    return graph_from_json(d)
