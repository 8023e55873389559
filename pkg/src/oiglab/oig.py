"""One-inclusion graphs, realizable and agnostic.

A vertex is a label pattern on the sample. A hyperedge is a pair
``(hole, context)``: the pattern with coordinate ``hole`` erased. It is
incident to every vertex that agrees with the context off the hole. Size-1
hyperedges (self-loops) are kept, so every realizable vertex has degree n.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .classes import HypothesisClass, check_sample, restrict
from .exceptions import CapExceededError, InvalidClassError, OIGError

REALIZABLE = "realizable"
AGNOSTIC = "agnostic"


@dataclass(frozen=True)
class Hyperedge:
    hole: int
    context: tuple
    incident: tuple

    @property
    def is_loop(self) -> bool:
        return len(self.incident) == 1


@dataclass(frozen=True)
class OneInclusionGraph:
    mode: str
    n: int
    vertices: tuple
    edges: tuple
    credits: tuple
    num_labels: int
    sample: tuple | None = field(default=None, compare=False)

    @cached_property
    def index(self) -> dict:
        return {v: k for k, v in enumerate(self.vertices)}

    @cached_property
    def incidence(self) -> tuple:
        """Edge indices incident to each vertex, in edge order."""
        inc = [[] for _ in self.vertices]
        for e, edge in enumerate(self.edges):
            for v in edge.incident:
                inc[v].append(e)
        return tuple(tuple(x) for x in inc)

    @cached_property
    def edge_index(self) -> dict:
        return {(e.hole, e.context): k for k, e in enumerate(self.edges)}

    @property
    def class_patterns(self) -> tuple:
        """``H|_S``: all vertices (realizable) or the credit-0 ones (agnostic)."""
        return tuple(v for v, c in zip(self.vertices, self.credits) if c == 0)

    def degree(self, v: int) -> int:
        return len(self.incidence[v])

    def degrees(self) -> list:
        return [len(x) for x in self.incidence]

    def key(self):
        """Hashable structural key (same key => same graph)."""
        return (self.mode, self.n, self.vertices, self.credits, self.num_labels)

    def __len__(self):
        return len(self.vertices)


def _edges_for(vertices, n):
    groups = {}
    for k, v in enumerate(vertices):
        for i in range(n):
            groups.setdefault((i, v[:i] + v[i + 1:]), []).append(k)
    return tuple(Hyperedge(i, ctx, tuple(sorted(inc)))
                 for (i, ctx), inc in sorted(groups.items()))


def build_oig(hclass: HypothesisClass, S) -> OneInclusionGraph:
    """Realizable one-inclusion graph of ``H|_S``."""
    S = check_sample(hclass, S)
    vertices = restrict(hclass, S)
    if not vertices:
        raise InvalidClassError("empty restriction")
    n = len(S)
    g = OneInclusionGraph(REALIZABLE, n, vertices, _edges_for(vertices, n),
                          (0,) * len(vertices), hclass.num_labels, S)
    assert all(d == n for d in g.degrees()), "degree law violated"
    return g


def hamming_credits(vertices: np.ndarray, patterns: np.ndarray, chunk: int = 65536) -> np.ndarray:
    """Minimum Hamming distance from each row of ``vertices`` to ``patterns``."""
    out = np.empty(len(vertices), dtype=np.int64)
    for a in range(0, len(vertices), chunk):
        block = vertices[a:a + chunk]
        dist = (block[:, None, :] != patterns[None, :, :]).sum(axis=2)
        out[a:a + chunk] = dist.min(axis=1)
    return out


def build_agnostic_oig(hclass: HypothesisClass, S, cap: int = 10 ** 6) -> OneInclusionGraph:
    """Agnostic graph on all of ``Y^n`` with Hamming credits to ``H|_S``."""
    S = check_sample(hclass, S)
    n, L = len(S), hclass.num_labels
    if L ** n > cap:
        raise CapExceededError(f"|Y|^n = {L ** n} exceeds cap {cap}")
    patterns = restrict(hclass, S)
    vertices = tuple(itertools.product(range(L), repeat=n))
    weights = [L ** (n - 1 - j) for j in range(n)]
    edges = []
    for i in range(n):
        for ctx in itertools.product(range(L), repeat=n - 1):
            base = sum(c * w for c, w in zip(ctx[:i], weights[:i])) \
                + sum(c * w for c, w in zip(ctx[i:], weights[i + 1:]))
            edges.append(Hyperedge(i, ctx, tuple(base + y * weights[i] for y in range(L))))
    edges.sort(key=lambda e: (e.hole, e.context))
    credits = hamming_credits(np.array(vertices, dtype=np.int64).reshape(len(vertices), n),
                              np.array(patterns, dtype=np.int64).reshape(len(patterns), n))
    return OneInclusionGraph(AGNOSTIC, n, vertices, tuple(edges),
                             tuple(int(c) for c in credits), L, S)


def induced_subgraph(g: OneInclusionGraph, keep) -> OneInclusionGraph:
    """Vertex-induced substructure; incidences intersected, empty edges dropped."""
    keep = sorted(set(keep))
    remap = {old: new for new, old in enumerate(keep)}
    edges = []
    for e in g.edges:
        inc = tuple(remap[v] for v in e.incident if v in remap)
        if inc:
            edges.append(Hyperedge(e.hole, e.context, inc))
    return OneInclusionGraph(g.mode, g.n, tuple(g.vertices[v] for v in keep), tuple(edges),
                             tuple(g.credits[v] for v in keep), g.num_labels, g.sample)


@dataclass(frozen=True)
class BipartiteView:
    left: tuple
    right: tuple
    adjacency: tuple  # left node -> incident right nodes

    def left_degrees(self):
        return [len(a) for a in self.adjacency]

    def right_degrees(self):
        deg = [0] * len(self.right)
        for adj in self.adjacency:
            for v in adj:
                deg[v] += 1
        return deg


def bipartite_view(g: OneInclusionGraph) -> BipartiteView:
    return BipartiteView(tuple(range(len(g.edges))), tuple(range(len(g.vertices))),
                         tuple(e.incident for e in g.edges))


# -- interchange ---------------------------------------------------------

def to_dict(g: OneInclusionGraph) -> dict:
    d = {
        "mode": g.mode,
        "n": g.n,
        "vertices": [list(v) for v in g.vertices],
        "edges": [{"hole": e.hole, "context": list(e.context), "incident": list(e.incident)}
                  for e in g.edges],
        "credits": list(g.credits),
        "num_labels": g.num_labels,
    }
    if g.sample is not None:
        d["sample"] = list(g.sample)
    return d


def from_dict(d: dict) -> OneInclusionGraph:
    try:
        mode, n = d["mode"], int(d["n"])
        vertices = tuple(tuple(int(y) for y in v) for v in d["vertices"])
        edges = tuple(Hyperedge(int(e["hole"]), tuple(int(y) for y in e["context"]),
                                tuple(int(v) for v in e["incident"])) for e in d["edges"])
        credits = tuple(int(c) for c in d.get("credits", [0] * len(vertices)))
    except (KeyError, TypeError, ValueError) as exc:
        raise OIGError(f"malformed graph document: {exc}") from None
    if mode not in (REALIZABLE, AGNOSTIC):
        raise OIGError(f"unknown mode {mode!r}")
    if len(credits) != len(vertices):
        raise OIGError("credits must have one entry per vertex")
    for e in edges:
        if not e.incident or any(not (0 <= v < len(vertices)) for v in e.incident):
            raise OIGError("edge incidence refers to unknown vertices")
    num_labels = d.get("num_labels")
    if num_labels is None:
        num_labels = 1 + max((y for v in vertices for y in v), default=0)
    sample = d.get("sample")
    return OneInclusionGraph(mode, n, vertices, edges, credits, int(num_labels),
                             tuple(sample) if sample is not None else None)


def _fmt(v) -> str:
    return "".join(map(str, v)) if all(y < 10 for y in v) else ",".join(map(str, v))


def to_dot(g: OneInclusionGraph) -> str:
    lines = ["graph oig {"]
    for k, v in enumerate(g.vertices):
        label = _fmt(v)
        if g.mode == AGNOSTIC:
            label += f" ({g.credits[k]})"
        lines.append(f'  v{k} [label="{label}"];')
    for k, e in enumerate(g.edges):
        tag = f"e{k}: hole {e.hole}"
        if len(e.incident) == 1:
            v = e.incident[0]
            lines.append(f'  v{v} -- v{v} [label="{tag}"];')
        elif len(e.incident) == 2:
            a, b = e.incident
            lines.append(f'  v{a} -- v{b} [label="{tag}"];')
        else:
            lines.append(f'  e{k} [shape=point, xlabel="{tag}"];')
            for v in e.incident:
                lines.append(f"  e{k} -- v{v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export(g: OneInclusionGraph, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(to_dict(g))
    if fmt == "dot":
        return to_dot(g)
    raise OIGError(f"unknown format {fmt!r} (expected dot or json)")


def import_json(text: str) -> OneInclusionGraph:
    try:
        return from_dict(json.loads(text))
    except json.JSONDecodeError as exc:
        raise OIGError(f"invalid JSON: {exc}") from None
