"""Deterministic and fractional orientations of one-inclusion graphs.

An orientation picks one incident vertex per hyperedge; a fractional one puts
a distribution on the incident vertices. In/out degrees are exact Fractions
unless the weights are floats.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from ._validation import as_fraction
from .exceptions import OIGError, OrientationMismatchError
from .oig import OneInclusionGraph

FLOAT_TOL = 1e-9


@dataclass(frozen=True)
class Orientation:
    targets: tuple  # edge index -> vertex index

    @property
    def exact(self) -> bool:
        return True

    def weight(self, g, e, pos):
        return Fraction(int(g.edges[e].incident[pos] == self.targets[e]))

    def to_dict(self):
        return {"type": "det", "targets": list(self.targets)}


@dataclass(frozen=True)
class FractionalOrientation:
    """``weights[e][j]`` is the mass edge ``e`` sends to its ``j``-th incident vertex."""

    weights: tuple
    numeric_mode: str = "exact"

    @property
    def exact(self) -> bool:
        return self.numeric_mode == "exact"

    def weight(self, g, e, pos):
        return self.weights[e][pos]

    def is_deterministic(self) -> bool:
        return all(sum(1 for w in ws if w != 0) == 1 and max(ws) == 1 for ws in self.weights)

    def to_deterministic(self, g) -> Orientation:
        if not self.is_deterministic():
            raise OrientationMismatchError("orientation is not integral")
        return Orientation(tuple(g.edges[e].incident[ws.index(max(ws))]
                                 for e, ws in enumerate(self.weights)))

    def to_dict(self, g):
        rows = []
        for e, ws in enumerate(self.weights):
            row = []
            for v, w in zip(g.edges[e].incident, ws):
                if self.exact:
                    row.append([v, w.numerator, w.denominator])
                else:
                    row.append([v, float(w)])
            rows.append(row)
        return {"type": "frac", "weights": rows}


def as_fractional(g: OneInclusionGraph, o) -> FractionalOrientation:
    if isinstance(o, FractionalOrientation):
        return o
    return FractionalOrientation(tuple(
        tuple(Fraction(int(v == t)) for v in e.incident) for e, t in zip(g.edges, o.targets)))


def check_orientation(g: OneInclusionGraph, o) -> None:
    """Raise :class:`OrientationMismatchError` unless ``o`` fits ``g``."""
    if isinstance(o, Orientation):
        if len(o.targets) != len(g.edges):
            raise OrientationMismatchError(
                f"orientation has {len(o.targets)} targets for {len(g.edges)} edges")
        for e, t in zip(g.edges, o.targets):
            if t not in e.incident:
                raise OrientationMismatchError(f"target {t} not incident to edge {e.hole, e.context}")
        return
    if not isinstance(o, FractionalOrientation):
        raise OrientationMismatchError(f"not an orientation: {type(o).__name__}")
    if len(o.weights) != len(g.edges):
        raise OrientationMismatchError(
            f"orientation has {len(o.weights)} rows for {len(g.edges)} edges")
    for e, ws in zip(g.edges, o.weights):
        if len(ws) != len(e.incident):
            raise OrientationMismatchError("weight row does not match edge incidence")
        if any(w < 0 for w in ws):
            raise OrientationMismatchError("negative weight")
        total = sum(ws)
        if o.exact:
            if total != 1:
                raise OrientationMismatchError(f"weights sum to {total}, not 1")
        elif abs(total - 1) > FLOAT_TOL:
            raise OrientationMismatchError(f"weights sum to {total}, not 1")


def in_degrees(g: OneInclusionGraph, o) -> list:
    check_orientation(g, o)
    zero = Fraction(0) if o.exact else 0.0
    deg = [zero] * len(g.vertices)
    if isinstance(o, Orientation):
        for t in o.targets:
            deg[t] += 1
        return deg
    for e, ws in zip(g.edges, o.weights):
        for v, w in zip(e.incident, ws):
            deg[v] += w
    return deg


def out_degrees(g: OneInclusionGraph, o) -> list:
    return [d - i for d, i in zip(g.degrees(), in_degrees(g, o))]


def in_degree(g, o, v: int):
    return in_degrees(g, o)[v]


def out_degree(g, o, v: int):
    return out_degrees(g, o)[v]


def verify_coorientation(g: OneInclusionGraph, o, alpha) -> bool:
    """``out(v) <= alpha + credit(v)`` for every vertex."""
    alpha = as_fraction(alpha)
    if alpha < 0:
        raise OIGError("alpha must be nonnegative")
    outs = out_degrees(g, o)
    if o.exact:
        return all(out <= alpha + c for out, c in zip(outs, g.credits))
    return all(out <= float(alpha) + c + FLOAT_TOL for out, c in zip(outs, g.credits))


def verify_orientation(g: OneInclusionGraph, o, alpha) -> bool:
    """``in(v) >= max(0, alpha - credit(v))`` for every vertex."""
    alpha = as_fraction(alpha)
    if alpha < 0:
        raise OIGError("alpha must be nonnegative")
    ins = in_degrees(g, o)
    if o.exact:
        return all(i >= max(0, alpha - c) for i, c in zip(ins, g.credits))
    return all(i >= max(0.0, float(alpha) - c) - FLOAT_TOL for i, c in zip(ins, g.credits))


def learner_table(g: OneInclusionGraph, o) -> dict:
    """Map ``(hole, context)`` to the predicted label index, or to a
    ``{label: probability}`` dict for fractional orientations."""
    check_orientation(g, o)
    table = {}
    for k, e in enumerate(g.edges):
        if isinstance(o, Orientation):
            table[(e.hole, e.context)] = g.vertices[o.targets[k]][e.hole]
        else:
            table[(e.hole, e.context)] = {g.vertices[v][e.hole]: w
                                          for v, w in zip(e.incident, o.weights[k])}
    return table


# -- interchange ---------------------------------------------------------

def orientation_to_dict(g, o) -> dict:
    return o.to_dict() if isinstance(o, Orientation) else o.to_dict(g)


def orientation_from_dict(g: OneInclusionGraph, d: dict):
    kind = d.get("type")
    if kind == "det" or (kind == "frac" and "targets" in d):
        o = Orientation(tuple(int(t) for t in d["targets"]))
        check_orientation(g, o)
        return o
    if kind != "frac":
        raise OIGError(f"unknown orientation type {kind!r}")
    rows = d["weights"]
    if len(rows) != len(g.edges):
        raise OrientationMismatchError(f"{len(rows)} weight rows for {len(g.edges)} edges")
    exact = all(len(entry) == 3 for row in rows for entry in row)
    out = []
    for e, row in zip(g.edges, rows):
        ws = [Fraction(0) if exact else 0.0] * len(e.incident)
        for entry in row:
            v = int(entry[0])
            if v not in e.incident:
                raise OrientationMismatchError(f"vertex {v} not incident to edge")
            w = Fraction(int(entry[1]), int(entry[2])) if exact else float(entry[1])
            ws[e.incident.index(v)] += w
        out.append(tuple(ws))
    o = FractionalOrientation(tuple(out), "exact" if exact else "float")
    check_orientation(g, o)
    return o


def dumps(g, o) -> str:
    return json.dumps(orientation_to_dict(g, o))


def loads(g, text: str):
    return orientation_from_dict(g, json.loads(text))
