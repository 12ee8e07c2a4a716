"""The ``.scx`` interchange format and JSON report output.

An ``.scx`` file is a JSON object::

    {"format": "scx", "version": 1,
     "vertices": ["a", "b", 3],
     "maximal_simplices": [["a", "b"], ["b", 3]],
     "actions": {"T": {"generators": [{"a": "b", "b": "a"}]}},
     "subcomplexes": {"N": [["a"], [3]]}}

Vertices are JSON strings or integers.  Generators list only moved vertices.
Since JSON object keys are strings, an integer vertex is referenced in a
generator by its decimal string.  ``actions`` and ``subcomplexes`` are optional.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .complex import (ComplexError, GroupAction, NonSimplicialMapError, SimplicialComplex,
                      vertex_key, vertex_label)

FORMAT_VERSION = 1


class ScxError(ValueError):
    """Malformed ``.scx`` input; the message starts with the offending location."""


@dataclass
class ScxData:
    complex: SimplicialComplex
    actions: dict = field(default_factory=dict)         # name -> GroupAction
    subcomplexes: dict = field(default_factory=dict)    # name -> SimplicialComplex

    def action(self, name: str | None = None) -> GroupAction:
        if name is None:
            if not self.actions:
                return GroupAction.trivial(self.complex)
            name = sorted(self.actions)[0]
        if name not in self.actions:
            raise ScxError(f"actions: no action named {name!r} (have {sorted(self.actions)})")
        return self.actions[name]

    def subcomplex(self, name: str) -> SimplicialComplex:
        if name not in self.subcomplexes:
            raise ScxError(f"subcomplexes: no subcomplex named {name!r} (have {sorted(self.subcomplexes)})")
        return self.subcomplexes[name]


def _vertex(raw, where: str):
    if isinstance(raw, bool) or not isinstance(raw, (str, int)):
        raise ScxError(f"{where}: vertex must be a string or integer, got {raw!r}")
    return raw


def parse_scx(text: str, source: str = "<string>") -> ScxData:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScxError(f"{source}:{exc.lineno}:{exc.colno}: malformed JSON: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise ScxError(f"{source}: top level must be an object")
    if doc.get("format", "scx") != "scx":
        raise ScxError(f"{source}: format: expected 'scx'")
    if "vertices" not in doc or "maximal_simplices" not in doc:
        raise ScxError(f"{source}: missing 'vertices' or 'maximal_simplices'")
    raw_vs = doc["vertices"]
    if not isinstance(raw_vs, list):
        raise ScxError(f"{source}: vertices: expected a list")
    vertices = [_vertex(v, f"{source}: vertices[{i}]") for i, v in enumerate(raw_vs)]
    declared = set(vertices)
    if len(declared) != len(vertices):
        raise ScxError(f"{source}: vertices: duplicate vertex")
    by_key = {str(v): v for v in vertices}
    if len(by_key) != len(vertices):
        raise ScxError(f"{source}: vertices: an integer and a string vertex share the name")

    def simplex_list(raw, where):
        if not isinstance(raw, list):
            raise ScxError(f"{where}: expected a list of simplices")
        out = []
        for i, s in enumerate(raw):
            w = f"{where}[{i}]"
            if not isinstance(s, list) or not s:
                raise ScxError(f"{w}: simplex must be a non-empty list")
            s = [_vertex(v, w) for v in s]
            for v in s:
                if v not in declared:
                    raise ScxError(f"{w}: unknown vertex {v!r}")
            if len(set(s)) != len(s):
                raise ScxError(f"{w}: repeated vertex")
            out.append(frozenset(s))
        return out

    K = SimplicialComplex.build(vertices, simplex_list(doc["maximal_simplices"],
                                                       f"{source}: maximal_simplices"))
    subs = {}
    for name, raw in sorted((doc.get("subcomplexes") or {}).items()):
        where = f"{source}: subcomplexes.{name}"
        simplices = simplex_list(raw, where)
        for s in simplices:
            if s not in K.simplices:
                raise ScxError(f"{where}: {K._fmt(s)} is not a simplex of the complex")
        subs[name] = SimplicialComplex.build((), simplices)
    actions = {}
    for name, raw in sorted((doc.get("actions") or {}).items()):
        where = f"{source}: actions.{name}"
        gens_raw = raw.get("generators") if isinstance(raw, dict) else None
        if not isinstance(gens_raw, list):
            raise ScxError(f"{where}: expected {{'generators': [...]}}")
        gens = []
        for i, g in enumerate(gens_raw):
            w = f"{where}.generators[{i}]"
            if not isinstance(g, dict):
                raise ScxError(f"{w}: expected an object mapping vertices to vertices")
            m = {v: v for v in vertices}
            for k, val in g.items():
                if k not in by_key:
                    raise ScxError(f"{w}: unknown vertex {k!r}")
                val = _vertex(val, w)
                if val not in declared:
                    raise ScxError(f"{w}: unknown image vertex {val!r}")
                m[by_key[k]] = val
            gens.append(m)
        try:
            actions[name] = GroupAction(K, gens)
        except NonSimplicialMapError as exc:
            raise ScxError(f"{where}: {exc} (simplex {K._fmt(exc.simplex)})") from None
        except ComplexError as exc:
            raise ScxError(f"{where}: {exc}") from None
    return ScxData(K, actions, subs)


def read_scx(path) -> ScxData:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ScxError(f"{p}: cannot read: {exc.strerror}") from None
    return parse_scx(text, str(p))


def _out_vertex(v):
    return v if isinstance(v, (str, int)) and not isinstance(v, bool) else vertex_label(v)


def scx_document(K: SimplicialComplex, actions: dict | None = None, subcomplexes: dict | None = None) -> dict:
    """JSON-ready document; non-primitive vertices are written by their labels."""
    names = {v: _out_vertex(v) for v in K.vertices}
    if len(set(map(str, names.values()))) != len(names):
        raise ScxError("vertex labels collide after serialisation")

    def simplices(C):
        out = [sorted((names[v] for v in m), key=vertex_key) for m in C.maximal_simplices]
        return sorted(out, key=lambda s: (len(s), [vertex_key(v) for v in s]))

    doc = {"format": "scx", "version": FORMAT_VERSION,
           "vertices": sorted(names.values(), key=vertex_key),
           "maximal_simplices": simplices(K)}
    if actions:
        doc["actions"] = {}
        for name, act in sorted(actions.items()):
            gens = []
            for g in act.generator_indices():
                m = act.vertex_map(g)
                gens.append({str(names[v]): names[m[v]] for v in K.vertices if m[v] != v})
            doc["actions"][name] = {"generators": gens}
    if subcomplexes:
        doc["subcomplexes"] = {name: simplices(C) for name, C in sorted(subcomplexes.items())}
    return doc


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=1, ensure_ascii=False) + "\n"


def write_scx(path, K: SimplicialComplex, actions: dict | None = None, subcomplexes: dict | None = None) -> None:
    Path(path).write_text(dumps(scx_document(K, actions, subcomplexes)), encoding="utf-8")


def write_report(path, report) -> None:
    """Stable-ordered JSON; ``report`` is a dict or has ``to_json()``."""
    doc = report.to_json() if hasattr(report, "to_json") else report
    Path(path).write_text(dumps(doc), encoding="utf-8")
