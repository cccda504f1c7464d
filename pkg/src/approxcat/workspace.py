"""Workspace files: a field, a quiver, and named representations, morphisms and arrows.

A workspace is one JSON document::

    {
      "format_version": 1,
      "field": {"kind": "prime", "p": 2},
      "quiver": {"vertices": [1, 2], "arrows": [["a1", 1, 2]]},
      "reps": {"M": {"dims": {"1": 1, "2": 1}, "maps": {"a1": [[1]]}}},
      "morphisms": {"f": {"dom": "S(2)", "cod": "M", "comps": {"2": [[1]]}}},
      "arrows": {"p": "cover(S(1))"},
      "caps": {"bet_enumeration_cap": 64, "probe_sum_cap": 10}
    }

Wherever a representation is expected, an expression may be used: a name from
``reps``, S(v), P(v), I(v), rad(X), top(X), tau(X), or sums X+Y.  Arrow
expressions are names from ``arrows`` or ``morphisms``, 1(X), cover(X) and
envelope(X).
"""

from __future__ import annotations

import copy
import hashlib
import json
import re
from dataclasses import dataclass, field as dc_field
from pathlib import Path

from .exactlin import ContractViolation, Field, Matrix
from .quivrep import (
    Arrow,
    Quiver,
    Rep,
    RepMorphism,
    direct_sum,
    happel_unger_quiver,
    injective,
    injective_envelope,
    linear_quiver,
    probe_objects,
    projective,
    projective_cover,
    radical,
    simple,
    tau,
    top,
)
from .serialize import matrix_from_json, quiver_to_json

FORMAT_VERSION = 1
DEFAULT_CAPS = {"bet_enumeration_cap": 64, "probe_sum_cap": 10}


class WorkspaceError(ContractViolation):
    pass


@dataclass
class Workspace:
    field: Field
    quiver: Quiver
    reps: dict = dc_field(default_factory=dict)
    morphisms: dict = dc_field(default_factory=dict)
    arrows: dict = dc_field(default_factory=dict)
    caps: dict = dc_field(default_factory=lambda: dict(DEFAULT_CAPS))
    source: dict = dc_field(default_factory=dict)

    @property
    def digest(self) -> str:
        blob = json.dumps(self.source, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
        return hashlib.sha256(blob.encode("utf-8")).hexdigest()

    def vertex(self, token: str):
        for v in self.quiver.vertices:
            if str(v) == token:
                return v
        raise WorkspaceError(f"unknown vertex {token!r}")

    def rep(self, expr: str) -> Rep:
        return _RepParser(self, expr).parse()

    def arrow(self, expr: str) -> RepMorphism:
        expr = expr.strip()
        if expr in self.arrows:
            return self.arrows[expr]
        if expr in self.morphisms:
            return self.morphisms[expr]
        m = re.fullmatch(r"(1|id|cover|envelope)\((.*)\)", expr)
        if not m:
            raise WorkspaceError(f"unresolved arrow {expr!r}")
        kind, inner = m.group(1), self.rep(m.group(2))
        if kind in ("1", "id"):
            return RepMorphism.identity(inner)
        if kind == "cover":
            return projective_cover(inner).deflation
        return injective_envelope(inner).inflation

    def probes(self, which: str = "default") -> list[Rep]:
        base = probe_objects(self.quiver, self.field, self.caps["probe_sum_cap"])
        if which == "default":
            return base
        if which == "all":
            extra = [r for r in self.reps.values() if not r.is_zero() and r not in base]
            return base + extra
        return [self.rep(x) for x in _split_top_level(which)]


def _split_top_level(s: str) -> list[str]:
    out, depth, cur = [], 0, ""
    for ch in s:
        if ch == "," and depth == 0:
            out.append(cur.strip())
            cur = ""
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur += ch
    if cur.strip():
        out.append(cur.strip())
    return out


class _RepParser:
    _token = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_']*|\d+|\(|\)|\+)")

    def __init__(self, ws: Workspace, text: str):
        self.ws, self.text = ws, text
        self.toks, pos = [], 0
        text = text.rstrip()
        while pos < len(text):
            m = self._token.match(text, pos)
            if not m:
                raise WorkspaceError(f"cannot parse representation expression {self.text!r} at column {pos + 1}")
            self.toks.append(m.group(1))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, want=None):
        t = self.peek()
        if t is None or (want is not None and t != want):
            raise WorkspaceError(f"malformed representation expression {self.text!r}")
        self.i += 1
        return t

    def parse(self) -> Rep:
        r = self.expr()
        if self.peek() is not None:
            raise WorkspaceError(f"trailing input in representation expression {self.text!r}")
        return r

    def expr(self) -> Rep:
        parts = [self.term()]
        while self.peek() == "+":
            self.take("+")
            parts.append(self.term())
        return parts[0] if len(parts) == 1 else direct_sum(parts).rep

    def term(self) -> Rep:
        t = self.take()
        ws = self.ws
        if t == "(":
            r = self.expr()
            self.take(")")
            return r
        if t in ("S", "P", "I") and self.peek() == "(":
            self.take("(")
            v = ws.vertex(self.take())
            self.take(")")
            return {"S": simple, "P": projective, "I": injective}[t](ws.quiver, ws.field, v)
        if t in ("rad", "top", "tau") and self.peek() == "(":
            self.take("(")
            inner = self.expr()
            self.take(")")
            if t == "rad":
                return radical(inner).dom.relabel(f"rad({inner.label})")
            if t == "top":
                return top(inner).cod
            return tau(inner)
        if t in ws.reps:
            return ws.reps[t]
        raise WorkspaceError(f"unresolved representation {t!r} in {self.text!r}")


# -- loading ----------------------------------------------------------------

def _field_from_json(data) -> Field:
    if isinstance(data, str):
        m = re.fullmatch(r"F(\d+)", data)
        if m:
            return Field.prime(int(m.group(1)))
        if data in ("Q", "rational"):
            return Field.rationals()
    elif isinstance(data, dict):
        if data.get("kind") == "prime":
            return Field.prime(data.get("p"))
        if data.get("kind") == "rational":
            return Field.rationals()
    raise WorkspaceError(f"field: expected {{'kind': 'prime', 'p': p}} or {{'kind': 'rational'}}, got {data!r}")


def _quiver_from_json(data) -> Quiver:
    if not isinstance(data, dict) or "vertices" not in data:
        raise WorkspaceError("quiver: expected an object with 'vertices' and 'arrows'")
    arrows = []
    for k, a in enumerate(data.get("arrows", [])):
        if isinstance(a, dict):
            arrows.append(Arrow(a.get("name"), a.get("source"), a.get("target")))
        elif isinstance(a, list) and len(a) == 3:
            arrows.append(Arrow(*a))
        else:
            raise WorkspaceError(f"quiver: arrow #{k} must be [name, source, target]")
    try:
        return Quiver(tuple(data["vertices"]), tuple(arrows))
    except ContractViolation as e:
        raise WorkspaceError(f"quiver: {e}") from None


def _vertex_key(q: Quiver, key: str, where: str):
    for v in q.vertices:
        if str(v) == str(key):
            return v
    raise WorkspaceError(f"{where}: unknown vertex {key!r}")


def _rep_from_json(ws: Workspace, name: str, data) -> Rep:
    q, F = ws.quiver, ws.field
    if isinstance(data, str):
        return ws.rep(data).relabel(name)
    if not isinstance(data, dict):
        raise WorkspaceError(f"rep {name}: expected an object or an expression string")
    dims = {}
    for k, d in (data.get("dims") or {}).items():
        if not isinstance(d, int) or isinstance(d, bool) or d < 0:
            raise WorkspaceError(f"rep {name}: dimension at vertex {k} must be a non-negative integer")
        dims[_vertex_key(q, k, f"rep {name}")] = d
    dv = tuple(dims.get(v, 0) for v in q.vertices)
    maps = data.get("maps") or {}
    ms = []
    for (s, t), a in zip(q.ends, q.arrows):
        where = f"rep {name}, arrow {a.name}"
        if a.name in maps:
            ms.append(matrix_from_json(F, maps[a.name], dv[t], dv[s], where))
        else:
            ms.append(Matrix.zeros(F, dv[t], dv[s]))
    unknown = set(maps) - {a.name for a in q.arrows}
    if unknown:
        raise WorkspaceError(f"rep {name}: unknown arrows {sorted(unknown)}")
    return Rep(q, F, dv, tuple(ms), name)


def _morphism_from_json(ws: Workspace, name: str, data) -> RepMorphism:
    if not isinstance(data, dict) or "dom" not in data or "cod" not in data:
        raise WorkspaceError(f"morphism {name}: expected an object with 'dom', 'cod' and 'comps'")
    dom, cod = ws.rep(data["dom"]), ws.rep(data["cod"])
    q, F = ws.quiver, ws.field
    comps_in = data.get("comps") or {}
    given = {_vertex_key(q, k, f"morphism {name}"): v for k, v in comps_in.items()}
    comps = []
    for i, v in enumerate(q.vertices):
        where = f"morphism {name}, vertex {v}"
        if v in given:
            comps.append(matrix_from_json(F, given[v], cod.dims[i], dom.dims[i], where))
        else:
            comps.append(Matrix.zeros(F, cod.dims[i], dom.dims[i]))
    try:
        return RepMorphism(dom, cod, tuple(comps))
    except ContractViolation as e:
        raise WorkspaceError(f"morphism {name}: {e}") from None


def from_dict(data: dict) -> Workspace:
    if not isinstance(data, dict):
        raise WorkspaceError("workspace must be a JSON object")
    version = data.get("format_version", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise WorkspaceError(f"unsupported format_version {version!r} (this build reads {FORMAT_VERSION})")
    unknown = set(data) - {"format_version", "field", "quiver", "reps", "morphisms", "arrows", "caps"}
    if unknown:
        raise WorkspaceError(f"unknown top-level keys {sorted(unknown)}")
    F = _field_from_json(data.get("field", {"kind": "prime", "p": 2}))
    q = _quiver_from_json(data.get("quiver"))
    caps = dict(DEFAULT_CAPS)
    for k, v in (data.get("caps") or {}).items():
        if k not in DEFAULT_CAPS:
            raise WorkspaceError(f"caps: unknown cap {k!r}")
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise WorkspaceError(f"caps: {k} must be a non-negative integer")
        caps[k] = v
    ws = Workspace(F, q, caps=caps, source=copy.deepcopy(data))
    # reps may refer to earlier reps through expressions, so keep file order
    for name, r in (data.get("reps") or {}).items():
        try:
            ws.reps[name] = _rep_from_json(ws, name, r)
        except WorkspaceError:
            raise
        except ContractViolation as e:
            raise WorkspaceError(f"rep {name}: {e}") from None
    for name, m in (data.get("morphisms") or {}).items():
        try:
            ws.morphisms[name] = _morphism_from_json(ws, name, m)
        except WorkspaceError:
            raise
        except ContractViolation as e:
            raise WorkspaceError(f"morphism {name}: {e}") from None
    for name, a in (data.get("arrows") or {}).items():
        expr = a.get("morphism") if isinstance(a, dict) else a
        if not isinstance(expr, str):
            raise WorkspaceError(f"arrow {name}: expected an arrow expression string")
        try:
            ws.arrows[name] = ws.arrow(expr)
        except ContractViolation as e:
            raise WorkspaceError(f"arrow {name}: {e}") from None
    return ws


def builtin_source(name: str) -> dict:
    if name == "a2":
        q = linear_quiver(2)
        return {"format_version": 1, "field": {"kind": "prime", "p": 2}, "quiver": quiver_to_json(q),
                "reps": {}, "morphisms": {}, "arrows": {"p": "cover(S(1))"}, "caps": dict(DEFAULT_CAPS)}
    if name == "happel-unger":
        q = happel_unger_quiver()
        return {"format_version": 1, "field": {"kind": "prime", "p": 2}, "quiver": quiver_to_json(q),
                "reps": {"T1": "P(1)+P(3)+tau(S(2))", "T2": "tau(T1)"}, "morphisms": {}, "arrows": {},
                "caps": dict(DEFAULT_CAPS)}
    raise WorkspaceError(f"unknown built-in workspace {name!r} (available: a2, happel-unger)")


def load(path: str) -> Workspace:
    """Load and validate a workspace file, or a built-in template named ``builtin:<name>``."""
    if path.startswith("builtin:"):
        return from_dict(builtin_source(path.split(":", 1)[1]))
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as e:
        raise WorkspaceError(f"cannot read workspace {path}: {e.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise WorkspaceError(f"{path}: parse error at line {e.lineno}, column {e.colno}: {e.msg}") from None
    return from_dict(data)
