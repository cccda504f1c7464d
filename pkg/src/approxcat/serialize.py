"""JSON-ready encodings of matrices, representations and morphisms.

Field elements are integers, or "n/d" strings over the rationals.  Matrices
with a zero dimension carry an explicit shape since a nested list cannot.
"""

from __future__ import annotations

from fractions import Fraction

from .exactlin import ContractViolation, Field, Matrix
from .quivrep import Quiver, Rep, RepMorphism


def scalar_to_json(F: Field, x):
    return F.serialize(x)


def scalar_from_json(F: Field, x, where: str = ""):
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise ContractViolation(f"{where}: field elements must be integers or 'n/d' strings, got {x!r}")
    if isinstance(x, str):
        if F.is_finite:
            raise ContractViolation(f"{where}: fraction strings are only allowed over the rationals")
        try:
            return F(Fraction(x))
        except (ValueError, ZeroDivisionError):
            raise ContractViolation(f"{where}: cannot parse rational {x!r}") from None
    return F(x)


def matrix_to_json(m: Matrix):
    if m.rows == 0 or m.cols == 0:
        return {"rows": m.rows, "cols": m.cols, "entries": []}
    return [[m.field.serialize(x) for x in m.row(i)] for i in range(m.rows)]


def matrix_from_json(F: Field, data, rows: int, cols: int, where: str = "") -> Matrix:
    if isinstance(data, dict):
        r, c = data.get("rows"), data.get("cols")
        if (r, c) != (rows, cols) or data.get("entries", []) != []:
            raise ContractViolation(f"{where}: explicit-shape matrix must be {rows}x{cols} with no entries")
        return Matrix.zeros(F, rows, cols)
    if rows == 0 or cols == 0:
        if data not in ([], [[]]) and not (isinstance(data, list) and all(r == [] for r in data) and len(data) == rows):
            raise ContractViolation(f"{where}: expected an empty {rows}x{cols} matrix")
        return Matrix.zeros(F, rows, cols)
    if not isinstance(data, list) or len(data) != rows or any(not isinstance(r, list) or len(r) != cols for r in data):
        got = f"{len(data)} rows" if isinstance(data, list) else type(data).__name__
        raise ContractViolation(f"{where}: matrix must have shape {rows}x{cols} (got {got})")
    return Matrix.from_rows(F, [[scalar_from_json(F, x, where) for x in r] for r in data], cols)


def rep_to_json(m: Rep) -> dict:
    q = m.quiver
    return {
        "label": m.label,
        "dims": {str(v): d for v, d in zip(q.vertices, m.dims)},
        "maps": {a.name: matrix_to_json(x) for a, x in zip(q.arrows, m.maps)},
    }


def morphism_to_json(f: RepMorphism) -> dict:
    q = f.quiver
    return {
        "dom": f.dom.label or list(f.dom.dims),
        "cod": f.cod.label or list(f.cod.dims),
        "comps": {str(v): matrix_to_json(c) for v, c in zip(q.vertices, f.comps)},
    }


def quiver_to_json(q: Quiver) -> dict:
    return {"vertices": list(q.vertices), "arrows": [[a.name, a.source, a.target] for a in q.arrows]}
