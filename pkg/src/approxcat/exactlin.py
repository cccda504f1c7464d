"""Exact dense linear algebra over prime fields Z/p and the rationals.

Scalars are plain Python ints in ``range(p)`` for a prime field and
``fractions.Fraction`` for the rationals.  Matrices are immutable and carry
their field; every operation returns canonical representatives so that
structural equality is mathematical equality.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence


class ContractViolation(ValueError):
    """An operation was called outside of its preconditions."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class Field:
    """A computable exact field: ``Field(p)`` is Z/p, ``Field(None)`` is Q."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if not isinstance(self.p, int) or not (2 <= self.p < 1 << 16) or not _is_prime(self.p):
                raise ContractViolation(f"field characteristic must be a prime below 2^16, got {self.p!r}")

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls(p)

    @classmethod
    def rationals(cls) -> "Field":
        return cls(None)

    @property
    def is_finite(self) -> bool:
        return self.p is not None

    @property
    def order(self) -> int | None:
        return self.p

    def __str__(self) -> str:
        return f"F{self.p}" if self.p is not None else "Q"

    def __call__(self, x) -> int | Fraction:
        """Canonical representative of ``x`` (an int, Fraction or "n/d" string)."""
        if isinstance(x, str):
            x = Fraction(x)
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return 1 / Fraction(x)
        return pow(x, -1, self.p)

    def elements(self) -> list:
        if self.p is None:
            raise ContractViolation("cannot enumerate the rationals")
        return list(range(self.p))

    def random_element(self, rng: random.Random, height: int = 3):
        if self.p is not None:
            return rng.randrange(self.p)
        return Fraction(rng.randint(-height, height), rng.randint(1, height))

    def serialize(self, x):
        """JSON form of a scalar: int for Z/p (and integral rationals), "n/d" otherwise."""
        if self.p is None and Fraction(x).denominator != 1:
            return f"{x.numerator}/{x.denominator}"
        return int(x)


def _mul_add_row(p, target, factor, source):
    # target - factor * source
    if p is None:
        return [x - factor * y for x, y in zip(target, source)]
    return [(x - factor * y) % p for x, y in zip(target, source)]


def _rref_rows(F: Field, rows: list[list], ncols: int) -> tuple[list[list], list[int]]:
    """In-place reduced row echelon form of a list of rows; returns (rows, pivots)."""
    p = F.p
    nrows = len(rows)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = F.inv(rows[r][c])
        if p is None:
            rows[r] = [x * inv for x in rows[r]]
        else:
            rows[r] = [x * inv % p for x in rows[r]]
        pr = rows[r]
        for i in range(nrows):
            if i != r and rows[i][c]:
                rows[i] = _mul_add_row(p, rows[i], rows[i][c], pr)
        pivots.append(c)
        r += 1
    return rows, pivots


@dataclass(frozen=True)
class Matrix:
    """An immutable rows x cols matrix with row-major canonical entries."""

    field: Field
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0 or len(self.entries) != self.rows * self.cols:
            raise ContractViolation(
                f"matrix of shape {self.rows}x{self.cols} needs {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    def __hash__(self):
        return self._hash

    @cached_property
    def _hash(self):
        return hash((self.field, self.rows, self.cols, self.entries))

    # -- constructors -----------------------------------------------------
    @classmethod
    def from_rows(cls, F: Field, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise ContractViolation("column count is ambiguous for a matrix with no rows")
            cols = len(rows[0])
        for r in rows:
            if len(r) != cols:
                raise ContractViolation("ragged matrix rows")
        return cls(F, len(rows), cols, tuple(F(x) for r in rows for x in r))

    @classmethod
    def from_columns(cls, F: Field, columns: Sequence[Sequence], rows: int) -> "Matrix":
        return cls.from_rows(F, [list(c) for c in columns], rows).T if columns else cls.zeros(F, rows, 0)

    @classmethod
    def zeros(cls, F: Field, rows: int, cols: int) -> "Matrix":
        return cls(F, rows, cols, (F.zero,) * (rows * cols))

    @classmethod
    def identity(cls, F: Field, n: int) -> "Matrix":
        one, zero = F.one, F.zero
        return cls(F, n, n, tuple(one if i == j else zero for i in range(n) for j in range(n)))

    @classmethod
    def random(cls, F: Field, rows: int, cols: int, rng: random.Random) -> "Matrix":
        return cls(F, rows, cols, tuple(F.random_element(rng) for _ in range(rows * cols)))

    # -- access -----------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return self.entries[j::self.cols] if self.cols else ()

    def to_rows(self) -> list[list]:
        return [list(self.row(i)) for i in range(self.rows)]

    def columns(self) -> list[tuple]:
        return [self.col(j) for j in range(self.cols)]

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __repr__(self) -> str:
        return f"Matrix({self.field}, {self.to_rows()!r})" if self.rows else f"Matrix({self.field}, 0x{self.cols})"

    # -- arithmetic -------------------------------------------------------
    @cached_property
    def T(self) -> "Matrix":
        return Matrix(self.field, self.cols, self.rows,
                      tuple(self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)))

    def _check_same(self, other: "Matrix"):
        if self.field != other.field or self.shape != other.shape:
            raise ContractViolation(f"shape/field mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        F = self.field
        return Matrix(F, self.rows, self.cols, tuple(F(x + y) for x, y in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        F = self.field
        return Matrix(F, self.rows, self.cols, tuple(F(x - y) for x, y in zip(self.entries, other.entries)))

    def __neg__(self) -> "Matrix":
        F = self.field
        return Matrix(F, self.rows, self.cols, tuple(F(-x) for x in self.entries))

    def scale(self, c) -> "Matrix":
        F = self.field
        c = F(c)
        return Matrix(F, self.rows, self.cols, tuple(F(c * x) for x in self.entries))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.field != other.field or self.cols != other.rows:
            raise ContractViolation(f"cannot multiply {self.shape} by {other.shape}")
        F = self.field
        p = F.p
        a = self.to_rows()
        bcols = other.columns()
        out = []
        for r in a:
            for c in bcols:
                s = sum(x * y for x, y in zip(r, c) if x and y)
                out.append(s % p if p is not None else Fraction(s))
        return Matrix(F, self.rows, other.cols, tuple(out))

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.cols:
            raise ContractViolation(f"vector of length {len(v)} for a {self.shape} matrix")
        F = self.field
        return tuple(F(sum(x * y for x, y in zip(self.row(i), v))) for i in range(self.rows))

    # -- block assembly ---------------------------------------------------
    @staticmethod
    def hstack(F: Field, blocks: Sequence["Matrix"], rows: int | None = None) -> "Matrix":
        if not blocks:
            return Matrix.zeros(F, rows or 0, 0)
        r = blocks[0].rows
        if any(b.rows != r for b in blocks):
            raise ContractViolation("hstack row mismatch")
        out = []
        for i in range(r):
            for b in blocks:
                out.extend(b.row(i))
        return Matrix(F, r, sum(b.cols for b in blocks), tuple(out))

    @staticmethod
    def vstack(F: Field, blocks: Sequence["Matrix"], cols: int | None = None) -> "Matrix":
        if not blocks:
            return Matrix.zeros(F, 0, cols or 0)
        c = blocks[0].cols
        if any(b.cols != c for b in blocks):
            raise ContractViolation("vstack column mismatch")
        return Matrix(F, sum(b.rows for b in blocks), c, tuple(x for b in blocks for x in b.entries))

    @staticmethod
    def block_diag(F: Field, blocks: Sequence["Matrix"]) -> "Matrix":
        R = sum(b.rows for b in blocks)
        C = sum(b.cols for b in blocks)
        out = [[F.zero] * C for _ in range(R)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                out[r0 + i][c0:c0 + b.cols] = b.row(i)
            r0 += b.rows
            c0 += b.cols
        return Matrix(F, R, C, tuple(x for r in out for x in r))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix(self.field, len(rows), len(cols), tuple(self[i, j] for i in rows for j in cols))


# -- row reduction --------------------------------------------------------

def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...], int]:
    """Return the reduced row echelon form of ``m``, its pivot columns and its rank."""
    rows, pivots = _rref_rows(m.field, m.to_rows(), m.cols)
    return Matrix(m.field, m.rows, m.cols, tuple(x for r in rows for x in r)), tuple(pivots), len(pivots)


def rank(m: Matrix) -> int:
    return rref(m)[2]


class Subspace:
    """A subspace of F^n held as the RREF of a basis (one basis vector per row).

    Two subspaces are equal exactly when their basis matrices are equal.
    """

    __slots__ = ("field", "ambient_dim", "basis", "pivots")

    def __init__(self, basis: Matrix, pivots: Sequence[int]):
        self.field = basis.field
        self.ambient_dim = basis.cols
        self.basis = basis
        self.pivots = tuple(pivots)

    @classmethod
    def span(cls, F: Field, n: int, vectors: Iterable[Sequence]) -> "Subspace":
        rows = [[F(x) for x in v] for v in vectors]
        for r in rows:
            if len(r) != n:
                raise ContractViolation(f"vector of length {len(r)} in ambient dimension {n}")
        rows, pivots = _rref_rows(F, rows, n)
        rows = rows[:len(pivots)]
        return cls(Matrix(F, len(rows), n, tuple(x for r in rows for x in r)), pivots)

    @classmethod
    def zero(cls, F: Field, n: int) -> "Subspace":
        return cls(Matrix.zeros(F, 0, n), ())

    @classmethod
    def full(cls, F: Field, n: int) -> "Subspace":
        return cls(Matrix.identity(F, n), range(n))

    @property
    def dim(self) -> int:
        return self.basis.rows

    def vectors(self) -> list[tuple]:
        return [self.basis.row(i) for i in range(self.dim)]

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.basis == other.basis

    def __hash__(self):
        return hash(self.basis)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, basis={self.basis.to_rows()})"

    def _check(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim or self.field != other.field:
            raise ContractViolation(f"ambient mismatch {self.ambient_dim} vs {other.ambient_dim}")

    def coords(self, v: Sequence) -> tuple | None:
        """Coordinates of ``v`` in the RREF basis, or None if ``v`` is not in the span."""
        if len(v) != self.ambient_dim:
            raise ContractViolation(f"vector of length {len(v)} in ambient dimension {self.ambient_dim}")
        F = self.field
        c = tuple(F(v[j]) for j in self.pivots)
        recon = [F.zero] * self.ambient_dim
        for ci, i in zip(c, range(self.dim)):
            if ci:
                for j, x in enumerate(self.basis.row(i)):
                    if x:
                        recon[j] += ci * x
        if any(F(r) != F(x) for r, x in zip(recon, v)):
            return None
        return c

    def contains(self, v: Sequence) -> bool:
        return self.coords(v) is not None

    def combination(self, coords: Sequence) -> tuple:
        if len(coords) != self.dim:
            raise ContractViolation("coordinate length mismatch")
        return self.basis.T.apply(coords) if self.dim else (self.field.zero,) * self.ambient_dim

    def issubspace(self, other: "Subspace") -> bool:
        self._check(other)
        return all(other.contains(v) for v in self.vectors())

    __le__ = issubspace

    def __add__(self, other: "Subspace") -> "Subspace":
        return subspace_sum(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return subspace_intersect(self, other)


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    u._check(v)
    return Subspace.span(u.field, u.ambient_dim, u.vectors() + v.vectors())


def subspace_intersect(u: Subspace, v: Subspace) -> Subspace:
    u._check(v)
    F = u.field
    if u.dim == 0 or v.dim == 0:
        return Subspace.zero(F, u.ambient_dim)
    stacked = Matrix.vstack(F, [u.basis, v.basis])
    # (c, d) with c U + d V = 0 gives c U in the intersection
    rel = kernel(stacked.T)
    vecs = []
    for r in rel.vectors():
        c = r[:u.dim]
        vecs.append(u.combination(c))
    return Subspace.span(F, u.ambient_dim, vecs)


def kernel(m: Matrix) -> Subspace:
    """Null space {x : m x = 0} as a subspace of F^cols."""
    F = m.field
    R, pivots, r = rref(m)
    free = [j for j in range(m.cols) if j not in set(pivots)]
    vecs = []
    for f in free:
        v = [F.zero] * m.cols
        v[f] = F.one
        for i, pc in enumerate(pivots):
            v[pc] = F(-R[i, f])
        vecs.append(v)
    return Subspace.span(F, m.cols, vecs)


def image(m: Matrix) -> Subspace:
    """Column space of ``m`` as a subspace of F^rows."""
    return Subspace.span(m.field, m.rows, m.columns())


def solve(m: Matrix, b: Sequence) -> tuple | None:
    """Some x with m x = b (free variables zero in RREF coordinates), or None."""
    if len(b) != m.rows:
        raise ContractViolation(f"right-hand side of length {len(b)} for {m.rows} equations")
    F = m.field
    rows = [list(m.row(i)) + [F(b[i])] for i in range(m.rows)]
    rows, pivots = _rref_rows(F, rows, m.cols + 1)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [F.zero] * m.cols
    for i, pc in enumerate(pivots):
        x[pc] = rows[i][m.cols]
    return tuple(x)


def solve_matrix(m: Matrix, b: Matrix) -> Matrix | None:
    """Some X with m X = b, column by column, or None."""
    cols = []
    for j in range(b.cols):
        x = solve(m, b.col(j))
        if x is None:
            return None
        cols.append(x)
    return Matrix.from_columns(m.field, cols, m.cols)


def inverse(m: Matrix) -> Matrix | None:
    if m.rows != m.cols:
        return None
    return solve_matrix(m, Matrix.identity(m.field, m.rows))


class Quotient(NamedTuple):
    """Projection ambient -> F^dim with kernel ``sub`` and a linear section back."""

    projection: Matrix
    dim: int
    section: Matrix


def _full_quotient(F: Field, sub: Subspace) -> Quotient:
    # complement spanned by the unit vectors at non-pivot columns
    n = sub.ambient_dim
    pivset = set(sub.pivots)
    free = [j for j in range(n) if j not in pivset]
    proj_rows = []
    for j in free:
        row = [F.zero] * n
        row[j] = F.one
        for i, pc in enumerate(sub.pivots):
            row[pc] = F(-sub.basis[i, j])
        proj_rows.append(row)
    proj = Matrix.from_rows(F, proj_rows, n)
    sec = Matrix.from_columns(F, [[F.one if k == j else F.zero for k in range(n)] for j in free], n)
    return Quotient(proj, len(free), sec)


def quotient(ambient: Subspace, sub: Subspace) -> Quotient:
    """Quotient of ``ambient`` by ``sub``; on ``ambient`` the projection kills exactly ``sub``."""
    ambient._check(sub)
    if not sub.issubspace(ambient):
        raise ContractViolation("quotient requires sub to be contained in ambient")
    F = ambient.field
    if ambient.dim == ambient.ambient_dim:
        return _full_quotient(F, sub)
    # work in ambient-basis coordinates, then translate back
    sub_coords = [ambient.coords(v) for v in sub.vectors()]
    q = _full_quotient(F, Subspace.span(F, ambient.dim, sub_coords))
    pick = Matrix.from_rows(F, [[F.one if j == pc else F.zero for j in range(ambient.ambient_dim)]
                                for pc in ambient.pivots], ambient.ambient_dim)
    proj = q.projection @ pick
    sec = ambient.basis.T @ q.section if ambient.dim else Matrix.zeros(F, ambient.ambient_dim, q.dim)
    return Quotient(proj, q.dim, sec)


def preimage(m: Matrix, w: Subspace) -> Subspace:
    """{x : m x in w}."""
    if w.ambient_dim != m.rows:
        raise ContractViolation(f"subspace of F^{w.ambient_dim} for a map into F^{m.rows}")
    F = m.field
    if w.dim == 0:
        return kernel(m)
    ann = kernel(w.basis)  # linear forms vanishing on w
    if ann.dim == 0:
        return Subspace.full(F, m.cols)
    return kernel(ann.basis @ m)
