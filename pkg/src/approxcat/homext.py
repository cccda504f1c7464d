"""Conflations, Ext^1 with realizations, and pushouts of inflations.

Ext(A, B) is presented through the projective cover 0 -> Omega A -> P(A) -> A -> 0
as the cokernel of restriction Hom(P(A), B) -> Hom(Omega A, B).  Classes are
coordinate vectors in a fixed complement; every class can be realized as an
honest short exact sequence and every short exact sequence classified back.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .exactlin import ContractViolation, Field, Matrix, Subspace, quotient, rank, solve
from .quivrep import (
    DirectSum,
    Rep,
    RepMorphism,
    column,
    cokernel_rep,
    direct_sum,
    extend,
    factor_through_mono,
    hom_space,
    kernel_rep,
    projective_cover,
    row,
)


@dataclass(frozen=True)
class Conflation:
    """B --inflation--> C --deflation--> A.  Not validated on construction; see diagnose()."""

    inflation: RepMorphism
    deflation: RepMorphism

    @property
    def left(self) -> Rep:
        return self.inflation.dom

    @property
    def middle(self) -> Rep:
        return self.inflation.cod

    @property
    def right(self) -> Rep:
        return self.deflation.cod

    def diagnose(self) -> str | None:
        ok, msg = is_conflation(self.inflation, self.deflation)
        return None if ok else msg

    def validate(self) -> "Conflation":
        msg = self.diagnose()
        if msg:
            raise ContractViolation(f"not a conflation: {msg}")
        return self


def is_conflation(m: RepMorphism, p: RepMorphism) -> tuple[bool, str]:
    """Check exactness vertex by vertex; the message names the first failure."""
    if m.cod != p.dom:
        return False, "inflation codomain differs from deflation domain"
    q = m.quiver
    for i, v in enumerate(q.vertices):
        rm, rp = rank(m.comps[i]), rank(p.comps[i])
        if rm != m.dom.dims[i]:
            return False, f"inflation not injective at vertex {v!r} (rank {rm} < {m.dom.dims[i]})"
        if rp != p.cod.dims[i]:
            return False, f"deflation not surjective at vertex {v!r} (rank {rp} < {p.cod.dims[i]})"
        if not (p.comps[i] @ m.comps[i]).is_zero():
            return False, f"composite deflation after inflation is nonzero at vertex {v!r}"
        if rm + rp != m.cod.dims[i]:
            return False, f"image differs from kernel at vertex {v!r}"
    return True, "ok"


def split_conflation(a: Rep, b: Rep) -> Conflation:
    s = direct_sum([b, a])
    return Conflation(s.injections[0], s.projections[1])


def retraction(c: Conflation) -> RepMorphism | None:
    """Some r with r @ inflation == 1_B, or None when the conflation does not split."""
    return extend(RepMorphism.identity(c.left), c.inflation)


def is_split(c: Conflation) -> bool:
    return retraction(c) is not None


# -- Ext spaces -----------------------------------------------------------

class ExtSpace:
    def __init__(self, a: Rep, b: Rep):
        if a.quiver != b.quiver or a.field != b.field:
            raise ContractViolation("Ext between representations of different quivers or fields")
        self.A, self.B = a, b
        self.field = F = a.field
        self.cover = cov = projective_cover(a)
        self.omega_hom = H = hom_space(cov.syzygy.rep, b)
        incl = cov.syzygy.inclusion
        restricted = [H.coords(g @ incl) for g in hom_space(cov.rep, b).basis]
        self.restriction_image = Subspace.span(F, H.dim, restricted)
        self._q = quotient(Subspace.full(F, H.dim), self.restriction_image)
        self._omega_cache: dict = {}
        self._rep_cache: dict = {}

    @property
    def dim(self) -> int:
        return self._q.dim

    def __repr__(self):
        return f"Ext({self.A}, {self.B}) [dim {self.dim}]"

    def representative(self, coords: Sequence) -> RepMorphism:
        """A morphism Omega A -> B representing the class."""
        key = tuple(coords)
        hit = self._rep_cache.get(key)
        if hit is None:
            hit = self._rep_cache[key] = self.omega_hom.element(self._q.section.apply(key))
        return hit

    def class_of(self, phi: RepMorphism) -> "ExtClass":
        return ExtClass(self, self._q.projection.apply(self.omega_hom.coords(phi)))

    def zero(self) -> "ExtClass":
        return ExtClass(self, (self.field.zero,) * self.dim)

    def basis(self) -> list["ExtClass"]:
        F = self.field
        return [ExtClass(self, tuple(F.one if i == j else F.zero for i in range(self.dim))) for j in range(self.dim)]

    def element(self, coords: Sequence) -> "ExtClass":
        return ExtClass(self, tuple(self.field(x) for x in coords))

    def elements(self):
        """Every class; finite fields only."""
        F = self.field
        if not F.is_finite:
            raise ContractViolation("cannot enumerate an Ext space over the rationals")
        import itertools
        for c in itertools.product(F.elements(), repeat=self.dim):
            yield ExtClass(self, c)

    def omega_map(self, a: RepMorphism) -> RepMorphism:
        """Chain-map component Omega A' -> Omega A over a: A' -> A, from lifting along the covers."""
        hit = self._omega_cache.get(a)
        if hit is not None:
            return hit
        if a.cod != self.A:
            raise ContractViolation("pullback morphism must land in the first argument of Ext")
        cov, cov2 = self.cover, projective_cover(a.dom)
        g = cov2.free.lift(cov.deflation, a @ cov2.deflation)
        w = cov.syzygy.factor(g @ cov2.syzygy.inclusion)
        self._omega_cache[a] = w
        return w


@lru_cache(maxsize=8192)
def ext_space(a: Rep, b: Rep) -> ExtSpace:
    return ExtSpace(a, b)


@dataclass(frozen=True)
class ExtClass:
    space: ExtSpace
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(self.coords))
        if len(self.coords) != self.space.dim:
            raise ContractViolation(f"class needs {self.space.dim} coordinates, got {len(self.coords)}")

    def __hash__(self):
        return hash((self.space.A, self.space.B, self.coords))

    def __eq__(self, other):
        return (isinstance(other, ExtClass) and self.space.A == other.space.A
                and self.space.B == other.space.B and self.coords == other.coords)

    def _same(self, other):
        if self.space.A != other.space.A or self.space.B != other.space.B:
            raise ContractViolation("classes from different Ext spaces")

    def __add__(self, other: "ExtClass") -> "ExtClass":
        self._same(other)
        F = self.space.field
        return ExtClass(self.space, tuple(F(x + y) for x, y in zip(self.coords, other.coords)))

    def __sub__(self, other: "ExtClass") -> "ExtClass":
        self._same(other)
        F = self.space.field
        return ExtClass(self.space, tuple(F(x - y) for x, y in zip(self.coords, other.coords)))

    def scale(self, c) -> "ExtClass":
        F = self.space.field
        return ExtClass(self.space, tuple(F(c * x) for x in self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def representative(self) -> RepMorphism:
        return self.space.representative(self.coords)


# -- realization and classification ---------------------------------------

def realize(x: ExtClass) -> Conflation:
    """Pushout of the cover sequence Omega A -> P(A) -> A along a representative Omega A -> B."""
    sp = x.space
    cov = sp.cover
    phi = x.representative()
    return pushout_inflation(Conflation(cov.syzygy.inclusion, cov.deflation), phi).conflation


def classify(c: Conflation, space: ExtSpace | None = None) -> ExtClass:
    sp = space or ext_space(c.right, c.left)
    if sp.A != c.right or sp.B != c.left:
        raise ContractViolation("conflation end terms do not match the Ext space")
    cov = sp.cover
    g = cov.free.lift(c.deflation, cov.deflation)
    phi = factor_through_mono(c.inflation, g @ cov.syzygy.inclusion)
    return sp.class_of(phi)


def push_class(x: ExtClass, b: RepMorphism) -> ExtClass:
    if b.dom != x.space.B:
        raise ContractViolation("pushout morphism must start at the second argument of Ext")
    return ext_space(x.space.A, b.cod).class_of(b @ x.representative())


def pull_class(x: ExtClass, a: RepMorphism) -> ExtClass:
    sp = x.space
    w = sp.omega_map(a)
    return ext_space(a.dom, sp.B).class_of(x.representative() @ w)


def _matrix_of(F: Field, rows: int, images: list[ExtClass]) -> Matrix:
    return Matrix.from_columns(F, [y.coords for y in images], rows)


@lru_cache(maxsize=8192)
def push_matrix(a: Rep, b: RepMorphism) -> Matrix:
    """Matrix of Ext(a_obj, b): Ext(A, B) -> Ext(A, B')."""
    src = ext_space(a, b.dom)
    tgt = ext_space(a, b.cod)
    return _matrix_of(a.field, tgt.dim, [push_class(e, b) for e in src.basis()])


@lru_cache(maxsize=8192)
def pull_matrix(a: RepMorphism, b: Rep) -> Matrix:
    """Matrix of Ext(a, B): Ext(A, B) -> Ext(A', B)."""
    src = ext_space(a.cod, b)
    tgt = ext_space(a.dom, b)
    return _matrix_of(b.field, tgt.dim, [pull_class(e, a) for e in src.basis()])


@lru_cache(maxsize=8192)
def ext_matrix(a: RepMorphism, b: RepMorphism) -> Matrix:
    """Ext(a, b): Ext(A1, B0) -> Ext(A0, B1) for arrows a: A0 -> A1 and b: B0 -> B1.

    Computed as pull-then-push; the other order agrees by bifunctoriality (checked in the tests).
    """
    return push_matrix(a.dom, b) @ pull_matrix(a, b.dom)


def ext_orthogonal(a: RepMorphism, b: RepMorphism) -> bool:
    return ext_matrix(a, b).is_zero()


# -- pushouts and pullbacks of conflations ---------------------------------

@dataclass(frozen=True)
class PushoutResult:
    conflation: Conflation
    comparison: RepMorphism  # old middle -> new middle


def pushout_inflation(c: Conflation, b: RepMorphism) -> PushoutResult:
    """Pushout of B -> C -> A along b: B -> B'; middle = coker((b; -m): B -> B' + C)."""
    m, p = c.inflation, c.deflation
    if b.dom != m.dom:
        raise ContractViolation("pushout morphism must start at the left term of the conflation")
    s = direct_sum([b.cod, m.cod])
    cok = cokernel_rep(column([b, -m], s))
    po = cok.rep.relabel("")
    new_m = cok.projection @ s.injections[0]
    comparison = cok.projection @ s.injections[1]
    new_p = cok.induce(row([RepMorphism.zero(b.cod, p.cod), p], s))
    new_m = RepMorphism(new_m.dom, po, new_m.comps)
    comparison = RepMorphism(comparison.dom, po, comparison.comps)
    new_p = RepMorphism(po, new_p.cod, new_p.comps)
    return PushoutResult(Conflation(new_m, new_p), comparison)


@dataclass(frozen=True)
class PullbackResult:
    conflation: Conflation
    comparison: RepMorphism  # new middle -> old middle


def pullback_deflation(c: Conflation, a: RepMorphism) -> PullbackResult:
    """Pullback of B -> C -> A along a: A' -> A; middle = ker((p, -a): C + A' -> A)."""
    m, p = c.inflation, c.deflation
    if a.cod != p.cod:
        raise ContractViolation("pullback morphism must land in the right term of the conflation")
    s = direct_sum([m.cod, a.dom])
    ker = kernel_rep(row([p, -a], s))
    comparison = s.projections[0] @ ker.inclusion
    new_p = s.projections[1] @ ker.inclusion
    new_m = ker.factor(column([m, RepMorphism.zero(m.dom, a.dom)], s))
    return PullbackResult(Conflation(new_m, new_p), comparison)


def ladder_map(c: Conflation, d: Conflation, left: RepMorphism, right: RepMorphism) -> RepMorphism | None:
    """A middle map g with g m_c = m_d left and p_d g = right p_c, or None."""
    space = hom_space(c.middle, d.middle)
    target = (d.inflation @ left).flat() + (right @ c.deflation).flat()
    images = [(g @ c.inflation).flat() + (d.deflation @ g).flat() for g in space.basis]
    F = c.middle.field
    if not images:
        return space.element(()) if not any(target) else None
    x = solve(Matrix.from_columns(F, images, len(target)), target)
    return None if x is None else space.element(x)


def equivalent(c: Conflation, d: Conflation) -> RepMorphism | None:
    """A middle isomorphism over the identities on the end terms, or None."""
    if c.left != d.left or c.right != d.right:
        return None
    g = ladder_map(c, d, RepMorphism.identity(c.left), RepMorphism.identity(c.right))
    return g if g is not None and g.is_iso() else None


# -- pushouts of several inflations ----------------------------------------

@dataclass(frozen=True)
class PushoutSquare:
    """The 3x3 grid of the pushout of two inflations m1: B -> C1, m2: B -> C2.

    Rows: B -> C1 -> A1 and C2 -> PO -> A1.  Columns: B -> C2 -> A2 and
    C1 -> PO -> A2.  Total: B -> PO -> A1 + A2.
    """

    first: Conflation
    second: Conflation
    pushout: Rep
    p1: RepMorphism  # C1 -> PO
    p2: RepMorphism  # C2 -> PO
    row2: Conflation  # C2 -> PO -> A1
    col2: Conflation  # C1 -> PO -> A2
    cokernel: DirectSum  # A1 + A2
    total: Conflation  # B -> PO -> A1 + A2

    @property
    def inflation(self) -> RepMorphism:
        return self.total.inflation

    def validate(self) -> list[str]:
        problems = []
        for name, c in (("first", self.first), ("second", self.second), ("row2", self.row2),
                        ("col2", self.col2), ("total", self.total)):
            msg = c.diagnose()
            if msg:
                problems.append(f"{name}: {msg}")
        if self.p1 @ self.first.inflation != self.p2 @ self.second.inflation:
            problems.append("pushout square does not commute")
        if self.row2.deflation @ self.p1 != self.first.deflation:
            problems.append("row comparison does not commute")
        if self.col2.deflation @ self.p2 != self.second.deflation:
            problems.append("column comparison does not commute")
        # the total sequence is the direct sum of the two conflations pushed along the sum morphism
        s = self.cokernel
        for k, (pk, ck) in enumerate(((self.p1, self.first), (self.p2, self.second))):
            if self.total.deflation @ pk != s.injections[k] @ ck.deflation:
                problems.append(f"total deflation does not restrict to the deflation of conflation {k + 1}")
        if s.rep.dims != tuple(x + y for x, y in zip(self.first.right.dims, self.second.right.dims)):
            problems.append("cokernel dimension vector differs from the sum of the two cokernels")
        return problems


def as_conflation(x) -> Conflation:
    if isinstance(x, Conflation):
        return x
    if not x.is_mono():
        raise ContractViolation("pushout of inflations requires vertexwise injective morphisms")
    cok = cokernel_rep(x)
    return Conflation(x, cok.projection)


def pushout_two_inflations(first, second) -> PushoutSquare:
    """Pushout C1 +_B C2 of two inflations with common domain B.

    Accepts Conflations (whose deflations are then reused) or bare monomorphisms.
    """
    c1, c2 = as_conflation(first), as_conflation(second)
    m1, m2 = c1.inflation, c2.inflation
    if m1.dom != m2.dom:
        raise ContractViolation("inflations must have a common domain")
    for c in (c1, c2):
        msg = c.diagnose()
        if msg:
            raise ContractViolation(f"pushout input is not a conflation: {msg}")
    s = direct_sum([m1.cod, m2.cod])
    cok = cokernel_rep(column([m1, -m2], s))
    po = cok.rep
    p1 = cok.projection @ s.injections[0]
    p2 = cok.projection @ s.injections[1]
    A = direct_sum([c1.right, c2.right])
    total_p = cok.induce(direct_sum_rows(c1.deflation, c2.deflation, s, A))
    total = Conflation(p1 @ m1, total_p)
    row2 = Conflation(p2, A.projections[0] @ total_p)
    col2 = Conflation(p1, A.projections[1] @ total_p)
    return PushoutSquare(c1, c2, po, p1, p2, row2, col2, A, total)


def direct_sum_rows(f: RepMorphism, g: RepMorphism, src: DirectSum, tgt: DirectSum) -> RepMorphism:
    """f + g as a map src -> tgt using the given biproduct structures."""
    return tgt.injections[0] @ f @ src.projections[0] + tgt.injections[1] @ g @ src.projections[1]


@dataclass(frozen=True)
class MultiPushout:
    """One-shot pushout of n inflations B -> C^i as a single cokernel."""

    inputs: tuple[Conflation, ...]
    pushout: Rep
    legs: tuple[RepMorphism, ...]  # C^i -> PO
    cokernel: DirectSum
    total: Conflation

    def validate(self) -> list[str]:
        problems = []
        msg = self.total.diagnose()
        if msg:
            problems.append(f"total: {msg}")
        for k, (h, c) in enumerate(zip(self.legs, self.inputs)):
            if h @ c.inflation != self.total.inflation:
                problems.append(f"leg {k + 1} does not commute with the inflation")
            if self.total.deflation @ h != self.cokernel.injections[k] @ c.deflation:
                problems.append(f"leg {k + 1} does not commute with the deflation")
        return problems


def pushout_many(inputs: Sequence) -> MultiPushout:
    """coker(B^(n) -> B + C^1 + ... + C^n, (y_i) -> (sum y_i, -m^1 y_1, ..., -m^n y_n))."""
    cs = [as_conflation(x) for x in inputs]
    if not cs:
        raise ContractViolation("pushout of an empty family")
    B = cs[0].left
    if any(c.left != B for c in cs):
        raise ContractViolation("inflations must have a common domain")
    n = len(cs)
    Bn = direct_sum([B] * n)
    big = direct_sum([B] + [c.middle for c in cs])
    parts = [big.injections[0] @ Bn.projections[k] - big.injections[k + 1] @ cs[k].inflation @ Bn.projections[k]
             for k in range(n)]
    f = parts[0]
    for x in parts[1:]:
        f = f + x
    cok = cokernel_rep(f)
    legs = tuple(cok.projection @ big.injections[k + 1] for k in range(n))
    A = direct_sum([c.right for c in cs])
    defl_on_big = row([RepMorphism.zero(B, A.rep)] + [A.injections[k] @ cs[k].deflation for k in range(n)], big)
    total_p = cok.induce(defl_on_big)
    total = Conflation(cok.projection @ big.injections[0], total_p)
    return MultiPushout(tuple(cs), cok.rep, legs, A, total)


@dataclass(frozen=True)
class MultiPullback:
    """One-shot pullback of n deflations C^i -> A as the fibre product."""

    inputs: tuple[Conflation, ...]
    pullback: Rep
    legs: tuple[RepMorphism, ...]  # PB -> C^i
    kernel: DirectSum
    total: Conflation

    def validate(self) -> list[str]:
        problems = []
        msg = self.total.diagnose()
        if msg:
            problems.append(f"total: {msg}")
        for k, (h, c) in enumerate(zip(self.legs, self.inputs)):
            if c.deflation @ h != self.total.deflation:
                problems.append(f"leg {k + 1} does not commute with the deflation")
            if h @ self.total.inflation != c.inflation @ self.kernel.projections[k]:
                problems.append(f"leg {k + 1} does not commute with the inflation")
        return problems


def pullback_many(inputs: Sequence[Conflation]) -> MultiPullback:
    """ker(A + C^1 + ... + C^n -> A^(n), (x, c_i) -> (p^i c_i - x)_i)."""
    cs = list(inputs)
    if not cs:
        raise ContractViolation("pullback of an empty family")
    A = cs[0].right
    if any(c.right != A for c in cs):
        raise ContractViolation("deflations must have a common codomain")
    n = len(cs)
    An = direct_sum([A] * n)
    big = direct_sum([A] + [c.middle for c in cs])
    f = None
    for k in range(n):
        part = An.injections[k] @ (cs[k].deflation @ big.projections[k + 1] - big.projections[0])
        f = part if f is None else f + part
    ker = kernel_rep(f)
    legs = tuple(big.projections[k + 1] @ ker.inclusion for k in range(n))
    K = direct_sum([c.left for c in cs])
    infl_on_big = column([RepMorphism.zero(K.rep, A)] + [cs[k].inflation @ K.projections[k] for k in range(n)], big)
    total = Conflation(ker.factor(infl_on_big), big.projections[0] @ ker.inclusion)
    return MultiPullback(tuple(cs), ker.rep, legs, K, total)


def canonical_ext_morphism(parts: Sequence[Rep], b: Rep) -> tuple[Matrix, bool]:
    """Ext(A^1 + ... + A^n, B) -> prod Ext(A^i, B) by pulling back along the injections.

    Returns the stacked matrix and whether it is invertible.
    """
    s = direct_sum(list(parts))
    F = b.field
    blocks = [pull_matrix(inj, b) for inj in s.injections]
    src_dim = ext_space(s.rep, b).dim
    m = Matrix.vstack(F, blocks, src_dim) if blocks else Matrix.zeros(F, 0, src_dim)
    return m, (m.rows == m.cols and rank(m) == m.rows)
