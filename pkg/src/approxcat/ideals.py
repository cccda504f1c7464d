"""Morphism ideals as expressions, evaluated fiber by fiber.

An ideal is never materialized as a class of morphisms.  An IdealSpec is a
small expression tree and ``fiber(spec, A, B)`` computes the subspace of
Hom(A, B) it contains, in the coordinates of ``hom_space(A, B)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .exactlin import ContractViolation, Matrix, Subspace, kernel, subspace_intersect, subspace_sum
from .homext import ext_matrix, ext_space, pull_matrix, push_matrix
from .quivrep import (
    Rep,
    RepMorphism,
    HomSpace,
    hom_space,
    injective_envelope,
    lift,
    extend,
    projective_cover,
)


class IdealSpec:
    """Base class; ``a + b`` is the sum and ``a & b`` the intersection."""

    def __add__(self, other: "IdealSpec") -> "Sum":
        return Sum((self, other))

    def __and__(self, other: "IdealSpec") -> "Intersection":
        return Intersection((self, other))

    def describe(self) -> str:
        raise NotImplementedError


def _names(xs) -> str:
    return ", ".join(str(x.label or "?") if isinstance(x, Rep) else _arrow_name(x) for x in xs)


def _arrow_name(f: RepMorphism) -> str:
    return f"{f.dom}->{f.cod}"


@dataclass(frozen=True)
class Generated(IdealSpec):
    """Ideal generated by finitely many morphisms: spans of h g f."""

    gens: tuple[RepMorphism, ...]

    def describe(self):
        return f"<{_names(self.gens)}>"


@dataclass(frozen=True)
class RightOrthogonal(IdealSpec):
    """{j : Ext(s, j) = 0 for every s in the list}."""

    arrows: tuple[RepMorphism, ...]

    def describe(self):
        return f"{{{_names(self.arrows)}}}^perp"


@dataclass(frozen=True)
class LeftOrthogonal(IdealSpec):
    """{i : Ext(i, s) = 0 for every s in the list}."""

    arrows: tuple[RepMorphism, ...]

    def describe(self):
        return f"^perp{{{_names(self.arrows)}}}"


@dataclass(frozen=True)
class ObjectIdeal(IdealSpec):
    """Morphisms factoring through a direct sum of the listed objects."""

    objects: tuple[Rep, ...]

    def describe(self):
        return f"[{_names(self.objects)}]"


@dataclass(frozen=True)
class ProjIdeal(IdealSpec):
    """Projective morphisms (those that lift along the projective cover of their codomain)."""

    def describe(self):
        return "E-proj"


@dataclass(frozen=True)
class InjIdeal(IdealSpec):
    def describe(self):
        return "E-inj"


@dataclass(frozen=True)
class Sum(IdealSpec):
    parts: tuple[IdealSpec, ...]

    def describe(self):
        return "(" + " + ".join(p.describe() for p in self.parts) + ")"


@dataclass(frozen=True)
class Intersection(IdealSpec):
    parts: tuple[IdealSpec, ...]

    def describe(self):
        return "(" + " & ".join(p.describe() for p in self.parts) + ")"


@dataclass(frozen=True)
class IdealFiber:
    spec: IdealSpec
    A: Rep
    B: Rep
    subspace: Subspace

    @property
    def hom(self) -> HomSpace:
        return hom_space(self.A, self.B)

    @property
    def dim(self) -> int:
        return self.subspace.dim

    def basis(self) -> list[RepMorphism]:
        return [self.hom.element(v) for v in self.subspace.vectors()]

    def contains(self, f: RepMorphism) -> bool:
        return self.subspace.contains(self.hom.coords(f))


def _span_of(H: HomSpace, ms) -> Subspace:
    return Subspace.span(H.field, H.dim, [H.coords(m) for m in ms])


def _check_quiver(spec_reps, a: Rep):
    for r in spec_reps:
        if r.quiver != a.quiver or r.field != a.field:
            raise ContractViolation("ideal leaf lives over a different quiver or field")


def _generated(gens, A: Rep, B: Rep, H: HomSpace) -> Subspace:
    out = Subspace.zero(H.field, H.dim)
    for g in gens:
        _check_quiver([g.dom], A)
        left = hom_space(A, g.dom).basis
        right = hom_space(g.cod, B).basis
        vecs = [H.coords(h @ g @ f) for f in left for h in right]
        out = subspace_sum(out, Subspace.span(H.field, H.dim, vecs))
    return out


def _orthogonal_condition(H: HomSpace, rows_of) -> Subspace:
    """Kernel of the linear map f_k |-> rows_of(f_k) (a flattened matrix)."""
    F = H.field
    cols = [rows_of(f) for f in H.basis]
    if not cols:
        return Subspace.zero(F, 0)
    width = len(cols[0])
    if width == 0:
        return Subspace.full(F, H.dim)
    return kernel(Matrix.from_columns(F, cols, width))


def _right_orthogonal(arrows, A: Rep, B: Rep, H: HomSpace) -> Subspace:
    out = Subspace.full(H.field, H.dim)
    for s in arrows:
        _check_quiver([s.dom], A)
        # Ext(s, j) = push(., j) o pull(., s): Ext(S1, A) -> Ext(S0, B); linear in j
        pull = pull_matrix(s, A)  # Ext(S1, A) -> Ext(S0, A)
        cond = _orthogonal_condition(H, lambda f: (push_matrix(s.dom, f) @ pull).entries)
        out = subspace_intersect(out, cond)
    return out


def _left_orthogonal(arrows, A: Rep, B: Rep, H: HomSpace) -> Subspace:
    out = Subspace.full(H.field, H.dim)
    for s in arrows:
        _check_quiver([s.dom], A)
        # Ext(j, s): Ext(B, S0) -> Ext(A, S1) = pull(., j) o push(., s)
        push = push_matrix(B, s)  # Ext(B, S0) -> Ext(B, S1)
        cond = _orthogonal_condition(H, lambda f: (pull_matrix(f, s.cod) @ push).entries)
        out = subspace_intersect(out, cond)
    return out


def _object_ideal(objs, A: Rep, B: Rep, H: HomSpace) -> Subspace:
    return _generated([RepMorphism.identity(o) for o in objs], A, B, H)


def _proj_ideal(A: Rep, B: Rep, H: HomSpace) -> Subspace:
    cov = projective_cover(B)
    return _span_of(H, [cov.deflation @ g for g in hom_space(A, cov.rep).basis])


def _inj_ideal(A: Rep, B: Rep, H: HomSpace) -> Subspace:
    env = injective_envelope(A)
    return _span_of(H, [g @ env.inflation for g in hom_space(env.rep, B).basis])


@lru_cache(maxsize=65536)
def _fiber_subspace(spec: IdealSpec, A: Rep, B: Rep) -> Subspace:
    H = hom_space(A, B)
    if isinstance(spec, Generated):
        return _generated(spec.gens, A, B, H)
    if isinstance(spec, RightOrthogonal):
        return _right_orthogonal(spec.arrows, A, B, H)
    if isinstance(spec, LeftOrthogonal):
        return _left_orthogonal(spec.arrows, A, B, H)
    if isinstance(spec, ObjectIdeal):
        return _object_ideal(spec.objects, A, B, H)
    if isinstance(spec, ProjIdeal):
        return _proj_ideal(A, B, H)
    if isinstance(spec, InjIdeal):
        return _inj_ideal(A, B, H)
    if isinstance(spec, Sum):
        out = Subspace.zero(H.field, H.dim)
        for p in spec.parts:
            out = subspace_sum(out, _fiber_subspace(p, A, B))
        return out
    if isinstance(spec, Intersection):
        out = Subspace.full(H.field, H.dim)
        for p in spec.parts:
            out = subspace_intersect(out, _fiber_subspace(p, A, B))
        return out
    raise ContractViolation(f"unknown ideal expression {spec!r}")


def fiber(spec: IdealSpec, A: Rep, B: Rep) -> IdealFiber:
    if A.quiver != B.quiver or A.field != B.field:
        raise ContractViolation("fiber between representations of different quivers or fields")
    return IdealFiber(spec, A, B, _fiber_subspace(spec, A, B))


def contains(spec: IdealSpec, f: RepMorphism) -> bool:
    return fiber(spec, f.dom, f.cod).contains(f)


def is_projective_morphism(f: RepMorphism) -> bool:
    """f lifts along the projective cover deflation of its codomain."""
    return lift(f, projective_cover(f.cod).deflation) is not None


def is_injective_morphism(f: RepMorphism) -> bool:
    """f extends along the injective envelope of its domain."""
    return extend(f, injective_envelope(f.dom).inflation) is not None


def orthogonality_witness(s: RepMorphism, j: RepMorphism) -> bool:
    """True when Ext(s, j) = 0 (the orthogonality condition itself)."""
    return ext_matrix(s, j).is_zero()


@dataclass(frozen=True)
class ProjStarFiber:
    """Finite under-approximation of the fiber generated by p * i over enumerated projective p."""

    fiber: IdealFiber
    projective_arrows: tuple[RepMorphism, ...]
    extensions: tuple[RepMorphism, ...]
    under_approximation: bool = True


def proj_star_fiber(i: RepMorphism, A: Rep, B: Rep, probes: Sequence[Rep], budget: int = 8) -> ProjStarFiber:
    """Span at (A, B) of the ideal generated by i and the arrows p * i.

    The projective arrows p are the cover deflations of the first ``budget``
    probes; every basis class zeta of Ext(I1, P0) contributes the middle arrow
    of the ME-extension p * i.  The generator i itself stands in for p = 0.
    """
    from .arrowcat import me_extension

    ps = []
    for y in list(probes)[:budget]:
        cov = projective_cover(y)
        ps.append(cov.deflation)
    gens = [i]
    for p in ps:
        for z in ext_space(i.cod, p.dom).basis():
            gens.append(me_extension(p, i, z).arrow)
    spec = Generated(tuple(gens))
    return ProjStarFiber(fiber(spec, A, B), tuple(ps), tuple(gens[1:]))
