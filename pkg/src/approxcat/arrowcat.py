"""The arrow category: morphisms as objects, matched-pair Ext, Leibniz maps and ME-extensions.

An object of the arrow category is a RepMorphism a: A0 -> A1.  Its Ext groups
are pairs (x0, x1) in Ext(A0, B0) x Ext(A1, B1) agreeing in Ext(A0, B1); the
Leibniz map sends zeta in Ext(A1, B0) to (zeta a, b zeta), and its image is
the set of mono-epi (ME) classes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .exactlin import ContractViolation, Matrix, Subspace, kernel, rank, solve, solve_matrix
from .homext import (
    Conflation,
    ExtClass,
    PushoutSquare,
    classify,
    direct_sum_rows,
    ext_space,
    ladder_map,
    pull_class,
    pull_matrix,
    pullback_deflation,
    pullback_many,
    push_class,
    push_matrix,
    pushout_inflation,
    pushout_many,
    pushout_two_inflations,
    realize,
)
from .quivrep import (
    Rep,
    RepMorphism,
    cokernel_rep,
    direct_sum,
    direct_sum_morphisms,
    factor_through_mono,
    hom_space,
)

ArrowObject = RepMorphism


def identity_arrow(m: Rep) -> ArrowObject:
    return RepMorphism.identity(m)


@dataclass(frozen=True)
class ArrowMorphism:
    """A commuting square (f0, f1) from a: A0 -> A1 to b: B0 -> B1."""

    dom: ArrowObject
    cod: ArrowObject
    f0: RepMorphism
    f1: RepMorphism

    def __post_init__(self):
        a, b = self.dom, self.cod
        if self.f0.dom != a.dom or self.f0.cod != b.dom or self.f1.dom != a.cod or self.f1.cod != b.cod:
            raise ContractViolation("arrow morphism components have the wrong end terms")
        if b @ self.f0 != self.f1 @ a:
            raise ContractViolation("arrow morphism square does not commute")

    def __matmul__(self, other: "ArrowMorphism") -> "ArrowMorphism":
        return ArrowMorphism(other.dom, self.cod, self.f0 @ other.f0, self.f1 @ other.f1)

    def flat(self) -> tuple:
        return self.f0.flat() + self.f1.flat()

    def is_mono(self) -> bool:
        return self.f0.is_mono() and self.f1.is_mono()


class ArrowHomSpace:
    """{(f0, f1) : b f0 = f1 a} inside Hom(A0, B0) x Hom(A1, B1)."""

    def __init__(self, a: ArrowObject, b: ArrowObject):
        self.a, self.b = a, b
        F = a.field
        self.H0, self.H1 = H0, H1 = hom_space(a.dom, b.dom), hom_space(a.cod, b.cod)
        # columns: images in Hom(A0, B1) flattened
        cols = [(b @ f).flat() for f in H0.basis] + [(-(g @ a)).flat() for g in H1.basis]
        width = sum(x * y for x, y in zip(a.dom.dims, b.cod.dims))
        n = H0.dim + H1.dim
        m = Matrix.from_columns(F, cols, width) if cols else Matrix.zeros(F, width, 0)
        self.subspace = kernel(m) if n else Subspace.zero(F, 0)
        self.basis = [self.element_from_pair(v) for v in self.subspace.vectors()]

    @property
    def dim(self) -> int:
        return self.subspace.dim

    def element_from_pair(self, v: Sequence) -> ArrowMorphism:
        n0 = self.H0.dim
        return ArrowMorphism(self.a, self.b, self.H0.element(v[:n0]), self.H1.element(v[n0:]))

    def pair_coords(self, f: ArrowMorphism) -> tuple:
        return self.H0.coords(f.f0) + self.H1.coords(f.f1)

    def coords(self, f: ArrowMorphism) -> tuple:
        c = self.subspace.coords(self.pair_coords(f))
        if c is None:  # pragma: no cover - ArrowMorphism validation guarantees membership
            raise ContractViolation("not an arrow morphism between these arrows")
        return c

    def element(self, coords: Sequence) -> ArrowMorphism:
        return self.element_from_pair(self.subspace.combination(coords))


@lru_cache(maxsize=4096)
def arrow_hom_space(a: ArrowObject, b: ArrowObject) -> ArrowHomSpace:
    return ArrowHomSpace(a, b)


def arrow_hom_basis(a: ArrowObject, b: ArrowObject) -> list[ArrowMorphism]:
    return arrow_hom_space(a, b).basis


class LeibnizHom:
    """v |-> (v a, b v) from Hom(A1, B0) to arrow morphisms a -> b."""

    def __init__(self, a: ArrowObject, b: ArrowObject):
        self.a, self.b = a, b
        self.source = hom_space(a.cod, b.dom)
        self.target = arrow_hom_space(a, b)
        F = a.field
        cols = [self.target.coords(self.image(v)) for v in self.source.basis]
        self.matrix = Matrix.from_columns(F, cols, self.target.dim) if cols else Matrix.zeros(F, self.target.dim, 0)

    def image(self, v: RepMorphism) -> ArrowMorphism:
        return ArrowMorphism(self.a, self.b, v @ self.a, self.b @ v)

    def lift(self, f: ArrowMorphism) -> RepMorphism | None:
        """A diagonal v: A1 -> B0 with v a = f0 and b v = f1, or None."""
        x = solve(self.matrix, self.target.coords(f))
        return None if x is None else self.source.element(x)

    def is_surjective(self) -> bool:
        return rank(self.matrix) == self.target.dim


def leibniz_hom(a: ArrowObject, b: ArrowObject) -> LeibnizHom:
    return LeibnizHom(a, b)


def has_left_lifting(a: ArrowObject, b: ArrowObject) -> bool:
    return LeibnizHom(a, b).is_surjective()


# -- Ext in the arrow category --------------------------------------------

class ArrExtSpace:
    """Matched pairs (x0, x1) with push(x0, b) = pull(x1, a) in Ext(A0, B1)."""

    def __init__(self, a: ArrowObject, b: ArrowObject):
        self.a, self.b = a, b
        F = self.field = a.field
        self.E0 = ext_space(a.dom, b.dom)
        self.E1 = ext_space(a.cod, b.cod)
        self.E01 = ext_space(a.dom, b.cod)
        push = push_matrix(a.dom, b)  # Ext(A0,B0) -> Ext(A0,B1)
        pull = pull_matrix(a, b.cod)  # Ext(A1,B1) -> Ext(A0,B1)
        n = self.E0.dim + self.E1.dim
        if n:
            diff = Matrix.hstack(F, [push, -pull], self.E01.dim)
            self.subspace = kernel(diff)
        else:
            self.subspace = Subspace.zero(F, 0)

    @property
    def dim(self) -> int:
        return self.subspace.dim

    def basis(self) -> list["ArrExtClass"]:
        return [self.from_pair_coords(v) for v in self.subspace.vectors()]

    def from_pair_coords(self, v: Sequence) -> "ArrExtClass":
        n0 = self.E0.dim
        return ArrExtClass(self, self.E0.element(v[:n0]), self.E1.element(v[n0:]))

    def pair(self, x0: ExtClass, x1: ExtClass) -> "ArrExtClass":
        x = ArrExtClass(self, x0, x1)
        if self.subspace.coords(x.pair_coords) is None:
            raise ContractViolation("pair does not match in Ext(A0, B1)")
        return x

    def coords(self, x: "ArrExtClass") -> tuple:
        return self.subspace.coords(x.pair_coords)

    def element(self, coords: Sequence) -> "ArrExtClass":
        return self.from_pair_coords(self.subspace.combination(coords))

    def zero(self) -> "ArrExtClass":
        return ArrExtClass(self, self.E0.zero(), self.E1.zero())


@lru_cache(maxsize=4096)
def arr_ext_space(a: ArrowObject, b: ArrowObject) -> ArrExtSpace:
    return ArrExtSpace(a, b)


@dataclass(frozen=True, eq=False)
class ArrExtClass:
    space: ArrExtSpace
    x0: ExtClass
    x1: ExtClass

    @property
    def pair_coords(self) -> tuple:
        return self.x0.coords + self.x1.coords

    def __eq__(self, other):
        return isinstance(other, ArrExtClass) and self.x0 == other.x0 and self.x1 == other.x1

    def __hash__(self):
        return hash((self.x0, self.x1))

    def __add__(self, other):
        return ArrExtClass(self.space, self.x0 + other.x0, self.x1 + other.x1)

    def scale(self, c):
        return ArrExtClass(self.space, self.x0.scale(c), self.x1.scale(c))

    def is_zero(self) -> bool:
        return self.x0.is_zero() and self.x1.is_zero()


def epsilon(x: ArrExtClass) -> ExtClass:
    """The middle class of the pushout-pullback factorization, in Ext(A0, B1)."""
    e = push_class(x.x0, x.space.b)
    if e != pull_class(x.x1, x.space.a):  # pragma: no cover - matched pair
        raise AssertionError("matched pair disagrees in Ext(A0, B1)")
    return e


def epsilon_matrix(a: ArrowObject, b: ArrowObject) -> Matrix:
    """Matrix of epsilon from arrow-Ext coordinates to Ext(A0, B1)."""
    sp = arr_ext_space(a, b)
    F = a.field
    cols = [epsilon(x).coords for x in sp.basis()]
    return Matrix.from_columns(F, cols, sp.E01.dim) if cols else Matrix.zeros(F, sp.E01.dim, 0)


def is_null_homotopic(x: ArrExtClass) -> bool:
    return epsilon(x).is_zero()


def leibniz_ext_image(zeta: ExtClass, a: ArrowObject, b: ArrowObject) -> ArrExtClass:
    sp = arr_ext_space(a, b)
    return ArrExtClass(sp, pull_class(zeta, a), push_class(zeta, b))


@lru_cache(maxsize=4096)
def leibniz_ext_map(a: ArrowObject, b: ArrowObject) -> Matrix:
    """Matrix of zeta |-> (zeta a, b zeta) from Ext(A1, B0) to arrow-Ext coordinates."""
    sp = arr_ext_space(a, b)
    src = ext_space(a.cod, b.dom)
    F = a.field
    cols = [sp.coords(leibniz_ext_image(z, a, b)) for z in src.basis()]
    return Matrix.from_columns(F, cols, sp.dim) if cols else Matrix.zeros(F, sp.dim, 0)


def is_me(x: ArrExtClass) -> ExtClass | None:
    """The solve-canonical zeta with Leibniz image x, or None when x is not ME."""
    a, b = x.space.a, x.space.b
    src = ext_space(a.cod, b.dom)
    z = solve(leibniz_ext_map(a, b), x.space.coords(x))
    return None if z is None else src.element(z)


# -- conflations of arrows --------------------------------------------------

@dataclass(frozen=True)
class ArrowConflation:
    """A morphism of conflations: top row B0 -> C0 -> A0, bottom row B1 -> C1 -> A1, verticals (b, c, a)."""

    top: Conflation
    bottom: Conflation
    left: RepMorphism
    middle: RepMorphism
    right: RepMorphism

    def diagnose(self) -> list[str]:
        problems = []
        for name, c in (("top", self.top), ("bottom", self.bottom)):
            msg = c.diagnose()
            if msg:
                problems.append(f"{name} row: {msg}")
        try:
            if self.middle @ self.top.inflation != self.bottom.inflation @ self.left:
                problems.append("left square does not commute")
            if self.bottom.deflation @ self.middle != self.right @ self.top.deflation:
                problems.append("right square does not commute")
        except ContractViolation as e:
            problems.append(f"ladder shapes: {e}")
        return problems

    def is_valid(self) -> bool:
        return not self.diagnose()

    def inflation(self) -> ArrowMorphism:
        return ArrowMorphism(self.left, self.middle, self.top.inflation, self.bottom.inflation)

    def deflation(self) -> ArrowMorphism:
        return ArrowMorphism(self.middle, self.right, self.top.deflation, self.bottom.deflation)

    def classes(self) -> tuple[ExtClass, ExtClass]:
        return classify(self.top), classify(self.bottom)

    def arr_class(self) -> ArrExtClass:
        x0, x1 = self.classes()
        return arr_ext_space(self.right, self.left).pair(x0, x1)


@dataclass(frozen=True)
class MEExtension:
    """c = b * a with its factorization c = c2 c1 through the middle conflation."""

    ladder: ArrowConflation
    middle_conflation: Conflation
    c1: RepMorphism  # C0 -> C
    c2: RepMorphism  # C -> C1
    zeta: ExtClass

    @property
    def arrow(self) -> ArrowObject:
        return self.ladder.middle

    def diagnose(self) -> list[str]:
        problems = list(self.ladder.diagnose())
        if self.c2 @ self.c1 != self.ladder.middle:
            problems.append("middle arrow differs from c2 c1")
        lad, xi = self.ladder, self.middle_conflation
        if self.c1 @ lad.top.inflation != xi.inflation:
            problems.append("upper left square does not commute")
        if xi.deflation @ self.c1 != lad.right @ lad.top.deflation:
            problems.append("upper right square does not commute")
        if self.c2 @ xi.inflation != lad.bottom.inflation @ lad.left:
            problems.append("lower left square does not commute")
        if lad.bottom.deflation @ self.c2 != xi.deflation:
            problems.append("lower right square does not commute")
        return problems


def me_extension(b: ArrowObject, a: ArrowObject, zeta: ExtClass) -> MEExtension:
    """The ME-extension b * a of a by b along zeta in Ext(A1, B0).

    The top row is zeta pulled back along a, the bottom row is zeta pushed out
    along b, and the middle arrow factors through the realization of zeta.
    """
    if zeta.space.A != a.cod or zeta.space.B != b.dom:
        raise ContractViolation("zeta must lie in Ext(A1, B0)")
    xi = realize(zeta)
    if a == RepMorphism.identity(a.cod):
        top, c1 = xi, RepMorphism.identity(xi.middle)
    else:
        pb = pullback_deflation(xi, a)
        top, c1 = pb.conflation, pb.comparison
    if b == RepMorphism.identity(b.dom):
        bottom, c2 = xi, RepMorphism.identity(xi.middle)
    else:
        po = pushout_inflation(xi, b)
        bottom, c2 = po.conflation, po.comparison
    ladder = ArrowConflation(top, bottom, b, c2 @ c1, a)
    return MEExtension(ladder, xi, c1, c2, zeta)


@dataclass(frozen=True)
class PPFactorization:
    """x = (lower) after (upper): realize(x0) -> Xi -> realize(x1) with Xi = realize(epsilon(x))."""

    top: Conflation
    middle: Conflation
    bottom: Conflation
    c1: RepMorphism  # C0 -> C over (b, 1_A0)
    c2: RepMorphism  # C -> C1 over (1_B1, a)
    ladder: ArrowConflation

    def diagnose(self) -> list[str]:
        problems = list(self.ladder.diagnose())
        a, b = self.ladder.right, self.ladder.left
        if self.c1 @ self.top.inflation != self.middle.inflation @ b:
            problems.append("upper left square does not commute")
        if self.middle.deflation @ self.c1 != self.top.deflation:
            problems.append("upper right square does not commute")
        if self.c2 @ self.middle.inflation != self.bottom.inflation:
            problems.append("lower left square does not commute")
        if self.bottom.deflation @ self.c2 != a @ self.middle.deflation:
            problems.append("lower right square does not commute")
        return problems


def pp_factorize(x: ArrExtClass) -> PPFactorization:
    a, b = x.space.a, x.space.b
    top, bottom = realize(x.x0), realize(x.x1)
    mid = realize(epsilon(x))
    c1 = ladder_map(top, mid, b, RepMorphism.identity(a.dom))
    c2 = ladder_map(mid, bottom, RepMorphism.identity(b.cod), a)
    if c1 is None or c2 is None:  # pragma: no cover - guaranteed by the matching condition
        raise AssertionError("pushout-pullback factorization does not exist")
    ladder = ArrowConflation(top, bottom, b, c2 @ c1, a)
    return PPFactorization(top, mid, bottom, c1, c2, ladder)


# -- pushouts in the arrow category ----------------------------------------

def as_arrow_conflation(x) -> ArrowConflation:
    """Accept an ArrowConflation or a componentwise-monic ArrowMorphism (cokernels are computed)."""
    if isinstance(x, ArrowConflation):
        return x
    if not isinstance(x, ArrowMorphism) or not x.is_mono():
        raise ContractViolation("arrow pushout requires componentwise inflations")
    k0, k1 = cokernel_rep(x.f0), cokernel_rep(x.f1)
    right = k0.induce(k1.projection @ x.cod)
    top = Conflation(x.f0, k0.projection)
    bottom = Conflation(x.f1, k1.projection)
    return ArrowConflation(top, bottom, x.dom, x.cod, right)


@dataclass(frozen=True)
class ArrowPushout:
    """Componentwise pushout of two arrow inflations e -> c^1, e -> c^2."""

    first: ArrowConflation
    second: ArrowConflation
    top: PushoutSquare
    bottom: PushoutSquare
    middle: RepMorphism  # c^1 +_e c^2
    cokernel_arrow: RepMorphism  # a^1 + a^2
    h1: ArrowMorphism
    h2: ArrowMorphism
    ladder: ArrowConflation  # e -> c^1 +_e c^2 -> a^1 + a^2

    def validate(self) -> list[str]:
        problems = []
        for name, sq in (("domain row", self.top), ("codomain row", self.bottom)):
            problems.extend(f"{name}: {p}" for p in sq.validate())
        problems.extend(f"ladder: {p}" for p in self.ladder.diagnose())
        expected = direct_sum_morphisms([self.first.right, self.second.right])
        if self.cokernel_arrow != expected:
            problems.append("cokernel arrow differs from the block sum of the two cokernel arrows")
        for k, (h, lad) in enumerate(((self.h1, self.first), (self.h2, self.second))):
            if h.f0 @ lad.top.inflation != self.ladder.top.inflation:
                problems.append(f"domain certificate m0 = h0 m0^{k + 1} fails")
            if h.f1 @ lad.bottom.inflation != self.ladder.bottom.inflation:
                problems.append(f"codomain certificate m1 = h1 m1^{k + 1} fails")
        return problems


def arrow_pushout_two_inflations(first, second) -> ArrowPushout:
    l1, l2 = as_arrow_conflation(first), as_arrow_conflation(second)
    if l1.left != l2.left:
        raise ContractViolation("arrow inflations must have a common domain arrow")
    top = pushout_two_inflations(l1.top, l2.top)
    bottom = pushout_two_inflations(l1.bottom, l2.bottom)
    # induced vertical on the pushouts: the map C0^1 + C0^2 -> C1^1 + C1^2 descends
    s0 = direct_sum([l1.top.middle, l2.top.middle])
    s1 = direct_sum([l1.bottom.middle, l2.bottom.middle])
    big = direct_sum_rows(l1.middle, l2.middle, s0, s1)
    # (p1, p2) is the pushout projection of each row; the block vertical descends along it
    proj0 = top.p1 @ s0.projections[0] + top.p2 @ s0.projections[1]
    proj1 = bottom.p1 @ s1.projections[0] + bottom.p2 @ s1.projections[1]
    middle = _descend(proj0, proj1 @ big)
    A = top.cokernel
    cok_arrow = direct_sum_morphisms([l1.right, l2.right])
    cok_arrow = RepMorphism(A.rep, bottom.cokernel.rep, cok_arrow.comps)
    ladder = ArrowConflation(top.total, bottom.total, l1.left, middle, cok_arrow)
    h1 = ArrowMorphism(l1.middle, middle, top.p1, bottom.p1)
    h2 = ArrowMorphism(l2.middle, middle, top.p2, bottom.p2)
    return ArrowPushout(l1, l2, top, bottom, middle, cok_arrow, h1, h2, ladder)


def _descend(proj: RepMorphism, g: RepMorphism) -> RepMorphism:
    """The unique h with h @ proj == g for a vertexwise surjective proj."""
    comps = []
    for pv, gv in zip(proj.comps, g.comps):
        h = solve_matrix(pv.T, gv.T)
        if h is None:
            raise ContractViolation("morphism does not descend along the projection")
        comps.append(h.T)
    h = RepMorphism(proj.cod, g.cod, tuple(comps))
    if h @ proj != g:
        raise ContractViolation("morphism does not descend along the projection")
    return h


@dataclass(frozen=True)
class ArrowMultiPushout:
    inputs: tuple[ArrowConflation, ...]
    top: object
    bottom: object
    middle: RepMorphism
    cokernel_arrow: RepMorphism
    legs: tuple[ArrowMorphism, ...]
    ladder: ArrowConflation

    def validate(self) -> list[str]:
        problems = []
        for name, mp in (("domain row", self.top), ("codomain row", self.bottom)):
            problems.extend(f"{name}: {p}" for p in mp.validate())
        problems.extend(f"ladder: {p}" for p in self.ladder.diagnose())
        expected = direct_sum_morphisms([x.right for x in self.inputs])
        if self.cokernel_arrow.comps != expected.comps:
            problems.append("cokernel arrow differs from the block sum of the cokernel arrows")
        return problems


def arrow_pushout_many(inputs: Sequence) -> ArrowMultiPushout:
    """One-shot pushout of finitely many arrow inflations with a common domain arrow."""
    ls = [as_arrow_conflation(x) for x in inputs]
    if not ls:
        raise ContractViolation("arrow pushout of an empty family")
    e = ls[0].left
    if any(x.left != e for x in ls):
        raise ContractViolation("arrow inflations must have a common domain arrow")
    top = pushout_many([x.top for x in ls])
    bottom = pushout_many([x.bottom for x in ls])
    B0, B1 = e.dom, e.cod
    big0 = direct_sum([B0] + [x.top.middle for x in ls])
    big1 = direct_sum([B1] + [x.bottom.middle for x in ls])
    vert = big1.injections[0] @ e @ big0.projections[0]
    for k, x in enumerate(ls):
        vert = vert + big1.injections[k + 1] @ x.middle @ big0.projections[k + 1]
    proj0 = top.total.inflation @ big0.projections[0]
    for k in range(len(ls)):
        proj0 = proj0 + top.legs[k] @ big0.projections[k + 1]
    proj1 = bottom.total.inflation @ big1.projections[0]
    for k in range(len(ls)):
        proj1 = proj1 + bottom.legs[k] @ big1.projections[k + 1]
    middle = _descend(proj0, proj1 @ vert)
    cok = direct_sum_morphisms([x.right for x in ls])
    cok = RepMorphism(top.cokernel.rep, bottom.cokernel.rep, cok.comps)
    ladder = ArrowConflation(top.total, bottom.total, e, middle, cok)
    legs = tuple(ArrowMorphism(x.middle, middle, top.legs[k], bottom.legs[k]) for k, x in enumerate(ls))
    return ArrowMultiPushout(tuple(ls), top, bottom, middle, cok, legs, ladder)


@dataclass(frozen=True)
class ArrowMultiPullback:
    inputs: tuple[ArrowConflation, ...]
    top: object
    bottom: object
    middle: RepMorphism
    kernel_arrow: RepMorphism
    legs: tuple[ArrowMorphism, ...]
    ladder: ArrowConflation

    def validate(self) -> list[str]:
        problems = []
        for name, mp in (("domain row", self.top), ("codomain row", self.bottom)):
            problems.extend(f"{name}: {p}" for p in mp.validate())
        problems.extend(f"ladder: {p}" for p in self.ladder.diagnose())
        expected = direct_sum_morphisms([x.left for x in self.inputs])
        if self.kernel_arrow.comps != expected.comps:
            problems.append("kernel arrow differs from the block sum of the kernel arrows")
        return problems


def arrow_pullback_many(inputs: Sequence[ArrowConflation]) -> ArrowMultiPullback:
    """One-shot pullback of finitely many arrow deflations with a common codomain arrow."""
    ls = list(inputs)
    if not ls:
        raise ContractViolation("arrow pullback of an empty family")
    e = ls[0].right
    if any(x.right != e for x in ls):
        raise ContractViolation("arrow deflations must have a common codomain arrow")
    top = pullback_many([x.top for x in ls])
    bottom = pullback_many([x.bottom for x in ls])
    A0, A1 = e.dom, e.cod
    big0 = direct_sum([A0] + [x.top.middle for x in ls])
    big1 = direct_sum([A1] + [x.bottom.middle for x in ls])
    vert = big1.injections[0] @ e @ big0.projections[0]
    for k, x in enumerate(ls):
        vert = vert + big1.injections[k + 1] @ x.middle @ big0.projections[k + 1]
    incl0 = big0.injections[0] @ top.total.deflation
    for k in range(len(ls)):
        incl0 = incl0 + big0.injections[k + 1] @ top.legs[k]
    incl1 = big1.injections[0] @ bottom.total.deflation
    for k in range(len(ls)):
        incl1 = incl1 + big1.injections[k + 1] @ bottom.legs[k]
    middle = factor_through_mono(incl1, vert @ incl0)
    ker = direct_sum_morphisms([x.left for x in ls])
    ker = RepMorphism(top.kernel.rep, bottom.kernel.rep, ker.comps)
    ladder = ArrowConflation(top.total, bottom.total, ker, middle, e)
    legs = tuple(ArrowMorphism(middle, x.middle, top.legs[k], bottom.legs[k]) for k, x in enumerate(ls))
    return ArrowMultiPullback(tuple(ls), top, bottom, middle, ker, legs, ladder)
