"""Special preenvelopes and precovers: constructions and an exact verification battery.

Constructions:
  * bet_preenvelope: pushout over the classes of Ext(A1, B) of the ME ladders
    1_B -> c^zeta -> a, giving a special a-perp preenvelope of B.
  * bet_precover: the dual pullback construction over Ext(A, B0).
  * intersect_preenvelopes: pushout of two ladders along their inflations from 1_B.
  * iterated_intersection: fold of pairwise pushouts, compared with the one-shot pushout.
  * sum_preenvelope: the column (j1; j2).

Every universally quantified property is checked exactly, but only over a
declared finite family of probe objects; reports say so with exhaustive=False.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field, replace
from typing import Sequence

from .arrowcat import (
    ArrowConflation,
    arrow_pullback_many,
    arrow_pushout_many,
    arrow_pushout_two_inflations,
    me_extension,
)
from .exactlin import ContractViolation, Matrix, Subspace, rank
from .homext import Conflation, ext_matrix, ext_space, pull_matrix, push_matrix
from .ideals import (
    Generated,
    IdealSpec,
    Intersection,
    LeftOrthogonal,
    RightOrthogonal,
    Sum,
    contains,
    fiber,
)
from .quivrep import (
    Rep,
    RepMorphism,
    column,
    diagonal,
    direct_sum,
    direct_sum_morphisms,
    hom_space,
    zero_rep,
)
from .serialize import matrix_to_json, morphism_to_json

DEFAULT_ENUMERATION_CAP = 64


# -- records --------------------------------------------------------------

@dataclass(frozen=True)
class SpecialPreenvelope:
    """j: B -> C0 sitting in a ladder B -> C0 -> A0 over B -> C1 -> A1 with verticals (1_B, c, a)."""

    B: Rep
    j: RepMorphism
    ladder: ArrowConflation
    cosyzygy: RepMorphism
    ideal: IdealSpec
    provenance: str
    # the cosyzygy is the block sum of these arrows; injections are into its domain and codomain
    summands: tuple[RepMorphism, ...] = ()
    injections0: tuple[RepMorphism, ...] = ()
    injections1: tuple[RepMorphism, ...] = ()
    index_size: int = 0
    # comparison legs (ArrowMorphisms from each pushed-out ladder's middle arrow)
    certificates: tuple = ()


@dataclass(frozen=True)
class SpecialPrecover:
    """e: C1 -> A sitting in a ladder B0 -> C0 -> A over B1 -> C1 -> A with verticals (b, c, 1_A)."""

    A: Rep
    e: RepMorphism
    ladder: ArrowConflation
    syzygy: RepMorphism
    ideal: IdealSpec
    provenance: str
    summands: tuple[RepMorphism, ...] = ()
    projections0: tuple[RepMorphism, ...] = ()
    projections1: tuple[RepMorphism, ...] = ()
    index_size: int = 0


@dataclass(frozen=True)
class SumPreenvelope:
    """(j1; j2): B -> J1 + J2 for the sum of the two ideals."""

    B: Rep
    j: RepMorphism
    parts: tuple[RepMorphism, ...]
    projections: tuple[RepMorphism, ...]
    ideal: IdealSpec
    monic: bool
    factorization: RepMorphism | None  # (m1 + m2) after the diagonal, when both parts are monic


@dataclass
class Check:
    name: str
    status: str  # pass | fail | skipped
    detail: str = ""
    witness: dict | None = None

    def to_json(self) -> dict:
        out = {"name": self.name, "status": self.status, "detail": self.detail}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class VerificationReport:
    subject: str
    checks: list[Check] = dc_field(default_factory=list)
    probes: list[str] = dc_field(default_factory=list)
    exhaustive: bool = False

    @property
    def passed(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def status(self, name: str) -> str:
        for c in self.checks:
            if c.name == name:
                return c.status
        raise KeyError(name)

    def statuses(self) -> dict:
        return {c.name: c.status for c in self.checks}

    def to_json(self) -> dict:
        return {
            "subject": self.subject,
            "passed": self.passed,
            "exhaustive": self.exhaustive,
            "probes": list(self.probes),
            "checks": [c.to_json() for c in self.checks],
        }


def _label(m: Rep) -> str:
    return m.label or "x".join(map(str, m.dims))


# -- BET constructions ------------------------------------------------------

def _index_classes(space, mode: str, cap: int):
    if mode == "basis":
        return space.basis()
    if mode != "enumerate":
        raise ContractViolation(f"unknown mode {mode!r}; use 'enumerate' or 'basis'")
    F = space.field
    if not F.is_finite:
        raise ContractViolation("enumerate mode needs a finite field; the index set is infinite over Q")
    size = F.order ** space.dim
    if size > cap:
        raise ContractViolation(
            f"enumerate mode refused: |I| = {F.order}^{space.dim} = {size} exceeds bet_enumeration_cap = {cap}")
    return list(space.elements())


def bet_preenvelope(a: RepMorphism, B: Rep, mode: str = "enumerate",
                    cap: int = DEFAULT_ENUMERATION_CAP) -> SpecialPreenvelope:
    """Special a-perp preenvelope of B from the pushout of all ME ladders 1_B -> c^zeta -> a."""
    if a.quiver != B.quiver or a.field != B.field:
        raise ContractViolation("arrow and object live over different quivers or fields")
    space = ext_space(a.cod, B)
    ideal = RightOrthogonal((a,))
    one = RepMorphism.identity(B)
    if space.dim == 0:
        # Ext(a, 1_B) is zero, so the empty pushout 1_B is already special
        z = zero_rep(B.quiver, B.field)
        za = RepMorphism.identity(z)
        row_ = Conflation(one, RepMorphism.zero(B, z))
        ladder = ArrowConflation(row_, row_, one, one, za)
        return SpecialPreenvelope(B, one, ladder, za, ideal, f"bet:{mode}:empty", (), (), (), 0)
    classes = _index_classes(space, mode, cap)
    ladders = [me_extension(one, a, z).ladder for z in classes]
    po = arrow_pushout_many(ladders)
    m0 = po.ladder.top.inflation
    if not ext_matrix(a, m0).is_zero():
        raise AssertionError("BET postcondition violated: Ext(a, m0) is nonzero")
    n = len(classes)
    return SpecialPreenvelope(
        B, m0, po.ladder, po.cokernel_arrow, ideal, f"bet:{mode}",
        (a,) * n, po.top.cokernel.injections, po.bottom.cokernel.injections, n,
        tuple(leg for leg in po.legs),
    )


def bet_precover(b: RepMorphism, A: Rep, mode: str = "enumerate",
                 cap: int = DEFAULT_ENUMERATION_CAP) -> SpecialPrecover:
    """Special perp-b precover of A from the pullback of all ME ladders b -> c^zeta -> 1_A."""
    if b.quiver != A.quiver or b.field != A.field:
        raise ContractViolation("arrow and object live over different quivers or fields")
    space = ext_space(A, b.dom)
    ideal = LeftOrthogonal((b,))
    one = RepMorphism.identity(A)
    if space.dim == 0:
        z = zero_rep(A.quiver, A.field)
        zb = RepMorphism.identity(z)
        row_ = Conflation(RepMorphism.zero(z, A), one)
        ladder = ArrowConflation(row_, row_, zb, one, one)
        return SpecialPrecover(A, one, ladder, zb, ideal, f"bet-dual:{mode}:empty", (), (), (), 0)
    classes = _index_classes(space, mode, cap)
    ladders = [me_extension(b, one, z).ladder for z in classes]
    pb = arrow_pullback_many(ladders)
    e = pb.ladder.bottom.deflation
    if not ext_matrix(e, b).is_zero():
        raise AssertionError("dual BET postcondition violated: Ext(e, b) is nonzero")
    n = len(classes)
    return SpecialPrecover(
        A, e, pb.ladder, pb.kernel_arrow, ideal, f"bet-dual:{mode}",
        (b,) * n, pb.top.kernel.projections, pb.bottom.kernel.projections, n,
    )


# -- intersections ----------------------------------------------------------

def intersect_preenvelopes(sp1: SpecialPreenvelope, sp2: SpecialPreenvelope) -> SpecialPreenvelope:
    """Special preenvelope for the intersection of the two ideals: the pushout of the two ladders."""
    if sp1.B != sp2.B:
        raise ContractViolation("preenvelopes must share the object B")
    ap = arrow_pushout_two_inflations(sp1.ladder, sp2.ladder)
    problems = ap.validate()
    if problems:
        raise AssertionError("arrow pushout does not validate: " + "; ".join(problems))
    lad = ap.ladder
    inj0 = tuple(ap.top.cokernel.injections[0] @ i for i in sp1.injections0) + \
        tuple(ap.top.cokernel.injections[1] @ i for i in sp2.injections0)
    inj1 = tuple(ap.bottom.cokernel.injections[0] @ i for i in sp1.injections1) + \
        tuple(ap.bottom.cokernel.injections[1] @ i for i in sp2.injections1)
    certs = (ap.h1, ap.h2)
    return SpecialPreenvelope(
        sp1.B, lad.top.inflation, lad, ap.cokernel_arrow, Intersection((sp1.ideal, sp2.ideal)),
        f"intersect({sp1.provenance},{sp2.provenance})",
        sp1.summands + sp2.summands, inj0, inj1, sp1.index_size + sp2.index_size, certs,
    )


def intersection_certificates(sp: SpecialPreenvelope, parts: Sequence[SpecialPreenvelope]) -> list[str]:
    """Check m0 = h0^i m0^i for the stored comparison legs; returns problems."""
    problems = []
    if len(sp.certificates) != len(parts):
        return [f"{len(sp.certificates)} comparison legs recorded for {len(parts)} parts"]
    for k, (h, part) in enumerate(zip(sp.certificates, parts)):
        if h.f0 @ part.j != sp.j:
            problems.append(f"m0 != h0^{k + 1} m0^{k + 1}")
        if h.f1 @ part.ladder.bottom.inflation != sp.ladder.bottom.inflation:
            problems.append(f"m1 != h1^{k + 1} m1^{k + 1}")
    return problems


def one_shot_intersection(sps: Sequence[SpecialPreenvelope]) -> SpecialPreenvelope:
    """The finite coproduct pushout of all ladders at once."""
    if not sps:
        raise ContractViolation("intersection of an empty family")
    B = sps[0].B
    if any(sp.B != B for sp in sps):
        raise ContractViolation("preenvelopes must share the object B")
    ap = arrow_pushout_many([sp.ladder for sp in sps])
    problems = ap.validate()
    if problems:
        raise AssertionError("one-shot arrow pushout does not validate: " + "; ".join(problems))
    inj0, inj1 = [], []
    for k, sp in enumerate(sps):
        inj0.extend(ap.top.cokernel.injections[k] @ i for i in sp.injections0)
        inj1.extend(ap.bottom.cokernel.injections[k] @ i for i in sp.injections1)
    summands = tuple(s for sp in sps for s in sp.summands)
    ideal = Intersection(tuple(sp.ideal for sp in sps))
    return SpecialPreenvelope(B, ap.ladder.top.inflation, ap.ladder, ap.cokernel_arrow, ideal,
                              "one-shot(" + ",".join(sp.provenance for sp in sps) + ")",
                              summands, tuple(inj0), tuple(inj1), sum(sp.index_size for sp in sps),
                              tuple(ap.legs))


@dataclass
class IteratedIntersection:
    fold: SpecialPreenvelope
    one_shot: SpecialPreenvelope
    fold_report: VerificationReport | None
    one_shot_report: VerificationReport | None

    @property
    def agree(self) -> bool | None:
        if self.fold_report is None or self.one_shot_report is None:
            return None
        return self.fold_report.statuses() == self.one_shot_report.statuses()


def iterated_intersection(sps: Sequence[SpecialPreenvelope], probes: Sequence[Rep] | None = None) -> IteratedIntersection:
    """Fold of pairwise pushouts plus the one-shot pushout; with probes, both are verified and compared."""
    sps = list(sps)
    if not sps:
        raise ContractViolation("intersection of an empty family")
    acc = sps[0]
    for sp in sps[1:]:
        acc = intersect_preenvelopes(acc, sp)
    if len(sps) > 1:
        # present the fold's ideal flat so that both reports describe the same ideal
        acc = replace(acc, ideal=Intersection(tuple(sp.ideal for sp in sps)))
    one = one_shot_intersection(sps)
    if probes is None:
        return IteratedIntersection(acc, one, None, None)
    return IteratedIntersection(acc, one, verify_special_preenvelope(acc, probes),
                                verify_special_preenvelope(one, probes))


# -- sums -------------------------------------------------------------------

def sum_preenvelope(j1: RepMorphism, j2: RepMorphism, spec1: IdealSpec, spec2: IdealSpec) -> SumPreenvelope:
    if j1.dom != j2.dom:
        raise ContractViolation("summand preenvelopes must share their domain")
    s = direct_sum([j1.cod, j2.cod])
    j = column([j1, j2], s)
    monic = j1.is_mono() and j2.is_mono()
    fact = None
    if monic:
        fact = direct_sum_morphisms([j1, j2])
        fact = RepMorphism(fact.dom, s.rep, fact.comps) @ RepMorphism(
            j1.dom, fact.dom, diagonal(j1.dom, 2).comps)
        if fact != j or not j.is_mono():  # pragma: no cover - identity of block matrices
            raise AssertionError("(j1; j2) differs from (j1 + j2) after the diagonal")
    return SumPreenvelope(j1.dom, j, (j1, j2), s.projections, Sum((spec1, spec2)), monic, fact)


# -- verification -------------------------------------------------------------

def _mwit(f: RepMorphism) -> dict:
    return morphism_to_json(f)


def _precomposition_image(j: RepMorphism, Y: Rep) -> Subspace:
    """{g j : g in Hom(C0, Y)} inside Hom(B, Y)."""
    H = hom_space(j.dom, Y)
    return Subspace.span(H.field, H.dim, [H.coords(g @ j) for g in hom_space(j.cod, Y).basis])


def _postcomposition_image(e: RepMorphism, X: Rep) -> Subspace:
    H = hom_space(X, e.cod)
    return Subspace.span(H.field, H.dim, [H.coords(e @ g) for g in hom_space(X, e.dom).basis])


def _canonical_check(name: str, injections, other: Rep, pull: bool, index_size: int = -1) -> Check:
    """Ext(+A^i, B) -> prod Ext(A^i, B) along the stored injections must be invertible (dually for projections)."""
    if not injections:
        if index_size == 0:
            return Check(name, "pass", "empty index set, both sides are the zero group")
        return Check(name, "skipped", "no recorded summands")
    F = other.field
    if pull:
        blocks = [pull_matrix(i, other) for i in injections]
        src = ext_space(injections[0].cod, other).dim
    else:
        blocks = [push_matrix(other, p) for p in injections]
        src = ext_space(other, injections[0].dom).dim
    m = Matrix.vstack(F, blocks, src)
    r = rank(m)
    if m.rows == m.cols == r:
        return Check(name, "pass", f"{len(blocks)} summands, Ext dimension {src}")
    return Check(name, "fail", f"canonical map has shape {m.rows}x{m.cols} and rank {r}",
                 {"matrix": matrix_to_json(m)})


def verify_special_preenvelope(sp: SpecialPreenvelope, probes: Sequence[Rep]) -> VerificationReport:
    rep = VerificationReport(f"special preenvelope of {_label(sp.B)} for {sp.ideal.describe()}",
                             probes=[_label(p) for p in probes], exhaustive=False)
    lad = sp.ladder
    # (i) ladder shape and exactness
    problems = list(lad.diagnose())
    if lad.left != RepMorphism.identity(sp.B):
        problems.append("left vertical is not the identity on B")
    if lad.top.inflation != sp.j:
        problems.append("top inflation is not j")
    if lad.right != sp.cosyzygy:
        problems.append("right vertical is not the cosyzygy")
    if problems:
        rep.checks.append(Check("ladder", "fail", "; ".join(problems),
                                {"middle": _mwit(lad.middle)}))
    else:
        rep.checks.append(Check("ladder", "pass", "both rows are conflations and both squares commute"))
    # (ii) membership
    if contains(sp.ideal, sp.j):
        rep.checks.append(Check("membership", "pass", "j lies in the ideal"))
    else:
        rep.checks.append(Check("membership", "fail", "j is not in the ideal", {"j": _mwit(sp.j)}))
    # (iii) factorization on probes
    fail = None
    for Y in probes:
        fb = fiber(sp.ideal, sp.B, Y)
        img = _precomposition_image(sp.j, Y)
        if not fb.subspace.issubspace(img):
            bad = next(v for v in fb.subspace.vectors() if not img.contains(v))
            fail = Check("factorization", "fail", f"a fiber morphism B -> {_label(Y)} does not factor through j",
                         {"probe": _label(Y), "morphism": _mwit(fb.hom.element(bad))})
            break
    rep.checks.append(fail or Check("factorization", "pass", f"fiber(B, Y) inside Hom(C0, Y) j for {len(probes)} probes"))
    # (iv) cosyzygy orthogonality on all probe pairs
    fail = None
    count = 0
    for X, Y in itertools.product(probes, repeat=2):
        for jp in fiber(sp.ideal, X, Y).basis():
            count += 1
            if not ext_matrix(sp.cosyzygy, jp).is_zero():
                fail = Check("cosyzygy_orthogonality", "fail",
                             f"Ext(cosyzygy, j') is nonzero for j': {_label(X)} -> {_label(Y)}",
                             {"source": _label(X), "target": _label(Y), "morphism": _mwit(jp),
                              "ext_matrix": matrix_to_json(ext_matrix(sp.cosyzygy, jp))})
                break
        if fail:
            break
    rep.checks.append(fail or Check("cosyzygy_orthogonality", "pass",
                                    f"{count} fiber basis morphisms over {len(probes) ** 2} probe pairs"))
    # (v) canonical morphism on both sides of the cosyzygy
    c0 = _canonical_check("canonical_morphism", sp.injections0, sp.B, pull=True, index_size=sp.index_size)
    c1 = _canonical_check("canonical_morphism", sp.injections1, sp.B, pull=True, index_size=sp.index_size)
    if c0.status == "fail":
        rep.checks.append(c0)
    elif c1.status == "fail":
        rep.checks.append(c1)
    elif c0.status == "skipped" or not sp.index_size:
        rep.checks.append(c0)
    else:
        rep.checks.append(Check("canonical_morphism", "pass", f"domain: {c0.detail}; codomain: {c1.detail}"))
    return rep


def verify_special_precover(sp: SpecialPrecover, probes: Sequence[Rep]) -> VerificationReport:
    rep = VerificationReport(f"special precover of {_label(sp.A)} for {sp.ideal.describe()}",
                             probes=[_label(p) for p in probes], exhaustive=False)
    lad = sp.ladder
    problems = list(lad.diagnose())
    if lad.right != RepMorphism.identity(sp.A):
        problems.append("right vertical is not the identity on A")
    if lad.bottom.deflation != sp.e:
        problems.append("bottom deflation is not e")
    if lad.left != sp.syzygy:
        problems.append("left vertical is not the syzygy")
    if problems:
        rep.checks.append(Check("ladder", "fail", "; ".join(problems), {"middle": _mwit(lad.middle)}))
    else:
        rep.checks.append(Check("ladder", "pass", "both rows are conflations and both squares commute"))
    if contains(sp.ideal, sp.e):
        rep.checks.append(Check("membership", "pass", "e lies in the ideal"))
    else:
        rep.checks.append(Check("membership", "fail", "e is not in the ideal", {"e": _mwit(sp.e)}))
    fail = None
    for X in probes:
        fb = fiber(sp.ideal, X, sp.A)
        img = _postcomposition_image(sp.e, X)
        if not fb.subspace.issubspace(img):
            bad = next(v for v in fb.subspace.vectors() if not img.contains(v))
            fail = Check("factorization", "fail", f"a fiber morphism {_label(X)} -> A does not factor through e",
                         {"probe": _label(X), "morphism": _mwit(fb.hom.element(bad))})
            break
    rep.checks.append(fail or Check("factorization", "pass", f"fiber(X, A) inside e Hom(X, C1) for {len(probes)} probes"))
    fail = None
    count = 0
    for X, Y in itertools.product(probes, repeat=2):
        for ip in fiber(sp.ideal, X, Y).basis():
            count += 1
            if not ext_matrix(ip, sp.syzygy).is_zero():
                fail = Check("syzygy_orthogonality", "fail",
                             f"Ext(i', syzygy) is nonzero for i': {_label(X)} -> {_label(Y)}",
                             {"source": _label(X), "target": _label(Y), "morphism": _mwit(ip),
                              "ext_matrix": matrix_to_json(ext_matrix(ip, sp.syzygy))})
                break
        if fail:
            break
    rep.checks.append(fail or Check("syzygy_orthogonality", "pass",
                                    f"{count} fiber basis morphisms over {len(probes) ** 2} probe pairs"))
    c0 = _canonical_check("canonical_morphism", sp.projections0, sp.A, pull=False, index_size=sp.index_size)
    c1 = _canonical_check("canonical_morphism", sp.projections1, sp.A, pull=False, index_size=sp.index_size)
    if c0.status == "fail":
        rep.checks.append(c0)
    elif c1.status == "fail":
        rep.checks.append(c1)
    elif c0.status == "skipped" or not sp.index_size:
        rep.checks.append(c0)
    else:
        rep.checks.append(Check("canonical_morphism", "pass", f"domain: {c0.detail}; codomain: {c1.detail}"))
    return rep


def verify_sum_preenvelope(sp: SumPreenvelope, probes: Sequence[Rep]) -> VerificationReport:
    rep = VerificationReport(f"sum preenvelope of {_label(sp.B)} for {sp.ideal.describe()}",
                             probes=[_label(p) for p in probes], exhaustive=False)
    bad = [k + 1 for k, (pr, jk) in enumerate(zip(sp.projections, sp.parts)) if pr @ sp.j != jk]
    if bad:
        k = bad[0] - 1
        rep.checks.append(Check("certificates", "fail", f"projection {bad} does not recover its part",
                                {"part": _mwit(sp.parts[k]), "recovered": _mwit(sp.projections[k] @ sp.j)}))
    else:
        rep.checks.append(Check("certificates", "pass", "pr_k (j1; j2) = j_k for k = 1, 2"))
    if contains(sp.ideal, sp.j):
        rep.checks.append(Check("membership", "pass", "(j1; j2) lies in the sum ideal"))
    else:
        rep.checks.append(Check("membership", "fail", "(j1; j2) is not in the sum ideal", {"j": _mwit(sp.j)}))
    fail = None
    for Y in probes:
        fb = fiber(sp.ideal, sp.B, Y)
        img = _precomposition_image(sp.j, Y)
        if not fb.subspace.issubspace(img):
            v = next(v for v in fb.subspace.vectors() if not img.contains(v))
            fail = Check("factorization", "fail", f"a fiber morphism B -> {_label(Y)} does not factor",
                         {"probe": _label(Y), "morphism": _mwit(fb.hom.element(v))})
            break
    rep.checks.append(fail or Check("factorization", "pass", f"{len(probes)} probes"))
    if sp.monic:
        if sp.j.is_mono() and sp.factorization == sp.j:
            rep.checks.append(Check("monic", "pass", "(j1; j2) = (j1 + j2) d is vertexwise injective"))
        else:
            wit = {"j": _mwit(sp.j), "ranks": list(sp.j.ranks())}
            if sp.factorization is not None:
                wit["factorization"] = _mwit(sp.factorization)
            rep.checks.append(Check("monic", "fail", "(j1; j2) is not the monic (j1 + j2) d", wit))
    else:
        rep.checks.append(Check("monic", "skipped", "a part is not an inflation"))
    return rep


# -- falsification fixtures ---------------------------------------------------

def _with(sp, **kw):
    return replace(sp, **kw)


def corrupt_ladder(sp: SpecialPreenvelope) -> SpecialPreenvelope:
    """Replace the middle vertical of the ladder by zero."""
    lad = sp.ladder
    bad = RepMorphism.zero(lad.middle.dom, lad.middle.cod)
    return _with(sp, ladder=replace(lad, middle=bad))


def corrupt_membership(sp):
    """Claim the zero ideal (works for every record type)."""
    return _with(sp, ideal=Generated(()))


def corrupt_factorization(sp):
    """Zero out the approximation map; the zero morphism is in every ideal but factors nothing."""
    if isinstance(sp, SpecialPrecover):
        return _with(sp, e=RepMorphism.zero(sp.e.dom, sp.e.cod))
    return _with(sp, j=RepMorphism.zero(sp.j.dom, sp.j.cod))


def corrupt_orthogonality(sp, bad: RepMorphism):
    """Swap in a (co)syzygy that is not orthogonal to the ideal."""
    if isinstance(sp, SpecialPrecover):
        return _with(sp, syzygy=bad)
    return _with(sp, cosyzygy=bad)


def corrupt_canonical(sp):
    """Replace the first recorded injection (projection, for precovers) by zero."""
    key = "projections0" if isinstance(sp, SpecialPrecover) else "injections0"
    maps = getattr(sp, key)
    if not maps:
        raise ContractViolation("no recorded summand maps to corrupt")
    return _with(sp, **{key: (RepMorphism.zero(maps[0].dom, maps[0].cod),) + maps[1:]})


def corrupt_certificates(sp: SumPreenvelope) -> SumPreenvelope:
    """Replace the first recorded part by zero so its projection no longer recovers it."""
    j1 = sp.parts[0]
    if j1.is_zero():
        raise ContractViolation("the first part is zero; nothing to corrupt")
    return _with(sp, parts=(RepMorphism.zero(j1.dom, j1.cod),) + sp.parts[1:])


def corrupt_monic(sp: SumPreenvelope) -> SumPreenvelope:
    """Record a factorization that is not the column map."""
    if not sp.monic:
        raise ContractViolation("the sum record has no monic claim to corrupt")
    return _with(sp, factorization=RepMorphism.zero(sp.j.dom, sp.j.cod))
