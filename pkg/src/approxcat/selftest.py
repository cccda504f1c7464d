"""Seeded invariant suites, runnable without pytest (``approxcat selftest --seed N``).

Each suite draws small random instances from its own ``random.Random`` and
records how many checks ran and which (if any) failed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from .approx import bet_preenvelope, bet_precover, verify_special_preenvelope, verify_special_precover
from .arrowcat import arr_ext_space, epsilon_matrix, leibniz_ext_map
from .exactlin import Field, Matrix, kernel, rank, rref, solve
from .homext import classify, ext_matrix, ext_space, is_split, pull_class, pullback_deflation, push_class, \
    pushout_inflation, realize
from .ideals import RightOrthogonal, fiber
from .quivrep import (
    RepMorphism,
    cokernel_rep,
    happel_unger_quiver,
    hom_space,
    kernel_rep,
    linear_quiver,
    probe_objects,
    projective,
    projective_cover,
    random_morphism,
    random_rep,
    tau,
    top,
)


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failures: list = dc_field(default_factory=list)

    def expect(self, ok: bool, what: str):
        self.checks += 1
        if not ok and len(self.failures) < 5:
            self.failures.append(what)

    def to_json(self) -> dict:
        return {"name": self.name, "checks": self.checks, "failures": list(self.failures),
                "status": "pass" if not self.failures else "fail"}


def _fields():
    return [Field.prime(2), Field.prime(3), Field.rationals()]


def suite_exactlin(rng: random.Random) -> SuiteResult:
    res = SuiteResult("exactlin")
    for _ in range(60):
        F = rng.choice(_fields())
        r, c = rng.randint(0, 5), rng.randint(0, 5)
        m = Matrix.random(F, r, c, rng)
        red, piv, rk = rref(m)
        res.expect(rref(red)[0] == red, "rref is idempotent")
        res.expect(rk == rank(m.T), "row rank equals column rank")
        k = kernel(m)
        res.expect(k.dim + rk == c, "rank-nullity")
        res.expect(all(not any(m.apply(v)) for v in k.vectors()), "kernel vectors are killed")
        b = m.apply([F.random_element(rng) for _ in range(c)])
        x = solve(m, b)
        res.expect(x is not None and m.apply(x) == tuple(b), "consistent systems are solved exactly")
    return res


def _quivers():
    return [linear_quiver(2), linear_quiver(3), happel_unger_quiver()]


def suite_quivrep(rng: random.Random) -> SuiteResult:
    res = SuiteResult("quivrep")
    for _ in range(20):
        q = rng.choice(_quivers())
        F = rng.choice(_fields()[:2])
        M = random_rep(q, F, [rng.randint(0, 2) for _ in q.vertices], rng)
        N = random_rep(q, F, [rng.randint(0, 2) for _ in q.vertices], rng)
        f = random_morphism(M, N, rng)
        ker, cok = kernel_rep(f), cokernel_rep(f)
        res.expect((f @ ker.inclusion).is_zero(), "f after kernel inclusion is zero")
        res.expect((cok.projection @ f).is_zero(), "cokernel projection after f is zero")
        res.expect(all(k + r == d for k, r, d in zip(ker.rep.dims, f.ranks(), M.dims)), "vertexwise rank-nullity")
        cov = projective_cover(M)
        res.expect(cov.deflation.is_epi(), "projective cover is vertexwise surjective")
        res.expect(top(cov.rep).cod.dims == top(M).cod.dims, "cover preserves the top")
        res.expect(hom_space(M, M).dim >= (1 if M.total_dim else 0), "identity lies in End(M)")
        for v in q.vertices:
            res.expect(tau(projective(q, F, v)).is_zero(), "tau kills projectives")
    return res


def suite_homext(rng: random.Random) -> SuiteResult:
    res = SuiteResult("homext")
    for _ in range(15):
        q = rng.choice(_quivers())
        F = rng.choice(_fields()[:2])
        A = random_rep(q, F, [rng.randint(0, 2) for _ in q.vertices], rng)
        B = random_rep(q, F, [rng.randint(0, 2) for _ in q.vertices], rng)
        E = ext_space(A, B)
        x = E.element([F.random_element(rng) for _ in range(E.dim)])
        c = realize(x)
        res.expect(c.diagnose() is None, "realization is a conflation")
        res.expect(classify(c) == x, "classify after realize is the identity")
        res.expect(is_split(realize(E.zero())), "the zero class splits")
        B2 = random_rep(q, F, [rng.randint(0, 2) for _ in q.vertices], rng)
        b = random_morphism(B, B2, rng)
        res.expect(classify(pushout_inflation(c, b).conflation) == push_class(x, b), "pushout agrees with push_class")
        A2 = random_rep(q, F, [rng.randint(0, 2) for _ in q.vertices], rng)
        a = random_morphism(A2, A, rng)
        res.expect(classify(pullback_deflation(c, a).conflation) == pull_class(x, a), "pullback agrees with pull_class")
    return res


def suite_arrowcat(rng: random.Random) -> SuiteResult:
    res = SuiteResult("arrowcat")
    q = linear_quiver(2)
    F = Field.prime(2)
    probes = probe_objects(q, F)
    for _ in range(15):
        X, Y, Z, W = (rng.choice(probes) for _ in range(4))
        a, b = random_morphism(X, Y, rng), random_morphism(Z, W, rng)
        res.expect(epsilon_matrix(a, b) @ leibniz_ext_map(a, b) == ext_matrix(a, b), "epsilon after Leibniz Ext is Ext(a, b)")
        one, two = RepMorphism.identity(X), RepMorphism.identity(Z)
        res.expect(arr_ext_space(one, two).dim == ext_space(X, Z).dim, "Ext of identity arrows is Ext of objects")
    return res


def suite_ideals(rng: random.Random) -> SuiteResult:
    res = SuiteResult("ideals")
    q = linear_quiver(2)
    F = Field.prime(2)
    probes = probe_objects(q, F)
    for _ in range(10):
        s = random_morphism(rng.choice(probes), rng.choice(probes), rng)
        spec = RightOrthogonal((s,))
        A, B, A2, B2 = (rng.choice(probes) for _ in range(4))
        fb = fiber(spec, A, B)
        for j in fb.basis():
            f, h = random_morphism(A2, A, rng), random_morphism(B, B2, rng)
            res.expect(fiber(spec, A2, B2).contains(h @ j @ f), "fibers are closed under composition")
            res.expect(ext_matrix(s, j).is_zero(), "right orthogonal members kill Ext(s, -)")
    return res


def suite_approx(rng: random.Random) -> SuiteResult:
    res = SuiteResult("approx")
    for _ in range(4):
        q = rng.choice(_quivers()[:2])
        F = Field.prime(2)
        probes = probe_objects(q, F, 4)
        X, Y, B = (rng.choice(probes) for _ in range(3))
        a = random_morphism(X, Y, rng)
        sp = bet_preenvelope(a, B, "basis")
        res.expect(ext_matrix(a, sp.j).is_zero(), "BET postcondition")
        res.expect(verify_special_preenvelope(sp, probes).passed, "BET battery passes")
        pc = bet_precover(a, B, "basis")
        res.expect(verify_special_precover(pc, probes).passed, "dual BET battery passes")
    return res


SUITES = [suite_exactlin, suite_quivrep, suite_homext, suite_arrowcat, suite_ideals, suite_approx]


def run_selftest(seed: int = 0) -> list[SuiteResult]:
    out = []
    for k, suite in enumerate(SUITES):
        out.append(suite(random.Random(seed * 1000 + k)))
    return out
