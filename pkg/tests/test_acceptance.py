"""One test per acceptance criterion.

Each test runs inside ``criterion(...)`` which times it against its budget and
prints a single PASS/FAIL line; the lines are repeated in the terminal summary.
All comparisons are exact (tolerance zero).
"""

import itertools
import json
import random
from fractions import Fraction

from approxcat.approx import (
    bet_precover,
    bet_preenvelope,
    corrupt_canonical,
    corrupt_certificates,
    corrupt_factorization,
    corrupt_ladder,
    corrupt_membership,
    corrupt_monic,
    corrupt_orthogonality,
    intersect_preenvelopes,
    intersection_certificates,
    iterated_intersection,
    sum_preenvelope,
    verify_special_precover,
    verify_special_preenvelope,
    verify_sum_preenvelope,
)
from approxcat.arrowcat import arr_ext_space, arrow_pushout_two_inflations, epsilon_matrix, leibniz_ext_map
from approxcat.cli import run
from approxcat.exactlin import Field, Matrix, Subspace, inverse, kernel, rank, solve
from approxcat.homext import (
    canonical_ext_morphism,
    classify,
    ext_matrix,
    ext_space,
    pull_class,
    realize,
    retraction,
)
from approxcat.ideals import RightOrthogonal, contains, fiber
from approxcat.quivrep import (
    RepMorphism,
    direct_sum,
    happel_unger_quiver,
    hom_basis,
    hom_space,
    linear_quiver,
    probe_objects,
    random_morphism,
    random_rep,
    simple,
)
from oracles import (
    all_matrices,
    all_reps,
    brute_ext_dim,
    brute_hom_dim,
    middle_term_ext_dim,
    naive_nullspace,
    naive_rank,
    naive_solve,
    to_rep,
)

F2, F3, Q = Field.prime(2), Field.prime(3), Field.rationals()
A2, A3, HU = linear_quiver(2), linear_quiver(3), happel_unger_quiver()
one = RepMorphism.identity
# enumerate mode is used up to this many classes, basis mode above it; the
# enumerated C0 grows with the number of classes and dominates verification time
ENUMERATE_UP_TO = 16


def rand_rep_total(q, F, rng, total=3, lo=1):
    """A random representation of total dimension between lo and total."""
    n = rng.randint(lo, total)
    dims = [0] * q.n
    for _ in range(n):
        dims[rng.randrange(q.n)] += 1
    return random_rep(q, F, dims, rng)


def bet(a, B):
    """BET preenvelope, enumerating classes when there are at most ENUMERATE_UP_TO of them."""
    size = B.field.order ** arr_ext_space(a, one(B)).dim
    return bet_preenvelope(a, B, "enumerate" if size <= ENUMERATE_UP_TO else "basis")


# -- 1 ------------------------------------------------------------------------------

def _check_against_naive(F, rows, r, c, p, bs):
    M = Matrix.from_rows(F, rows, c)
    assert rank(M) == naive_rank(rows, c, p)
    assert kernel(M) == Subspace.span(F, c, naive_nullspace(rows, c, p))
    for b in bs:
        x, y = solve(M, b), naive_solve(rows, c, b, p)
        assert (x is None) == (y is None)
        if x is not None:
            assert list(x) == [F(v) for v in y]
            assert list(M.apply(x)) == [F(v) for v in b]


def test_criterion_1_linear_algebra_oracle(criterion):
    with criterion(1, "rank/kernel/solve vs naive elimination", 5) as cr:
        n_exh = 0
        for r, c in itertools.product(range(1, 4), repeat=2):
            bs = [list(b) for b in itertools.product(range(2), repeat=r)]
            for m in all_matrices(r, c, 2):
                _check_against_naive(F2, [list(row) for row in m], r, c, 2, bs)
                n_exh += 1
        rng = random.Random(20240601)
        for k in range(200):
            r, c = rng.randint(1, 6), rng.randint(1, 6)
            if k % 2:
                F, p = Q, 0
                rows = [[Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(c)] for _ in range(r)]
                bs = [[Fraction(rng.randint(-3, 3)) for _ in range(r)] for _ in range(3)]
            else:
                F, p = F3, 3
                rows = [[rng.randrange(3) for _ in range(c)] for _ in range(r)]
                bs = [[rng.randrange(3) for _ in range(r)] for _ in range(3)]
            # also a right-hand side that is guaranteed solvable
            x = [rng.randrange(3) for _ in range(c)]
            bs.append([sum(Fraction(a) * b for a, b in zip(row, x)) % 3 if p else
                       sum(a * b for a, b in zip(row, x)) for row in rows])
            _check_against_naive(F, rows, r, c, p, bs)
        cr.note(f"{n_exh} exhaustive F2 matrices, 200 random F3/Q")


# -- 2 ------------------------------------------------------------------------------

def _compare_hom_ext(q, M, N, middle=False):
    ends = list(q.ends)
    A, B = to_rep(q, F2, M), to_rep(q, F2, N)
    assert hom_space(A, B).dim == brute_hom_dim(M, N, ends, 2), (M, N)
    e = ext_space(A, B).dim
    assert e == brute_ext_dim(M, N, ends, 2), (M, N)
    if middle:
        assert e == middle_term_ext_dim(M, N, ends, 2), (M, N)


def _bits(q, M, N):
    (dm, _), (dn, _) = M, N
    return sum(dm[v] * dn[v] for v in range(q.n)) + sum(dn[t] * dm[s] for s, t in q.ends)


def test_criterion_2_hom_ext_brute_force(criterion):
    with criterion(2, "Hom/Ext vs exhaustive enumeration on A2 and Happel-Unger over F2, dims <= 2", 60) as cr:
        pairs = 0
        # A2: every pair of representations with dims <= 2 at each vertex
        a2 = [r for dims in itertools.product(range(3), repeat=2) if any(dims)
              for r in all_reps(list(A2.ends), dims, 2)]
        for M, N in itertools.product(a2, repeat=2):
            _compare_hom_ext(A2, M, N, middle=_bits(A2, M, N) <= 8)
            pairs += 1
        # Happel-Unger: every pair with dims <= 1, then seeded pairs with dims <= 2
        ends = list(HU.ends)
        small = [r for dims in itertools.product(range(2), repeat=3) if any(dims) for r in all_reps(ends, dims, 2)]
        for M, N in itertools.product(small, repeat=2):
            _compare_hom_ext(HU, M, N, middle=_bits(HU, M, N) <= 9)
            pairs += 1
        rng = random.Random(7)
        for _ in range(120):
            M, N = (rng.choice(list(all_reps(ends, [rng.randint(0, 2) for _ in range(3)], 2))) for _ in range(2))
            if not any(M[0]) or not any(N[0]):
                continue
            _compare_hom_ext(HU, M, N, middle=_bits(HU, M, N) <= 10)
            pairs += 1
        cr.note(f"{pairs} pairs")


# -- 3 ------------------------------------------------------------------------------

def test_criterion_3_realization_round_trip(criterion):
    with criterion(3, "classify(realize(x)) = x on every class, total dim <= 3", 30) as cr:
        classes = spaces = 0
        for q in (A2, A3, HU):
            reps = [to_rep(q, F2, r) for dims in itertools.product(range(3), repeat=q.n)
                    if 1 <= sum(dims) <= 2 for r in all_reps(list(q.ends), dims, 2)]
            for A, B in itertools.product(reps, repeat=2):
                if sum(A.dims) + sum(B.dims) > 3:
                    continue
                E = ext_space(A, B)
                spaces += 1
                assert retraction(realize(E.zero())) is not None
                for x in E.elements():
                    c = realize(x)
                    assert c.diagnose() is None and classify(c) == x
                    classes += 1
        cr.note(f"{spaces} Ext spaces, {classes} classes")


# -- 4 ------------------------------------------------------------------------------

def test_criterion_4_leibniz_identity(criterion):
    with criterion(4, "epsilon . Leibniz Ext = ext_matrix on probe arrow pairs", 30) as cr:
        rng = random.Random(4)
        families = [(A2, F2, probe_objects(A2, F2)), (HU, F2, probe_objects(HU, F2, 6)),
                    (A3, F3, probe_objects(A3, F3, 4))]
        pairs = 0
        for q, F, ps in families:
            for _ in range(20):
                a = random_morphism(rng.choice(ps), rng.choice(ps), rng)
                b = random_morphism(rng.choice(ps), rng.choice(ps), rng)
                assert epsilon_matrix(a, b) @ leibniz_ext_map(a, b) == ext_matrix(a, b)
                pairs += 1
        # and the identities of the probes against each other
        for X, Y in itertools.product(probe_objects(A2, F2), repeat=2):
            assert epsilon_matrix(one(X), one(Y)) @ leibniz_ext_map(one(X), one(Y)) == ext_matrix(one(X), one(Y))
            pairs += 1
        assert pairs >= 50
        cr.note(f"{pairs} pairs")


# -- 5 ------------------------------------------------------------------------------

def _factorization_holds(spec, j, Y):
    H = hom_space(j.dom, Y)
    img = Subspace.span(j.field, H.dim, [H.coords(g @ j) for g in hom_basis(j.cod, Y)])
    return all(img.contains(H.coords(f)) for f in fiber(spec, j.dom, Y).basis())


def test_criterion_5_bet_construction(criterion):
    with criterion(5, "BET: ext_matrix(a, m0) = 0 and fiber factorization on every probe", 120) as cr:
        rng = random.Random(5)
        nontrivial = enumerated = 0
        for k in range(50):
            q = (A2, A3, HU)[k % 3]
            F = (F2, F3)[(k // 3) % 2]
            A0, A1, B = (rand_rep_total(q, F, rng) for _ in range(3))
            a = random_morphism(A0, A1, rng)
            if k % 5 == 0:
                a = one(A1)
            sp = bet(a, B)
            nontrivial += sp.index_size > 1
            enumerated += sp.provenance.startswith("bet:enumerate")
            assert ext_matrix(a, sp.j).is_zero()
            spec = RightOrthogonal((a,))
            probes = probe_objects(q, F, 4)
            for Y in probes:
                assert _factorization_holds(spec, sp.j, Y), (k, Y.label)
            assert verify_special_preenvelope(sp, probes).passed, k
        assert nontrivial >= 10
        cr.note(f"50 instances, {nontrivial} with a nonzero index set, {enumerated} in enumerate mode")


# -- 6 ------------------------------------------------------------------------------

def test_criterion_6_intersection_construction(criterion):
    with criterion(6, "intersection pushout: battery, blockwise cokernel arrow, certificates", 120) as cr:
        rng = random.Random(6)
        for k in range(30):
            q = (A2, A3, HU)[k % 3]
            F = (F2, F3)[(k // 3) % 2]
            B = rand_rep_total(q, F, rng)
            arrows = []
            for _ in range(2):
                A1 = rand_rep_total(q, F, rng)
                arrows.append(one(A1) if rng.random() < 0.4 else random_morphism(rand_rep_total(q, F, rng), A1, rng))
            sp1, sp2 = (bet(a, B) for a in arrows)
            it = intersect_preenvelopes(sp1, sp2)
            probes = probe_objects(q, F, 4)
            assert verify_special_preenvelope(it, probes).passed, k
            for a in arrows:
                assert contains(RightOrthogonal((a,)), it.j)
            ap = arrow_pushout_two_inflations(sp1.ladder, sp2.ladder)
            assert ap.cokernel_arrow == it.cosyzygy
            parts = (sp1.cosyzygy, sp2.cosyzygy)
            for r, c in itertools.product(range(2), repeat=2):
                block = ap.bottom.cokernel.projections[r] @ it.cosyzygy @ ap.top.cokernel.injections[c]
                assert block == (parts[r] if r == c else RepMorphism.zero(parts[c].dom, parts[r].cod))
            assert intersection_certificates(it, [sp1, sp2]) == []
            for h, part in zip(it.certificates, (sp1, sp2)):
                assert h.f0 @ part.j == it.j
        cr.note("30 pairs")


# -- 7 ------------------------------------------------------------------------------

def test_criterion_7_finite_instances(criterion):
    with criterion(7, "fold = one-shot on triples; canonical Ext decomposition is an isomorphism", 60) as cr:
        rng = random.Random(70)
        for k in range(10):
            q = (A2, A3, HU)[k % 3]
            F = F2 if k < 6 else F3
            B = rand_rep_total(q, F, rng)
            sps = [bet(one(rand_rep_total(q, F, rng)) if rng.random() < 0.5 else
                       random_morphism(rand_rep_total(q, F, rng), rand_rep_total(q, F, rng), rng), B)
                   for _ in range(3)]
            probes = probe_objects(q, F, 4)
            res = iterated_intersection(sps, probes)
            assert res.fold_report.statuses() == res.one_shot_report.statuses()
            assert res.agree and res.fold_report.passed
            assert res.fold.j.cod.dims == res.one_shot.j.cod.dims
        for k in range(20):
            q = (A2, A3, HU)[k % 3]
            F = (F2, F3)[k % 2]
            parts = [rand_rep_total(q, F, rng) for _ in range(2 + k % 2)]
            B = rand_rep_total(q, F, rng)
            m, ok = canonical_ext_morphism(parts, B)
            ds = direct_sum(parts)
            E = ext_space(ds.rep, B)
            assert ok and m.rows == m.cols == E.dim == sum(ext_space(p, B).dim for p in parts)
            assert E.dim == 0 or inverse(m) is not None
            # column x of m is the stacked coordinates of the pulled-back classes
            for i, x in enumerate(E.basis()):
                stacked = [c for inj in ds.injections for c in pull_class(x, inj).coords]
                assert list(m.col(i)) == stacked
        cr.note("10 triples, 20 decompositions")


# -- 8 ------------------------------------------------------------------------------

def test_criterion_8_happel_unger_demo(criterion):
    with criterion(8, "Happel-Unger demo report", 60) as cr:
        code, text = run(["demo-happel-unger", "--seed", "0"])
        rep = json.loads(text)
        assert code == 0
        res = rep["results"][0]
        assert res["quiver"] == {"vertices": [1, 2, 3], "arrows": [["b", 2, 1], ["c", 3, 2], ["d", 3, 1]]}
        assert res["objects"]["tau(S(2))"] == [1, 0, 1]
        assert res["objects"]["T1"] == [4, 1, 2] and res["objects"]["T2"] == [0, 1, 0]
        names = [c["name"] for c in rep["checks"]]
        for v in (1, 2, 3):
            assert f"tau(P({v})) = 0" in names
        assert rep["checks"] and all(c["status"] == "pass" for c in rep["checks"])
        assert rep["exhaustive"] is False and len(rep["probes"]) >= 10
        assert res["intersection"]["report"]["passed"]
        assert res["classical_nonexistence"] == "not reproduced"
        assert any("NOT reproduced" in line for line in rep["banner"])
        assert run(["demo-happel-unger", "--seed", "0"])[1] == text
        cr.note(f"{len(rep['checks'])} checks, {len(rep['probes'])} probes")


# -- 9 ------------------------------------------------------------------------------

def _failing(report, name):
    c = next(c for c in report.checks if c.name == name)
    assert c.status == "fail", (name, c)
    assert c.witness, name
    return c


def _non_orthogonal(sp, probes, precover=False):
    """An identity on a probe that is not Ext-orthogonal to the ideal on the probe pairs."""
    for W in probes:
        x = one(W)
        for X, Y in itertools.product(probes, repeat=2):
            for f in fiber(sp.ideal, X, Y).basis():
                m = ext_matrix(f, x) if precover else ext_matrix(x, f)
                if not m.is_zero():
                    return x
    raise AssertionError("no non-orthogonal identity among the probes")


def test_criterion_9_falsification_fixtures(criterion):
    with criterion(9, "every verification check fails on a corrupted fixture with a witness", 10) as cr:
        probes = probe_objects(HU, F2, 4)
        S1, S2, S3 = (simple(HU, F2, v) for v in HU.vertices)
        sp = bet_preenvelope(one(S2), S1)
        assert sp.index_size > 1 and verify_special_preenvelope(sp, probes).passed
        fixtures = {
            "ladder": corrupt_ladder(sp),
            "membership": corrupt_membership(sp),
            "factorization": corrupt_factorization(sp),
            "cosyzygy_orthogonality": corrupt_orthogonality(sp, _non_orthogonal(sp, probes)),
            "canonical_morphism": corrupt_canonical(sp),
        }
        for name, bad in fixtures.items():
            _failing(verify_special_preenvelope(bad, probes), name)
        pc = bet_precover(one(S2), S3)
        assert pc.index_size > 1 and verify_special_precover(pc, probes).passed
        fixtures = {
            "ladder": corrupt_ladder(pc),
            "membership": corrupt_membership(pc),
            "factorization": corrupt_factorization(pc),
            "syzygy_orthogonality": corrupt_orthogonality(pc, _non_orthogonal(pc, probes, precover=True)),
            "canonical_morphism": corrupt_canonical(pc),
        }
        for name, bad in fixtures.items():
            _failing(verify_special_precover(bad, probes), name)
        s = sum_preenvelope(sp.j, sp.j, sp.ideal, sp.ideal)
        assert s.monic and verify_sum_preenvelope(s, probes).passed
        fixtures = {
            "certificates": corrupt_certificates(s),
            "membership": corrupt_membership(s),
            "factorization": corrupt_factorization(s),
            "monic": corrupt_monic(s),
        }
        for name, bad in fixtures.items():
            _failing(verify_sum_preenvelope(bad, probes), name)
        cr.note("5 + 5 + 4 checks")
