"""Quivers, their finite-dimensional representations and morphism spaces.

Conventions: representations are left modules over the path algebra, the
projective P(v) has at vertex w the span of the paths v -> w, and arrow
matrices act along the arrow direction (shape dim(target) x dim(source)).
Vertices are addressed by label in the public constructors and by position
inside ``Rep.dims``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from functools import cached_property, lru_cache
from typing import Hashable, Sequence

from .exactlin import (
    ContractViolation,
    Field,
    Matrix,
    Subspace,
    kernel,
    quotient,
    rank,
    solve,
    solve_matrix,
    image as col_image,
)


@dataclass(frozen=True)
class Arrow:
    name: str
    source: Hashable
    target: Hashable


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arrows", tuple(a if isinstance(a, Arrow) else Arrow(*a) for a in self.arrows))
        if len(set(self.vertices)) != len(self.vertices):
            raise ContractViolation("vertex labels must be unique")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise ContractViolation("arrow names must be unique")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise ContractViolation(f"arrow {a.name} has an endpoint outside the vertex set")
        if self._topological_order() is None:
            raise ContractViolation("quiver has a directed cycle; the path algebra would be infinite-dimensional")

    def __hash__(self):
        return self._hash

    @cached_property
    def _hash(self):
        return hash((self.vertices, self.arrows))

    def _topological_order(self):
        n = len(self.vertices)
        indeg = [0] * n
        for a in self.arrows:
            indeg[self.vertices.index(a.target)] += 1
        order = []
        ready = [i for i in range(n) if indeg[i] == 0]
        while ready:
            i = ready.pop(0)
            order.append(i)
            for a in self.arrows:
                if self.vertices.index(a.source) == i:
                    t = self.vertices.index(a.target)
                    indeg[t] -= 1
                    if indeg[t] == 0:
                        ready.append(t)
        return order if len(order) == n else None

    @property
    def n(self) -> int:
        return len(self.vertices)

    def index(self, v) -> int:
        try:
            return self._vindex[v]
        except KeyError:
            raise ContractViolation(f"unknown vertex {v!r}") from None

    def arrow_index(self, name: str) -> int:
        try:
            return self._aindex[name]
        except KeyError:
            raise ContractViolation(f"unknown arrow {name!r}") from None

    @cached_property
    def _vindex(self):
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def _aindex(self):
        return {a.name: i for i, a in enumerate(self.arrows)}

    @cached_property
    def ends(self) -> tuple[tuple[int, int], ...]:
        """(source index, target index) per arrow."""
        return tuple((self._vindex[a.source], self._vindex[a.target]) for a in self.arrows)

    @cached_property
    def _paths(self) -> dict:
        # paths[i][j]: arrow-index sequences from i to j, sorted by (length, sequence)
        table = {i: {j: [] for j in range(self.n)} for i in range(self.n)}
        for i in range(self.n):
            stack = [(i, ())]
            while stack:
                v, path = stack.pop()
                table[i][v].append(path)
                for k, (s, t) in enumerate(self.ends):
                    if s == v:
                        stack.append((t, path + (k,)))
            for j in range(self.n):
                table[i][j].sort(key=lambda p: (len(p), p))
        return table

    def paths(self, i: int, j: int) -> list[tuple[int, ...]]:
        """Paths from vertex index i to vertex index j as arrow-index tuples (first arrow first)."""
        return self._paths[i][j]

    def opposite(self) -> "Quiver":
        return Quiver(self.vertices, tuple(Arrow(a.name, a.target, a.source) for a in self.arrows))


def linear_quiver(n: int) -> Quiver:
    """A_n with arrows i -> i+1 labelled a1, a2, ..."""
    return Quiver(tuple(range(1, n + 1)), tuple(Arrow(f"a{i}", i, i + 1) for i in range(1, n)))


def happel_unger_quiver() -> Quiver:
    """Vertices 1, 2, 3 with arrows 2 -> 1, 3 -> 2 and 3 -> 1."""
    return Quiver((1, 2, 3), (Arrow("b", 2, 1), Arrow("c", 3, 2), Arrow("d", 3, 1)))


# -- representations ------------------------------------------------------

@dataclass(frozen=True)
class Rep:
    quiver: Quiver
    field: Field
    dims: tuple[int, ...]
    maps: tuple[Matrix, ...]
    label: str = dc_field(default="", compare=False)

    def __post_init__(self):
        q = self.quiver
        object.__setattr__(self, "dims", tuple(self.dims))
        object.__setattr__(self, "maps", tuple(self.maps))
        if len(self.dims) != q.n or any(d < 0 for d in self.dims):
            raise ContractViolation(f"dimension vector {self.dims} does not fit a quiver with {q.n} vertices")
        if len(self.maps) != len(q.arrows):
            raise ContractViolation(f"need {len(q.arrows)} arrow matrices, got {len(self.maps)}")
        for (s, t), m, a in zip(q.ends, self.maps, q.arrows):
            if m.field != self.field or m.shape != (self.dims[t], self.dims[s]):
                raise ContractViolation(
                    f"representation {self.label or '?'}: matrix for arrow {a.name} has shape {m.shape}, "
                    f"expected {(self.dims[t], self.dims[s])}"
                )

    def __hash__(self):
        return self._hash

    @cached_property
    def _hash(self):
        return hash((self.quiver, self.field, self.dims, self.maps))

    @classmethod
    def from_data(cls, q: Quiver, F: Field, dims: dict, maps: dict | None = None, label: str = "") -> "Rep":
        d = tuple(int(dims.get(v, 0)) for v in q.vertices)
        maps = maps or {}
        unknown = set(maps) - {a.name for a in q.arrows}
        if unknown:
            raise ContractViolation(f"representation {label or '?'}: unknown arrows {sorted(unknown)}")
        ms = []
        for (s, t), a in zip(q.ends, q.arrows):
            if a.name in maps and d[s] and d[t]:
                ms.append(Matrix.from_rows(F, maps[a.name], d[s]))
            else:
                ms.append(Matrix.zeros(F, d[t], d[s]))
        return cls(q, F, d, tuple(ms), label)

    def relabel(self, label: str) -> "Rep":
        return Rep(self.quiver, self.field, self.dims, self.maps, label)

    def dim(self, v) -> int:
        return self.dims[self.quiver.index(v)]

    def map(self, name: str) -> Matrix:
        return self.maps[self.quiver.arrow_index(name)]

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def path_matrix(self, path: Sequence[int], start: int) -> Matrix:
        """Action of a path (arrow indices, first arrow first) starting at vertex index ``start``."""
        m = Matrix.identity(self.field, self.dims[start])
        for k in path:
            m = self.maps[k] @ m
        return m

    def __str__(self):
        return self.label or f"Rep{self.dims}"


def zero_rep(q: Quiver, F: Field) -> Rep:
    return Rep(q, F, (0,) * q.n, tuple(Matrix.zeros(F, 0, 0) for _ in q.arrows), "0")


@dataclass(frozen=True)
class RepMorphism:
    """A morphism of representations; the commuting squares are checked on construction."""

    dom: Rep
    cod: Rep
    comps: tuple[Matrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "comps", tuple(self.comps))
        d, c = self.dom, self.cod
        if d.quiver != c.quiver or d.field != c.field:
            raise ContractViolation("morphism between representations of different quivers or fields")
        if len(self.comps) != d.quiver.n:
            raise ContractViolation("one component per vertex is required")
        for i, f in enumerate(self.comps):
            if f.shape != (c.dims[i], d.dims[i]):
                raise ContractViolation(f"component at vertex {d.quiver.vertices[i]!r} has shape {f.shape}, "
                                        f"expected {(c.dims[i], d.dims[i])}")
        for k, (s, t) in enumerate(d.quiver.ends):
            if c.maps[k] @ self.comps[s] != self.comps[t] @ d.maps[k]:
                raise ContractViolation(f"square for arrow {d.quiver.arrows[k].name} does not commute")

    def __hash__(self):
        return self._hash

    @cached_property
    def _hash(self):
        return hash((self.dom, self.cod, self.comps))

    @property
    def field(self) -> Field:
        return self.dom.field

    @property
    def quiver(self) -> Quiver:
        return self.dom.quiver

    @classmethod
    def identity(cls, m: Rep) -> "RepMorphism":
        return cls(m, m, tuple(Matrix.identity(m.field, d) for d in m.dims))

    @classmethod
    def zero(cls, m: Rep, n: Rep) -> "RepMorphism":
        return cls(m, n, tuple(Matrix.zeros(m.field, e, d) for d, e in zip(m.dims, n.dims)))

    @classmethod
    def from_data(cls, dom: Rep, cod: Rep, comps: dict) -> "RepMorphism":
        q = dom.quiver
        out = []
        for i, v in enumerate(q.vertices):
            if v in comps and dom.dims[i] and cod.dims[i]:
                out.append(Matrix.from_rows(dom.field, comps[v], dom.dims[i]))
            else:
                out.append(Matrix.zeros(dom.field, cod.dims[i], dom.dims[i]))
        return cls(dom, cod, tuple(out))

    def __matmul__(self, other: "RepMorphism") -> "RepMorphism":
        """Composition: ``g @ f`` is g after f."""
        if other.cod != self.dom:
            raise ContractViolation(f"cannot compose {other.dom}->{other.cod} with {self.dom}->{self.cod}")
        return RepMorphism(other.dom, self.cod, tuple(g @ f for g, f in zip(self.comps, other.comps)))

    def _same(self, other):
        if self.dom != other.dom or self.cod != other.cod:
            raise ContractViolation("morphisms have different domain or codomain")

    def __add__(self, other: "RepMorphism") -> "RepMorphism":
        self._same(other)
        return RepMorphism(self.dom, self.cod, tuple(f + g for f, g in zip(self.comps, other.comps)))

    def __sub__(self, other: "RepMorphism") -> "RepMorphism":
        self._same(other)
        return RepMorphism(self.dom, self.cod, tuple(f - g for f, g in zip(self.comps, other.comps)))

    def __neg__(self) -> "RepMorphism":
        return RepMorphism(self.dom, self.cod, tuple(-f for f in self.comps))

    def scale(self, c) -> "RepMorphism":
        return RepMorphism(self.dom, self.cod, tuple(f.scale(c) for f in self.comps))

    def flat(self) -> tuple:
        return tuple(x for f in self.comps for x in f.entries)

    def is_zero(self) -> bool:
        return all(f.is_zero() for f in self.comps)

    def ranks(self) -> tuple[int, ...]:
        return tuple(rank(f) for f in self.comps)

    def is_mono(self) -> bool:
        return all(r == d for r, d in zip(self.ranks(), self.dom.dims))

    def is_epi(self) -> bool:
        return all(r == d for r, d in zip(self.ranks(), self.cod.dims))

    def is_iso(self) -> bool:
        return self.dom.dims == self.cod.dims and self.is_mono()

    def inverse(self) -> "RepMorphism":
        if not self.is_iso():
            raise ContractViolation("morphism is not invertible")
        F = self.field
        return RepMorphism(self.cod, self.dom,
                           tuple(solve_matrix(f, Matrix.identity(F, f.rows)) for f in self.comps))


def unflatten(dom: Rep, cod: Rep, vec: Sequence) -> tuple[Matrix, ...]:
    F = dom.field
    out, pos = [], 0
    for d, e in zip(dom.dims, cod.dims):
        out.append(Matrix(F, e, d, tuple(F(x) for x in vec[pos:pos + d * e])))
        pos += d * e
    return tuple(out)


class HomSpace:
    """Hom(M, N) with the canonical basis (RREF of the constraint kernel)."""

    def __init__(self, dom: Rep, cod: Rep):
        if dom.quiver != cod.quiver or dom.field != cod.field:
            raise ContractViolation("Hom between representations of different quivers or fields")
        self.dom, self.cod = dom, cod
        self.field = F = dom.field
        q = dom.quiver
        offsets, pos = [], 0
        for d, e in zip(dom.dims, cod.dims):
            offsets.append(pos)
            pos += d * e
        self.ambient_dim = n = pos
        rows = []
        for k, (s, t) in enumerate(q.ends):
            Ma, Na = dom.maps[k], cod.maps[k]
            ms, nt = dom.dims[s], cod.dims[t]
            # constraint entry (i, j): sum_l N[i,l] f_s[l,j] - sum_l f_t[i,l] M[l,j]
            for i in range(nt):
                for j in range(ms):
                    r = [0] * n
                    for l in range(cod.dims[s]):
                        x = Na[i, l]
                        if x:
                            r[offsets[s] + l * ms + j] += x
                    for l in range(dom.dims[t]):
                        x = Ma[l, j]
                        if x:
                            r[offsets[t] + i * dom.dims[t] + l] -= x
                    rows.append(r)
        cm = Matrix.from_rows(F, rows, n) if rows else Matrix.zeros(F, 0, n)
        self.subspace = kernel(cm)
        self.basis = [RepMorphism(dom, cod, unflatten(dom, cod, v)) for v in self.subspace.vectors()]

    @property
    def dim(self) -> int:
        return self.subspace.dim

    def coords(self, f: RepMorphism) -> tuple:
        if f.dom != self.dom or f.cod != self.cod:
            raise ContractViolation("morphism does not belong to this Hom space")
        c = self.subspace.coords(f.flat())
        if c is None:  # pragma: no cover - construction guarantees membership
            raise ContractViolation("morphism not in Hom space")
        return c

    def element(self, coords: Sequence) -> RepMorphism:
        return RepMorphism(self.dom, self.cod, unflatten(self.dom, self.cod, self.subspace.combination(coords)))

    def random(self, rng: random.Random) -> RepMorphism:
        return self.element([self.field.random_element(rng) for _ in range(self.dim)])


@lru_cache(maxsize=8192)
def hom_space(m: Rep, n: Rep) -> HomSpace:
    return HomSpace(m, n)


def hom_basis(m: Rep, n: Rep) -> list[RepMorphism]:
    return hom_space(m, n).basis


def random_morphism(m: Rep, n: Rep, rng: random.Random) -> RepMorphism:
    return hom_space(m, n).random(rng)


def random_rep(q: Quiver, F: Field, dims: Sequence[int], rng: random.Random, label: str = "") -> Rep:
    ms = tuple(Matrix.random(F, dims[t], dims[s], rng) for s, t in q.ends)
    return Rep(q, F, tuple(dims), ms, label)


# -- biproducts -----------------------------------------------------------

@dataclass(frozen=True)
class DirectSum:
    rep: Rep
    injections: tuple[RepMorphism, ...]
    projections: tuple[RepMorphism, ...]


def _unit_block(F, n_total, offset, size, inject: bool) -> Matrix:
    rows = []
    if inject:
        for i in range(n_total):
            rows.append([F.one if i == offset + j else F.zero for j in range(size)])
        return Matrix.from_rows(F, rows, size)
    for j in range(size):
        rows.append([F.one if i == offset + j else F.zero for i in range(n_total)])
    return Matrix.from_rows(F, rows, n_total)


def direct_sum(ms: Sequence[Rep], label: str | None = None) -> DirectSum:
    """Blockwise biproduct with its structural injections and projections."""
    if not ms:
        raise ContractViolation("direct_sum of an empty list needs a quiver; use zero_rep")
    q, F = ms[0].quiver, ms[0].field
    if any(m.quiver != q or m.field != F for m in ms):
        raise ContractViolation("direct sum of representations of different quivers")
    dims = tuple(sum(m.dims[i] for m in ms) for i in range(q.n))
    maps = tuple(Matrix.block_diag(F, [m.maps[k] for m in ms]) for k in range(len(q.arrows)))
    if label is None:
        label = "+".join(m.label or "?" for m in ms) if len(ms) > 1 else ms[0].label
    total = Rep(q, F, dims, maps, label)
    inj, proj = [], []
    offs = [0] * q.n
    for m in ms:
        inj.append(RepMorphism(m, total, tuple(_unit_block(F, dims[i], offs[i], m.dims[i], True) for i in range(q.n))))
        proj.append(RepMorphism(total, m, tuple(_unit_block(F, dims[i], offs[i], m.dims[i], False) for i in range(q.n))))
        offs = [o + d for o, d in zip(offs, m.dims)]
    return DirectSum(total, tuple(inj), tuple(proj))


def direct_sum_morphisms(fs: Sequence[RepMorphism]) -> RepMorphism:
    """Block-diagonal f1 + ... + fn between the direct sums of domains and codomains."""
    F = fs[0].field
    dom = direct_sum([f.dom for f in fs]).rep
    cod = direct_sum([f.cod for f in fs]).rep
    return RepMorphism(dom, cod, tuple(Matrix.block_diag(F, [f.comps[i] for f in fs]) for i in range(dom.quiver.n)))


def column(fs: Sequence[RepMorphism], target: DirectSum | None = None) -> RepMorphism:
    """(f1; ...; fn): X -> Y1 + ... + Yn for morphisms with a common domain."""
    target = target or direct_sum([f.cod for f in fs])
    out = target.injections[0] @ fs[0]
    for inj, f in zip(target.injections[1:], fs[1:]):
        out = out + inj @ f
    return out


def row(fs: Sequence[RepMorphism], source: DirectSum | None = None) -> RepMorphism:
    """(f1, ..., fn): X1 + ... + Xn -> Y for morphisms with a common codomain."""
    source = source or direct_sum([f.dom for f in fs])
    out = fs[0] @ source.projections[0]
    for pr, f in zip(source.projections[1:], fs[1:]):
        out = out + f @ pr
    return out


def diagonal(m: Rep, n: int) -> RepMorphism:
    return column([RepMorphism.identity(m)] * n)


def codiagonal(m: Rep, n: int) -> RepMorphism:
    return row([RepMorphism.identity(m)] * n)


# -- kernels, cokernels, images -------------------------------------------

@dataclass(frozen=True)
class Kernel:
    rep: Rep
    inclusion: RepMorphism
    # RREF bases of the vertexwise kernels, used for coordinate read-off
    spaces: tuple[Subspace, ...]

    def factor(self, g: RepMorphism) -> RepMorphism:
        """The unique h with inclusion @ h == g (g must land in the kernel)."""
        return factor_through_mono(self.inclusion, g, self.spaces)


@dataclass(frozen=True)
class Cokernel:
    rep: Rep
    projection: RepMorphism
    sections: tuple[Matrix, ...]

    def induce(self, g: RepMorphism) -> RepMorphism:
        """The unique h with h @ projection == g (g must kill the image)."""
        comps = tuple(gv @ sv for gv, sv in zip(g.comps, self.sections))
        h = RepMorphism(self.rep, g.cod, comps)
        if h @ self.projection != g:
            raise ContractViolation("morphism does not vanish on the image")
        return h


def _subrep(parent: Rep, spaces: Sequence[Subspace], label: str = "") -> tuple[Rep, RepMorphism]:
    """Subrepresentation spanned vertexwise by ``spaces``; returns (rep, inclusion)."""
    q, F = parent.quiver, parent.field
    incl = [s.basis.T for s in spaces]
    dims = tuple(s.dim for s in spaces)
    maps = []
    for k, (s, t) in enumerate(q.ends):
        cols = []
        for j in range(dims[s]):
            y = parent.maps[k].apply(incl[s].col(j))
            c = spaces[t].coords(y)
            if c is None:
                raise ContractViolation("vertexwise subspaces are not closed under the arrows")
            cols.append(c)
        maps.append(Matrix.from_columns(F, cols, dims[t]) if cols else Matrix.zeros(F, dims[t], 0))
    sub = Rep(q, F, dims, tuple(maps), label)
    return sub, RepMorphism(sub, parent, tuple(incl))


def kernel_rep(f: RepMorphism) -> Kernel:
    spaces = tuple(kernel(c) for c in f.comps)
    rep, incl = _subrep(f.dom, spaces, "ker")
    return Kernel(rep, incl, spaces)


def image_rep(f: RepMorphism) -> tuple[Rep, RepMorphism, RepMorphism]:
    """Image with its inclusion into the codomain and the corestriction of f."""
    spaces = tuple(col_image(c) for c in f.comps)
    rep, incl = _subrep(f.cod, spaces, "im")
    corestr = factor_through_mono(incl, f, spaces)
    return rep, incl, corestr


def cokernel_rep(f: RepMorphism) -> Cokernel:
    q, F, N = f.quiver, f.field, f.cod
    qs = [quotient(Subspace.full(F, N.dims[i]), col_image(f.comps[i])) for i in range(q.n)]
    dims = tuple(x.dim for x in qs)
    maps = tuple(qs[t].projection @ N.maps[k] @ qs[s].section for k, (s, t) in enumerate(q.ends))
    rep = Rep(q, F, dims, maps, "coker")
    proj = RepMorphism(N, rep, tuple(x.projection for x in qs))
    return Cokernel(rep, proj, tuple(x.section for x in qs))


def cokernel_of_inclusion(sub_spaces: Sequence[Subspace], parent: Rep) -> Cokernel:
    _, incl = _subrep(parent, sub_spaces)
    return cokernel_rep(incl)


# -- factorization through monos, epis and general morphisms --------------

def factor_through_mono(m: RepMorphism, g: RepMorphism, spaces: Sequence[Subspace] | None = None) -> RepMorphism:
    """h with m @ h == g, for m vertexwise injective and g landing in its image."""
    F = m.field
    comps = []
    for i, (mv, gv) in enumerate(zip(m.comps, g.comps)):
        if spaces is not None:
            cols = []
            for j in range(gv.cols):
                c = spaces[i].coords(gv.col(j))
                if c is None:
                    raise ContractViolation("morphism does not factor through the monomorphism")
                cols.append(c)
            comps.append(Matrix.from_columns(F, cols, mv.cols) if cols else Matrix.zeros(F, mv.cols, 0))
        else:
            h = solve_matrix(mv, gv)
            if h is None:
                raise ContractViolation("morphism does not factor through the monomorphism")
            comps.append(h)
    return RepMorphism(g.dom, m.dom, tuple(comps))


def _solve_in_hom(space: HomSpace, images: Sequence[tuple], target: tuple) -> RepMorphism | None:
    F = space.field
    if not images:
        return space.element(()) if not any(target) else None
    cols = Matrix.from_columns(F, images, len(target))
    x = solve(cols, target)
    return None if x is None else space.element(x)


def lift(f: RepMorphism, p: RepMorphism) -> RepMorphism | None:
    """Some g with p @ g == f (g: dom f -> dom p), or None."""
    space = hom_space(f.dom, p.dom)
    return _solve_in_hom(space, [(p @ h).flat() for h in space.basis], f.flat())


def extend(f: RepMorphism, m: RepMorphism) -> RepMorphism | None:
    """Some g with g @ m == f (g: cod m -> cod f), or None."""
    space = hom_space(m.cod, f.cod)
    return _solve_in_hom(space, [(h @ m).flat() for h in space.basis], f.flat())


# -- canonical modules ----------------------------------------------------

@dataclass(frozen=True)
class FreeRep:
    """A direct sum of indecomposable projectives P(v_1) + ... + P(v_n).

    At vertex w the basis is, summand by summand, the paths v_k -> w in the
    quiver's canonical path order; the generator of summand k is its trivial path.
    """

    quiver: Quiver
    field: Field
    generators: tuple[int, ...]

    @cached_property
    def rep(self) -> Rep:
        q, F = self.quiver, self.field
        dims = tuple(sum(len(q.paths(v, w)) for v in self.generators) for w in range(q.n))
        maps = []
        for k, (s, t) in enumerate(q.ends):
            rows = [[F.zero] * dims[s] for _ in range(dims[t])]
            for g in range(len(self.generators)):
                v = self.generators[g]
                src = q.paths(v, s)
                tgt_index = {p: i for i, p in enumerate(q.paths(v, t))}
                for j, path in enumerate(src):
                    i = tgt_index[path + (k,)]
                    rows[self.offset(g, t) + i][self.offset(g, s) + j] = F.one
            maps.append(Matrix.from_rows(F, rows, dims[s]))
        label = "+".join(f"P({q.vertices[v]})" for v in self.generators) or "0"
        return Rep(q, F, dims, tuple(maps), label)

    def offset(self, g: int, w: int) -> int:
        q = self.quiver
        return sum(len(q.paths(v, w)) for v in self.generators[:g])

    def generator_vector(self, g: int) -> tuple:
        v = self.generators[g]
        F = self.field
        n = self.rep.dims[v]
        o = self.offset(g, v)
        return tuple(F.one if i == o else F.zero for i in range(n))

    def morphism_to(self, target: Rep, images: Sequence[Sequence]) -> RepMorphism:
        """The morphism sending generator k to ``images[k]`` (a vector of target at v_k)."""
        q, F = self.quiver, self.field
        comps = []
        for w in range(q.n):
            cols = []
            for g, v in enumerate(self.generators):
                y = tuple(images[g])
                for path in q.paths(v, w):
                    cols.append(target.path_matrix(path, v).apply(y))
            comps.append(Matrix.from_columns(F, cols, target.dims[w]) if cols else Matrix.zeros(F, target.dims[w], 0))
        return RepMorphism(self.rep, target, tuple(comps))

    def lift(self, d: RepMorphism, t: RepMorphism) -> RepMorphism:
        """g with d @ g == t for t: rep -> A and d: E -> A vertexwise surjective."""
        images = []
        for g, v in enumerate(self.generators):
            y = solve(d.comps[v], t.comps[v].apply(self.generator_vector(g)))
            if y is None:
                raise ContractViolation("deflation is not surjective at a generator vertex")
            images.append(y)
        return self.morphism_to(d.dom, images)

    def path_coefficients(self, w: int, vec: Sequence) -> list[dict]:
        """Split a vector of rep at vertex w into per-summand {path: coefficient} maps."""
        q = self.quiver
        out = []
        for g, v in enumerate(self.generators):
            o = self.offset(g, w)
            out.append({p: vec[o + i] for i, p in enumerate(q.paths(v, w)) if vec[o + i]})
        return out


def simple(q: Quiver, F: Field, v) -> Rep:
    i = q.index(v)
    dims = tuple(1 if j == i else 0 for j in range(q.n))
    return Rep(q, F, dims, tuple(Matrix.zeros(F, dims[t], dims[s]) for s, t in q.ends), f"S({v})")


def projective(q: Quiver, F: Field, v) -> Rep:
    return FreeRep(q, F, (q.index(v),)).rep.relabel(f"P({v})")


def dual_rep(m: Rep, quiver: Quiver | None = None) -> Rep:
    """Vector-space dual: a representation of the opposite quiver with transposed matrices."""
    op = quiver or m.quiver.opposite()
    return Rep(op, m.field, m.dims, tuple(x.T for x in m.maps), f"D({m.label})" if m.label else "")


def dual_morphism(f: RepMorphism, quiver: Quiver | None = None) -> RepMorphism:
    op = quiver or f.quiver.opposite()
    return RepMorphism(dual_rep(f.cod, op), dual_rep(f.dom, op), tuple(c.T for c in f.comps))


def injective(q: Quiver, F: Field, v) -> Rep:
    return dual_rep(projective(q.opposite(), F, v), q).relabel(f"I({v})")


def radical(m: Rep) -> RepMorphism:
    """Inclusion rad M -> M; rad M at w is the sum of the images of the arrows into w."""
    q, F = m.quiver, m.field
    spaces = []
    for w in range(q.n):
        vecs = []
        for k, (s, t) in enumerate(q.ends):
            if t == w:
                vecs.extend(m.maps[k].columns())
        spaces.append(Subspace.span(F, m.dims[w], vecs))
    rep, incl = _subrep(m, spaces, f"rad({m.label})" if m.label else "rad")
    return incl


def socle(m: Rep) -> RepMorphism:
    """Inclusion soc M -> M: vectors killed by every outgoing arrow."""
    q, F = m.quiver, m.field
    spaces = []
    for w in range(q.n):
        outs = [m.maps[k] for k, (s, t) in enumerate(q.ends) if s == w]
        if outs:
            spaces.append(kernel(Matrix.vstack(F, outs)))
        else:
            spaces.append(Subspace.full(F, m.dims[w]))
    rep, incl = _subrep(m, spaces, f"soc({m.label})" if m.label else "soc")
    return incl


def top(m: Rep) -> RepMorphism:
    """Projection M -> M / rad M."""
    cok = cokernel_rep(radical(m))
    rep = cok.rep.relabel(f"top({m.label})" if m.label else "top")
    return RepMorphism(m, rep, cok.projection.comps)


@dataclass(frozen=True)
class ProjectiveCover:
    target: Rep
    free: FreeRep
    deflation: RepMorphism
    syzygy: Kernel

    @property
    def rep(self) -> Rep:
        return self.free.rep


@lru_cache(maxsize=4096)
def projective_cover(m: Rep) -> ProjectiveCover:
    """Minimal projective cover P(M) -> M lifting the canonical basis of top(M)."""
    q, F = m.quiver, m.field
    rad = radical(m)
    gens, images = [], []
    for w in range(q.n):
        qw = quotient(Subspace.full(F, m.dims[w]), Subspace.span(F, m.dims[w], rad.comps[w].columns()))
        for j in range(qw.dim):
            gens.append(w)
            images.append(qw.section.col(j))
    free = FreeRep(q, F, tuple(gens))
    defl = free.morphism_to(m, images)
    ker = kernel_rep(defl)
    syz = Kernel(ker.rep.relabel(f"Omega({m.label})" if m.label else "Omega"), None, ker.spaces)
    syz = Kernel(syz.rep, RepMorphism(syz.rep, free.rep, ker.inclusion.comps), ker.spaces)
    return ProjectiveCover(m, free, defl, syz)


@dataclass(frozen=True)
class InjectiveEnvelope:
    source: Rep
    rep: Rep
    inflation: RepMorphism


@lru_cache(maxsize=4096)
def injective_envelope(m: Rep) -> InjectiveEnvelope:
    """M -> I(M), dual to the projective cover of the dual representation."""
    q = m.quiver
    cov = projective_cover(dual_rep(m))
    infl = dual_morphism(cov.deflation, q)
    # D(D M) is M itself structurally
    infl = RepMorphism(m, infl.cod, infl.comps)
    return InjectiveEnvelope(m, infl.cod, infl)


def is_projective(m: Rep) -> bool:
    return projective_cover(m).syzygy.rep.is_zero()


def tau(m: Rep) -> Rep:
    """Auslander-Reiten translate D Tr M from a minimal projective presentation.

    P1 -> P0 -> M with P0 -> M and P1 -> Omega M projective covers; since
    both covers are minimal the presentation lands in the radical.  The
    presentation is transported to the opposite quiver by path duality, its
    cokernel is Tr M, and the vector-space dual gives back a representation of Q.
    """
    q, F = m.quiver, m.field
    cov0 = projective_cover(m)
    cov1 = projective_cover(cov0.syzygy.rep)
    f = cov0.syzygy.inclusion @ cov1.deflation  # P1 -> P0
    free0, free1 = cov0.free, cov1.free
    op = q.opposite()
    star0 = FreeRep(op, F, free0.generators)
    star1 = FreeRep(op, F, free1.generators)
    # generator w_i of P0* goes to sum_j c_ij, the coefficient of f(e_{v_j}) on P(w_i), read as op-paths v_j -> w_i
    images = []
    for i, wi in enumerate(free0.generators):
        vec = [F.zero] * star1.rep.dims[wi]
        for j, vj in enumerate(free1.generators):
            coeffs = free0.path_coefficients(vj, f.comps[vj].apply(free1.generator_vector(j)))[i]
            op_index = {p: n for n, p in enumerate(op.paths(vj, wi))}
            o = star1.offset(j, wi)
            for path, c in coeffs.items():
                vec[o + op_index[tuple(reversed(path))]] = c
        images.append(vec)
    fstar = star0.morphism_to(star1.rep, images)
    tr = cokernel_rep(fstar).rep
    return dual_rep(tr, q).relabel(f"tau({m.label})" if m.label else "tau")


# -- probe family ---------------------------------------------------------

def fingerprint(m: Rep) -> tuple:
    q, F = m.quiver, m.field
    simples = [simple(q, F, v) for v in q.vertices]
    return (m.dims,
            tuple(hom_space(s, m).dim for s in simples),
            tuple(hom_space(m, s).dim for s in simples))


def probe_objects(q: Quiver, F: Field, cap: int = 10) -> list[Rep]:
    """Deterministic probe family: S, P, I, rad P, P/soc P at every vertex, then pairwise sums.

    Duplicates are removed by fingerprint (dimension vector plus Hom ranks
    against the simples); at most ``cap`` sums of two distinct members follow.
    """
    cands = []
    for v in q.vertices:
        cands.append(simple(q, F, v))
    for v in q.vertices:
        cands.append(projective(q, F, v))
    for v in q.vertices:
        cands.append(injective(q, F, v))
    for v in q.vertices:
        P = projective(q, F, v)
        cands.append(radical(P).dom.relabel(f"rad(P({v}))"))
        cands.append(cokernel_rep(socle(P)).rep.relabel(f"P({v})/soc"))
    seen, out = set(), []
    for c in cands:
        if c.is_zero():
            continue
        fp = fingerprint(c)
        if fp in seen:
            continue
        seen.add(fp)
        out.append(c)
    gens = list(out)
    for a, b in itertools.islice(itertools.combinations(gens, 2), cap):
        out.append(direct_sum([a, b]).rep)
    return out
