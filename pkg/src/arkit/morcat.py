"""Chains of morphisms ``X_1 <- X_2 <- ... <- X_n`` over a bound quiver algebra.

A chain object is stored as a single representation of the *ladder quiver*:
``n`` copies of the algebra's quiver plus one arrow ``(i+1, v) -> (i, v)``
per branch boundary and vertex.  This lets the generic machinery of
:mod:`arkit.repmod` (hom spaces, kernels, decomposition, isomorphism tests)
apply verbatim, without ever building the matrix algebra ``T_n(A)``.

Branches are numbered from 1.  ``phi(i)`` is the structure map
``X_{i+1} -> X_i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from . import exactlin as el
from . import repmod as rm
from .algebra import Quiver
from .repmod import ModuleMap, Representation


class LadderShape:
    """The ladder quiver for ``n`` branches, with commutativity relations."""

    def __init__(self, alg, n: int):
        if n < 1:
            raise ValueError("a chain needs at least one branch")
        self.alg = alg
        self.n = n
        q = alg.quiver
        nv, na = q.num_vertices, len(q.arrows)
        self.nv, self.na = nv, na
        verts = [f"{v}@{i}" for i in range(1, n + 1) for v in q.vertices]
        arrows = []
        for i in range(1, n + 1):
            for a in q.arrows:
                arrows.append((f"{a.name}@{i}", verts[self.vertex(i, a.source)],
                               verts[self.vertex(i, a.target)]))
        for i in range(1, n):
            for v in range(nv):
                arrows.append((f"phi{i}@{q.vertices[v]}", verts[self.vertex(i + 1, v)],
                               verts[self.vertex(i, v)]))
        self.quiver = Quiver.from_labels(verts, arrows)
        rels = []
        for i in range(1, n + 1):
            for rel in alg.relations:
                rels.append([(c, tuple(self.arrow(i, a) for a in path)) for c, path in rel])
        for i in range(1, n):
            for ai, a in enumerate(q.arrows):
                rels.append([(1, (self.phi_arrow(i, a.source), self.arrow(i, ai))),
                             (-1, (self.arrow(i + 1, ai), self.phi_arrow(i, a.target)))])
        self.relations = rels

    @property
    def p(self) -> int:
        return self.alg.p

    def vertex(self, i: int, v: int) -> int:
        return (i - 1) * self.nv + v

    def arrow(self, i: int, a: int) -> int:
        return (i - 1) * self.na + a

    def phi_arrow(self, i: int, v: int) -> int:
        return self.n * self.na + (i - 1) * self.nv + v

    def branch_of(self, ladder_vertex: int) -> tuple[int, int]:
        return ladder_vertex // self.nv + 1, ladder_vertex % self.nv


def ladder(alg, n: int) -> LadderShape:
    cache = alg.__dict__.setdefault("_ladders", {})
    if n not in cache:
        cache[n] = LadderShape(alg, n)
    return cache[n]


class ChainObject:
    """An object of the morphism category ``Mor_n(A)``."""

    __slots__ = ("shape", "rep", "__dict__")

    def __init__(self, shape: LadderShape, rep: Representation):
        self.shape = shape
        self.rep = rep

    @property
    def alg(self):
        return self.shape.alg

    @property
    def n(self) -> int:
        return self.shape.n

    @property
    def p(self) -> int:
        return self.shape.p

    @property
    def dim(self) -> int:
        return self.rep.dim

    def is_zero(self) -> bool:
        return self.rep.dim == 0

    @classmethod
    def from_branches(cls, alg, branches: Sequence[Representation],
                      maps: Sequence[ModuleMap | np.ndarray | Sequence]) -> "ChainObject":
        n = len(branches)
        shape = ladder(alg, n)
        if len(maps) != n - 1:
            raise ValueError("a chain with n branches needs n-1 maps")
        dims = [d for b in branches for d in b.dims]
        mats = [m for b in branches for m in b.mats]
        for i, f in enumerate(maps, start=1):
            blocks = f.blocks if isinstance(f, ModuleMap) else f
            for v in range(shape.nv):
                mats.append(np.asarray(blocks[v], dtype=np.int64)
                            .reshape(branches[i - 1].dims[v], branches[i].dims[v]))
        return cls(shape, Representation(shape, dims, mats))

    @classmethod
    def zero(cls, alg, n: int) -> "ChainObject":
        return cls(ladder(alg, n), Representation.zero(ladder(alg, n)))

    @cached_property
    def branches(self) -> tuple[Representation, ...]:
        s = self.shape
        out = []
        for i in range(1, self.n + 1):
            dims = self.rep.dims[s.vertex(i, 0):s.vertex(i, 0) + s.nv]
            mats = self.rep.mats[s.arrow(i, 0):s.arrow(i, 0) + s.na]
            out.append(Representation(self.alg, dims, mats))
        return tuple(out)

    def branch(self, i: int) -> Representation:
        return self.branches[i - 1]

    @cached_property
    def maps(self) -> tuple[ModuleMap, ...]:
        s = self.shape
        out = []
        for i in range(1, self.n):
            blocks = [self.rep.mats[s.phi_arrow(i, v)] for v in range(s.nv)]
            out.append(ModuleMap(self.branch(i + 1), self.branch(i), blocks))
        return tuple(out)

    def phi(self, i: int) -> ModuleMap:
        return self.maps[i - 1]

    def composite(self, j: int, i: int) -> ModuleMap:
        """``φ_j ∘ ... ∘ φ_{i-1} : X_i -> X_j`` for ``j <= i``."""
        f = ModuleMap.identity(self.branch(i))
        for k in range(i - 1, j - 1, -1):
            f = self.phi(k).compose(f)
        return f

    def is_mono(self) -> bool:
        return all(f.is_mono() for f in self.maps)

    def is_epi(self) -> bool:
        return all(f.is_epi() for f in self.maps)

    def satisfies_relations(self) -> bool:
        return self.rep.satisfies_relations()

    @cached_property
    def fingerprint(self) -> tuple:
        return self.rep.fingerprint

    def dim_table(self) -> list[tuple[int, ...]]:
        return [b.dims for b in self.branches]

    def __repr__(self) -> str:
        return f"ChainObject(n={self.n}, dims={self.dim_table()})"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "branches": [b.to_json() for b in self.branches],
            "maps": [[blk.tolist() for blk in f.blocks] for f in self.maps],
        }


def chain_from_json(alg, data: dict) -> ChainObject:
    try:
        n = int(data["n"])
        branches = [rm.from_json(alg, b) for b in data["branches"]]
        raw = data.get("maps", [])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed chain description: {exc}") from exc
    if len(branches) != n or len(raw) != n - 1:
        raise ValueError("chain description has the wrong number of branches or maps")
    maps = []
    for i, m in enumerate(raw):
        if isinstance(m, dict):
            m = [m.get(v) for v in alg.quiver.vertices]
        if len(m) != alg.num_vertices:
            raise ValueError(f"map {i + 1} has {len(m)} vertex blocks, the algebra has {alg.num_vertices}")
        blocks = []
        for v in range(alg.num_vertices):
            r, c = branches[i].dims[v], branches[i + 1].dims[v]
            blk = m[v] if m[v] is not None else np.zeros((r, c))
            blocks.append(np.array(blk, dtype=np.int64).reshape(r, c))
        maps.append(blocks)
    x = ChainObject.from_branches(alg, branches, maps)
    if not x.satisfies_relations():
        raise ValueError("chain maps are not module homomorphisms")
    return x


class ChainMap:
    """A morphism of chain objects, stored as a ladder module map."""

    __slots__ = ("src", "tgt", "lmap", "__dict__")

    def __init__(self, src: ChainObject, tgt: ChainObject, lmap: ModuleMap):
        self.src, self.tgt, self.lmap = src, tgt, lmap

    @classmethod
    def from_branch_maps(cls, src: ChainObject, tgt: ChainObject, maps: Sequence[ModuleMap]) -> "ChainMap":
        blocks = [b for f in maps for b in f.blocks]
        return cls(src, tgt, ModuleMap(src.rep, tgt.rep, blocks))

    @classmethod
    def identity(cls, x: ChainObject) -> "ChainMap":
        return cls(x, x, ModuleMap.identity(x.rep))

    @classmethod
    def zero(cls, x: ChainObject, y: ChainObject) -> "ChainMap":
        return cls(x, y, ModuleMap.zero(x.rep, y.rep))

    def branch(self, i: int) -> ModuleMap:
        nv = self.src.shape.nv
        return ModuleMap(self.src.branch(i), self.tgt.branch(i),
                         self.lmap.blocks[(i - 1) * nv:i * nv])

    def compose(self, before: "ChainMap") -> "ChainMap":
        return ChainMap(before.src, self.tgt, self.lmap.compose(before.lmap))

    def is_valid(self) -> bool:
        return self.lmap.is_valid()

    def is_iso(self) -> bool:
        return self.lmap.is_iso()

    def is_zero(self) -> bool:
        return self.lmap.is_zero()


# ---------------------------------------------------------------------------
# generic operations via the ladder


def _wrap(shape: LadderShape, rep: Representation) -> ChainObject:
    return ChainObject(shape, rep)


def direct_sum(objs: Sequence[ChainObject], alg=None, n: int | None = None) -> ChainObject:
    if not objs:
        return ChainObject.zero(alg, n)
    shape = objs[0].shape
    return ChainObject(shape, rm.direct_sum([o.rep for o in objs], shape))


def hom_basis(x: ChainObject, y: ChainObject) -> list[ChainMap]:
    return [ChainMap(x, y, f) for f in rm.hom_basis(x.rep, y.rep)]


def hom_dim(x: ChainObject, y: ChainObject) -> int:
    return rm.hom_dim(x.rep, y.rep)


def kernel(f: ChainMap) -> tuple[ChainObject, ChainMap]:
    k, inc = rm.kernel(f.lmap)
    ko = _wrap(f.src.shape, k)
    return ko, ChainMap(ko, f.src, inc)


def cokernel(f: ChainMap) -> tuple[ChainObject, ChainMap]:
    c, pr = rm.cokernel(f.lmap)
    co = _wrap(f.src.shape, c)
    return co, ChainMap(f.tgt, co, pr)


def image(f: ChainMap) -> tuple[ChainObject, ChainMap]:
    i, inc = rm.image(f.lmap)
    io = _wrap(f.src.shape, i)
    return io, ChainMap(io, f.tgt, inc)


def is_iso(x: ChainObject, y: ChainObject, seed: int = 0) -> bool:
    return x.n == y.n and rm.is_iso(x.rep, y.rep, seed)


def is_indecomposable(x: ChainObject, seed: int = 0) -> bool:
    return rm.is_indecomposable(x.rep, seed)


@dataclass
class ChainPiece:
    obj: ChainObject
    incl: ChainMap
    proj: ChainMap


def split(x: ChainObject, seed: int = 0) -> list[ChainPiece]:
    out = []
    for pc in rm.split_indecomposables(x.rep, seed):
        o = _wrap(x.shape, pc.module)
        out.append(ChainPiece(o, ChainMap(o, x, pc.incl), ChainMap(x, o, pc.proj)))
    return out


def decompose(x: ChainObject, seed: int = 0) -> list[tuple[ChainObject, int]]:
    return [(_wrap(x.shape, m), k) for m, k in rm.decompose(x.rep, seed)]


def indecomposables(x: ChainObject, seed: int = 0) -> list[ChainObject]:
    return [pc.obj for pc in split(x, seed)]


# ---------------------------------------------------------------------------
# interval objects: m_i, p_i and their projective / injective sums


def interval(alg, n: int, m: Representation, lo: int, hi: int) -> ChainObject:
    """``m`` on branches ``lo..hi`` joined by identities, zero elsewhere."""
    zero = Representation.zero(alg)
    branches = [m if lo <= i <= hi else zero for i in range(1, n + 1)]
    maps = []
    for i in range(1, n):
        if lo <= i and i + 1 <= hi:
            maps.append(ModuleMap.identity(m))
        else:
            maps.append(ModuleMap.zero(branches[i], branches[i - 1]))
    return ChainObject.from_branches(alg, branches, maps)


def m_obj(alg, n: int, m: Representation, i: int) -> ChainObject:
    """``m_i(M) = (M, ..., M, 0, ..., 0)`` with ``M`` on the first ``i`` branches."""
    return interval(alg, n, m, 1, i)


def p_obj(alg, n: int, m: Representation, i: int) -> ChainObject:
    """``p_i(M) = (0, ..., 0, M, ..., M)`` with ``M`` on the last ``i`` branches."""
    return interval(alg, n, m, n - i + 1, n)


@dataclass
class ChainProj:
    """``⊕ m_{i_a}(P(v_a))`` with generator positions."""

    obj: ChainObject
    items: list[tuple[int, int]]  # (last branch i, vertex v)
    gens: list[tuple[int, int]]   # (ladder vertex, position)


@dataclass
class ChainInj:
    """``⊕ p(I(v_a))`` on branches ``s_a..n`` with cogenerator positions."""

    obj: ChainObject
    items: list[tuple[int, int]]  # (first branch s, vertex v)
    cogens: list[tuple[int, int]]


def chain_proj(alg, n: int, items: Sequence[tuple[int, int]]) -> ChainProj:
    shape = ladder(alg, n)
    parts = [m_obj(alg, n, alg.proj(v), i) for i, v in items]
    obj = direct_sum(parts, alg, n)
    gens, offs = [], [0] * shape.quiver.num_vertices
    for (i, v), part in zip(items, parts):
        lv = shape.vertex(i, v)
        pos = alg.paths_between(v, v).index(alg.idempotent_index(v))
        gens.append((lv, offs[lv] + pos))
        for k in range(len(offs)):
            offs[k] += part.rep.dims[k]
    return ChainProj(obj, list(items), gens)


def chain_inj(alg, n: int, items: Sequence[tuple[int, int]]) -> ChainInj:
    shape = ladder(alg, n)
    parts = [interval(alg, n, alg.inj(v), s, n) for s, v in items]
    obj = direct_sum(parts, alg, n)
    cogens, offs = [], [0] * shape.quiver.num_vertices
    for (s, v), part in zip(items, parts):
        lv = shape.vertex(s, v)
        pos = alg.paths_between(v, v).index(alg.idempotent_index(v))
        cogens.append((lv, offs[lv] + pos))
        for k in range(len(offs)):
            offs[k] += part.rep.dims[k]
    return ChainInj(obj, list(items), cogens)


def map_from_chain_proj(cp: ChainProj, x: ChainObject, elems: Sequence[np.ndarray]) -> ChainMap:
    """Send the generator of ``m_i(P(v))`` to an element of ``(X_i)_v``."""
    alg, n, shape = x.alg, x.n, x.shape
    p = x.p
    blocks = []
    for j in range(1, n + 1):
        for z in range(shape.nv):
            cols = []
            for (i, v), e in zip(cp.items, elems):
                if j > i:
                    continue
                e = np.asarray(e, dtype=np.int64).reshape(-1, 1)
                down = x.composite(j, i).blocks[z]
                for b in alg.paths_between(v, z):
                    col = el.mul(x.branch(i).path_matrix(alg.basis[b].arrows, v), e, p)
                    cols.append(el.mul(down, col, p))
            blocks.append(np.hstack(cols) if cols else el.zeros(x.rep.dims[shape.vertex(j, z)], 0))
    return ChainMap(cp.obj, x, ModuleMap(cp.obj.rep, x.rep, blocks))


def map_to_chain_inj(x: ChainObject, ci: ChainInj, funcs: Sequence[np.ndarray]) -> ChainMap:
    """Map into ``p(I(v))`` on branches ``s..n`` given by a functional on ``(X_s)_v``."""
    alg, n, shape = x.alg, x.n, x.shape
    p = x.p
    blocks = []
    for k in range(1, n + 1):
        for z in range(shape.nv):
            rows = []
            for (s, v), xi in zip(ci.items, funcs):
                if k < s:
                    continue
                xi = np.asarray(xi, dtype=np.int64).reshape(1, -1)
                up = x.composite(s, k).blocks[z]
                for b in alg.paths_between(z, v):
                    row = el.mul(xi, x.branch(s).path_matrix(alg.basis[b].arrows, z), p)
                    rows.append(el.mul(row, up, p))
            blocks.append(np.vstack(rows) if rows else el.zeros(0, x.rep.dims[shape.vertex(k, z)]))
    return ChainMap(x, ci.obj, ModuleMap(x.rep, ci.obj.rep, blocks))


def projective_cover(x: ChainObject) -> tuple[ChainProj, ChainMap]:
    shape = x.shape
    rad = rm.radical_bases(x.rep)
    items, elems = [], []
    for lv in range(shape.quiver.num_vertices):
        comp = el.complement_basis(rad[lv], x.rep.dims[lv], x.p)
        i, v = shape.branch_of(lv)
        for j in range(comp.shape[1]):
            items.append((i, v))
            elems.append(comp[:, j:j + 1])
    cp = chain_proj(x.alg, x.n, items)
    return cp, map_from_chain_proj(cp, x, elems)


def injective_envelope(x: ChainObject) -> tuple[ChainInj, ChainMap]:
    shape = x.shape
    soc = rm.socle_bases(x.rep)
    items, funcs = [], []
    for lv in range(shape.quiver.num_vertices):
        if soc[lv].shape[1] == 0:
            continue
        left = el.left_inverse(soc[lv], x.p)
        s, v = shape.branch_of(lv)
        for j in range(left.shape[0]):
            items.append((s, v))
            funcs.append(left[j])
    ci = chain_inj(x.alg, x.n, items)
    return ci, map_to_chain_inj(x, ci, funcs)


def lift_chain(cp: ChainProj, h: ChainMap, q: ChainMap) -> ChainMap:
    """``g`` with ``q ∘ g = h`` for ``h`` out of a chain projective and ``q`` epi."""
    p = h.src.p
    elems = []
    for lv, pos in cp.gens:
        want = h.lmap.blocks[lv][:, pos:pos + 1]
        sol = el.solve(q.lmap.blocks[lv], want, p)
        if sol is None:
            raise ValueError("chain map does not lift")
        elems.append(sol)
    return map_from_chain_proj(cp, q.src, elems)


def extend_chain(ci: ChainInj, h: ChainMap, i: ChainMap) -> ChainMap:
    """``e`` with ``e ∘ i = h`` for ``h`` into a chain injective and ``i`` mono."""
    p = h.src.p
    funcs = []
    for lv, pos in ci.cogens:
        want = h.lmap.blocks[lv][pos:pos + 1, :]
        sol = el.solve(i.lmap.blocks[lv].T, want.T, p)
        if sol is None:
            raise ValueError("chain map does not extend")
        funcs.append(sol[:, 0])
    return map_to_chain_inj(i.tgt, ci, funcs)


def is_projective(x: ChainObject) -> bool:
    """Projective in ``Mor_n(A)``."""
    cp, _ = projective_cover(x)
    return cp.obj.dim == x.dim


def is_injective(x: ChainObject) -> bool:
    """Injective in ``Mor_n(A)``."""
    ci, _ = injective_envelope(x)
    return ci.obj.dim == x.dim


def is_mor_proj_inj_s(x: ChainObject) -> bool:
    """Whether ``x`` is a sum of objects ``m_i(P)``: the projective-injectives of ``S_n(A)``."""
    return is_projective(x)


# ---------------------------------------------------------------------------
# the Auslander-Reiten translate of Mor_n(A)


def _branch_proj_sum(cp: ChainProj, alg) -> rm.ProjSum:
    return rm.proj_sum(alg, [v for _, v in cp.items])


def tau_mor(x: ChainObject) -> ChainObject:
    """``τ_M X = Ker ν_M(P1 -> P0)`` for the minimal projective presentation in Mor_n."""
    alg, n = x.alg, x.n
    cp0, pi = projective_cover(x)
    k, inc = kernel(pi)
    cp1, rho = projective_cover(k)
    p1 = inc.compose(rho)
    g = p1.branch(1)
    ps1, ps0 = _branch_proj_sum(cp1, alg), _branch_proj_sum(cp0, alg)
    ng = rm.nu_proj_map(ps1, ps0, ModuleMap(ps1.module, ps0.module, g.blocks))
    src = direct_sum([interval(alg, n, alg.inj(v), i, n) for i, v in cp1.items], alg, n)
    tgt = direct_sum([interval(alg, n, alg.inj(v), i, n) for i, v in cp0.items], alg, n)
    maps = [_restrict_summands(ng, cp1.items, cp0.items, alg, k, src.branch(k), tgt.branch(k),
                               lambda it, kk: it[0] <= kk) for k in range(1, n + 1)]
    f = ChainMap.from_branch_maps(src, tgt, maps)
    return kernel(f)[0]


def tau_inv_mor(x: ChainObject) -> ChainObject:
    """``τ_M⁻ X = Coker ν_M⁻(I0 -> I1)`` for the minimal injective copresentation."""
    alg, n = x.alg, x.n
    ci0, e0 = injective_envelope(x)
    c, q = cokernel(e0)
    ci1, e1 = injective_envelope(c)
    i1 = e1.compose(q)
    g = i1.branch(n)
    is0 = rm.inj_sum(alg, [v for _, v in ci0.items])
    is1 = rm.inj_sum(alg, [v for _, v in ci1.items])
    ng = rm.nu_inv_inj_map(is0, is1, ModuleMap(is0.module, is1.module, g.blocks))
    src = direct_sum([interval(alg, n, alg.proj(v), 1, s) for s, v in ci0.items], alg, n)
    tgt = direct_sum([interval(alg, n, alg.proj(v), 1, s) for s, v in ci1.items], alg, n)
    maps = [_restrict_summands(ng, ci0.items, ci1.items, alg, k, src.branch(k), tgt.branch(k),
                               lambda it, kk: it[0] >= kk, proj=True) for k in range(1, n + 1)]
    f = ChainMap.from_branch_maps(src, tgt, maps)
    return cokernel(f)[0]


def _restrict_summands(g: ModuleMap, src_items, tgt_items, alg, k: int,
                       src_branch: Representation, tgt_branch: Representation, present, proj=False):
    """Rows/columns of ``g`` belonging to summands present on branch ``k``."""
    blocks = []
    mod = alg.proj if proj else alg.inj
    for z in range(alg.num_vertices):
        rows, off = [], 0
        for it in tgt_items:
            d = mod(it[1]).dims[z]
            if present(it, k):
                rows.extend(range(off, off + d))
            off += d
        cols, off = [], 0
        for it in src_items:
            d = mod(it[1]).dims[z]
            if present(it, k):
                cols.extend(range(off, off + d))
            off += d
        blocks.append(g.blocks[z][np.ix_(rows, cols)] if rows and cols
                      else el.zeros(len(rows), len(cols)))
    return ModuleMap(src_branch, tgt_branch, blocks)


# ---------------------------------------------------------------------------
# the functors Cok, Ker, Mono, Epi


def cok(x: ChainObject) -> ChainObject:
    """``Cok X``: branch ``j < n`` is ``Coker(X_{j+1} -> X_1)``, branch ``n`` is ``X_1``."""
    return cok_data(x)[0]


def cok_data(x: ChainObject):
    alg, n = x.alg, x.n
    quots = []
    for j in range(1, n):
        quots.append(rm.cokernel(x.composite(1, j + 1)))
    quots.append((x.branch(1), ModuleMap.identity(x.branch(1))))
    maps = []
    for j in range(1, n):
        # branch j+1 -> branch j, induced by the identity of X_1
        maps.append(rm.induce(ModuleMap.identity(x.branch(1)), quots[j][1], quots[j - 1][1]))
    return ChainObject.from_branches(alg, [q for q, _ in quots], maps), [pr for _, pr in quots]


def cok_map(f: ChainMap, dx=None, dy=None) -> ChainMap:
    cx, px = dx or cok_data(f.src)
    cy, py = dy or cok_data(f.tgt)
    f1 = f.branch(1)
    return ChainMap.from_branch_maps(cx, cy, [rm.induce(f1, px[j], py[j]) for j in range(f.src.n)])


def ker(x: ChainObject) -> ChainObject:
    """``Ker X``: branch 1 is ``X_n``, branch ``j >= 2`` is ``Ker(X_n -> X_{j-1})``."""
    return ker_data(x)[0]


def ker_data(x: ChainObject):
    alg, n = x.alg, x.n
    subs = [(x.branch(n), ModuleMap.identity(x.branch(n)))]
    for j in range(2, n + 1):
        subs.append(rm.kernel(x.composite(j - 1, n)))
    maps = []
    for j in range(1, n):
        maps.append(rm.restrict(ModuleMap.identity(x.branch(n)), subs[j][1], subs[j - 1][1]))
    return ChainObject.from_branches(alg, [s for s, _ in subs], maps), [inc for _, inc in subs]


def ker_map(f: ChainMap, dx=None, dy=None) -> ChainMap:
    kx, ix = dx or ker_data(f.src)
    ky, iy = dy or ker_data(f.tgt)
    fn = f.branch(f.src.n)
    return ChainMap.from_branch_maps(kx, ky, [rm.restrict(fn, ix[j], iy[j]) for j in range(f.src.n)])


def mono(x: ChainObject) -> ChainObject:
    """``(X_1, Im φ_1, Im φ_1φ_2, ...)`` with inclusions."""
    alg, n = x.alg, x.n
    subs = [(x.branch(1), ModuleMap.identity(x.branch(1)))]
    for j in range(2, n + 1):
        subs.append(rm.image(x.composite(1, j)))
    maps = [rm.restrict(ModuleMap.identity(x.branch(1)), subs[j][1], subs[j - 1][1]) for j in range(1, n)]
    return ChainObject.from_branches(alg, [s for s, _ in subs], maps)


def epi(x: ChainObject) -> ChainObject:
    """Branch ``j`` is the image of ``X_n -> X_j``, with the restricted structure maps."""
    return epi_data(x)[0]


def epi_data(x: ChainObject):
    alg, n = x.alg, x.n
    subs = [rm.image(x.composite(j, n)) for j in range(1, n)]
    subs.append((x.branch(n), ModuleMap.identity(x.branch(n))))
    maps = [rm.restrict(x.phi(j), subs[j][1], subs[j - 1][1]) for j in range(1, n)]
    return ChainObject.from_branches(alg, [s for s, _ in subs], maps), [inc for _, inc in subs]


def epi_map(f: ChainMap, dx=None, dy=None) -> ChainMap:
    ex, ix = dx or epi_data(f.src)
    ey, iy = dy or epi_data(f.tgt)
    maps = [rm.restrict(f.branch(j + 1), ix[j], iy[j]) for j in range(f.src.n)]
    return ChainMap.from_branch_maps(ex, ey, maps)


# ---------------------------------------------------------------------------
# Mimo and Mepi


def _perturbation(seed: int):
    return None if not seed else np.random.default_rng(seed)


def mimo(x: ChainObject, seed: int = 0) -> ChainObject:
    """Minimal monomorphism: add injective envelopes of the kernels of the maps.

    Branch ``i`` becomes ``X_i ⊕ I(Ker φ_i) ⊕ ... ⊕ I(Ker φ_{n-1})``.  The
    extension ``e_i`` of the envelope of ``Ker φ_i`` to ``X_{i+1}`` is not
    unique; seed 0 takes the particular solution returned by the solver and
    other seeds add a seeded random solution of the homogeneous system.
    """
    alg, n = x.alg, x.n
    rng = _perturbation(seed)
    envs, exts = [], []
    for i in range(1, n):
        k, inc = rm.kernel(x.phi(i))
        inj, e = rm.injective_envelope(k)
        envs.append(inj.module)
        exts.append(rm.extend_through(inj, e, inc, rng))
    branches = []
    for i in range(1, n + 1):
        branches.append(rm.direct_sum([x.branch(i)] + envs[i - 1:], alg))
    maps = []
    for i in range(1, n):
        src_parts = [x.branch(i + 1)] + envs[i:]
        tgt_parts = [x.branch(i)] + envs[i - 1:]
        grid = [[None] * len(src_parts) for _ in tgt_parts]
        grid[0][0] = x.phi(i)
        grid[1][0] = exts[i - 1]
        for k in range(1, len(src_parts)):
            grid[k + 1][k] = ModuleMap.identity(src_parts[k])
        maps.append(rm.block_map(branches[i], branches[i - 1], grid, src_parts, tgt_parts))
    return ChainObject.from_branches(alg, branches, maps)


def mepi(x: ChainObject, seed: int = 0) -> ChainObject:
    """Minimal epimorphism: add projective covers of the cokernels of the maps.

    Branch ``i`` becomes ``X_i ⊕ P(Coker φ_{i-1}) ⊕ ... ⊕ P(Coker φ_1)``.
    """
    alg, n = x.alg, x.n
    rng = _perturbation(seed)
    covers, lifts = [], []
    for i in range(1, n):
        c, q = rm.cokernel(x.phi(i))
        ps, pi = rm.projective_cover(c)
        covers.append(ps.module)
        lifts.append(rm.lift_through(ps, pi, q, rng))
    branches = []
    for i in range(1, n + 1):
        branches.append(rm.direct_sum([x.branch(i)] + covers[:i - 1][::-1], alg))
    maps = []
    for i in range(1, n):
        src_parts = [x.branch(i + 1)] + covers[:i][::-1]
        tgt_parts = [x.branch(i)] + covers[:i - 1][::-1]
        grid = [[None] * len(src_parts) for _ in tgt_parts]
        grid[0][0] = x.phi(i)
        grid[0][1] = lifts[i - 1]
        for k in range(1, len(tgt_parts)):
            grid[k][k + 1] = ModuleMap.identity(tgt_parts[k])
        maps.append(rm.block_map(branches[i], branches[i - 1], grid, src_parts, tgt_parts))
    return ChainObject.from_branches(alg, branches, maps)


# ---------------------------------------------------------------------------
# branchwise functors


def branchwise(x: ChainObject, obj_fn, data_fn, map_fn) -> ChainObject:
    """Apply a module functor to every branch and structure map."""
    data = [data_fn(b) for b in x.branches]
    branches = [obj_fn(d) for d in data]
    maps = [map_fn(x.phi(i), data[i], data[i - 1]) for i in range(1, x.n)]
    return ChainObject.from_branches(x.alg, branches, maps)


def tau_branchwise(x: ChainObject) -> ChainObject:
    return branchwise(x, lambda d: d.tau, rm.tau_data, rm.tau_map)


def tau_inv_branchwise(x: ChainObject) -> ChainObject:
    return branchwise(x, lambda d: d.tau_inv, rm.tau_inv_data, rm.tau_inv_map)


def syzygy_branchwise(x: ChainObject) -> ChainObject:
    return branchwise(x, lambda d: d.kernel, rm.cover_data, rm.syzygy_map)


def cosyzygy_branchwise(x: ChainObject) -> ChainObject:
    return branchwise(x, lambda d: d.cokernel, rm.envelope_data, rm.cosyzygy_map)


# ---------------------------------------------------------------------------
# classification helpers


def in_s(x: ChainObject) -> bool:
    return x.is_mono()


def in_f(x: ChainObject) -> bool:
    return x.is_epi()


def classify_proj_inj(x: ChainObject, seed: int = 0) -> dict[str, tuple[int, str] | None]:
    """Locate an indecomposable ``x`` among the interval objects that are projective or injective.

    Each key maps to ``(i, vertex)`` when ``x`` is isomorphic to that interval
    object and to None otherwise:

    * ``projective_mor``: ``m_i(P(v))``, projective in ``Mor_n`` and in ``S_n``;
    * ``injective_mor``: ``p_i(I(v))``, injective in ``Mor_n`` and in ``F_n``;
    * ``injective_s``: ``m_i(I(v))``, injective in ``S_n``;
    * ``projective_f``: ``p_i(P(v))``, projective in ``F_n``.
    """
    if x.is_zero() or not is_indecomposable(x, seed):
        raise ValueError("classification needs an indecomposable object")
    alg, n = x.alg, x.n
    kinds = {
        "projective_mor": (m_obj, alg.proj),
        "injective_mor": (p_obj, alg.inj),
        "injective_s": (m_obj, alg.inj),
        "projective_f": (p_obj, alg.proj),
    }
    out: dict[str, tuple[int, str] | None] = {}
    for key, (make, module) in kinds.items():
        out[key] = None
        for v in range(alg.num_vertices):
            mv = module(v)
            for i in range(1, n + 1):
                if mv.dim * i == x.dim and is_iso(make(alg, n, mv, i), x, seed):
                    out[key] = (i, alg.quiver.vertices[v])
                    break
            if out[key]:
                break
    return out


def strip_proj_inj_s(x: ChainObject, seed: int = 0) -> ChainObject:
    """Remove summands ``m_i(P)`` (the projective-injective objects of ``S_n``)."""
    keep = [pc.obj for pc in split(x, seed) if not is_projective(pc.obj)]
    return direct_sum(keep, x.alg, x.n)


# ---------------------------------------------------------------------------
# random objects for property tests


def module_pool(alg) -> list[Representation]:
    """Indecomposables used to assemble random branches: all uniserials over a Nakayama algebra."""
    if alg.nakayama_params is None:
        return [alg.proj(v) for v in range(alg.num_vertices)] + \
               [alg.simple(v) for v in range(alg.num_vertices)]
    t = alg.nakayama_params[1]
    return [rm.uniserial(alg, v, l) for v in range(alg.num_vertices) for l in range(1, t + 1)]


def random_chain(alg, n: int, rng: np.random.Generator, max_summands: int = 2,
                 pool: Sequence[Representation] | None = None) -> ChainObject:
    """A chain with random branches from ``pool`` and random structure maps.

    Branch ``i`` gets up to ``max_summands`` pool modules and each map is a
    uniformly random element of the Hom space.
    """
    pool = list(pool) if pool is not None else module_pool(alg)
    branches = []
    for _ in range(n):
        k = int(rng.integers(0, max_summands + 1))
        picks = [pool[int(j)] for j in rng.integers(0, len(pool), size=k)]
        branches.append(rm.direct_sum(picks, alg))
    maps = []
    for i in range(1, n):
        src, tgt = branches[i], branches[i - 1]
        if src.dim == 0 or tgt.dim == 0:
            maps.append(ModuleMap.zero(src, tgt))
        else:
            maps.append(rm.HomSpace(src, tgt).random(rng))
    return ChainObject.from_branches(alg, branches, maps)
