"""Finite-dimensional modules as quiver representations, and their category.

A :class:`Representation` is a dimension vector together with one matrix per
arrow (``dim target x dim source``).  The generic operations here only use
the quiver; the ones that need projectives or injectives (covers, envelopes,
syzygies, the Nakayama functor and ``tau``) need a
:class:`~arkit.algebra.BoundQuiverAlgebra`.

The same generic machinery runs on the ladder quivers used for chain
objects (see :mod:`arkit.morcat`); there ``shape`` is a
:class:`LadderShape` rather than an algebra.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from . import exactlin as el


class DecompositionError(RuntimeError):
    """Raised when indecomposability cannot be certified."""


class Representation:
    """Dimension vector plus arrow matrices over ``shape`` (an algebra or ladder)."""

    __slots__ = ("shape", "dims", "mats", "__dict__")

    def __init__(self, shape, dims: Sequence[int], mats: Sequence[np.ndarray]):
        self.shape = shape
        self.dims = tuple(int(d) for d in dims)
        q = shape.quiver
        if len(self.dims) != q.num_vertices:
            raise ValueError("dimension vector does not match the quiver")
        if len(mats) != len(q.arrows):
            raise ValueError("one matrix per arrow is required")
        fixed = []
        for a, m in zip(q.arrows, mats):
            m = np.asarray(m, dtype=np.int64).reshape(self.dims[a.target], self.dims[a.source])
            fixed.append(m % shape.p)
        self.mats = tuple(fixed)

    # -- basic data ------------------------------------------------------------

    @property
    def p(self) -> int:
        return self.shape.p

    @property
    def quiver(self):
        return self.shape.quiver

    @property
    def dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.dim == 0

    @classmethod
    def zero_action(cls, shape, dims: Sequence[int]) -> "Representation":
        q = shape.quiver
        return cls(shape, dims, [el.zeros(dims[a.target], dims[a.source]) for a in q.arrows])

    @classmethod
    def zero(cls, shape) -> "Representation":
        return cls.zero_action(shape, [0] * shape.quiver.num_vertices)

    def path_matrix(self, path: Sequence[int], start: int | None = None) -> np.ndarray:
        """Action of a path (traversal order) as a matrix."""
        if not path:
            return el.identity(self.dims[start])
        out = self.mats[path[0]]
        for a in path[1:]:
            out = el.mul(self.mats[a], out, self.p)
        return out

    def satisfies_relations(self) -> bool:
        rels = getattr(self.shape, "relations", [])
        for rel in rels:
            acc = None
            for c, path in rel:
                term = c * self.path_matrix(path) % self.p
                acc = term if acc is None else (acc + term) % self.p
            if acc is not None and acc.any():
                return False
        return True

    def __repr__(self) -> str:
        return f"Representation(dims={self.dims})"

    @cached_property
    def fingerprint(self) -> tuple:
        """Cheap isomorphism invariant: dimensions and ranks of arrows and of rad/soc."""
        p = self.p
        ranks = tuple(el.rank(m, p) for m in self.mats)
        return (self.dims, ranks, radical(self)[0].dims, socle(self)[0].dims)

    def to_json(self) -> dict:
        q = self.quiver
        return {
            "dims": {q.vertices[i]: d for i, d in enumerate(self.dims)},
            "arrows": {a.name: self.mats[i].tolist() for i, a in enumerate(q.arrows)},
        }


def direct_sum(mods: Sequence[Representation], shape=None) -> Representation:
    if not mods:
        if shape is None:
            raise ValueError("empty direct sum needs a shape")
        return Representation.zero(shape)
    shape = mods[0].shape
    q = shape.quiver
    dims = [sum(m.dims[v] for m in mods) for v in range(q.num_vertices)]
    mats = [el.direct_sum([m.mats[i] for m in mods]) for i in range(len(q.arrows))]
    return Representation(shape, dims, mats)


class ModuleMap:
    """A morphism of representations: one matrix per vertex."""

    __slots__ = ("src", "tgt", "blocks")

    def __init__(self, src: Representation, tgt: Representation, blocks: Sequence[np.ndarray]):
        self.src = src
        self.tgt = tgt
        p = src.p
        self.blocks = tuple(np.asarray(b, dtype=np.int64).reshape(tgt.dims[v], src.dims[v]) % p
                            for v, b in enumerate(blocks))

    @property
    def p(self) -> int:
        return self.src.p

    @classmethod
    def zero(cls, src: Representation, tgt: Representation) -> "ModuleMap":
        return cls(src, tgt, [el.zeros(tgt.dims[v], src.dims[v]) for v in range(len(src.dims))])

    @classmethod
    def identity(cls, m: Representation) -> "ModuleMap":
        return cls(m, m, [el.identity(d) for d in m.dims])

    def compose(self, before: "ModuleMap") -> "ModuleMap":
        """``self ∘ before``."""
        p = self.p
        return ModuleMap(before.src, self.tgt,
                         [el.mul(a, b, p) for a, b in zip(self.blocks, before.blocks)])

    def __matmul__(self, other: "ModuleMap") -> "ModuleMap":
        return self.compose(other)

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.src, self.tgt, [(a + b) for a, b in zip(self.blocks, other.blocks)])

    def __sub__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.src, self.tgt, [(a - b) for a, b in zip(self.blocks, other.blocks)])

    def scale(self, c: int) -> "ModuleMap":
        return ModuleMap(self.src, self.tgt, [b * (c % self.p) for b in self.blocks])

    def vec(self) -> np.ndarray:
        if not self.blocks:
            return np.zeros(0, dtype=np.int64)
        return np.concatenate([b.reshape(-1) for b in self.blocks])

    def is_zero(self) -> bool:
        return not any(b.any() for b in self.blocks)

    def is_valid(self) -> bool:
        p = self.p
        for i, a in enumerate(self.src.quiver.arrows):
            lhs = el.mul(self.blocks[a.target], self.src.mats[i], p)
            rhs = el.mul(self.tgt.mats[i], self.blocks[a.source], p)
            if not np.array_equal(lhs, rhs):
                return False
        return True

    def is_mono(self) -> bool:
        return all(el.rank(b, self.p) == b.shape[1] for b in self.blocks)

    def is_epi(self) -> bool:
        return all(el.rank(b, self.p) == b.shape[0] for b in self.blocks)

    def is_iso(self) -> bool:
        return all(el.is_invertible(b, self.p) for b in self.blocks)

    def inverse(self) -> "ModuleMap":
        return ModuleMap(self.tgt, self.src, [el.inverse(b, self.p) for b in self.blocks])

    def __repr__(self) -> str:
        return f"ModuleMap({self.src.dims} -> {self.tgt.dims})"


def block_map(src: Representation, tgt: Representation, rows: Sequence[Sequence[ModuleMap | None]],
              src_parts: Sequence[Representation], tgt_parts: Sequence[Representation]) -> ModuleMap:
    """Assemble a map between direct sums from a block matrix of maps (``None`` = 0)."""
    p = src.p
    blocks = []
    for v in range(len(src.dims)):
        grid = []
        for i, tp in enumerate(tgt_parts):
            row = []
            for j, sp in enumerate(src_parts):
                f = rows[i][j]
                row.append(f.blocks[v] if f is not None else el.zeros(tp.dims[v], sp.dims[v]))
            grid.append(row)
        if grid and grid[0]:
            blocks.append(np.block(grid).astype(np.int64) % p if src.dims[v] and tgt.dims[v]
                          else el.zeros(tgt.dims[v], src.dims[v]))
        else:
            blocks.append(el.zeros(tgt.dims[v], src.dims[v]))
    return ModuleMap(src, tgt, blocks)


def sum_injection(parts: Sequence[Representation], total: Representation, k: int) -> ModuleMap:
    blocks = []
    for v in range(len(total.dims)):
        off = sum(x.dims[v] for x in parts[:k])
        b = el.zeros(total.dims[v], parts[k].dims[v])
        b[off:off + parts[k].dims[v]] = el.identity(parts[k].dims[v])
        blocks.append(b)
    return ModuleMap(parts[k], total, blocks)


def sum_projection(parts: Sequence[Representation], total: Representation, k: int) -> ModuleMap:
    blocks = []
    for v in range(len(total.dims)):
        off = sum(x.dims[v] for x in parts[:k])
        b = el.zeros(parts[k].dims[v], total.dims[v])
        b[:, off:off + parts[k].dims[v]] = el.identity(parts[k].dims[v])
        blocks.append(b)
    return ModuleMap(total, parts[k], blocks)


def direct_sum_map(maps: Sequence[ModuleMap], src: Representation | None = None,
                   tgt: Representation | None = None) -> ModuleMap:
    src = src or direct_sum([f.src for f in maps])
    tgt = tgt or direct_sum([f.tgt for f in maps])
    blocks = [el.direct_sum([f.blocks[v] for f in maps]) for v in range(len(src.dims))]
    return ModuleMap(src, tgt, blocks)


# ---------------------------------------------------------------------------
# hom spaces


def _hom_offsets(m: Representation, n: Representation) -> list[int]:
    offs = [0]
    for v in range(len(m.dims)):
        offs.append(offs[-1] + n.dims[v] * m.dims[v])
    return offs


def hom_system(m: Representation, n: Representation) -> np.ndarray:
    """Matrix ``E`` with ``E vec(f) = 0`` exactly for module maps ``f: m -> n``."""
    if m.shape.quiver is not n.shape.quiver and m.shape.quiver != n.shape.quiver:
        raise ValueError("representations live over different quivers")
    p = m.p
    offs = _hom_offsets(m, n)
    total = offs[-1]
    rows = []
    for i, a in enumerate(m.quiver.arrows):
        s, t = a.source, a.target
        r = n.dims[t] * m.dims[s]
        if r == 0:
            continue
        eq = np.zeros((r, total), dtype=np.int64)
        # f_t M_a  (row-major vec: vec(X B) = (1 kron B^T) vec X)
        if n.dims[t] and m.dims[t]:
            eq[:, offs[t]:offs[t + 1]] += np.kron(el.identity(n.dims[t]), m.mats[i].T)
        # - N_a f_s
        if n.dims[s] and m.dims[s]:
            eq[:, offs[s]:offs[s + 1]] -= np.kron(n.mats[i], el.identity(m.dims[s]))
        rows.append(eq % p)
    if not rows:
        return np.zeros((0, total), dtype=np.int64)
    return np.vstack(rows)


class HomSpace:
    """A basis of ``Hom(m, n)`` with coordinate extraction."""

    def __init__(self, m: Representation, n: Representation):
        self.src = m
        self.tgt = n
        self.offsets = _hom_offsets(m, n)
        total = self.offsets[-1]
        if total == 0:
            self.basis = np.zeros((0, 0), dtype=np.int64)
        else:
            self.basis = el.kernel_basis(hom_system(m, n), m.p)

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def element(self, coeffs) -> ModuleMap:
        vec = el.mul(self.basis, np.asarray(coeffs, dtype=np.int64).reshape(-1, 1), self.src.p)[:, 0] \
            if self.dim else np.zeros(self.offsets[-1], dtype=np.int64)
        return self.from_vec(vec)

    def from_vec(self, vec: np.ndarray) -> ModuleMap:
        m, n = self.src, self.tgt
        blocks = [vec[self.offsets[v]:self.offsets[v + 1]].reshape(n.dims[v], m.dims[v])
                  for v in range(len(m.dims))]
        return ModuleMap(m, n, blocks)

    def maps(self) -> list[ModuleMap]:
        return [self.from_vec(self.basis[:, j]) for j in range(self.dim)]

    @cached_property
    def _left_inv(self) -> np.ndarray:
        return el.left_inverse(self.basis, self.src.p)

    def coords(self, f: ModuleMap) -> np.ndarray:
        if self.dim == 0:
            return np.zeros(0, dtype=np.int64)
        return el.mul(self._left_inv, f.vec().reshape(-1, 1), self.src.p)[:, 0]

    def random(self, rng: np.random.Generator) -> ModuleMap:
        return self.element(rng.integers(0, self.src.p, size=self.dim))


def hom_basis(m: Representation, n: Representation) -> list[ModuleMap]:
    return HomSpace(m, n).maps()


def hom_dim(m: Representation, n: Representation) -> int:
    if m.dim == 0 or n.dim == 0:
        return 0
    return HomSpace(m, n).dim


def end_basis(m: Representation) -> list[ModuleMap]:
    return hom_basis(m, m)


# ---------------------------------------------------------------------------
# sub- and quotient objects


def subrep(m: Representation, bases: Sequence[np.ndarray]) -> tuple[Representation, ModuleMap]:
    """Submodule spanned by invariant column bases; returns it with its inclusion."""
    p = m.p
    dims = [b.shape[1] for b in bases]
    lefts = [el.left_inverse(b, p) for b in bases]
    mats = []
    for i, a in enumerate(m.quiver.arrows):
        mats.append(el.mul(lefts[a.target], el.mul(m.mats[i], bases[a.source], p), p))
    sub = Representation(m.shape, dims, mats)
    return sub, ModuleMap(sub, m, bases)


def quotient(m: Representation, bases: Sequence[np.ndarray]) -> tuple[Representation, ModuleMap]:
    """Quotient by an invariant subspace; returns it with the canonical surjection."""
    p = m.p
    projs, sects = [], []
    for v, b in enumerate(bases):
        comp = el.complement_basis(b, m.dims[v], p)
        full = np.hstack([b, comp]) if b.size or comp.size else el.zeros(m.dims[v], 0)
        inv = el.inverse(full, p) if m.dims[v] else el.zeros(0, 0)
        projs.append(inv[b.shape[1]:].copy())
        sects.append(comp)
    mats = []
    for i, a in enumerate(m.quiver.arrows):
        mats.append(el.mul(projs[a.target], el.mul(m.mats[i], sects[a.source], p), p))
    q = Representation(m.shape, [pr.shape[0] for pr in projs], mats)
    return q, ModuleMap(m, q, projs)


def kernel(f: ModuleMap) -> tuple[Representation, ModuleMap]:
    return subrep(f.src, [el.kernel_basis(b, f.p) for b in f.blocks])


def image(f: ModuleMap) -> tuple[Representation, ModuleMap]:
    return subrep(f.tgt, [el.image_basis(b, f.p) for b in f.blocks])


def cokernel(f: ModuleMap) -> tuple[Representation, ModuleMap]:
    return quotient(f.tgt, [el.image_basis(b, f.p) for b in f.blocks])


def radical_bases(m: Representation) -> list[np.ndarray]:
    p = m.p
    q = m.quiver
    out = []
    for v in range(q.num_vertices):
        imgs = [m.mats[i] for i, a in enumerate(q.arrows) if a.target == v and m.dims[a.source]]
        if imgs and m.dims[v]:
            out.append(el.image_basis(np.hstack(imgs), p))
        else:
            out.append(el.zeros(m.dims[v], 0))
    return out


def socle_bases(m: Representation) -> list[np.ndarray]:
    p = m.p
    q = m.quiver
    out = []
    for v in range(q.num_vertices):
        outs = [m.mats[i] for i, a in enumerate(q.arrows) if a.source == v and m.dims[a.target]]
        if outs and m.dims[v]:
            out.append(el.kernel_basis(np.vstack(outs), p))
        else:
            out.append(el.identity(m.dims[v]))
    return out


def radical(m: Representation) -> tuple[Representation, ModuleMap]:
    return subrep(m, radical_bases(m))


def socle(m: Representation) -> tuple[Representation, ModuleMap]:
    return subrep(m, socle_bases(m))


def top(m: Representation) -> tuple[Representation, ModuleMap]:
    return quotient(m, radical_bases(m))


def restrict(f: ModuleMap, src_incl: ModuleMap, tgt_incl: ModuleMap) -> ModuleMap:
    """The map ``S -> T`` induced by ``f`` on subobjects (``f`` must carry ``S`` into ``T``)."""
    p = f.p
    blocks = []
    for v in range(len(f.blocks)):
        left = el.left_inverse(tgt_incl.blocks[v], p)
        blocks.append(el.mul(left, el.mul(f.blocks[v], src_incl.blocks[v], p), p))
    return ModuleMap(src_incl.src, tgt_incl.src, blocks)


def induce(f: ModuleMap, src_proj: ModuleMap, tgt_proj: ModuleMap) -> ModuleMap:
    """The map ``Q -> R`` induced by ``f`` on quotients (``f`` must respect the kernels)."""
    p = f.p
    blocks = []
    for v in range(len(f.blocks)):
        sect = el.right_inverse(src_proj.blocks[v], p)
        blocks.append(el.mul(tgt_proj.blocks[v], el.mul(f.blocks[v], sect, p), p))
    return ModuleMap(src_proj.tgt, tgt_proj.tgt, blocks)


# ---------------------------------------------------------------------------
# endomorphism rings and Krull-Schmidt


def _block_diag(f: ModuleMap) -> np.ndarray:
    return el.direct_sum(list(f.blocks))


def _trace(f: ModuleMap) -> int:
    return int(sum(int(np.trace(b)) for b in f.blocks)) % f.p


def _shift_nilpotent(f: ModuleMap, d: int) -> bool:
    p = f.p
    lam = _trace(f) * pow(d, p - 2, p) % p
    for b in f.blocks:
        if not el.is_nilpotent((b - lam * el.identity(b.shape[0])) % p, p):
            return False
    return True


def is_local_endring(basis: Sequence[ModuleMap], m: Representation, rng: np.random.Generator) -> bool:
    """Whether ``End(m)`` (given by a basis) is local with residue field GF(p).

    A local ring with residue field k has radical equal to the trace-zero
    elements, because ``f = λ + nilpotent`` forces ``tr f = λ dim m``.  We
    test a few random elements first and then certify by checking that the
    trace-zero part generates a nilpotent subalgebra.
    """
    p = m.p
    d = m.dim
    if d == 0:
        return False
    if d % p == 0:
        raise DecompositionError("indecomposability undecided: p divides the dimension")
    if len(basis) == 1:
        return True
    # random prefilter
    for _ in range(3):
        f = _combine(basis, rng.integers(0, p, size=len(basis)))
        if not _shift_nilpotent(f, d):
            return False
    # rigorous: the span of trace-shifted elements must be a nilpotent algebra
    inv_d = pow(d, p - 2, p)
    big = []
    for f in basis:
        lam = _trace(f) * inv_d % p
        big.append((_block_diag(f) - lam * el.identity(d)) % p)
    gens = np.array(big)
    flat = el.row_basis(gens.reshape(len(big), -1), p)
    gens = flat.reshape(-1, d, d)
    cur = gens
    for _ in range(d + 1):
        if cur.shape[0] == 0:
            return True
        prods = np.einsum("aij,bjk->abik", cur, gens) % p
        flat = el.row_basis(prods.reshape(-1, d * d), p)
        cur = flat.reshape(-1, d, d)
    return cur.shape[0] == 0


def _combine(basis: Sequence[ModuleMap], coeffs) -> ModuleMap:
    p = basis[0].p
    blocks = []
    for v in range(len(basis[0].blocks)):
        acc = np.zeros_like(basis[0].blocks[v])
        for c, f in zip(coeffs, basis):
            if c:
                acc = (acc + int(c) * f.blocks[v]) % p
        blocks.append(acc)
    return ModuleMap(basis[0].src, basis[0].tgt, blocks)


def _try_fitting(f: ModuleMap, m: Representation, seed: int):
    """Split ``m`` along a primary component of ``f`` if one is proper."""
    p = m.p
    big = _block_diag(f)
    chi = el.charpoly(big, p)
    roots = el.linear_roots(chi, p, seed)
    d = m.dim
    for lam in sorted(roots):
        ker_b, im_b = [], []
        for v, b in enumerate(f.blocks):
            g = (b - lam * el.identity(b.shape[0])) % p
            k, i = el.fitting_split(g, p)
            ker_b.append(k)
            im_b.append(i)
        kd = sum(k.shape[1] for k in ker_b)
        if 0 < kd < d:
            return ker_b, im_b
    return None


@dataclass
class Piece:
    """An indecomposable summand with its split inclusion and projection."""

    module: Representation
    incl: ModuleMap
    proj: ModuleMap


def split_indecomposables(m: Representation, seed: int = 0, budget: int = 200) -> list[Piece]:
    """Krull-Schmidt decomposition with explicit split maps."""
    rng = np.random.default_rng(seed)
    done: list[Piece] = []
    stack = [Piece(m, ModuleMap.identity(m), ModuleMap.identity(m))]
    while stack:
        piece = stack.pop()
        x = piece.module
        if x.dim == 0:
            continue
        parts = _split_once(x, rng, seed, budget)
        if parts is None:
            done.append(piece)
            continue
        for basis_sel, proj_rows in parts:
            sub, inc = subrep(x, basis_sel)
            pr = ModuleMap(x, sub, proj_rows)
            stack.append(Piece(sub, piece.incl.compose(inc), pr.compose(piece.proj)))
    done.reverse()
    return done


def _split_once(x: Representation, rng, seed: int, budget: int):
    serial = _serial_split(x)
    if serial is not None:
        return serial
    hs = HomSpace(x, x)
    basis = hs.maps()
    if len(basis) == 1:
        return None
    if is_local_endring(basis, x, rng):
        return None
    p = x.p
    candidates = list(basis)
    for k in range(budget):
        f = candidates[k] if k < len(candidates) else hs.random(rng)
        res = _try_fitting(f, x, seed + k)
        if res is None:
            continue
        ker_b, im_b = res
        projs_a, projs_b = [], []
        for v in range(len(x.dims)):
            full = np.hstack([ker_b[v], im_b[v]])
            inv = el.inverse(full, p) if x.dims[v] else el.zeros(0, 0)
            projs_a.append(inv[:ker_b[v].shape[1]].copy())
            projs_b.append(inv[ker_b[v].shape[1]:].copy())
        return [(ker_b, projs_a), (im_b, projs_b)]
    raise DecompositionError("indecomposability undecided: no splitting endomorphism found")


def _serial_split(x: Representation):
    """Fast path for Nakayama algebras: split off a uniserial summand of maximal length."""
    alg = x.shape
    params = getattr(alg, "nakayama_params", None)
    if params is None:
        return None
    m_, t = params
    p = x.p
    best = None
    for v in range(len(x.dims)):
        for j in range(x.dims[v]):
            vec = el.zeros(x.dims[v], 1)
            vec[j, 0] = 1
            cols, w, cur = [(v, vec)], v, vec
            while True:
                nxt = el.mul(x.mats[w], cur, p)
                if not nxt.any():
                    break
                w = (w + 1) % m_
                cur = nxt
                cols.append((w, cur))
            if best is None or len(cols) > len(best):
                best = cols
    if best is None:
        return None
    if len(best) == x.dim:
        return None  # the whole module is uniserial
    bases = [el.zeros(x.dims[v], 0) for v in range(len(x.dims))]
    for w, c in best:
        bases[w] = np.hstack([bases[w], c])
    u, inc = subrep(x, bases)
    hs = HomSpace(x, u)
    # find a retraction r with r ∘ inc = id
    cols = np.array([f.compose(inc).vec() for f in hs.maps()]).T
    target = ModuleMap.identity(u).vec().reshape(-1, 1)
    sol = el.solve(cols, target, p)
    if sol is None:
        return None
    r = hs.element(sol[:, 0])
    k_bases = [el.kernel_basis(b, p) for b in r.blocks]
    projs_u, projs_k = [], []
    for v in range(len(x.dims)):
        full = np.hstack([bases[v], k_bases[v]])
        inv = el.inverse(full, p) if x.dims[v] else el.zeros(0, 0)
        projs_u.append(inv[:bases[v].shape[1]].copy())
        projs_k.append(inv[bases[v].shape[1]:].copy())
    return [(bases, projs_u), (k_bases, projs_k)]


def decompose(m: Representation, seed: int = 0) -> list[tuple[Representation, int]]:
    """Indecomposable summands with multiplicities (first-occurrence order)."""
    groups: list[list] = []
    for piece in split_indecomposables(m, seed):
        for g in groups:
            if is_iso(g[0], piece.module, seed):
                g[1] += 1
                break
        else:
            groups.append([piece.module, 1])
    return [(g[0], g[1]) for g in groups]


def is_indecomposable(m: Representation, seed: int = 0) -> bool:
    if m.dim == 0:
        return False
    basis = end_basis(m)
    return is_local_endring(basis, m, np.random.default_rng(seed))


def find_iso(m: Representation, n: Representation, seed: int = 0, trials: int = 64) -> ModuleMap | None:
    """An isomorphism ``m -> n`` found by randomized search, or ``None``."""
    if m.dims != n.dims:
        return None
    if m.dim == 0:
        return ModuleMap.zero(m, n)
    hs = HomSpace(m, n)
    if hs.dim == 0:
        return None
    for f in hs.maps():
        if f.is_iso():
            return f
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        f = hs.random(rng)
        if f.is_iso():
            return f
    return None


def is_iso(m: Representation, n: Representation, seed: int = 0, trials: int = 64) -> bool:
    if m.dims != n.dims:
        return False
    if m.dim == 0:
        return True
    if m.fingerprint != n.fingerprint:
        return False
    hmn = hom_dim(m, n)
    if hmn == 0 or hmn != hom_dim(n, m) or hmn != hom_dim(m, m):
        return False
    if find_iso(m, n, seed, trials) is not None:
        return True
    # conclusive negative through decomposition matching
    return _same_multiset(decompose(m, seed), decompose(n, seed), seed)


def _same_multiset(a, b, seed) -> bool:
    b = [list(x) for x in b]
    for mod, mult in a:
        for entry in b:
            if entry[1] == mult and find_iso(mod, entry[0], seed) is not None:
                entry[1] = 0
                break
        else:
            return False
    return all(e[1] == 0 for e in b)


# ---------------------------------------------------------------------------
# projectives and injectives


@dataclass
class ProjSum:
    """``⊕ P(v_i)`` together with the position of each generator ``e_{v_i}``."""

    module: Representation
    vertices: list[int]
    gens: list[tuple[int, int]]  # (vertex, row index inside module space at that vertex)


@dataclass
class InjSum:
    """``⊕ I(v_i)`` together with the position of each cogenerator."""

    module: Representation
    vertices: list[int]
    cogens: list[tuple[int, int]]


def proj_sum(alg, vertices: Sequence[int]) -> ProjSum:
    vertices = list(vertices)
    parts = [alg.proj(v) for v in vertices]
    mod = direct_sum(parts, alg)
    gens, offs = [], [0] * alg.num_vertices
    for v, part in zip(vertices, parts):
        pos = alg.paths_between(v, v).index(alg.idempotent_index(v))
        gens.append((v, offs[v] + pos))
        for w in range(alg.num_vertices):
            offs[w] += part.dims[w]
    return ProjSum(mod, vertices, gens)


def inj_sum(alg, vertices: Sequence[int]) -> InjSum:
    vertices = list(vertices)
    parts = [alg.inj(v) for v in vertices]
    mod = direct_sum(parts, alg)
    cogens, offs = [], [0] * alg.num_vertices
    for v, part in zip(vertices, parts):
        pos = alg.paths_between(v, v).index(alg.idempotent_index(v))
        cogens.append((v, offs[v] + pos))
        for w in range(alg.num_vertices):
            offs[w] += part.dims[w]
    return InjSum(mod, vertices, cogens)


def map_from_proj(ps: ProjSum, target: Representation, elems: Sequence[np.ndarray]) -> ModuleMap:
    """The map ``⊕P(v_i) -> target`` sending generator ``i`` to ``elems[i]``."""
    alg = ps.module.shape
    nv = alg.num_vertices
    blocks = []
    for z in range(nv):
        cols = []
        for v, x in zip(ps.vertices, elems):
            x = np.asarray(x, dtype=np.int64).reshape(-1, 1)
            for b in alg.paths_between(v, z):
                cols.append(el.mul(target.path_matrix(alg.basis[b].arrows, v), x, target.p))
        blocks.append(np.hstack(cols) if cols else el.zeros(target.dims[z], 0))
    return ModuleMap(ps.module, target, blocks)


def map_to_inj(source: Representation, inj: InjSum, functionals: Sequence[np.ndarray]) -> ModuleMap:
    """The map ``source -> ⊕I(v_i)`` given by functionals on ``source`` at ``v_i``."""
    alg = inj.module.shape
    nv = alg.num_vertices
    blocks = []
    for z in range(nv):
        rows = []
        for v, xi in zip(inj.vertices, functionals):
            xi = np.asarray(xi, dtype=np.int64).reshape(1, -1)
            for b in alg.paths_between(z, v):
                rows.append(el.mul(xi, source.path_matrix(alg.basis[b].arrows, z), source.p))
        blocks.append(np.vstack(rows) if rows else el.zeros(0, source.dims[z]))
    return ModuleMap(source, inj.module, blocks)


def _complement_lifts(m: Representation, sub_bases: Sequence[np.ndarray]) -> list[tuple[int, np.ndarray]]:
    out = []
    for v in range(len(m.dims)):
        comp = el.complement_basis(sub_bases[v], m.dims[v], m.p)
        for j in range(comp.shape[1]):
            out.append((v, comp[:, j:j + 1]))
    return out


def projective_cover(m: Representation) -> tuple[ProjSum, ModuleMap]:
    """Minimal projective cover built from lifts of a basis of ``top m``."""
    alg = m.shape
    lifts = _complement_lifts(m, radical_bases(m))
    ps = proj_sum(alg, [v for v, _ in lifts])
    return ps, map_from_proj(ps, m, [x for _, x in lifts])


def injective_envelope(m: Representation) -> tuple[InjSum, ModuleMap]:
    """Minimal injective envelope built from functionals dual to a basis of ``soc m``."""
    alg = m.shape
    p = m.p
    soc = socle_bases(m)
    vertices, funcs = [], []
    for v in range(len(m.dims)):
        if soc[v].shape[1] == 0:
            continue
        left = el.left_inverse(soc[v], p)
        for j in range(left.shape[0]):
            vertices.append(v)
            funcs.append(left[j])
    inj = inj_sum(alg, vertices)
    return inj, map_to_inj(m, inj, funcs)


def lift_through(ps: ProjSum, h: ModuleMap, q: ModuleMap, rng=None) -> ModuleMap:
    """``g: ⊕P -> Q.src`` with ``q ∘ g = h`` (``q`` surjective, source projective)."""
    p = h.p
    elems = []
    for v, pos in ps.gens:
        want = h.blocks[v][:, pos:pos + 1]
        sol = el.solve(q.blocks[v], want, p)
        if sol is None:
            raise ValueError("map does not lift: target map is not surjective enough")
        if rng is not None:
            kb = el.kernel_basis(q.blocks[v], p)
            if kb.shape[1]:
                sol = (sol + el.mul(kb, rng.integers(0, p, size=(kb.shape[1], 1)), p)) % p
        elems.append(sol)
    return map_from_proj(ps, q.src, elems)


def extend_through(inj: InjSum, h: ModuleMap, i: ModuleMap, rng=None) -> ModuleMap:
    """``e: i.tgt -> ⊕I`` with ``e ∘ i = h`` (``i`` injective, target injective)."""
    p = h.p
    funcs = []
    for v, pos in inj.cogens:
        want = h.blocks[v][pos:pos + 1, :]
        sol = el.solve(i.blocks[v].T, want.T, p)
        if sol is None:
            raise ValueError("map does not extend: source map is not injective")
        if rng is not None:
            kb = el.kernel_basis(i.blocks[v].T, p)
            if kb.shape[1]:
                sol = (sol + el.mul(kb, rng.integers(0, p, size=(kb.shape[1], 1)), p)) % p
        funcs.append(sol[:, 0])
    return map_to_inj(i.tgt, inj, funcs)


def generator_elements(ps: ProjSum, f: ModuleMap) -> list[np.ndarray]:
    return [f.blocks[v][:, pos:pos + 1] for v, pos in ps.gens]


def is_projective(m: Representation) -> bool:
    ps, _ = projective_cover(m)
    return ps.module.dim == m.dim


def is_injective(m: Representation) -> bool:
    inj, _ = injective_envelope(m)
    return inj.module.dim == m.dim


# ---------------------------------------------------------------------------
# syzygies


def syzygy(m: Representation) -> Representation:
    ps, pi = projective_cover(m)
    return kernel(pi)[0]


def cosyzygy(m: Representation) -> Representation:
    inj, e = injective_envelope(m)
    return cokernel(e)[0]


@dataclass
class CoverData:
    module: Representation
    cover: ProjSum
    epi: ModuleMap
    kernel: Representation
    incl: ModuleMap


def cover_data(m: Representation) -> CoverData:
    ps, pi = projective_cover(m)
    k, inc = kernel(pi)
    return CoverData(m, ps, pi, k, inc)


@dataclass
class EnvelopeData:
    module: Representation
    envelope: InjSum
    mono: ModuleMap
    cokernel: Representation
    proj: ModuleMap


def envelope_data(m: Representation) -> EnvelopeData:
    inj, e = injective_envelope(m)
    c, q = cokernel(e)
    return EnvelopeData(m, inj, e, c, q)


def syzygy_map(f: ModuleMap, dm: CoverData | None = None, dn: CoverData | None = None) -> ModuleMap:
    """``Ω f`` computed by lifting ``f`` to the projective covers."""
    dm = dm or cover_data(f.src)
    dn = dn or cover_data(f.tgt)
    f0 = lift_through(dm.cover, f.compose(dm.epi), dn.epi)
    return restrict(f0, dm.incl, dn.incl)


def cosyzygy_map(f: ModuleMap, dm: EnvelopeData | None = None, dn: EnvelopeData | None = None) -> ModuleMap:
    """``Ω⁻¹ f`` computed by extending ``f`` to the injective envelopes."""
    dm = dm or envelope_data(f.src)
    dn = dn or envelope_data(f.tgt)
    g = extend_through(dn.envelope, dn.mono.compose(f), dm.mono)
    return induce(g, dm.proj, dn.proj)


# ---------------------------------------------------------------------------
# the Nakayama functor and the Auslander-Reiten translate


def _left_mult_matrix(alg, y: dict[int, int], z: int, w: int, v: int) -> np.ndarray:
    """Matrix of ``a -> y∘a`` from paths ``z -> w`` to paths ``z -> v`` (``y``: ``w -> v``)."""
    cols = alg.paths_between(z, w)
    rows = alg.paths_between(z, v)
    pos = {b: k for k, b in enumerate(rows)}
    out = el.zeros(len(rows), len(cols))
    p = alg.p
    for col, a in enumerate(cols):
        for b, c in y.items():
            for idx, d in alg.reduce(alg.basis[a].arrows + alg.basis[b].arrows, z).items():
                out[pos[idx], col] = (out[pos[idx], col] + c * d) % p
    return out


def _right_mult_matrix(alg, y: dict[int, int], z: int, v: int, w: int) -> np.ndarray:
    """Matrix of ``x -> x∘y`` from paths ``v -> z`` to paths ``w -> z`` (``y``: ``w -> v``)."""
    cols = alg.paths_between(v, z)
    rows = alg.paths_between(w, z)
    pos = {b: k for k, b in enumerate(rows)}
    out = el.zeros(len(rows), len(cols))
    p = alg.p
    for col, x in enumerate(cols):
        for b, c in y.items():
            for idx, d in alg.reduce(alg.basis[b].arrows + alg.basis[x].arrows, w).items():
                out[pos[idx], col] = (out[pos[idx], col] + c * d) % p
    return out


def _proj_component(alg, ps_src: ProjSum, ps_tgt: ProjSum, g: ModuleMap, i: int, j: int) -> dict[int, int]:
    """Element ``y ∈ e_{v_i} P(w_j)`` describing the ``(j, i)`` component of ``g``."""
    v, pos = ps_src.gens[i]
    w = ps_tgt.vertices[j]
    col = g.blocks[v][:, pos]
    off = sum(alg.proj(ps_tgt.vertices[k]).dims[v] for k in range(j))
    paths = alg.paths_between(w, v)
    return {b: int(col[off + k]) for k, b in enumerate(paths) if col[off + k]}


def nu_proj_map(ps_src: ProjSum, ps_tgt: ProjSum, g: ModuleMap,
                inj_src: InjSum | None = None, inj_tgt: InjSum | None = None) -> ModuleMap:
    """``ν g : ⊕I(v_i) -> ⊕I(w_j)`` for a map between sums of indecomposable projectives."""
    alg = g.src.shape
    inj_src = inj_src or inj_sum(alg, ps_src.vertices)
    inj_tgt = inj_tgt or inj_sum(alg, ps_tgt.vertices)
    nv = alg.num_vertices
    grid = [[None] * len(ps_src.vertices) for _ in ps_tgt.vertices]
    for i, v in enumerate(ps_src.vertices):
        for j, w in enumerate(ps_tgt.vertices):
            y = _proj_component(alg, ps_src, ps_tgt, g, i, j)
            if not y:
                continue
            blocks = [_left_mult_matrix(alg, y, z, w, v).T for z in range(nv)]
            grid[j][i] = ModuleMap(alg.inj(v), alg.inj(w), blocks)
    return block_map(inj_src.module, inj_tgt.module, grid,
                     [alg.inj(v) for v in ps_src.vertices], [alg.inj(w) for w in ps_tgt.vertices])


def nu_inv_inj_map(inj_src: InjSum, inj_tgt: InjSum, g: ModuleMap,
                   ps_src: ProjSum | None = None, ps_tgt: ProjSum | None = None) -> ModuleMap:
    """``ν⁻ g : ⊕P(v_i) -> ⊕P(w_j)`` for a map between sums of indecomposable injectives."""
    alg = g.src.shape
    ps_src = ps_src or proj_sum(alg, inj_src.vertices)
    ps_tgt = ps_tgt or proj_sum(alg, inj_tgt.vertices)
    nv = alg.num_vertices
    grid = [[None] * len(inj_src.vertices) for _ in inj_tgt.vertices]
    for j, (w, row) in enumerate(inj_tgt.cogens):
        offs = 0
        for i, v in enumerate(inj_src.vertices):
            width = alg.inj(v).dims[w]
            seg = g.blocks[w][row, offs:offs + width]
            offs += width
            paths = alg.paths_between(w, v)
            y = {b: int(seg[k]) for k, b in enumerate(paths) if seg[k]}
            if not y:
                continue
            blocks = [_right_mult_matrix(alg, y, z, v, w) for z in range(nv)]
            grid[j][i] = ModuleMap(alg.proj(v), alg.proj(w), blocks)
    return block_map(ps_src.module, ps_tgt.module, grid,
                     [alg.proj(v) for v in inj_src.vertices], [alg.proj(w) for w in inj_tgt.vertices])


def _rho(alg, a_index: int) -> ModuleMap:
    """Right multiplication by an arrow ``a: s -> t`` as a map ``P(t) -> P(s)``."""
    a = alg.quiver.arrows[a_index]
    blocks = [alg.right_mult(a_index, z) for z in range(alg.num_vertices)]
    return ModuleMap(alg.proj(a.target), alg.proj(a.source), blocks)


@dataclass
class NuData:
    module: Representation
    homs: list[HomSpace]
    image: Representation


def nakayama_data(m: Representation) -> NuData:
    """``ν m = D Hom(m, A)`` computed from the hom spaces ``Hom(m, P(u))``."""
    alg = m.shape
    homs = [HomSpace(m, alg.proj(u)) for u in range(alg.num_vertices)]
    mats = []
    for i, a in enumerate(alg.quiver.arrows):
        rho = _rho(alg, i)
        src_h, tgt_h = homs[a.target], homs[a.source]
        cols = [tgt_h.coords(rho.compose(h)) for h in src_h.maps()]
        r = np.array(cols, dtype=np.int64).T if cols else el.zeros(tgt_h.dim, 0)
        mats.append(r.reshape(tgt_h.dim, src_h.dim).T.copy())
    dims = [h.dim for h in homs]
    return NuData(m, homs, Representation(alg, dims, mats))


def nakayama_functor(m: Representation) -> Representation:
    return nakayama_data(m).image


def nakayama_map(f: ModuleMap, dm: NuData | None = None, dn: NuData | None = None) -> ModuleMap:
    dm = dm or nakayama_data(f.src)
    dn = dn or nakayama_data(f.tgt)
    blocks = []
    for u in range(len(f.src.dims)):
        hm, hn = dm.homs[u], dn.homs[u]
        cols = [hm.coords(h.compose(f)) for h in hn.maps()]
        c = np.array(cols, dtype=np.int64).T if cols else el.zeros(hm.dim, 0)
        blocks.append(c.reshape(hm.dim, hn.dim).T.copy())
    return ModuleMap(dm.image, dn.image, blocks)


@dataclass
class TauData:
    module: Representation
    top_cover: CoverData
    second: ProjSum
    second_epi: ModuleMap
    presentation: ModuleMap  # P1 -> P0
    nu_p1: InjSum
    nu_p0: InjSum
    nu_map: ModuleMap
    tau: Representation
    incl: ModuleMap


def tau_data(m: Representation) -> TauData:
    """``τ m = Ker(ν P1 -> ν P0)`` for the minimal projective presentation of ``m``."""
    alg = m.shape
    cd = cover_data(m)
    ps1, rho = projective_cover(cd.kernel)
    p1 = cd.incl.compose(rho)
    i1 = inj_sum(alg, ps1.vertices)
    i0 = inj_sum(alg, cd.cover.vertices)
    nmap = nu_proj_map(ps1, cd.cover, p1, i1, i0)
    t, inc = kernel(nmap)
    return TauData(m, cd, ps1, rho, p1, i1, i0, nmap, t, inc)


def tau(m: Representation) -> Representation:
    return tau_data(m).tau


def tau_map(f: ModuleMap, dm: TauData | None = None, dn: TauData | None = None) -> ModuleMap:
    """``τ f`` through lifts of ``f`` to the minimal presentations."""
    dm = dm or tau_data(f.src)
    dn = dn or tau_data(f.tgt)
    f0 = lift_through(dm.top_cover.cover, f.compose(dm.top_cover.epi), dn.top_cover.epi)
    fk = restrict(f0, dm.top_cover.incl, dn.top_cover.incl)
    f1 = lift_through(dm.second, fk.compose(dm.second_epi), dn.second_epi)
    nf1 = nu_proj_map(dm.second, dn.second, f1, dm.nu_p1, dn.nu_p1)
    return restrict(nf1, dm.incl, dn.incl)


@dataclass
class TauInvData:
    module: Representation
    env: EnvelopeData
    second: InjSum
    second_mono: ModuleMap
    copresentation: ModuleMap  # I0 -> I1
    nu_i0: ProjSum
    nu_i1: ProjSum
    nu_map: ModuleMap
    tau_inv: Representation
    proj: ModuleMap


def tau_inv_data(m: Representation) -> TauInvData:
    """``τ⁻ m = Coker(ν⁻ I0 -> ν⁻ I1)`` for the minimal injective copresentation."""
    alg = m.shape
    ed = envelope_data(m)
    inj1, e1 = injective_envelope(ed.cokernel)
    i1 = e1.compose(ed.proj)
    q0 = proj_sum(alg, ed.envelope.vertices)
    q1 = proj_sum(alg, inj1.vertices)
    nmap = nu_inv_inj_map(ed.envelope, inj1, i1, q0, q1)
    c, pr = cokernel(nmap)
    return TauInvData(m, ed, inj1, e1, i1, q0, q1, nmap, c, pr)


def tau_inv(m: Representation) -> Representation:
    return tau_inv_data(m).tau_inv


def tau_inv_map(f: ModuleMap, dm: TauInvData | None = None, dn: TauInvData | None = None) -> ModuleMap:
    dm = dm or tau_inv_data(f.src)
    dn = dn or tau_inv_data(f.tgt)
    g0 = extend_through(dn.env.envelope, dn.env.mono.compose(f), dm.env.mono)
    gc = induce(g0, dm.env.proj, dn.env.proj)
    g1 = extend_through(dn.second, dn.second_mono.compose(gc), dm.second_mono)
    ng1 = nu_inv_inj_map(dm.second, dn.second, g1, dm.nu_i1, dn.nu_i1)
    return induce(ng1, dm.proj, dn.proj)


# ---------------------------------------------------------------------------
# stripping projective / injective summands


def _strip(m: Representation, test, seed: int):
    pieces = split_indecomposables(m, seed)
    keep = [pc for pc in pieces if not test(pc.module)]
    drop = [pc for pc in pieces if test(pc.module)]
    return keep, drop


def _assemble(m: Representation, pieces: Sequence[Piece]) -> tuple[Representation, ModuleMap, ModuleMap]:
    """Direct sum of pieces with the induced split inclusion into / projection from ``m``."""
    mods = [pc.module for pc in pieces]
    total = direct_sum(mods, m.shape)
    inc_blocks, pr_blocks = [], []
    for v in range(len(m.dims)):
        inc = [pc.incl.blocks[v] for pc in pieces]
        prj = [pc.proj.blocks[v] for pc in pieces]
        inc_blocks.append(np.hstack(inc) if inc else el.zeros(m.dims[v], 0))
        pr_blocks.append(np.vstack(prj) if prj else el.zeros(0, m.dims[v]))
    return total, ModuleMap(total, m, inc_blocks), ModuleMap(m, total, pr_blocks)


def strip_injectives(m: Representation, seed: int = 0):
    """``(part, inj_part, incl, proj)`` with ``m ≅ part ⊕ inj_part`` and ``part`` injective-free."""
    keep, drop = _strip(m, is_injective, seed)
    part, inc, pr = _assemble(m, keep)
    inj_part = direct_sum([pc.module for pc in drop], m.shape)
    return part, inj_part, inc, pr


def strip_projectives(m: Representation, seed: int = 0):
    keep, drop = _strip(m, is_projective, seed)
    part, inc, pr = _assemble(m, keep)
    proj_part = direct_sum([pc.module for pc in drop], m.shape)
    return part, proj_part, inc, pr


def has_summand_of(m: Representation, test, seed: int = 0) -> bool:
    return any(test(pc.module) for pc in split_indecomposables(m, seed))


# ---------------------------------------------------------------------------
# Nakayama uniserial notation


_U_RE = re.compile(r"^\s*U\(\s*([^,\s]+)\s*,\s*(\d+)\s*\)\s*$")


def uniserial(alg, v, length: int) -> Representation:
    """``U(v, l) = P(v) / rad^l P(v)`` over a Nakayama algebra."""
    v = alg.quiver.vertex_index(v)
    pv = alg.proj(v)
    if length < 0 or length > pv.dim:
        raise ValueError(f"no uniserial of length {length} with top {v}")
    bases = []
    for z in range(alg.num_vertices):
        paths = alg.paths_between(v, z)
        cols = [k for k, b in enumerate(paths) if len(alg.basis[b].arrows) >= length]
        basis = el.zeros(pv.dims[z], len(cols))
        for j, k in enumerate(cols):
            basis[k, j] = 1
        bases.append(basis)
    return quotient(pv, bases)[0]


def parse_symbolic(alg, text: str) -> Representation:
    parts = [s for s in text.split("+") if s.strip()]
    mods = []
    for s in parts:
        mt = _U_RE.match(s)
        if not mt:
            raise ValueError(f"cannot parse module term {s!r}")
        mods.append(uniserial(alg, mt.group(1), int(mt.group(2))))
    return direct_sum(mods, alg)


def from_json(alg, data) -> Representation:
    if isinstance(data, str):
        return parse_symbolic(alg, data)
    q = alg.quiver
    try:
        dims = [int(data.get("dims", {}).get(v, 0)) for v in q.vertices]
        mats = []
        for a in q.arrows:
            raw = data.get("arrows", {}).get(a.name)
            if raw is None:
                mats.append(el.zeros(dims[a.target], dims[a.source]))
            else:
                mats.append(np.array(raw, dtype=np.int64).reshape(dims[a.target], dims[a.source]))
    except (AttributeError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed module description: {exc}") from exc
    mod = Representation(alg, dims, mats)
    if not mod.satisfies_relations():
        raise ValueError("module does not satisfy the relations of the algebra")
    return mod


def uniserial_label(alg, m: Representation) -> str | None:
    """``U(v,l)`` label of an indecomposable module over a Nakayama algebra."""
    if getattr(alg, "nakayama_params", None) is None:
        return None
    t = top(m)[0]
    if t.dim != 1:
        return None
    v = t.dims.index(1)
    return f"U({alg.quiver.vertices[v]},{m.dim})"


def symbolic_label(m: Representation, seed: int = 0) -> str:
    """Human-readable summand list: uniserial symbols or dimension vectors."""
    if m.dim == 0:
        return "0"
    alg = m.shape
    terms = []
    for piece, mult in decompose(m, seed):
        lab = uniserial_label(alg, piece) or "[" + ",".join(str(d) for d in piece.dims) + "]"
        terms.extend([lab] * mult)
    return "+".join(sorted(terms))
