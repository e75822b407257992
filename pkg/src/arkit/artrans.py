"""Auslander-Reiten translates and almost split sequences in Mor_n, S_n and F_n.

Two independent routes to the translate of the monomorphism category are
provided: ``tau_s`` works branchwise (Mimo of τ applied to the Cok tower)
and ``tau_s_via_mor`` goes through the translate of the whole morphism
category (Ker of τ_M of Cok).  Agreement of the two is the main
cross-check of the package.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import exactlin as el
from . import morcat as mc
from . import repmod as rm
from .morcat import ChainMap, ChainObject
from .repmod import ModuleMap


class ARError(RuntimeError):
    """Raised when an almost split sequence cannot be formed."""


def _require(cond: bool, what: str) -> None:
    if not cond:
        raise ValueError(what)


# ---------------------------------------------------------------------------
# translates


def tau_mor(z: ChainObject) -> ChainObject:
    return mc.tau_mor(z)


def tau_mor_inv(z: ChainObject) -> ChainObject:
    return mc.tau_inv_mor(z)


def tau_s(x: ChainObject, seed: int = 0) -> ChainObject:
    """``τ_S X = Mimo τ Cok X``."""
    _require(x.is_mono(), "object is not in the monomorphism category")
    return mc.mimo(mc.tau_branchwise(mc.cok(x)), seed)


def tau_s_inv(x: ChainObject, seed: int = 0) -> ChainObject:
    """``τ_S⁻ X = Ker Mepi τ⁻ X``."""
    _require(x.is_mono(), "object is not in the monomorphism category")
    return mc.ker(mc.mepi(mc.tau_inv_branchwise(x), seed))


def tau_s_via_mor(x: ChainObject) -> ChainObject:
    """``τ_S X = Ker τ_M Cok X``."""
    _require(x.is_mono(), "object is not in the monomorphism category")
    return mc.ker(mc.tau_mor(mc.cok(x)))


def tau_f(y: ChainObject, seed: int = 0) -> ChainObject:
    """``τ_F Y = Cok Mimo τ Y``."""
    _require(y.is_epi(), "object is not in the epimorphism category")
    return mc.cok(mc.mimo(mc.tau_branchwise(y), seed))


def tau_f_inv(y: ChainObject, seed: int = 0) -> ChainObject:
    """``τ_F⁻ Y = Mepi τ⁻ Ker Y``."""
    _require(y.is_epi(), "object is not in the epimorphism category")
    return mc.mepi(mc.tau_inv_branchwise(mc.ker(y)), seed)


def power(fn, x: ChainObject, k: int, **kw) -> ChainObject:
    for _ in range(k):
        if x.is_zero():
            break
        x = fn(x, **kw)
    return x


# ---------------------------------------------------------------------------
# almost split sequences


@dataclass
class ARSequence:
    left: ChainObject
    middle: ChainObject
    right: ChainObject
    inject: ChainMap
    surject: ChainMap
    category: str
    certificates: dict = field(default_factory=dict)

    def is_exact(self) -> bool:
        if not (self.inject.lmap.is_mono() and self.surject.lmap.is_epi()):
            return False
        comp = self.surject.compose(self.inject)
        if not comp.is_zero():
            return False
        return self.middle.rep.dims == tuple(a + b for a, b in zip(self.left.rep.dims, self.right.rep.dims))

    def is_split(self) -> bool:
        """Whether the surjection has a section (solved as a linear system)."""
        hs = rm.HomSpace(self.right.rep, self.middle.rep)
        if hs.dim == 0:
            return self.right.dim == 0
        cols = np.array([self.surject.lmap.compose(s).vec() for s in hs.maps()]).T
        target = rm.ModuleMap.identity(self.right.rep).vec().reshape(-1, 1)
        return el.solve(cols, target, self.left.p) is not None

    def middle_summands(self, seed: int = 0) -> list[tuple[ChainObject, int]]:
        return mc.decompose(self.middle, seed)

    def certify(self) -> dict:
        self.certificates = {"exact": self.is_exact(), "non_split": not self.is_split()}
        return self.certificates

    def to_json(self) -> dict:
        return {
            "category": self.category,
            "left": self.left.to_json(),
            "middle": self.middle.to_json(),
            "right": self.right.to_json(),
            "inject": [b.tolist() for b in self.inject.lmap.blocks],
            "surject": [b.tolist() for b in self.surject.lmap.blocks],
            "certificates": self.certify(),
        }


def _radical_spanning(z: ChainObject) -> list[ModuleMap]:
    """Trace-shifted endomorphisms spanning ``rad End(z)`` when ``End(z)`` is local."""
    p, d = z.p, z.dim
    inv_d = pow(d, p - 2, p)
    out = []
    for f in rm.end_basis(z.rep):
        lam = rm._trace(f) * inv_d % p
        g = f - ModuleMap.identity(z.rep).scale(lam)
        if not g.is_zero():
            out.append(g)
    return out


def almost_split(z: ChainObject, w: ChainObject, category: str, seed: int = 0) -> ARSequence:
    """The almost split sequence ``0 -> w -> E -> z -> 0`` with ``w`` the translate of ``z``.

    Ext¹(z, w) is computed as ``Hom(K, w)`` modulo restrictions of
    ``Hom(P0, w)`` where ``K`` is the kernel of the projective cover ``P0 -> z``
    in Mor_n.  The class used is the one annihilated by ``rad End(z)``.
    """
    if w.is_zero():
        raise ARError("right term is projective: no almost split sequence ends there")
    p = z.p
    if not rm.is_local_endring(rm.end_basis(z.rep), z.rep, np.random.default_rng(seed)):
        raise ARError("right term is not indecomposable")
    cp0, pi = mc.projective_cover(z)
    k_obj, k = mc.kernel(pi)
    hs = rm.HomSpace(k_obj.rep, w.rep)
    if hs.dim == 0:
        raise ARError("Ext¹ vanishes: no almost split sequence")
    cob = [hs.coords(g.compose(k.lmap)) for g in rm.hom_basis(cp0.obj.rep, w.rep)]
    bmat = np.array(cob, dtype=np.int64).T if cob else el.zeros(hs.dim, 0)
    bbasis = el.image_basis(bmat, p) if bmat.size else el.zeros(hs.dim, 0)
    quot = el.left_kernel_basis(bbasis, p) if bbasis.shape[1] else el.identity(hs.dim)
    if quot.shape[0] == 0:
        raise ARError("Ext¹ vanishes: no almost split sequence")
    blocks = []
    basis = hs.maps()
    for f in _radical_spanning(z):
        f0 = mc.lift_chain(cp0, ChainMap(cp0.obj, z, f.compose(pi.lmap)), pi)
        fk = rm.restrict(f0.lmap, k.lmap, k.lmap)
        cols = np.array([hs.coords(xi.compose(fk)) for xi in basis], dtype=np.int64).T
        blocks.append(el.mul(quot, cols, p))
    if blocks:
        soc = el.kernel_basis(np.vstack(blocks), p)
    else:
        soc = el.identity(hs.dim)
    extra = soc.shape[1] - bbasis.shape[1]
    if extra != 1:
        raise ARError(f"AR class ambiguous: socle of Ext¹ has dimension {extra}")
    xi_vec = None
    for j in range(soc.shape[1]):
        col = soc[:, j:j + 1]
        if bbasis.shape[1] == 0 or not el.in_span(bbasis, col, p):
            xi_vec = col[:, 0]
            break
    xi = hs.element(xi_vec)
    # pushout of 0 -> K -> P0 -> z -> 0 along xi
    parts = [w.rep, cp0.obj.rep]
    total = rm.direct_sum(parts)
    emb = rm.block_map(k_obj.rep, total, [[xi.scale(p - 1)], [k.lmap]], [k_obj.rep], parts)
    e_rep, q = rm.cokernel(emb)
    middle = ChainObject(z.shape, e_rep)
    inj_w = q.compose(rm.sum_injection(parts, total, 0))
    to_z = rm.block_map(total, z.rep, [[ModuleMap.zero(w.rep, z.rep), pi.lmap]], parts, [z.rep])
    surj = rm.induce(to_z, q, ModuleMap.identity(z.rep))
    seq = ARSequence(w, middle, z, ChainMap(w, middle, inj_w), ChainMap(middle, z, surj), category)
    seq.certify()
    return seq


def ar_sequence_mor(z: ChainObject, seed: int = 0) -> ARSequence:
    return almost_split(z, mc.tau_mor(z), "Mor", seed)


def _retarget(seq: ARSequence, z: ChainObject, seed: int) -> ARSequence:
    """Compose the surjection with an isomorphism onto the requested right term."""
    iso = rm.find_iso(seq.right.rep, z.rep, seed)
    if iso is None:
        raise ARError("right term of the transported sequence is not the requested object")
    surj = ChainMap(seq.middle, z, iso.compose(seq.surject.lmap))
    return ARSequence(seq.left, seq.middle, z, seq.inject, surj, seq.category, seq.certificates)


def ar_sequence_s(z: ChainObject, seed: int = 0) -> ARSequence:
    """Apply Ker to the Mor_n almost split sequence ending at ``Cok z``."""
    _require(z.is_mono(), "object is not in the monomorphism category")
    base = ar_sequence_mor(mc.cok(z), seed)
    dl, dm, dr = mc.ker_data(base.left), mc.ker_data(base.middle), mc.ker_data(base.right)
    inj = mc.ker_map(base.inject, dl, dm)
    sur = mc.ker_map(base.surject, dm, dr)
    seq = ARSequence(dl[0], dm[0], dr[0], inj, sur, "S")
    if not seq.is_exact() or seq.is_split():
        raise ARError("transported sequence split: right term is projective in S_n")
    seq.certify()
    return _retarget(seq, z, seed)


def ar_sequence_f(z: ChainObject, seed: int = 0) -> ARSequence:
    """Apply Epi to the Mor_n almost split sequence ending at ``z``."""
    _require(z.is_epi(), "object is not in the epimorphism category")
    base = ar_sequence_mor(z, seed)
    dl, dm, dr = mc.epi_data(base.left), mc.epi_data(base.middle), mc.epi_data(base.right)
    inj = mc.epi_map(base.inject, dl, dm)
    sur = mc.epi_map(base.surject, dm, dr)
    seq = ARSequence(dl[0], dm[0], dr[0], inj, sur, "F")
    if not seq.is_exact() or seq.is_split():
        raise ARError("transported sequence split: right term is projective in F_n")
    seq.certify()
    return _retarget(seq, z, seed)


def ar_sequence_s_direct(z: ChainObject, seed: int = 0) -> ARSequence:
    """Almost split sequence in S_n built directly from ``τ_S z`` and Ext¹ in Mor_n."""
    _require(z.is_mono(), "object is not in the monomorphism category")
    return almost_split(z, tau_s(z, seed), "S", seed)
