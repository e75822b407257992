"""Knitting Auslander-Reiten quivers of monomorphism categories.

Starting from the indecomposable projective and injective objects, every
node is processed once: for a projective node the incoming arrows come from
the summands of its radical, and otherwise from the middle term of the
almost split sequence ending there.  Newly met indecomposables are queued.
Since every indecomposable of a representation-finite category maps
nontrivially to an injective through a chain of irreducible maps, this
backward search reaches everything.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np

from . import artrans as at
from . import exactlin as el
from . import morcat as mc
from . import repmod as rm
from .morcat import ChainObject
from .named import chain_label


class BudgetExceeded(RuntimeError):
    """Raised when knitting meets more objects than allowed."""


@dataclass
class Node:
    index: int
    label: str
    obj: ChainObject
    projective: bool
    injective: bool


@dataclass
class ARQuiver:
    algebra: str
    n: int
    category: str
    nodes: list[Node] = field(default_factory=list)
    solid: dict[tuple[int, int], int] = field(default_factory=dict)
    dotted: list[tuple[int, int]] = field(default_factory=list)

    def counts(self) -> tuple[int, int]:
        proj = sum(1 for nd in self.nodes if nd.projective)
        return proj, len(self.nodes) - proj

    def label_graph(self) -> dict:
        """Nodes and edges by label, the form used by the reference quiver fixtures."""
        lab = {nd.index: nd.label for nd in self.nodes}
        solid = sorted([lab[a], lab[b]] for (a, b), m in self.solid.items() for _ in range(m))
        dotted = sorted([lab[a], lab[b]] for a, b in self.dotted)
        return {"nodes": sorted(lab.values()), "solid": solid, "dotted": dotted}

    def to_json(self) -> str:
        data = {
            "algebra": self.algebra,
            "n": self.n,
            "category": self.category,
            "nodes": [{"id": nd.index, "label": nd.label, "projective": nd.projective,
                       "injective": nd.injective, "dims": [list(d) for d in nd.obj.dim_table()]}
                      for nd in self.nodes],
            "solid": [[a, b, m] for (a, b), m in sorted(self.solid.items())],
            "dotted": [[a, b] for a, b in sorted(self.dotted)],
        }
        return json.dumps(data, indent=1, sort_keys=True) + "\n"

    def to_dot(self) -> str:
        lines = ["digraph ARQuiver {"]
        for nd in self.nodes:
            shape = ' shape=box' if nd.projective else ''
            lines.append(f'  n{nd.index} [label="{nd.label}"{shape}];')
        for (a, b), m in sorted(self.solid.items()):
            extra = f' [label="{m}"]' if m > 1 else ''
            lines.append(f"  n{a} -> n{b}{extra};")
        for a, b in sorted(self.dotted):
            lines.append(f"  n{a} -> n{b} [style=dashed];")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def mesh_ok(self) -> bool:
        """Arrows into each nonprojective ``Z`` match arrows out of ``τ Z``."""
        into = defaultdict(dict)
        out = defaultdict(dict)
        for (a, b), m in self.solid.items():
            into[b][a] = m
            out[a][b] = m
        for z, tz in self.dotted:
            if into[z] != out[tz]:
                return False
        return True


export_dot = ARQuiver.to_dot
export_json = ARQuiver.to_json


class _Registry:
    """Iso classes met so far, bucketed by a cheap invariant."""

    def __init__(self, seed: int):
        self.seed = seed
        self.items: list[ChainObject] = []
        self.buckets: dict[tuple, list[int]] = defaultdict(list)

    def find(self, x: ChainObject) -> int | None:
        for idx in self.buckets.get(x.fingerprint, []):
            if mc.is_iso(self.items[idx], x, self.seed):
                return idx
        return None

    def add(self, x: ChainObject) -> tuple[int, bool]:
        idx = self.find(x)
        if idx is not None:
            return idx, False
        self.items.append(x)
        idx = len(self.items) - 1
        self.buckets[x.fingerprint].append(idx)
        return idx, True


def _starters(alg, n: int) -> list[ChainObject]:
    out = []
    for i in range(1, n + 1):
        for v in range(alg.num_vertices):
            out.append(mc.m_obj(alg, n, alg.proj(v), i))
    for i in range(1, n + 1):
        for v in range(alg.num_vertices):
            out.append(mc.m_obj(alg, n, alg.inj(v), i))
    return out


def _radical_chain(x: ChainObject) -> ChainObject:
    r, _ = rm.radical(x.rep)
    return ChainObject(x.shape, r)


def knit(alg, n: int, category: str = "S", max_objects: int = 10000, seed: int = 0) -> ARQuiver:
    """AR quiver of ``S_n(A)``, ``F_n(A)`` or ``A``-mod (``category="mod"`` means ``n = 1``)."""
    if category == "mod":
        n = 1
    if category == "F":
        return _transport_to_f(knit(alg, n, "S", max_objects, seed))
    if category not in ("S", "mod"):
        raise ValueError(f"unknown category {category!r}")
    reg = _Registry(seed)
    injective_idx = set()
    proj_idx = set()
    queue: list[int] = []
    for x in _starters(alg, n):
        idx, new = reg.add(x)
        if new:
            queue.append(idx)
    for x in _starters(alg, n)[n * alg.num_vertices:]:
        injective_idx.add(reg.find(x))
    solid: dict[tuple[int, int], int] = {}
    dotted: list[tuple[int, int]] = []
    try:
        _close(reg, queue, proj_idx, solid, dotted, max_objects, seed)
    except (rm.DecompositionError, at.ARError) as exc:
        # over GF(p) only a representation-infinite category has indecomposables
        # whose endomorphism ring has a larger residue field
        raise BudgetExceeded(f"not representation-finite within budget ({exc})") from exc
    q = ARQuiver(alg.name, n, category)
    used: dict[str, int] = {}
    for idx, x in enumerate(reg.items):
        lab = chain_label(x, seed) if n > 1 else chain_label(x, seed)[1:-1]
        used[lab] = used.get(lab, 0) + 1
        if used[lab] > 1:
            lab = f"{lab}#{used[lab]}"
        q.nodes.append(Node(idx, lab, x, idx in proj_idx, idx in injective_idx))
    q.solid = solid
    q.dotted = dotted
    return q


def _close(reg: _Registry, queue: list[int], proj_idx: set, solid: dict, dotted: list,
           max_objects: int, seed: int) -> None:
    """Process queued nodes until no new iso class appears."""
    head = 0
    while head < len(queue):
        zi = queue[head]
        head += 1
        z = reg.items[zi]
        if mc.is_projective(z):
            proj_idx.add(zi)
            summands = mc.decompose(_radical_chain(z), seed) if z.dim else []
        else:
            seq = at.ar_sequence_s_direct(z, seed)
            li, new = reg.add(seq.left)
            if new:
                queue.append(li)
            dotted.append((zi, li))
            summands = seq.middle_summands(seed)
        for y, mult in summands:
            yi, new = reg.add(y)
            if new:
                queue.append(yi)
            solid[(yi, zi)] = solid.get((yi, zi), 0) + mult
        if len(reg.items) > max_objects:
            raise BudgetExceeded("not representation-finite within budget")


def _transport_to_f(qs: ARQuiver) -> ARQuiver:
    """Cok is an equivalence S_n -> F_n, so the quiver is carried over node by node."""
    q = ARQuiver(qs.algebra, qs.n, "F")
    for nd in qs.nodes:
        y = mc.cok(nd.obj)
        q.nodes.append(Node(nd.index, chain_label(y), y, mc.is_projective(y) or nd.projective, nd.injective))
    q.solid = dict(qs.solid)
    q.dotted = list(qs.dotted)
    return q


def count_check(alg, n: int, max_objects: int = 10000, seed: int = 0) -> tuple[int, int]:
    return knit(alg, n, "S", max_objects, seed).counts()


def _rad_maps(x: ChainObject, y: ChainObject, seed: int) -> np.ndarray:
    """Columns spanning ``rad(x, y)`` as vectors of ladder map entries."""
    maps = rm.hom_basis(x.rep, y.rep)
    if not maps:
        return el.zeros(0, 0)
    if mc.is_iso(x, y, seed):
        d, p = x.dim, x.p
        inv_d = pow(d, p - 2, p)
        vecs = [(f - ModuleMapId(x).scale(rm._trace(f) * inv_d % p)).vec() for f in maps]
    else:
        vecs = [f.vec() for f in maps]
    return el.image_basis(np.array(vecs, dtype=np.int64).T, x.p)


def ModuleMapId(x: ChainObject):
    return rm.ModuleMap.identity(x.rep)


def irreducible_count(x: ChainObject, y: ChainObject, known: list[ChainObject], seed: int = 0) -> int:
    """``dim rad(x, y) / rad²(x, y)`` with ``rad²`` generated through the known indecomposables."""
    p = x.p
    rad_xy = _rad_maps(x, y, seed)
    if rad_xy.size == 0 or rad_xy.shape[1] == 0:
        return 0
    squares = []
    for z in known:
        hs_xz = rm.HomSpace(x.rep, z.rep)
        hs_zy = rm.HomSpace(z.rep, y.rep)
        if hs_xz.dim == 0 or hs_zy.dim == 0:
            continue
        first = _rad_maps(x, z, seed)
        second = _rad_maps(z, y, seed)
        if first.shape[1] == 0 or second.shape[1] == 0:
            continue
        for i in range(first.shape[1]):
            f = rm.HomSpace.from_vec(hs_xz, first[:, i])
            for j in range(second.shape[1]):
                g = rm.HomSpace.from_vec(hs_zy, second[:, j])
                squares.append(g.compose(f).vec())
    if not squares:
        return rad_xy.shape[1]
    sq_rank = el.rank(np.array(squares, dtype=np.int64).T, p)
    return rad_xy.shape[1] - sq_rank


def compare_with_fixture(q: ARQuiver, fixture: dict) -> dict:
    """Exact comparison of labeled node and edge multisets."""
    g = q.label_graph()
    want_solid = sorted(list(e) for e in fixture["solid"])
    want_dotted = sorted(list(e) for e in fixture["dotted"])
    return {
        "nodes": g["nodes"] == sorted(fixture["nodes"]),
        "solid": g["solid"] == want_solid,
        "dotted": g["dotted"] == want_dotted,
        "missing_nodes": sorted(set(fixture["nodes"]) - set(g["nodes"])),
        "extra_nodes": sorted(set(g["nodes"]) - set(fixture["nodes"])),
    }
