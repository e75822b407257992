"""Named objects over the local uniserial algebras ``k[x]/x^t``.

Over ``k[x]/x^t`` the indecomposables are ``U_l = k[x]/x^l``.  The worked
examples use ``A = U_t``, ``S = U_1`` and the canonical maps

* ``i``: inclusion ``U_a -> U_b`` onto the bottom ``a`` layers,
* ``π``: projection ``U_b -> U_a`` onto the top ``a`` layers,
* ``1`` and ``0``.

``tower(alg, "ASS", "1,i")`` builds ``(A, S, S)`` with maps listed in
subscript order ``(φ_{n-1}, ..., φ_1)``.  Digits stand for ``U_l``
and ``M`` for ``U_2`` over ``k[x]/x^3``.
"""

from __future__ import annotations

import json
from pathlib import Path


from . import exactlin as el
from . import repmod as rm
from .morcat import ChainObject, chain_from_json
from .repmod import ModuleMap, Representation

FIXTURE_DIR = Path(__file__).resolve().parent / "fixtures"


def _length(alg, symbol: str) -> int:
    t = alg.nakayama_params[1]
    if symbol == "A":
        return t
    if symbol == "S":
        return 1
    if symbol == "0":
        return 0
    if symbol == "M" and t == 3:
        return 2
    if symbol.isdigit():
        return int(symbol)
    raise ValueError(f"unknown module symbol {symbol!r}")


def local_module(alg, length: int) -> Representation:
    _require_local(alg)
    return rm.uniserial(alg, 0, length)


def _require_local(alg) -> None:
    params = alg.nakayama_params
    if params is None or params[0] != 1:
        raise ValueError("named towers need a local Nakayama algebra k[x]/x^t")


def canonical_map(alg, kind: str, a: int, b: int) -> ModuleMap:
    """Canonical map ``U_a -> U_b`` of the given kind."""
    src, tgt = local_module(alg, a), local_module(alg, b)
    m = el.zeros(b, a)
    if kind == "0" or a == 0 or b == 0:
        pass
    elif kind == "1":
        if a != b:
            raise ValueError("identity needs equal lengths")
        m = el.identity(a)
    elif kind == "i":
        if a > b:
            raise ValueError("inclusion needs a <= b")
        m[b - a:, :] = el.identity(a)
    elif kind in ("π", "pi", "p"):
        if a < b:
            raise ValueError("projection needs a >= b")
        m[:, :b] = el.identity(b)
    else:
        raise ValueError(f"unknown map kind {kind!r}")
    f = ModuleMap(src, tgt, [m])
    if not f.is_valid():
        raise ValueError(f"{kind} is not a module map U_{a} -> U_{b}")
    return f


def tower(alg, modules: str, maps: str = "") -> ChainObject:
    """Build a chain from symbols, e.g. ``tower(A, "SSA", "π,1")``."""
    _require_local(alg)
    lengths = [_length(alg, s) for s in modules]
    n = len(lengths)
    kinds = [k.strip() for k in maps.split(",")] if maps else []
    if not kinds:
        kinds = ["0" if lengths[i] == 0 or lengths[i + 1] == 0 else ("1" if lengths[i] == lengths[i + 1] else
                 ("i" if lengths[i + 1] < lengths[i] else "π")) for i in range(n - 1)][::-1]
    if len(kinds) != n - 1:
        raise ValueError("need one map per adjacent pair")
    phis = []
    for i in range(1, n):
        kind = kinds[n - 1 - i]  # subscript lists φ_{n-1} first
        phis.append(canonical_map(alg, kind, lengths[i], lengths[i - 1]))
    branches = [local_module(alg, l) for l in lengths]
    return ChainObject.from_branches(alg, branches, phis)


def load_fixture(alg, name: str) -> ChainObject:
    path = FIXTURE_DIR / f"{name}.json"
    data = json.loads(path.read_text())
    return chain_from_json(alg, data)


def chain_label(x: ChainObject, seed: int = 0) -> str:
    """Branchwise symbolic label such as ``(A,S,0)``; maps are not shown."""
    alg = x.alg
    params = alg.nakayama_params
    parts = []
    for b in x.branches:
        if b.dim == 0:
            parts.append("0")
            continue
        terms = []
        for piece, mult in rm.decompose(b, seed):
            terms.extend([_piece_symbol(alg, piece, params)] * mult)
        parts.append("+".join(sorted(terms)))
    return "(" + ",".join(parts) + ")"


def _piece_symbol(alg, piece: Representation, params) -> str:
    if params is None:
        return "[" + ",".join(str(d) for d in piece.dims) + "]"
    m, t = params
    if m == 1:
        if piece.dim == t:
            return "A"
        if piece.dim == 1:
            return "S"
        if t == 3:
            return "M"
        return f"U{piece.dim}"
    top = rm.top(piece)[0]
    v = alg.quiver.vertices[top.dims.index(1)]
    if piece.dim == t:
        return f"P{v}"
    if piece.dim == 1:
        return f"S{v}"
    return f"U({v},{piece.dim})"
