"""Bound quiver algebras kQ/I over GF(p).

Paths are stored as tuples of arrow indices in the order the arrows are
traversed, so ``(a, b)`` means "first ``a``, then ``b``".  Written products
follow the usual composition order, so the relation ``δα`` (first α, then δ)
is entered as ``[(1, ["delta", "alpha"])]`` and stored as ``(alpha, delta)``.

The algebra is built by linear reduction: every two-sided multiple of a
relation is expanded inside the truncated path space of length ``<= L`` and
the smallest ``L`` for which every path of length ``L`` already lies in the
ideal is taken as the nilpotency certificate.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import exactlin as el
from .exactlin import FieldSpec


class AlgebraError(ValueError):
    pass


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int


@dataclass(frozen=True)
class Quiver:
    """Vertices are labels; arrows refer to vertices by index."""

    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]

    def __post_init__(self) -> None:
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise AlgebraError("arrow names must be unique")
        if len(set(self.vertices)) != len(self.vertices):
            raise AlgebraError("vertex labels must be unique")
        for a in self.arrows:
            if not (0 <= a.source < len(self.vertices) and 0 <= a.target < len(self.vertices)):
                raise AlgebraError(f"arrow {a.name} has an undeclared endpoint")

    @classmethod
    def from_labels(cls, vertices: Sequence, arrows: Iterable[tuple[str, object, object]]) -> "Quiver":
        labels = tuple(str(v) for v in vertices)
        index = {v: i for i, v in enumerate(labels)}
        out = []
        for name, s, t in arrows:
            s, t = str(s), str(t)
            if s not in index or t not in index:
                raise AlgebraError(f"arrow {name} has an undeclared endpoint")
            out.append(Arrow(str(name), index[s], index[t]))
        return cls(labels, tuple(out))

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    def vertex_index(self, v) -> int:
        """Integers are vertex indices; strings are vertex labels."""
        if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
            if 0 <= v < len(self.vertices):
                return int(v)
            raise AlgebraError(f"vertex index {v} out of range")
        try:
            return self.vertices.index(str(v))
        except ValueError:
            raise AlgebraError(f"unknown vertex {v!r}") from None

    def arrow_index(self, name: str) -> int:
        for i, a in enumerate(self.arrows):
            if a.name == name:
                return i
        raise AlgebraError(f"unknown arrow {name!r}")

    def path_source(self, path: tuple[int, ...], start: int | None = None) -> int:
        return self.arrows[path[0]].source if path else start  # type: ignore[return-value]

    def is_path(self, path: tuple[int, ...]) -> bool:
        return all(self.arrows[a].target == self.arrows[b].source for a, b in zip(path, path[1:]))


# A relation is a list of (coefficient, written path) pairs.
Relation = list[tuple[int, list[str]]]


@dataclass(frozen=True)
class BasisPath:
    """A basis element of kQ/I: a path together with its endpoints."""

    arrows: tuple[int, ...]
    source: int
    target: int

    def __len__(self) -> int:
        return len(self.arrows)


@dataclass
class BoundQuiverAlgebra:
    field: FieldSpec
    quiver: Quiver
    relations: list[list[tuple[int, tuple[int, ...]]]]
    basis: list[BasisPath]
    loewy_bound: int
    _normal: dict = field(repr=False, default_factory=dict)
    name: str = ""

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def num_vertices(self) -> int:
        return self.quiver.num_vertices

    # -- path arithmetic ---------------------------------------------------

    def reduce(self, path: tuple[int, ...], start: int | None = None) -> dict[int, int]:
        """Normal form of a path as ``{basis index: coefficient}``."""
        if not path:
            return {self.idempotent_index(start): 1}
        known = self._normal.get(path)
        if known is not None:
            return dict(known)
        # longer than every enumerated path: reduce a prefix, then extend
        head, tail = path[:self.loewy_bound], path[self.loewy_bound:]
        out: dict[int, int] = {}
        for idx, c in self._normal.get(head, {}).items():
            for jdx, d in self.reduce(self.basis[idx].arrows + tail).items():
                out[jdx] = (out.get(jdx, 0) + c * d) % self.p
        return {k: v for k, v in out.items() if v}

    def idempotent_index(self, v: int) -> int:
        return self._idem[v]

    @cached_property
    def _idem(self) -> dict[int, int]:
        return {b.source: i for i, b in enumerate(self.basis) if not b.arrows}

    def paths_between(self, s: int, t: int) -> list[int]:
        return self._between.get((s, t), [])

    @cached_property
    def _between(self) -> dict[tuple[int, int], list[int]]:
        out: dict[tuple[int, int], list[int]] = {}
        for i, b in enumerate(self.basis):
            out.setdefault((b.source, b.target), []).append(i)
        return out

    def basis_label(self, i: int) -> str:
        b = self.basis[i]
        if not b.arrows:
            return f"e{self.quiver.vertices[b.source]}"
        return "*".join(self.quiver.arrows[a].name for a in reversed(b.arrows))

    def multiply(self, i: int, j: int) -> dict[int, int]:
        """Product ``basis[i] * basis[j]`` (apply ``j`` first)."""
        bi, bj = self.basis[i], self.basis[j]
        if bj.target != bi.source:
            return {}
        if not bj.arrows:
            return {i: 1}
        if not bi.arrows:
            return {j: 1}
        return self.reduce(bj.arrows + bi.arrows)

    # -- the indecomposable projectives, injectives and simples -------------

    def _check_vertex(self, v) -> int:
        return self.quiver.vertex_index(v)

    def proj(self, v):
        v = self._check_vertex(v)
        return self._proj_cache(v)

    def inj(self, v):
        v = self._check_vertex(v)
        return self._inj_cache(v)

    def simple(self, v):
        from .repmod import Representation

        v = self._check_vertex(v)
        dims = [0] * self.num_vertices
        dims[v] = 1
        return Representation.zero_action(self, dims)

    def _proj_cache(self, v: int):
        cache = self.__dict__.setdefault("_projs", {})
        if v not in cache:
            cache[v] = self._build_proj(v)
        return cache[v]

    def _inj_cache(self, v: int):
        cache = self.__dict__.setdefault("_injs", {})
        if v not in cache:
            cache[v] = self._build_inj(v)
        return cache[v]

    def _build_proj(self, v: int):
        """``A e_v``: basis paths starting at ``v``; arrows act by post-composition."""
        from .repmod import Representation

        q = self.quiver
        spaces = [self.paths_between(v, w) for w in range(q.num_vertices)]
        pos = [{b: k for k, b in enumerate(sp)} for sp in spaces]
        mats = []
        for ai, a in enumerate(q.arrows):
            m = el.zeros(len(spaces[a.target]), len(spaces[a.source]))
            for col, b in enumerate(spaces[a.source]):
                for idx, c in self.reduce(self.basis[b].arrows + (ai,), v).items():
                    m[pos[a.target][idx], col] = c
            mats.append(m)
        return Representation(self, [len(s) for s in spaces], mats)

    def right_mult(self, a_index: int, w: int) -> np.ndarray:
        """Matrix of ``x -> x*a`` from paths ``t(a) -> w`` to paths ``s(a) -> w``.

        Columns are indexed by basis paths from the target of ``a`` to ``w``,
        rows by basis paths from the source of ``a`` to ``w``.
        """
        a = self.quiver.arrows[a_index]
        cols = self.paths_between(a.target, w)
        rows = self.paths_between(a.source, w)
        pos = {b: k for k, b in enumerate(rows)}
        m = el.zeros(len(rows), len(cols))
        for col, b in enumerate(cols):
            for idx, c in self.reduce((a_index,) + self.basis[b].arrows).items():
                m[pos[idx], col] = c
        return m

    def _build_inj(self, v: int):
        """``D(e_v A)``: at ``w`` the dual of the paths ``w -> v``."""
        from .repmod import Representation

        q = self.quiver
        mats = [self.right_mult(i, v).T.copy() for i in range(len(q.arrows))]
        dims = [len(self.paths_between(w, v)) for w in range(q.num_vertices)]
        return Representation(self, dims, mats)

    # -- structure ---------------------------------------------------------

    @cached_property
    def is_selfinjective(self) -> bool:
        try:
            self.nakayama_perm()
        except AlgebraError:
            return False
        return True

    def nakayama_perm(self) -> dict[int, int]:
        """``v -> w`` with ``proj(v) ≅ inj(w)``, read off from ``soc P(v) = S(w)``."""
        cached = self.__dict__.get("_nperm")
        if cached is not None:
            if isinstance(cached, AlgebraError):
                raise cached
            return cached
        from .repmod import is_iso, socle

        perm: dict[int, int] = {}
        err = None
        for v in range(self.num_vertices):
            s = socle(self.proj(v))[0]
            support = [w for w, d in enumerate(s.dims) if d]
            if sum(s.dims) != 1 or not is_iso(self.proj(v), self.inj(support[0])):
                err = AlgebraError("algebra is not selfinjective")
                break
            perm[v] = support[0]
        if err is None and sorted(perm.values()) != list(range(self.num_vertices)):
            err = AlgebraError("algebra is not selfinjective")
        self.__dict__["_nperm"] = err if err is not None else perm
        if err is not None:
            raise err
        return perm

    def is_symmetric(self, trials: int = 4, seed: int = 0) -> bool:
        """Whether some symmetric linear form ``λ(xy) = λ(yx)`` is nondegenerate.

        The symmetric forms are the functionals vanishing on commutators.  A
        random one is nondegenerate unless all are (the Gram determinant is a
        nonzero polynomial of degree ``dim A``), so a few seeded draws decide
        it with failure probability at most ``(dim A / p) ** trials``.
        """
        d, p = self.dimension, self.p
        prods = [[self.multiply(i, j) for j in range(d)] for i in range(d)]
        comm = np.zeros((d, d * d), dtype=np.int64)
        for i in range(d):
            for j in range(d):
                for k, c in prods[i][j].items():
                    comm[k, i * d + j] += c
                for k, c in prods[j][i].items():
                    comm[k, i * d + j] -= c
        forms = el.left_kernel_basis(comm % p, p)
        if forms.shape[0] == 0:
            return False
        rng = np.random.default_rng(seed)
        for _ in range(trials):
            lam = el.mul(rng.integers(0, p, size=(1, forms.shape[0])), forms, p)[0]
            gram = np.zeros((d, d), dtype=np.int64)
            for i in range(d):
                for j in range(d):
                    gram[i, j] = sum(int(lam[k]) * c for k, c in prods[i][j].items()) % p
            if el.rank(gram, p) == d:
                return True
        return False

    def require_selfinjective(self) -> None:
        if not self.is_selfinjective:
            raise AlgebraError("operation requires a selfinjective algebra")

    @property
    def nakayama_params(self) -> tuple[int, int] | None:
        """``(m, t)`` when the algebra was built by :func:`nakayama`."""
        return self.__dict__.get("_nakayama")

    def to_json(self) -> dict:
        q = self.quiver
        rels = []
        for rel in self.relations:
            rels.append([{"coeff": c, "path": [q.arrows[a].name for a in reversed(path)]}
                         for c, path in rel])
        return {
            "field": {"p": self.p},
            "quiver": {
                "vertices": list(q.vertices),
                "arrows": [{"name": a.name, "from": q.vertices[a.source], "to": q.vertices[a.target]}
                           for a in q.arrows],
            },
            "relations": rels,
        }


# ---------------------------------------------------------------------------
# construction


def _all_paths(q: Quiver, max_len: int) -> list[tuple[int, ...]]:
    """Nontrivial paths of length ``1..max_len`` in traversal order."""
    out: list[tuple[int, ...]] = []
    level = [(i,) for i in range(len(q.arrows))]
    for _ in range(max_len):
        out.extend(level)
        nxt = []
        for path in level:
            end = q.arrows[path[-1]].target
            for i, a in enumerate(q.arrows):
                if a.source == end:
                    nxt.append(path + (i,))
        level = nxt
        if not level:
            break
    return out


def _path_key(q: Quiver, path: tuple[int, ...]):
    return (len(path), tuple(q.arrows[a].name for a in path))


def build(q: Quiver, rels: Sequence[Relation], field: FieldSpec | None = None,
          length_bound: int = 64, name: str = "") -> BoundQuiverAlgebra:
    """Build ``kQ/I`` from a quiver and admissible relations."""
    field = field or FieldSpec()
    p = field.p
    parsed: list[list[tuple[int, tuple[int, ...]]]] = []
    for rel in rels:
        terms = []
        for coeff, written in rel:
            path = tuple(q.arrow_index(n) for n in reversed(list(written)))
            if len(path) < 2:
                raise AlgebraError("relations must be combinations of paths of length >= 2")
            if not q.is_path(path):
                raise AlgebraError(f"{written} is not a path")
            if coeff % p:
                terms.append((coeff % p, path))
        if not terms:
            continue
        ends = {(q.arrows[t[0]].source, q.arrows[t[-1]].target) for _, t in terms}
        if len(ends) != 1:
            raise AlgebraError("all paths of a relation must share source and target")
        parsed.append(terms)

    for bound in range(1, length_bound + 1):
        paths = _all_paths(q, bound)
        if not paths:
            return _finish(field, q, parsed, [], {}, 1, name)
        # columns: largest path first so that pivots are leading terms
        paths.sort(key=lambda x: _path_key(q, x), reverse=True)
        col = {path: i for i, path in enumerate(paths)}
        gens = []
        for terms in parsed:
            s = q.arrows[terms[0][1][0]].source
            t = q.arrows[terms[0][1][-1]].target
            shortest = min(len(x) for _, x in terms)
            before = [()] + [w for w in paths if q.arrows[w[-1]].target == s
                             and len(w) + shortest <= bound]
            for w in before:
                after = [()] + [u for u in paths if q.arrows[u[0]].source == t
                                and len(w) + shortest + len(u) <= bound]
                for u in after:
                    row = np.zeros(len(paths), dtype=np.int64)
                    for c, x in terms:
                        full = w + x + u
                        if len(full) <= bound:
                            row[col[full]] = (row[col[full]] + c) % p
                    if row.any():
                        gens.append(row)
        if gens:
            rk, pivots, red = el.rref(np.array(gens), p)
        else:
            rk, pivots, red = 0, [], np.zeros((0, len(paths)), dtype=np.int64)
        top_level = [path for path in paths if len(path) == bound]
        pivot_set = set(pivots)
        if not top_level or all(col[x] in pivot_set for x in top_level):
            return _finish(field, q, parsed, paths, {"pivots": pivots, "red": red[:rk], "col": col},
                           bound, name)
    raise AlgebraError("infinite-dimensional: arrow ideal not nilpotent within the length bound")


def _finish(field, q, parsed, paths, data, bound, name) -> BoundQuiverAlgebra:
    p = field.p
    pivots = data.get("pivots", [])
    pivot_set = set(pivots)
    basis = [BasisPath((), v, v) for v in range(q.num_vertices)]
    free = [x for x in paths if data["col"][x] not in pivot_set] if paths else []
    free.sort(key=lambda x: _path_key(q, x))
    for x in free:
        basis.append(BasisPath(x, q.arrows[x[0]].source, q.arrows[x[-1]].target))
    index = {b.arrows: i for i, b in enumerate(basis) if b.arrows}
    normal: dict[tuple[int, ...], dict[int, int]] = {}
    for x in free:
        normal[x] = {index[x]: 1}
    if paths:
        red = data["red"]
        for r, pc in enumerate(pivots):
            x = paths[pc]
            row = red[r]
            nf = {}
            for c in np.flatnonzero(row):
                c = int(c)
                if c != pc:
                    nf[index[paths[c]]] = (-int(row[c])) % p
            normal[x] = nf
    loewy = bound if paths else 1
    alg = BoundQuiverAlgebra(field, q, parsed, basis, loewy, normal, name)
    return alg


def path_algebra(q: Quiver, field: FieldSpec | None = None, **kw) -> BoundQuiverAlgebra:
    return build(q, [], field, **kw)


def nakayama(m: int, t: int, field: FieldSpec | None = None) -> BoundQuiverAlgebra:
    """Selfinjective Nakayama algebra kZ_m / J^t on the cyclic quiver ``i -> i+1``."""
    if m < 1 or t < 2:
        raise AlgebraError(f"nakayama({m}, {t}) needs m >= 1 and t >= 2")
    verts = [str(i) for i in range(1, m + 1)]
    arrows = [(f"a{i}", str(i), str(i % m + 1)) for i in range(1, m + 1)]
    q = Quiver.from_labels(verts, arrows)
    rels = []
    for start in range(1, m + 1):
        names = [f"a{(start - 1 + k) % m + 1}" for k in range(t)]
        rels.append([(1, list(reversed(names)))])
    alg = build(q, rels, field, name=f"nakayama:{m},{t}")
    alg.__dict__["_nakayama"] = (m, t)
    return alg


def is_symmetric_nakayama(m: int, t: int) -> bool:
    return (t - 1) % m == 0


def example_three_vertex(field: FieldSpec | None = None) -> BoundQuiverAlgebra:
    """The selfinjective algebra on ``2 ⇄ 1 ⇄ 3`` with relations δα, βγ, αδ − γβ.

    Arrows: α: 2→1, δ: 1→2, β: 1→3, γ: 3→1.
    """
    q = Quiver.from_labels(
        ["1", "2", "3"],
        [("alpha", "2", "1"), ("beta", "1", "3"), ("gamma", "3", "1"), ("delta", "1", "2")],
    )
    rels = [
        [(1, ["delta", "alpha"])],
        [(1, ["beta", "gamma"])],
        [(1, ["alpha", "delta"]), (-1, ["gamma", "beta"])],
    ]
    return build(q, rels, field, name="example-3.6")


def from_json(data: dict, field: FieldSpec | None = None) -> BoundQuiverAlgebra:
    try:
        p = int(data.get("field", {}).get("p", (field or FieldSpec()).p))
        fs = FieldSpec(p)
        qd = data["quiver"]
        q = Quiver.from_labels(qd["vertices"], [(a["name"], a["from"], a["to"]) for a in qd["arrows"]])
        rels = [[(int(t["coeff"]), list(t["path"])) for t in rel] for rel in data.get("relations", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise AlgebraError(f"malformed algebra description: {exc}") from exc
    return build(q, rels, fs)


def load(spec: str, field: FieldSpec | None = None) -> BoundQuiverAlgebra:
    """Resolve a named algebra (``nakayama:m,t`` or ``example-3.6``) or a JSON file."""
    if spec.startswith("nakayama:"):
        try:
            m, t = (int(x) for x in spec.split(":", 1)[1].split(","))
        except ValueError as exc:
            raise AlgebraError(f"bad nakayama spec {spec!r}") from exc
        return nakayama(m, t, field)
    if spec in ("example-3.6", "example-3.7"):
        return example_three_vertex(field)
    try:
        with open(spec) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise AlgebraError(f"cannot read algebra {spec!r}: {exc}") from exc
    return from_json(data, field)
