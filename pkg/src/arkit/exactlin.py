"""Exact dense linear algebra over a prime field GF(p).

Matrices are numpy ``int64`` arrays whose entries are kept in ``[0, p)``.
With ``p = 32003`` a single product of two residues stays below ``2**30``,
so an ``int64`` matrix product is exact as long as the inner dimension is
below roughly ``8 * 10**9``.  Every routine here is a pure function of its
inputs; randomized ones take an explicit seed.

Polynomials are plain lists of residues, lowest degree first.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

DEFAULT_P = 32003


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The ground field GF(p)."""

    p: int = DEFAULT_P

    def __post_init__(self) -> None:
        if not is_prime(self.p) or self.p == 2:
            raise ValueError(f"field modulus must be an odd prime, got {self.p}")

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return pow(a, self.p - 2, self.p)


# ---------------------------------------------------------------------------
# construction helpers


def mat(rows, p: int) -> np.ndarray:
    """Build a reduced matrix from a nested list (or array)."""
    a = np.array(rows, dtype=np.int64)
    if a.ndim == 1:
        a = a.reshape(1, -1) if a.size else a.reshape(0, 0)
    return a % p


def zeros(r: int, c: int) -> np.ndarray:
    return np.zeros((r, c), dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def random_mat(r: int, c: int, p: int, rng: np.random.Generator) -> np.ndarray:
    return rng.integers(0, p, size=(r, c), dtype=np.int64)


def mul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    if a.size == 0 or b.size == 0:
        return zeros(a.shape[0], b.shape[1])
    return (a @ b) % p


def chain_mul(mats, p: int) -> np.ndarray:
    """Product ``mats[0] @ mats[1] @ ...`` reduced mod p."""
    out = mats[0]
    for m in mats[1:]:
        out = mul(out, m, p)
    return out


def block(rows, p: int) -> np.ndarray:
    """Assemble a block matrix from a nested list of arrays."""
    return np.block(rows).astype(np.int64) % p if rows else zeros(0, 0)


def direct_sum(mats) -> np.ndarray:
    r = sum(m.shape[0] for m in mats)
    c = sum(m.shape[1] for m in mats)
    out = zeros(r, c)
    i = j = 0
    for m in mats:
        out[i:i + m.shape[0], j:j + m.shape[1]] = m
        i += m.shape[0]
        j += m.shape[1]
    return out


# ---------------------------------------------------------------------------
# elimination


def rref(m: np.ndarray, p: int) -> tuple[int, list[int], np.ndarray]:
    """Reduced row echelon form.  Returns ``(rank, pivots, reduced)``."""
    a = np.array(m, dtype=np.int64) % p
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        piv = int(a[r, c])
        if piv != 1:
            a[r] = a[r] * pow(piv, p - 2, p) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit] = (a[hit] - np.outer(col[hit], a[r])) % p
        pivots.append(c)
        r += 1
    return r, pivots, a


def rank(m: np.ndarray, p: int) -> int:
    if m.size == 0:
        return 0
    return rref(m, p)[0]


def kernel_basis(m: np.ndarray, p: int) -> np.ndarray:
    """Columns spanning the right null space of ``m``."""
    rows, cols = m.shape
    if rows == 0:
        return identity(cols)
    r, pivots, red = rref(m, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    k = zeros(cols, len(free))
    for j, f in enumerate(free):
        k[f, j] = 1
        for i, pc in enumerate(pivots):
            k[pc, j] = (-red[i, f]) % p
    return k


def left_kernel_basis(m: np.ndarray, p: int) -> np.ndarray:
    """Rows spanning ``{y : y m = 0}``."""
    return kernel_basis(m.T, p).T.copy()


def image_basis(m: np.ndarray, p: int) -> np.ndarray:
    """Columns of ``m`` forming a basis of its column space."""
    if m.size == 0:
        return zeros(m.shape[0], 0)
    _, pivots, _ = rref(m, p)
    return m[:, pivots] % p


def row_basis(m: np.ndarray, p: int) -> np.ndarray:
    """A basis (as rows, in reduced form) of the row space of ``m``."""
    if m.size == 0:
        return zeros(0, m.shape[1])
    r, _, red = rref(m, p)
    return red[:r].copy()


def solve(m: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """A particular solution ``x`` of ``m x = b``, or ``None`` if inconsistent."""
    if m.shape[0] != b.shape[0]:
        raise ValueError(f"row mismatch: {m.shape} vs {b.shape}")
    cols = m.shape[1]
    if m.shape[0] == 0:
        return zeros(cols, b.shape[1])
    r, pivots, red = rref(np.hstack([m, b]), p)
    if any(pc >= cols for pc in pivots):
        return None
    x = zeros(cols, b.shape[1])
    for i, pc in enumerate(pivots):
        x[pc] = red[i, cols:]
    return x


def inverse(m: np.ndarray, p: int) -> np.ndarray:
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    r, pivots, red = rref(np.hstack([m, identity(n)]), p)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return red[:, n:].copy()


def left_inverse(b: np.ndarray, p: int) -> np.ndarray:
    """``L`` with ``L b = 1`` for ``b`` of full column rank."""
    rows, cols = b.shape
    if cols == 0:
        return zeros(0, rows)
    # rows of L solve b^T L^T = 1
    sol = solve(b.T, identity(cols), p)
    if sol is None:
        raise ValueError("matrix does not have full column rank")
    return sol.T.copy()


def right_inverse(q: np.ndarray, p: int) -> np.ndarray:
    """``S`` with ``q S = 1`` for ``q`` of full row rank."""
    rows, cols = q.shape
    if rows == 0:
        return zeros(cols, 0)
    sol = solve(q, identity(rows), p)
    if sol is None:
        raise ValueError("matrix does not have full row rank")
    return sol


def complement_basis(sub: np.ndarray, dim: int, p: int) -> np.ndarray:
    """Standard basis vectors completing the column span of ``sub`` to the whole space."""
    if sub.shape[1] == 0:
        return identity(dim)
    _, pivots, _ = rref(np.hstack([sub, identity(dim)]), p)
    extra = [c - sub.shape[1] for c in pivots if c >= sub.shape[1]]
    return identity(dim)[:, extra]


def intersect(u: np.ndarray, v: np.ndarray, p: int) -> np.ndarray:
    """Basis of the intersection of two column spans."""
    n = u.shape[0]
    if u.shape[1] == 0 or v.shape[1] == 0:
        return zeros(n, 0)
    k = kernel_basis(np.hstack([u, (-v) % p]), p)
    return image_basis(mul(u, k[: u.shape[1]], p), p)


def in_span(basis: np.ndarray, vecs: np.ndarray, p: int) -> bool:
    if vecs.shape[1] == 0:
        return True
    return rank(np.hstack([basis, vecs]), p) == rank(basis, p)


def is_invertible(m: np.ndarray, p: int) -> bool:
    n = m.shape[0]
    return m.shape == (n, n) and (n == 0 or rank(m, p) == n)


def mat_pow(m: np.ndarray, e: int, p: int) -> np.ndarray:
    out = identity(m.shape[0])
    base = m % p
    while e:
        if e & 1:
            out = mul(out, base, p)
        base = mul(base, base, p)
        e >>= 1
    return out


def is_nilpotent(m: np.ndarray, p: int) -> bool:
    n = m.shape[0]
    if n == 0:
        return True
    return not mat_pow(m, n, p).any()


# ---------------------------------------------------------------------------
# polynomials (lowest degree first)


def poly_trim(f: list[int]) -> list[int]:
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def poly_add(f, g, p):
    n = max(len(f), len(g))
    return poly_trim([((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0)) % p
                      for i in range(n)])


def poly_sub(f, g, p):
    return poly_add(f, [(-c) % p for c in g], p)


def poly_mul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return poly_trim(out)


def poly_divmod(f, g, p):
    g = poly_trim(g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = poly_trim(f)
    inv = pow(g[-1], p - 2, p)
    q = [0] * max(len(f) - len(g) + 1, 0)
    r = list(f)
    while len(r) >= len(g) and r:
        c = r[-1] * inv % p
        s = len(r) - len(g)
        q[s] = c
        for i, b in enumerate(g):
            r[s + i] = (r[s + i] - c * b) % p
        r = poly_trim(r)
    return poly_trim(q), r


def poly_monic(f, p):
    f = poly_trim(f)
    if not f:
        return f
    inv = pow(f[-1], p - 2, p)
    return [c * inv % p for c in f]


def poly_gcd(f, g, p):
    f, g = poly_trim(f), poly_trim(g)
    while g:
        f, g = g, poly_divmod(f, g, p)[1]
    return poly_monic(f, p)


def poly_powmod(base, e, mod, p):
    out = [1]
    base = poly_divmod(base, mod, p)[1]
    while e:
        if e & 1:
            out = poly_divmod(poly_mul(out, base, p), mod, p)[1]
        base = poly_divmod(poly_mul(base, base, p), mod, p)[1]
        e >>= 1
    return out


def poly_eval(f, x, p):
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % p
    return acc


def poly_eval_mat(f, m: np.ndarray, p: int) -> np.ndarray:
    """Matrix substitution ``f(m)`` by Horner's rule."""
    n = m.shape[0]
    acc = zeros(n, n)
    for c in reversed(f):
        acc = (mul(acc, m, p) + c * identity(n)) % p
    return acc


def charpoly(m: np.ndarray, p: int) -> list[int]:
    """Characteristic polynomial ``det(x - m)`` via Hessenberg reduction."""
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("charpoly of a non-square matrix")
    h = np.array(m, dtype=np.int64) % p
    for j in range(n - 2):
        nz = np.flatnonzero(h[j + 1:, j])
        if nz.size == 0:
            continue
        i = j + 1 + int(nz[0])
        if i != j + 1:
            h[[i, j + 1]] = h[[j + 1, i]]
            h[:, [i, j + 1]] = h[:, [j + 1, i]]
        inv = pow(int(h[j + 1, j]), p - 2, p)
        for k in range(j + 2, n):
            u = int(h[k, j]) * inv % p
            if u:
                h[k] = (h[k] - u * h[j + 1]) % p
                h[:, j + 1] = (h[:, j + 1] + u * h[:, k]) % p
    # recurrence on leading principal submatrices of the Hessenberg form
    polys = [[1]]
    for k in range(n):
        nxt = poly_mul([(-int(h[k, k])) % p, 1], polys[k], p)
        prod = 1
        for i in range(k - 1, -1, -1):
            prod = prod * int(h[i + 1, i]) % p
            if prod == 0:
                break
            coef = prod * int(h[i, k]) % p
            if coef:
                nxt = poly_sub(nxt, [c * coef % p for c in polys[i]], p)
        polys.append(nxt if nxt else [])
    return polys[n]


def linear_roots(f: list[int], p: int, seed: int = 0) -> set[int]:
    """All roots of ``f`` in GF(p).

    The linear part is isolated as ``gcd(f, x^p - x)`` and split by
    equal-degree (Cantor-Zassenhaus) splitting.
    """
    f = poly_monic(f, p)
    if not f:
        raise ValueError("the zero polynomial has every element as a root")
    if len(f) == 1:
        return set()
    xp = poly_powmod([0, 1], p, f, p)
    g = poly_gcd(f, poly_sub(xp, [0, 1], p), p)
    rng = random.Random(seed)
    roots: set[int] = set()
    stack = [g]
    while stack:
        g = stack.pop()
        d = len(g) - 1
        if d <= 0:
            continue
        if d == 1:
            roots.add((-g[0]) % p)
            continue
        while True:
            a = rng.randrange(p)
            h = poly_powmod([a, 1], (p - 1) // 2, g, p)
            h = poly_gcd(g, poly_sub(h, [1], p), p)
            if 0 < len(h) - 1 < d:
                stack.append(h)
                stack.append(poly_divmod(g, h, p)[0])
                break
    return roots


def fitting_split(f: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Fitting decomposition: column bases of ``ker f^N`` and ``im f^N``."""
    n = f.shape[0]
    g = mat_pow(f, n, p)
    return kernel_basis(g, p), image_basis(g, p)
