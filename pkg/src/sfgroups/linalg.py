"""Exact linear algebra over the prime field GF(p).

Vectors and matrices are plain ``numpy`` integer arrays with entries in
``[0, p)``; the modulus travels alongside as an explicit argument.  Subspaces
are stored in reduced row-echelon form so that equal spans compare (and hash)
equal.

Matrices are also given an integer *code*: entry ``(r, c)`` of an ``n x n``
matrix is the base-``p`` digit at position ``r * n + c``.  Over GF(2) this is
the packed bit representation and matrix addition is XOR of codes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

SUPPORTED_PRIMES = (2, 3, 5, 7, 11, 13)

DTYPE = np.int64


def check_prime(p: int) -> int:
    p = int(p)
    if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise ValueError(f"modulus {p} is not prime")
    return p


@lru_cache(maxsize=None)
def inverse_table(p: int) -> np.ndarray:
    """``inv[x]`` is the multiplicative inverse of ``x`` mod ``p`` (``inv[0] = 0``)."""
    inv = np.zeros(p, dtype=DTYPE)
    for x in range(1, p):
        inv[x] = pow(x, p - 2, p)
    return inv


def as_fp(a, p: int) -> np.ndarray:
    return np.asarray(a, dtype=DTYPE) % p


# ---------------------------------------------------------------------------
# single-matrix elimination


def rref(A, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form of ``A`` over GF(p) and its pivot columns."""
    A = as_fp(A, p).copy()
    if A.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    inv = inverse_table(p)
    m, n = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = (A[r] * inv[A[r, c]]) % p
        col = A[:, c].copy()
        col[r] = 0
        rows = np.nonzero(col)[0]
        if rows.size:
            A[rows] = (A[rows] - col[rows, None] * A[r]) % p
        pivots.append(c)
        r += 1
    return A, pivots


def mat_rank(M, p: int) -> int:
    """Rank of ``M`` over GF(p)."""
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return len(rref(M, p)[1])


def mat_inverse(M, p: int) -> np.ndarray | None:
    """Inverse of the square matrix ``M`` over GF(p), or ``None`` if singular."""
    M = as_fp(M, p)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"mat_inverse needs a square matrix, got shape {M.shape}")
    n = M.shape[0]
    R, piv = rref(np.hstack([M, np.eye(n, dtype=DTYPE)]), p)
    if piv[:n] != list(range(n)):
        return None
    return R[:, n:].copy()


def nullspace(A, p: int) -> np.ndarray:
    """Basis (as rows) of ``{x : A x = 0}`` over GF(p)."""
    A = as_fp(A, p)
    if A.ndim == 1:
        A = A[None, :]
    n = A.shape[1]
    R, piv = rref(A, p)
    free = [j for j in range(n) if j not in piv]
    basis = np.zeros((len(free), n), dtype=DTYPE)
    for t, f in enumerate(free):
        basis[t, f] = 1
        for i, pc in enumerate(piv):
            basis[t, pc] = (-R[i, f]) % p
    return basis


def solve(A, b, p: int) -> np.ndarray | None:
    """One solution of ``A x = b`` over GF(p) (free variables zero), or ``None``."""
    A = as_fp(A, p)
    b = as_fp(b, p).reshape(-1, 1)
    n = A.shape[1]
    R, piv = rref(np.hstack([A, b]), p)
    if n in piv:
        return None
    x = np.zeros(n, dtype=DTYPE)
    for i, pc in enumerate(piv):
        x[pc] = R[i, n]
    return x


def matmul(A, B, p: int) -> np.ndarray:
    return (np.asarray(A, dtype=DTYPE) @ np.asarray(B, dtype=DTYPE)) % p


# ---------------------------------------------------------------------------
# batched elimination (stacks of matrices)


def batch_rref(mats, p: int, ncols: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Row-reduce every matrix of a ``(m, r, c)`` stack.

    Only the first ``ncols`` columns are used as pivot columns (all by
    default), which is what Gauss-Jordan inversion on ``[A | I]`` needs.
    Returns the reduced stack and the per-matrix rank.
    """
    # int16 is enough while products stay below 2^15, and much faster
    work = np.int16 if p < 128 else DTYPE
    A = as_fp(mats, p).astype(work)
    m, R, C = A.shape
    ncols = C if ncols is None else ncols
    inv = inverse_table(p).astype(work)
    rank = np.zeros(m, dtype=DTYPE)
    rows = np.arange(R)
    for c in range(ncols):
        active = np.nonzero(rank < R)[0]
        if active.size == 0:
            break
        sub = A[active]
        rk = rank[active]
        mask = (sub[:, :, c] != 0) & (rows[None, :] >= rk[:, None])
        has = mask.any(axis=1)
        if not has.any():
            continue
        idx = active[has]
        sub = sub[has]
        rk = rk[has]
        piv = mask[has].argmax(axis=1)
        k = np.arange(idx.size)
        top = sub[k, rk].copy()
        sub[k, rk] = sub[k, piv]
        sub[k, piv] = top
        prow = (sub[k, rk] * inv[sub[k, rk, c]][:, None]) % p
        sub[k, rk] = prow
        factors = sub[:, :, c].copy()
        factors[k, rk] = 0
        sub = (sub - factors[:, :, None] * prow[:, None, :]) % p
        A[idx] = sub
        rank[idx] += 1
    return A.astype(DTYPE), rank


def _batch_rank_gf2(mats: np.ndarray) -> np.ndarray:
    """Ranks over GF(2) with each row packed into one machine word."""
    m, R, C = mats.shape
    bits = (mats.astype(np.int64) & 1) @ (np.int64(1) << np.arange(C, dtype=np.int64))
    rank = np.zeros(m, dtype=DTYPE)
    for i in range(R):
        piv = bits[:, i]
        rank += piv != 0
        low = piv & -piv
        rest = bits[:, i + 1 :]
        rest ^= piv[:, None] * ((rest & low[:, None]) != 0)
    return rank


def batch_rank(mats, p: int) -> np.ndarray:
    mats = np.asarray(mats)
    if mats.shape[0] == 0:
        return np.zeros(0, dtype=DTYPE)
    if p == 2 and mats.shape[2] <= 62:
        return _batch_rank_gf2(mats)
    return batch_rref(mats, p)[1]


def batch_inverse(mats, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Invert a stack of square matrices; returns ``(inverses, invertible_mask)``.

    Rows of the inverse stack where the mask is false are meaningless.
    """
    mats = as_fp(mats, p)
    m, n, _ = mats.shape
    eye = np.broadcast_to(np.eye(n, dtype=DTYPE), (m, n, n))
    R, rank = batch_rref(np.concatenate([mats, eye], axis=2), p, ncols=n)
    ok = rank == n
    return R[:, :, n:].copy(), ok


# ---------------------------------------------------------------------------
# vectors and codes


def all_vectors(n: int, p: int) -> np.ndarray:
    """Every vector of GF(p)^n as rows, in lexicographic order (first coordinate slowest)."""
    if n == 0:
        return np.zeros((1, 0), dtype=DTYPE)
    idx = np.arange(p**n, dtype=DTYPE)
    weights = p ** np.arange(n - 1, -1, -1, dtype=DTYPE)
    return (idx[:, None] // weights[None, :]) % p


def vector_index(v, p: int) -> int:
    """Position of ``v`` in :func:`all_vectors` order."""
    out = 0
    for x in np.asarray(v).ravel():
        out = out * p + int(x)
    return out


def digit_weights(k: int, p: int) -> np.ndarray:
    return p ** np.arange(k, dtype=DTYPE)


def encode(mats, p: int) -> np.ndarray:
    """Integer codes of a stack of matrices (digit ``r * n + c`` holds entry ``(r, c)``)."""
    mats = np.asarray(mats, dtype=DTYPE)
    flat = mats.reshape(mats.shape[: mats.ndim - 2] + (-1,))
    return flat @ digit_weights(flat.shape[-1], p)


def decode(codes, n: int, p: int) -> np.ndarray:
    codes = np.asarray(codes, dtype=DTYPE)
    digits = (codes[..., None] // digit_weights(n * n, p)) % p
    return digits.reshape(codes.shape + (n, n))


def add_codes(a, b, n: int, p: int) -> np.ndarray:
    """Codes of ``A + B`` given codes of ``A`` and ``B`` (broadcasting)."""
    a = np.asarray(a, dtype=DTYPE)
    b = np.asarray(b, dtype=DTYPE)
    if p == 2:
        return a ^ b
    w = digit_weights(n * n, p)
    da = (a[..., None] // w) % p
    db = (b[..., None] // w) % p
    return ((da + db) % p) @ w


def scale_codes(a, lam: int, n: int, p: int) -> np.ndarray:
    a = np.asarray(a, dtype=DTYPE)
    if lam % p == 1:
        return a.copy()
    w = digit_weights(n * n, p)
    return ((((a[..., None] // w) % p) * lam) % p) @ w


def gl_codes(n: int, p: int) -> np.ndarray:
    """Codes of every invertible ``n x n`` matrix, built row by row.

    Each partial matrix carries a boolean mask of its row span; the next row
    ranges over the complement.
    """
    vecs = all_vectors(n, p)
    big = p ** np.arange(n - 1, -1, -1, dtype=DTYPE)
    little = vecs @ digit_weights(n, p)
    add_idx = ((vecs[:, None, :] + vecs[None, :, :]) % p) @ big  # index of x + y
    scaled = [((lam * vecs) % p) @ big for lam in range(p)]
    codes = np.zeros(1, dtype=DTYPE)
    span = np.zeros((1, p**n), dtype=bool)
    span[:, 0] = True
    for r in range(n):
        m_idx, v_idx = np.nonzero(~span)
        codes = codes[m_idx] + little[v_idx] * p ** (r * n)
        if r == n - 1:
            break
        old = span[m_idx]
        new = old.copy()
        rows = np.arange(m_idx.size)[:, None]
        for lam in range(1, p):
            new |= old[rows, add_idx[scaled[lam][v_idx]]]
        span = new
    return np.sort(codes)


@lru_cache(maxsize=8)
def invertibility_table(n: int, p: int) -> np.ndarray:
    """Boolean table indexed by matrix code: is the ``n x n`` matrix invertible?"""
    table = np.zeros(p ** (n * n), dtype=bool)
    table[gl_codes(n, p)] = True
    table.setflags(write=False)
    return table


def gl_order(n: int, p: int) -> int:
    out = 1
    for i in range(n):
        out *= p**n - p**i
    return out


def invertible_matrices(n: int, p: int) -> np.ndarray:
    """All of GL(n, p) as an ``(|GL|, n, n)`` stack, ordered by code."""
    codes = np.nonzero(invertibility_table(n, p))[0]
    return decode(codes, n, p)


def enumerate_invertible(n: int, p: int) -> Iterator[np.ndarray]:
    """Stream every invertible ``n x n`` matrix over GF(p) once, in code order."""
    if n < 1:
        raise ValueError("n must be positive")
    yield from invertible_matrices(n, p)


# ---------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True)
class Subspace:
    """A subspace of GF(p)^ambient held by its canonical RREF basis."""

    p: int
    ambient: int
    rows: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def basis(self) -> np.ndarray:
        return np.array(self.rows, dtype=DTYPE).reshape(len(self.rows), self.ambient)

    @property
    def pivots(self) -> list[int]:
        return [next(i for i, x in enumerate(r) if x) for r in self.rows]

    @property
    def order(self) -> int:
        return self.p**self.dim

    def elements(self) -> np.ndarray:
        coeffs = all_vectors(self.dim, self.p)
        return (coeffs @ self.basis) % self.p

    def contains(self, v) -> bool:
        v = as_fp(v, self.p).reshape(-1)
        r = v.copy()
        for row, pc in zip(self.basis, self.pivots):
            if r[pc]:
                r = (r - r[pc] * row) % self.p
        return not r.any()

    def reduce(self, v) -> np.ndarray:
        """Canonical coset representative of ``v`` modulo this subspace."""
        r = as_fp(v, self.p).copy()
        for row, pc in zip(self.basis, self.pivots):
            r = (r - np.multiply.outer(r[..., pc], row)) % self.p
        return r

    def __le__(self, other: "Subspace") -> bool:
        return all(other.contains(r) for r in self.basis)

    def join(self, other: "Subspace") -> "Subspace":
        return subspace_canonical(np.vstack([self.basis, other.basis]), self.p, self.ambient)

    def meet(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)

    def complement_coordinates(self) -> np.ndarray:
        """Matrix ``Q`` (``(ambient - dim) x ambient``) with kernel exactly this subspace."""
        free = [j for j in range(self.ambient) if j not in self.pivots]
        Q = np.zeros((len(free), self.ambient), dtype=DTYPE)
        for t, f in enumerate(free):
            Q[t, f] = 1
            for row, pc in zip(self.basis, self.pivots):
                Q[t, pc] = (-row[f]) % self.p
        return Q

    def to_list(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


def subspace_canonical(vectors, p: int, ambient: int | None = None) -> Subspace:
    """Canonical form of the span of ``vectors``."""
    V = np.asarray(vectors, dtype=DTYPE)
    if V.size == 0:
        if ambient is None:
            ambient = V.shape[-1] if V.ndim == 2 else 0
        return Subspace(p, ambient, ())
    V = V.reshape(-1, V.shape[-1]) if ambient is None else V.reshape(-1, ambient)
    R, piv = rref(V, p)
    rows = tuple(tuple(int(x) for x in R[i]) for i in range(len(piv)))
    return Subspace(p, V.shape[1], rows)


def zero_subspace(ambient: int, p: int) -> Subspace:
    return Subspace(p, ambient, ())


def full_space(ambient: int, p: int) -> Subspace:
    return subspace_canonical(np.eye(ambient, dtype=DTYPE), p, ambient)


def intersect(U: Subspace, W: Subspace) -> Subspace:
    if U.dim == 0 or W.dim == 0:
        return zero_subspace(U.ambient, U.p)
    # x U = y W  <=>  [U; -W]^T (x, y) = 0
    M = np.vstack([U.basis, (-W.basis) % U.p]).T
    K = nullspace(M, U.p)
    if K.shape[0] == 0:
        return zero_subspace(U.ambient, U.p)
    return subspace_canonical((K[:, : U.dim] @ U.basis) % U.p, U.p, U.ambient)


def gaussian_binomial(n: int, k: int, p: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= p ** (n - i) - 1
        den *= p ** (i + 1) - 1
    return num // den


def _free_positions(pivots: Sequence[int], n: int) -> list[tuple[int, int]]:
    pset = set(pivots)
    return [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, n) if c not in pset]


def subspace_batches(n: int, k: int, p: int, max_batch: int = 1 << 16) -> Iterator[np.ndarray]:
    """Canonical bases of all ``k``-dim subspaces of GF(p)^n as ``(m, k, n)`` stacks.

    Order: pivot patterns in lexicographic order, then free entries with the
    first free position varying slowest.  The concatenation of the batches is
    the same stream that :func:`enumerate_subspaces` yields.
    """
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    for pivots in itertools.combinations(range(n), k):
        free = _free_positions(pivots, n)
        base = np.zeros((k, n), dtype=DTYPE)
        for r, pc in enumerate(pivots):
            base[r, pc] = 1
        total = p ** len(free)
        if not free:
            yield base[None]
            continue
        rr = np.array([f[0] for f in free])
        cc = np.array([f[1] for f in free])
        weights = p ** np.arange(len(free) - 1, -1, -1, dtype=DTYPE)
        for start in range(0, total, max_batch):
            idx = np.arange(start, min(total, start + max_batch), dtype=DTYPE)
            digits = (idx[:, None] // weights[None, :]) % p
            out = np.broadcast_to(base, (idx.size, k, n)).copy()
            out[:, rr, cc] = digits
            yield out


def enumerate_subspaces(n: int, k: int, p: int) -> Iterator[Subspace]:
    """Stream every ``k``-dimensional subspace of GF(p)^n exactly once, in canonical order."""
    for batch in subspace_batches(n, k, p):
        for B in batch:
            yield Subspace(p, n, tuple(tuple(int(x) for x in r) for r in B))


def all_subspaces(n: int, p: int) -> Iterator[Subspace]:
    for k in range(n + 1):
        yield from enumerate_subspaces(n, k, p)


def split_evenly(items: Sequence, parts: int) -> list[Sequence]:
    """Contiguous chunks (in order) for deterministic parallel reduction."""
    parts = max(1, min(parts, len(items))) if len(items) else 1
    size, extra = divmod(len(items), parts)
    out, start = [], 0
    for i in range(parts):
        stop = start + size + (1 if i < extra else 0)
        out.append(items[start:stop])
        start = stop
    return out


def span_elements(basis: Iterable, p: int) -> np.ndarray:
    B = np.asarray(list(basis), dtype=DTYPE)
    if B.size == 0:
        return np.zeros((1, 0), dtype=DTYPE)
    return (all_vectors(B.shape[0], p) @ B.reshape(B.shape[0], -1)) % p
