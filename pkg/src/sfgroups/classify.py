"""Isotopism tests, spread-set enumeration and catalog classification."""

from __future__ import annotations

import hashlib
import itertools
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import linalg
from .linalg import DTYPE
from .semifield import (
    PreSemifield,
    Semifield,
    find_identity,
    opposite,
    principal_isotope,
    seminuclei,
    semifield_from_matrix_space,
    standardize,
)
from . import semifield as sfmod

# (p, n) enumerable without the long-run flag
DEFAULT_ORDERS = {(2, 2), (3, 2), (2, 3), (2, 4), (3, 3)}
LONG_RUN_ORDERS = {(2, 5), (5, 2), (5, 3), (7, 2)}


class BudgetExhausted(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# witnesses


@dataclass
class IsotopismWitness:
    """``C(x *1 y) = A(x) *2 B(y)``; for ``direction == "anti"`` the right side is ``B(y) *2 A(x)``."""

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    direction: str = "isotopic"

    def verify(self, F1: PreSemifield, F2: PreSemifield) -> bool:
        p, n = F1.p, F1.n
        mats = [self.A, self.B, self.C]
        if any(linalg.mat_inverse(M, p) is None for M in mats):
            return False
        eye = np.eye(n, dtype=DTYPE)
        lhs = np.einsum("ka,ija->ijk", self.C, F1.multiply(eye[:, None, :], eye[None, :, :])) % p
        Ax = self.A.T[:, None, :]  # row i = A e_i
        By = self.B.T[None, :, :]
        if self.direction == "anti":
            rhs = F2.multiply(By, Ax)
        else:
            rhs = F2.multiply(Ax, By)
        return bool(np.array_equal(lhs, rhs))


def _check_pair(F1: PreSemifield, F2: PreSemifield) -> None:
    if (F1.p, F1.n) != (F2.p, F2.n):
        raise ValueError(f"order mismatch: {F1.p}^{F1.n} vs {F2.p}^{F2.n}")


def _semifield_with_maps(F: PreSemifield):
    """A semifield S isotopic to F, plus (X, Y) with ``x * y = (X x) o (Y y)``."""
    eye = np.eye(F.n, dtype=DTYPE)
    if isinstance(F, Semifield):
        return F, eye, eye
    S = find_identity(F)
    if S is not None:
        return S, eye, eye
    e = eye[0]
    S = principal_isotope(F, e)
    return S, F.right_matrix(e), F.left_matrix(e)


# ---------------------------------------------------------------------------
# isotopy by conjugacy of spread sets


def _similarity_fingerprints(X: np.ndarray, p: int) -> np.ndarray:
    """Similarity invariants of a stack: ranks of ``X^k - lam I`` and traces of ``X^k``."""
    m, n, _ = X.shape
    eye = np.eye(n, dtype=DTYPE)
    powers = []
    Pk = np.broadcast_to(eye, X.shape).copy()
    for _ in range(n):
        Pk = np.einsum("mij,mjk->mik", Pk, X) % p
        powers.append(Pk)
    P = np.stack(powers, axis=1)  # (m, n, n, n)
    shifted = (P[:, :, None] - np.arange(p)[None, None, :, None, None] * eye) % p  # (m, n, p, n, n)
    ranks = linalg.batch_rank(shifted.reshape(-1, n, n), p).reshape(m, n, p)
    traces = np.trace(P, axis1=2, axis2=3) % p  # (m, n)
    return np.concatenate([ranks, traces[:, :, None]], axis=2).reshape(m, -1)


def _conjugator_space(X: np.ndarray, Y: np.ndarray, p: int) -> np.ndarray:
    """Basis of ``{P : P X = Y P}`` as a stack of matrices."""
    n = X.shape[0]
    eye = np.eye(n, dtype=DTYPE)
    A = (np.kron(eye, X.T) - np.kron(Y, eye)) % p
    return linalg.nullspace(A, p).reshape(-1, n, n)


@dataclass
class SpreadProfile:
    """Fingerprints of ``S M^-1`` for every nonzero M in the spread set S.

    Up to reordering, the family ``{S M^-1}`` is carried to conjugates by any
    isotopism, so ``key`` is an isotopy invariant.
    """

    mats: np.ndarray  # (m, n, n) nonzero members of S, in element order
    inverses: np.ndarray
    fingerprints: np.ndarray  # (m, m, k): row mi = fingerprints of S M_mi^-1
    key: bytes
    target: int | None = None  # non-scalar member with the smallest centralizer

    def conjugation_target(self, p: int) -> int | None:
        if self.target is None:
            n = self.mats.shape[1]
            eye = np.eye(n, dtype=DTYPE)
            cdims = np.array([_conjugator_space(X, X, p).shape[0] for X in self.mats])
            scalar = np.array([np.array_equal(X, (X[0, 0] * eye) % p) for X in self.mats])
            if scalar.all():  # n == 1
                return None
            cdims[scalar] = n * n + 1
            self.target = int(np.argmin(cdims))
        return self.target


def spread_profile(F: Semifield) -> SpreadProfile:
    p, n = F.p, F.n
    S = F.left_matrix(linalg.all_vectors(n, p)[1:])
    m = S.shape[0]
    inv, _ = linalg.batch_inverse(S, p)
    T = np.einsum("aij,mjk->maik", S, inv) % p
    fp = _similarity_fingerprints(T.reshape(m * m, n, n), p).reshape(m, m, -1)
    rows = []
    for mi in range(m):
        f = fp[mi]
        rows.append(f[np.lexsort(f.T[::-1])].tobytes())
    key = hashlib.sha256(b"".join(sorted(rows))).digest()
    return SpreadProfile(S, inv, fp, key)


def _spread_witness(F1: Semifield, F2: Semifield, stats: dict | None = None, prof1=None, prof2=None):
    """Search ``M`` in S2 and ``P`` with ``P S1 P^-1 = S2 M^-1``."""
    p, n = F1.p, F1.n
    prof1 = spread_profile(F1) if prof1 is None else prof1
    prof2 = spread_profile(F2) if prof2 is None else prof2
    if prof1.key != prof2.key:
        return None
    S1 = prof1.mats
    S2, inv_S2 = prof2.mats, prof2.inverses
    basis1 = F1.left_basis_matrices()
    eye = np.eye(n, dtype=DTYPE)
    ii = int(np.nonzero(np.all(S1 == eye, axis=(1, 2)))[0][0])
    fp1 = prof1.fingerprints[ii]  # fingerprints of S1 itself
    key1 = sorted(map(tuple, fp1))
    xi = prof1.conjugation_target(p)
    if xi is None:
        return IsotopismWitness(eye.copy(), eye.copy(), eye.copy())
    X = S1[xi]
    for mi in range(S2.shape[0]):
        fpT = prof2.fingerprints[mi]
        if stats is not None:
            stats["isotopy_candidates"] = stats.get("isotopy_candidates", 0) + 1
        if sorted(map(tuple, fpT)) != key1:
            continue
        Minv = inv_S2[mi]
        T = np.einsum("mij,jk->mik", S2, Minv) % p
        Tcodes = np.sort(linalg.encode(T, p))
        for yi in np.nonzero(np.all(fpT == fp1[xi], axis=1))[0]:
            K = _conjugator_space(X, T[yi], p)
            coeffs = linalg.all_vectors(K.shape[0], p)[1:]
            Ps = np.einsum("mk,kij->mij", coeffs, K) % p
            Pinv, inv_ok = linalg.batch_inverse(Ps, p)
            Ps, Pinv = Ps[inv_ok], Pinv[inv_ok]
            if Ps.shape[0] == 0:
                continue
            conj = np.einsum("mij,bjk,mkl->mbil", Ps, basis1, Pinv) % p
            codes = linalg.encode(conj, p)
            good = np.isin(codes, Tcodes).all(axis=1)
            if good.any():
                P, Pi = Ps[np.argmax(good)], Pinv[np.argmax(good)]
                M = S2[mi]
                C = P
                B = (Minv @ P) % p
                # alpha(a) = P L1_a P^-1 M e2
                cols = np.einsum("ij,ajk,kl,lm,m->ai", P, basis1, Pi, M, F2.identity) % p
                return IsotopismWitness(cols.T.copy(), B, C)
    return None


def _exhaustive_witness(F1: Semifield, F2: Semifield, stats: dict | None = None, chunk: int = 4096):
    """Try every invertible ``A`` and nonzero ``u``: ``C = R2_u A``, ``B = L2_{A e}^{-1} C``."""
    p, n = F1.p, F1.n
    if linalg.gl_order(n, p) > 2_000_000:
        raise ValueError("exhaustive isotopy search is limited to |GL(n, p)| <= 2e6")
    GL = linalg.invertible_matrices(n, p)
    eye = np.eye(n, dtype=DTYPE)
    prods1 = F1.multiply(eye[:, None, :], eye[None, :, :])  # (i, j, k)
    e1 = F1.identity
    for u in linalg.all_vectors(n, p)[1:]:
        Ru = F2.right_matrix(u)
        for s in range(0, GL.shape[0], chunk):
            A = GL[s : s + chunk]
            Ae = (A @ e1) % p
            Linv, _ = linalg.batch_inverse(F2.left_matrix(Ae), p)
            C = np.einsum("ij,mjk->mik", Ru, A) % p
            B = np.einsum("mij,mjk->mik", Linv, C) % p
            lhs = np.einsum("mab,ijb->mija", C, prods1) % p
            rhs = np.einsum("mai,mbj,abk->mijk", A, B, F2.cube) % p
            hit = np.all(lhs == rhs, axis=(1, 2, 3))
            if stats is not None:
                stats["isotopy_candidates"] = stats.get("isotopy_candidates", 0) + A.shape[0]
            if hit.any():
                k = int(np.argmax(hit))
                return IsotopismWitness(A[k].copy(), B[k].copy(), C[k].copy())
    return None


def are_isotopic(F1: PreSemifield, F2: PreSemifield, method: str = "spread", stats: dict | None = None):
    """An isotopism from F1 to F2 as a verified witness, or None.

    ``method="spread"`` conjugates the spread sets of left multiplications;
    ``method="exhaustive"`` scans every invertible ``A`` and nonzero ``u``.
    """
    _check_pair(F1, F2)
    if method not in ("spread", "exhaustive"):
        raise ValueError(f"unknown isotopy method {method!r}")
    p = F1.p
    if np.array_equal(F1.cube, F2.cube):
        eye = np.eye(F1.n, dtype=DTYPE)
        return IsotopismWitness(eye, eye.copy(), eye.copy())
    S1, X1, Y1 = _semifield_with_maps(F1)
    S2, X2, Y2 = _semifield_with_maps(F2)
    if method == "spread":
        w = _spread_witness(S1, S2, stats)
    else:
        w = _exhaustive_witness(S1, S2, stats)
    if w is None:
        return None
    # pull back through x *i y = (Xi x) o_i (Yi y)
    X2inv = linalg.mat_inverse(X2, p)
    Y2inv = linalg.mat_inverse(Y2, p)
    out = IsotopismWitness((X2inv @ w.A @ X1) % p, (Y2inv @ w.B @ Y1) % p, w.C % p)
    if not out.verify(F1, F2):
        raise AssertionError("isotopism witness failed verification")
    return out


def are_anti_isotopic(F1: PreSemifield, F2: PreSemifield, method: str = "spread", stats: dict | None = None):
    _check_pair(F1, F2)
    w = are_isotopic(F1, opposite(F2), method, stats)
    if w is None:
        return None
    out = IsotopismWitness(w.A, w.B, w.C, "anti")
    if not out.verify(F1, F2):
        raise AssertionError("anti-isotopism witness failed verification")
    return out


# ---------------------------------------------------------------------------
# conjugacy classes without eigenvalues in GF(p)


def _monic_polys(p: int, deg: int):
    for tail in itertools.product(range(p), repeat=deg):
        yield list(tail) + [1]  # lowest degree first


def _has_root(f: list[int], p: int) -> bool:
    return any(sum(c * pow(x, i, p) for i, c in enumerate(f)) % p == 0 for x in range(p))


def _divides(a: list[int], b: list[int], p: int) -> bool:
    return not sfmod._trim(sfmod.poly_mod(b, a, p))


def companion(f: list[int], p: int) -> np.ndarray:
    """Companion matrix: ``C e_i = e_{i+1}``, ``C e_d = -sum f_i e_{i+1}``."""
    d = len(f) - 1
    C = np.zeros((d, d), dtype=DTYPE)
    for i in range(d - 1):
        C[i + 1, i] = 1
    C[:, d - 1] = [(-c) % p for c in f[:d]]
    return C


def rational_canonical_reps(n: int, p: int) -> list[np.ndarray]:
    """Class representatives of ``n x n`` matrices with no eigenvalue in GF(p)."""
    polys = {d: [f for f in _monic_polys(p, d) if not _has_root(f, p)] for d in range(2, n + 1)}

    def chains(remaining: int, bound):
        if remaining == 0:
            yield []
            return
        for d in range(2, remaining + 1):
            if bound is not None and d > len(bound) - 1:
                break
            for f in polys[d]:
                if bound is not None and not _divides(f, bound, p):
                    continue
                for rest in chains(remaining - d, f):
                    yield rest + [f]

    reps = []
    for chain in chains(n, None):
        R = np.zeros((n, n), dtype=DTYPE)
        o = 0
        for f in chain:
            d = len(f) - 1
            R[o : o + d, o : o + d] = companion(f, p)
            o += d
        reps.append(R)
    return reps


def centralizer(R: np.ndarray, p: int) -> np.ndarray:
    """All invertible matrices commuting with ``R``."""
    K = _conjugator_space(R, R, p)
    coeffs = linalg.all_vectors(K.shape[0], p)[1:]
    mats = np.einsum("mk,kij->mij", coeffs, K) % p
    _, ok = linalg.batch_inverse(mats, p)
    return mats[ok]


# ---------------------------------------------------------------------------
# spread-set search


def _coset_min(cands: np.ndarray, span: np.ndarray, n: int, p: int, chunk: int = 1 << 14) -> np.ndarray:
    """Mask: candidate is the smallest code of its coset ``c + span``."""
    out = np.empty(cands.size, dtype=bool)
    for s in range(0, cands.size, chunk):
        c = cands[s : s + chunk]
        out[s : s + chunk] = np.all(linalg.add_codes(c[:, None], span[None, :], n, p) >= c[:, None], axis=1)
    return out


def _orbit_min(cands: np.ndarray, U0: np.ndarray, cent: np.ndarray, n: int, p: int) -> np.ndarray:
    """Mask: candidate is minimal over ``{c X c^-1 + u}`` for c in C(R), u in U0."""
    X = linalg.decode(cands, n, p)
    cinv, _ = linalg.batch_inverse(cent, p)
    keep = np.ones(cands.size, dtype=bool)
    for c, ci in zip(cent, cinv):
        idx = np.nonzero(keep)[0]
        if idx.size == 0:
            break
        conj = linalg.encode(np.einsum("ij,mjk,kl->mil", c, X[idx], ci) % p, p)
        shifted = linalg.add_codes(conj[:, None], U0[None, :], n, p)
        keep[idx] = np.all(shifted >= cands[idx, None], axis=1)
    return keep


def _span_codes(basis_codes: list[int], n: int, p: int) -> np.ndarray:
    span = np.zeros(1, dtype=DTYPE)
    for b in basis_codes:
        span = np.concatenate([linalg.add_codes(linalg.scale_codes(b, lam, n, p), span, n, p) for lam in range(p)])
    return span


def _compatible(pool: np.ndarray, new: np.ndarray, table: np.ndarray, n: int, p: int) -> np.ndarray:
    """Pool members ``c`` with ``c + x`` invertible for every code ``x`` in ``new``."""
    for x in new:
        if pool.size == 0:
            break
        pool = pool[table[linalg.add_codes(pool, x, n, p)]]
    return pool


def search_from_rep(R: np.ndarray, p: int, deadline: float | None = None) -> tuple[list[np.ndarray], dict]:
    """All canonical spread sets ``{I, R, b_3, ..., b_n}`` for one class representative."""
    n = R.shape[0]
    table = linalg.invertibility_table(n, p)
    stats = {"nodes": 0, "leaves": 0, "coset_prunes": 0, "orbit_prunes": 0, "complete": True}
    I = linalg.encode(np.eye(n, dtype=DTYPE), p)
    Rc = linalg.encode(R, p)
    U0 = _span_codes([int(I), int(Rc)], n, p)
    pool = np.nonzero(table)[0].astype(DTYPE)
    pool = _compatible(pool, U0[U0 != 0], table, n, p)
    leaves: list[np.ndarray] = []
    cent = centralizer(R, p)

    def dfs(basis: list[int], span: np.ndarray, pool: np.ndarray):
        stats["nodes"] += 1
        if deadline is not None and time.monotonic() > deadline:
            raise BudgetExhausted
        if len(basis) == n:
            stats["leaves"] += 1
            leaves.append(linalg.decode(np.array(basis, dtype=DTYPE), n, p))
            return
        mask = _coset_min(pool, span, n, p)
        stats["coset_prunes"] += int((~mask).sum())
        cands = pool[mask]
        if len(basis) == 2:
            om = _orbit_min(cands, U0, cent, n, p)
            stats["orbit_prunes"] += int((~om).sum())
            cands = cands[om]
        for b in cands:
            b = int(b)
            new = np.concatenate(
                [linalg.add_codes(linalg.scale_codes(b, lam, n, p), span, n, p) for lam in range(1, p)]
            )
            rest = pool[pool > b]
            if len(basis) + 1 < n:
                rest = _compatible(rest, new, table, n, p)
            dfs(basis + [b], np.concatenate([span, new]), rest)

    if n == 1:
        return [np.eye(1, dtype=DTYPE)[None]], stats
    try:
        dfs([int(I), int(Rc)], U0, pool)
    except BudgetExhausted:
        stats["complete"] = False
    return leaves, stats


def _search_job(args):
    R, p, deadline_secs = args
    deadline = None if deadline_secs is None else time.monotonic() + deadline_secs
    return search_from_rep(R, p, deadline)


def spread_set_search(p: int, n: int, budget_secs: float | None = None, workers: int = 1):
    """Candidate spread sets covering every isotopism class, with merged search stats."""
    if n == 1:
        return [np.eye(1, dtype=DTYPE)[None]], {"nodes": 1, "leaves": 1, "coset_prunes": 0, "orbit_prunes": 0, "complete": True, "class_reps": 0}
    reps = rational_canonical_reps(n, p)
    start = time.monotonic()
    jobs = [(R, p, budget_secs) for R in reps]
    if workers > 1 and len(reps) > 1:
        linalg.invertibility_table(n, p)
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_search_job, jobs))
    else:
        results = []
        for R in reps:
            left = None if budget_secs is None else budget_secs - (time.monotonic() - start)
            if left is not None and left <= 0:
                results.append(([], {"nodes": 0, "leaves": 0, "coset_prunes": 0, "orbit_prunes": 0, "complete": False}))
                continue
            results.append(_search_job((R, p, left)))
    leaves = [leaf for res, _ in results for leaf in res]
    stats = {"nodes": 0, "leaves": 0, "coset_prunes": 0, "orbit_prunes": 0}
    for _, st in results:
        for k in stats:
            stats[k] += st[k]
    stats["complete"] = all(st["complete"] for _, st in results)
    stats["class_reps"] = len(reps)
    return leaves, stats


# ---------------------------------------------------------------------------
# invariants and classification


def graph_dimension(F: PreSemifield) -> int:
    from .census import graph_solutions

    return graph_solutions(F).shape[0]


def isotopy_invariants(F: Semifield) -> tuple[int, int, int, int]:
    """(left, middle, right seminucleus orders, dim of the graph-solution space)."""
    return seminuclei(F).orders + (graph_dimension(F),)


def _anti_key(key):
    l, m, r, h = key
    return (r, m, l, h)


def _partition(n_items: int, keys, same, stats) -> list[list[int]]:
    classes: list[list[int]] = []
    for i in range(n_items):
        for cls in classes:
            j = cls[0]
            if keys is not None and keys[i] != keys[j]:
                continue
            stats["isotopy_tests"] = stats.get("isotopy_tests", 0) + 1
            if same(i, j):
                cls.append(i)
                break
        else:
            classes.append([i])
    return classes


def _witness(S1: Semifield, S2: Semifield, method: str, stats, prof1=None, prof2=None):
    if method == "spread":
        w = _spread_witness(S1, S2, stats, prof1, prof2)
    else:
        w = _exhaustive_witness(S1, S2, stats)
    if w is not None and not w.verify(S1, S2):
        raise AssertionError("isotopism witness failed verification")
    return w


def partition_classes(catalog: list[PreSemifield], method: str = "spread", prefilter: bool = False, stats: dict | None = None):
    """Partitions of ``catalog`` (lists of indices) by isotopism and by isotopism or anti-isotopism.

    With ``prefilter`` only pairs with equal seminucleus orders and graph
    dimension are tested.  The spread method always compares spread profiles
    first, which is exact (an isotopy invariant).
    """
    if method not in ("spread", "exhaustive"):
        raise ValueError(f"unknown isotopy method {method!r}")
    stats = {} if stats is None else stats
    sfs = [_semifield_with_maps(F)[0] for F in catalog]
    keys = [isotopy_invariants(S) for S in sfs] if prefilter else None
    profs = [spread_profile(S) for S in sfs] if method == "spread" else [None] * len(sfs)
    iso = _partition(
        len(sfs), keys, lambda i, j: _witness(sfs[j], sfs[i], method, stats, profs[j], profs[i]) is not None, stats
    )
    op_cache: dict[int, tuple] = {}

    def opposite_of(j):
        if j not in op_cache:
            op = opposite(sfs[j])
            op_cache[j] = (op, spread_profile(op) if method == "spread" else None)
        return op_cache[j]

    merged_reps: list[list[int]] = []  # lists of iso-class indices
    for ci, cls in enumerate(iso):
        i = cls[0]
        for group in merged_reps:
            j = iso[group[0]][0]
            if keys is not None and _anti_key(keys[i]) != keys[j]:
                continue
            stats["isotopy_tests"] = stats.get("isotopy_tests", 0) + 1
            op, op_prof = opposite_of(j)
            if _witness(op, sfs[i], method, stats, op_prof, profs[i]) is not None:
                group.append(ci)
                break
        else:
            merged_reps.append([ci])
    merged = [sorted(k for ci in group for k in iso[ci]) for group in merged_reps]
    return iso, merged


def commutative_isotope(F: PreSemifield) -> Semifield | None:
    """First commutative principal isotope ``x o y = R_v^-1 x * L_u^-1 y`` over all (u, v)."""
    if F.is_commutative():
        return _semifield_with_maps(F)[0]
    elems = linalg.all_vectors(F.n, F.p)[1:]
    for u in elems:
        for v in elems:
            S = principal_isotope(F, u, v)
            if S.is_commutative():
                return S
    return None


def isotopic_to_commutative(F: PreSemifield, cross_check: bool | None = None) -> bool:
    """More than two maximal abelian subgroups in G(F); cross-checked by principal isotopes.

    The cross-check runs by default when ``|F| <= 27``.
    """
    from .census import abelian_census
    from .group import SemifieldGroup

    primary = abelian_census(SemifieldGroup(F)).count > 2
    if cross_check is None:
        cross_check = F.order <= 27
    if cross_check:
        secondary = commutative_isotope(F) is not None
        if secondary != primary:
            raise AssertionError(f"census says {primary}, principal isotopes say {secondary}")
    return primary


@dataclass
class EnumerationReport:
    p: int
    n: int
    representatives: list[Semifield]
    iso_classes: list[list[int]]  # indices into representatives; singletons by construction
    merged_classes: list[list[int]]
    commutative: list[bool]  # per merged class
    complete: bool
    stats: dict = field(default_factory=dict)

    @property
    def order(self) -> int:
        return self.p**self.n

    @property
    def isotopism_class_count(self) -> int:
        return len(self.representatives)

    @property
    def iso_or_anti_class_count(self) -> int:
        return len(self.merged_classes)

    @property
    def commutative_class_count(self) -> int:
        return sum(self.commutative)

    def counts(self) -> tuple[int, int, int]:
        return (self.isotopism_class_count, self.iso_or_anti_class_count, self.commutative_class_count)


def check_supported(p: int, n: int, long_run: bool = False) -> None:
    if (p, n) in DEFAULT_ORDERS:
        return
    if (p, n) in LONG_RUN_ORDERS:
        if not long_run:
            raise ValueError(f"order {p}^{n} needs the long-run flag")
        return
    raise ValueError(f"order {p}^{n} is not supported")


def enumerate_semifields(
    p: int,
    n: int,
    budget_secs: float | None = None,
    long_run: bool = False,
    workers: int = 1,
    prefilter: bool = True,
    method: str = "spread",
) -> EnumerationReport:
    """Enumerate spread sets of order ``p^n`` and classify them up to isotopism."""
    check_supported(p, n, long_run)
    t0 = time.monotonic()
    leaves, stats = spread_set_search(p, n, budget_secs, workers)
    # identical spread sets reached from different class representatives
    seen = {}
    for basis in leaves:
        codes = np.sort(linalg.encode(linalg.span_elements(basis, p).reshape(-1, n, n), p))
        seen.setdefault(codes.tobytes(), basis)
    stats["distinct_spread_sets"] = len(seen)
    cands = [semifield_from_matrix_space(b, p) for b in seen.values()]
    iso, merged = partition_classes(cands, method=method, prefilter=prefilter, stats=stats)
    reps = [cands[c[0]] for c in iso]
    pos_of = {c[0]: k for k, c in enumerate(iso)}
    groups = [[pos_of[i] for i in grp if i in pos_of] for grp in merged]
    flags = [isotopic_to_commutative(reps[g[0]]) for g in groups]
    for g, flag in zip(groups, flags):
        for k in g if flag else []:
            S = commutative_isotope(reps[k])
            if S is None:
                raise AssertionError("commutative class without a commutative principal isotope")
            reps[k] = S
    reps = [standardize(S) for S in reps]
    # associative first, then by invariants (descending), stable on discovery
    keys = [isotopy_invariants(S) for S in reps]
    order = sorted(range(len(reps)), key=lambda k: (not reps[k].is_associative(), tuple(-x for x in keys[k]), k))
    new_pos = {old: new for new, old in enumerate(order)}
    reps = [reps[k] for k in order]
    for k, S in enumerate(reps):
        S.label = f"sf_p{p}_n{n}_{k}"
    pairs = sorted((sorted(new_pos[k] for k in g), f) for g, f in zip(groups, flags))
    merged_idx = [g for g, _ in pairs]
    comm_flags = [f for _, f in pairs]
    stats["wall_time"] = time.monotonic() - t0
    return EnumerationReport(p, n, reps, [[k] for k in range(len(reps))], merged_idx, comm_flags, stats["complete"], stats)


# ---------------------------------------------------------------------------
# catalog files


class CatalogError(ValueError):
    pass


def catalog_index(report: EnumerationReport) -> dict:
    comm_of = {}
    for mi, grp in enumerate(report.merged_classes):
        for k in grp:
            comm_of[k] = (mi, report.commutative[mi])
    stats = {k: v for k, v in report.stats.items() if k != "wall_time"}
    return {
        "p": report.p,
        "n": report.n,
        "order": report.order,
        "complete": report.complete,
        "isotopism_class_count": report.isotopism_class_count,
        "iso_or_anti_class_count": report.iso_or_anti_class_count,
        "commutative_class_count": report.commutative_class_count,
        "merged_classes": report.merged_classes,
        "representatives": [
            {
                "file": f"{S.label}.json",
                "merged_class": comm_of[k][0],
                "isotopic_to_commutative": comm_of[k][1],
                "commutative": S.is_commutative(),
                "associative": S.is_associative(),
                "seminuclei": list(seminuclei(S).orders),
            }
            for k, S in enumerate(report.representatives)
        ],
        "search": stats,
    }


def write_catalog(report: EnumerationReport, out_dir) -> Path:
    out = Path(out_dir) / f"p{report.p}_n{report.n}"
    out.mkdir(parents=True, exist_ok=True)
    for S in report.representatives:
        sfmod.save(S, out / f"{S.label}.json")
    (out / "index.json").write_text(json.dumps(catalog_index(report), indent=1, sort_keys=True) + "\n")
    return out


def read_catalog(cat_dir) -> tuple[dict, list[PreSemifield]]:
    """Load ``index.json`` and its representatives, checking the counts agree."""
    cat_dir = Path(cat_dir)
    path = cat_dir / "index.json"
    try:
        index = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise CatalogError(f"{path}: {exc}") from exc
    try:
        reps = [sfmod.load(cat_dir / r["file"]) for r in index["representatives"]]
        merged = index["merged_classes"]
        ok = (
            index["isotopism_class_count"] == len(reps)
            and index["iso_or_anti_class_count"] == len(merged)
            and sorted(k for g in merged for k in g) == list(range(len(reps)))
            and index["commutative_class_count"]
            == len({r["merged_class"] for r in index["representatives"] if r["isotopic_to_commutative"]})
        )
    except (KeyError, TypeError, OSError, sfmod.SemifieldFormatError) as exc:
        raise CatalogError(f"{path}: {exc}") from exc
    if not ok:
        raise CatalogError(f"{path}: class counts are inconsistent with the listed classes")
    return index, reps
