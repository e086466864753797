"""Isomorphism of semifield groups: via semifields, and a small brute-force oracle."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .classify import IsotopismWitness, are_anti_isotopic, are_isotopic
from .group import SemifieldGroup, element_orders
from .linalg import DTYPE
from .semifield import PreSemifield

BRUTE_FORCE_LIMIT = 512


@dataclass
class IsomorphismVerdict:
    holds: bool
    witness: IsotopismWitness | None = None
    images: np.ndarray | None = None  # brute force: image of each generator

    def __bool__(self) -> bool:
        return self.holds


def groups_isomorphic_semifield(F1: PreSemifield, F2: PreSemifield, method: str = "spread") -> IsomorphismVerdict:
    """G(F1) and G(F2) are isomorphic iff F1, F2 are isotopic or anti-isotopic."""
    w = are_isotopic(F1, F2, method) or are_anti_isotopic(F1, F2, method)
    return IsomorphismVerdict(w is not None, w)


class _Table:
    """Materialised element list and multiplication table."""

    def __init__(self, G: SemifieldGroup):
        if G.order > BRUTE_FORCE_LIMIT:
            raise ValueError(f"brute force is limited to groups of order <= {BRUTE_FORCE_LIMIT}")
        self.G = G
        self.elems = G.elements_array()
        self.N = self.elems.shape[0]
        self.weights = G.p ** np.arange(self.elems.shape[1], dtype=DTYPE)
        codes = self.elems @ self.weights
        self.order_by_code = np.argsort(codes)
        self.sorted_codes = codes[self.order_by_code]
        I, J = np.meshgrid(np.arange(self.N), np.arange(self.N), indexing="ij")
        prod = G.mul_arrays(self.elems[I.ravel()], self.elems[J.ravel()])
        self.mul = self.index(prod).reshape(self.N, self.N)
        n2 = 2 * G.n
        self.orders = np.ones(self.N, dtype=DTYPE)
        V = self.elems[:, :n2]
        nz = np.any(V != 0, axis=1)
        self.orders[nz] = element_orders(G, V[nz])
        central = ~nz & np.any(self.elems != 0, axis=1)
        self.orders[central] = G.p
        self.identity = int(self.index(np.zeros((1, self.elems.shape[1]), DTYPE))[0])

    def index(self, X) -> np.ndarray:
        codes = np.asarray(X, dtype=DTYPE) @ self.weights
        return self.order_by_code[np.searchsorted(self.sorted_codes, codes)]

    def power(self, i: int, m: int) -> int:
        out = self.identity
        for _ in range(m):
            out = int(self.mul[out, i])
        return out

    def inverse(self, i: int) -> int:
        return int(np.nonzero(self.mul[i] == self.identity)[0][0])

    def commutator(self, i: int, j: int) -> int:
        return int(self.mul[self.mul[self.inverse(i), self.inverse(j)], self.mul[i, j]])


def _histogram(T: _Table) -> dict[int, int]:
    vals, counts = np.unique(T.orders, return_counts=True)
    return dict(zip(vals.tolist(), counts.tolist()))


def _derived_coords(T: _Table, i: int) -> np.ndarray:
    """Coordinates in F/N of a central element."""
    G = T.G
    return (T.elems[i, 2 * G.n :] @ G.Q.T) % G.p


def _consistent(pairs: list[tuple[np.ndarray, np.ndarray]], p: int) -> bool:
    """The relation spanned by ``pairs`` is the graph of an injective linear map."""
    if not pairs:
        return True
    X = np.array([x for x, _ in pairs])
    Y = np.array([y for _, y in pairs])
    rx, ry = linalg.mat_rank(X, p), linalg.mat_rank(Y, p)
    return rx == ry == linalg.mat_rank(np.hstack([X, Y]), p)


def brute_force_isomorphic(G: SemifieldGroup, H: SemifieldGroup) -> IsomorphismVerdict:
    """Backtracking search for an isomorphism, for groups of order at most 512.

    Generators are lifts of a basis of G/G'.  Their images are taken as
    ``(w, 0)`` with w running over F x F of H: composing with a central
    automorphism of H moves any isomorphism into this form, since both groups
    are special with elementary abelian G/G'.  Orders must match, images must
    be independent modulo H', and the induced map on squares and commutators
    must extend to an injective linear map between the derived subgroups.
    """
    TG, TH = _Table(G), _Table(H)
    p = G.p
    if TG.N != TH.N or G.p != H.p:
        return IsomorphismVerdict(False)
    if _histogram(TG) != _histogram(TH) or G.derived_order != H.derived_order:
        return IsomorphismVerdict(False)
    n2 = 2 * G.n
    eyeG = np.concatenate([np.eye(n2, dtype=DTYPE), np.zeros((n2, G.n), DTYPE)], axis=1)
    gens = [int(g) for g in TG.index(eyeG)]
    Vh = linalg.all_vectors(2 * H.n, p)[1:]
    cand = [int(h) for h in TH.index(np.concatenate([Vh, np.zeros((Vh.shape[0], H.n), DTYPE)], axis=1))]
    g_pows = [TG.power(g, p) for g in gens]
    g_comm = {(i, j): TG.commutator(gens[i], gens[j]) for i in range(n2) for j in range(i)}
    h_pow = {h: TH.power(h, p) for h in cand}

    def extend(chosen: list[int], vparts: list[np.ndarray], pairs):
        k = len(chosen)
        if k == n2:
            return _build(TG, TH, gens, chosen)
        for h, w in zip(cand, Vh):
            if TH.orders[h] != TG.orders[gens[k]]:
                continue
            if vparts and linalg.mat_rank(np.vstack(vparts + [w]), p) != k + 1:
                continue
            new = [(_derived_coords(TG, g_pows[k]), _derived_coords(TH, h_pow[h]))]
            for i in range(k):
                new.append((_derived_coords(TG, g_comm[(k, i)]), _derived_coords(TH, TH.commutator(h, chosen[i]))))
            if not _consistent(pairs + new, p):
                continue
            res = extend(chosen + [h], vparts + [w], pairs + new)
            if res is not None:
                return res
        return None

    images = extend([], [], [])
    if images is None:
        return IsomorphismVerdict(False)
    return IsomorphismVerdict(True, images=TH.elems[images])


def _build(TG: _Table, TH: _Table, gens: list[int], imgs: list[int]):
    """Extend generator images along the Cayley graph; check a bijective homomorphism."""
    phi = -np.ones(TG.N, dtype=DTYPE)
    phi[TG.identity] = TH.identity
    frontier = [TG.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g, h in zip(gens, imgs):
                y = TG.mul[x, g]
                val = TH.mul[phi[x], h]
                if phi[y] < 0:
                    phi[y] = val
                    nxt.append(y)
                elif phi[y] != val:
                    return None
        frontier = nxt
    if (phi < 0).any() or np.unique(phi).size != TG.N:
        return None
    if not np.array_equal(phi[TG.mul], TH.mul[phi[:, None], phi[None, :]]):
        return None
    return imgs
