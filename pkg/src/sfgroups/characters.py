"""Exact character tables of semi-extraspecial semifield groups.

A value is ``coef * w^expo`` with ``w = exp(2 pi i / p)``; a zero value has
``coef = 0``.  Sums of such values are kept as count vectors over the
exponents 0..p-1 and compared to integers using ``1 + w + ... + w^(p-1) = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .group import SemifieldGroup, Verdict, check_ses, class_count, group_profile, order_structure
from .linalg import DTYPE


@dataclass
class CharacterTable:
    p: int
    class_reps: np.ndarray  # (k, 3n) group elements
    class_sizes: np.ndarray  # (k,)
    degrees: np.ndarray  # (k,)
    coef: np.ndarray  # (k, k) rows = characters, columns = classes
    expo: np.ndarray  # (k, k)
    group_order: int
    centralizer_orders: np.ndarray = field(default=None)

    @property
    def size(self) -> int:
        return self.degrees.size

    def _onehot(self) -> np.ndarray:
        oh = np.zeros(self.coef.shape + (self.p,), dtype=DTYPE)
        r, c = np.indices(self.coef.shape)
        oh[r, c, self.expo % self.p] = self.coef
        return oh

    def inner_product_counts(self) -> np.ndarray:
        """``out[i, j, e]``: coefficient of ``w^e`` in ``sum_g |cl(g)| chi_i(g) conj(chi_j(g))``."""
        oh = self._onehot()
        p = self.p
        out = np.zeros((self.size, self.size, p), dtype=DTYPE)
        for e1 in range(p):
            left = oh[:, :, e1] * self.class_sizes[None, :]
            for e2 in range(p):
                out[:, :, (e1 - e2) % p] += left @ oh[:, :, e2].T
        return out

    def column_counts(self) -> np.ndarray:
        """``out[g, h, e]``: coefficient of ``w^e`` in ``sum_chi chi(g) conj(chi(h))``."""
        oh = self._onehot()
        p = self.p
        out = np.zeros((self.size, self.size, p), dtype=DTYPE)
        for e1 in range(p):
            for e2 in range(p):
                out[:, :, (e1 - e2) % p] += oh[:, :, e1].T @ oh[:, :, e2]
        return out

    def first_orthogonality(self) -> bool:
        target = self.group_order * np.eye(self.size, dtype=DTYPE)
        return bool(np.array_equal(counts_to_integers(self.inner_product_counts()), target))

    def second_orthogonality(self) -> bool:
        target = np.diag(self.centralizer_orders).astype(DTYPE)
        return bool(np.array_equal(counts_to_integers(self.column_counts()), target))


def counts_to_integers(counts: np.ndarray) -> np.ndarray:
    """Integer value of each count vector; raises if some entry is not an integer.

    ``sum c_e w^e`` is the integer ``c_0 - c_1`` exactly when ``c_1 = ... = c_(p-1)``.
    """
    rest = counts[..., 1:]
    if not np.all(rest == rest[..., :1]):
        raise ArithmeticError("value is not a rational integer")
    return counts[..., 0] - counts[..., 1]


def character_table(G: SemifieldGroup) -> CharacterTable:
    """Linear characters from the dual of G/G' and ``|G'| - 1`` characters of degree ``sqrt|G:G'|``."""
    if not check_ses(G, dichotomy=False).holds:
        raise ValueError("character_table needs a semi-extraspecial group")
    p, n, b = G.p, G.n, G.b
    V = linalg.all_vectors(2 * n, p)
    Cb = linalg.all_vectors(b, p)  # F/N coordinates
    free = [j for j in range(n) if j not in G.kernel.pivots]
    cent = np.zeros((Cb.shape[0], n), dtype=DTYPE)
    cent[:, free] = Cb
    # classes: central (0, 0, c), then cosets (v, 0) G' for v != 0
    reps = np.concatenate(
        [
            np.concatenate([np.zeros((Cb.shape[0], 2 * n), DTYPE), cent], axis=1),
            np.concatenate([V[1:], np.zeros((V.shape[0] - 1, n), DTYPE)], axis=1),
        ]
    )
    k = reps.shape[0]
    sizes = np.concatenate([np.ones(Cb.shape[0], DTYPE), np.full(V.shape[0] - 1, p**b, DTYPE)])
    deg_nl = p**n
    # linear characters lambda in dual(V): value w^(lambda . v), 1 on central classes
    lin_expo = np.concatenate([np.zeros((V.shape[0], Cb.shape[0]), DTYPE), (V @ V[1:].T) % p], axis=1)
    lin_coef = np.ones_like(lin_expo)
    # nonlinear mu in dual(F/N) minus 0: p^n w^(mu . c) on centre, 0 elsewhere
    mus = Cb[1:]
    nl_expo = np.concatenate([(mus @ Cb.T) % p, np.zeros((mus.shape[0], V.shape[0] - 1), DTYPE)], axis=1)
    nl_coef = np.concatenate(
        [np.full((mus.shape[0], Cb.shape[0]), deg_nl, DTYPE), np.zeros((mus.shape[0], V.shape[0] - 1), DTYPE)], axis=1
    )
    coef = np.concatenate([lin_coef, nl_coef])
    expo = np.concatenate([lin_expo, nl_expo])
    degrees = np.concatenate([np.ones(V.shape[0], DTYPE), np.full(mus.shape[0], deg_nl, DTYPE)])
    if coef.shape != (k, k):
        raise AssertionError("character table is not square")
    table = CharacterTable(p, reps, sizes, degrees, coef, expo, G.order, G.order // sizes)
    return table


def _table_signature(T: CharacterTable):
    cols = sorted(
        (int(s), tuple(sorted(zip(T.coef[:, j].tolist(), T.expo[:, j].tolist())))) for j, s in enumerate(T.class_sizes)
    )
    return T.p, tuple(sorted(T.degrees.tolist())), tuple(cols)


def char_tables_equal(G: SemifieldGroup, H: SemifieldGroup) -> Verdict:
    """Same character table iff ``|G:G'| = |H:H'|`` and ``|G'| = |H'|`` (s.e.s. groups)."""
    if not check_ses(G, dichotomy=False).holds or not check_ses(H, dichotomy=False).holds:
        raise ValueError("char_tables_equal needs semi-extraspecial groups")
    orders = G.p == H.p and G.abelianization_order == H.abelianization_order and G.derived_order == H.derived_order
    same_sig = _table_signature(character_table(G)) == _table_signature(character_table(H))
    if orders != same_sig:
        raise AssertionError("table signatures disagree with the order criterion")
    return Verdict(orders, {"orders_match": orders, "table_signatures_match": same_sig})


def brauer_pair(G: SemifieldGroup, H: SemifieldGroup, non_isomorphic: bool | None = None) -> Verdict:
    """Odd p: equal tables and equal ``|Agemo_1|`` for non-isomorphic G, H.

    Non-isomorphism comes from a difference of group profiles (census count
    included) or, failing that, from the caller's ``non_isomorphic`` flag.
    """
    if G.p == 2 or H.p == 2:
        raise ValueError("brauer_pair needs an odd prime")
    tables = char_tables_equal(G, H).holds
    ag = order_structure(G).agemo_order == order_structure(H).agemo_order
    certificate = group_profile(G) != group_profile(H)
    if not certificate:
        if non_isomorphic is None:
            raise ValueError("no non-isomorphism certificate; pass non_isomorphic explicitly")
        certificate = bool(non_isomorphic)
    checks = {"char_tables_equal": tables, "agemo_orders_match": ag, "non_isomorphic": certificate}
    return Verdict(all(checks.values()), checks)


def table_row_count_matches(G: SemifieldGroup, T: CharacterTable) -> bool:
    return T.size == class_count(G) == G.abelianization_order + G.derived_order - 1
