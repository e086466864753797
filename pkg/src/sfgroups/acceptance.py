"""Acceptance criteria as plain functions, shared by the test suite and the CLI."""

from __future__ import annotations

import time
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import numpy as np

from . import linalg
from .census import abelian_census, zv_analysis
from .characters import brauer_pair, char_tables_equal, character_table, table_row_count_matches
from .classify import enumerate_semifields
from .group import (
    SemifieldGroup,
    centralizer_orders,
    check_ses,
    element_orders,
    group_profile,
)
from .isomorphism import brute_force_isomorphic, groups_isomorphic_semifield
from .reference import table1_row
from .semifield import PreSemifield, make_field, opposite, seminuclei


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool | None  # None: skipped
    detail: str
    seconds: float

    def line(self) -> str:
        status = "SKIP" if self.passed is None else ("PASS" if self.passed else "FAIL")
        return f"[{status}] criterion {self.number}: {self.name} ({self.detail}; {self.seconds:.1f}s)"


def _timed(number: int, name: str, fn) -> CriterionResult:
    t0 = time.monotonic()
    passed, detail = fn()
    return CriterionResult(number, name, passed, detail, time.monotonic() - t0)


@lru_cache(maxsize=None)
def catalog(p: int, n: int, long_run: bool = False):
    return enumerate_semifields(p, n, long_run=long_run)


def _table_counts(p: int, n: int) -> tuple:
    row = table1_row(p, n)
    return (row.isotopism_classes, row.groups, row.commutative)


# ---------------------------------------------------------------------------


def criterion_enumeration(number: int, p: int, n: int, limit_secs: float, long_run: bool = False) -> CriterionResult:
    def run():
        t0 = time.monotonic()
        rep = enumerate_semifields(p, n, budget_secs=limit_secs, long_run=long_run)
        secs = time.monotonic() - t0
        want = _table_counts(p, n)
        ok = rep.complete and rep.counts() == want and secs <= limit_secs
        return ok, f"counts {rep.counts()} vs {want}, complete={rep.complete}"

    return _timed(number, f"order {p}^{n} classification", run)


def criterion_census() -> CriterionResult:
    def run():
        notes = []
        ok = True
        c8 = abelian_census(SemifieldGroup(make_field(2, 3)), "enumerate")
        ok &= c8.count == 9 and set(c8.intersection_profile) == {0}
        notes.append(f"G(GF(8)) {c8.count}")
        cat16 = catalog(2, 4)
        slow = 0.0
        for S in cat16.representatives:
            if S.is_associative():
                continue
            t1 = time.monotonic()
            c = abelian_census(SemifieldGroup(S), "enumerate")
            slow = max(slow, time.monotonic() - t1)
            ok &= c.count == 2 and c.candidates == 200_787
            notes.append(f"{S.label} {c.count}")
        cat27 = catalog(3, 3)
        for S in cat27.representatives:
            if S.is_associative():
                continue
            c = abelian_census(SemifieldGroup(S), "enumerate")
            ok &= c.count == 4
            notes.append(f"{S.label} {c.count}")
        ok &= slow <= 300
        return ok, ", ".join(notes) + f", slowest order-16 census {slow:.1f}s"

    return _timed(4, "census values", run)


def criterion_mid() -> CriterionResult:
    def run():
        ok = True
        notes = []
        for S in catalog(3, 3).representatives:
            if not S.is_commutative():
                continue
            mid = seminuclei(S).mid.order
            c = abelian_census(SemifieldGroup(S), "enumerate").count
            ok &= c == 1 + mid
            notes.append(f"{S.label}: {c} = 1 + {mid}")
        return ok, "; ".join(notes)

    return _timed(5, "census equals 1 + |Mid(F)|", run)


def _multiplication_table(G: SemifieldGroup):
    E = G.elements_array()
    w = G.p ** np.arange(E.shape[1], dtype=np.int64)
    codes = E @ w
    order = np.argsort(codes)
    sc = codes[order]
    idx = lambda X: order[np.searchsorted(sc, X @ w)]
    N = E.shape[0]
    I, J = np.meshgrid(np.arange(N), np.arange(N), indexing="ij")
    T = idx(G.mul_arrays(E[I.ravel()], E[J.ravel()])).reshape(N, N)
    return E, T, idx


def property_suite(G: SemifieldGroup, rng: np.random.Generator, samples: int = 100_000, exhaustive_limit: int = 729) -> list[str]:
    """Return a list of failure descriptions (empty when everything holds)."""
    fails = []
    p, n = G.p, G.n
    n2 = 2 * n
    if G.order <= exhaustive_limit:
        E, T, idx = _multiplication_table(G)
        N = E.shape[0]
        for a in range(N):
            if not np.array_equal(T[T[a], :], T[a][T]):
                fails.append("associativity")
                break
        ident = idx(np.zeros((1, 3 * n), dtype=np.int64))[0]
        inv = np.argmax(T == ident, axis=1)
        I, J = np.meshgrid(np.arange(N), np.arange(N), indexing="ij")
        definitional = T[T[inv[I], inv[J]], T[I, J]]
        closed = idx(G.commutator_arrays(E[I.ravel()], E[J.ravel()])).reshape(N, N)
        if not np.array_equal(definitional, closed):
            fails.append("commutator closed form")
        X = E
    else:
        X = G.random_elements(rng, samples)
        Y = G.random_elements(rng, samples)
        Z = G.random_elements(rng, samples)
        if not np.array_equal(G.mul_arrays(G.mul_arrays(X, Y), Z), G.mul_arrays(X, G.mul_arrays(Y, Z))):
            fails.append("associativity (sampled)")
        d = G.mul_arrays(G.mul_arrays(G.inv_arrays(X), G.inv_arrays(Y)), G.mul_arrays(X, Y))
        if not np.array_equal(d, G.commutator_arrays(X, Y)):
            fails.append("commutator closed form (sampled)")
    if p != 2:
        if np.any(G.power_arrays(X, p)):
            fails.append("exponent p")
    elif G.kernel.dim == 0:
        orders = element_orders(G, X[:, :n2])
        outside = np.any(X[:, :n] != 0, axis=1) & np.any(X[:, n:n2] != 0, axis=1)
        if not (np.all(orders[outside] == 4) and np.all(orders[~outside] <= 2)):
            fails.append("order 4 exactly outside A1 and A2")
    V = linalg.all_vectors(n2, p)[1:]
    if not np.all(centralizer_orders(G, V) == G.abelianization_order):
        fails.append("centralizer orders")
    try:
        if not check_ses(G, dichotomy=False).holds:
            fails.append("not semi-extraspecial")
    except AssertionError as exc:
        fails.append(f"definitions disagree: {exc}")
    return fails


def proper_quotients(F: PreSemifield):
    for k in range(1, F.n):
        for N in linalg.enumerate_subspaces(F.n, k, F.p):
            yield SemifieldGroup(F, N)


def criterion_properties(seed: int = 0) -> CriterionResult:
    def run():
        rng = np.random.default_rng(seed)
        groups = 0
        fails = []
        for p, n in [(2, 3), (2, 4), (3, 3)]:
            for S in catalog(p, n).representatives:
                for G in [SemifieldGroup(S), *proper_quotients(S)]:
                    groups += 1
                    for f in property_suite(G, rng):
                        fails.append(f"{S.label}/dimN={G.kernel.dim}: {f}")
        return not fails, f"{groups} groups, {len(fails)} failures" + (f": {fails[:3]}" if fails else "")

    return _timed(6, "group property suite", run)


def criterion_characters() -> CriterionResult:
    def run():
        F8 = make_field(2, 3)
        cat27 = catalog(3, 3).representatives
        G27 = [SemifieldGroup(S) for S in cat27]
        quotients = [
            SemifieldGroup(F8, linalg.subspace_canonical([[1, 0, 0]], 2, 3)),
            SemifieldGroup(F8, linalg.subspace_canonical([[1, 0, 0], [0, 1, 0]], 2, 3)),
            SemifieldGroup(cat27[1], linalg.subspace_canonical([[0, 0, 1]], 3, 3)),
        ]
        ok = True
        for G in [SemifieldGroup(F8), *G27, *quotients]:
            T = character_table(G)
            ok &= T.first_orthogonality() and T.second_orthogonality() and table_row_count_matches(G, T)
        eq = char_tables_equal(G27[0], G27[1]).holds
        bp = brauer_pair(G27[0], G27[1]).holds
        return ok and eq and bp, f"orthogonality/rows {ok}, tables equal {eq}, Brauer pair {bp}"

    return _timed(7, "character tables", run)


def criterion_zv() -> CriterionResult:
    def run():
        t0 = time.monotonic()
        notes = []
        ok = True
        for S in catalog(3, 3).representatives:
            z = zv_analysis(SemifieldGroup(S))
            ok &= z.holds
            notes.append(f"{S.label}: r={z.r}, m={z.m}, ks={sorted({k for _, k in z.members})}")
        secs = time.monotonic() - t0
        return ok and secs <= 600, "; ".join(notes)

    return _timed(8, "Z(v) covering analysis", run)


def fingerprint(F: PreSemifield):
    G = SemifieldGroup(F)
    c = abelian_census(G)
    return group_profile(G, c.count), c.count


def criterion_isomorphism() -> CriterionResult:
    def run():
        reps = catalog(2, 4).representatives
        fps = [fingerprint(S) for S in reps]
        agree = True
        for i, j in combinations(range(len(reps)), 2):
            iso = groups_isomorphic_semifield(reps[i], reps[j]).holds
            agree &= iso == (fps[i] == fps[j])
        F = noncommutative_order8()
        bf = brute_force_isomorphic(SemifieldGroup(F), SemifieldGroup(opposite(F))).holds
        return agree and bf, f"pairwise agreement {agree}, G(F) ~ G(F^op) by brute force {bf}"

    return _timed(9, "isomorphism consistency", run)


def noncommutative_order8() -> PreSemifield:
    """``x * y = x y^2`` in GF(8): a non-commutative pre-semifield."""
    K = make_field(2, 3)
    eye = np.eye(3, dtype=np.int64)
    sq = K.multiply(eye, eye)  # e_j^2
    cube = K.multiply(eye[:, None, :], sq[None, :, :])
    return PreSemifield(2, cube, "GF(8) x*y^2")


def run_all(long_run: bool = False, budget_secs: float = 86_400) -> list[CriterionResult]:
    results = [
        criterion_enumeration(1, 2, 4, 1800),
        criterion_enumeration(2, 3, 3, 3600),
    ]
    if long_run:
        results.append(criterion_enumeration(3, 2, 5, budget_secs, long_run=True))
    else:
        results.append(CriterionResult(3, "order 2^5 classification", None, "needs the long-run flag", 0.0))
    results += [
        criterion_census(),
        criterion_mid(),
        criterion_properties(),
        criterion_characters(),
        criterion_zv(),
        criterion_isomorphism(),
    ]
    return results
