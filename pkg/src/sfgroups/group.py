"""The semifield group G(F) and its central quotients.

Elements are triples ``(a, b, c)`` with ``a, b`` in F and ``c`` in F/N, where
N is a subspace of F (the central kernel, zero for G(F) itself) and ``c`` is
kept as the canonical coset representative.  The product is

    (a1, b1, c1)(a2, b2, c2) = (a1 + a2, b1 + b2, c1 + c2 + a1 * b2).

Everything structural is computed with linear algebra on ``V = F x F``
(a copy of G/G') and the commutator form ``beta(v, w) = a1*b2 - a2*b1``
taken modulo N.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

import numpy as np

from . import linalg
from .linalg import DTYPE, Subspace
from .semifield import PreSemifield


class InconsistencyError(AssertionError):
    """Two routes to the same group-theoretic property disagree."""


@dataclass(frozen=True)
class GroupElement:
    a: tuple[int, ...]
    b: tuple[int, ...]
    c: tuple[int, ...]

    def as_array(self) -> np.ndarray:
        return np.array(self.a + self.b + self.c, dtype=DTYPE)


class SemifieldGroup:
    def __init__(self, F: PreSemifield, kernel: Subspace | None = None):
        self.F = F
        self.p, self.n = F.p, F.n
        if kernel is None:
            kernel = linalg.zero_subspace(self.n, self.p)
        if kernel.ambient != self.n or kernel.p != self.p:
            raise ValueError("kernel must be a subspace of F")
        if kernel.dim >= self.n:
            raise ValueError("quotient by all of F is abelian")
        self.kernel = kernel
        self.b = self.n - kernel.dim
        self.Q = kernel.complement_coordinates()  # F -> F/N coordinates
        self._form = None

    def __repr__(self) -> str:
        return f"<SemifieldGroup of order {self.p}^{2 * self.n + self.b} over {self.F!r}>"

    # -- orders -----------------------------------------------------------

    @property
    def order(self) -> int:
        return self.p ** (2 * self.n + self.b)

    @property
    def abelianization_order(self) -> int:
        return self.p ** (2 * self.n)

    @property
    def derived_order(self) -> int:
        return self.p**self.b

    # -- element arithmetic ---------------------------------------------------

    def element(self, a, b, c=None) -> GroupElement:
        n, p = self.n, self.p
        a = linalg.as_fp(a, p).reshape(n)
        b = linalg.as_fp(b, p).reshape(n)
        c = np.zeros(n, dtype=DTYPE) if c is None else linalg.as_fp(c, p).reshape(n)
        c = self.kernel.reduce(c)
        return GroupElement(tuple(map(int, a)), tuple(map(int, b)), tuple(map(int, c)))

    def identity(self) -> GroupElement:
        z = (0,) * self.n
        return GroupElement(z, z, z)

    def _from_array(self, x) -> GroupElement:
        n = self.n
        return GroupElement(tuple(map(int, x[:n])), tuple(map(int, x[n : 2 * n])), tuple(map(int, x[2 * n :])))

    def mul_arrays(self, X, Y) -> np.ndarray:
        """Vectorised product of element arrays of shape ``(..., 3n)``."""
        n, p = self.n, self.p
        X = np.asarray(X, dtype=DTYPE)
        Y = np.asarray(Y, dtype=DTYPE)
        ab = (X[..., : 2 * n] + Y[..., : 2 * n]) % p
        c = X[..., 2 * n :] + Y[..., 2 * n :] + self.F.multiply(X[..., :n], Y[..., n : 2 * n])
        c = self.kernel.reduce(c % p)
        return np.concatenate([ab, c], axis=-1)

    def inv_arrays(self, X) -> np.ndarray:
        n, p = self.n, self.p
        X = np.asarray(X, dtype=DTYPE)
        ab = (-X[..., : 2 * n]) % p
        c = (-X[..., 2 * n :] + self.F.multiply(X[..., :n], X[..., n : 2 * n])) % p
        return np.concatenate([ab, self.kernel.reduce(c)], axis=-1)

    def multiply(self, g: GroupElement, h: GroupElement) -> GroupElement:
        return self._from_array(self.mul_arrays(g.as_array(), h.as_array()))

    def inverse(self, g: GroupElement) -> GroupElement:
        """``(-a, -b, -c + a*b)``."""
        return self._from_array(self.inv_arrays(g.as_array()))

    def commutator_arrays(self, X, Y) -> np.ndarray:
        """Closed form ``[g, h] = (0, 0, a1*b2 - a2*b1 mod N)``."""
        n, p = self.n, self.p
        X = np.asarray(X, dtype=DTYPE)
        Y = np.asarray(Y, dtype=DTYPE)
        c = (self.F.multiply(X[..., :n], Y[..., n : 2 * n]) - self.F.multiply(Y[..., :n], X[..., n : 2 * n])) % p
        zeros = np.zeros(X.shape[:-1] + (2 * n,), dtype=DTYPE)
        return np.concatenate([zeros, self.kernel.reduce(c)], axis=-1)

    def commutator(self, g: GroupElement, h: GroupElement) -> GroupElement:
        return self._from_array(self.commutator_arrays(g.as_array(), h.as_array()))

    def power_arrays(self, X, m: int) -> np.ndarray:
        """Closed form ``g^m = (m a, m b, m c + C(m, 2) a*b)``."""
        if m < 0:
            raise ValueError("exponent must be non-negative")
        n, p = self.n, self.p
        X = np.asarray(X, dtype=DTYPE)
        ab = (m * X[..., : 2 * n]) % p
        c = (m * X[..., 2 * n :] + (comb(m, 2) % p) * self.F.multiply(X[..., :n], X[..., n : 2 * n])) % p
        return np.concatenate([ab, self.kernel.reduce(c)], axis=-1)

    def power(self, g: GroupElement, m: int) -> GroupElement:
        return self._from_array(self.power_arrays(g.as_array(), m))

    def elements_array(self) -> np.ndarray:
        """All elements as rows; only sensible for small groups."""
        n, p = self.n, self.p
        V = linalg.all_vectors(2 * n, p)
        C = self.center_elements()
        out = np.concatenate(
            [np.repeat(V, C.shape[0], axis=0), np.tile(C, (V.shape[0], 1))], axis=1
        )
        return out

    def center_elements(self) -> np.ndarray:
        """Canonical representatives of F/N."""
        coords = linalg.all_vectors(self.b, self.p)
        free = [j for j in range(self.n) if j not in self.kernel.pivots]
        C = np.zeros((coords.shape[0], self.n), dtype=DTYPE)
        C[:, free] = coords
        return C

    def random_elements(self, rng: np.random.Generator, size: int) -> np.ndarray:
        X = rng.integers(0, self.p, size=(size, 3 * self.n))
        X[:, 2 * self.n :] = self.kernel.reduce(X[:, 2 * self.n :])
        return X.astype(DTYPE)

    # -- commutator form ------------------------------------------------------

    def form(self) -> np.ndarray:
        """``B[s, t]`` = commutator of basis vectors ``s, t`` of V, in F/N coordinates."""
        if self._form is None:
            n, p = self.n, self.p
            cube = self.F.cube
            B = np.zeros((2 * n, 2 * n, n), dtype=DTYPE)
            B[:n, n:] = cube
            B[n:, :n] = (-cube.transpose(1, 0, 2)) % p
            self._form = np.einsum("stk,bk->stb", B, self.Q) % p
        return self._form

    def form_matrices(self, V) -> np.ndarray:
        """For each row ``v``: the ``b x 2n`` matrix of ``w -> beta(v, w)``."""
        V = np.asarray(V, dtype=DTYPE)
        return np.einsum("ms,stb->mbt", V.reshape(-1, 2 * self.n), self.form()) % self.p

    def beta(self, V, W) -> np.ndarray:
        return np.einsum("...s,...t,stb->...b", V, W, self.form()) % self.p

    def square_map(self, V) -> np.ndarray:
        """``a * b`` in F/N coordinates for ``v = (a, b)``."""
        V = np.asarray(V, dtype=DTYPE)
        n = self.n
        return (self.F.multiply(V[..., :n], V[..., n:]) @ self.Q.T) % self.p

    def quotient(self, N2: Subspace) -> "SemifieldGroup":
        if not self.kernel <= N2:
            raise ValueError("new kernel must contain the current one")
        if N2.dim >= self.n:
            raise ValueError("quotient by all of F is abelian")
        return SemifieldGroup(self.F, N2)

    def lift_kernel(self, H: Subspace) -> Subspace:
        """Subspace of F that maps onto ``H`` (a subspace of F/N coordinates)."""
        free = [j for j in range(self.n) if j not in self.kernel.pivots]
        rows = np.zeros((H.dim, self.n), dtype=DTYPE)
        if H.dim:
            rows[:, free] = H.basis
        return linalg.subspace_canonical(np.vstack([self.kernel.basis, rows]), self.p, self.n)


# ---------------------------------------------------------------------------
# element-level operations


def group_multiply(G: SemifieldGroup, g1: GroupElement, g2: GroupElement) -> GroupElement:
    return G.multiply(g1, g2)


def group_inverse(G: SemifieldGroup, g: GroupElement) -> GroupElement:
    return G.inverse(g)


def commutator(G: SemifieldGroup, g1: GroupElement, g2: GroupElement) -> GroupElement:
    return G.commutator(g1, g2)


def power(G: SemifieldGroup, g: GroupElement, m: int) -> GroupElement:
    return G.power(g, m)


def _ab(g) -> np.ndarray:
    if isinstance(g, GroupElement):
        return np.array(g.a + g.b, dtype=DTYPE)
    return np.asarray(g, dtype=DTYPE)


def centralizer_order(G: SemifieldGroup, g) -> int:
    """``p^b * |{w : beta(v, w) in N}|`` for ``g = (v, c)``."""
    M = G.form_matrices(_ab(g)[None, : 2 * G.n])[0]
    return G.derived_order * G.p ** (2 * G.n - linalg.mat_rank(M, G.p))


def centralizer_orders(G: SemifieldGroup, V) -> np.ndarray:
    ranks = linalg.batch_rank(G.form_matrices(V), G.p)
    return G.derived_order * G.p ** (2 * G.n - ranks)


def class_sizes(G: SemifieldGroup, V) -> np.ndarray:
    """Conjugacy class sizes of ``(v, c)``: the span of ``{[g, y]}`` over a basis of ``y``."""
    V = np.asarray(V, dtype=DTYPE).reshape(-1, 2 * G.n)
    basis = np.eye(2 * G.n, dtype=DTYPE)
    comms = G.beta(V[:, None, :], basis[None, :, :])  # (m, 2n, b) generators of the class offsets
    return G.p ** linalg.batch_rank(comms, G.p)


def radical(G: SemifieldGroup) -> Subspace:
    """``{v : beta(v, .) = 0 mod N}``: the image of Z(G) in V."""
    n2 = 2 * G.n
    A = G.form().transpose(1, 2, 0).reshape(-1, n2)  # rows (t, b), columns s
    return linalg.subspace_canonical(linalg.nullspace(A, G.p), G.p, n2)


def derived_subspace(G: SemifieldGroup) -> Subspace:
    """Span of all commutator values, in F/N coordinates."""
    vals = G.form().reshape(-1, G.b)
    return linalg.subspace_canonical(vals, G.p, G.b)


def agemo_subspace(G: SemifieldGroup) -> Subspace:
    """Span of all p-th powers (all central), in F/N coordinates."""
    p = G.p
    if G.b == 0:
        return linalg.zero_subspace(0, p)
    V = linalg.all_vectors(2 * G.n, p)
    coef = comb(p, 2) % p
    vals = (coef * G.square_map(V)) % p
    return linalg.subspace_canonical(vals, p, G.b)


def element_orders(G: SemifieldGroup, V, c_zero: bool = True) -> np.ndarray:
    """Order of ``(v, 0)`` for each row ``v`` via the closed power formula."""
    p = G.p
    V = np.asarray(V, dtype=DTYPE).reshape(-1, 2 * G.n)
    X = np.concatenate([V, np.zeros((V.shape[0], G.n), dtype=DTYPE)], axis=1)
    orders = np.ones(V.shape[0], dtype=DTYPE)
    todo = np.any(X != 0, axis=1)
    m = 1
    while todo.any():
        m *= p
        Y = G.power_arrays(X[todo], m)
        done = ~np.any(Y != 0, axis=1)
        idx = np.nonzero(todo)[0]
        orders[idx[done]] = m
        todo[idx[done]] = False
        if m > p**4:
            raise AssertionError("element order exceeds p^4")
    return orders


@dataclass
class OrderStructure:
    exponent: int
    omega_order: int
    agemo_order: int
    histogram: dict[int, int]


def order_structure(G: SemifieldGroup) -> OrderStructure:
    """Exponent, |Omega_1|, |Agemo_1| and the element-order histogram.

    The order of ``(v, c)`` only depends on ``c`` when ``v = 0``, where the
    element is central of order 1 or p.
    """
    p, n, b = G.p, G.n, G.b
    V = linalg.all_vectors(2 * n, p)[1:]
    orders = element_orders(G, V)
    hist: dict[int, int] = {1: 1}
    if b:
        hist[p] = p**b - 1
    for o, cnt in zip(*np.unique(orders, return_counts=True)):
        hist[int(o)] = hist.get(int(o), 0) + int(cnt) * p**b
    exponent = max(hist)
    # Omega_1 contains all of G' (central of order <= p), so it is span{v of order p} x G'
    low = V[orders == p]
    omega_dim = linalg.mat_rank(low, p) if low.size else 0
    return OrderStructure(
        exponent=exponent,
        omega_order=p ** (omega_dim + b),
        agemo_order=agemo_subspace(G).order,
        histogram=dict(sorted(hist.items())),
    )


def class_count(G: SemifieldGroup) -> int:
    """k(G) = sum over v in V of |G'| / |class offsets of v|."""
    V = linalg.all_vectors(2 * G.n, G.p)
    sizes = class_sizes(G, V)
    return int(np.sum(G.derived_order // sizes))


# ---------------------------------------------------------------------------
# structural checks


@dataclass
class Verdict:
    holds: bool
    checks: dict[str, bool] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.holds


def check_special(G: SemifieldGroup) -> Verdict:
    """G' = Z(G) = Phi(G), with G nonabelian."""
    Gp = derived_subspace(G)
    Z = radical(G)
    ag = agemo_subspace(G)
    checks = {
        "nonabelian": G.b > 0 and Gp.dim > 0,
        "derived_is_all_of_F/N": Gp.dim == G.b,
        "center_equals_derived": Z.dim == 0,
        "agemo_in_derived": ag <= Gp if G.b else True,  # Phi = G' Agemo_1
        "derived_elementary_abelian": True,  # (0,0,c)^p = (0,0,pc)
        "quotient_elementary_abelian": bool(
            not G.power_arrays(np.eye(2 * G.n, 3 * G.n, dtype=DTYPE), G.p)[:, : 2 * G.n].any()
        ),
    }
    return Verdict(all(checks.values()), checks)


def check_extraspecial(G: SemifieldGroup) -> Verdict:
    v = check_special(G)
    checks = dict(v.checks, derived_order_p=G.b == 1)
    return Verdict(v.holds and G.b == 1, checks)


def _hyperplane_kernels(G: SemifieldGroup) -> list[Subspace]:
    if G.b == 0:
        return []
    return [G.lift_kernel(H) for H in linalg.enumerate_subspaces(G.b, G.b - 1, G.p)]


def ses_by_quotients(G: SemifieldGroup) -> bool:
    """Every quotient by a maximal subgroup of Z(G) = G' is extraspecial."""
    if not check_special(G):
        return False
    return all(check_extraspecial(SemifieldGroup(G.F, N)).holds for N in _hyperplane_kernels(G))


def ses_by_centralizers(G: SemifieldGroup) -> bool:
    """|C_G(g)| = |G:G'| for every g outside G'."""
    V = linalg.all_vectors(2 * G.n, G.p)[1:]
    return bool(np.all(centralizer_orders(G, V) == G.abelianization_order))


def camina_property(G: SemifieldGroup) -> bool:
    """Class of every g outside G' is the whole coset gG'."""
    V = linalg.all_vectors(2 * G.n, G.p)[1:]
    return bool(np.all(class_sizes(G, V) == G.derived_order))


def normal_dichotomy(G: SemifieldGroup) -> bool:
    """Each normal subgroup in the tested family contains G' or lies in G'.

    Family: all central subspaces, and ``<g> K`` for every noncentral ``g``
    and every subspace ``K`` of G'.  Such a subgroup meets G' in
    ``K + <g^p>`` and is normal iff it contains every ``[g, y]``.
    """
    p, b = G.p, G.b
    V = linalg.all_vectors(2 * G.n, p)[1:]
    Ks = list(linalg.all_subspaces(b, p))
    mats = G.form_matrices(V)
    pw = ((comb(p, 2) % p) * G.square_map(V)) % p
    for v_idx in range(V.shape[0]):
        offsets = mats[v_idx].T  # rows span [g, G]
        for K in Ks:
            inter = linalg.subspace_canonical(np.vstack([K.basis, pw[v_idx][None, :]]), p, b)
            normal = all(inter.contains(r) for r in offsets)
            if normal and inter.dim != b:
                return False
    return True


def check_ses(G: SemifieldGroup, dichotomy: bool = True) -> Verdict:
    """Semi-extraspecial, decided two ways that must agree."""
    special = check_special(G).holds
    by_quot = ses_by_quotients(G)
    by_cent = special and ses_by_centralizers(G)
    if by_quot != by_cent:
        raise InconsistencyError(
            f"quotient definition says {by_quot}, centralizer definition says {by_cent}"
        )
    checks = {
        "special": special,
        "quotient_definition": by_quot,
        "centralizer_definition": by_cent,
        "camina": camina_property(G),
    }
    if special:
        if checks["camina"] != by_cent:
            raise InconsistencyError("Camina class condition disagrees with centralizer condition")
    if dichotomy:
        checks["normal_dichotomy"] = normal_dichotomy(G)
    return Verdict(by_quot, checks)


def check_ultraspecial(G: SemifieldGroup) -> Verdict:
    v = check_ses(G, dichotomy=False)
    checks = dict(v.checks, derived_is_sqrt_index=G.b == G.n)
    return Verdict(v.holds and G.b == G.n, checks)


def is_abelian_group(G: SemifieldGroup) -> bool:
    return derived_subspace(G).dim == 0


def restricted_radical(G: SemifieldGroup, v) -> Subspace:
    """Radical of the commutator form on ``K_v = {w : beta(v, w) in N}``.

    ``Z(C_G(g))`` for ``g = (v, c)`` is this subspace times G'.
    """
    p, n2 = G.p, 2 * G.n
    M = G.form_matrices(np.asarray(v, dtype=DTYPE)[None, :])[0]
    K = linalg.nullspace(M, p)  # basis of K_v as rows
    if K.shape[0] == 0:
        return linalg.zero_subspace(n2, p)
    # w = x K with beta(w, K_i) = 0 for all i
    BK = np.einsum("is,stb->itb", K, G.form()) % p  # beta(K_i, .)
    A = np.einsum("jt,itb->jib", K, BK) % p  # beta(K_i, K_j)
    coeffs = linalg.nullspace(A.transpose(1, 2, 0).reshape(-1, K.shape[0]) % p, p)
    return linalg.subspace_canonical((coeffs @ K) % p if coeffs.size else coeffs.reshape(0, n2), p, n2)


def center_of_centralizer_order(G: SemifieldGroup, g) -> int:
    return G.derived_order * restricted_radical(G, _ab(g)[: 2 * G.n]).order


@dataclass(frozen=True)
class GroupProfile:
    order: int
    abelianization_order: int
    derived_order: int
    exponent: int
    agemo_order: int
    omega_order: int
    class_count: int
    census_count: int
    order_histogram: tuple[tuple[int, int], ...]
    # |Z(C_G(g))| -> number of noncentral g with that value
    centralizer_center_histogram: tuple[tuple[int, int], ...] = ()

    def to_json_obj(self) -> dict:
        return {
            "order": self.order,
            "abelianization_order": self.abelianization_order,
            "derived_order": self.derived_order,
            "exponent": self.exponent,
            "agemo_order": self.agemo_order,
            "omega_order": self.omega_order,
            "class_count": self.class_count,
            "census_count": self.census_count,
            "order_histogram": {str(k): v for k, v in self.order_histogram},
            "centralizer_center_histogram": {str(k): v for k, v in self.centralizer_center_histogram},
        }


def centralizer_center_histogram(G: SemifieldGroup) -> dict[int, int]:
    """Distribution of ``|Z(C_G(g))|`` over the noncentral elements g."""
    hist: dict[int, int] = {}
    for v in linalg.all_vectors(2 * G.n, G.p)[1:]:
        z = G.derived_order * restricted_radical(G, v).order
        hist[z] = hist.get(z, 0) + G.derived_order
    return dict(sorted(hist.items()))


def group_profile(G: SemifieldGroup, census_count: int | None = None) -> GroupProfile:
    if census_count is None:
        from .census import abelian_census

        census_count = abelian_census(G).count
    os_ = order_structure(G)
    return GroupProfile(
        order=G.order,
        abelianization_order=G.abelianization_order,
        derived_order=G.derived_order,
        exponent=os_.exponent,
        agemo_order=os_.agemo_order,
        omega_order=os_.omega_order,
        class_count=class_count(G),
        census_count=census_count,
        order_histogram=tuple(sorted(os_.histogram.items())),
        centralizer_center_histogram=tuple(centralizer_center_histogram(G).items()),
    )


def group_report(G: SemifieldGroup, census=None) -> dict:
    """JSON-ready report: profile, census summary and every structural check."""
    from .census import abelian_census

    if census is None:
        census = abelian_census(G)
    prof = group_profile(G, census.count)
    checks = {}
    special = check_special(G)
    checks["special"] = special.holds
    checks["extraspecial"] = check_extraspecial(G).holds
    ses = check_ses(G)
    checks["ses"] = ses.holds
    for k, v in ses.checks.items():
        if k != "special":
            checks[k] = v
    checks["ultraspecial"] = ses.holds and G.b == G.n
    checks["profile_class_count_formula"] = (
        prof.class_count == G.abelianization_order + G.derived_order - 1
    ) if ses.holds else False
    return {
        "semifield": G.F.label,
        "kernel_dim": G.kernel.dim,
        "profile": prof.to_json_obj(),
        "census": census.to_json_obj(),
        "checks": checks,
    }
