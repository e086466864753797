"""Finite pre-semifields and semifields given by structure constants.

A pre-semifield of order ``p**n`` is stored as a cube ``c`` of shape
``(n, n, n)`` over GF(p) with ``e_i * e_j = sum_k c[i, j, k] e_k``.  Because
the product is the bilinear extension of the cube, the distributive laws hold
by construction; the only axiom that needs checking is the absence of zero
divisors.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import linalg
from .linalg import DTYPE, Subspace


class InvalidSpreadSet(ValueError):
    """A matrix space that has a singular nonzero member."""

    def __init__(self, message: str, combination=None):
        super().__init__(message)
        self.combination = combination


class PreSemifield:
    """Bilinear multiplication on GF(p)^n given by a structure-constant cube."""

    def __init__(self, p: int, cube, label: str = ""):
        self.p = linalg.check_prime(p)
        cube = linalg.as_fp(cube, self.p)
        if cube.ndim != 3 or len(set(cube.shape)) != 1:
            raise ValueError(f"cube must have shape (n, n, n), got {cube.shape}")
        cube.setflags(write=False)
        self.cube = cube
        self.label = label

    @property
    def n(self) -> int:
        return self.cube.shape[0]

    @property
    def order(self) -> int:
        return self.p**self.n

    def __repr__(self) -> str:
        name = f" {self.label!r}" if self.label else ""
        return f"<{type(self).__name__}{name} of order {self.p}^{self.n}>"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PreSemifield)
            and self.p == other.p
            and self.cube.shape == other.cube.shape
            and bool(np.array_equal(self.cube, other.cube))
        )

    def __hash__(self) -> int:
        return hash((self.p, self.cube.tobytes()))

    def multiply(self, x, y) -> np.ndarray:
        x = np.asarray(x, dtype=DTYPE)
        y = np.asarray(y, dtype=DTYPE)
        if x.shape[-1] != self.n or y.shape[-1] != self.n:
            raise ValueError(f"operands must have dimension {self.n}")
        return np.einsum("...i,...j,ijk->...k", x, y, self.cube) % self.p

    def left_basis_matrices(self) -> np.ndarray:
        """``L[i]`` is the matrix of ``y -> e_i * y``."""
        return self.cube.transpose(0, 2, 1)

    def right_basis_matrices(self) -> np.ndarray:
        """``R[j]`` is the matrix of ``x -> x * e_j``."""
        return self.cube.transpose(1, 2, 0)

    def left_matrix(self, a) -> np.ndarray:
        return np.einsum("...i,ikj->...kj", np.asarray(a, dtype=DTYPE), self.left_basis_matrices()) % self.p

    def right_matrix(self, a) -> np.ndarray:
        return np.einsum("...j,jki->...ki", np.asarray(a, dtype=DTYPE), self.right_basis_matrices()) % self.p

    def is_commutative(self) -> bool:
        return bool(np.array_equal(self.cube, self.cube.transpose(1, 0, 2)))

    def is_associative(self) -> bool:
        L = self.left_basis_matrices()
        prods = self.multiply(np.eye(self.n, dtype=DTYPE)[:, None, :], np.eye(self.n, dtype=DTYPE)[None, :, :])
        # (e_i e_j) y == e_i (e_j y)  <=>  L_{e_i e_j} == L_i L_j
        lhs = self.left_matrix(prods)
        rhs = np.einsum("iab,jbc->ijac", L, L) % self.p
        return bool(np.array_equal(lhs, rhs))

    def elements(self) -> np.ndarray:
        return linalg.all_vectors(self.n, self.p)


class Semifield(PreSemifield):
    """A pre-semifield together with its two-sided identity."""

    def __init__(self, p: int, cube, identity, label: str = ""):
        super().__init__(p, cube, label)
        identity = linalg.as_fp(identity, self.p).reshape(self.n)
        identity.setflags(write=False)
        self.identity = identity

    @property
    def base(self) -> PreSemifield:
        return PreSemifield(self.p, self.cube, self.label)


# ---------------------------------------------------------------------------
# spec-level operations


def multiply(F: PreSemifield, x, y) -> np.ndarray:
    return F.multiply(x, y)


def mult_matrices(F: PreSemifield, a) -> tuple[np.ndarray, np.ndarray]:
    """``(L_a, R_a)`` with ``L_a @ y == a * y`` and ``R_a @ x == x * a``."""
    return F.left_matrix(a), F.right_matrix(a)


def check_presemifield(F: PreSemifield) -> bool:
    """No zero divisors: every ``L_a`` and every ``R_b`` with nonzero index is invertible."""
    nonzero = F.elements()[1:]
    left_ok = bool((linalg.batch_rank(F.left_matrix(nonzero), F.p) == F.n).all())
    right_ok = bool((linalg.batch_rank(F.right_matrix(nonzero), F.p) == F.n).all())
    if left_ok != right_ok:
        raise AssertionError("left and right zero-divisor tests disagree")
    return left_ok


def find_identity(F: PreSemifield) -> Semifield | None:
    """The two-sided identity, if one exists, as a :class:`Semifield` view of ``F``."""
    n, p = F.n, F.p
    L = F.left_basis_matrices()
    # sum_i e_i L[i] == I as n*n equations in n unknowns
    A = L.reshape(n, n * n).T
    e = linalg.solve(A, np.eye(n, dtype=DTYPE).ravel(), p)
    if e is None:
        return None
    eye = np.eye(n, dtype=DTYPE)
    if not np.array_equal(F.left_matrix(e), eye) or not np.array_equal(F.right_matrix(e), eye):
        return None
    return Semifield(p, F.cube, e, F.label)


def as_semifield(F: PreSemifield) -> Semifield:
    """``F`` itself when it has an identity, otherwise a principal isotope."""
    if isinstance(F, Semifield):
        return F
    S = find_identity(F)
    if S is not None:
        return S
    return principal_isotope(F, F.elements()[1])


def opposite(F: PreSemifield) -> PreSemifield:
    """The opposite multiplication ``a *op b = b * a``."""
    cube = F.cube.transpose(1, 0, 2)
    label = f"{F.label}^op" if F.label else ""
    if isinstance(F, Semifield):
        return Semifield(F.p, cube, F.identity, label)
    return PreSemifield(F.p, cube, label)


def principal_isotope(F: PreSemifield, e, e2=None) -> Semifield:
    """Semifield ``x o y = R_{e2}^{-1}(x) * L_e^{-1}(y)`` with identity ``e * e2``.

    With one argument ``e2 = e``.  The isotopism ``(R_{e2}^{-1}, L_e^{-1}, id)``
    carries the new product back to ``F``.
    """
    e = linalg.as_fp(e, F.p)
    e2 = e if e2 is None else linalg.as_fp(e2, F.p)
    if not e.any() or not e2.any():
        raise ValueError("principal isotope needs nonzero elements")
    Rinv = linalg.mat_inverse(F.right_matrix(e2), F.p)
    Linv = linalg.mat_inverse(F.left_matrix(e), F.p)
    if Rinv is None or Linv is None:
        raise ValueError("F has zero divisors; not a pre-semifield")
    eye = np.eye(F.n, dtype=DTYPE)
    xs = (Rinv @ eye).T % F.p  # row i = R^{-1} e_i
    ys = (Linv @ eye).T % F.p
    cube = F.multiply(xs[:, None, :], ys[None, :, :])
    return Semifield(F.p, cube, F.multiply(e, e2), F.label)


def change_basis(F: PreSemifield, P) -> PreSemifield:
    """The isomorphic copy of ``F`` transported along the invertible map ``P``.

    New product: ``x o y = P (P^{-1} x * P^{-1} y)``.
    """
    p = F.p
    P = linalg.as_fp(P, p)
    Pinv = linalg.mat_inverse(P, p)
    if Pinv is None:
        raise ValueError("change of basis must be invertible")
    cols = Pinv.T  # row i = P^{-1} e_i
    prods = F.multiply(cols[:, None, :], cols[None, :, :])
    cube = np.einsum("ka,ija->ijk", P, prods) % p
    if isinstance(F, Semifield):
        return Semifield(p, cube, (P @ F.identity) % p, F.label)
    return PreSemifield(p, cube, F.label)


def standardize(F: Semifield) -> Semifield:
    """Isomorphic copy whose identity is the first basis vector."""
    e = np.asarray(F.identity)
    if e[0] and not e[1:].any() and e[0] == 1:
        return F
    n, p = F.n, F.p
    # basis with e first, then standard vectors completing it
    cols = [e]
    for i in range(n):
        trial = np.array(cols + [np.eye(n, dtype=DTYPE)[i]])
        if linalg.mat_rank(trial, p) == len(trial):
            cols.append(np.eye(n, dtype=DTYPE)[i])
        if len(cols) == n:
            break
    B = np.array(cols).T % p  # B e_1 = e
    return change_basis(F, linalg.mat_inverse(B, p))


# ---------------------------------------------------------------------------
# seminuclei


@dataclass(frozen=True)
class SeminucleusReport:
    left: Subspace
    mid: Subspace
    right: Subspace

    @property
    def orders(self) -> tuple[int, int, int]:
        return (self.left.order, self.mid.order, self.right.order)


def _closed_under_product(F: PreSemifield, U: Subspace) -> bool:
    B = U.basis
    if B.shape[0] == 0:
        return True
    prods = F.multiply(B[:, None, :], B[None, :, :]).reshape(-1, F.n)
    return all(U.contains(v) for v in prods)


def seminuclei(F: Semifield) -> SeminucleusReport:
    """Left, middle and right seminuclei as subspaces of F.

    Each is the kernel of linear conditions on ``z``:
    left ``(z x) y = z (x y)``, middle ``x (z y) = (x z) y``,
    right ``(x y) z = x (y z)``, over all basis pairs ``x, y``.
    """
    if not isinstance(F, Semifield):
        raise TypeError("seminuclei are defined for semifields")
    n, p = F.n, F.p
    L = F.left_basis_matrices()
    R = F.right_basis_matrices()
    eye = np.eye(n, dtype=DTYPE)
    prods = F.multiply(eye[:, None, :], eye[None, :, :])  # prods[i, j] = e_i * e_j
    Lp = F.left_matrix(prods)
    Rp = F.right_matrix(prods)
    left = (np.einsum("jab,ibc->ijac", R, R) - Rp) % p  # R_y R_x - R_{xy}
    mid = (np.einsum("iab,jbc->ijac", L, R) - np.einsum("jab,ibc->ijac", R, L)) % p
    right = (Lp - np.einsum("iab,jbc->ijac", L, L)) % p
    out = []
    for cond in (left, mid, right):
        K = linalg.nullspace(cond.reshape(-1, n), p)
        U = linalg.subspace_canonical(K, p, n)
        if not U.contains(F.identity) or not _closed_under_product(F, U):
            raise AssertionError("seminucleus failed closure checks")
        out.append(U)
    return SeminucleusReport(*out)


# ---------------------------------------------------------------------------
# polynomials over GF(p): coefficient lists, lowest degree first


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mod(a: list[int], f: list[int], p: int) -> list[int]:
    a = _trim([x % p for x in a])
    f = _trim([x % p for x in f])
    inv_lead = pow(f[-1], p - 2, p)
    while len(a) >= len(f):
        q = (a[-1] * inv_lead) % p
        shift = len(a) - len(f)
        for i, c in enumerate(f):
            a[shift + i] = (a[shift + i] - q * c) % p
        _trim(a)
    return a


def poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a = _trim([x % p for x in a])
    b = _trim([x % p for x in b])
    while b:
        a, b = b, poly_mod(a, b, p)
    if not a:
        return a
    inv = pow(a[-1], p - 2, p)
    return [(x * inv) % p for x in a]


def poly_powmod(base: list[int], e: int, f: list[int], p: int) -> list[int]:
    result = [1]
    base = poly_mod(base, f, p)
    while e:
        if e & 1:
            result = poly_mod(poly_mul(result, base, p), f, p)
        base = poly_mod(poly_mul(base, base, p), f, p)
        e >>= 1
    return result


def is_irreducible(poly: list[int], p: int) -> bool:
    """Irreducibility of a monic polynomial over GF(p).

    Degree <= 3: no roots.  Otherwise ``gcd(x^(p^k) - x, f) = 1`` for
    ``k <= deg/2``.
    """
    f = _trim([int(x) % p for x in poly])
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    if n <= 3:
        return all(sum(c * pow(x, i, p) for i, c in enumerate(f)) % p for x in range(p))
    for k in range(1, n // 2 + 1):
        xq = poly_powmod([0, 1], p**k, f, p)
        diff = list(xq) + [0] * max(0, 2 - len(xq))
        diff[1] = (diff[1] - 1) % p
        if len(poly_gcd(f, _trim(diff), p)) > 1:
            return False
    return True


DEFAULT_POLYNOMIALS: dict[tuple[int, int], list[int]] = {
    (2, 2): [1, 1, 1],
    (2, 3): [1, 1, 0, 1],
    (2, 4): [1, 1, 0, 0, 1],
    (2, 5): [1, 0, 1, 0, 0, 1],
    (3, 2): [1, 0, 1],
    (3, 3): [2, 2, 0, 1],
    (3, 4): [2, 1, 0, 0, 1],
    (5, 2): [2, 0, 1],
    (5, 3): [1, 1, 0, 1],
    (7, 3): [2, 0, 0, 1],
}

for (_p, _n), _f in DEFAULT_POLYNOMIALS.items():
    if len(_f) != _n + 1 or _f[-1] != 1 or not is_irreducible(_f, _p):
        raise RuntimeError(f"shipped polynomial for ({_p}, {_n}) is not monic irreducible")


def _monic_candidates(p: int, n: int):
    for tail in itertools.product(range(p), repeat=n):
        yield list(tail) + [1]


def make_field(p: int, n: int, poly: list[int] | None = None) -> Semifield:
    """GF(p^n) as GF(p)[x]/(f) in the basis ``1, x, ..., x^(n-1)``."""
    p = linalg.check_prime(p)
    if poly is None:
        if n == 1:
            poly = [0, 1]
        elif (p, n) in DEFAULT_POLYNOMIALS:
            poly = DEFAULT_POLYNOMIALS[(p, n)]
        else:
            poly = next(f for f in _monic_candidates(p, n) if is_irreducible(f, p))
    f = [int(c) % p for c in poly]
    if len(_trim(list(f))) != n + 1 or f[n] != 1:
        raise ValueError(f"need a monic polynomial of degree {n}")
    if not is_irreducible(f, p):
        raise ValueError(f"polynomial {poly} is reducible over GF({p})")
    powers = []
    for d in range(2 * n - 1):
        r = poly_mod([0] * d + [1], f, p)
        powers.append(r + [0] * (n - len(r)))
    cube = np.array([[powers[i + j] for j in range(n)] for i in range(n)], dtype=DTYPE)
    identity = np.eye(n, dtype=DTYPE)[0]
    return Semifield(p, cube, identity, f"GF({p}^{n})")


def frobenius_matrix(K: Semifield) -> np.ndarray:
    """Matrix of ``x -> x^p`` on a field given as a cube."""
    cols = []
    for i in range(K.n):
        x = np.eye(K.n, dtype=DTYPE)[i]
        y = K.identity.copy()
        for _ in range(K.p):
            y = K.multiply(y, x)
        cols.append(y)
    return np.array(cols).T % K.p


def make_albert(p: int, n: int, poly: list[int] | None, j, i: int, k: int) -> PreSemifield:
    """Twisted product ``x * y = x y + j x^(p^i) y^(p^k)`` on GF(p^n).

    Zero divisors are not ruled out here; run :func:`check_presemifield`.
    """
    if i % n == 0 or k % n == 0:
        raise ValueError("both automorphisms must be nontrivial")
    K = make_field(p, n, poly)
    j = linalg.as_fp(j, p)
    if not j.any():
        raise ValueError("j must be nonzero")
    Phi = frobenius_matrix(K)
    Ai = _matpow(Phi, i, p)
    Ak = _matpow(Phi, k, p)
    eye = np.eye(n, dtype=DTYPE)
    xs = (Ai @ eye).T % p
    ys = (Ak @ eye).T % p
    twist = K.multiply(K.multiply(j, xs)[:, None, :], ys[None, :, :])
    cube = (K.cube + twist) % p
    return PreSemifield(p, cube, f"Albert({p}^{n}; j={list(map(int, j))}, i={i}, k={k})")


def _matpow(M, e: int, p: int) -> np.ndarray:
    out = np.eye(M.shape[0], dtype=DTYPE)
    for _ in range(e):
        out = (out @ M) % p
    return out


# ---------------------------------------------------------------------------
# spread sets


@dataclass(frozen=True, eq=False)
class SpreadSet:
    """Basis ``mats[i] = L_{e_i}`` of the space of left multiplications."""

    p: int
    mats: np.ndarray

    @property
    def n(self) -> int:
        return self.mats.shape[0]

    def elements(self) -> np.ndarray:
        coeffs = linalg.all_vectors(self.n, self.p)
        return np.einsum("ai,ikl->akl", coeffs, self.mats) % self.p

    def __eq__(self, other) -> bool:
        return isinstance(other, SpreadSet) and self.p == other.p and np.array_equal(self.mats, other.mats)


def spread_set_convert(F: PreSemifield) -> SpreadSet:
    return SpreadSet(F.p, F.left_basis_matrices().copy())


def from_spread_set(S: SpreadSet, label: str = "") -> PreSemifield:
    """Inverse of :func:`spread_set_convert`; validates all nonzero combinations."""
    p, n = S.p, S.n
    elems = S.elements()
    ranks = linalg.batch_rank(elems[1:], p)
    bad = np.nonzero(ranks < n)[0]
    if bad.size:
        combo = linalg.all_vectors(n, p)[bad[0] + 1]
        raise InvalidSpreadSet(f"combination {combo.tolist()} of the spread set is singular", combo)
    F = PreSemifield(p, np.asarray(S.mats).transpose(0, 2, 1), label)
    return find_identity(F) or F


def semifield_from_matrix_space(mats, p: int, label: str = "") -> Semifield:
    """Semifield with identity ``e_1`` from a spread set that contains the identity.

    ``mats`` spans the space; the basis is re-chosen so that member ``B_i``
    has first column ``e_i``, giving ``x * y = B(x) y``.
    """
    mats = linalg.as_fp(mats, p)
    first_cols = mats[:, :, 0]  # row t = mats[t] e_1
    Q = first_cols.T  # columns = first columns
    Qinv = linalg.mat_inverse(Q, p)
    if Qinv is None:
        raise InvalidSpreadSet("matrix space is not a spread set")
    B = np.einsum("it,tkl->ikl", Qinv.T, mats) % p  # B_i = sum_t Qinv[t, i] mats[t]
    F = PreSemifield(p, B.transpose(0, 2, 1), label)
    S = find_identity(F)
    if S is None:
        raise InvalidSpreadSet("matrix space does not contain the identity")
    return S


# ---------------------------------------------------------------------------
# file format


def to_json_obj(F: PreSemifield) -> dict:
    obj: dict = {"p": F.p, "n": F.n, "cube": F.cube.tolist()}
    if isinstance(F, Semifield):
        obj["identity"] = [int(x) for x in F.identity]
    if F.label:
        obj["label"] = F.label
    return obj


def dumps(F: PreSemifield) -> str:
    return json.dumps(to_json_obj(F), sort_keys=True, indent=1) + "\n"


class SemifieldFormatError(ValueError):
    pass


def from_json_obj(obj: dict, where: str = "<input>") -> PreSemifield:
    try:
        p, n, cube = int(obj["p"]), int(obj["n"]), obj["cube"]
    except (KeyError, TypeError, ValueError) as exc:
        raise SemifieldFormatError(f"{where}: missing or malformed field ({exc})") from None
    arr = np.asarray(cube, dtype=DTYPE)
    if arr.shape != (n, n, n):
        raise SemifieldFormatError(f"{where}: cube has shape {arr.shape}, expected {(n, n, n)}")
    label = obj.get("label", "")
    if "identity" in obj:
        F = Semifield(p, arr, obj["identity"], label)
        if find_identity(F.base) is None:
            raise SemifieldFormatError(f"{where}: stated identity is not an identity")
        return F
    return PreSemifield(p, arr, label)


def loads(text: str, where: str = "<input>") -> PreSemifield:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SemifieldFormatError(f"{where}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    return from_json_obj(obj, where)


def load(path) -> PreSemifield:
    path = Path(path)
    return loads(path.read_text(encoding="utf-8"), str(path))


def save(F: PreSemifield, path) -> None:
    Path(path).write_text(dumps(F), encoding="utf-8")
