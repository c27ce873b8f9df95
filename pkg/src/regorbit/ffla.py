"""Dense linear algebra over prime fields.

Matrices are plain ``numpy`` integer arrays with entries in ``[0, p)``; the
characteristic travels alongside as an ``int``.  Vectors are rows and groups
act on the right, ``v -> v @ M``.  Every basis computation picks the lowest
index pivot, so results are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from sympy import isprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_factor, gf_factor_sqf, gf_irreducible_p

__all__ = [
    "FieldSpec",
    "NotUnipotentError",
    "as_matrix",
    "field_inverse",
    "rref",
    "rank",
    "solve_homogeneous",
    "row_space",
    "coords_in",
    "restrict",
    "mat_inv",
    "mat_pow",
    "matrix_order",
    "unipotent_partition",
    "kronecker",
    "minimal_polynomial",
    "poly_eval_matrix",
    "factor_squarefree",
    "factor",
    "is_irreducible",
    "companion",
    "commutant",
]


class NotUnipotentError(ValueError):
    pass


@dataclass(frozen=True)
class FieldSpec:
    """A prime field.  ``purpose`` is ``"module"`` (char p) or ``"table"`` (char q)."""

    characteristic: int
    purpose: str = "module"

    def __post_init__(self):
        if self.characteristic < 2 or not isprime(self.characteristic):
            raise ValueError(f"characteristic {self.characteristic} is not prime")
        if self.purpose not in ("module", "table"):
            raise ValueError(f"unknown field purpose {self.purpose!r}")


def as_matrix(M, p: int) -> np.ndarray:
    A = np.array(M, dtype=np.int64)
    if A.ndim == 1:
        A = A.reshape(1, -1)
    return A % p


def field_inverse(a: int, p: int) -> int:
    a = int(a) % p
    if a == 0:
        raise ZeroDivisionError(f"0 has no inverse mod {p}")
    return pow(a, -1, p)


def rref(M, p: int) -> tuple[np.ndarray, int, list[int]]:
    """Reduced row echelon form of ``M`` over F_p.

    Returns ``(reduced, rank, pivots)``; ``reduced`` keeps the shape of ``M``
    (zero rows at the bottom).
    """
    A = as_matrix(M, p)
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            A[[r, k]] = A[[k, r]]
        A[r] = (A[r] * field_inverse(A[r, c], p)) % p
        col = A[:, c].copy()
        col[r] = 0
        if col.any():
            A = (A - np.outer(col, A[r])) % p
        pivots.append(c)
        r += 1
    return A, r, pivots


def rank(M, p: int) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return rref(M, p)[1]


def row_space(M, p: int) -> np.ndarray:
    """Echelon basis (rref rows) of the row space of ``M``."""
    M = np.asarray(M)
    if M.size == 0:
        return np.zeros((0, M.shape[-1] if M.ndim == 2 else 0), dtype=np.int64)
    R, r, _ = rref(M, p)
    return R[:r]


def solve_homogeneous(M, p: int) -> np.ndarray:
    """Basis of the left kernel ``{x : x @ M == 0}``, as rows.

    The basis is the standard one read off from the rref of ``M.T``: one
    vector per free column, with a 1 in that column.
    """
    M = as_matrix(M, p)
    n = M.shape[0]
    if M.shape[1] == 0:
        return np.eye(n, dtype=np.int64)
    R, r, pivots = rref(M.T, p)
    free = [c for c in range(n) if c not in set(pivots)]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for row, c in enumerate(pivots):
            basis[i, c] = (-R[row, f]) % p
    return basis


def coords_in(basis: np.ndarray, pivots: list[int], vectors) -> np.ndarray:
    """Coordinates of row vectors lying in the span of an rref ``basis``."""
    V = np.asarray(vectors, dtype=np.int64)
    return V[..., pivots]


def restrict(M, basis, p: int) -> np.ndarray:
    """Matrix of ``M`` on the invariant subspace spanned by the rows of ``basis``.

    ``basis`` must be in rref; the result ``R`` satisfies ``basis @ M == R @ basis``.
    """
    S = np.asarray(basis, dtype=np.int64)
    _, _, piv = rref(S, p)
    image = (S @ as_matrix(M, p)) % p
    R = image[:, piv]
    if not np.array_equal((R @ S) % p, image):
        raise ValueError("subspace is not invariant under the matrix")
    return R


def mat_inv(M, p: int) -> np.ndarray:
    A = as_matrix(M, p)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("matrix is not square")
    R, r, _ = rref(np.hstack([A, np.eye(n, dtype=np.int64)]), p)
    if r < n or not np.array_equal(R[:, :n], np.eye(n, dtype=np.int64)):
        raise ZeroDivisionError("matrix is singular")
    return R[:, n:]


def mat_pow(M, k: int, p: int) -> np.ndarray:
    A = as_matrix(M, p)
    result = np.eye(A.shape[0], dtype=np.int64)
    while k:
        if k & 1:
            result = (result @ A) % p
        A = (A @ A) % p
        k >>= 1
    return result


def matrix_order(M, p: int, cap: int = 1 << 20) -> int:
    A = as_matrix(M, p)
    identity = np.eye(A.shape[0], dtype=np.int64)
    cur = A.copy()
    k = 1
    while not np.array_equal(cur, identity):
        cur = (cur @ A) % p
        k += 1
        if k > cap:
            raise ValueError("matrix order exceeds cap (singular?)")
    return k


def unipotent_partition(M, p: int) -> list[int]:
    """Jordan block sizes (descending) of a unipotent matrix over F_p.

    Uses the rank sequence ``r_k = rank((M - I)^k)``: the number of blocks of
    size at least ``k`` is ``r_{k-1} - r_k``.
    """
    A = as_matrix(M, p)
    d = A.shape[0]
    if d == 0:
        return []
    N = (A - np.eye(d, dtype=np.int64)) % p
    ranks = [d]
    cur = np.eye(d, dtype=np.int64)
    while ranks[-1] > 0:
        cur = (cur @ N) % p
        rk = rank(cur, p)
        if rk == ranks[-1]:
            raise NotUnipotentError("M - I is not nilpotent")
        ranks.append(rk)
    at_least = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
    sizes: list[int] = []
    for k in range(len(at_least), 0, -1):
        exactly = at_least[k - 1] - (at_least[k] if k < len(at_least) else 0)
        sizes.extend([k] * exactly)
    return sizes


def kronecker(A, B, p: int) -> np.ndarray:
    """Kronecker product; basis index ``(i, j) -> i * dim(B) + j`` (lexicographic)."""
    return np.kron(as_matrix(A, p), as_matrix(B, p)) % p


def minimal_polynomial(M, p: int) -> list[int]:
    """Monic minimal polynomial of ``M``, coefficients from degree 0 upwards."""
    A = as_matrix(M, p)
    d = A.shape[0]
    # incremental elimination of I, A, A^2, ... tracking combinations
    rows: list[np.ndarray] = []
    combos: list[np.ndarray] = []
    pivots: list[int] = []
    power = np.eye(d, dtype=np.int64)
    for k in range(d + 1):
        w = power.ravel().copy()
        combo = np.zeros(d + 1, dtype=np.int64)
        combo[k] = 1
        for row, cmb, c in zip(rows, combos, pivots):
            f = w[c]
            if f:
                w = (w - f * row) % p
                combo = (combo - f * cmb) % p
        nz = np.flatnonzero(w)
        if nz.size == 0:
            combo = (combo * field_inverse(int(combo[k]), p)) % p
            return [int(x) for x in combo[: k + 1]]
        c = int(nz[0])
        inv = field_inverse(int(w[c]), p)
        rows.append((w * inv) % p)
        combos.append((combo * inv) % p)
        pivots.append(c)
        power = (power @ A) % p
    raise AssertionError("no dependency among d+1 powers")  # Cayley-Hamilton


def poly_eval_matrix(coeffs, M, p: int) -> np.ndarray:
    A = as_matrix(M, p)
    d = A.shape[0]
    result = np.zeros((d, d), dtype=np.int64)
    for c in reversed(list(coeffs)):
        result = (result @ A + int(c) * np.eye(d, dtype=np.int64)) % p
    return result


def _to_gf(coeffs, p: int) -> list:
    # galoistools wants dense lists, highest degree first
    return [ZZ(int(c) % p) for c in reversed(list(coeffs))]


def factor_squarefree(coeffs, p: int) -> list[list[int]]:
    """Monic irreducible factors of a squarefree polynomial over F_p (low degree first)."""
    _, factors = gf_factor_sqf(_to_gf(coeffs, p), p, ZZ)
    out = [[int(c) for c in reversed(f)] for f in factors]
    out.sort(key=lambda f: (len(f), f))
    return out


def factor(coeffs, p: int) -> list[tuple[list[int], int]]:
    """Monic irreducible factors with multiplicities (low degree first)."""
    _, factors = gf_factor(_to_gf(coeffs, p), p, ZZ)
    out = [([int(c) for c in reversed(f)], int(k)) for f, k in factors]
    out.sort(key=lambda fk: (len(fk[0]), fk[0]))
    return out


def companion(coeffs, p: int) -> np.ndarray:
    """Companion matrix (row convention) of a monic polynomial, low degree first."""
    c = [int(x) % p for x in coeffs]
    k = len(c) - 1
    M = np.zeros((k, k), dtype=np.int64)
    for i in range(k - 1):
        M[i, i + 1] = 1
    M[k - 1] = [(-x) % p for x in c[:k]]
    return M


def commutant(mats, p: int, k: int | None = None) -> np.ndarray:
    """Basis (shape ``(m, k, k)``) of matrices commuting with every matrix in ``mats``."""
    mats = [as_matrix(A, p) for A in mats]
    if k is None:
        k = mats[0].shape[0]
    eye = np.eye(k, dtype=np.int64)
    if not mats:
        return np.eye(k * k, dtype=np.int64).reshape(-1, k, k)
    # row-major vec: vec(A T) = (A kron I) vec T, vec(T A) = (I kron A^T) vec T
    L = np.vstack([(np.kron(A, eye) - np.kron(eye, A.T)) % p for A in mats])
    return solve_homogeneous(L.T, p).reshape(-1, k, k)


@lru_cache(maxsize=4096)
def _irreducible(coeffs: tuple, p: int) -> bool:
    return bool(gf_irreducible_p(_to_gf(coeffs, p), p, ZZ))


def is_irreducible(coeffs, p: int) -> bool:
    return _irreducible(tuple(int(c) % p for c in coeffs), p)
