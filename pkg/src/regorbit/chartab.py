"""Exact complex character tables by the Dixon-Schneider method.

Class matrices built from structure constants are diagonalised
simultaneously over an auxiliary prime field F_q with ``q = 1 (mod exp G)``;
the common eigenvectors are the central characters.  Values are lifted back
to sums of roots of unity through the power maps, so each value is an exact
multiset of eigenvalues.  Every table is checked (both orthogonality
relations, degrees, Galois consistency) before it is returned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np
from sympy import isprime, nextprime, primitive_root

from . import ffla
from .cyclotomic import CycInt, reduce_mod_cyclotomic
from .grp import ConjugacyData, FiniteGroup, Subgroup, conjugacy_classes

__all__ = [
    "CharacterTableError",
    "ConfigurationError",
    "CharacterTable",
    "RestrictionReport",
    "RegularContainment",
    "dixon_prime",
    "dixon_character_table",
    "inner_product",
    "restrict_character",
    "contains_regular_character",
    "regular_character",
    "character_kernel",
    "faithful_on",
    "verify_orthogonality",
]


MAX_CLASSES = 400


class CharacterTableError(RuntimeError):
    pass


class ConfigurationError(CharacterTableError):
    pass


@dataclass(frozen=True, eq=False)
class CharacterTable:
    group: FiniteGroup
    classes: ConjugacyData
    exponent: int
    q: int
    multiplicities: np.ndarray  # (characters, classes, exponent), nonnegative ints

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(int(d) for d in self.multiplicities[:, 0, :].sum(axis=1))

    def __len__(self):
        return self.multiplicities.shape[0]

    @cached_property
    def characters(self) -> list[tuple[CycInt, ...]]:
        E = self.exponent
        return [tuple(CycInt(E, row) for row in chi) for chi in self.multiplicities]

    def value(self, chi: int, element: int) -> CycInt:
        return self.characters[chi][int(self.classes.class_of[element])]

    @cached_property
    def reduced(self) -> np.ndarray:
        return reduce_mod_cyclotomic(self.multiplicities, self.exponent)

    def complex_values(self) -> np.ndarray:
        E = self.exponent
        roots = np.exp(2j * np.pi * np.arange(E) / E)
        return self.multiplicities @ roots

    def to_dict(self) -> dict:
        G, cc = self.group, self.classes
        return {
            "order": G.order,
            "exponent": self.exponent,
            "auxiliary_prime": self.q,
            "classes": [
                {
                    "representative": int(r),
                    "word": list(G.words[r]),
                    "size": int(s),
                    "element_order": int(cc.orders[r]),
                }
                for r, s in zip(cc.representatives, cc.sizes)
            ],
            "characters": [
                {
                    "degree": d,
                    "values": [{"exponent": self.exponent, "coefficients": [int(c) for c in row]}
                               for row in chi],
                }
                for d, chi in zip(self.degrees, self.multiplicities)
            ],
        }


def dixon_prime(order: int, exponent: int, bound: int = 10**7) -> int:
    """Least prime ``q = 1 (mod exponent)`` with ``q > 2*sqrt(order)``."""
    q = exponent + 1
    while q * q <= 4 * order or not isprime(q):
        q += exponent
        if q > bound:
            raise ConfigurationError(f"no Dixon prime below {bound} for exponent {exponent}")
    return q


def _structure_constants(G: FiniteGroup, cc: ConjugacyData) -> np.ndarray:
    """``a[i, j, k] = #{x in C_i : x^-1 g_k in C_j}``."""
    K = cc.count
    reps = np.array(cc.representatives, dtype=np.int64)
    x = np.arange(G.order)
    y = G.table[G.inv[x][:, None], reps[None, :]].astype(np.int64)
    a = np.zeros((K, K, K), dtype=np.int64)
    ci = np.broadcast_to(cc.class_of[:, None], y.shape)
    kk = np.broadcast_to(np.arange(K)[None, :], y.shape)
    np.add.at(a, (ci, cc.class_of[y], kk), 1)
    return a


def _roots_mod(coeffs: Sequence[int], q: int) -> list[int]:
    xs = np.arange(q, dtype=np.int64)
    acc = np.zeros(q, dtype=np.int64)
    for c in reversed(list(coeffs)):
        acc = (acc * xs + int(c)) % q
    return [int(x) for x in np.flatnonzero(acc == 0)]


def _split(space: np.ndarray, T: np.ndarray, q: int) -> list[np.ndarray]:
    if space.shape[0] == 1:
        return [space]
    R = ffla.restrict(T, space, q)
    mp = ffla.minimal_polynomial(R, q)
    roots = _roots_mod(mp, q)
    if len(roots) != len(mp) - 1:
        raise CharacterTableError("class matrix does not split over the Dixon field")
    if len(roots) == 1:
        return [space]
    k = R.shape[0]
    parts = []
    for lam in roots:
        ker = ffla.solve_homogeneous((R - lam * np.eye(k, dtype=np.int64)) % q, q)
        parts.append(ffla.row_space((ker @ space) % q, q))
    return parts


def _matmul_mod(A: np.ndarray, B: np.ndarray, m: int) -> np.ndarray:
    # chunk the contraction so int64 partial sums cannot overflow
    step = max(1, (2**62) // ((m - 1) ** 2 + 1))
    out = np.zeros(A.shape[:-1] + B.shape[-1:], dtype=np.int64)
    for s in range(0, A.shape[-1], step):
        out = (out + (A[..., s:s + step] @ B[s:s + step]) % m) % m
    return out


class _NTT:
    """Exact evaluation of Z[x]/(x^E - 1) at E-th roots of unity mod a prime."""

    def __init__(self, E: int, bound: int):
        ell = E + 1
        while ell <= 2 * bound + 1 or not isprime(ell):
            ell += E
        self.E, self.ell = E, ell
        w = pow(primitive_root(ell), (ell - 1) // E, ell)
        wp = np.array([pow(w, k, ell) for k in range(E)], dtype=np.int64)
        t = np.arange(E)
        exps = np.outer(t, t) % E
        self.fwd = wp[exps]
        self.inv = wp[(-exps) % E] * pow(E, -1, ell) % ell

    def forward(self, X):
        return _matmul_mod(np.asarray(X, dtype=np.int64) % self.ell, self.fwd, self.ell)

    def backward(self, Y):
        return _matmul_mod(Y, self.inv, self.ell)


def verify_orthogonality(T: CharacterTable) -> None:
    """Check both orthogonality relations exactly; raise on failure."""
    X = T.multiplicities
    h, K, E = X.shape
    n = T.group.order
    sizes = np.array(T.classes.sizes, dtype=np.int64)
    dmax = max(T.degrees)
    ntt = _NTT(E, n * dmax * dmax)
    ell = ntt.ell
    Xh = ntt.forward(X)  # (h, K, E)
    neg = (-np.arange(E)) % E
    Xc = Xh[:, :, neg]  # transform of the conjugate
    # first orthogonality: sum_k |C_k| chi_i(k) conj(chi_j(k)) = n delta_ij
    W = (Xh * sizes[None, :, None]) % ell
    S = np.empty((h, h, E), dtype=np.int64)
    for s in range(E):
        S[:, :, s] = _matmul_mod(W[:, :, s], Xc[:, :, s].T, ell)
    first = reduce_mod_cyclotomic(ntt.backward(S), E)
    expect = np.zeros_like(first)
    expect[np.arange(h), np.arange(h), 0] = n
    if not np.array_equal(first, expect):
        raise CharacterTableError("first orthogonality fails")
    # second orthogonality: sum_i chi_i(k) conj(chi_i(l)) = delta_kl |C_G(g_k)|
    S2 = np.empty((K, K, E), dtype=np.int64)
    for s in range(E):
        S2[:, :, s] = _matmul_mod(Xh[:, :, s].T, Xc[:, :, s], ell)
    second = reduce_mod_cyclotomic(ntt.backward(S2), E)
    expect2 = np.zeros_like(second)
    expect2[np.arange(K), np.arange(K), 0] = n // sizes
    if not np.array_equal(second, expect2):
        raise CharacterTableError("second orthogonality fails")


def _galois_check(X: np.ndarray, cc: ConjugacyData, E: int) -> None:
    idx = np.arange(E)
    for c, o in enumerate(cc.rep_orders):
        for m in range(2, o):
            if math.gcd(m, o) != 1:
                continue
            target = cc.power_map[c, m % cc.exponent]
            moved = np.zeros((X.shape[0], E), dtype=np.int64)
            np.add.at(moved, (slice(None), (idx * m) % E), X[:, c, :])
            if not np.array_equal(moved, X[:, target, :]):
                raise CharacterTableError("power map and Galois action disagree")


def dixon_character_table(G: FiniteGroup, seed: int = 0, classes: ConjugacyData | None = None) -> CharacterTable:
    cc = classes if classes is not None else conjugacy_classes(G)
    n, K, e = G.order, cc.count, cc.exponent
    if K > MAX_CLASSES:
        raise ConfigurationError(f"{K} classes exceeds the limit of {MAX_CLASSES}")
    q = dixon_prime(n, e)
    a = _structure_constants(G, cc) % q
    # row form: omega @ a[i].T == omega_i * omega
    ops = [np.ascontiguousarray(a[i].T) for i in range(K)]
    rng = np.random.default_rng(seed)
    spaces = [np.eye(K, dtype=np.int64)]
    if K > 1:
        combo = sum(int(c) * op for c, op in zip(rng.integers(0, q, size=K), ops)) % q
        spaces = [s for sp in spaces for s in _split(sp, combo, q)]
    for op in ops[1:]:
        if len(spaces) == K:
            break
        spaces = [s for sp in spaces for s in _split(sp, op, q)]
    if len(spaces) != K or any(s.shape[0] != 1 for s in spaces):
        raise CharacterTableError("class matrices failed to separate the characters")

    sizes = np.array(cc.sizes, dtype=np.int64)
    inv_cls = cc.inverse_class
    size_inv = np.array([pow(int(s), -1, q) for s in sizes], dtype=np.int64)
    z = pow(primitive_root(q), (q - 1) // e, q)
    rows = []
    for sp in spaces:
        w = sp[0]
        if w[0] == 0:
            raise CharacterTableError("central character vanishes at the identity")
        w = (w * pow(int(w[0]), -1, q)) % q
        norm = int((w * w[inv_cls] % q * size_inv % q).sum() % q)
        target = n * pow(norm, -1, q) % q
        deg = next((d for d in range(1, math.isqrt(n) + 1) if d * d % q == target), None)
        if deg is None:
            raise CharacterTableError("no admissible degree for a central character")
        chi_q = w * deg % q * size_inv % q
        mult = np.zeros((K, e), dtype=np.int64)
        for c in range(K):
            o = int(cc.orders[cc.representatives[c]])
            zo = pow(z, e // o, q)
            vals = chi_q[cc.power_map[c, np.arange(o) % e]]
            oinv = pow(o, -1, q)
            for t in range(o):
                powers = np.array([pow(zo, (-t * l) % o, q) for l in range(o)], dtype=np.int64)
                m = int((vals * powers % q).sum() % q) * oinv % q
                if m > deg:
                    raise CharacterTableError("lifted multiplicity out of range")
                mult[c, t * (e // o)] = m
            if mult[c].sum() != deg:
                raise CharacterTableError("lifted multiplicities do not sum to the degree")
        rows.append(mult)
    X = np.array(rows)
    degs = X[:, 0, :].sum(axis=1)
    key = [(int(d),) + tuple(-X[i].ravel()) for i, d in enumerate(degs)]
    X = X[sorted(range(K), key=lambda i: key[i])]
    degs = X[:, 0, :].sum(axis=1)
    if int((degs ** 2).sum()) != n or any(n % int(d) for d in degs):
        raise CharacterTableError("degrees inconsistent with the group order")
    X.flags.writeable = False
    T = CharacterTable(G, cc, e, q, X)
    verify_orthogonality(T)
    _galois_check(X, cc, e)
    return T


# -- class functions --------------------------------------------------------


def inner_product(phi: Sequence[CycInt], psi: Sequence[CycInt], classes: ConjugacyData,
                  characters: bool = True) -> int:
    """``(1/|A|) sum_a phi(a) psi(a^-1)`` for class functions listed by class."""
    order = sum(classes.sizes)
    inv = classes.inverse_class
    total = CycInt.integer(0)
    for c, size in enumerate(classes.sizes):
        total = total + phi[c] * psi[int(inv[c])] * int(size)
    if not total.is_rational_integer():
        raise CharacterTableError("inner product is not rational")
    value = total.to_int()
    if value % order:
        raise CharacterTableError("inner product is not an integer")
    value //= order
    if characters and value < 0:
        raise CharacterTableError("negative inner product of characters")
    return value


@dataclass(frozen=True)
class RestrictionReport:
    subgroup: Subgroup
    table: CharacterTable  # of the subgroup, as a standalone group
    embedding: np.ndarray
    values: tuple[CycInt, ...]  # restricted values by subgroup class
    multiplicities: tuple[int, ...]
    degree: int

    @property
    def constituent_degrees(self) -> tuple[int, ...]:
        return self.table.degrees


@dataclass(frozen=True)
class RegularContainment:
    contains: bool
    slack: int


def restrict_character(T: CharacterTable, chi: int, A: Subgroup,
                       table_A: CharacterTable | None = None, seed: int = 0) -> RestrictionReport:
    if A.group is not T.group:
        raise ValueError("subgroup of a different group")
    H, emb = A.as_group()
    TA = table_A if table_A is not None else dixon_character_table(H, seed=seed)
    cls = TA.classes
    values = tuple(T.characters[chi][int(T.classes.class_of[emb[r]])] for r in cls.representatives)
    mults = tuple(inner_product(values, lam, cls) for lam in TA.characters)
    deg = T.degrees[chi]
    if sum(m * d for m, d in zip(mults, TA.degrees)) != deg:
        raise CharacterTableError("restriction multiplicities do not add up to the degree")
    return RestrictionReport(A, TA, emb, values, mults, deg)


def contains_regular_character(rep: RestrictionReport) -> RegularContainment:
    slack = min(m - d for m, d in zip(rep.multiplicities, rep.constituent_degrees))
    return RegularContainment(slack >= 0, slack)


def regular_character(T: CharacterTable) -> tuple[CycInt, ...]:
    n = T.group.order
    return tuple(CycInt.integer(n if c == 0 else 0, T.exponent) for c in range(T.classes.count))


def character_kernel(T: CharacterTable, chi: int) -> Subgroup:
    deg = T.degrees[chi]
    X = T.multiplicities[chi]
    # chi(g) == chi(1) iff every eigenvalue is 1
    good = np.flatnonzero(X[:, 0] == deg)
    mask = np.isin(T.classes.class_of, good)
    return Subgroup.from_mask(T.group, mask)


def faithful_on(T: CharacterTable, chi: int, P: Subgroup) -> bool:
    return character_kernel(T, chi).intersection(P).order == 1
