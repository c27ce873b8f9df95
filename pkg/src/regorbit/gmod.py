"""Linear actions of finite groups over prime fields.

A :class:`GModule` stores one matrix per group element (row vectors, right
action).  On top of it sit orbit and stabilizer computations, a brute-force
regular-orbit scan, the decomposition of a module into homogeneous components
for a subgroup of order prime to ``p``, the Hom-space ``U = Hom_C(X, W)`` with
its ``B``-action, and the reassembly ``X (x) U -> W``.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import ffla
from .grp import (
    FiniteGroup,
    Subgroup,
    conjugacy_classes,
    group_invariants,
    quotient_group,
)

__all__ = [
    "SCAN_CAP",
    "ModuleError",
    "NotAModuleError",
    "InvalidModuleError",
    "ScanTooLargeError",
    "SemisimplicityError",
    "IsotypeError",
    "StructureError",
    "GModule",
    "OrbitReport",
    "ScanResult",
    "Isotype",
    "HomogeneousComponent",
    "HomogeneousDecomposition",
    "UData",
    "TensorFactorization",
    "module_from_generators",
    "module_from_elements",
    "orbit_and_stabilizer",
    "regular_orbit_scan",
    "least_regular_vector",
    "dual_module",
    "homogeneous_components",
    "hom_space_module",
    "tensor_assemble",
    "section_action",
    "SectionModule",
    "vector_code",
    "code_vector",
]

SCAN_CAP = 1 << 24
_CHUNK = 1 << 18
_MAX_TRIES = 200


class ModuleError(ValueError):
    pass


class NotAModuleError(ModuleError):
    """Generator matrices do not respect the relations of the group."""


class InvalidModuleError(ModuleError):
    """Malformed matrices: wrong shape or singular."""


class ScanTooLargeError(ModuleError):
    pass


class SemisimplicityError(ModuleError):
    pass


class IsotypeError(ModuleError):
    pass


class StructureError(ModuleError):
    pass


# -- vectors as integers ------------------------------------------------------


def vector_code(v, p: int) -> int:
    """Lexicographic code: first coordinate is most significant."""
    code = 0
    for c in np.asarray(v, dtype=np.int64).ravel():
        code = code * p + int(c) % p
    return code


def code_vector(code, p: int, d: int) -> np.ndarray:
    """Inverse of :func:`vector_code`; vectorised over an array of codes."""
    codes = np.asarray(code, dtype=np.int64)
    weights = p ** np.arange(d - 1, -1, -1, dtype=np.int64)
    return (codes[..., None] // weights) % p


# -- modules ------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class GModule:
    """``group`` acting on ``F_p^dim``; ``matrices[g]`` is the action of element ``g``."""

    group: FiniteGroup
    p: int
    dim: int
    matrices: np.ndarray = field(repr=False)

    @cached_property
    def kernel(self) -> Subgroup:
        eye = np.eye(self.dim, dtype=np.int64)
        mask = (self.matrices == eye).all(axis=(1, 2))
        return Subgroup.from_mask(self.group, mask)

    @property
    def is_faithful(self) -> bool:
        return self.kernel.order == 1

    @property
    def generator_matrices(self) -> list[np.ndarray]:
        return [self.matrices[g] for g in self.group.gens]

    @property
    def quotient_order(self) -> int:
        """Order of the acting group modulo the kernel."""
        return self.group.order // self.kernel.order

    def act(self, v, g: int) -> np.ndarray:
        return (np.asarray(v, dtype=np.int64) @ self.matrices[g]) % self.p

    def restrict(self, H: Subgroup) -> "GModule":
        """The module restricted to a subgroup, over ``H.as_group()``."""
        Hg, emb = H.as_group()
        return GModule(Hg, self.p, self.dim, self.matrices[emb])

    def stabilizer(self, v) -> Subgroup:
        v = np.asarray(v, dtype=np.int64) % self.p
        images = np.einsum("j,gjk->gk", v, self.matrices) % self.p
        return Subgroup.from_mask(self.group, (images == v).all(axis=1))

    def subspace_kernel(self, basis) -> Subgroup:
        """Pointwise stabilizer ``C_G(S)`` of the span of ``basis``."""
        S = np.asarray(basis, dtype=np.int64) % self.p
        if S.size == 0:
            return self.group.whole()
        images = np.einsum("ij,gjk->gik", S, self.matrices) % self.p
        return Subgroup.from_mask(self.group, (images == S).all(axis=(1, 2)))


def _check_matrices(mats, p: int, d: int | None = None) -> list[np.ndarray]:
    out = []
    for M in mats:
        A = np.array(M, dtype=np.int64)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise InvalidModuleError("action matrices must be square")
        if d is None:
            d = A.shape[0]
        if A.shape[0] != d:
            raise InvalidModuleError("action matrices have different sizes")
        if ffla.rank(A % p, p) < d:
            raise InvalidModuleError("singular action matrix")
        out.append(A % p)
    return out


def module_from_generators(G: FiniteGroup, mats, p: int, dim: int | None = None) -> GModule:
    """Extend per-generator matrices along a spanning tree and verify the relations."""
    ffla.FieldSpec(p)
    mats = list(mats)
    if len(mats) != len(G.gens):
        raise InvalidModuleError(f"need {len(G.gens)} generator matrices, got {len(mats)}")
    if not mats and dim is None:
        raise InvalidModuleError("dimension required when the group has no generators")
    gm = _check_matrices(mats, p, dim)
    d = gm[0].shape[0] if gm else int(dim)
    full = np.zeros((G.order, d, d), dtype=np.int64)
    full[0] = np.eye(d, dtype=np.int64)
    for parent, i, child in G.bfs_tree:
        full[child] = (full[parent] @ gm[i]) % p
    for s, Ms in zip(G.gens, gm):
        left = full[G.table[:, s].astype(np.int64)]
        right = np.einsum("gij,jk->gik", full, Ms) % p
        if not np.array_equal(left, right):
            raise NotAModuleError("matrices do not satisfy the group relations")
    full.flags.writeable = False
    return GModule(G, p, d, full)


def module_from_elements(G: FiniteGroup, mats, p: int) -> GModule:
    """Module from one matrix per element; verified as a homomorphism."""
    full = np.asarray(mats, dtype=np.int64) % p
    n, d, _ = full.shape
    if n != G.order:
        raise InvalidModuleError("need one matrix per group element")
    if not np.array_equal(full[0], np.eye(d, dtype=np.int64)):
        raise NotAModuleError("identity does not act trivially")
    for s in G.gens:
        left = full[G.table[:, s].astype(np.int64)]
        right = np.einsum("gij,jk->gik", full, full[s]) % p
        if not np.array_equal(left, right):
            raise NotAModuleError("matrices do not satisfy the group relations")
    full = full.copy()
    full.flags.writeable = False
    return GModule(G, p, d, full)


def dual_module(M: GModule) -> GModule:
    """Contragredient module: ``g`` acts by the inverse transpose of its matrix."""
    mats = np.ascontiguousarray(M.matrices[M.group.inv].transpose(0, 2, 1))
    mats.flags.writeable = False
    return GModule(M.group, M.p, M.dim, mats)


# -- orbits --------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class OrbitReport:
    vector: tuple[int, ...]
    orbit: np.ndarray = field(repr=False)
    size: int
    stabilizer: Subgroup = field(repr=False)
    span_rank: int
    regular_orbit: bool
    regular_module: bool


def orbit_and_stabilizer(M: GModule, v) -> OrbitReport:
    v = np.asarray(v, dtype=np.int64).ravel() % M.p
    if v.size != M.dim:
        raise ModuleError(f"vector has length {v.size}, module dimension is {M.dim}")
    images = np.einsum("j,gjk->gk", v, M.matrices) % M.p
    stab = Subgroup.from_mask(M.group, (images == v).all(axis=1))
    orbit = np.unique(images, axis=0)
    rk = ffla.rank(orbit, M.p)
    regular = stab.order == M.kernel.order
    return OrbitReport(
        vector=tuple(int(x) for x in v),
        orbit=orbit,
        size=int(orbit.shape[0]),
        stabilizer=stab,
        span_rank=rk,
        regular_orbit=regular,
        regular_module=regular and rk == orbit.shape[0],
    )


@dataclass(frozen=True)
class ScanResult:
    """Outcome of a full scan of ``F_p^d``.

    ``histogram`` maps orbit size to the number of orbits of that size.
    Witnesses are lexicographically least.
    """

    p: int
    dim: int
    group_order: int
    kernel_order: int
    regular_orbit: tuple[int, ...] | None
    regular_module: tuple[int, ...] | None
    histogram: dict[int, int]
    orbit_count: int

    @property
    def has_regular_orbit(self) -> bool:
        return self.regular_orbit is not None

    @property
    def has_regular_module(self) -> bool:
        return self.regular_module is not None

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "dim": self.dim,
            "group_order": self.group_order,
            "kernel_order": self.kernel_order,
            "regular_orbit": list(self.regular_orbit) if self.regular_orbit is not None else None,
            "regular_module": list(self.regular_module) if self.regular_module is not None else None,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
            "orbit_count": self.orbit_count,
        }


def _check_scan_size(M: GModule, cap: int) -> int:
    total = M.p**M.dim
    if total > cap:
        raise ScanTooLargeError(f"{M.p}^{M.dim} vectors exceed scan cap {cap}")
    return total


def regular_orbit_scan(M: GModule, cap: int = SCAN_CAP) -> ScanResult:
    """Orbit decomposition of all of ``F_p^d`` by connected components."""
    total = _check_scan_size(M, cap)
    p, d = M.p, M.dim
    gens = [g for g in M.group.gens]
    weights = p ** np.arange(d - 1, -1, -1, dtype=np.int64)
    src_parts, dst_parts = [], []
    for start in range(0, total, _CHUNK):
        codes = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        vecs = code_vector(codes, p, d)
        for g in gens:
            img = ((vecs @ M.matrices[g]) % p) @ weights
            moved = img != codes
            src_parts.append(codes[moved])
            dst_parts.append(img[moved])
    if src_parts:
        src = np.concatenate(src_parts)
        dst = np.concatenate(dst_parts)
    else:
        src = dst = np.zeros(0, dtype=np.int64)
    graph = coo_matrix((np.ones(src.size, dtype=np.int8), (src, dst)), shape=(total, total))
    ncomp, labels = connected_components(graph, directed=True, connection="weak")
    sizes = np.bincount(labels, minlength=ncomp)
    # least code in each orbit: labels are assigned in order of first visit,
    # so use a reduction rather than trusting label order
    reps = np.full(ncomp, total, dtype=np.int64)
    np.minimum.at(reps, labels, np.arange(total, dtype=np.int64))
    hist = Counter(int(s) for s in sizes)
    target = M.quotient_order
    regular = np.sort(reps[sizes == target])
    orbit_w = tuple(int(x) for x in code_vector(regular[0], p, d)) if regular.size else None
    module_w = None
    if regular.size and target <= d:
        for code in regular:
            vec = code_vector(code, p, d)
            if orbit_and_stabilizer(M, vec).regular_module:
                module_w = tuple(int(x) for x in vec)
                break
    return ScanResult(
        p=p,
        dim=d,
        group_order=M.group.order,
        kernel_order=M.kernel.order,
        regular_orbit=orbit_w,
        regular_module=module_w,
        histogram=dict(sorted(hist.items())),
        orbit_count=int(ncomp),
    )


def least_regular_vector(
    M: GModule, cap: int = SCAN_CAP, module: bool = False, nonzero: bool = False
) -> tuple[int, ...] | None:
    """Lexicographically least vector with regular orbit (or regular module); early exit.

    With ``nonzero`` the zero vector is skipped (it is regular only for a
    group acting trivially).
    """
    total = _check_scan_size(M, cap)
    p, d = M.p, M.dim
    kern = M.kernel.order
    if module and M.quotient_order > d:
        return None
    for start in range(0, total, _CHUNK):
        codes = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        vecs = code_vector(codes, p, d)
        # count elements fixing each vector
        fixed = np.zeros(codes.size, dtype=np.int64)
        for g in range(M.group.order):
            fixed += ((vecs @ M.matrices[g]) % p == vecs).all(axis=1)
        for idx in np.flatnonzero(fixed == kern):
            v = vecs[idx]
            if nonzero and not v.any():
                continue
            if not module or orbit_and_stabilizer(M, v).regular_module:
                return tuple(int(x) for x in v)
    return None


# -- homogeneous decomposition ----------------------------------------------------


def _algebra_closure(mats, p: int) -> list[np.ndarray]:
    """Basis of the unital F_p-algebra generated by ``mats``."""
    k = mats[0].shape[0] if mats else 0
    basis: list[np.ndarray] = []
    echelon = np.zeros((0, k * k), dtype=np.int64)

    def add(X) -> bool:
        nonlocal echelon
        cand = np.vstack([echelon, X.reshape(1, -1) % p])
        R = ffla.row_space(cand, p)
        if R.shape[0] > echelon.shape[0]:
            echelon = R
            basis.append(X % p)
            return True
        return False

    add(np.eye(k, dtype=np.int64))
    queue = list(basis)
    for X in mats:
        if add(X):
            queue.append(basis[-1])
    i = 0
    while i < len(queue):
        X = queue[i]
        i += 1
        for Y in mats:
            if add((X @ Y) % p):
                queue.append(basis[-1])
    return basis


@dataclass(frozen=True, eq=False)
class Isotype:
    """An irreducible ``C``-submodule ``X`` of the ambient module.

    ``basis`` lists vectors of the ambient space (rref); ``matrices[c]`` is the
    action of the ``c``-th element of ``subgroup`` in those coordinates;
    ``endomorphisms`` is a basis of ``End_C(X)``, a field of degree
    ``endo_degree`` over ``F_p``.
    """

    module: GModule = field(repr=False)
    subgroup: Subgroup = field(repr=False)
    basis: np.ndarray = field(repr=False)
    matrices: np.ndarray = field(repr=False)
    endomorphisms: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return int(self.basis.shape[0])

    @property
    def p(self) -> int:
        return self.module.p

    @property
    def endo_degree(self) -> int:
        return int(self.endomorphisms.shape[0])

    def as_module(self) -> GModule:
        """``X`` as a module for ``subgroup.as_group()``."""
        H, _ = self.subgroup.as_group()
        return GModule(H, self.p, self.dim, self.matrices)

    @cached_property
    def kernel(self) -> Subgroup:
        """``C_C(X)`` as a subgroup of the ambient group."""
        eye = np.eye(self.dim, dtype=np.int64)
        mask = (self.matrices == eye).all(axis=(1, 2))
        return Subgroup.from_elements(self.module.group, self.subgroup.array[mask])

    def generator_matrices(self) -> list[np.ndarray]:
        pos = {int(x): i for i, x in enumerate(self.subgroup.array)}
        return [self.matrices[pos[g]] for g in self.subgroup.gens]

    def to_ambient(self, x) -> np.ndarray:
        return (np.asarray(x, dtype=np.int64) @ self.basis) % self.p


@dataclass(frozen=True, eq=False)
class HomogeneousComponent:
    basis: np.ndarray = field(repr=False)
    isotype: Isotype
    endo_degree: int
    multiplicity: int

    @property
    def dim(self) -> int:
        return int(self.basis.shape[0])


@dataclass(frozen=True, eq=False)
class HomogeneousDecomposition:
    module: GModule = field(repr=False)
    subgroup: Subgroup = field(repr=False)
    components: tuple[HomogeneousComponent, ...]

    def projections(self) -> list[np.ndarray]:
        """Projection matrices onto each component along the others."""
        p = self.module.p
        stacked = np.vstack([c.basis for c in self.components])
        inv = ffla.mat_inv(stacked, p)
        out, start = [], 0
        for c in self.components:
            sel = np.zeros_like(stacked)
            sel[start:start + c.dim] = stacked[start:start + c.dim]
            out.append((inv @ sel) % p)
            start += c.dim
        return out


def _sub_matrices(M: GModule, C: Subgroup, S: np.ndarray) -> np.ndarray:
    return np.stack([ffla.restrict(M.matrices[c], S, M.p) for c in C.array])


def _kernel_of(poly, A, p: int) -> np.ndarray:
    return ffla.solve_homogeneous(ffla.poly_eval_matrix(poly, A, p), p)


def _random_element(basis, rng, p: int) -> np.ndarray:
    coeffs = rng.integers(0, p, size=len(basis))
    return (np.tensordot(coeffs, np.asarray(basis), axes=1)) % p


def _split_homogeneous(S: np.ndarray, sums: list[np.ndarray], p: int, rng) -> list[tuple[np.ndarray, int]]:
    """Split the C-submodule with basis ``S`` into homogeneous pieces."""
    restricted = [ffla.restrict(Z, S, p) for Z in sums]
    alg = _algebra_closure(restricted, p)
    m = len(alg)
    if m == 1:
        return [(S, 1)]
    # deterministic candidates first (the generators themselves), then random
    candidates = list(restricted)
    for attempt in range(len(candidates) + _MAX_TRIES):
        z = candidates[attempt] if attempt < len(candidates) else _random_element(alg, rng, p)
        mp = ffla.minimal_polynomial(z, p)
        if len(mp) - 1 == m and ffla.is_irreducible(mp, p):
            return [(S, m)]
        factors = ffla.factor(mp, p)
        if any(k > 1 for _, k in factors):
            raise SemisimplicityError("central element with repeated factor; restriction not semisimple")
        if len(factors) > 1:
            pieces = []
            for f, _ in factors:
                K = _kernel_of(f, z, p)
                sub = ffla.row_space((K @ S) % p, p)
                pieces.extend(_split_homogeneous(sub, sums, p, rng))
            return pieces
    raise SemisimplicityError("failed to split the centre of the enveloping algebra")


def _irreducible_submodule(gens: list[np.ndarray], k: int, target: int, p: int, rng) -> np.ndarray:
    """Coordinates (rows, rref) of an irreducible submodule of dimension ``target``."""
    T = np.eye(k, dtype=np.int64)
    while T.shape[0] > target:
        local = [ffla.restrict(g, T, p) for g in gens] if gens else []
        ends = ffla.commutant(local, p, T.shape[0])
        for _ in range(_MAX_TRIES):
            phi = _random_element(ends, rng, p)
            best = None
            for f, _ in ffla.factor(ffla.minimal_polynomial(phi, p), p):
                K = _kernel_of(f, phi, p)
                if 0 < K.shape[0] < T.shape[0] and (best is None or K.shape[0] < best.shape[0]):
                    best = K
            if best is not None:
                T = ffla.row_space((best @ T) % p, p)
                break
        else:
            raise SemisimplicityError("could not split a homogeneous component")
    return T


def homogeneous_components(M: GModule, C: Subgroup, seed: int = 0) -> HomogeneousDecomposition:
    """Decompose ``M`` restricted to ``C`` (``p`` not dividing ``|C|``)."""
    p = M.p
    if C.group is not M.group:
        raise ModuleError("subgroup belongs to a different group")
    if C.order % p == 0:
        raise SemisimplicityError(f"p = {p} divides |C| = {C.order}")
    rng = np.random.default_rng(seed)
    H, emb = C.as_group()
    cc = conjugacy_classes(H)
    sums = [M.matrices[emb[cc.members(i)]].sum(axis=0) % p for i in range(cc.count)]
    pieces = _split_homogeneous(np.eye(M.dim, dtype=np.int64), sums, p, rng)
    comps = []
    gens_elems = list(C.gens)
    for S, e in pieces:
        gens = [ffla.restrict(M.matrices[g], S, p) for g in gens_elems]
        k = S.shape[0]
        dim_end = ffla.commutant(gens, p, k).shape[0]
        mult2, rem = divmod(dim_end, e)
        mult = math.isqrt(mult2)
        if rem or mult * mult != mult2 or k % mult:
            raise SemisimplicityError("endomorphism algebra has unexpected dimension")
        T = _irreducible_submodule(gens, k, k // mult, p, rng)
        Xb = ffla.row_space((T @ S) % p, p)
        mats = _sub_matrices(M, C, Xb)
        xg = [ffla.restrict(M.matrices[g], Xb, p) for g in gens_elems]
        ends = ffla.commutant(xg, p, Xb.shape[0])
        if ends.shape[0] != e:
            raise SemisimplicityError("isotype endomorphism field degree mismatch")
        iso = Isotype(M, C, Xb, mats, ends)
        comps.append(HomogeneousComponent(S, iso, e, mult))
    comps.sort(key=lambda c: tuple(c.basis.ravel()))
    if sum(c.dim for c in comps) != M.dim:
        raise SemisimplicityError("components do not fill the module")
    return HomogeneousDecomposition(M, C, tuple(comps))


# -- Hom spaces and reassembly -------------------------------------------------------


@dataclass(frozen=True, eq=False)
class UData:
    """``U = Hom_C(X, W)`` with ``B`` acting by post-composition.

    ``maps[i]`` is a ``dim X x dim W`` matrix (in isotype / component
    coordinates), ``alpha_matrix`` the action of the distinguished generator on
    ``U`` in that basis.  ``partition_E`` gives the Jordan blocks of ``alpha``
    over the endomorphism field.
    """

    isotype: Isotype = field(repr=False)
    component: np.ndarray = field(repr=False)
    B: Subgroup = field(repr=False)
    alpha: int
    maps: np.ndarray = field(repr=False)
    alpha_matrix: np.ndarray = field(repr=False)
    endo_degree: int
    partition_Fp: tuple[int, ...]
    partition_E: tuple[int, ...]
    order_exponent: int

    @property
    def dim_Fp(self) -> int:
        return int(self.maps.shape[0])

    @property
    def dim_E(self) -> int:
        return self.dim_Fp // self.endo_degree

    @property
    def p(self) -> int:
        return self.isotype.p

    def action_matrix(self, b: int) -> np.ndarray:
        """Matrix of ``b`` on ``U`` (post-composition)."""
        M = self.isotype.module
        Wb = ffla.restrict(M.matrices[b], self.component, M.p)
        return _coords_in_U(self, np.einsum("mij,jk->mik", self.maps, Wb) % M.p)

    def endo_matrix(self, eps) -> np.ndarray:
        """Matrix on ``U`` of an endomorphism of ``X`` acting by pre-composition."""
        return _coords_in_U(self, np.einsum("ij,mjk->mik", np.asarray(eps), self.maps) % self.p)


def _coords_in_U(ud: UData, phis: np.ndarray) -> np.ndarray:
    flat = ud.maps.reshape(ud.dim_Fp, -1)
    _, _, piv = ffla.rref(flat, ud.p)
    coords = phis.reshape(phis.shape[0], -1)[:, piv]
    if not np.array_equal((coords @ flat) % ud.p, phis.reshape(phis.shape[0], -1)):
        raise IsotypeError("map does not lie in the Hom space")
    return coords


def _hom_maps(Xmats: list[np.ndarray], Wmats: list[np.ndarray], dx: int, dw: int, p: int) -> np.ndarray:
    """Basis of ``{F : Xc F = F Wc}``, reduced so the flattened rows are in rref."""
    if not Xmats:
        return np.eye(dx * dw, dtype=np.int64).reshape(-1, dx, dw)
    ix, iw = np.eye(dx, dtype=np.int64), np.eye(dw, dtype=np.int64)
    L = np.vstack([(np.kron(A, iw) - np.kron(ix, Bm.T)) % p for A, Bm in zip(Xmats, Wmats)])
    K = ffla.solve_homogeneous(L.T, p)
    return ffla.row_space(K, p).reshape(-1, dx, dw)


def hom_space_module(
    X: Isotype,
    W,
    B: Subgroup,
    alpha: int | None = None,
) -> UData:
    """``Hom_C(X, W)`` as a module for the cyclic ``p``-group ``B``.

    ``W`` is a :class:`HomogeneousComponent` or a basis (rref rows) of a
    ``C``- and ``B``-invariant subspace.
    """
    M = X.module
    p = M.p
    Wb = W.basis if isinstance(W, HomogeneousComponent) else ffla.row_space(np.asarray(W), p)
    C = X.subgroup
    dx, dw = X.dim, Wb.shape[0]
    xg = X.generator_matrices()
    wg = [ffla.restrict(M.matrices[g], Wb, p) for g in C.gens]
    maps = _hom_maps(xg, wg, dx, dw, p)
    e = X.endo_degree
    if dw % dx or maps.shape[0] != (dw // dx) * e:
        raise IsotypeError("component is not homogeneous of the given isotype")
    if alpha is None:
        alpha = _distinguished_generator(B)
    elif alpha not in B:
        raise ModuleError("alpha is not in B")
    elif B.order > 1 and int(M.group.element_orders[alpha]) != B.order:
        raise ModuleError("alpha does not generate B")
    if not maps.shape[0]:
        raise IsotypeError("empty Hom space")
    ud = UData(X, Wb, B, int(alpha), maps, np.zeros((0, 0), dtype=np.int64), e, (), (), 0)
    amat = ud.action_matrix(int(alpha))
    part = tuple(ffla.unipotent_partition(amat, p))
    counts = Counter(part)
    if any(c % e for c in counts.values()):
        raise IsotypeError("alpha is not E-linear on U")
    part_E = tuple(sorted((s for s, c in counts.items() for _ in range(c // e)), reverse=True))
    order = ffla.matrix_order(amat, p)
    n = round(math.log(order, p)) if order > 1 else 0
    if p**n != order:
        raise ModuleError("alpha does not have p-power order on U")
    # E acts by pre-composition and must commute with alpha
    for eps in X.endomorphisms:
        Em = ud.endo_matrix(eps)
        if not np.array_equal((Em @ amat) % p, (amat @ Em) % p):
            raise IsotypeError("B does not commute with End_C(X) on U")
    return UData(X, Wb, B, int(alpha), maps, amat, e, part, part_E, n)


def _distinguished_generator(B: Subgroup) -> int:
    if B.order == 1:
        return 0
    orders = B.group.element_orders[B.array]
    hits = B.array[orders == B.order]
    if hits.size == 0:
        raise ModuleError("B is not cyclic")
    return int(hits.min())


@dataclass(frozen=True, eq=False)
class TensorFactorization:
    """``X (x)_E U ~= W``: the evaluation map and the module on the quotient.

    ``tensor_module`` acts on ``X (x)_{F_p} U`` (index ``i * dim U + j``);
    ``relations`` spans the kernel of evaluation (the E-balancing relations);
    ``quotient_indices`` pick the basis vectors of the quotient, and
    ``evaluation`` maps them onto ``W`` (component coordinates).
    """

    isotype: Isotype
    udata: UData
    tensor_module: GModule = field(repr=False)
    relations: np.ndarray = field(repr=False)
    quotient_indices: tuple[int, ...]
    quotient_module: GModule = field(repr=False)
    evaluation: np.ndarray = field(repr=False)

    @property
    def endo_degree(self) -> int:
        return self.udata.endo_degree

    @property
    def block_sizes(self) -> tuple[int, ...]:
        return self.udata.partition_E

    def evaluate(self, x, u) -> np.ndarray:
        """``phi_u(x)`` in component coordinates."""
        phi = np.tensordot(np.asarray(u, dtype=np.int64), self.udata.maps, axes=1) % self.udata.p
        return (np.asarray(x, dtype=np.int64) @ phi) % self.udata.p


def tensor_assemble(X: Isotype, ud: UData) -> TensorFactorization:
    if ud.isotype is not X:
        raise IsotypeError("U-data was computed for a different isotype")
    M = X.module
    G = M.group
    p = M.p
    C, B = X.subgroup, ud.B
    dx, m, dw = X.dim, ud.dim_Fp, ud.component.shape[0]
    # factor every element of G as b * c
    split = np.full(G.order, -1, dtype=np.int64)
    cpos = {int(c): i for i, c in enumerate(C.array)}
    for b in B.array:
        prods = G.table[b, C.array].astype(np.int64)
        split[prods] = b * G.order + C.array
    if (split < 0).any():
        raise StructureError("the group is not B * C")
    mats = np.zeros((G.order, dx * m, dx * m), dtype=np.int64)
    for g in range(G.order):
        b, c = divmod(int(split[g]), G.order)
        mats[g] = np.kron(X.matrices[cpos[c]], ud.action_matrix(b)) % p
    tensor = module_from_elements(G, mats, p)
    # evaluation x_i (x) phi_j -> row i of phi_j
    ev = ud.maps.transpose(1, 0, 2).reshape(dx * m, dw) % p
    if ffla.rank(ev, p) != dw:
        raise IsotypeError("evaluation is not surjective")
    K = ffla.row_space(ffla.solve_homogeneous(ev, p), p)
    # the kernel is spanned by x eps (x) phi - x (x) eps phi
    rel = []
    for eps in X.endomorphisms:
        Em = ud.endo_matrix(eps)
        for i in range(dx):
            for j in range(m):
                v = np.zeros(dx * m, dtype=np.int64)
                v[np.arange(dx) * m + j] += eps[i]
                v[i * m + np.arange(m)] -= Em[j]
                rel.append(v % p)
    R = ffla.row_space(np.array(rel), p) if rel else np.zeros((0, dx * m), dtype=np.int64)
    if not np.array_equal(R, K):
        raise IsotypeError("evaluation kernel differs from the balancing relations")
    _, _, piv = ffla.rref(K, p) if K.shape[0] else (None, 0, [])
    keep = [i for i in range(dx * m) if i not in set(piv)]
    qmats = np.zeros((G.order, dw, dw), dtype=np.int64)
    for g in range(G.order):
        rows = mats[g][keep]
        if K.shape[0]:
            rows = (rows - rows[:, piv] @ K) % p
        qmats[g] = rows[:, keep]
    quotient = module_from_elements(G, qmats, p)
    evq = ev[keep]
    if ffla.rank(evq, p) != dw:
        raise IsotypeError("evaluation is not bijective on the quotient")
    for s in G.gens:
        Ws = ffla.restrict(M.matrices[s], ud.component, p)
        if not np.array_equal((qmats[s] @ evq) % p, (evq @ Ws) % p):
            raise IsotypeError("evaluation does not intertwine the action")
    return TensorFactorization(X, ud, tensor, K, tuple(keep), quotient, evq)


# -- sections of groups ------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SectionModule:
    """``R / Phi(R)`` as an ``F_r``-module for ``A``; ``basis_elements`` are preimages in ``G``."""

    module: GModule
    frattini: Subgroup = field(repr=False)
    basis_elements: tuple[int, ...]


def section_action(G: FiniteGroup, R: Subgroup, A: Subgroup, r: int) -> SectionModule:
    """Action of ``A`` (by conjugation in ``G``) on the Frattini quotient of ``R``."""
    H, emb = R.as_group()
    pos = np.full(G.order, -1, dtype=np.int64)
    pos[emb] = np.arange(H.order)
    phi_local = group_invariants(H).frattini
    Q, proj = quotient_group(H, phi_local)
    if not Q.is_abelian or (Q.order > 1 and Q.exponent != r) or not _is_power(Q.order, r):
        raise StructureError("R/Phi(R) is not an elementary abelian r-group")
    k = round(math.log(Q.order, r)) if Q.order > 1 else 0
    # greedy basis of Q, coordinates for every element
    coords = {0: np.zeros(k, dtype=np.int64)}
    basis_q: list[int] = []
    for q in range(1, Q.order):
        if q in coords:
            continue
        basis_q.append(q)
        i = len(basis_q) - 1
        new = {}
        for x, v in coords.items():
            y = x
            for t in range(1, r):
                y = int(Q.table[y, q])
                w = v.copy()
                w[i] = (w[i] + t) % r
                new[y] = w
        coords.update(new)
    if len(basis_q) != k:
        raise StructureError("could not find a basis of R/Phi(R)")
    coord_arr = np.stack([coords[q] for q in range(Q.order)]) if k else np.zeros((Q.order, 0), dtype=np.int64)
    lifts = [int(np.flatnonzero(proj.images == q)[0]) for q in basis_q]
    HA, embA = A.as_group()
    mats = np.zeros((HA.order, k, k), dtype=np.int64)
    for ai, a in enumerate(embA):
        for i, x in enumerate(lifts):
            y = int(G.conj(int(emb[x]), int(a)))
            if pos[y] < 0:
                raise StructureError("A does not normalize R")
            mats[ai, i] = coord_arr[proj.images[pos[y]]]
    if k == 0:
        mats = np.zeros((HA.order, 0, 0), dtype=np.int64)
        return SectionModule(GModule(HA, r, 0, mats), Subgroup(G, tuple(int(x) for x in emb[list(phi_local.elements)])), ())
    module = module_from_elements(HA, mats, r)
    frattini = Subgroup(G, tuple(sorted(int(x) for x in emb[list(phi_local.elements)])))
    return SectionModule(module, frattini, tuple(int(emb[x]) for x in lifts))


def _is_power(n: int, r: int) -> bool:
    while n % r == 0:
        n //= r
    return n == 1
