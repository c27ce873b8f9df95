"""Regular orbits for ``A = B x C`` with ``B`` a cyclic p-group and ``C`` a p'-group.

The construction follows the argument component by component: decompose
``V`` over ``C``, write each homogeneous component as ``X (x) U`` with ``U``
a module for ``B`` over the endomorphism field of ``X``, pick a Jordan block
of ``alpha`` on ``U`` long enough to make ``B`` act faithfully, and take
``x (x) u`` for a vector ``x`` of ``X`` whose stabilizer in ``C`` is the kernel
on ``X``.  The sum of these vectors has trivial stabilizer.

Also here: the elementary abelian counterexample showing the cyclic
hypothesis on ``B`` cannot be dropped, and a generator of random instances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from sympy import isprime, n_order

from . import ffla
from .gmod import (
    GModule,
    HomogeneousDecomposition,
    ScanResult,
    homogeneous_components,
    hom_space_module,
    least_regular_vector,
    module_from_generators,
    regular_orbit_scan,
    tensor_assemble,
)
from .grp import (
    FiniteGroup,
    GroupError,
    Subgroup,
    close_generators,
    cyclic_group,
    direct_product,
    group_invariants,
)

__all__ = [
    "PropositionError",
    "CertificateError",
    "PropositionInstance",
    "Rejection",
    "HypothesisCheck",
    "ComponentTrace",
    "RegularVectorCertificate",
    "RemarkVerdict",
    "check_proposition_hypotheses",
    "split_nilpotent",
    "construct_regular_vector",
    "verify_certificate",
    "remark_module",
    "remark_counterexample",
    "random_instance",
]


class PropositionError(RuntimeError):
    """Construction failed on an instance that passed the hypothesis check."""


class CertificateError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class PropositionInstance:
    module: GModule = field(repr=False)
    B: Subgroup = field(repr=False)
    C: Subgroup = field(repr=False)
    alpha: int
    decomposition: HomogeneousDecomposition = field(repr=False)
    section_witnesses: tuple[tuple[int, ...], ...]

    @property
    def p(self) -> int:
        return self.module.p


@dataclass(frozen=True)
class Rejection:
    hypothesis: str
    message: str
    witness: dict


@dataclass(frozen=True, eq=False)
class HypothesisCheck:
    accepted: bool
    instance: PropositionInstance | None
    rejection: Rejection | None
    checks: tuple[tuple[str, bool], ...]

    def to_dict(self) -> dict:
        out = {"accepted": self.accepted, "checks": {k: v for k, v in self.checks}}
        if self.rejection is not None:
            out["rejection"] = {
                "hypothesis": self.rejection.hypothesis,
                "message": self.rejection.message,
                "witness": self.rejection.witness,
            }
        if self.instance is not None:
            out["B_order"] = self.instance.B.order
            out["C_order"] = self.instance.C.order
            out["alpha"] = self.instance.alpha
            out["section_witnesses"] = [list(w) for w in self.instance.section_witnesses]
        return out


def split_nilpotent(A: FiniteGroup, p: int) -> tuple[Subgroup, Subgroup]:
    """``B`` = the Sylow p-subgroup, ``C`` = the p'-Hall subgroup of a nilpotent ``A``."""
    if group_invariants(A, frattini=False).nilpotency_class is None:
        raise GroupError("A is not nilpotent; give B and C explicitly")
    orders = A.element_orders
    pmask = np.array([_is_power(int(o), p) for o in orders])
    cmask = np.array([int(o) % p != 0 for o in orders])
    return Subgroup.from_elements(A, np.flatnonzero(pmask)), Subgroup.from_elements(A, np.flatnonzero(cmask))


def _is_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def check_proposition_hypotheses(
    V: GModule,
    B: Subgroup | None = None,
    C: Subgroup | None = None,
    seed: int = 0,
) -> HypothesisCheck:
    """Check every hypothesis; stop at the first failure and report a witness."""
    A = V.group
    p = V.p
    checks: list[tuple[str, bool]] = []

    def reject(name: str, msg: str, **witness) -> HypothesisCheck:
        checks.append((name, False))
        return HypothesisCheck(False, None, Rejection(name, msg, witness), tuple(checks))

    if not V.is_faithful:
        g = min(x for x in V.kernel.elements if x)
        return reject("faithful", "V is not faithful", kernel_order=V.kernel.order, kernel_element=g)
    checks.append(("faithful", True))

    if B is None and C is None:
        try:
            B, C = split_nilpotent(A, p)
        except GroupError as exc:
            return reject("split", str(exc))
    elif B is None or C is None:
        return reject("split", "give both B and C or neither")
    checks.append(("split", True))

    orders = A.element_orders
    if not _is_power(B.order, p):
        return reject("B_p_group", "B is not a p-group", B_order=B.order)
    checks.append(("B_p_group", True))
    if B.order > 1 and int(orders[B.array].max()) != B.order:
        return reject(
            "B_cyclic",
            "B is not cyclic",
            B_order=B.order,
            B_exponent=int(orders[B.array].max()),
        )
    checks.append(("B_cyclic", True))
    if C.order % p == 0:
        g = int(next(x for x in C.array if orders[x] % p == 0))
        return reject("C_p_prime", "p divides |C|", element=g, element_order=int(orders[g]))
    checks.append(("C_p_prime", True))
    if B.intersection(C).order != 1 or B.order * C.order != A.order:
        return reject("direct_product", "A is not B x C", B_order=B.order, C_order=C.order, A_order=A.order)
    for b in B.gens:
        for c in C.gens:
            if A.mul(b, c) != A.mul(c, b):
                return reject("direct_product", "B and C do not commute", b=int(b), c=int(c))
    checks.append(("direct_product", True))

    decomp = homogeneous_components(V, C, seed=seed)
    witnesses = []
    for idx, comp in enumerate(decomp.components):
        x = least_regular_vector(comp.isotype.as_module(), nonzero=True)
        if x is None:
            return reject(
                "section_regular_orbit",
                "C/C_C(X) has no regular orbit on an isotype X",
                component=idx,
                isotype_dim=comp.isotype.dim,
            )
        witnesses.append(x)
    checks.append(("section_regular_orbit", True))
    alpha = int(B.array[A.element_orders[B.array] == B.order].min()) if B.order > 1 else 0
    inst = PropositionInstance(V, B, C, alpha, decomp, tuple(witnesses))
    return HypothesisCheck(True, inst, None, tuple(checks))


# -- construction --------------------------------------------------------------


@dataclass(frozen=True)
class ComponentTrace:
    index: int
    component_dim: int
    isotype_dim: int
    endo_degree: int
    partition_E: tuple[int, ...]
    order_exponent: int
    block_size: int
    bound: int
    x: tuple[int, ...]
    u: tuple[int, ...]
    w: tuple[int, ...]
    stabilizer_w: tuple[int, ...]
    kernel_W: tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "component_dim": self.component_dim,
            "isotype_dim": self.isotype_dim,
            "endo_degree": self.endo_degree,
            "partition_E": list(self.partition_E),
            "alpha_order": f"p^{self.order_exponent}",
            "block_size": self.block_size,
            "bound": self.bound,
            "x": list(self.x),
            "u": list(self.u),
            "w": list(self.w),
            "stabilizer_w": list(self.stabilizer_w),
            "kernel_W": list(self.kernel_W),
        }


@dataclass(frozen=True)
class RegularVectorCertificate:
    vector: tuple[int, ...]
    stabilizer: tuple[int, ...]
    traces: tuple[ComponentTrace, ...]

    def to_dict(self) -> dict:
        return {
            "vector": list(self.vector),
            "stabilizer": list(self.stabilizer),
            "components": [t.to_dict() for t in self.traces],
        }


def _faithful_bound(p: int, n: int) -> int:
    return p ** (n - 1) + 1 if n >= 1 else 1


def construct_regular_vector(inst: PropositionInstance) -> RegularVectorCertificate:
    V = inst.module
    p = V.p
    traces = []
    total = np.zeros(V.dim, dtype=np.int64)
    for idx, comp in enumerate(inst.decomposition.components):
        X = comp.isotype
        ud = hom_space_module(X, comp, inst.B, alpha=inst.alpha)
        tf = tensor_assemble(X, ud)
        n = ud.order_exponent
        j = ud.partition_E[0]
        bound = _faithful_bound(p, n)
        if j < bound:
            raise PropositionError(f"no faithful block: largest block {j} < {bound}")
        # u generates a block of size j: (alpha - 1)^(j-1) u != 0
        N = ffla.mat_pow((ud.alpha_matrix - np.eye(ud.dim_Fp, dtype=np.int64)) % p, j - 1, p)
        cols = [i for i in range(ud.dim_Fp) if N[i].any()]
        if not cols:
            raise PropositionError("no vector generates a block of maximal size")
        u = np.zeros(ud.dim_Fp, dtype=np.int64)
        u[cols[0]] = 1
        xm = X.as_module()
        x = least_regular_vector(xm, nonzero=True)
        if x is None:
            raise PropositionError("no regular orbit of C on the isotype")
        w_comp = tf.evaluate(x, u)
        w = (w_comp @ comp.basis) % p
        stab_w = V.stabilizer(w)
        ker_W = V.subspace_kernel(comp.basis)
        traces.append(
            ComponentTrace(
                index=idx,
                component_dim=comp.dim,
                isotype_dim=X.dim,
                endo_degree=ud.endo_degree,
                partition_E=ud.partition_E,
                order_exponent=n,
                block_size=j,
                bound=bound,
                x=tuple(int(t) for t in x),
                u=tuple(int(t) for t in u),
                w=tuple(int(t) for t in w),
                stabilizer_w=stab_w.elements,
                kernel_W=ker_W.elements,
            )
        )
        total = (total + w) % p
    stab = V.stabilizer(total)
    if stab.order != 1:
        raise PropositionError("constructed vector has nontrivial stabilizer")
    return RegularVectorCertificate(tuple(int(t) for t in total), stab.elements, tuple(traces))


def verify_certificate(inst: PropositionInstance, cert: RegularVectorCertificate) -> bool:
    """Recheck a certificate from scratch; raise :class:`CertificateError` on any defect."""
    V = inst.module
    p = V.p
    comps = inst.decomposition.components
    if len(cert.traces) != len(comps):
        raise CertificateError("one trace per homogeneous component required")
    total = np.zeros(V.dim, dtype=np.int64)
    for t, comp in zip(cert.traces, comps):
        w = np.array(t.w, dtype=np.int64)
        if ffla.rank(np.vstack([comp.basis, w]), p) != comp.dim:
            raise CertificateError(f"w_{t.index} is not in its component")
        if V.stabilizer(w).elements != V.subspace_kernel(comp.basis).elements:
            raise CertificateError(f"C_A(w_{t.index}) differs from C_A(W_{t.index})")
        if t.block_size < _faithful_bound(p, t.order_exponent):
            raise CertificateError(f"block size {t.block_size} below the faithfulness bound")
        total = (total + w) % p
    if tuple(int(c) for c in total) != tuple(cert.vector):
        raise CertificateError("vector is not the sum of the component vectors")
    if V.stabilizer(total).order != 1:
        raise CertificateError("stabilizer of v is not trivial")
    return True


# -- the counterexample -----------------------------------------------------------


def remark_module(p: int) -> GModule:
    """``C_p x C_p`` on ``F_p^3``: ``a1`` adds ``v1`` to ``v2``, ``a2`` adds ``v1`` to ``v3``."""
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    a1 = np.eye(3, dtype=np.int64)
    a1[1, 0] = 1
    a2 = np.eye(3, dtype=np.int64)
    a2[2, 0] = 1
    G = close_generators([a1, a2], modulus=p, name=f"C{p}xC{p}")
    return module_from_generators(G, [a1, a2], p)


@dataclass(frozen=True, eq=False)
class RemarkVerdict:
    p: int
    module: GModule = field(repr=False)
    scan: ScanResult
    fixed_vectors: int
    fixed_are_multiples_of_v1: bool
    sizes_divide_p: bool
    verdict: bool

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "group_order": self.module.group.order,
            "faithful": self.module.is_faithful,
            "scan": self.scan.to_dict(),
            "fixed_vectors": self.fixed_vectors,
            "fixed_are_multiples_of_v1": self.fixed_are_multiples_of_v1,
            "orbit_sizes_divide_p": self.sizes_divide_p,
            "regular_orbit": self.scan.has_regular_orbit,
            "verdict": self.verdict,
        }


def remark_counterexample(p: int) -> RemarkVerdict:
    M = remark_module(p)
    scan = regular_orbit_scan(M)
    divides = all(p % s == 0 for s in scan.histogram)
    codes = np.arange(p**3)
    vecs = np.stack([(codes // p**2) % p, (codes // p) % p, codes % p], axis=1)
    fixed = np.ones(codes.size, dtype=bool)
    for g in M.group.gens:
        fixed &= ((vecs @ M.matrices[g]) % p == vecs).all(axis=1)
    fixed_vecs = vecs[fixed]
    multiples = bool((fixed_vecs[:, 1:] == 0).all()) and fixed_vecs.shape[0] == p
    verdict = divides and not scan.has_regular_orbit and multiples
    return RemarkVerdict(p, M, scan, int(fixed.sum()), multiples, divides, verdict)


# -- random instances ------------------------------------------------------------------


@lru_cache(maxsize=None)
def _primitive_polynomial(k: int, p: int) -> tuple[int, ...]:
    """Lexicographically least monic primitive polynomial of degree ``k``."""
    target = p**k - 1
    for tail in range(p**k):
        coeffs = [(tail // p**i) % p for i in range(k)] + [1]
        if coeffs[0] == 0 or not ffla.is_irreducible(coeffs, p):
            continue
        if ffla.matrix_order(ffla.companion(coeffs, p), p) == target:
            return tuple(coeffs)
    raise ArithmeticError("no primitive polynomial")


def _field_character(p: int, N: int, s: list[int]) -> list[np.ndarray]:
    """Matrices of ``g_i -> zeta_N^{s_i}`` realised irreducibly over F_p."""
    o = N // math.gcd(N, *s) if any(s) else 1
    if o == 1:
        return [np.eye(1, dtype=np.int64) for _ in s]
    k = int(n_order(p, o))
    Z = ffla.companion(list(_primitive_polynomial(k, p)), p)
    zeta = ffla.mat_pow(Z, (p**k - 1) // o, p)
    return [ffla.mat_pow(zeta, si // (N // o), p) for si in s]


def _jordan(sizes: list[int]) -> np.ndarray:
    d = sum(sizes)
    J = np.eye(d, dtype=np.int64)
    start = 0
    for s in sizes:
        for i in range(start, start + s - 1):
            J[i, i + 1] = 1
        start += s
    return J


_C_TYPES = {
    2: [(), (3,), (5,), (7,), (9,), (3, 3), (15,), (21,)],
    3: [(), (2,), (4,), (2, 2), (5,), (7,), (8,), (2, 4), (10,)],
}


def random_instance(rng: np.random.Generator, p: int, max_dim: int = 8, max_order: int = 72, max_tries: int = 200):
    """Random faithful ``B x C``-module of dimension at most ``max_dim``.

    ``B = C_{p^a}`` and ``C`` is abelian of order prime to ``p``; each
    component is ``X (x) (J_{j_1} + ... + J_{j_m})`` with ``X`` an irreducible
    ``F_p C``-module, and the whole module is conjugated by a random basis
    change.  Returns ``(module, B, C)``.
    """
    for _ in range(max_tries):
        ctype = _C_TYPES[p][int(rng.integers(len(_C_TYPES[p])))]
        corder = math.prod(ctype)
        a_max = 0
        while p ** (a_max + 1) * corder <= max_order and p ** (a_max + 1) <= 9:
            a_max += 1
        a = int(rng.integers(0, a_max + 1))
        border = p**a
        N = math.lcm(*ctype) if ctype else 1
        comps = []
        dim = 0
        for attempt in range(int(rng.integers(1, 4))):
            s = [int(rng.integers(0, m)) * (N // m) for m in ctype]
            xm = _field_character(p, N, s)
            k = xm[0].shape[0] if xm else 1
            # first component carries a block making B faithful
            lo = p ** (a - 1) + 1 if (a and not comps) else 1
            hi = min(border, (max_dim - dim) // k)
            if hi < lo:
                break
            blocks = [int(rng.integers(lo, hi + 1))]
            while sum(blocks) < hi and rng.random() < 0.4:
                blocks.append(int(rng.integers(1, hi - sum(blocks) + 1)))
            comps.append((xm, blocks, k))
            dim += k * sum(blocks)
        if not comps or (a and not any(max(b) > p ** (a - 1) for _, b, _ in comps)):
            continue
        gens_b, gens_c = [], [[] for _ in ctype]
        for xm, blocks, k in comps:
            J = _jordan(blocks)
            u = J.shape[0]
            gens_b.append(np.kron(np.eye(k, dtype=np.int64), J) % p)
            for i, X in enumerate(xm):
                gens_c[i].append(np.kron(X, np.eye(u, dtype=np.int64)) % p)
        Bg = cyclic_group(border)
        Cg = cyclic_group(1)
        for m in ctype:
            Cg = direct_product(Cg, cyclic_group(m)) if Cg.order > 1 else cyclic_group(m)
        A = direct_product(Bg, Cg) if Bg.order > 1 and Cg.order > 1 else (Bg if Cg.order == 1 else Cg)
        mats = []
        if border > 1:
            mats.append(_block_diag(gens_b))
        if corder > 1:
            mats.extend(_block_diag(g) for g in gens_c)
        if not mats:
            continue
        d = mats[0].shape[0]
        while True:
            P = rng.integers(0, p, size=(d, d))
            if ffla.rank(P, p) == d:
                break
        Pinv = ffla.mat_inv(P, p)
        mats = [(Pinv @ M @ P) % p for M in mats]
        M = module_from_generators(A, mats, p)
        if not M.is_faithful:
            continue
        nB = 1 if border > 1 else 0
        B = A.subgroup(list(A.gens[:nB]))
        C = A.subgroup(list(A.gens[nB:]))
        return M, B, C
    raise RuntimeError("failed to generate an instance")


def _block_diag(mats: list[np.ndarray]) -> np.ndarray:
    d = sum(m.shape[0] for m in mats)
    out = np.zeros((d, d), dtype=np.int64)
    i = 0
    for m in mats:
        k = m.shape[0]
        out[i:i + k, i:i + k] = m
        i += k
    return out
