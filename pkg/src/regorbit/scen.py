"""PRA configurations: construction, hypotheses (a)-(d), and the character check.

``P`` is extraspecial, built from a cocycle on ``F_p^{2n}``.  ``R`` and ``A``
live together in an ambient group (permutations or matrices) and act on
``P`` through isometries of ``P/Z(P)`` lifted to automorphisms fixing the
centre.  The full group is ``GA = P : (RA)``.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from sympy import isprime

from . import ffla
from .chartab import (
    CharacterTable,
    contains_regular_character,
    dixon_character_table,
    faithful_on,
    restrict_character,
)
from .gmod import (
    GModule,
    dual_module,
    homogeneous_components,
    least_regular_vector,
    regular_orbit_scan,
    section_action,
)
from .grp import (
    ORDER_CAP,
    ConstructionError,
    FiniteGroup,
    GroupError,
    Subgroup,
    centralizer,
    close_generators,
    extend_action,
    group_invariants,
    product_group,
    quotient_group,
)

__all__ = [
    "ScenarioError",
    "FormError",
    "LiftError",
    "AssemblyError",
    "ExtraspecialData",
    "ScenarioSpec",
    "Scenario",
    "Verdict",
    "HypothesisReport",
    "CharacterVerdict",
    "TheoremReport",
    "build_extraspecial",
    "lift_isometry",
    "parse_scenario",
    "load_scenario",
    "assemble_scenario",
    "validate_theorem_hypotheses",
    "run_theorem_check",
    "is_fermat_prime",
]


class ScenarioError(ValueError):
    pass


class FormError(ScenarioError):
    """A matrix does not preserve the form on ``P/Z(P)``."""


class LiftError(ScenarioError):
    pass


class AssemblyError(ScenarioError):
    pass


# -- extraspecial groups -----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ExtraspecialData:
    """``P = {(a, v)}`` with ``(a, v)(b, w) = (a + b + beta(v, w), v + w)``.

    Element ``(a, v)`` has index ``a * p^(2n) + code(v)``, where ``code`` reads
    ``v`` as a base-``p`` number, first coordinate most significant.
    """

    p: int
    n: int
    sign: str
    beta: np.ndarray = field(repr=False)
    group: FiniteGroup = field(repr=False)
    coords: np.ndarray = field(repr=False)  # (|P|, 1 + 2n)

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def rank(self) -> int:
        return 2 * self.n

    @property
    def commutator_form(self) -> np.ndarray:
        return (self.beta - self.beta.T) % self.p

    @property
    def polar_form(self) -> np.ndarray:
        return (self.beta + self.beta.T) % self.p

    def quadratic(self, v) -> int:
        v = np.asarray(v, dtype=np.int64)
        return int(v @ self.beta @ v) % self.p

    def index(self, a: int, v) -> int:
        code = 0
        for c in v:
            code = code * self.p + int(c) % self.p
        return (int(a) % self.p) * self.p ** self.rank + code

    @cached_property
    def center(self) -> Subgroup:
        return Subgroup(self.group, tuple(self.index(a, [0] * self.rank) for a in range(self.p)))


def build_extraspecial(p: int, n: int, sign: str = "+") -> ExtraspecialData:
    if not isprime(p) or n < 1:
        raise ScenarioError("need a prime p and n >= 1")
    if sign not in "+-" or len(sign) != 1:
        raise ScenarioError(f"sign must be '+' or '-', got {sign!r}")
    if p != 2 and sign == "-":
        raise ScenarioError("odd p: only the exponent-p type is built; use sign '+'")
    k = 2 * n
    order = p ** (1 + k)
    if order > ORDER_CAP:
        raise ScenarioError(f"|P| = {order} exceeds the group order cap {ORDER_CAP}")
    beta = np.zeros((k, k), dtype=np.int64)
    for i in range(n):
        beta[i, n + i] = 1
    if sign == "-":
        beta[n - 1, n - 1] = 1
        beta[k - 1, k - 1] = 1
    m = p**k
    vecs = (np.arange(m)[:, None] // p ** np.arange(k - 1, -1, -1)) % p
    weights = p ** np.arange(k - 1, -1, -1)
    vsum = ((vecs[:, None, :] + vecs[None, :, :]) % p) @ weights
    bvw = (vecs @ beta @ vecs.T) % p
    a = np.arange(p)
    asum = (a[:, None, None, None] + a[None, None, :, None] + bvw[None, :, None, :]) % p
    table = asum * m + vsum[None, :, None, :]
    table = table.reshape(order, order)
    gens = [int(x) for x in weights[::-1][::-1]]  # (0, e_i)
    coords = np.column_stack([np.repeat(a, m), np.tile(vecs, (p, 1))])
    G = FiniteGroup(
        table,
        gens,
        [tuple(int(c) for c in row) for row in coords],
        name=f"{p}^(1+{k}){sign if p == 2 else ''}",
    )
    E = ExtraspecialData(p, n, sign, beta, G, coords)
    _verify_extraspecial(E)
    return E


def _verify_extraspecial(E: ExtraspecialData) -> None:
    G, p, k = E.group, E.p, E.rank
    inv = group_invariants(G)
    if inv.center != E.center or inv.derived != E.center or inv.frattini != E.center:
        raise ConstructionError("centre, derived subgroup and Frattini subgroup differ")
    if ffla.rank(E.commutator_form, p) != k:
        raise ConstructionError("commutator form is degenerate")
    if p != 2 and inv.exponent != p:
        raise ConstructionError("odd extraspecial group should have exponent p")
    if p == 2:
        m = p**k
        vecs = E.coords[:m, 1:]
        zeros = int(((np.einsum("vi,ij,vj->v", vecs, E.beta, vecs)) % 2 == 0).sum())
        plus = 2 ** (k - 1) + 2 ** (E.n - 1)
        if zeros != (plus if E.sign == "+" else 2**k - plus):
            raise ConstructionError("quadratic form has the wrong type")


# -- isometries and their lifts -------------------------------------------------------


def _check_isometry(E: ExtraspecialData, sigma: np.ndarray) -> None:
    p, k = E.p, E.rank
    if sigma.shape != (k, k) or ffla.rank(sigma, p) < k:
        raise FormError("isometry must be an invertible 2n x 2n matrix")
    J = E.commutator_form
    if not np.array_equal((sigma @ J @ sigma.T) % p, J):
        raise FormError("matrix does not preserve the commutator form")
    if p == 2:
        for i in range(k):
            if E.quadratic(sigma[i]) != E.quadratic(np.eye(k, dtype=np.int64)[i]):
                raise FormError("matrix does not preserve the quadratic form")


def _perm_order(perm: np.ndarray) -> int:
    order = 1
    seen = np.zeros(perm.size, dtype=bool)
    for i in range(perm.size):
        if not seen[i]:
            length = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = int(perm[j])
                length += 1
            order = math.lcm(order, length)
    return order


def _perm_power(perm: np.ndarray, k: int) -> np.ndarray:
    result = np.arange(perm.size)
    base = perm.copy()
    while k:
        if k & 1:
            result = base[result]
        base = base[base]
        k >>= 1
    return result


def _automorphism(E: ExtraspecialData, sigma: np.ndarray, mu: np.ndarray) -> np.ndarray:
    """Permutation ``(a, v) -> (a + mu(v), v sigma)`` of element indices; ``mu`` indexed by code(v)."""
    p, k = E.p, E.rank
    m = p**k
    vecs = E.coords[:m, 1:]
    weights = p ** np.arange(k - 1, -1, -1)
    img_v = ((vecs @ sigma) % p) @ weights
    a = np.arange(p)
    return (((a[:, None] + mu[None, :]) % p) * m + img_v[None, :]).ravel()


def _is_automorphism(G: FiniteGroup, phi: np.ndarray) -> bool:
    t = G.table
    return bool(np.array_equal(phi[t], t[phi[:, None], phi[None, :]]))


def lift_isometry(E: ExtraspecialData, sigma, linear=None) -> np.ndarray:
    """Automorphism of ``P`` fixing ``Z(P)`` and inducing ``sigma`` on ``P/Z(P)``.

    ``linear`` is an optional functional ``lambda`` added to the correction
    (a central automorphism).  When ``sigma`` has order prime to ``p`` the
    lift is replaced by a power with the same image and the same order.
    """
    p, k = E.p, E.rank
    sigma = np.asarray(sigma, dtype=np.int64) % p
    _check_isometry(E, sigma)
    m = p**k
    vecs = E.coords[:m, 1:]
    delta = (sigma @ E.beta @ sigma.T - E.beta) % p  # delta(v, w) = beta(v s, w s) - beta(v, w)
    if p == 2:
        upper = np.triu(delta, 1)
        mu = np.einsum("vi,ij,vj->v", vecs, upper, vecs) % p
    else:
        half = pow(2, -1, p)
        mu = (np.einsum("vi,ij,vj->v", vecs, delta, vecs) * half) % p
    if linear is not None:
        mu = (mu + vecs @ (np.asarray(linear, dtype=np.int64) % p)) % p
    phi = _automorphism(E, sigma, mu)
    if not _is_automorphism(E.group, phi):
        raise LiftError("lifted map is not an automorphism")
    ms = ffla.matrix_order(sigma, p)
    if math.gcd(ms, p) == 1:
        order = _perm_order(phi)
        if order != ms:
            extra = order // ms
            # k = 1 mod ms and 0 mod extra (coprime)
            kpow = next(t for t in range(1, ms * extra + 1) if t % ms == 1 % ms and t % extra == 0)
            phi = _perm_power(phi, kpow)
            if _perm_order(phi) != ms:
                raise LiftError("no lift with the order of sigma")
    return phi


# -- scenario specification --------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ScenarioSpec:
    name: str
    p: int
    r: int
    P: dict
    R_generators: tuple
    R_isometries: tuple
    A_generators: tuple
    A_isometries: tuple
    modulus: int | None
    expected_orders: dict
    raw: dict = field(repr=False)

    @property
    def content_hash(self) -> str:
        return hashlib.sha256(json.dumps(self.raw, sort_keys=True).encode()).hexdigest()


def _is_matrix(x) -> bool:
    return isinstance(x, list) and x and all(isinstance(row, list) for row in x)


def parse_scenario(data: dict) -> ScenarioSpec:
    """Validate the JSON structure of a scenario (no group computations)."""
    if not isinstance(data, dict):
        raise ScenarioError("scenario must be a JSON object")
    try:
        p, r = int(data["p"]), int(data["r"])
        Pd = dict(data["P"])
        Rd = dict(data.get("R", {}))
        Ad = dict(data.get("A", {}))
    except (KeyError, TypeError, ValueError) as exc:
        raise ScenarioError(f"malformed scenario: {exc}") from exc
    if not (isprime(p) and isprime(r)) or p == r:
        raise ScenarioError("p and r must be distinct primes")
    if Pd.get("kind") != "extraspecial":
        raise ScenarioError("only P.kind = 'extraspecial' is supported")
    if not isinstance(Pd.get("n"), int) or Pd.get("sign", "+") not in ("+", "-"):
        raise ScenarioError("P needs an integer n and sign '+' or '-'")
    out = {}
    for label, d in (("R", Rd), ("A", Ad)):
        gens = d.get("generators", [])
        isos = d.get("isometry_images", [])
        if not isinstance(gens, list) or not isinstance(isos, list) or len(gens) != len(isos):
            raise ScenarioError(f"{label}: need one isometry image per generator")
        for g in gens:
            if not isinstance(g, list) or not g:
                raise ScenarioError(f"{label}: generators are permutations or matrices")
        for s in isos:
            if not _is_matrix(s):
                raise ScenarioError(f"{label}: isometry images must be matrices")
        out[label] = (tuple(gens), tuple(isos))
    all_gens = out["R"][0] + out["A"][0]
    kinds = {_is_matrix(g) for g in all_gens}
    if len(kinds) > 1:
        raise ScenarioError("R and A generators must be all permutations or all matrices")
    modulus = data.get("modulus")
    if kinds == {True} and modulus is None:
        raise ScenarioError("matrix generators need a 'modulus'")
    expected = data.get("expected_orders", {})
    if not isinstance(expected, dict):
        raise ScenarioError("expected_orders must be an object")
    return ScenarioSpec(
        name=str(data.get("name", "")),
        p=p,
        r=r,
        P={"n": Pd["n"], "sign": Pd.get("sign", "+")},
        R_generators=out["R"][0],
        R_isometries=out["R"][1],
        A_generators=out["A"][0],
        A_isometries=out["A"][1],
        modulus=int(modulus) if modulus is not None else None,
        expected_orders={str(k): int(v) for k, v in expected.items()},
        raw=data,
    )


def load_scenario(path) -> ScenarioSpec:
    with open(path) as fh:
        return parse_scenario(json.load(fh))


# -- assembly ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Scenario:
    """An assembled ``GA = P : (RA)`` with the three pieces as subgroups."""

    spec: ScenarioSpec = field(repr=False)
    extraspecial: ExtraspecialData = field(repr=False)
    RA: FiniteGroup = field(repr=False)
    GA: FiniteGroup = field(repr=False)
    P: Subgroup = field(repr=False)
    R: Subgroup = field(repr=False)
    A: Subgroup = field(repr=False)
    automorphisms: tuple = field(repr=False)
    repaired: bool

    @property
    def p(self) -> int:
        return self.spec.p

    @property
    def r(self) -> int:
        return self.spec.r

    def orders(self) -> dict:
        return {"P": self.P.order, "R": self.R.order, "A": self.A.order, "GA": self.GA.order}


def _central_corrections(E: ExtraspecialData):
    k = E.rank
    for lam in itertools.product(range(E.p), repeat=k):
        yield np.array(lam, dtype=np.int64)


def assemble_scenario(spec: ScenarioSpec, repair_cap: int = 1 << 16) -> Scenario:
    E = build_extraspecial(spec.p, spec.P["n"], spec.P["sign"])
    gens = list(spec.R_generators) + list(spec.A_generators)
    isos = list(spec.R_isometries) + list(spec.A_isometries)
    try:
        RA = close_generators(gens, modulus=spec.modulus, name="RA")
    except GroupError as exc:
        raise AssemblyError(f"R and A generators: {exc}") from exc
    nR = len(spec.R_generators)
    ra_gens = list(RA.gens)
    R_loc = RA.subgroup(ra_gens[:nR])
    A_loc = RA.subgroup(ra_gens[nR:])
    if not R_loc.is_normal():
        raise AssemblyError("R is not normal in RA (an A-generator does not normalize R)")
    if R_loc.intersection(A_loc).order != 1 or R_loc.order * A_loc.order != RA.order:
        raise AssemblyError("RA is not a semidirect product R : A")
    if not _is_power(R_loc.order, spec.r):
        raise AssemblyError(f"R has order {R_loc.order}, not a power of r = {spec.r}")
    lifts = [lift_isometry(E, s) for s in isos]
    repaired = False
    try:
        extend_action(RA, lifts) if lifts else None
    except ConstructionError:
        lifts = _repair(E, RA, lifts, isos, repair_cap)
        repaired = True
    try:
        GA, embP, embRA = product_group(E.group, RA, lifts if lifts else "trivial", name="GA")
    except ConstructionError as exc:
        raise AssemblyError(str(exc)) from exc
    P = Subgroup(GA, tuple(int(x) for x in embP))
    R = Subgroup(GA, tuple(sorted(int(embRA[x]) for x in R_loc.elements)))
    A = Subgroup(GA, tuple(sorted(int(embRA[x]) for x in A_loc.elements)))
    if not P.is_normal():
        raise AssemblyError("P is not normal in GA")
    zp = Subgroup(GA, tuple(int(embP[x]) for x in E.center.elements))
    if not zp.is_subgroup_of(GA.center):
        raise AssemblyError("Z(P) is not central in GA")
    sc = Scenario(spec, E, RA, GA, P, R, A, tuple(lifts), repaired)
    for key, val in spec.expected_orders.items():
        got = sc.orders().get(key)
        if got is None:
            raise AssemblyError(f"unknown expected order key {key!r}")
        if got != val:
            raise AssemblyError(f"|{key}| = {got}, expected {val}")
    return sc


def _is_power(n: int, r: int) -> bool:
    while n > 1 and n % r == 0:
        n //= r
    return n == 1


def _repair(E, RA, lifts, isos, cap):
    """Search central corrections so that the lifts satisfy the relations of RA."""
    k = len(lifts)
    total = (E.p ** E.rank) ** k
    if total > cap:
        raise AssemblyError(f"relation repair search space {total} exceeds cap {cap}")
    options = [
        [lift_isometry(E, s, linear=lam) for lam in _central_corrections(E)]
        for s in isos
    ]
    for choice in itertools.product(*options):
        try:
            extend_action(RA, list(choice))
            return list(choice)
        except ConstructionError:
            continue
    raise AssemblyError("lifted automorphisms violate the relations of RA; repair failed")


# -- hypotheses ---------------------------------------------------------------------------


def is_fermat_prime(r: int) -> bool:
    return isprime(r) and r >= 3 and ((r - 1) & (r - 2)) == 0


@dataclass(frozen=True)
class Verdict:
    passed: bool
    details: dict

    def to_dict(self) -> dict:
        return {"passed": self.passed, **self.details}


@dataclass(frozen=True)
class HypothesisReport:
    a: Verdict
    b: Verdict
    c: Verdict
    d: Verdict
    proposition: Verdict

    @property
    def all_passed(self) -> bool:
        return self.a.passed and self.b.passed and self.c.passed and self.d.passed

    def to_dict(self) -> dict:
        return {
            "a": self.a.to_dict(),
            "b": self.b.to_dict(),
            "c": self.c.to_dict(),
            "d": self.d.to_dict(),
            "proposition_sections": self.proposition.to_dict(),
            "all_passed": self.all_passed,
        }


def _acting_trivially(G: FiniteGroup, A: Subgroup, S: Subgroup) -> Subgroup:
    """Elements of ``A`` centralizing ``S`` (conjugation in ``G``)."""
    return A.intersection(centralizer(G, S))


def _check_a(sc: Scenario) -> Verdict:
    G, P, A = sc.GA, sc.P, sc.A
    H, emb = P.as_group()
    inv = group_invariants(H)
    pp = sc.p
    extraspecial = (
        inv.center.order == pp
        and inv.derived == inv.center
        and inv.frattini == inv.center
        and _is_power(P.order, pp)
        and round(math.log(P.order, pp)) % 2 == 1
    )
    Z = Subgroup(G, tuple(sorted(int(emb[x]) for x in inv.center.elements)))
    central = Z.is_subgroup_of(G.center)
    CAP = _acting_trivially(G, A, P)
    return Verdict(
        extraspecial and central and CAP.order == 1,
        {
            "extraspecial": extraspecial,
            "P_order": P.order,
            "center_order": inv.center.order,
            "center_in_center_of_GA": central,
            "C_A(P)_order": CAP.order,
            "C_A(P)_witness": int(next((x for x in CAP.elements if x), 0)),
        },
    )


def _check_b(sc: Scenario) -> Verdict:
    G, P, R, A = sc.GA, sc.P, sc.R, sc.A
    R0 = _acting_trivially(G, R, P)
    H, emb = R.as_group()
    pos = {int(x): i for i, x in enumerate(emb)}
    R0_loc = Subgroup.from_elements(H, [pos[x] for x in R0.elements])
    Q, proj = quotient_group(H, R0_loc)
    inv = group_invariants(Q, frattini=False)
    cls = inv.nilpotency_class
    exp_ok = sc.r % inv.exponent == 0 or inv.exponent == 1
    # A_0 = C_A(R/R0): a with x^a in x R0 for every x in R
    A0 = []
    for a in A.elements:
        ok = True
        for x in H.gens:
            y = G.conj(int(emb[x]), a)
            if proj.images[pos[int(y)]] != proj.images[x]:
                ok = False
                break
        if ok:
            A0.append(a)
    passed = cls is not None and cls <= 2 and exp_ok and len(A0) == 1
    return Verdict(
        passed,
        {
            "R0_order": R0.order,
            "quotient_order": Q.order,
            "quotient_class": cls,
            "quotient_exponent": inv.exponent,
            "A0_order": len(A0),
            "A0_witness": int(next((x for x in A0 if x), 0)),
        },
    )


def _hall_parts(sc: Scenario):
    G, A = sc.GA, sc.A
    orders = G.element_orders[A.array]
    p, r = sc.p, sc.r
    masks = {
        "A_p": np.array([_is_power(int(o), p) for o in orders]),
        "A_r": np.array([_is_power(int(o), r) for o in orders]),
        "A_pr'": np.array([math.gcd(int(o), p * r) == 1 for o in orders]),
    }
    parts = {}
    for key, mask in masks.items():
        try:
            parts[key] = Subgroup.from_elements(G, A.array[mask])
        except GroupError:
            parts[key] = None
    return parts


def _section_data(module: GModule, seed: int) -> dict:
    """Regular orbits on each isotype of a semisimple module."""
    if module.dim == 0:
        return {"sections": [], "all_regular": True}
    decomp = homogeneous_components(module, module.group.whole(), seed=seed)
    rows = []
    for comp in decomp.components:
        X = comp.isotype.as_module()
        x = least_regular_vector(X, nonzero=True)
        rows.append(
            {
                "dim": comp.isotype.dim,
                "multiplicity": comp.multiplicity,
                "kernel_order": X.kernel.order,
                "regular_vector": list(x) if x is not None else None,
            }
        )
    return {"sections": rows, "all_regular": all(r["regular_vector"] is not None for r in rows)}


def _check_c(sc: Scenario, seed: int) -> tuple[Verdict, Verdict]:
    G, R, A = sc.GA, sc.R, sc.A
    parts = _hall_parts(sc)
    details: dict = {}
    structure = all(v is not None for v in parts.values())
    if structure:
        Ap, Ar, Ao = parts["A_p"], parts["A_r"], parts["A_pr'"]
        structure = Ap.order * Ar.order * Ao.order == A.order
        for X, Y in ((Ap, Ar), (Ap, Ao), (Ar, Ao)):
            for s in X.gens:
                if not np.array_equal(G.table[s, Y.array], G.table[Y.array, s]):
                    structure = False
    details["direct_decomposition"] = structure
    orders = G.element_orders
    cyc = {}
    for key in ("A_p", "A_r"):
        H = parts[key]
        cyc[key] = H is not None and (H.order == 1 or int(orders[H.array].max()) == H.order)
        details[f"{key}_order"] = H.order if H is not None else None
        details[f"{key}_cyclic"] = cyc[key]
    prop = Verdict(False, {"reading": "per-section, A_{r'} on R/Phi(R) and its dual"})
    if not structure:
        details["regular_orbit_reading"] = "whole module, A_{p,r'} (not evaluated)"
        return Verdict(False, details), prop
    Ao = parts["A_pr'"]
    sec = section_action(G, R, Ao, sc.r)
    scan = regular_orbit_scan(sec.module)
    details["section_rank"] = sec.module.dim
    details["A_pr'_order"] = Ao.order
    details["A_pr'_kernel_order"] = sec.module.kernel.order
    details["regular_orbit_reading"] = "whole module, A_{p,r'} modulo its kernel"
    details["regular_orbit_whole"] = scan.has_regular_orbit
    details["regular_orbit_witness"] = list(scan.regular_orbit) if scan.regular_orbit is not None else None
    details["orbit_histogram"] = {str(k): v for k, v in scan.histogram.items()}
    per = _section_data(sec.module, seed)
    details["regular_orbit_per_section"] = per["all_regular"]
    details["sections"] = per["sections"]
    passed = structure and cyc["A_p"] and cyc["A_r"] and scan.has_regular_orbit
    # the form the Proposition consumes: A_{r'} = A_p x A_{p,r'}
    Arp = parts["A_p"].join(Ao)
    secr = section_action(G, R, Arp, sc.r)
    mods = {"module": secr.module, "dual": dual_module(secr.module)}
    pdet = {"reading": "per-section, A_{r'} on R/Phi(R) and its dual", "A_r'_order": Arp.order,
            "faithful": secr.module.is_faithful}
    ok = True
    for key, mod in mods.items():
        if Arp.order % sc.r == 0:
            pdet[key] = {"skipped": "r divides |A_{r'}|"}
            ok = False
            continue
        d = _section_data(mod, seed)
        pdet[key] = d
        ok = ok and d["all_regular"]
    return Verdict(passed, details), Verdict(ok, pdet)


def _check_d(sc: Scenario) -> Verdict:
    fermat = is_fermat_prime(sc.r)
    return Verdict(not (sc.p == 2 and fermat), {"p": sc.p, "r": sc.r, "r_is_fermat": fermat})


def validate_theorem_hypotheses(sc: Scenario, seed: int = 0) -> HypothesisReport:
    a = _check_a(sc)
    b = _check_b(sc)
    c, prop = _check_c(sc, seed)
    d = _check_d(sc)
    return HypothesisReport(a, b, c, d, prop)


# -- the character check ---------------------------------------------------------------------


@dataclass(frozen=True)
class CharacterVerdict:
    index: int
    degree: int
    faithful_on_P: bool
    A_contains_regular: bool | None
    A_slack: int | None
    A_multiplicities: tuple[int, ...] | None
    R_contains_regular: bool | None
    R_slack: int | None

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "degree": self.degree,
            "faithful_on_P": self.faithful_on_P,
            "A_contains_regular": self.A_contains_regular,
            "A_slack": self.A_slack,
            "A_multiplicities": list(self.A_multiplicities) if self.A_multiplicities is not None else None,
            "R_contains_regular": self.R_contains_regular,
            "R_slack": self.R_slack,
        }


@dataclass(frozen=True, eq=False)
class TheoremReport:
    characters: tuple[CharacterVerdict, ...]
    summary: bool
    vacuous: bool
    R_summary: bool
    hypotheses_passed: bool | None
    table: CharacterTable = field(repr=False)

    @property
    def faithful(self) -> tuple[CharacterVerdict, ...]:
        return tuple(c for c in self.characters if c.faithful_on_P)

    def to_dict(self) -> dict:
        return {
            "group_order": self.table.group.order,
            "class_count": self.table.classes.count,
            "degrees": list(self.table.degrees),
            "faithful_on_P": [c.to_dict() for c in self.faithful],
            "summary": self.summary,
            "vacuous": self.vacuous,
            "R_summary": self.R_summary,
            "hypotheses_passed": self.hypotheses_passed,
        }


def run_theorem_check(
    sc: Scenario,
    table: CharacterTable | None = None,
    hypotheses: HypothesisReport | None = None,
    seed: int = 0,
) -> TheoremReport:
    T = table if table is not None else dixon_character_table(sc.GA, seed=seed)
    HA, _ = sc.A.as_group()
    HR, _ = sc.R.as_group()
    TA = dixon_character_table(HA, seed=seed)
    TR = dixon_character_table(HR, seed=seed)
    rows = []
    for chi in range(len(T.degrees)):
        f = faithful_on(T, chi, sc.P)
        if not f:
            rows.append(CharacterVerdict(chi, T.degrees[chi], False, None, None, None, None, None))
            continue
        ra = restrict_character(T, chi, sc.A, table_A=TA)
        ca = contains_regular_character(ra)
        rr = restrict_character(T, chi, sc.R, table_A=TR)
        cr = contains_regular_character(rr)
        rows.append(
            CharacterVerdict(chi, T.degrees[chi], True, ca.contains, ca.slack, ra.multiplicities, cr.contains, cr.slack)
        )
    faithful = [r for r in rows if r.faithful_on_P]
    return TheoremReport(
        characters=tuple(rows),
        summary=all(r.A_contains_regular for r in faithful),
        vacuous=not faithful,
        R_summary=all(r.R_contains_regular for r in faithful),
        hypotheses_passed=hypotheses.all_passed if hypotheses is not None else None,
        table=T,
    )
