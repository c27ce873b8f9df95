"""Finite groups as explicit multiplication tables.

Elements are the indices ``0..n-1`` with ``0`` the identity.  ``table[x, y]``
is the index of ``x*y``.  Products are read left to right and composite maps
act on the right, matching the row-vector convention used for modules.

Tables stay small (the hard cap is :data:`ORDER_CAP`), so every structural
claim -- normality, homomorphism, automorphism -- is checked exhaustively
instead of being trusted.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, reduce
from typing import Iterable, Sequence

import numpy as np
from sympy import factorint

__all__ = [
    "ORDER_CAP",
    "GroupError",
    "SizeCapError",
    "InvalidGeneratorError",
    "NormalityError",
    "ConstructionError",
    "HypothesisError",
    "UnsupportedError",
    "FiniteGroup",
    "Subgroup",
    "Homomorphism",
    "ConjugacyData",
    "GroupInvariants",
    "SylowDecomposition",
    "close_generators",
    "group_from_table",
    "group_invariants",
    "conjugacy_classes",
    "quotient_group",
    "product_group",
    "direct_product",
    "centralizer",
    "nilpotent_sylow_decomposition",
    "frattini_bruteforce",
    "all_subgroups",
    "is_prime_power",
    "cyclic_group",
    "symmetric_group",
    "dihedral_group",
    "quaternion_group",
    "heisenberg_group",
]

ORDER_CAP = 5000


class GroupError(ValueError):
    pass


class SizeCapError(GroupError):
    pass


class InvalidGeneratorError(GroupError):
    pass


class NormalityError(GroupError):
    pass


class ConstructionError(GroupError):
    pass


class HypothesisError(GroupError):
    pass


class UnsupportedError(GroupError):
    pass


def _index_dtype(n: int):
    return np.int16 if n <= np.iinfo(np.int16).max else np.int32


def is_prime_power(n: int) -> tuple[int, int] | None:
    """``(q, k)`` with ``n == q**k`` for a prime ``q``, else ``None`` (``n == 1`` gives ``None``)."""
    f = factorint(n)
    if len(f) != 1:
        return None
    (q, k), = f.items()
    return q, k


class FiniteGroup:
    """A group given by its full multiplication table.

    ``elements`` carries provenance: the permutation, matrix or pair each index
    stands for.  ``gens`` are indices of a generating set.
    """

    def __init__(
        self,
        table: np.ndarray,
        gens: Sequence[int],
        elements: Sequence | None = None,
        name: str = "",
        verify: bool = True,
    ):
        table = np.asarray(table)
        n = table.shape[0]
        if table.shape != (n, n) or n == 0:
            raise ConstructionError("multiplication table must be square and nonempty")
        if n > ORDER_CAP:
            raise SizeCapError(f"group order {n} exceeds cap {ORDER_CAP}")
        self.table = table.astype(_index_dtype(n), copy=False)
        self.table.flags.writeable = False
        self.order = n
        self.gens = tuple(int(g) for g in gens)
        self.elements = list(elements) if elements is not None else list(range(n))
        self.name = name
        rows, cols = np.nonzero(self.table == 0)
        inv = np.empty(n, dtype=np.int64)
        inv[rows] = cols
        self.inv = inv
        if verify:
            self._verify()

    def _verify(self):
        n = self.order
        ar = np.arange(n)
        t = self.table.astype(np.int64)
        if not (np.array_equal(t[0], ar) and np.array_equal(t[:, 0], ar)):
            raise ConstructionError("index 0 is not the identity")
        if not (np.array_equal(np.sort(t, axis=1), np.broadcast_to(ar, (n, n)))
                and np.array_equal(np.sort(t, axis=0), np.broadcast_to(ar[:, None], (n, n)))):
            raise ConstructionError("multiplication table is not a Latin square")
        # Light's test: associativity against a generating set suffices
        for s in self.gens:
            if not np.array_equal(t[t, s], t[:, t[:, s]]):
                raise ConstructionError("table is not associative")
        if self.generated_by(self.gens).sum() != n:
            raise ConstructionError("generators do not generate the table")

    def __len__(self):
        return self.order

    def __repr__(self):
        label = self.name or "FiniteGroup"
        return f"<{label} of order {self.order}>"

    # -- element arithmetic ----------------------------------------------

    def mul(self, x: int, y: int) -> int:
        return int(self.table[x, y])

    def inverse(self, x: int) -> int:
        return int(self.inv[x])

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = self.inverse(x), -k
        result = 0
        base = x
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def conj(self, x, g):
        """``g^-1 x g`` (vectorised over ``x``)."""
        t = self.table
        return t[t[self.inv[g], x], g]

    def commutator(self, x, y):
        """``x^-1 y^-1 x y`` (vectorised)."""
        t = self.table
        return t[t[self.inv[x], self.inv[y]], t[x, y]]

    def product(self, word: Iterable[int]) -> int:
        return reduce(self.mul, word, 0)

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.order
        ar = np.arange(n)
        orders = np.zeros(n, dtype=np.int64)
        cur = ar.copy()
        k = 1
        while True:
            hit = (cur == 0) & (orders == 0)
            orders[hit] = k
            if orders.all():
                return orders
            cur = self.table[cur, ar].astype(np.int64)
            k += 1

    @cached_property
    def exponent(self) -> int:
        return math.lcm(*(int(o) for o in np.unique(self.element_orders)))

    def powers(self, k: int) -> np.ndarray:
        """Array of ``x**k`` for every element ``x``."""
        ar = np.arange(self.order)
        result = np.zeros(self.order, dtype=np.int64)
        base = ar.copy()
        k %= self.exponent
        while k:
            if k & 1:
                result = self.table[result, base].astype(np.int64)
            base = self.table[base, base].astype(np.int64)
            k >>= 1
        return result

    @cached_property
    def words(self) -> list[tuple[int, ...]]:
        """Shortest generator word (positions into ``gens``) for every element."""
        words: list[tuple[int, ...] | None] = [None] * self.order
        words[0] = ()
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for i, s in enumerate(self.gens):
                y = int(self.table[x, s])
                if words[y] is None:
                    words[y] = words[x] + (i,)
                    queue.append(y)
        return words  # type: ignore[return-value]

    @cached_property
    def bfs_tree(self) -> list[tuple[int, int, int]]:
        """Spanning tree ``(parent, generator position, child)`` in BFS order."""
        seen = np.zeros(self.order, dtype=bool)
        seen[0] = True
        tree = []
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for i, s in enumerate(self.gens):
                y = int(self.table[x, s])
                if not seen[y]:
                    seen[y] = True
                    tree.append((x, i, y))
                    queue.append(y)
        return tree

    # -- subgroups ---------------------------------------------------------

    def generated_by(self, gens: Iterable[int]) -> np.ndarray:
        """Boolean membership mask of the subgroup generated by ``gens``."""
        gens = np.unique(np.asarray(list(gens), dtype=np.int64))
        mask = np.zeros(self.order, dtype=bool)
        mask[0] = True
        if gens.size == 0:
            return mask
        frontier = np.array([0])
        while frontier.size:
            new = np.unique(self.table[np.ix_(frontier, gens)].ravel())
            new = new[~mask[new]]
            mask[new] = True
            frontier = new
        return mask

    def subgroup(self, gens: Iterable[int]) -> "Subgroup":
        return Subgroup.from_mask(self, self.generated_by(gens))

    def whole(self) -> "Subgroup":
        return Subgroup(self, tuple(range(self.order)))

    def trivial(self) -> "Subgroup":
        return Subgroup(self, (0,))

    def normal_closure(self, gens: Iterable[int]) -> "Subgroup":
        mask = self.generated_by(gens)
        while True:
            elems = np.flatnonzero(mask)
            conj = np.concatenate([self.conj(elems, g) for g in self.gens]) if self.gens else elems
            if mask[conj].all():
                return Subgroup.from_mask(self, mask)
            mask = self.generated_by(np.concatenate([elems, conj]))

    @cached_property
    def center(self) -> "Subgroup":
        mask = np.ones(self.order, dtype=bool)
        for s in self.gens:
            mask &= self.table[:, s] == self.table[s, :]
        return Subgroup.from_mask(self, mask)

    @cached_property
    def is_abelian(self) -> bool:
        return self.center.order == self.order


@dataclass(frozen=True, eq=False)
class Subgroup:
    """A subgroup of ``group``: a sorted tuple of element indices."""

    group: FiniteGroup
    elements: tuple[int, ...]

    @classmethod
    def from_mask(cls, group: FiniteGroup, mask: np.ndarray) -> "Subgroup":
        return cls(group, tuple(int(x) for x in np.flatnonzero(mask)))

    @classmethod
    def from_elements(cls, group: FiniteGroup, elements: Iterable[int]) -> "Subgroup":
        """Checked constructor: the set must be closed and contain the identity."""
        elems = sorted({int(x) for x in elements})
        mask = np.zeros(group.order, dtype=bool)
        mask[elems] = True
        if not mask[0]:
            raise GroupError("subset does not contain the identity")
        e = np.array(elems)
        if not mask[group.table[np.ix_(e, e)]].all() or not mask[group.inv[e]].all():
            raise GroupError("subset is not closed")
        return cls(group, tuple(elems))

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return self.order

    def __contains__(self, x) -> bool:
        return bool(self.mask[int(x)])

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.group is other.group and self.elements == other.elements

    def __hash__(self):
        return hash((id(self.group), self.elements))

    def __repr__(self):
        return f"<Subgroup of order {self.order} in {self.group!r}>"

    @cached_property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.group.order, dtype=bool)
        m[list(self.elements)] = True
        return m

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.elements, dtype=np.int64)

    @cached_property
    def gens(self) -> tuple[int, ...]:
        """A small generating set, chosen greedily by lowest index."""
        mask = np.zeros(self.group.order, dtype=bool)
        mask[0] = True
        gens: list[int] = []
        for x in self.elements:
            if not mask[x]:
                gens.append(x)
                mask = self.group.generated_by(gens)
                if mask.sum() == self.order:
                    break
        return tuple(gens)

    def is_subgroup_of(self, other: "Subgroup") -> bool:
        return bool(other.mask[self.array].all())

    def intersection(self, other: "Subgroup") -> "Subgroup":
        return Subgroup.from_mask(self.group, self.mask & other.mask)

    def join(self, other: "Subgroup") -> "Subgroup":
        return self.group.subgroup(self.gens + other.gens)

    def is_normal(self, in_group: "Subgroup | None" = None) -> bool:
        G = self.group
        conjugators = in_group.gens if in_group is not None else G.gens
        return all(self.mask[G.conj(self.array, g)].all() for g in conjugators)

    @cached_property
    def _as_group(self) -> tuple[FiniteGroup, np.ndarray]:
        G = self.group
        emb = self.array
        pos = np.full(G.order, -1, dtype=np.int64)
        pos[emb] = np.arange(self.order)
        table = pos[G.table[np.ix_(emb, emb)]]
        gens = [int(pos[g]) for g in self.gens]
        elements = [G.elements[x] for x in emb]
        H = FiniteGroup(table, gens, elements, name=f"subgroup of {G.name}".strip(), verify=False)
        return H, emb

    def as_group(self) -> tuple[FiniteGroup, np.ndarray]:
        """The subgroup as a standalone group plus its embedding (index array)."""
        return self._as_group


@dataclass(frozen=True, eq=False)
class Homomorphism:
    source: FiniteGroup
    target: FiniteGroup
    images: np.ndarray

    def __post_init__(self):
        imgs = np.asarray(self.images, dtype=np.int64)
        if imgs.shape != (self.source.order,) or imgs[0] != 0:
            raise ConstructionError("identity must map to identity")
        s, t = self.source.table, self.target.table
        if not np.array_equal(imgs[s], t[imgs[:, None], imgs[None, :]]):
            raise ConstructionError("map is not a homomorphism")
        object.__setattr__(self, "images", imgs)

    def __call__(self, x):
        return self.images[x]

    @cached_property
    def kernel(self) -> Subgroup:
        return Subgroup.from_mask(self.source, self.images == 0)

    @cached_property
    def image(self) -> Subgroup:
        mask = np.zeros(self.target.order, dtype=bool)
        mask[self.images] = True
        return Subgroup.from_mask(self.target, mask)


# -- construction --------------------------------------------------------


def _perm_key(x):
    return ("perm", tuple(int(i) for i in x))


def close_generators(gens, modulus: int | None = None, cap: int = ORDER_CAP, name: str = "") -> FiniteGroup:
    """Close a list of permutations (image lists) or square matrices mod ``modulus``.

    Permutations compose left to right: ``(x*y)[i] == y[x[i]]``.  Matrices
    multiply as ``x @ y``.
    """
    gens = list(gens)
    if not gens:
        return FiniteGroup(np.zeros((1, 1), dtype=np.int64), [], [None], name=name or "trivial")
    first = np.asarray(gens[0])
    if first.ndim == 1:
        degree = len(first)
        perms = []
        for g in gens:
            g = tuple(int(i) for i in g)
            if len(g) != degree or sorted(g) != list(range(degree)):
                raise InvalidGeneratorError(f"{g} is not a permutation of 0..{degree - 1}")
            perms.append(np.array(g, dtype=np.int64))
        identity = np.arange(degree, dtype=np.int64)
        key = lambda a: a.tobytes()
        mult = lambda a, b: b[a]
        gen_elems = perms
    else:
        if modulus is None:
            raise InvalidGeneratorError("matrix generators need a modulus")
        from .ffla import rank

        d = first.shape[0]
        gen_elems = []
        for g in gens:
            g = np.asarray(g, dtype=np.int64) % modulus
            if g.shape != (d, d):
                raise InvalidGeneratorError("matrix generators must be square of equal size")
            if rank(g, modulus) < d:
                raise InvalidGeneratorError("singular matrix generator")
            gen_elems.append(g)
        identity = np.eye(d, dtype=np.int64)
        key = lambda a: a.tobytes()
        mult = lambda a, b: (a @ b) % modulus

    elements = [identity]
    index = {key(identity): 0}
    right = []  # right[x][i] = index of x * gens[i]
    x = 0
    while x < len(elements):
        row = []
        for g in gen_elems:
            y = mult(elements[x], g)
            k = key(y)
            j = index.get(k)
            if j is None:
                j = len(elements)
                if j >= cap:
                    raise SizeCapError(f"closure exceeds cap {cap}")
                index[k] = j
                elements.append(y)
            row.append(j)
        right.append(row)
        x += 1
    n = len(elements)
    right = np.array(right, dtype=np.int64)
    table = np.zeros((n, n), dtype=np.int64)
    table[:, 0] = np.arange(n)
    gen_idx = [int(right[0, i]) for i in range(len(gen_elems))]
    # fill columns along a BFS tree: col(y*s) = right[col(y), s]
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    queue = deque([0])
    while queue:
        y = queue.popleft()
        for i in range(len(gen_elems)):
            z = int(right[y, i])
            if not seen[z]:
                seen[z] = True
                table[:, z] = right[table[:, y], i]
                queue.append(z)
    provenance = [tuple(map(int, e)) if e.ndim == 1 else e for e in elements]
    return FiniteGroup(table, gen_idx, provenance, name=name, verify=True)


def group_from_table(table, gens, elements=None, name="") -> FiniteGroup:
    return FiniteGroup(np.asarray(table), gens, elements, name=name, verify=True)


def cyclic_group(n: int) -> FiniteGroup:
    if n == 1:
        return close_generators([], name="C1")
    return close_generators([[(i + 1) % n for i in range(n)]], name=f"C{n}")


def symmetric_group(n: int) -> FiniteGroup:
    if n <= 1:
        return close_generators([], name=f"S{n}")
    gens = [[1, 0] + list(range(2, n))]
    if n > 2:
        gens.append([(i + 1) % n for i in range(n)])
    return close_generators(gens, name=f"S{n}")


def dihedral_group(order: int) -> FiniteGroup:
    """Dihedral group of the given order (``order == 2m``), acting on ``m`` points."""
    m = order // 2
    rot = [(i + 1) % m for i in range(m)]
    ref = [(-i) % m for i in range(m)]
    return close_generators([rot, ref], name=f"D{order}")


def quaternion_group() -> FiniteGroup:
    # left-regular-free model: Q8 inside GL(2, 3)
    i = [[0, 2], [1, 0]]
    j = [[1, 1], [1, 2]]
    return close_generators([i, j], modulus=3, name="Q8")


def heisenberg_group(p: int) -> FiniteGroup:
    """Upper unitriangular 3x3 matrices over F_p (order p^3)."""
    e12 = [[1, 1, 0], [0, 1, 0], [0, 0, 1]]
    e23 = [[1, 0, 0], [0, 1, 1], [0, 0, 1]]
    return close_generators([e12, e23], modulus=p, name=f"Heis({p})")


# -- structure -------------------------------------------------------------


@dataclass(frozen=True)
class ConjugacyData:
    representatives: tuple[int, ...]
    sizes: tuple[int, ...]
    class_of: np.ndarray
    power_map: np.ndarray  # power_map[c, m] = class of rep_c ** m, 0 <= m < exponent
    orders: np.ndarray  # element orders, indexed by element
    exponent: int

    @property
    def count(self) -> int:
        return len(self.representatives)

    @property
    def rep_orders(self) -> tuple[int, ...]:
        return tuple(int(self.orders[r]) for r in self.representatives)

    @property
    def inverse_class(self) -> np.ndarray:
        return self.power_map[:, (self.exponent - 1) % self.exponent] if self.exponent > 1 else self.power_map[:, 0]

    def members(self, c: int) -> np.ndarray:
        return np.flatnonzero(self.class_of == c)


def conjugacy_classes(G: FiniteGroup) -> ConjugacyData:
    from scipy.sparse import coo_matrix
    from scipy.sparse.csgraph import connected_components

    n = G.order
    ar = np.arange(n)
    if G.gens:
        src = np.concatenate([ar for _ in G.gens])
        dst = np.concatenate([G.conj(ar, g).astype(np.int64) for g in G.gens])
        graph = coo_matrix((np.ones(src.size, dtype=np.int8), (src, dst)), shape=(n, n))
        _, labels = connected_components(graph, directed=True, connection="weak")
    else:
        labels = np.zeros(n, dtype=np.int64)
    # relabel classes by their least element
    first = np.full(labels.max() + 1, n, dtype=np.int64)
    np.minimum.at(first, labels, ar)
    order = np.argsort(first)
    reps = first[order]
    relabel = np.empty_like(order)
    relabel[order] = np.arange(order.size)
    class_of = relabel[labels]
    sizes = np.bincount(class_of, minlength=reps.size)
    e = G.exponent
    pm = np.zeros((reps.size, e), dtype=np.int64)
    cur = np.zeros(reps.size, dtype=np.int64)
    for m in range(e):
        pm[:, m] = class_of[cur]
        cur = G.table[cur, reps].astype(np.int64)
    return ConjugacyData(
        representatives=tuple(int(r) for r in reps),
        sizes=tuple(int(s) for s in sizes),
        class_of=class_of,
        power_map=pm,
        orders=G.element_orders,
        exponent=e,
    )


@dataclass(frozen=True)
class GroupInvariants:
    order: int
    center: Subgroup
    derived: Subgroup
    lower_central_series: tuple[Subgroup, ...]
    nilpotency_class: int | None
    exponent: int
    frattini: Subgroup | None


def _lower_central_series(G: FiniteGroup) -> tuple[list[Subgroup], int | None]:
    series = [G.whole()]
    while True:
        cur = series[-1]
        if cur.order == 1:
            return series, len(series) - 1
        comms = np.concatenate([G.commutator(cur.array, s) for s in G.gens])
        nxt = G.normal_closure(comms)
        if nxt.order == cur.order:
            return series, None
        series.append(nxt)


def _frattini_prime_power(G: FiniteGroup, q: int, derived: Subgroup) -> Subgroup:
    qth = np.unique(G.powers(q))
    return G.subgroup(list(derived.gens) + [int(x) for x in qth])


def group_invariants(G: FiniteGroup, frattini: bool = True, frattini_cap: int = 200) -> GroupInvariants:
    series, cls = _lower_central_series(G)
    derived = series[1] if len(series) > 1 else G.trivial()
    phi = None
    if frattini:
        pp = is_prime_power(G.order)
        if G.order == 1:
            phi = G.trivial()
        elif pp is not None:
            phi = _frattini_prime_power(G, pp[0], derived)
        elif G.order <= frattini_cap:
            phi = frattini_bruteforce(G)
        else:
            raise UnsupportedError(
                f"Frattini subgroup of a non-prime-power group of order {G.order} > {frattini_cap}")
    return GroupInvariants(
        order=G.order,
        center=G.center,
        derived=derived,
        lower_central_series=tuple(series),
        nilpotency_class=cls,
        exponent=G.exponent,
        frattini=phi,
    )


def all_subgroups(G: FiniteGroup, cap: int = 200) -> list[Subgroup]:
    """Every subgroup, by joining cyclic subgroups.  Brute force, small groups only."""
    if G.order > cap:
        raise UnsupportedError(f"subgroup enumeration capped at order {cap}")
    cyclic = {}
    for x in range(G.order):
        m = G.generated_by([x])
        cyclic.setdefault(m.tobytes(), (m, x))
    found = {m.tobytes(): m for m, _ in cyclic.values()}
    layer = list(found.values())
    gens_of = [x for _, x in cyclic.values()]
    while layer:
        nxt = []
        for m in layer:
            for x in gens_of:
                if m[x]:
                    continue
                j = G.generated_by(list(np.flatnonzero(m)) + [x])
                k = j.tobytes()
                if k not in found:
                    found[k] = j
                    nxt.append(j)
        layer = nxt
    subs = [Subgroup.from_mask(G, m) for m in found.values()]
    subs.sort(key=lambda H: (H.order, H.elements))
    return subs


def frattini_bruteforce(G: FiniteGroup, cap: int = 200) -> Subgroup:
    """Intersection of the maximal subgroups (oracle for small groups)."""
    if G.order == 1:
        return G.trivial()
    subs = [H for H in all_subgroups(G, cap) if H.order < G.order]
    maximal = [H for H in subs
               if not any(K.order > H.order and H.is_subgroup_of(K) for K in subs)]
    mask = np.ones(G.order, dtype=bool)
    for H in maximal:
        mask &= H.mask
    return Subgroup.from_mask(G, mask)


def quotient_group(G: FiniteGroup, N: Subgroup) -> tuple[FiniteGroup, Homomorphism]:
    if N.group is not G:
        raise GroupError("subgroup belongs to a different group")
    if not N.is_normal():
        raise NormalityError("subgroup is not normal")
    coset_min = G.table[:, N.array].min(axis=1).astype(np.int64)
    reps = np.unique(coset_min)
    pos = np.full(G.order, -1, dtype=np.int64)
    pos[reps] = np.arange(reps.size)
    proj = pos[coset_min]
    table = proj[G.table[np.ix_(reps, reps)]]
    gens = sorted({int(proj[g]) for g in G.gens} - {0})
    Q = FiniteGroup(table, gens, [("coset", int(r)) for r in reps], name=f"{G.name}/N".strip("/"))
    hom = Homomorphism(G, Q, proj)
    if hom.kernel != N:
        raise ConstructionError("projection kernel differs from N")
    return Q, hom


def _is_automorphism(N: FiniteGroup, phi: np.ndarray) -> bool:
    if phi.shape != (N.order,) or np.unique(phi).size != N.order or phi[0] != 0:
        return False
    t = N.table
    return bool(np.array_equal(phi[t], t[phi[:, None], phi[None, :]]))


def product_group(N: FiniteGroup, H: FiniteGroup, action="trivial", name: str = "") -> tuple[FiniteGroup, np.ndarray, np.ndarray]:
    """Semidirect product ``N`` by ``H`` with ``H`` acting on the right.

    ``action`` lists, for each generator of ``H``, an automorphism of ``N`` as an
    index array ``n -> n^s``; ``"trivial"`` gives the direct product.  The
    element ``h*n`` gets index ``h * |N| + n`` and multiplies as
    ``(h1 n1)(h2 n2) = (h1 h2)(n1^h2 n2)``.

    Returns ``(group, embedding of N, embedding of H)``.
    """
    nN, nH = N.order, H.order
    if nN * nH > ORDER_CAP:
        raise SizeCapError(f"product order {nN * nH} exceeds cap {ORDER_CAP}")
    if isinstance(action, str):
        if action != "trivial":
            raise ConstructionError(f"unknown action {action!r}")
        psi = np.broadcast_to(np.arange(nN), (nH, nN))
    else:
        action = [np.asarray(a, dtype=np.int64) for a in action]
        if len(action) != len(H.gens):
            raise ConstructionError("need one automorphism per generator of H")
        for a in action:
            if not _is_automorphism(N, a):
                raise ConstructionError("action image is not an automorphism")
        psi = extend_action(H, action)
    tN = N.table.astype(np.int64)
    tH = H.table.astype(np.int64)
    n = nN * nH
    table = np.empty((n, n), dtype=_index_dtype(n))
    ns = np.arange(nN)
    for h1 in range(nH):
        # rows (h1, n1); columns (h2, n2)
        new_h = tH[h1]  # by h2
        moved = psi[:, ns].T  # moved[n1, h2] = n1^h2
        new_n = tN[moved[:, :, None], ns[None, None, :]]  # (n1, h2, n2)
        block = new_h[None, :, None] * nN + new_n
        table[h1 * nN:(h1 + 1) * nN] = block.reshape(nN, n)
    gens = [int(g) for g in N.gens] + [int(h) * nN for h in H.gens]
    elements = [("pair", h, m) for h in range(nH) for m in range(nN)]
    G = FiniteGroup(table, gens, elements, name=name, verify=True)
    return G, ns.copy(), np.arange(nH) * nN


def extend_action(H: FiniteGroup, action: Sequence[np.ndarray]) -> np.ndarray:
    """Extend per-generator right actions to all of ``H``; verify consistency.

    ``psi[h]`` is the permutation ``x -> x^h``; ``psi[h*s] = psi[s][psi[h]]``.
    Raises :class:`ConstructionError` if the assignment does not respect the
    relations of ``H``.
    """
    m = len(action[0]) if len(action) else 1
    psi = np.zeros((H.order, m), dtype=np.int64)
    psi[0] = np.arange(m)
    for parent, i, child in H.bfs_tree:
        psi[child] = action[i][psi[parent]]
    for i, s in enumerate(H.gens):
        if not np.array_equal(psi[H.table[:, s].astype(np.int64)], action[i][psi]):
            raise ConstructionError("action does not respect the relations of H")
    return psi


def direct_product(G1: FiniteGroup, G2: FiniteGroup, name: str = "") -> FiniteGroup:
    return product_group(G1, G2, "trivial", name=name)[0]


def centralizer(G: FiniteGroup, S) -> Subgroup:
    elems = S.array if isinstance(S, Subgroup) else np.asarray(list(S), dtype=np.int64)
    mask = np.ones(G.order, dtype=bool)
    for s in elems:
        mask &= G.table[:, s] == G.table[s, :]
    return Subgroup.from_mask(G, mask)


@dataclass(frozen=True)
class SylowDecomposition:
    p: int
    r: int
    A_p: Subgroup
    A_r: Subgroup
    A_pr_prime: Subgroup
    p_cyclic: bool
    r_cyclic: bool

    @property
    def r_prime(self) -> Subgroup:
        """The r'-Hall subgroup ``A_p x A_{p,r}'``."""
        return self.A_p.join(self.A_pr_prime)

    @property
    def p_prime(self) -> Subgroup:
        return self.A_r.join(self.A_pr_prime)


def _is_power_of(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def _is_cyclic(H: Subgroup) -> bool:
    return H.order == 1 or int(H.group.element_orders[H.array].max()) == H.order


def nilpotent_sylow_decomposition(A: FiniteGroup, p: int, r: int) -> SylowDecomposition:
    inv = group_invariants(A, frattini=False)
    if inv.nilpotency_class is None:
        raise HypothesisError("group is not nilpotent")
    orders = A.element_orders
    p_mask = np.array([_is_power_of(int(o), p) for o in orders])
    r_mask = np.array([_is_power_of(int(o), r) for o in orders])
    rest = np.array([math.gcd(int(o), p * r) == 1 for o in orders])
    parts = [Subgroup.from_elements(A, np.flatnonzero(m)) for m in (p_mask, r_mask, rest)]
    Ap, Ar, Apr = parts
    if Ap.order * Ar.order * Apr.order != A.order:
        raise ConstructionError("Sylow parts do not multiply to |A|")
    for X, Y in ((Ap, Ar), (Ap, Apr), (Ar, Apr)):
        if X.intersection(Y).order != 1:
            raise ConstructionError("Sylow parts intersect nontrivially")
        for s in X.gens:
            if not np.array_equal(A.table[s, Y.array], A.table[Y.array, s]):
                raise ConstructionError("Sylow parts do not commute")
    return SylowDecomposition(p, r, Ap, Ar, Apr, _is_cyclic(Ap), _is_cyclic(Ar))


def is_cyclic(H: Subgroup | FiniteGroup) -> bool:
    if isinstance(H, FiniteGroup):
        H = H.whole()
    return _is_cyclic(H)
