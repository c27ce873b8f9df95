import itertools

import numpy as np
import pytest

from regorbit import grp
from regorbit.grp import (
    close_generators,
    conjugacy_classes,
    cyclic_group,
    group_invariants,
    heisenberg_group,
    product_group,
    quaternion_group,
    quotient_group,
    symmetric_group,
)
from oracles import class_count


def brute_center_order(G):
    t = G.table
    return int(sum(np.array_equal(t[x], t[:, x]) for x in range(G.order)))


def brute_class_sizes(G):
    t, inv = G.table, G.inv
    seen, sizes = set(), []
    for x in range(G.order):
        if x in seen:
            continue
        cl = {int(t[t[inv[g], x], g]) for g in range(G.order)}
        seen |= cl
        sizes.append(len(cl))
    return sorted(sizes)


def brute_order_histogram(G):
    hist = {}
    for x in range(G.order):
        k, y = 1, x
        while y != 0:
            y = int(G.table[y, x])
            k += 1
        hist[k] = hist.get(k, 0) + 1
    return hist


def c7_by_c3():
    C7, C3 = cyclic_group(7), cyclic_group(3)
    # generator of C7 is element 1; x -> x^2
    sq = np.array([C7.power(x, 2) for x in range(7)])
    return product_group(C7, C3, [sq])[0]


S3_PERMS = [[1, 0, 2], [1, 2, 0]]


def test_close_permutations():
    G = close_generators(S3_PERMS)
    assert G.order == 6


def test_close_unipotent_matrix():
    assert close_generators([[[1, 1], [0, 1]]], modulus=3).order == 3


def test_close_unitriangular():
    e12 = [[1, 1, 0], [0, 1, 0], [0, 0, 1]]
    e23 = [[1, 0, 0], [0, 1, 1], [0, 0, 1]]
    G = close_generators([e12, e23], modulus=3)
    assert G.order == 27 and G.exponent == 3
    assert max(brute_order_histogram(G)) == 3


def test_close_errors():
    with pytest.raises(grp.InvalidGeneratorError):
        close_generators([[[1, 1], [1, 1]]], modulus=2)
    with pytest.raises(grp.SizeCapError):
        close_generators([[1, 0, 2, 3, 4, 5, 6], [1, 2, 3, 4, 5, 6, 0]])  # S7


def test_latin_square_and_inverses():
    for G in (symmetric_group(4), quaternion_group(), heisenberg_group(3)):
        n = G.order
        t = G.table.astype(int)
        assert all(sorted(row) == list(range(n)) for row in t)
        assert all(sorted(col) == list(range(n)) for col in t.T)
        assert all(t[x, G.inv[x]] == 0 for x in range(n))


def test_closure_idempotent():
    G = symmetric_group(4)
    H = close_generators([G.elements[g] for g in G.gens])
    assert H.order == G.order


def test_invariants_s3():
    inv = group_invariants(symmetric_group(3))
    assert inv.center.order == 1 and inv.derived.order == 3
    assert inv.exponent == 6 and inv.nilpotency_class is None


def test_invariants_q8():
    Q = quaternion_group()
    inv = group_invariants(Q)
    assert inv.center.order == 2 == brute_center_order(Q)
    assert inv.nilpotency_class == 2 and inv.exponent == 4
    assert inv.frattini == inv.center
    assert grp.frattini_bruteforce(Q) == inv.frattini


def test_invariants_abelian():
    inv = group_invariants(cyclic_group(12))
    assert inv.nilpotency_class == 1 and inv.derived.order == 1


def test_frattini_matches_bruteforce():
    for G in (heisenberg_group(3), close_generators([[1, 2, 3, 0], [2, 1, 0, 3]]), cyclic_group(8)):
        assert group_invariants(G).frattini == grp.frattini_bruteforce(G)


@pytest.mark.parametrize("G", [cyclic_group(10), symmetric_group(3), quaternion_group(), heisenberg_group(3), symmetric_group(4)],
                         ids=["C10", "S3", "Q8", "Heis27", "S4"])
def test_conjugacy_classes_match_bruteforce(G):
    cc = conjugacy_classes(G)
    assert sorted(cc.sizes) == brute_class_sizes(G)
    assert sum(cc.sizes) == G.order and all(G.order % s == 0 for s in cc.sizes)
    assert cc.count == class_count(G.table)
    # representatives are least elements of their classes
    for c, r in enumerate(cc.representatives):
        assert r == cc.members(c).min()
    # power maps agree with element powers
    for c, r in enumerate(cc.representatives):
        for m in range(cc.exponent):
            assert cc.power_map[c, m] == cc.class_of[G.power(r, m)]


def test_class_sizes_examples():
    assert sorted(conjugacy_classes(symmetric_group(3)).sizes) == [1, 2, 3]
    assert sorted(conjugacy_classes(quaternion_group()).sizes) == [1, 1, 2, 2, 2]
    assert conjugacy_classes(cyclic_group(9)).count == 9


def test_quotients():
    G = heisenberg_group(3)
    Q, proj = quotient_group(G, G.whole())
    assert Q.order == 1
    Q, proj = quotient_group(G, G.trivial())
    assert Q.order == 27 and sorted(conjugacy_classes(Q).sizes) == sorted(conjugacy_classes(G).sizes)
    Q, proj = quotient_group(G, G.center)
    assert Q.order == 9 and Q.exponent == 3 and Q.is_abelian
    assert proj.kernel == G.center


def test_quotient_requires_normal():
    S3 = symmetric_group(3)
    t = next(x for x in range(6) if S3.element_orders[x] == 2)
    with pytest.raises(grp.NormalityError):
        quotient_group(S3, S3.subgroup([t]))


def test_product_groups():
    G = grp.direct_product(cyclic_group(2), cyclic_group(3))
    assert G.order == 6 and G.exponent == 6 and G.is_abelian
    C3, C2 = cyclic_group(3), cyclic_group(2)
    inv = np.array([C3.inverse(x) for x in range(3)])
    D = product_group(C3, C2, [inv])[0]
    assert D.order == 6 and D.center.order == 1
    F = c7_by_c3()
    assert F.order == 21 and not F.is_abelian
    assert group_invariants(F, frattini=False).derived.order == 7


def test_product_rejects_bad_action():
    C4, C2 = cyclic_group(4), cyclic_group(2)
    with pytest.raises(grp.ConstructionError):
        product_group(C4, C2, [np.array([0, 2, 1, 3])])  # not an automorphism
    C3 = cyclic_group(3)
    inv = np.array([C3.inverse(x) for x in range(3)])
    with pytest.raises(grp.ConstructionError):
        product_group(C3, C3, [inv])  # order-2 map for an order-3 generator


def test_direct_product_matches_pairs():
    G1, G2 = symmetric_group(3), cyclic_group(2)
    G = grp.direct_product(G1, G2)
    for (h1, n1), (h2, n2) in itertools.product(itertools.product(range(2), range(6)), repeat=2):
        z = G.mul(h1 * 6 + n1, h2 * 6 + n2)
        assert z == G2.mul(h1, h2) * 6 + G1.mul(n1, n2)


def test_centralizers():
    S3 = symmetric_group(3)
    assert grp.centralizer(S3, [0]).order == 6
    D = group_invariants(S3).derived
    assert grp.centralizer(S3, D) == D
    Q = quaternion_group()
    i = next(x for x in range(8) if Q.element_orders[x] == 4)
    assert grp.centralizer(Q, Q.subgroup([i])) == Q.subgroup([i])


def test_sylow_decomposition():
    d = grp.nilpotent_sylow_decomposition(cyclic_group(6), 2, 3)
    assert (d.A_p.order, d.A_r.order, d.A_pr_prime.order) == (2, 3, 1)
    assert d.p_cyclic and d.r_cyclic
    d = grp.nilpotent_sylow_decomposition(cyclic_group(3), 2, 7)
    assert (d.A_p.order, d.A_r.order, d.A_pr_prime.order) == (1, 1, 3)
    with pytest.raises(grp.HypothesisError):
        grp.nilpotent_sylow_decomposition(symmetric_group(3), 2, 3)


def test_subgroup_lagrange_and_closure():
    G = symmetric_group(4)
    for H in grp.all_subgroups(G):
        assert G.order % H.order == 0 and 0 in H.array
        a = H.array
        assert np.isin(G.table[np.ix_(a, a)], a).all()
