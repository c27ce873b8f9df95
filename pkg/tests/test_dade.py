import dataclasses

import numpy as np
import pytest

from regorbit import ffla
from regorbit.dade import (
    CertificateError,
    check_proposition_hypotheses,
    construct_regular_vector,
    random_instance,
    remark_counterexample,
    remark_module,
    verify_certificate,
)
from regorbit.gmod import module_from_generators, orbit_and_stabilizer, regular_orbit_scan
from regorbit.grp import close_generators, cyclic_group, symmetric_group
from oracles import brute_orbits
from test_gmod import OMEGA, matrix_module, worked_instance


def accept(M, B=None, C=None):
    chk = check_proposition_hypotheses(M, B, C)
    assert chk.accepted, chk.rejection
    return chk.instance


def construct_and_check(inst):
    cert = construct_regular_vector(inst)
    assert verify_certificate(inst, cert)
    M = inst.module
    assert cert.stabilizer == (0,)
    assert orbit_and_stabilizer(M, cert.vector).stabilizer.order == 1
    return cert


# -- hypothesis checks ----------------------------------------------------------------------


@pytest.mark.parametrize("p", [2, 3, 5])
def test_remark_rejected(p):
    chk = check_proposition_hypotheses(remark_module(p))
    assert not chk.accepted and chk.rejection.hypothesis == "B_cyclic"


def test_worked_instance_accepted():
    M, B, C = worked_instance()
    inst = accept(M, B, C)
    [comp] = inst.decomposition.components
    X = comp.isotype.as_module()
    # oracle: the 3 nonzero vectors of X form one regular orbit of C
    orbits = brute_orbits(X.generator_matrices, 2, 2)
    assert sorted(len(o) for o in orbits) == [1, 3]
    assert inst.section_witnesses[0] in {v for o in orbits if len(o) == 3 for v in o}


def test_nonfaithful_rejected_with_witness():
    G = cyclic_group(6)
    M = module_from_generators(G, [ffla.companion([1, 1, 1], 2)], 2)
    chk = check_proposition_hypotheses(M)
    assert not chk.accepted and chk.rejection.hypothesis == "faithful"
    w = chk.rejection.witness
    assert w["kernel_order"] == 2
    assert np.array_equal(M.matrices[w["kernel_element"]], np.eye(2))


def test_noncommuting_split_rejected():
    G = symmetric_group(3)
    mats = [np.eye(3, dtype=int)[list(G.elements[g])] for g in G.gens]
    M = module_from_generators(G, mats, 3)
    three = next(x for x in range(6) if G.element_orders[x] == 3)
    two = next(x for x in range(6) if G.element_orders[x] == 2)
    chk = check_proposition_hypotheses(M, G.subgroup([three]), G.subgroup([two]))
    assert chk.rejection.hypothesis == "direct_product"
    chk = check_proposition_hypotheses(M, G.subgroup([two]), G.subgroup([three]))
    assert chk.rejection.hypothesis == "B_p_group"
    chk = check_proposition_hypotheses(M)
    assert chk.rejection.hypothesis == "split"


def test_section_without_regular_orbit_rejected():
    # D8 on F_3^2: the four reflections fix all eight nonzero vectors between them
    M = matrix_module([[[0, 1], [2, 0]], [[1, 0], [0, 2]]], 3)
    assert M.group.order == 8
    assert not regular_orbit_scan(M).has_regular_orbit
    chk = check_proposition_hypotheses(M)
    assert chk.rejection.hypothesis == "section_regular_orbit"


def test_c_must_be_p_prime():
    M, B, C = worked_instance()
    chk = check_proposition_hypotheses(M, M.group.trivial(), M.group.whole())
    assert chk.rejection.hypothesis == "C_p_prime"


# -- construction ---------------------------------------------------------------------------


def test_worked_instance_certificate():
    M, B, C = worked_instance()
    cert = construct_and_check(accept(M, B, C))
    [t] = cert.traces
    assert t.partition_E == (2,) and t.block_size == 2 and t.bound == 2
    assert regular_orbit_scan(M).has_regular_orbit


def test_two_eigenspaces():
    M = matrix_module([[[1, 0], [0, 2]]], 3)
    inst = accept(M)
    assert inst.B.order == 1
    cert = construct_and_check(inst)
    assert len(cert.traces) == 2
    w = [np.array(t.w) for t in cert.traces]
    assert np.array_equal((w[0] + w[1]) % 3, cert.vector)
    assert all(t.stabilizer_w == t.kernel_W for t in cert.traces)


def test_single_jordan_block():
    J = np.eye(3, dtype=int) + np.eye(3, k=1, dtype=int)
    M = matrix_module([J], 3)
    inst = accept(M)
    assert inst.C.order == 1 and inst.B.order == 3
    cert = construct_and_check(inst)
    [t] = cert.traces
    assert t.block_size == 3 and t.order_exponent == 1
    v = np.array(cert.vector)
    N = (J - np.eye(3, dtype=int)) % 3
    assert ((v @ N @ N) % 3).any()  # v generates the whole block


def test_certificate_tampering():
    M, B, C = worked_instance()
    inst = accept(M, B, C)
    cert = construct_regular_vector(inst)
    t = cert.traces[0]
    bad = [
        dataclasses.replace(cert, vector=tuple((np.array(cert.vector) + 1) % 2)),
        dataclasses.replace(cert, traces=(dataclasses.replace(t, w=(0, 0, 0, 0)),)),
        dataclasses.replace(cert, traces=(dataclasses.replace(t, block_size=1),)),
        dataclasses.replace(cert, traces=()),
    ]
    for c in bad:
        with pytest.raises(CertificateError):
            verify_certificate(inst, c)


@pytest.mark.parametrize("seed", range(12))
def test_random_instances_agree_with_scan(seed):
    p = (2, 3)[seed % 2]
    M, B, C = random_instance(np.random.default_rng(1000 + seed), p, max_dim=6)
    inst = accept(M, B, C)
    cert = construct_and_check(inst)
    for t in cert.traces:
        assert t.block_size >= t.bound == (p ** (t.order_exponent - 1) + 1 if t.order_exponent else 1)
        assert t.stabilizer_w == t.kernel_W
    scan = regular_orbit_scan(M)
    assert scan.has_regular_orbit
    assert orbit_and_stabilizer(M, cert.vector).size == M.group.order == M.quotient_order


# -- the counterexample -----------------------------------------------------------------------


@pytest.mark.parametrize("p", [2, 3, 5])
def test_remark_counterexample(p):
    r = remark_counterexample(p)
    assert r.verdict
    M = remark_module(p)
    orbits = brute_orbits(M.generator_matrices, p, 3)
    sizes = {len(o) for o in orbits}
    assert sizes == {1, p}
    fixed = sorted(next(iter(o)) for o in orbits if len(o) == 1)
    assert fixed == [(c, 0, 0) for c in range(p)]
    assert (0, 0, 0) in fixed
