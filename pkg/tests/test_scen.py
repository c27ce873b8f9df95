import numpy as np
import pytest

from regorbit.gmod import regular_orbit_scan, section_action
from regorbit.grp import conjugacy_classes, direct_product, cyclic_group, group_invariants
from regorbit.scen import (
    AssemblyError,
    FormError,
    Scenario,
    ScenarioError,
    assemble_scenario,
    build_extraspecial,
    is_fermat_prime,
    lift_isometry,
    parse_scenario,
    run_theorem_check,
    validate_theorem_hypotheses,
)
from conftest import load_json, scenario

G7 = np.array([[0, 1, 0], [0, 0, 1], [1, 1, 0]])


def order_histogram(G):
    hist = {}
    for o in G.element_orders:
        hist[int(o)] = hist.get(int(o), 0) + 1
    return hist


def induced_linear_map(E, phi):
    """Matrix of phi on P/Z(P), read off the images of (0, e_i)."""
    k = E.rank
    rows = []
    for i in range(k):
        e = np.zeros(k, dtype=int)
        e[i] = 1
        rows.append(E.coords[phi[E.index(0, e)], 1:])
    return np.array(rows) % E.p


def embed(g):
    ginv_t = np.round(np.linalg.inv(g)).astype(int) % 2
    ginv_t = ginv_t.T
    out = np.zeros((6, 6), dtype=int)
    out[:3, :3] = g
    out[3:, 3:] = ginv_t
    return out


# -- extraspecial groups ------------------------------------------------------------------


def test_extraspecial_27():
    E = build_extraspecial(3, 1)
    G = E.group
    assert G.order == 27 and G.exponent == 3 and E.center.order == 3
    assert G.center == E.center
    # same fingerprint as the unitriangular model
    assert sorted(conjugacy_classes(G).sizes) == [1] * 3 + [3] * 8


def test_extraspecial_8():
    assert order_histogram(build_extraspecial(2, 1, "+").group)[4] == 2
    assert order_histogram(build_extraspecial(2, 1, "-").group)[4] == 6


def test_extraspecial_128():
    E = build_extraspecial(2, 3, "+")
    assert E.order == 128
    assert conjugacy_classes(E.group).count == 2**6 + 1


def test_extraspecial_invariants():
    for p, n, s in ((2, 2, "+"), (2, 2, "-"), (5, 1, "+"), (3, 2, "+")):
        E = build_extraspecial(p, n, s)
        inv = group_invariants(E.group)
        assert inv.center == inv.derived == inv.frattini == E.center
        assert E.order == p ** (1 + 2 * n)


def test_extraspecial_errors():
    with pytest.raises(ScenarioError):
        build_extraspecial(3, 1, "-")
    with pytest.raises(ScenarioError):
        build_extraspecial(7, 2)  # 7^5 exceeds the order cap


# -- isometry lifts ----------------------------------------------------------------------


def test_lift_identity():
    E = build_extraspecial(3, 1)
    assert np.array_equal(lift_isometry(E, np.eye(2, dtype=int)), np.arange(27))


def test_lift_minus_one():
    E = build_extraspecial(3, 1)
    phi = lift_isometry(E, 2 * np.eye(2, dtype=int))
    assert not np.array_equal(phi, np.arange(27))
    assert np.array_equal(phi[phi], np.arange(27))
    for x in range(27):
        a, v0, v1 = E.coords[x]
        assert tuple(E.coords[phi[x]]) == (a, (-v0) % 3, (-v1) % 3)


def test_lift_order_seven():
    E = build_extraspecial(2, 3, "+")
    sigma = embed(G7)
    phi = lift_isometry(E, sigma)
    t = E.group.table
    assert np.array_equal(phi[t], t[phi[:, None], phi[None, :]])  # homomorphism
    assert np.unique(phi).size == 128
    cur, k = phi.copy(), 1
    while not np.array_equal(cur, np.arange(128)):
        cur = phi[cur]
        k += 1
    assert k == 7
    assert all(phi[z] == z for z in E.center.elements)
    assert np.array_equal(induced_linear_map(E, phi), sigma % 2)


def test_lift_rejects_non_isometry():
    E = build_extraspecial(3, 1)
    with pytest.raises(FormError):
        lift_isometry(E, [[1, 1], [0, 2]])  # determinant 2: scales the form
    E2 = build_extraspecial(2, 1, "+")
    with pytest.raises(FormError):
        lift_isometry(E2, [[1, 1], [0, 1]])  # symplectic but moves Q


# -- parsing and assembly ------------------------------------------------------------------


def test_parse_errors():
    good = load_json("e0.json")
    for mutate in (
        lambda d: d.pop("p"),
        lambda d: d.update(r=3),
        lambda d: d.update(P={"kind": "cyclic", "n": 1}),
        lambda d: d["R"].update(isometry_images=[]),
    ):
        d = load_json("e0.json")
        mutate(d)
        with pytest.raises(ScenarioError):
            parse_scenario(d)
    d = load_json("noncyclic_sylow.json")
    d.pop("modulus")
    with pytest.raises(ScenarioError):
        parse_scenario(d)
    assert parse_scenario(good).content_hash == parse_scenario(load_json("e0.json")).content_hash


def test_e0_assembly():
    sc = scenario("e0")
    assert sc.orders() == {"P": 27, "R": 2, "A": 1, "GA": 54}
    assert sc.P.is_normal()
    Z = group_invariants(sc.P.as_group()[0]).center
    assert Z.order == 3 and sc.GA.center.order == 3


def test_e1_assembly():
    sc = scenario("e1")
    assert sc.orders() == {"P": 128, "R": 7, "A": 3, "GA": 2688}
    assert sc.R.is_normal(sc.R.join(sc.A))


def test_a_not_normalizing_r():
    data = {
        "p": 5, "r": 2,
        "P": {"kind": "extraspecial", "n": 1, "sign": "+"},
        "R": {"generators": [[1, 0, 2]], "isometry_images": [[[4, 0], [0, 4]]]},
        "A": {"generators": [[1, 2, 0]], "isometry_images": [[[0, 1], [4, 4]]]},
    }
    with pytest.raises(AssemblyError):
        assemble_scenario(parse_scenario(data))


def test_declared_order_mismatch():
    d = load_json("e0.json")
    d["expected_orders"]["GA"] = 55
    with pytest.raises(AssemblyError):
        assemble_scenario(parse_scenario(d))


# -- hypotheses ------------------------------------------------------------------------------


def test_fermat_primes():
    assert [r for r in range(2, 300) if is_fermat_prime(r)] == [3, 5, 17, 257]


def test_e1_hypotheses():
    sc = scenario("e1")
    rep = validate_theorem_hypotheses(sc)
    assert rep.all_passed and rep.proposition.passed
    c = rep.c.details
    assert c["section_rank"] == 1 and c["regular_orbit_whole"]
    sec = section_action(sc.GA, sc.R, sc.A, 7).module
    hist = regular_orbit_scan(sec).histogram
    assert hist == {1: 1, 3: 2}
    # stable across reruns
    assert validate_theorem_hypotheses(sc).to_dict() == rep.to_dict()


def test_fermat_control():
    rep = validate_theorem_hypotheses(scenario("fermat"))
    assert not rep.d.passed and rep.d.details["r_is_fermat"]
    assert rep.a.passed and rep.b.passed


def test_noncyclic_control():
    rep = validate_theorem_hypotheses(scenario("noncyclic_sylow"))
    assert not rep.c.passed and not rep.c.details["A_p_cyclic"]


def test_e0_hypotheses():
    rep = validate_theorem_hypotheses(scenario("e0"))
    assert rep.all_passed


# -- the character check ---------------------------------------------------------------------


def test_e0_theorem():
    sc = scenario("e0")
    thm = run_theorem_check(sc)
    assert thm.summary and not thm.vacuous and thm.R_summary
    assert [c.degree for c in thm.faithful] == [3, 3, 3, 3]
    for c in thm.faithful:
        assert c.A_multiplicities == (3,) and c.R_contains_regular and c.R_slack >= 0


def test_fermat_r_subclaim_is_data_only():
    thm = run_theorem_check(scenario("fermat"))
    assert thm.summary
    assert not thm.R_summary  # allowed when p = 2 and r is a Fermat prime


def test_vacuous_scenario():
    # no irreducible character of the Klein four group is faithful
    V4 = direct_product(cyclic_group(2), cyclic_group(2))
    fake = Scenario(None, None, None, V4, V4.whole(), V4.trivial(), V4.trivial(), (), False)
    thm = run_theorem_check(fake)
    assert thm.vacuous and thm.summary and thm.faithful == ()
