import itertools
import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from doubletrace.catalog import GroupSpecError, catalog, catalog_specs, group_from_spec
from doubletrace.groups import (
    GroupTableError,
    abelianization_invariants,
    build_cyclic,
    build_dihedral,
    build_direct_product,
    build_generalized_quaternion,
    build_semidirect,
    build_symmetric,
    commutator_subgroup,
    conjugate,
    element_order,
    exponent,
    from_cayley_table,
    order_profile,
)

CATALOG = catalog()


def brute_orders(G):
    """Element orders by repeated multiplication, straight from the table."""
    out = []
    for g in range(G.order):
        k, acc = 1, g
        while acc != 0:
            acc = int(G.mult[acc][g])
            k += 1
        out.append(k)
    return out


@pytest.mark.parametrize("spec,G", CATALOG, ids=[s for s, _ in CATALOG])
def test_catalog_groups_satisfy_axioms(spec, G):
    n = G.order
    m = G.mult
    assert ((m >= 0) & (m < n)).all()
    assert (m[0] == np.arange(n)).all() and (m[:, 0] == np.arange(n)).all()
    assert (m[np.arange(n), G.inv] == 0).all() and (m[G.inv, np.arange(n)] == 0).all()
    assert (m[m, :] == m[:, m]).all()


@pytest.mark.parametrize("spec,G", CATALOG, ids=[s for s, _ in CATALOG])
def test_profile_and_exponent(spec, G):
    prof = G.order_profile()
    assert prof.total() == G.order
    assert prof[1] == 1
    assert all(G.order % k == 0 for k in prof.counts)
    assert G.order % G.exponent() == 0
    assert prof.as_dict() == dict(sorted(__import__("collections").Counter(brute_orders(G)).items()))


def test_cyclic():
    assert build_cyclic(1).order == 1
    Z4 = build_cyclic(4)
    assert Z4.order == 4 and element_order(Z4, 1) == 4
    assert element_order(Z4, 2) == 2
    assert order_profile(build_cyclic(6)).as_dict() == {1: 1, 2: 1, 3: 2, 6: 2}


def test_generalized_quaternion():
    Q8 = build_generalized_quaternion(2)
    assert Q8.order == 8
    assert Q8.order_profile().as_dict() == {1: 1, 2: 1, 4: 6}
    assert exponent(Q8) == 4
    Q12 = build_generalized_quaternion(3)
    assert Q12.order == 12
    x, y = Q12.names.index("x"), Q12.names.index("y")
    assert Q12.power(y, 2) == Q12.power(x, 3)
    assert Q12.power(x, 6) == 0
    assert Q12.mul(Q12.mul(y, x), Q12.inverse(y)) == Q12.inverse(x)


def test_dihedral_and_symmetric():
    D4 = build_dihedral(4)
    assert D4.order == 8 and not D4.is_abelian()
    assert D4.order_profile().as_dict() == {1: 1, 2: 5, 4: 2}
    S4 = build_symmetric(4)
    assert S4.order == 24
    assert S4.order_profile().as_dict() == {1: 1, 2: 9, 3: 8, 4: 6}


def test_products_of_named_groups():
    G1 = build_direct_product(build_generalized_quaternion(2), build_cyclic(2))
    assert G1.order == 16
    F1, F2 = group_from_spec("F1"), group_from_spec("F2")
    assert F1.order == F2.order == 16
    assert not F1.is_abelian() and not F2.is_abelian()


def test_semidirect_identity_action_is_direct_product():
    N, H = build_cyclic(4), build_cyclic(3)
    S = build_semidirect(N, H, {1: {1: 1}})
    D = build_direct_product(N, H)
    # semidirect stores (n, h) at h*|N| + n, the product at n*|H| + h
    to_d = [n * 3 + h for h in range(3) for n in range(4)]
    for a in range(12):
        for b in range(12):
            assert to_d[S.mul(a, b)] == D.mul(to_d[a], to_d[b])


def test_semidirect_rejects_bad_actions():
    Z4, Z2 = build_cyclic(4), build_cyclic(2)
    with pytest.raises(ValueError, match="non-bijective"):
        build_semidirect(Z4, Z2, {1: {1: 2}})
    # x -> x^-1 on Z4 is an automorphism, but Z3 cannot act by it
    with pytest.raises(ValueError, match="homomorphism"):
        build_semidirect(Z4, build_cyclic(3), {1: {1: 3}})
    with pytest.raises(ValueError, match="generate"):
        build_semidirect(build_direct_product(Z2, Z2), Z2, {1: {1: 1}})


def test_from_cayley_table():
    Z2 = from_cayley_table([[0, 1], [1, 0]])
    assert Z2.order == 2 and Z2.is_abelian()
    with pytest.raises(GroupTableError) as err:
        from_cayley_table([[0, 1], [1, 2]])
    assert err.value.kind == "non-closure" and err.value.witness == (1, 1)
    with pytest.raises(GroupTableError) as err:
        from_cayley_table([[1, 0], [0, 1]])
    assert err.value.kind == "identity"
    with pytest.raises(GroupTableError) as err:
        from_cayley_table([[0, 1, 2], [1, 1, 0], [2, 0, 1]])
    assert err.value.kind in ("inverse", "non-associative", "latin")


def test_non_associative_table_reports_triple():
    # a loop of order 5 that is not a group
    t = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(GroupTableError) as err:
        from_cayley_table(t)
    assert err.value.kind == "non-associative"
    a, b, c = err.value.witness
    assert t[t[a][b]][c] != t[a][t[b][c]]


def test_s3_table_built_independently():
    perms = list(itertools.permutations(range(3)))
    idx = {p: i for i, p in enumerate(perms)}
    table = [[idx[tuple(p[q[i]] for i in range(3))] for q in perms] for p in perms]
    S3 = from_cayley_table(table)
    assert not S3.is_abelian()
    assert (S3.mult == build_symmetric(3).mult).all()


def test_conjugation_preserves_order():
    for _, G in catalog(16):
        for h in range(G.order):
            for g in range(G.order):
                assert G.element_order(conjugate(G, h, g)) == G.element_order(g)


def test_named_order16_profiles():
    assert group_from_spec("G1").order_profile() == group_from_spec("G2").order_profile()
    assert group_from_spec("F1").order_profile() == group_from_spec("F2").order_profile()
    nine = ["G1", "G2", "F1", "F2", "D8xZ2", "D16", "SD16", "M16", "Q16"]
    profiles = [group_from_spec(s).order_profile() for s in nine]
    sizes = sorted(sum(1 for q in profiles if q == p) for p in profiles)
    # five groups separated by element orders, two pairs that are not
    assert sizes == [1, 1, 1, 1, 1, 2, 2, 2, 2]


@pytest.mark.parametrize(
    "spec,expected",
    [("F1", [2, 2, 2]), ("F2", [2, 4]), ("cyclic:6", [6]), ("Q8", [2, 2]), ("symmetric:3", [2]),
     ("symmetric:4", [2]), ("trivial", []), ("G1", [2, 2, 2]), ("G2", [2, 4])],
)
def test_abelianization(spec, expected):
    assert abelianization_invariants(group_from_spec(spec)) == expected


def _invariant_factors_by_counting(G):
    """Invariant factors of an abelian group from #{g : g^d = 1} for all d.

    For A = Z_{m1} x ... x Z_{mk}, #{g : g^d = 1} = prod gcd(d, m_i); try every
    divisor chain and keep the one that reproduces all the counts.
    """
    n = G.order
    divs = [d for d in range(1, n + 1) if n % d == 0]
    target = [G.count_power_roots(d) for d in divs]

    def chains(rest, top):
        if rest == 1:
            yield []
            return
        for m in divs:
            if m > 1 and rest % m == 0 and top % m == 0:
                for tail in chains(rest // m, m):
                    yield [m] + tail

    for ch in chains(n, n):
        if [math.prod(math.gcd(d, m) for m in ch) for d in divs] == target:
            return sorted(ch)
    raise AssertionError("no chain")


@pytest.mark.parametrize("spec,G", [(s, g) for s, g in CATALOG if g.is_abelian()],
                         ids=[s for s, g in CATALOG if g.is_abelian()])
def test_abelianization_of_abelian_group_is_itself(spec, G):
    assert commutator_subgroup(G) == frozenset({0})
    assert abelianization_invariants(G) == _invariant_factors_by_counting(G)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(2, 6), min_size=1, max_size=3))
def test_abelianization_of_products_of_cyclics(ms):
    G = build_cyclic(ms[0])
    for m in ms[1:]:
        G = build_direct_product(G, build_cyclic(m))
    assert abelianization_invariants(G) == _invariant_factors_by_counting(G)
    assert math.prod(abelianization_invariants(G)) == G.order


def test_group_spec_dsl(tmp_path):
    assert group_from_spec("quaternion:2").order == 8
    assert group_from_spec("product:(cyclic:2,product:(cyclic:3,cyclic:2))").order == 12
    path = tmp_path / "z3.json"
    path.write_text(json.dumps({"order": 3, "table": [[0, 1, 2], [1, 2, 0], [2, 0, 1]]}))
    assert group_from_spec(f"table:{path}").order == 3
    for bad in ["cyclic:x", "cyclic:0", "moebius:3", "product:(cyclic:2)", "nonsense"]:
        with pytest.raises(GroupSpecError):
            group_from_spec(bad)


def test_cayley_json_round_trip(tmp_path):
    G = group_from_spec("F2")
    path = tmp_path / "f2.json"
    path.write_text(json.dumps(G.to_json()))
    H = group_from_spec(f"table:{path}")
    assert (H.mult == G.mult).all() and H.names == G.names


def test_catalog_is_labelled_and_bounded():
    specs = catalog_specs(16)
    assert "symmetric:4" not in specs and "G1" in specs
    assert all(group_from_spec(s).order <= 16 for s in specs)
