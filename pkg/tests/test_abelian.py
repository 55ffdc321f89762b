import json

import pytest

from oracles import (
    brute_abelian, degree_pairs, fixed_points_of, irreducible_violations,
    main_theorem_violations,
)
from ssc.abelian import (
    AbelianDataSet, InvalidDegrees, NotFree, NotInvolutions, NotWeaklyCommuting,
    abelian_genus, common_signature, enumerate_abelian, factor_generators, free_weak_commute,
    induced_quotient_classes, involution_weak_commute, klein_completions, liftable_conjugate,
    necessary_report, orbifold_signatures, realized_pairs, validate_abelian, weakly_commute,
)
from ssc.cyclic import enumerate_cyclic, fixed_point_count, genus_of, validate
from ssc.notation import parse_abelian as A, parse_dataset as P

# counts frozen from oracles.brute_abelian
GENUS3_COUNTS = {(2, 2): 10, (2, 4): 12, (2, 6): 0, (2, 8): 8, (3, 3): 0, (4, 4): 16}

ROW10 = "(2*4,0;[(1,2),(0,1),2]*2,[(0,1),(1,4),4],[(0,1),(3,4),4])"
EXAMPLE_2x6 = "(2*6,0;[(1,2),(0,1),2],[(0,1),(1,6),6],[(1,2),(5,6),6])"


def test_validate_examples():
    r = validate_abelian(A("(2*2,1;[(1,2),(0,1),2],[(1,2),(0,1),2])"))
    assert r.ok and r.genus == 3
    r = validate_abelian(A("(2*2,0;[(1,2),(1,2),2]*4)"))
    assert "vii" in [n for n, _ in r.failures]
    r = validate_abelian(A("(2*2,0;[(1,2),(0,1),2]*2,[(0,1),(1,2),2]*2)"))
    assert not r.ok and r.genus == 1


def test_invalid_degrees():
    with pytest.raises(InvalidDegrees):
        enumerate_abelian(4, 6, 3)
    assert enumerate_abelian(4, 8, 3) == []


def test_genus3_counts():
    got = {k: len(enumerate_abelian(*k, 3)) for k in GENUS3_COUNTS}
    assert got == GENUS3_COUNTS


@pytest.mark.parametrize("g", [2, 3, 4])
def test_enumeration_matches_oracle(g):
    for m in range(2, 4 * g + 5):
        for n in range(m, (4 * g + 4) // m + 1):
            if n % m:
                continue
            got = {(a.quotient_genus, tuple(sorted(a.stabilizers())))
                   for a in enumerate_abelian(m, n, g)}
            assert got == brute_abelian(m, n, g), (m, n)


@pytest.mark.parametrize("g", [2, 3])
def test_maclachlan_bound(g):
    for n in range(2, 4 * g + 3):
        for m in range(2, n + 1):
            if n % m == 0 and m * n > 4 * g + 4:
                assert enumerate_abelian(m, n, g) == []


@pytest.mark.parametrize("g", [2, 3, 4])
def test_factor_pairs_are_consistent(g):
    for m, n in degree_pairs(g):
        for a in enumerate_abelian(m, n, g):
            assert validate_abelian(a).ok and abelian_genus(a) == g
            fp = factor_generators(a)
            for d, deg in ((fp.d_g, m), (fp.d_f, n)):
                assert d.degree == deg and genus_of(d) == g and validate(d).ok
            stabs = a.stabilizers()
            for t in range(1, m):
                assert fixed_point_count(fp.d_g, t) == fixed_points_of(stabs, (m, n), (t, 0))
            for t in range(1, n):
                assert fixed_point_count(fp.d_f, t) == fixed_points_of(stabs, (m, n), (0, t))
            for d in induced_quotient_classes(a):
                assert validate(d, min_genus=0).ok


def test_swap_symmetry():
    for g in (2, 3, 4):
        for m in (2, 3, 4):
            for a in enumerate_abelian(m, m, g):
                b = a.swapped()
                assert validate_abelian(b).ok
                assert factor_generators(b) == factor_generators(a).swapped()


def test_factor_examples():
    fp = factor_generators(A(ROW10))
    assert str(fp) == "[(2,0;((1,2),8));(4,0;((1,4),2),((3,4),2))]"
    fp = factor_generators(A("(2*2,0;[(1,2),(0,1),2]*2,[(1,2),(1,2),2]*4)"))
    assert str(fp) == "[(2,1;((1,2),4));(2,2,1;)]"
    fp = factor_generators(A("(2*4,0;[(1,2),(1,2),2]*2,[(0,1),(1,4),4],[(0,1),(3,4),4])"))
    assert str(fp) == "[(2,2,1;);(4,0;((1,4),2),((3,4),2))]"
    assert not fp.up_to_rotation


def test_free_factor_of_higher_degree_is_a_wildcard():
    fp = factor_generators(A("(3*6,1;)"))
    assert str(fp) == "[(3,1,*;);(6,1,*;)]"
    assert fp.up_to_rotation


def test_induced_and_signatures():
    a = A(ROW10)
    d_gbar, d_fbar = induced_quotient_classes(a)
    assert (str(d_gbar), str(d_fbar)) == ("(2,0;((1,2),2))", "(4,0;(1,4),(3,4))")
    assert [str(s) for s in orbifold_signatures(a)] == ["(0;4,4,4,4)", "(0;2,2,2,2,2,2,2,2)"]
    a = A("(2*4,0;[(1,2),(1,2),2]*2,[(0,1),(1,4),4],[(0,1),(3,4),4])")
    # the diagonal triple is a stabilizer of neither generator
    assert str(orbifold_signatures(a)[1]) == "(2;)"


def test_example_2x6():
    d_g, d_f = P("(2,0;((1,2),6))"), P("(6,0;((1,6),2),(2,3))")
    witnesses = weakly_commute(d_g, d_f)
    assert [str(a) for a in witnesses] == [EXAMPLE_2x6]
    a = witnesses[0]
    assert str(common_signature(a)) == "(0;2,6,6)"
    assert [str(d) for d in induced_quotient_classes(a)] == [
        "(2,0;((1,2),2))", "(6,0;(1,6),(5,6))"]
    assert necessary_report(d_g, d_f).passed


def test_free_order6_pair_genus7():
    # stabilizers of orders 2, 2, 3, 3 summing to zero span a cyclic group,
    # so no Z_6 + Z_6 action on genus 7 has both generators free
    d = P("(6,2,1;)")
    assert weakly_commute(d, d) == []
    r = necessary_report(d, d)
    assert not r.passed and r.stage == "sphere-lcm"
    assert str(r.signature) == "(0;2,2,3,3)"
    assert str(r.induced_f) == str(r.induced_g) == "(6,0;((1,2),2),(1,3),(2,3))"


def test_necessary_report_type1_order4():
    d_f = P("(8,0;(1,4),(7,8),(7,8))")
    for d_g in enumerate_cyclic(4, 3):
        assert not necessary_report(d_g, d_f).passed


def test_necessary_report_type2_genus11():
    d_f = P("(30,0;(1,6),(1,10),(11,15))")
    for m in (2, 3, 5, 6, 10, 15):
        for d_g in enumerate_cyclic(m, 11):
            assert not necessary_report(d_g, d_f).passed


def test_report_json():
    r = necessary_report(P("(2,0;((1,2),6))"), P("(6,0;((1,6),2),(2,3))"))
    doc = json.loads(json.dumps(r.to_json()))
    assert doc["verdict"] == "Pass" and {"B_1", "B_2", "delta_1", "delta_2"} <= set(doc)


# Main theorem consistency; ratios frozen from the oracle run
@pytest.mark.parametrize("g,pairs,negatives,inv,free", [
    (2, 13, 5, 4, 0),
    (3, 99, 63, 9, 3),
])
def test_main_theorem_consistency(g, pairs, negatives, inv, free):
    s = main_theorem_violations(g)
    assert s["pairs"] == pairs and s["oracle_empty"] == negatives
    assert s["unsound"] == 0
    assert s["filter_fail"] == negatives      # the filter is also complete here
    assert s["involution_pairs"] == inv and s["involution_bad"] == 0
    assert s["free_pairs"] == free and s["free_bad"] == 0


def test_filter_soundness_genus4():
    s = main_theorem_violations(4)
    assert s["unsound"] == 0
    assert s["involution_bad"] == 0 and s["free_bad"] == 0


@pytest.mark.parametrize("g", [5])
def test_involution_fast_path_genus5(g):
    inv = enumerate_cyclic(2, g)
    for a in inv:
        for b in inv:
            assert bool(involution_weak_commute(b, a)) == bool(weakly_commute(a, b))


@pytest.mark.parametrize("g", [2, 3])
def test_irreducible_corollaries(g):
    s = irreducible_violations(g)
    assert s["type2_bad"] == 0 and s["type1_bad"] == 0
    assert s["type1_positive"] > 0


def test_involution_examples():
    v = involution_weak_commute(P("(2,4,1;)"), P("(2,3;((1,2),4))"))
    assert v.commute and v.feasible == ((0, 1), (2, 3), (4, 5))
    d = P("(2,0;((1,2),8))")
    assert not involution_weak_commute(d, d)
    assert weakly_commute(d, d) == []
    with pytest.raises(NotInvolutions):
        involution_weak_commute(P("(3,0;((1,3),5))"), d)


def test_klein_completions():
    got = klein_completions(P("(2,4,1;)"), P("(2,3;((1,2),4))"))
    assert sorted(map(str, got)) == sorted(["(2,4,1;)", "(2,2;((1,2),8))", "(2,0;((1,2),16))"])
    free = P("(2,2,1;)")
    for d in klein_completions(free, free):
        assert validate(d).ok and genus_of(d) == 3
    with pytest.raises(NotWeaklyCommuting):
        klein_completions(P("(2,0;((1,2),8))"), P("(2,0;((1,2),8))"))


def test_free_weak_commute_examples():
    assert free_weak_commute(P("(2,2,1;)"), P("(2,1;((1,2),4))"))
    # multiplicity 3 of the order-2 pair is odd
    assert not free_weak_commute(P("(2,2,1;)"), P("(4,0;((1,2),3),((1,4),2))"))
    # quotient genus 0 of the partner: 3 does not divide 0 - 1
    assert not free_weak_commute(P("(3,2,1;)"), P("(3,0;((1,3),6))"))
    with pytest.raises(NotFree):
        free_weak_commute(P("(2,0;((1,2),8))"), P("(2,2,1;)"))


def test_liftable_examples():
    v = liftable_conjugate(P("(6,2,1;)"), 3)
    assert v.liftable and genus_of(v.witness) == 3 * (7 - 1) + 1
    v = liftable_conjugate(P("(2,0;((1,2),8))"), 2)
    assert str(v.witness) == "(2,0;((1,2),12))" and genus_of(v.witness) == 5


def test_realized_pairs_table_rows():
    pairs = realized_pairs(2, 2, 3)
    assert (P("(2,1;((1,2),4))"), P("(2,2,1;)")) in pairs


def test_json_round_trip():
    for a in enumerate_abelian(4, 4, 3):
        assert AbelianDataSet.from_json(json.loads(json.dumps(a.to_json()))) == a
