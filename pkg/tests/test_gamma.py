import random
from itertools import product

import pytest
from hypothesis import given, settings

from conftest import all_complexes, boundary_of_simplex, complexes, random_complex
from pseudofree.complexes import SimplicialComplex, is_flag
from pseudofree.davis import DavisComplex, mask_to_signs, signs_to_mask
from pseudofree.gamma import (
    CapExceeded,
    ThetaMap,
    comparison_map_check,
    force_fixed_set,
    gamma_image_subgroup,
    gamma_member,
    pseudo_free_verdict,
    theta,
)

EDGE = SimplicialComplex.simplex("ab")
TRIANGLE = SimplicialComplex.simplex("abc")
CIRCLE = boundary_of_simplex(2)


def theta_oracle(t, signs):
    out = [1] * (t.n + 1)
    for s, x in zip(t.simplices, signs):
        out[len(s) - 1] *= x
    return tuple(out)


def subgroup_oracle(t):
    full, minus = (1,) * (t.n + 1), (-1,) * (t.n + 1)
    return sorted(signs_to_mask(f) for f in product((1, -1), repeat=t.size)
                  if theta_oracle(t, f) in (full, minus))


def combinatorial_criterion(t, elements):
    """Every non-trivial e: each simplex of bK containing supp(e) equals supp(e)."""
    b = t.subdivision.simplices
    return all(all(s == e for s in b if e & ~s == 0) for e in elements if e)


def test_theta_examples():
    t = ThetaMap(CIRCLE)
    assert t.n == 1 and t.size == 6
    assert theta(t, (1,) * 6) == (1, 1)
    one_vertex = tuple(-1 if i == t.simplices.index((0,)) else 1 for i in range(6))
    assert theta(t, one_vertex) == (-1, 1)
    edge = t.simplices.index((0, 1))
    both = tuple(-1 if i in (t.simplices.index((0,)), edge) else 1 for i in range(6))
    assert theta(t, both) == (-1, -1)
    with pytest.raises(ValueError):
        theta(t, (1, 1))


def test_theta_surjectivity_report():
    assert ThetaMap(CIRCLE).is_surjective()
    # a complex of dimension 1 always has vertices and edges
    assert ThetaMap(SimplicialComplex([("a", "b"), ("c",)])).is_surjective()


@settings(max_examples=40, deadline=None)
@given(complexes(max_vertices=4))
def test_theta_is_a_homomorphism(k):
    t = ThetaMap(k)
    rng = random.Random(t.size)
    for _ in range(30):
        e, f = rng.getrandbits(t.size), rng.getrandbits(t.size)
        assert t.apply(e ^ f) == t.apply(e) ^ t.apply(f)
        assert t(mask_to_signs(e, t.size)) == theta_oracle(t, mask_to_signs(e, t.size))


def test_image_subgroup_examples():
    assert len(gamma_image_subgroup(ThetaMap(EDGE))) == 4
    assert len(gamma_image_subgroup(ThetaMap(CIRCLE))) == 32
    for k in (EDGE, CIRCLE, TRIANGLE):
        assert 0 in gamma_image_subgroup(ThetaMap(k))
    with pytest.raises(CapExceeded):
        gamma_image_subgroup(ThetaMap(CIRCLE), max_simplices=5)


def test_image_subgroup_matches_brute_force():
    for n in range(1, 4):
        for k in all_complexes(n):
            t = ThetaMap(k)
            sub = gamma_image_subgroup(t)
            assert sub == subgroup_oracle(t)
            assert len(sub) << t.n == 1 << t.size


def test_gamma_member_examples():
    t = ThetaMap(CIRCLE)
    assert gamma_member(t, ())
    v = t.simplices.index((0,))
    e = t.simplices.index((0, 1))
    assert not gamma_member(t, (v,))
    assert gamma_member(t, (v, e))


def test_gamma_member_depends_only_on_the_element():
    t = ThetaMap(TRIANGLE)
    s = t.system
    rng = random.Random(5)
    for _ in range(300):
        w = tuple(rng.randrange(s.rank) for _ in range(rng.randint(0, 10)))
        assert gamma_member(t, w) == gamma_member(t, s.normal_form(w))
        assert gamma_member(t, w) == (signs_to_mask(s.phi(w)) in set(gamma_image_subgroup(t)))


@pytest.mark.parametrize("k", [EDGE, CIRCLE, TRIANGLE], ids=["edge", "circle", "triangle"])
def test_pseudo_free_small(k):
    r = pseudo_free_verdict(k)
    assert r.ok and r.direct_ok and r.comparison_ok and r.routes_agree
    assert r.per_cell
    assert r.witnesses == [] and r.disagreements == []


def test_pseudo_free_counts():
    assert pseudo_free_verdict(EDGE).elements_checked == 3
    r = pseudo_free_verdict(CIRCLE)
    assert r.elements_checked == 31
    assert r.index == 2


def test_circle_fixed_elements_are_maximal_simplices():
    t = ThetaMap(CIRCLE)
    b = t.subdivision
    tops = set(b.faces(1))
    for e in gamma_image_subgroup(t):
        if e and force_fixed_set(CIRCLE, e).fixed_cells:
            assert e in tops


def test_all_small_complexes_satisfy_the_criterion():
    for n in range(1, 4):
        for k in all_complexes(n):
            t = ThetaMap(k)
            elements = gamma_image_subgroup(t)
            assert combinatorial_criterion(t, elements)
            assert pseudo_free_verdict(k).ok


def test_single_vertex_flip_outside_gamma_is_not_discrete():
    t = ThetaMap(EDGE)
    v = t.simplices.index(("a",))
    e = 1 << v
    assert e not in gamma_image_subgroup(t)
    assert not force_fixed_set(EDGE, e).is_discrete


@pytest.mark.parametrize("k", [EDGE, CIRCLE], ids=["edge", "circle"])
def test_comparison_map_exhaustive(k):
    r = comparison_map_check(k)
    assert r.ok and r.exhaustive
    t = ThetaMap(k)
    assert r.pairs_checked == len(gamma_image_subgroup(t)) * DavisComplex(t.subdivision).cell_count()


def test_comparison_map_sampled_mode():
    r = comparison_map_check(TRIANGLE, budget=10)
    assert r.ok and not r.exhaustive


def test_random_flag_and_non_flag_complexes():
    rng = random.Random(2024)
    seen_flag = seen_non_flag = 0
    while seen_flag < 3 or seen_non_flag < 3:
        k = random_complex(rng, rng.randint(2, 4), 0.8)
        if is_flag(k):
            if seen_flag >= 3:
                continue
            seen_flag += 1
        else:
            if seen_non_flag >= 3:
                continue
            seen_non_flag += 1
        assert pseudo_free_verdict(k).ok
