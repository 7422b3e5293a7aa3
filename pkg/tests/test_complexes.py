import random
from itertools import combinations

import pytest
from hypothesis import given, settings

from conftest import all_complexes, boundary_of_simplex, complexes, cycle, random_complex
from pseudofree.complexes import (
    ComplexError,
    FiniteGroup,
    GroupPresentation,
    SimplicialComplex,
    alternating_group,
    barycentric_subdivision,
    cone,
    cyclic_group,
    euler_characteristic,
    find_epimorphism,
    format_complex,
    format_group_table,
    is_flag,
    link_and_star,
    parse_complex,
    parse_group_table,
    pi1_presentation,
)
from pseudofree.homology import homology, simplicial_chain_complex

RP2 = [(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 6, 2),
       (2, 3, 5), (3, 4, 6), (4, 5, 2), (5, 6, 3), (6, 2, 4)]


def brute_force_flag(k):
    """Every vertex set whose pairs are all edges is a simplex."""
    n = len(k.vertices)
    edges = set(k.faces(1))
    for size in range(3, n + 1):
        for c in combinations(range(n), size):
            if all((1 << a | 1 << b) in edges for a, b in combinations(c, 2)):
                if sum(1 << v for v in c) not in k.simplices:
                    return False
    return True


def test_downward_closure():
    k = SimplicialComplex([("a", "b", "c")])
    assert k.f_vector() == [3, 3, 1]
    assert ("a", "c") in k and ("a",) in k
    assert k.dim == 2


def test_flag_examples():
    assert is_flag(cycle(4))
    assert not is_flag(boundary_of_simplex(2))
    assert is_flag(SimplicialComplex.simplex("abc"))


@settings(max_examples=150, deadline=None)
@given(complexes())
def test_flag_matches_clique_enumeration(k):
    assert is_flag(k) == brute_force_flag(k)


@settings(max_examples=60, deadline=None)
@given(complexes(max_vertices=5))
def test_subdivision_is_flag_and_preserves_euler_characteristic(k):
    b = barycentric_subdivision(k)
    assert is_flag(b)
    assert euler_characteristic(b) == euler_characteristic(k)
    assert len(b.vertices) == len(k.simplices)


def test_subdivision_examples():
    b = barycentric_subdivision(SimplicialComplex.simplex("ab"))
    assert b.f_vector() == [3, 2]
    b = barycentric_subdivision(boundary_of_simplex(2))
    assert b.f_vector() == [6, 6]
    assert all(len(nb) == 2 for nb in b.neighbours()) and b.is_connected()
    for n in range(1, 4):
        b = barycentric_subdivision(SimplicialComplex.simplex(list(range(n + 1))))
        assert len(b.faces(n)) == [1, 2, 6, 24][n]


def test_subdivision_of_small_complexes_is_flag():
    for n in range(1, 5):
        for k in all_complexes(n):
            assert is_flag(barycentric_subdivision(k))


def test_link_and_star_of_triangle_boundary():
    k = SimplicialComplex([("a", "b"), ("b", "c"), ("a", "c")])
    link, star, comp = link_and_star(k, "a")
    assert link == SimplicialComplex([("b",), ("c",)])
    assert comp == SimplicialComplex([("b", "c")])
    assert star == SimplicialComplex([("a", "b"), ("a", "c")])
    with pytest.raises(ComplexError):
        link_and_star(k, "z")


def test_cone_point_link():
    base = cycle(5)
    link, _, _ = link_and_star(cone(base, "apex"), "apex")
    assert link == base


@settings(max_examples=100, deadline=None)
@given(complexes())
def test_star_decomposition_euler_characteristic(k):
    v = k.vertices[0]
    link, star, comp = link_and_star(k, v)
    assert euler_characteristic(k) == euler_characteristic(comp) + euler_characteristic(star) - euler_characteristic(link)


def test_euler_characteristic_examples():
    assert euler_characteristic(boundary_of_simplex(2)) == 0
    for n in range(5):
        assert euler_characteristic(SimplicialComplex.simplex(list(range(n + 1)))) == 1
    for m in range(1, 5):
        assert euler_characteristic(boundary_of_simplex(m + 1)) == 1 + (-1) ** m


def test_pi1_examples():
    p = pi1_presentation(SimplicialComplex.simplex(list(range(4))))
    assert p.abelianization().is_trivial
    p = pi1_presentation(cycle(6))
    assert p.ngens == 1 and p.relators == []
    p = pi1_presentation(SimplicialComplex(RP2)).simplify()
    assert str(p.abelianization()) == "Z/2"
    with pytest.raises(ComplexError):
        pi1_presentation(SimplicialComplex([("a",), ("b",)]))


@settings(max_examples=80, deadline=None)
@given(complexes())
def test_abelianised_pi1_is_h1(k):
    if not k.is_connected():
        return
    h = homology(simplicial_chain_complex(k))
    h1 = h[1] if len(h) > 1 else None
    ab = pi1_presentation(k).abelianization()
    simp = pi1_presentation(k).simplify().abelianization()
    if h1 is None:
        assert ab.is_trivial and simp.is_trivial
    else:
        assert ab == h1 == simp


def _brute_force_epimorphism(p, g):
    from itertools import product
    for images in product(range(g.order), repeat=p.ngens):
        if all(g.evaluate(r, images) == g.identity for r in p.relators) and len(g.generated(images)) == g.order:
            return True
    return False


def test_epimorphism_examples():
    assert find_epimorphism(GroupPresentation(0), alternating_group(5)) is None
    assert find_epimorphism(GroupPresentation(1, [(1,) * 5]), cyclic_group(5)) == (1,)
    # a free group maps onto A5 (two generators suffice)
    assert find_epimorphism(GroupPresentation(2), alternating_group(5)) is not None


def test_epimorphism_matches_brute_force(rng):
    targets = [cyclic_group(2), cyclic_group(3), cyclic_group(4), alternating_group(3)]
    s3 = [(0, 1, 2), (1, 0, 2), (0, 2, 1), (2, 1, 0), (1, 2, 0), (2, 0, 1)]
    from pseudofree.complexes import permutation_group_table
    targets.append(permutation_group_table(s3))
    for _ in range(60):
        n = rng.randint(1, 2)
        rels = [tuple(rng.choice([1, -1]) * rng.randint(1, n) for _ in range(rng.randint(1, 6)))
                for _ in range(rng.randint(0, 2))]
        p = GroupPresentation(n, rels)
        for g in targets:
            found = find_epimorphism(p, g)
            assert (found is not None) == _brute_force_epimorphism(p, g)
            if found is not None:
                assert all(g.evaluate(r, found) == g.identity for r in p.relators)


def test_alternating_group_table():
    a5 = alternating_group(5)
    assert a5.order == 60
    again = parse_group_table(format_group_table(a5))
    assert again.table == a5.table
    with pytest.raises(ValueError):
        FiniteGroup([[0, 1], [0, 1]])


def test_parse_examples():
    with pytest.raises(ComplexError):
        parse_complex("")
    with pytest.raises(ComplexError):
        parse_complex("# only a comment\n")
    k = parse_complex("a b c\n")
    assert k == SimplicialComplex.simplex("abc")
    k = parse_complex("# header\na b\n\n# more\nb c\na b\n")
    assert k.f_vector() == [3, 2]
    with pytest.raises(ComplexError, match=":2:"):
        parse_complex("a b\nc c d\n")


@settings(max_examples=100, deadline=None)
@given(complexes())
def test_format_round_trip(k):
    k = k.relabel({v: f"v{v}" for v in k.vertices})
    again = parse_complex(format_complex(k))
    assert again.simplex_sets() == k.simplex_sets()


def test_random_complex_helper_covers_vertices():
    k = random_complex(random.Random(0), 5, 0.1)
    assert len(k.vertices) == 5
