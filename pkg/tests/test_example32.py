import pytest

from conftest import boundary_of_simplex
from pseudofree.complexes import link_and_star, pi1_presentation
from pseudofree.example32 import poincare_sphere, run_pipeline
from pseudofree.homology import AbelianGroup, homology, simplicial_chain_complex


def test_bundled_sphere():
    k = poincare_sphere()
    assert len(k.vertices) == 21 and len(k.facets()) == 143
    assert k.f_vector() == [21, 164, 286, 143]
    assert homology(simplicial_chain_complex(k)) == [AbelianGroup(1), AbelianGroup(0), AbelianGroup(0), AbelianGroup(1)]
    s2 = [AbelianGroup(1), AbelianGroup(0), AbelianGroup(1)]
    for v in k.vertices:
        link, _, _ = link_and_star(k, v)
        assert homology(simplicial_chain_complex(link)) == s2
    assert pi1_presentation(k).simplify().abelianization().is_trivial


@pytest.mark.parametrize("m,n", [(3, 7), (3, 8)])
def test_pipeline(m, n):
    r = run_pipeline(poincare_sphere(), m, n)
    assert r.ok, [v for v in r.verdicts if not v.ok]
    assert len(r.verdicts) == 8 and r.witnesses


def test_pipeline_rejects_bad_dimensions():
    with pytest.raises(ValueError):
        run_pipeline(poincare_sphere(), 3, 6)
    with pytest.raises(ValueError):
        run_pipeline(poincare_sphere(), 2, 7)


def test_standard_sphere_control():
    # the boundary of the 4-simplex passes the homology checks but has trivial pi1,
    # so only the group certificate fails
    r = run_pipeline(boundary_of_simplex(4), 3, 7)
    failed = [v.name for v in r.verdicts if not v.ok]
    assert failed == ["pi1(M) maps onto a group of order 60"]
