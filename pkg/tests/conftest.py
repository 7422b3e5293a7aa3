import random
from itertools import combinations, permutations

import pytest
from hypothesis import strategies as st

from pseudofree.complexes import SimplicialComplex
from pseudofree.coxeter import CoxeterSystem


def boundary_of_simplex(n):
    """The boundary of the n-simplex on vertices 0..n."""
    return SimplicialComplex.simplex_boundary(list(range(n + 1)))


def cycle(n):
    return SimplicialComplex([(i, (i + 1) % n) for i in range(n)])


def random_complex(rng: random.Random, nverts: int, density: float = 0.5) -> SimplicialComplex:
    """Random facets over ``nverts`` labelled vertices; every vertex is present."""
    facets = [(v,) for v in range(nverts)]
    for size in range(2, nverts + 1):
        for s in combinations(range(nverts), size):
            if rng.random() < density / size:
                facets.append(s)
    return SimplicialComplex(facets, vertices=list(range(nverts)))


@st.composite
def complexes(draw, max_vertices=6):
    n = draw(st.integers(1, max_vertices))
    seed = draw(st.integers(0, 2**32 - 1))
    density = draw(st.sampled_from([0.3, 0.6, 1.0, 2.0]))
    return random_complex(random.Random(seed), n, density)


def all_complexes(n):
    """Every simplicial complex on the vertex set 0..n-1 (all singletons present), up to isomorphism."""
    subsets = [m for size in range(2, n + 1) for m in _masks_of_size(n, size)]
    perms = list(permutations(range(n)))
    seen = {}

    # each permutation as a lookup table on vertex bit-sets
    tables = [[sum(1 << p[i] for i in range(n) if m >> i & 1) for m in range(1 << n)] for p in perms]

    def canon(faces):
        return min(tuple(sorted(t[f] for f in faces)) for t in tables)

    def rec(i, chosen, present):
        if i == len(subsets):
            key = canon(chosen)
            if key not in seen:
                seen[key] = list(chosen)
            return
        rec(i + 1, chosen, present)
        m = subsets[i]
        if all((m & ~(1 << b)) in present for b in range(n) if m >> b & 1):
            chosen.append(m)
            present.add(m)
            rec(i + 1, chosen, present)
            present.discard(m)
            chosen.pop()

    rec(0, [], {1 << v for v in range(n)})
    out = []
    for faces in seen.values():
        singles = [(v,) for v in range(n)]
        out.append(SimplicialComplex(singles + [tuple(b for b in range(n) if f >> b & 1) for f in faces],
                                     vertices=list(range(n))))
    return out


def _masks_of_size(n, size):
    return [sum(1 << b for b in c) for c in combinations(range(n), size)]


@pytest.fixture
def rng():
    return random.Random(12345)


def reversed_order_rep(system):
    """ShortLex-least word for the reversed generator order: another canonical representative."""
    n = system.rank
    perm = [n - 1 - i for i in range(n)]
    pairs = [(perm[a], perm[b]) for a, b in system.commuting_pairs()]
    other = CoxeterSystem(list(range(n)), pairs)
    return lambda w: tuple(perm[x] for x in other.normal_form(tuple(perm[x] for x in w)))


# acceptance results, filled by test_acceptance and printed after the run
ACCEPTANCE: dict[int, tuple[str, str, float]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        status, title, secs = ACCEPTANCE[num]
        terminalreporter.write_line(f"{status} criterion {num:2d}: {title} ({secs:.2f} s)")
