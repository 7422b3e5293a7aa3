"""Chain-level pipeline from a homology m-sphere M to the (n-1)-dimensional
homology manifold L = A u_{dA} Cone(dA).

Only chain complexes are built: C and its boundary come from the
triangulation of M, while the disk and sphere factors use minimal cellular
models, so the products never need to be triangulated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources

from .complexes import (
    FiniteGroup,
    SimplicialComplex,
    alternating_group,
    find_epimorphism,
    link_and_star,
    parse_complex,
    pi1_presentation,
)
from .homology import (
    AbelianGroup,
    ChainComplex,
    direct_sum,
    disk_chain,
    has_sphere_homology,
    homology,
    hstack_maps,
    identity_map,
    inclusion_chain_map,
    is_acyclic,
    mapping_cone,
    cone_projection,
    reduced_homology,
    simplicial_chain_complex,
    sphere_chain,
    sphere_in_disk,
    tensor_maps,
    tensor_product,
)
from .matrix import IntegerMatrix


def poincare_sphere() -> SimplicialComplex:
    """A 21-vertex triangulation of the Poincare homology sphere shipped with the package."""
    text = resources.files("pseudofree").joinpath("data/poincare.cplx").read_text()
    return parse_complex(text, "poincare.cplx")


@dataclass
class Verdict:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class PipelineReport:
    m: int
    n: int
    verdicts: list[Verdict] = field(default_factory=list)
    witnesses: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(v.ok for v in self.verdicts)

    def add(self, name: str, ok: bool, detail: str = "") -> bool:
        self.verdicts.append(Verdict(name, bool(ok), detail))
        return bool(ok)


def _fmt(h: list[AbelianGroup]) -> str:
    return ", ".join(f"H{d}={g}" for d, g in enumerate(h))


@dataclass
class BoundaryModel:
    """The pieces of ``dA = (C x S^k) u_{dC x S^k} (dC x D^{k+1})`` at chain level."""

    c: ChainComplex
    dc: ChainComplex
    a: ChainComplex
    x: ChainComplex
    y: ChainComplex
    z: ChainComplex
    boundary: ChainComplex
    to_a: list


def thicken(c_sub: SimplicialComplex, c: SimplicialComplex, disk_dim: int) -> BoundaryModel:
    """``A = C x D^q`` and the double mapping cone model of ``dA`` with ``q = disk_dim``.

    ``c_sub`` must be the boundary subcomplex of ``c`` (labelled inclusion).
    """
    cc = simplicial_chain_complex(c)
    dcc = simplicial_chain_complex(c_sub)
    sphere = sphere_chain(disk_dim - 1)
    disk = disk_chain(disk_dim)
    incl_c = inclusion_chain_map(c_sub, c)
    incl_s = sphere_in_disk(disk_dim)
    a = tensor_product(cc, disk)
    x = tensor_product(dcc, sphere)
    y = tensor_product(cc, sphere)
    z = tensor_product(dcc, disk)
    i = tensor_maps(incl_c, dcc, cc, identity_map(sphere), sphere, sphere)
    j = tensor_maps(identity_map(dcc), dcc, dcc, incl_s, sphere, disk)
    yz = direct_sum(y, z)
    pushout = mapping_cone(hstack_maps(i, j, x, y, z, sign_g=-1), x, yz)
    # (Y + Z) -> A: the two remaining inclusions; they agree on X, so the
    # cone coordinate is sent to zero
    to_a_y = tensor_maps(identity_map(cc), cc, cc, incl_s, sphere, disk)
    to_a_z = tensor_maps(incl_c, dcc, cc, identity_map(disk), disk, disk)
    g = []
    for deg in range(max(yz.top, a.top) + 1):
        m = IntegerMatrix(a.rank(deg), yz.rank(deg))
        if deg < len(to_a_y):
            m.block(0, 0, to_a_y[deg])
        if deg < len(to_a_z):
            m.block(0, y.rank(deg), to_a_z[deg])
        g.append(m)
    to_a = cone_projection(g, x, yz, a)
    return BoundaryModel(cc, dcc, a, x, y, z, pushout, to_a)


def run_pipeline(sphere: SimplicialComplex, m: int, n: int, vertex=None,
                 target: FiniteGroup | None = None) -> PipelineReport:
    """Verify every homological claim along ``M -> C -> A -> dA -> L``.

    ``target`` is the finite group for the non-triviality certificate of the
    fundamental group; it defaults to the alternating group on five letters.
    """
    if not 3 <= m <= n - 4:
        raise ValueError(f"need 3 <= m <= n - 4, got m={m}, n={n}")
    rep = PipelineReport(m, n)
    hm = homology(simplicial_chain_complex(sphere))
    rep.add(f"M is a homology {m}-sphere", has_sphere_homology(simplicial_chain_complex(sphere), m), _fmt(hm))

    v = sphere.vertices[0] if vertex is None else vertex
    link, _, c = link_and_star(sphere, v)
    hc = reduced_homology(simplicial_chain_complex(c))
    rep.add("C is acyclic", is_acyclic(simplicial_chain_complex(c)), "reduced " + _fmt(hc))
    rep.add(f"dC is a homology {m - 1}-sphere",
            has_sphere_homology(simplicial_chain_complex(link), m - 1))

    model = thicken(link, c, n - m - 1)
    rep.add("A is acyclic", is_acyclic(model.a))
    hb = homology(model.boundary)
    rep.add(f"dA is a homology {n - 2}-sphere", has_sphere_homology(model.boundary, n - 2), _fmt(hb))

    rel = mapping_cone(model.to_a, model.boundary, model.a)
    hrel = homology(rel)
    # reduced homology of L equals H_*(A, dA)
    expected = [AbelianGroup(1) if d == n - 1 else AbelianGroup(0) for d in range(len(hrel))]
    l_ok = hrel == expected
    rep.add(f"L is a homology {n - 1}-sphere", l_ok, "reduced " + _fmt(hrel))

    pres = pi1_presentation(sphere).simplify()
    ab = pres.abelianization()
    rep.add("pi1(M) is perfect", ab.is_trivial, f"{pres.ngens} generators, {len(pres.relators)} relators")
    target = target or alternating_group(5)
    witness = find_epimorphism(pres, target)
    rep.add(f"pi1(M) maps onto a group of order {target.order}", witness is not None)
    if witness is not None:
        rep.witnesses.append("generator images: " + " ".join(map(str, witness)))
    return rep
