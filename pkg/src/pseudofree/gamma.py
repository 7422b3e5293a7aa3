"""The index-2^n reflection subgroup Gamma of W = W_{bK} and its pseudo-freeness.

Sign vectors over the simplices of ``K`` (the vertices of ``bK``) are
handled as bit-sets of their ``-1`` entries, in the vertex order of
:func:`~pseudofree.complexes.barycentric_subdivision`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product

from .complexes import SimplicialComplex, barycentric_subdivision, bits, popcount
from .coxeter import CoxeterSystem
from .davis import CubicalCell, DavisComplex, act, fixed_set, signs_to_mask

DEFAULT_MAX_SIMPLICES = 20
EXHAUSTIVE_BUDGET = 2_000_000


class CapExceeded(RuntimeError):
    pass


class ThetaMap:
    """``{-1,1}^K -> {-1,1}^{n+1}``: coordinate ``i`` multiplies the signs of
    the ``i``-simplices."""

    def __init__(self, k: SimplicialComplex):
        self.base = k
        self.n = k.dim
        self.subdivision = barycentric_subdivision(k)
        self.simplices = list(self.subdivision.vertices)
        self.dims = [len(s) - 1 for s in self.simplices]
        self.size = len(self.simplices)
        self.dim_masks = [0] * (self.n + 1)
        for j, d in enumerate(self.dims):
            self.dim_masks[d] |= 1 << j
        self.full = (1 << (self.n + 1)) - 1
        self._system: CoxeterSystem | None = None

    @property
    def system(self) -> CoxeterSystem:
        """The Coxeter system ``(W_{bK}, K)``."""
        if self._system is None:
            self._system = CoxeterSystem.from_complex(self.subdivision)
        return self._system

    def is_surjective(self) -> bool:
        return all(self.dim_masks)

    def apply(self, e: int) -> int:
        out = 0
        for i, m in enumerate(self.dim_masks):
            if popcount(e & m) % 2:
                out |= 1 << i
        return out

    def __call__(self, f) -> tuple[int, ...]:
        """``theta`` on an explicit tuple of +-1 indexed by the simplices."""
        if len(f) != self.size:
            raise ValueError(f"sign vector has length {len(f)}, expected {self.size}")
        t = self.apply(signs_to_mask(f))
        return tuple(-1 if t >> i & 1 else 1 for i in range(self.n + 1))

    def in_image_subgroup(self, e: int) -> bool:
        t = self.apply(e)
        return t == 0 or t == self.full


def theta(t: ThetaMap, f) -> tuple[int, ...]:
    return t(f)


def gamma_member(t: ThetaMap, w) -> bool:
    """Is the word ``w`` (generator indices of ``t.system``) in Gamma?"""
    e = signs_to_mask(t.system.phi(w))
    return t.in_image_subgroup(e)


def _parity_subsets(mask: int) -> tuple[list[int], list[int]]:
    even, odd = [], []
    items = bits(mask)
    for choice in product((0, 1), repeat=len(items)):
        m = 0
        for b, on in zip(items, choice):
            if on:
                m |= 1 << b
        (odd if sum(choice) % 2 else even).append(m)
    return even, odd


def gamma_image_subgroup(t: ThetaMap, max_simplices: int = DEFAULT_MAX_SIMPLICES) -> list[int]:
    """``phi(Gamma) = theta^{-1} <(-1, ..., -1)>`` as a sorted list of masks.

    Built as the kernel of ``theta`` (even count in every dimension) together
    with its coset (odd count in every dimension).
    """
    if t.size > max_simplices:
        raise CapExceeded(f"|K| = {t.size} simplices exceeds cap {max_simplices} "
                          f"(subgroup would have 2^{t.size - t.n} elements)")
    parts = [_parity_subsets(m) for m in t.dim_masks]
    out = []
    for which in (0, 1):
        for combo in product(*(p[which] for p in parts)):
            m = 0
            for x in combo:
                m |= x
            out.append(m)
    out.sort()
    if len(out) << t.n != 1 << t.size:
        raise AssertionError("image subgroup does not have index 2^n")
    return out


# -- the comparison map P_{bK} -> P_{Delta^K} -> P_{Delta^n} ---------------------


def comparison_cell(t: ThetaMap, c: CubicalCell) -> CubicalCell:
    """Image of a cell of ``P_{bK}`` in ``P_{Delta^n}``.

    The first step is the identity on labels (``bK`` and ``Delta^K`` share the
    vertex set ``K``); the second multiplies coordinates within each
    dimension class, so a free coordinate of dimension ``i`` becomes free
    coordinate ``i``.
    """
    tau = 0
    for j in bits(c.tau):
        tau |= 1 << t.dims[j]
    neg = 0
    for i, m in enumerate(t.dim_masks):
        if not tau >> i & 1 and popcount(c.neg & m) % 2:
            neg |= 1 << i
    return CubicalCell(tau, neg)


def _pulled_back_locus(t: ThetaMap, e: int, c: CubicalCell) -> int:
    img = comparison_cell(t, c)
    te = t.apply(e)
    return popcount(img.tau & ~te)


@dataclass
class ComparisonReport:
    ok: bool
    equivariant: bool
    injective_on_cubes: bool
    pairs_checked: int
    exhaustive: bool
    failures: list[tuple[int, CubicalCell]] = field(default_factory=list)


def _cells_for_check(p: DavisComplex, elements: list[int], seed: int, budget: int):
    total = p.cell_count() * len(elements)
    if total <= budget:
        return p.cells(), elements, True
    rng = random.Random(seed)
    cells = [CubicalCell(tau, rng.getrandbits(p.n) & ~tau) for tau in p.strata for _ in range(2)]
    return cells, elements, False


def comparison_map_check(k: SimplicialComplex, seed: int = 0,
                         budget: int = EXHAUSTIVE_BUDGET) -> ComparisonReport:
    """Check ``theta``-equivariance and per-cube injectivity of the comparison map.

    Exhaustive over ``phi(Gamma) x cells`` while that fits ``budget``;
    otherwise every stratum is sampled with two random sign patterns.
    """
    t = ThetaMap(k)
    p = DavisComplex(t.subdivision)
    elements = gamma_image_subgroup(t)
    cells, elements, exhaustive = _cells_for_check(p, elements, seed, budget)
    n_target = t.n + 1
    equivariant = True
    injective = True
    failures = []
    checked = 0
    for c in cells:
        img = comparison_cell(t, c)
        corners = {comparison_cell(t, CubicalCell(0, v)).neg for v in p.vertices_of(c)}
        if img.dim != c.dim or len(corners) != 1 << c.dim or img.neg & ~((1 << n_target) - 1):
            injective = False
            failures.append((0, c))
        for e in elements:
            checked += 1
            if comparison_cell(t, act(e, c)) != act(t.apply(e), img):
                equivariant = False
                failures.append((e, c))
    return ComparisonReport(equivariant and injective, equivariant, injective, checked, exhaustive,
                            failures[:20])


# -- pseudo-freeness -----------------------------------------------------------------


@dataclass
class PseudoFreeReport:
    ok: bool
    elements_checked: int
    subgroup_order: int
    index: int
    direct_ok: bool
    comparison_ok: bool
    routes_agree: bool
    fixed_elements: int
    # False when the comparison route used two representative cells per stratum
    per_cell: bool = True
    witnesses: list[tuple[int, int]] = field(default_factory=list)
    disagreements: list[tuple[int, int]] = field(default_factory=list)


def pseudo_free_verdict(k: SimplicialComplex, max_s: int | None = None) -> PseudoFreeReport:
    """Check that every non-trivial element of ``phi(Gamma)`` has a discrete
    fixed set on ``P_{bK}``, by two routes.

    Direct: ``fixed_set`` on ``P_{bK}`` (``supp(e)`` inside ``tau``, locus of
    dimension ``|tau| - |supp e|``).  Comparison: setwise fixedness tested by
    applying ``act`` to cells of each stratum, locus dimension pulled back
    through the comparison map into ``P_{Delta^n}``.  Witnesses are
    ``(e, tau)`` pairs with a positive-dimensional fixed slice.
    """
    t = ThetaMap(k)
    p = DavisComplex(t.subdivision, max_s=max_s)
    elements = gamma_image_subgroup(t)
    per_cell = p.cell_count() * len(elements) <= EXHAUSTIVE_BUDGET
    witnesses: list[tuple[int, int]] = []
    disagreements: list[tuple[int, int]] = []
    direct_ok = comparison_ok = True
    fixed_elements = 0
    for e in elements:
        if e == 0:
            continue
        direct = fixed_set(p, e)
        if direct.fixed_cells:
            fixed_elements += 1
        if not direct.is_discrete:
            direct_ok = False
            witnesses.extend((e, tau) for tau in direct.violations)
        for tau in p.strata:
            cells = list(p.cells_of(tau)) if per_cell else [CubicalCell(tau, 0), CubicalCell(tau, p.full & ~tau)]
            fixed = [c for c in cells if act(e, c) == c]
            if fixed and len(fixed) != len(cells):
                disagreements.append((e, tau))
                continue
            via_map = _pulled_back_locus(t, e, cells[0]) if fixed else None
            if via_map is not None and via_map > 0:
                comparison_ok = False
            if via_map != direct.locus_dims.get(tau):
                disagreements.append((e, tau))
    witnesses.sort()
    disagreements.sort()
    return PseudoFreeReport(
        ok=direct_ok and comparison_ok and not disagreements,
        elements_checked=len(elements) - 1,
        subgroup_order=len(elements),
        index=(1 << t.size) // len(elements),
        direct_ok=direct_ok,
        comparison_ok=comparison_ok,
        routes_agree=not disagreements,
        fixed_elements=fixed_elements,
        per_cell=per_cell,
        witnesses=witnesses,
        disagreements=disagreements,
    )


def force_fixed_set(k: SimplicialComplex, e: int):
    """``fixed_set`` of an arbitrary sign vector on ``P_{bK}``, inside Gamma or not."""
    t = ThetaMap(k)
    return fixed_set(DavisComplex(t.subdivision), e)
