"""The Davis cubical complex ``P_K`` inside ``[-1, 1]^S`` and its reflection action.

A cell is a pair ``(tau, neg)``: ``tau`` is the bit-set of free coordinates
(empty or a simplex of ``K``), ``neg`` the bit-set of coordinates outside
``tau`` that are pinned to ``-1``; the remaining ones are pinned to ``+1``.
Sign vectors of ``{-1, 1}^S`` are encoded the same way, as the bit-set of
their ``-1`` coordinates.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple

from .complexes import SimplicialComplex, bits, popcount
from .homology import ChainComplex
from .matrix import IntegerMatrix

DEFAULT_MAX_S = 16


class CapExceeded(RuntimeError):
    pass


class CubicalCell(NamedTuple):
    tau: int
    neg: int

    @property
    def dim(self) -> int:
        return popcount(self.tau)


def signs_to_mask(signs) -> int:
    """Encode a tuple of +-1 as the bit-set of its -1 positions."""
    m = 0
    for i, x in enumerate(signs):
        if x == -1:
            m |= 1 << i
        elif x != 1:
            raise ValueError(f"sign vector entries must be +-1, got {x!r}")
    return m


def mask_to_signs(mask: int, n: int) -> tuple[int, ...]:
    return tuple(-1 if mask >> i & 1 else 1 for i in range(n))


def _subsets(mask: int) -> Iterator[int]:
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


class DavisComplex:
    """Cell poset of ``P_K``, including the ``2^|S|`` sign vertices (``tau`` empty)."""

    def __init__(self, k: SimplicialComplex, max_s: int | None = None):
        if max_s is None:
            max_s = int(os.environ.get("DF_MAX_S", DEFAULT_MAX_S))
        n = len(k.vertices)
        if n > max_s:
            raise CapExceeded(
                f"|S| = {n} exceeds cap {max_s}; the complex would have "
                f"{cell_count_formula(k)} cells (set DF_MAX_S to raise the cap)")
        self.base = k
        self.n = n
        self.full = (1 << n) - 1
        self.strata: list[int] = [0] + sorted(k.simplices, key=lambda s: (popcount(s), bits(s)))
        self._strata_set = frozenset(self.strata)
        self._cells: list[CubicalCell] | None = None
        self._index: dict[CubicalCell, int] | None = None

    def __repr__(self) -> str:
        return f"DavisComplex(|S|={self.n}, cells={self.cell_count()})"

    def has_stratum(self, tau: int) -> bool:
        return tau in self._strata_set

    def cells_of(self, tau: int) -> Iterator[CubicalCell]:
        for neg in _subsets(self.full & ~tau):
            yield CubicalCell(tau, neg)

    def cells(self) -> list[CubicalCell]:
        """All cells, sorted by dimension, then free coordinates, then signs."""
        if self._cells is None:
            out = []
            for tau in self.strata:
                out.extend(sorted(self.cells_of(tau), key=lambda c: c.neg))
            self._cells = out
        return self._cells

    def cell_index(self) -> dict[CubicalCell, int]:
        if self._index is None:
            self._index = {c: i for i, c in enumerate(self.cells())}
        return self._index

    def is_cell(self, c: CubicalCell) -> bool:
        return c.tau in self._strata_set and c.neg & c.tau == 0 and c.neg & ~self.full == 0

    def cell_count(self) -> int:
        return sum(1 << (self.n - popcount(t)) for t in self.strata)

    def f_vector(self) -> list[int]:
        out = [0] * (self.base.dim + 2)
        for t in self.strata:
            out[popcount(t)] += 1 << (self.n - popcount(t))
        return out

    def euler_characteristic(self) -> int:
        return sum((-1) ** popcount(t) * (1 << (self.n - popcount(t))) for t in self.strata)

    def facets_of(self, c: CubicalCell) -> list[tuple[int, CubicalCell]]:
        """Codimension-one faces with their boundary signs.

        Dropping the ``r``-th free coordinate ``s`` (``r`` counted in ``tau``)
        gives ``(-1)^r`` on the ``s = +1`` face and ``-(-1)^r`` on ``s = -1``.
        """
        out = []
        for r, s in enumerate(bits(c.tau)):
            sign = -1 if r % 2 else 1
            rest = c.tau & ~(1 << s)
            out.append((sign, CubicalCell(rest, c.neg)))
            out.append((-sign, CubicalCell(rest, c.neg | (1 << s))))
        return out

    def vertices_of(self, c: CubicalCell) -> list[int]:
        """Sign-vertex masks of the corners of ``c``."""
        return [c.neg | sub for sub in _subsets(c.tau)]

    def contains_vertex(self, c: CubicalCell, v: int) -> bool:
        return v & ~c.tau == c.neg

    def is_face(self, a: CubicalCell, b: CubicalCell) -> bool:
        """``a <= b`` in the face poset."""
        return a.tau & ~b.tau == 0 and (a.neg & ~b.tau) == b.neg

    def stratum_vertex_link(self, v: int) -> set[int]:
        return {c.tau for c in self.cells() if c.tau and self.contains_vertex(c, v)}


def cell_count_formula(k: SimplicialComplex) -> int:
    n = len(k.vertices)
    return (1 << n) + sum(1 << (n - popcount(s)) for s in k.simplices)


def build_davis(k: SimplicialComplex, max_s: int | None = None) -> DavisComplex:
    return DavisComplex(k, max_s)


def davis_chain_complex(p: DavisComplex) -> ChainComplex:
    """Cellular chains of ``P_K`` with the alternating cubical boundary."""
    by_dim: list[list[CubicalCell]] = [[] for _ in range(p.base.dim + 2)]
    for c in p.cells():
        by_dim[c.dim].append(c)
    pos = [{c: i for i, c in enumerate(cs)} for cs in by_dim]
    mats = [IntegerMatrix(0, len(by_dim[0]))]
    for d in range(1, len(by_dim)):
        m = IntegerMatrix(len(by_dim[d - 1]), len(by_dim[d]))
        for j, c in enumerate(by_dim[d]):
            for sign, f in p.facets_of(c):
                m.add(pos[d - 1][f], j, sign)
        mats.append(m)
    return ChainComplex([len(cs) for cs in by_dim], mats)


@dataclass
class VertexLink:
    vertex: int
    link: SimplicialComplex
    matches_base: bool


def vertex_link(p: DavisComplex, v) -> VertexLink:
    """Link of the sign vertex ``v`` (a +-1 tuple or a mask), read off the cells.

    Each ``d``-cell through ``v`` contributes the ``(d-1)``-simplex of its
    free coordinates.
    """
    if isinstance(v, CubicalCell):
        if v.tau:
            raise ValueError("vertex_link needs a 0-cell")
        v = v.neg
    elif not isinstance(v, int):
        if len(v) != p.n:
            raise ValueError(f"sign vector has length {len(v)}, expected {p.n}")
        v = signs_to_mask(v)
    if v & ~p.full:
        raise ValueError("not a vertex of P_K")
    taus = p.stratum_vertex_link(v)
    k = p.base
    found = [k.vertices[i] for i in range(p.n) if (1 << i) in taus]
    link = SimplicialComplex.from_masks(k.vertices, taus).induced(found)
    return VertexLink(v, link, link == k)


def act(e: int, c: CubicalCell) -> CubicalCell:
    """Reflection action of the sign vector ``e`` (as a mask) on a cell."""
    return CubicalCell(c.tau, c.neg ^ (e & ~c.tau))


@dataclass
class FixedSetReport:
    element: int
    fixed_cells: int
    # free-coordinate set -> dimension of the pointwise fixed slice in those cells
    locus_dims: dict[int, int] = field(default_factory=dict)
    cells_per_stratum: dict[int, int] = field(default_factory=dict)
    is_discrete: bool = True
    violations: list[int] = field(default_factory=list)


def fixed_set(p: DavisComplex, e: int) -> FixedSetReport:
    """Cells mapped to themselves by ``e`` and the dimension of the fixed part.

    A cell ``(tau, g)`` is fixed setwise iff ``supp(e)`` lies in ``tau``; the
    pointwise fixed locus is the slice where the ``supp(e)`` coordinates vanish.
    """
    rep = FixedSetReport(element=e, fixed_cells=0)
    for tau in p.strata:
        if e & ~tau:
            continue
        count = 1 << (p.n - popcount(tau))
        locus = popcount(tau) - popcount(e)
        rep.fixed_cells += count
        rep.cells_per_stratum[tau] = count
        rep.locus_dims[tau] = locus
        if locus > 0:
            rep.is_discrete = False
            rep.violations.append(tau)
    return rep


def fixed_cells(p: DavisComplex, e: int) -> list[CubicalCell]:
    """Explicit list of setwise fixed cells, by testing ``act(e, c) == c``."""
    return [c for c in p.cells() if act(e, c) == c]
