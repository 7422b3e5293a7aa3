"""Integer chain complexes: homology, tensor products and mapping cones."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .complexes import SimplicialComplex, bits
from .matrix import IntegerMatrix
from .snf import invariant_factors


class ChainComplexError(ValueError):
    pass


@dataclass(frozen=True)
class AbelianGroup:
    """``Z^rank + Z/t1 + Z/t2 + ...`` with ``t1 | t2 | ...`` and every ``t > 1``."""

    rank: int = 0
    torsion: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("negative free rank")
        if any(t < 2 for t in self.torsion):
            raise ValueError("torsion coefficients must exceed 1")
        if any(b % a for a, b in zip(self.torsion, self.torsion[1:])):
            raise ValueError("torsion coefficients must form a divisibility chain")

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}


Z = AbelianGroup(1)
ZERO = AbelianGroup(0)


class ChainComplex:
    """Free chain complex ``C_top -> ... -> C_1 -> C_0``.

    ``boundaries[d]`` is the matrix of ``C_d -> C_{d-1}`` (rows index
    ``C_{d-1}``); ``boundaries[0]`` is the zero map to the zero module.
    ``d o d == 0`` is verified on construction.
    """

    def __init__(self, ranks: Sequence[int], boundaries: Sequence[IntegerMatrix] | None = None,
                 check: bool = True):
        self.ranks = list(ranks)
        if boundaries is None:
            boundaries = [IntegerMatrix(0, r) for r in self.ranks[:1]] + [
                IntegerMatrix(self.ranks[d - 1], self.ranks[d]) for d in range(1, len(self.ranks))]
        self.boundaries = list(boundaries)
        if len(self.boundaries) != len(self.ranks):
            raise ChainComplexError("need one boundary matrix per degree")
        for d, b in enumerate(self.boundaries):
            expect = (self.ranks[d - 1] if d else 0, self.ranks[d])
            if b.shape != expect:
                raise ChainComplexError(f"boundary in degree {d} has shape {b.shape}, expected {expect}")
        if check:
            for d in range(2, len(self.ranks)):
                if not (self.boundaries[d - 1] @ self.boundaries[d]).is_zero():
                    raise ChainComplexError(f"d o d != 0 from degree {d}")

    @property
    def top(self) -> int:
        return len(self.ranks) - 1

    def rank(self, d: int) -> int:
        return self.ranks[d] if 0 <= d < len(self.ranks) else 0

    def boundary(self, d: int) -> IntegerMatrix:
        if 0 <= d < len(self.ranks):
            return self.boundaries[d]
        return IntegerMatrix(self.rank(d - 1), self.rank(d))

    def padded(self, top: int) -> ChainComplex:
        if top <= self.top:
            return self
        ranks = self.ranks + [0] * (top - self.top)
        return ChainComplex(ranks, [self.boundary(d) for d in range(top + 1)], check=False)

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * r for d, r in enumerate(self.ranks))

    def __repr__(self) -> str:
        return f"ChainComplex(ranks={self.ranks})"


def homology(c: ChainComplex) -> list[AbelianGroup]:
    """``H_d = ker d_d / im d_{d+1}`` for ``d = 0..top``."""
    factors = [invariant_factors(c.boundary(d)) for d in range(c.top + 2)]
    out = []
    for d in range(c.top + 1):
        kernel = c.rank(d) - len(factors[d])
        image = factors[d + 1]
        out.append(AbelianGroup(kernel - len(image), tuple(x for x in image if x > 1)))
    return out


def reduced_homology(c: ChainComplex) -> list[AbelianGroup]:
    """Homology with the augmentation ``C_0 -> Z`` (sum of coefficients)."""
    h = homology(c)
    if h and h[0].rank:
        h[0] = AbelianGroup(h[0].rank - 1, h[0].torsion)
    return h


def betti_numbers(c: ChainComplex) -> list[int]:
    return [g.rank for g in homology(c)]


def _simplex_order(k: SimplicialComplex) -> list[list[int]]:
    return [k.faces(d) for d in range(k.dim + 1)]


def simplicial_chain_complex(k: SimplicialComplex) -> ChainComplex:
    """Oriented simplicial chains, each simplex oriented by the vertex order."""
    basis = _simplex_order(k)
    pos = [{s: i for i, s in enumerate(b)} for b in basis]
    mats = [IntegerMatrix(0, len(basis[0]) if basis else 0)]
    for d in range(1, len(basis)):
        m = IntegerMatrix(len(basis[d - 1]), len(basis[d]))
        for j, s in enumerate(basis[d]):
            for i, v in enumerate(bits(s)):
                m[pos[d - 1][s & ~(1 << v)], j] = -1 if i % 2 else 1
        mats.append(m)
    return ChainComplex([len(b) for b in basis], mats)


def inclusion_chain_map(sub: SimplicialComplex, k: SimplicialComplex) -> list[IntegerMatrix]:
    """Chain map induced by a labelled subcomplex inclusion ``sub -> k``.

    Orientations follow each complex's own vertex order, so a simplex picks
    up the sign of the permutation between the two orders.
    """
    sb, kb = _simplex_order(sub), _simplex_order(k)
    maps = []
    for d in range(len(kb)):
        src = sb[d] if d < len(sb) else []
        pos = {}
        for i, s in enumerate(src):
            idx = [k.index[v] for v in sub.labels(s)]
            pos[k.mask(sub.labels(s))] = (i, _perm_sign(idx))
        m = IntegerMatrix(len(kb[d]), len(src))
        for row, s in enumerate(kb[d]):
            if s in pos:
                col, sign = pos[s]
                m[row, col] = sign
        if len(pos) != len(src) or any(s not in k.simplices for s in pos):
            raise ChainComplexError("not a subcomplex")
        maps.append(m)
    if len(sb) > len(kb):
        raise ChainComplexError("not a subcomplex")
    return maps


def _perm_sign(seq: Sequence[int]) -> int:
    inversions = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return -1 if inversions % 2 else 1


def is_homology_sphere(k: SimplicialComplex, m: int) -> bool:
    return has_sphere_homology(simplicial_chain_complex(k), m)


def has_sphere_homology(c: ChainComplex, m: int) -> bool:
    """True iff ``H_*(c)`` is that of ``S^m`` (``Z`` in degrees 0 and ``m``)."""
    h = homology(c)
    for d, g in enumerate(h):
        if m == 0 and d == 0:
            if g != AbelianGroup(2):
                return False
        elif d in (0, m):
            if g != Z:
                return False
        elif not g.is_trivial:
            return False
    return len(h) > m


def is_acyclic(c: ChainComplex) -> bool:
    """Reduced homology vanishes."""
    return all(g.is_trivial for g in reduced_homology(c)) and c.rank(0) > 0


def is_chain_map(f: Sequence[IntegerMatrix], c: ChainComplex, d: ChainComplex) -> bool:
    top = max(c.top, d.top)
    for n in range(1, top + 1):
        fn = _map_at(f, n, c, d)
        fn1 = _map_at(f, n - 1, c, d)
        if not (d.boundary(n) @ fn == fn1 @ c.boundary(n)):
            return False
    return True


def _map_at(f: Sequence[IntegerMatrix], n: int, c: ChainComplex, d: ChainComplex) -> IntegerMatrix:
    if 0 <= n < len(f):
        m = f[n]
        if m.shape != (d.rank(n), c.rank(n)):
            raise ChainComplexError(f"chain map in degree {n} has shape {m.shape}")
        return m
    return IntegerMatrix(d.rank(n), c.rank(n))


def _kron(a: IntegerMatrix, b: IntegerMatrix, sign: int = 1) -> IntegerMatrix:
    out = IntegerMatrix(a.rows * b.rows, a.cols * b.cols)
    for i, j, x in a.items():
        for k, l, y in b.items():
            out[i * b.rows + k, j * b.cols + l] = sign * x * y
    return out


def _tensor_layout(c: ChainComplex, d: ChainComplex) -> list[dict[tuple[int, int], int]]:
    """Offset of the block ``C_p (x) D_q`` inside ``(C (x) D)_{p+q}``."""
    layout = []
    for n in range(c.top + d.top + 1):
        off, blocks = 0, {}
        for p in range(max(0, n - d.top), min(n, c.top) + 1):
            blocks[(p, n - p)] = off
            off += c.rank(p) * d.rank(n - p)
        blocks[None] = off
        layout.append(blocks)
    return layout


def tensor_product(c: ChainComplex, d: ChainComplex) -> ChainComplex:
    """``(C (x) D)_n = sum_{p+q=n} C_p (x) D_q`` with the Koszul sign.

    ``d(x (x) y) = dx (x) y + (-1)^p x (x) dy``; basis ordered by ``p``,
    then row-major in ``(i, j)``.
    """
    layout = _tensor_layout(c, d)
    ranks = [blocks[None] for blocks in layout]
    mats = [IntegerMatrix(0, ranks[0])]
    for n in range(1, len(ranks)):
        m = IntegerMatrix(ranks[n - 1], ranks[n])
        for key, off in layout[n].items():
            if key is None:
                continue
            p, q = key
            if p >= 1:
                tgt = layout[n - 1][(p - 1, q)]
                m.block(tgt, off, _kron(c.boundary(p), IntegerMatrix.identity(d.rank(q))))
            if q >= 1:
                tgt = layout[n - 1][(p, q - 1)]
                m.block(tgt, off, _kron(IntegerMatrix.identity(c.rank(p)), d.boundary(q), (-1) ** p))
        mats.append(m)
    return ChainComplex(ranks, mats)


def tensor_maps(f: Sequence[IntegerMatrix], c: ChainComplex, c2: ChainComplex,
                g: Sequence[IntegerMatrix], d: ChainComplex, d2: ChainComplex) -> list[IntegerMatrix]:
    """``f (x) g : C (x) D -> C2 (x) D2`` for degree-0 chain maps ``f: C -> C2``, ``g: D -> D2``."""
    src, dst = _tensor_layout(c, d), _tensor_layout(c2, d2)
    out = []
    for n in range(len(src)):
        rows = dst[n][None] if n < len(dst) else 0
        m = IntegerMatrix(rows, src[n][None])
        for key, off in src[n].items():
            if key is None:
                continue
            p, q = key
            if n < len(dst) and (p, q) in dst[n]:
                m.block(dst[n][(p, q)], off, _kron(_map_at(f, p, c, c2), _map_at(g, q, d, d2)))
        out.append(m)
    return out


def identity_map(c: ChainComplex) -> list[IntegerMatrix]:
    return [IntegerMatrix.identity(r) for r in c.ranks]


def direct_sum(c: ChainComplex, d: ChainComplex) -> ChainComplex:
    top = max(c.top, d.top)
    ranks = [c.rank(n) + d.rank(n) for n in range(top + 1)]
    mats = [IntegerMatrix(0, ranks[0])]
    for n in range(1, top + 1):
        m = IntegerMatrix(ranks[n - 1], ranks[n])
        m.block(0, 0, c.boundary(n))
        m.block(c.rank(n - 1), c.rank(n), d.boundary(n))
        mats.append(m)
    return ChainComplex(ranks, mats)


def hstack_maps(f: Sequence[IntegerMatrix], g: Sequence[IntegerMatrix], c: ChainComplex,
                d1: ChainComplex, d2: ChainComplex, sign_g: int = 1) -> list[IntegerMatrix]:
    """The map ``C -> D1 (+) D2`` given by ``(f, sign_g * g)``."""
    top = max(c.top, d1.top, d2.top)
    out = []
    for n in range(top + 1):
        m = IntegerMatrix(d1.rank(n) + d2.rank(n), c.rank(n))
        m.block(0, 0, _map_at(f, n, c, d1))
        gn = _map_at(g, n, c, d2)
        m.block(d1.rank(n), 0, gn if sign_g == 1 else -gn)
        out.append(m)
    return out


def mapping_cone(f: Sequence[IntegerMatrix], c: ChainComplex, d: ChainComplex) -> ChainComplex:
    """``cone(f)_n = C_{n-1} (+) D_n`` with ``d(x, y) = (-dx, f(x) + dy)``."""
    if not is_chain_map(f, c, d):
        raise ChainComplexError("mapping_cone: f does not commute with the boundaries")
    top = max(c.top + 1, d.top)
    ranks = [c.rank(n - 1) + d.rank(n) for n in range(top + 1)]
    mats = [IntegerMatrix(0, ranks[0])]
    for n in range(1, top + 1):
        m = IntegerMatrix(ranks[n - 1], ranks[n])
        cn1, cn2 = c.rank(n - 1), c.rank(n - 2)
        # column block C_{n-1}, row blocks C_{n-2} and D_{n-1}
        m.block(0, 0, -c.boundary(n - 1) if n >= 2 else IntegerMatrix(0, cn1))
        m.block(cn2, 0, _map_at(f, n - 1, c, d))
        m.block(cn2, cn1, d.boundary(n))
        mats.append(m)
    return ChainComplex(ranks, mats)


def cone_projection(g: Sequence[IntegerMatrix], c: ChainComplex, d: ChainComplex,
                    e: ChainComplex) -> list[IntegerMatrix]:
    """Map ``cone(C -> D) -> E`` that kills the ``C`` summand and applies ``g`` on ``D``.

    This is a chain map exactly when ``g o f = 0``.
    """
    top = max(c.top + 1, d.top)
    out = []
    for n in range(top + 1):
        m = IntegerMatrix(e.rank(n), c.rank(n - 1) + d.rank(n))
        m.block(0, c.rank(n - 1), _map_at(g, n, d, e))
        out.append(m)
    return out


# -- small cellular models ----------------------------------------------------------


def point_complex() -> ChainComplex:
    return ChainComplex([1])


def sphere_chain(k: int) -> ChainComplex:
    """Minimal cellular chains of ``S^k``: one 0-cell and one k-cell (two 0-cells if k = 0)."""
    if k < 0:
        raise ValueError("sphere dimension must be non-negative")
    if k == 0:
        return ChainComplex([2])
    return ChainComplex([1] + [0] * (k - 1) + [1])


def disk_chain(k: int) -> ChainComplex:
    """Cellular chains of ``D^k = S^{k-1} u e^k`` compatible with :func:`sphere_chain`."""
    if k < 1:
        return point_complex()
    if k == 1:
        return ChainComplex([2, 1], [IntegerMatrix(0, 2), IntegerMatrix.from_rows([[-1], [1]])])
    ranks = [1] + [0] * (k - 2) + [1, 1]
    mats = [IntegerMatrix(0, 1)] + [IntegerMatrix(ranks[d - 1], ranks[d]) for d in range(1, k + 1)]
    mats[k] = IntegerMatrix.from_rows([[1]])
    return ChainComplex(ranks, mats)


def sphere_in_disk(k: int) -> list[IntegerMatrix]:
    """Inclusion ``S^{k-1} -> D^k`` of the cellular models."""
    s, dk = sphere_chain(k - 1), disk_chain(k)
    return [IntegerMatrix(dk.rank(n), s.rank(n), ((i, i, 1) for i in range(s.rank(n))))
            for n in range(dk.top + 1)]
