"""Bounded census of involutions and infinite dihedral subgroups.

Everything here is relative to a finite ball of the group.  Conjugacy is
"ball conjugacy": two involutions (or two dihedral records) are identified
when a chain of conjugations by generators connects them without leaving
the ball.  Answers carry a confidence label, ``exact`` only when the ball
provably sees the whole answer.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Hashable

from .coxeter import CoxeterSystem

DEFAULT_BALL_L = 8
DEFAULT_BALL_R = 6
DEFAULT_BUDGET = 5_000_000

EXACT = "exact"
LOWER_BOUND = "ball-lower-bound"
PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"


class BudgetExceeded(RuntimeError):
    pass


def default_radius(kind: str) -> int:
    if kind == "racg":
        return int(os.environ.get("DF_BALL_L", DEFAULT_BALL_L))
    return int(os.environ.get("DF_BALL_R", DEFAULT_BALL_R))


class GroupModel:
    """Interface shared by the two model families."""

    identity: Hashable
    name: str

    def elements(self) -> list: ...
    def mul(self, x, y): ...
    def inv(self, x): ...
    def in_ball(self, x) -> bool: ...
    def infinite_order(self, x) -> bool: ...
    def steps(self) -> list: ...
    def generators(self) -> list: ...
    def is_finite_group(self) -> bool: ...
    def dihedral_powers(self) -> int: ...
    def fmt(self, x) -> str: ...

    def conj(self, g, x):
        return self.mul(self.mul(g, x), self.inv(g))


class RACGModel(GroupModel):
    """Ball of word length ``<= radius`` in a right-angled Coxeter group.

    ``rep`` picks the word representing each element; it defaults to the
    ShortLex normal form.
    """

    def __init__(self, system: CoxeterSystem, radius: int | None = None,
                 rep: Callable[[tuple], tuple] | None = None):
        self.system = system
        self.radius = default_radius("racg") if radius is None else radius
        self.rep = rep or system.normal_form
        self.identity = self.rep(())
        self.name = f"RACG({','.join(map(str, system.generators))}; L={self.radius})"
        self._ball = [self.rep(w) for w in system.ball(self.radius)]
        self._ballset = set(self._ball)

    def elements(self):
        return self._ball

    def mul(self, x, y):
        return self.rep(x + y)

    def inv(self, x):
        return self.rep(tuple(reversed(x)))

    def in_ball(self, x):
        return x in self._ballset

    def infinite_order(self, x):
        return not self.system.is_torsion(x)

    def generators(self):
        return [self.rep((s,)) for s in range(self.system.rank)]

    def steps(self):
        return self.generators()

    def is_finite_group(self):
        # the sphere of radius L+1 is empty iff the group has no longer elements
        return len(self.system.ball(self.radius + 1, max_radius=self.radius + 1)) == len(self._ball)

    def dihedral_powers(self):
        return 2 * self.radius + 2

    def fmt(self, x):
        return self.system.format_word(x)


class CrystalModel(GroupModel):
    """``Z^n x| C_2`` with ``C_2`` acting by ``-1``; ball ``max|v_i| <= radius``.

    Elements are ``(v, s)`` with the law ``(v,s)(w,t) = (v + s w, s t)``.
    """

    def __init__(self, n: int, radius: int | None = None):
        if n < 1:
            raise ValueError("lattice rank must be positive")
        self.n = n
        self.radius = default_radius("crystal") if radius is None else radius
        self.identity = ((0,) * n, 1)
        self.name = f"CRYSTAL({n}; R={self.radius})"

    def elements(self):
        rng = range(-self.radius, self.radius + 1)
        return [(v, s) for s in (1, -1) for v in product(rng, repeat=self.n)]

    def mul(self, x, y):
        (v, s), (w, t) = x, y
        return tuple(a + s * b for a, b in zip(v, w)), s * t

    def inv(self, x):
        v, s = x
        return tuple(-s * a for a in v), s

    def in_ball(self, x):
        return all(abs(a) <= self.radius for a in x[0])

    def infinite_order(self, x):
        v, s = x
        return s == 1 and any(v)

    def generators(self):
        gens = [(tuple(int(i == j) for j in range(self.n)), 1) for i in range(self.n)]
        return gens + [((0,) * self.n, -1)]

    def steps(self):
        gens = self.generators()
        return gens + [self.inv(g) for g in gens if self.inv(g) not in gens]

    def is_finite_group(self):
        return False

    def dihedral_powers(self):
        return 2 * self.radius + 1

    def fmt(self, x):
        v, s = x
        return f"({','.join(map(str, v))};{'+' if s == 1 else '-'})"


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)

    def classes(self):
        out: dict = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return sorted((sorted(c) for c in out.values()), key=lambda c: c[0])


def _order_key(g: GroupModel):
    if isinstance(g, RACGModel):
        return lambda w: (len(w), w)
    # ties broken towards positive coordinates
    return lambda x: (sum(abs(a) for a in x[0]), -x[1], tuple((abs(a), a < 0) for a in x[0]))


def involutions(g: GroupModel) -> list[list]:
    """Order-2 elements of the ball, grouped into ball-conjugacy classes.

    Classes are sorted lists; each class's first element is its representative.
    """
    key = _order_key(g)
    invs = [x for x in g.elements() if x != g.identity and g.mul(x, x) == g.identity]
    invset = set(invs)
    uf = _UnionFind(invs)
    for x in invs:
        for s in g.steps():
            y = g.conj(s, x)
            if y in invset:
                uf.union(x, y)
    classes = [sorted(c, key=key) for c in uf.classes()]
    return sorted(classes, key=lambda c: key(c[0]))


@dataclass
class DihedralRecord:
    x: Hashable
    y: Hashable
    translation: Hashable
    elements: frozenset
    class_rep: int = -1
    maximal_in_ball: bool = False
    whole_group: bool = False

    def size(self) -> int:
        return len(self.elements)


def _dihedral_in_ball(g: GroupModel, x, y) -> frozenset:
    t = g.mul(x, y)
    ti = g.inv(t)
    out = {g.identity, x, y}
    for step in (t, ti):
        p = g.identity
        for _ in range(g.dihedral_powers()):
            p = g.mul(p, step)
            for z in (p, g.mul(p, x)):
                if g.in_ball(z):
                    out.add(z)
    return frozenset(out)


@dataclass
class Census:
    model: GroupModel
    involution_classes: list[list]
    records: list[DihedralRecord]
    saturated: bool

    @property
    def maximal(self) -> list[DihedralRecord]:
        return [r for r in self.records if r.maximal_in_ball]


def dihedral_subgroups(g: GroupModel, budget: int = DEFAULT_BUDGET) -> Census:
    """All ``<x, y>`` with ``x, y`` ball involutions and ``xy`` of infinite order.

    Subgroups are compared by their intersection with the ball; records are
    flagged maximal when no other record's ball part strictly contains theirs.
    """
    key = _order_key(g)
    classes = involutions(g)
    invs = sorted((x for c in classes for x in c), key=key)
    pairs = len(invs) * (len(invs) - 1) // 2
    if pairs * g.dihedral_powers() > budget:
        raise BudgetExceeded(f"{pairs} involution pairs exceed the census budget {budget}")
    by_key: dict[frozenset, DihedralRecord] = {}
    for i, x in enumerate(invs):
        for y in invs[i + 1:]:
            t = g.mul(x, y)
            if not g.infinite_order(t):
                continue
            elems = _dihedral_in_ball(g, x, y)
            if elems not in by_key:
                by_key[elems] = DihedralRecord(x, y, t, elems)
    records = sorted(by_key.values(), key=lambda r: (key(r.x), key(r.y)))
    containing: dict = {}
    for n, r in enumerate(records):
        for z in r.elements:
            containing.setdefault(z, set()).add(n)
    gens = g.generators()
    for n, r in enumerate(records):
        cands = containing[r.x] & containing[r.y]
        r.maximal_in_ball = not any(len(records[m].elements) > len(r.elements)
                                    and r.elements < records[m].elements for m in cands)
        r.whole_group = all(s in r.elements for s in gens)
    index = {r.elements: n for n, r in enumerate(records)}
    uf = _UnionFind(range(len(records)))
    for n, r in enumerate(records):
        for s in g.steps():
            x2, y2 = g.conj(s, r.x), g.conj(s, r.y)
            if g.in_ball(x2) and g.in_ball(y2):
                m = index.get(_dihedral_in_ball(g, x2, y2))
                if m is not None:
                    uf.union(n, m)
    for n, r in enumerate(records):
        r.class_rep = uf.find(n)
    return Census(g, classes, records, g.is_finite_group())


@dataclass
class MidCount:
    count: int
    confidence: str
    witnesses: list[str] = field(default_factory=list)


def mid_count(census: Census) -> MidCount:
    """Ball-conjugacy classes of maximal-in-ball dihedral records."""
    g = census.model
    reps = sorted({r.class_rep for r in census.maximal})
    witnesses = []
    for c in reps:
        r = census.records[c]
        witnesses.append(f"<{g.fmt(r.x)}, {g.fmt(r.y)}>")
    exact = census.saturated or any(r.whole_group for r in census.maximal)
    return MidCount(len(reps), EXACT if exact else LOWER_BOUND, witnesses)


@dataclass
class PropertyReport:
    c_1_fin: str
    m_fbc_vc: str
    witnesses: list[str] = field(default_factory=list)


def property_checks(census: Census) -> PropertyReport:
    """Ball-bounded checks of the centraliser and unique-maximal conditions.

    Centraliser: an infinite-order ball element commuting with a ball
    involution fails it.  Maximality: a record inside two different maximal
    records fails it.  Passing checks are ``inconclusive`` unless the ball
    saturates the group (or, for maximality, a record is the whole group).
    """
    g = census.model
    witnesses = []
    c_fail = False
    elems = g.elements()
    for cls in census.involution_classes:
        for h in cls:
            for x in elems:
                if g.infinite_order(x) and g.mul(x, h) == g.mul(h, x):
                    c_fail = True
                    witnesses.append(f"C: {g.fmt(x)} has infinite order and centralises {g.fmt(h)}")
                    break
            if c_fail:
                break
        if c_fail:
            break
    maximal = census.maximal
    m_fail = False
    for r in census.records:
        over = [m for m in maximal if r.elements <= m.elements]
        if len(over) >= 2:
            m_fail = True
            witnesses.append(f"M: <{g.fmt(r.x)}, {g.fmt(r.y)}> lies in {len(over)} maximal records")
            break
    c_status = FAIL if c_fail else (PASS if census.saturated else INCONCLUSIVE)
    certified = census.saturated or any(r.whole_group for r in maximal)
    m_status = FAIL if m_fail else (PASS if certified else INCONCLUSIVE)
    return PropertyReport(c_status, m_status, witnesses)

