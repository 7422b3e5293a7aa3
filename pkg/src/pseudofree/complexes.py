"""Abstract simplicial complexes over labelled vertices.

Simplices are bit-sets over the ordered vertex tuple; bit ``i`` stands for
``vertices[i]``.  The empty simplex is never stored.
"""

from __future__ import annotations

from collections import deque
from itertools import combinations
from typing import Hashable, Iterable, Sequence

Vertex = Hashable


class ComplexError(ValueError):
    pass


def bits(mask: int) -> list[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def _sub_masks(mask: int) -> Iterable[int]:
    """All non-empty submasks of ``mask``."""
    sub = mask
    while sub:
        yield sub
        sub = (sub - 1) & mask


class SimplicialComplex:
    """A finite abstract simplicial complex.

    Built from facets (maximal simplices are not required; any generating
    family works) and closed downward on construction.  Every listed vertex
    is a 0-simplex, even if no facet mentions it.
    """

    def __init__(self, facets: Iterable[Iterable[Vertex]], vertices: Sequence[Vertex] | None = None):
        facets = [tuple(f) for f in facets]
        if vertices is None:
            seen: dict[Vertex, None] = {}
            for f in facets:
                for v in f:
                    seen.setdefault(v, None)
            vertices = list(seen)
        self.vertices: tuple[Vertex, ...] = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise ComplexError("duplicate vertex labels")
        self.index = {v: i for i, v in enumerate(self.vertices)}
        gens = {1 << i for i in range(len(self.vertices))}
        for f in facets:
            if not f:
                continue
            try:
                gens.add(self.mask(f))
            except KeyError as exc:
                raise ComplexError(f"facet {f!r} uses unknown vertex {exc.args[0]!r}") from None
        simplices: set[int] = set()
        for g in sorted(gens, key=popcount, reverse=True):
            if g not in simplices:
                simplices.update(_sub_masks(g))
        self.simplices: frozenset[int] = frozenset(simplices)
        self._by_dim: dict[int, list[int]] | None = None

    @classmethod
    def from_masks(cls, vertices: Sequence[Vertex], masks: Iterable[int]) -> SimplicialComplex:
        k = cls([], vertices)
        simplices = set(k.simplices)
        for g in masks:
            if g and g not in simplices:
                simplices.update(_sub_masks(g))
        k.simplices = frozenset(simplices)
        return k

    @classmethod
    def simplex(cls, vertices: Sequence[Vertex]) -> SimplicialComplex:
        return cls([tuple(vertices)], vertices)

    @classmethod
    def simplex_boundary(cls, vertices: Sequence[Vertex]) -> SimplicialComplex:
        n = len(vertices)
        return cls(combinations(vertices, n - 1), vertices)

    # -- basic structure ---------------------------------------------------

    def mask(self, simplex: Iterable[Vertex]) -> int:
        m = 0
        for v in simplex:
            m |= 1 << self.index[v]
        return m

    def labels(self, mask: int) -> tuple[Vertex, ...]:
        return tuple(self.vertices[i] for i in bits(mask))

    def __contains__(self, simplex) -> bool:
        if isinstance(simplex, int):
            return simplex in self.simplices
        try:
            return self.mask(simplex) in self.simplices
        except KeyError:
            return False

    def __len__(self) -> int:
        return len(self.simplices)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.simplex_sets() == other.simplex_sets()

    def __hash__(self) -> int:
        return hash(frozenset(self.simplex_sets()))

    def simplex_sets(self) -> set[frozenset]:
        """Simplices as label sets, for comparisons across vertex orders."""
        return {frozenset(self.labels(s)) for s in self.simplices} | {
            frozenset([v]) for v in self.vertices}

    def __repr__(self) -> str:
        return f"SimplicialComplex(vertices={len(self.vertices)}, f={self.f_vector()})"

    @property
    def dim(self) -> int:
        if not self.simplices:
            return -1
        return max(popcount(s) for s in self.simplices) - 1

    def by_dim(self) -> dict[int, list[int]]:
        """Simplices grouped by dimension, each group in lexicographic order."""
        if self._by_dim is None:
            groups: dict[int, list[int]] = {}
            for s in self.simplices:
                groups.setdefault(popcount(s) - 1, []).append(s)
            for d in groups:
                groups[d].sort(key=bits)
            self._by_dim = groups
        return self._by_dim

    def faces(self, d: int) -> list[int]:
        return self.by_dim().get(d, [])

    def f_vector(self) -> list[int]:
        return [len(self.faces(d)) for d in range(self.dim + 1)]

    def facets(self) -> list[int]:
        out = []
        for s in self.simplices:
            if not any((s | (1 << i)) in self.simplices for i in range(len(self.vertices)) if not s >> i & 1):
                out.append(s)
        return sorted(out, key=lambda s: (popcount(s), bits(s)))

    def edges(self) -> list[tuple[int, int]]:
        return [tuple(bits(e)) for e in self.faces(1)]

    def neighbours(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.vertices]
        for a, b in self.edges():
            adj[a].append(b)
            adj[b].append(a)
        return adj

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        adj = self.neighbours()
        seen = {0}
        todo = [0]
        while todo:
            for w in adj[todo.pop()]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return len(seen) == len(self.vertices)

    def induced(self, keep: Iterable[Vertex]) -> SimplicialComplex:
        """Full subcomplex on the given vertices."""
        keep = [v for v in self.vertices if v in set(keep)]
        m = self.mask(keep)
        faces = [self.labels(s) for s in self.simplices if s & ~m == 0]
        return SimplicialComplex(faces, keep)

    def relabel(self, mapping) -> SimplicialComplex:
        return SimplicialComplex(([mapping[v] for v in self.labels(s)] for s in self.simplices),
                                 [mapping[v] for v in self.vertices])


def euler_characteristic(k: SimplicialComplex) -> int:
    return sum((-1) ** (popcount(s) - 1) for s in k.simplices)


def is_flag(k: SimplicialComplex) -> bool:
    """True iff every minimal non-face of ``k`` is an edge.

    A minimal non-face has the form ``s + {v}`` with ``s`` a simplex, so it
    is enough to scan those.
    """
    n = len(k.vertices)
    for s in k.simplices:
        if popcount(s) < 2:
            continue
        for v in range(n):
            if s >> v & 1:
                continue
            t = s | (1 << v)
            if t in k.simplices:
                continue
            if all((t & ~(1 << w)) in k.simplices for w in bits(t)):
                return False
    return True


def barycentric_subdivision(k: SimplicialComplex) -> SimplicialComplex:
    """Complex of strict inclusion chains of simplices of ``k``.

    Vertices of the result are the simplices of ``k`` written as label
    tuples, ordered by dimension and then lexicographically.
    """
    order = [s for d in sorted(k.by_dim()) for s in k.faces(d)]
    labels = [k.labels(s) for s in order]
    pos = {s: i for i, s in enumerate(order)}
    up: dict[int, list[int]] = {s: [] for s in order}
    for s in order:
        for i in bits(s):
            f = s & ~(1 << i)
            if f:
                up[f].append(s)
    chains: list[int] = []

    def extend(s: int, acc: int) -> None:
        if not up[s]:
            chains.append(acc)
        for t in up[s]:
            extend(t, acc | (1 << pos[t]))

    for s in k.faces(0):
        extend(s, 1 << pos[s])
    return SimplicialComplex.from_masks(labels, chains)


def link_and_star(k: SimplicialComplex, v: Vertex):
    """Return ``(link, closed_star, star_complement)`` of vertex ``v``.

    The star complement is the subcomplex of simplices missing ``v``, i.e.
    the complement of the open star.
    """
    if v not in k.index:
        raise ComplexError(f"unknown vertex {v!r}")
    bit = 1 << k.index[v]
    link = [s for s in k.simplices if not s & bit and (s | bit) in k.simplices]
    star = [s | bit for s in link] + [bit]
    rest = [s for s in k.simplices if not s & bit]
    others = [u for u in k.vertices if u != v]
    link_vertices = [u for u in others if (bit | (1 << k.index[u])) in k.simplices]
    lk = SimplicialComplex.from_masks(k.vertices, link).induced(link_vertices)
    st = SimplicialComplex.from_masks(k.vertices, star).induced([v] + link_vertices)
    co = SimplicialComplex.from_masks(k.vertices, rest).induced(others)
    return lk, st, co


def cone(k: SimplicialComplex, apex: Vertex = "*") -> SimplicialComplex:
    if apex in k.index:
        raise ComplexError(f"apex label {apex!r} already used")
    return SimplicialComplex(([apex, *k.labels(s)] for s in k.simplices), [apex, *k.vertices])


# -- fundamental groups --------------------------------------------------------


def free_reduce(word: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(word: Iterable[int]) -> tuple[int, ...]:
    w = list(free_reduce(word))
    i, j = 0, len(w) - 1
    while i < j and w[i] == -w[j]:
        i += 1
        j -= 1
    return tuple(w[i:j + 1])


def invert(word: Sequence[int]) -> tuple[int, ...]:
    return tuple(-x for x in reversed(word))


class GroupPresentation:
    """Finite presentation on generators ``1..n``; letter ``-i`` is the inverse of ``i``."""

    def __init__(self, ngens: int, relators: Iterable[Sequence[int]] = ()):
        self.ngens = ngens
        rels = []
        for r in relators:
            r = free_reduce(r)
            if any(not 1 <= abs(x) <= ngens for x in r):
                raise ValueError(f"relator {r} uses a letter outside 1..{ngens}")
            if r:
                rels.append(r)
        self.relators: list[tuple[int, ...]] = rels

    def __repr__(self) -> str:
        return f"GroupPresentation(ngens={self.ngens}, relators={self.relators})"

    def relation_matrix(self):
        from .matrix import IntegerMatrix
        m = IntegerMatrix(len(self.relators), self.ngens)
        for i, r in enumerate(self.relators):
            for x in r:
                m.add(i, abs(x) - 1, 1 if x > 0 else -1)
        return m

    def abelianization(self):
        """The abelian group ``Z^n / (exponent-sum rows)``."""
        from .homology import AbelianGroup
        from .snf import invariant_factors
        d = invariant_factors(self.relation_matrix())
        return AbelianGroup(self.ngens - len(d), tuple(x for x in d if x > 1))

    def simplify(self, max_length: int = 400) -> GroupPresentation:
        """Tietze-eliminate generators that occur exactly once in some relator.

        Substitutions whose result would exceed ``max_length`` in total
        relator length growth are skipped.
        """
        rels = _dedupe([cyclic_reduce(r) for r in self.relators])
        live = list(range(1, self.ngens + 1))
        while True:
            best = None
            for ri, r in enumerate(rels):
                counts: dict[int, int] = {}
                for x in r:
                    counts[abs(x)] = counts.get(abs(x), 0) + 1
                for g, c in counts.items():
                    if c == 1 and (best is None or len(r) < best[0]):
                        best = (len(r), ri, g)
                if best is not None and best[0] == 1:
                    break
            if best is None:
                break
            _, ri, g = best
            r = rels[ri]
            pos = next(i for i, x in enumerate(r) if abs(x) == g)
            # r = u g^e w = 1  =>  g^e = u^-1 w^-1  =>  g = (w u)^-e
            rot = r[pos + 1:] + r[:pos]
            sub = invert(rot) if r[pos] > 0 else tuple(rot)
            new = []
            grew = 0
            for k, s in enumerate(rels):
                if k == ri:
                    continue
                out: list[int] = []
                for x in s:
                    if x == g:
                        out.extend(sub)
                    elif x == -g:
                        out.extend(invert(sub))
                    else:
                        out.append(x)
                out_t = cyclic_reduce(out)
                grew += max(0, len(out_t) - len(s))
                new.append(out_t)
            if grew > max_length:
                break
            rels = _dedupe(new)
            live.remove(g)
        renum = {g: i + 1 for i, g in enumerate(live)}
        rels = [tuple((1 if x > 0 else -1) * renum[abs(x)] for x in r) for r in rels]
        return GroupPresentation(len(live), rels)


def _dedupe(rels: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    seen = set()
    out = []
    for r in rels:
        if not r:
            continue
        key = _cyclic_key(r)
        if key not in seen:
            seen.add(key)
            out.append(r)
    out.sort(key=len)
    return out


def _cyclic_key(r: tuple[int, ...]) -> tuple[int, ...]:
    rots = [r[i:] + r[:i] for i in range(len(r))]
    ir = invert(r)
    rots += [ir[i:] + ir[:i] for i in range(len(ir))]
    return min(rots)


def pi1_presentation(k: SimplicialComplex, basepoint: Vertex | None = None) -> GroupPresentation:
    """Edge-path presentation of the fundamental group of ``k``.

    Generators are the edges outside a breadth-first spanning tree rooted at
    ``basepoint``, each oriented from its lower to its higher vertex index;
    every triangle contributes one relator.
    """
    if not k.vertices:
        raise ComplexError("empty complex")
    if not k.is_connected():
        raise ComplexError("complex is not connected")
    root = k.index[basepoint] if basepoint is not None else 0
    adj = k.neighbours()
    tree = set()
    seen = {root}
    queue = deque([root])
    while queue:
        a = queue.popleft()
        for b in sorted(adj[a]):
            if b not in seen:
                seen.add(b)
                tree.add((min(a, b), max(a, b)))
                queue.append(b)
    gen = {}
    for e in k.edges():
        if e not in tree:
            gen[e] = len(gen) + 1

    def letter(a: int, b: int) -> list[int]:
        if a < b:
            return [gen[(a, b)]] if (a, b) in gen else []
        return [-gen[(b, a)]] if (b, a) in gen else []

    rels = []
    for t in k.faces(2):
        a, b, c = bits(t)
        rels.append(letter(a, b) + letter(b, c) + letter(c, a))
    return GroupPresentation(len(gen), rels)


# -- finite groups and epimorphisms ---------------------------------------------


class FiniteGroup:
    """A finite group given by its multiplication table on ``0..n-1``."""

    def __init__(self, table: Sequence[Sequence[int]]):
        n = len(table)
        if n == 0 or any(len(r) != n for r in table):
            raise ValueError("multiplication table must be square and non-empty")
        self.table = [list(map(int, r)) for r in table]
        if any(not 0 <= x < n for r in self.table for x in r):
            raise ValueError("table entries out of range")
        self.order = n
        ids = [e for e in range(n) if all(self.table[e][x] == x and self.table[x][e] == x for x in range(n))]
        if len(ids) != 1:
            raise ValueError("table has no two-sided identity")
        self.identity = ids[0]
        self.inverse = [0] * n
        for x in range(n):
            row = self.table[x]
            if sorted(row) != list(range(n)):
                raise ValueError("table is not a Latin square")
            self.inverse[x] = row.index(self.identity)
        for x in range(n):
            for y in range(n):
                xy = self.table[x][y]
                for z in range(n):
                    if self.table[xy][z] != self.table[x][self.table[y][z]]:
                        raise ValueError("table is not associative")

    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]

    def evaluate(self, word: Sequence[int], images: Sequence[int]) -> int:
        g = self.identity
        for x in word:
            h = images[x - 1] if x > 0 else self.inverse[images[-x - 1]]
            g = self.table[g][h]
        return g

    def generated(self, gens: Iterable[int]) -> set[int]:
        gens = list(gens)
        out = {self.identity}
        todo = [self.identity]
        while todo:
            x = todo.pop()
            for g in gens:
                y = self.table[x][g]
                if y not in out:
                    out.add(y)
                    todo.append(y)
        return out


def parse_group_table(text: str) -> FiniteGroup:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ValueError("empty group table")
    n = int(lines[0].split()[0])
    rows = [list(map(int, ln.split())) for ln in lines[1:1 + n]]
    if len(rows) != n:
        raise ValueError(f"expected {n} table rows, found {len(rows)}")
    return FiniteGroup(rows)


def format_group_table(g: FiniteGroup) -> str:
    return "\n".join([str(g.order)] + [" ".join(map(str, r)) for r in g.table]) + "\n"


def permutation_group_table(perms: Sequence[tuple[int, ...]]) -> FiniteGroup:
    """Table of a permutation group listed elementwise; ``(p*q)(i) = p(q(i))``."""
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(p[q[i]] for i in range(len(q)))] for q in perms] for p in perms]
    return FiniteGroup(table)


def alternating_group(n: int) -> FiniteGroup:
    from itertools import permutations

    def even(p):
        inv = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
        return inv % 2 == 0

    return permutation_group_table([p for p in permutations(range(n)) if even(p)])


def cyclic_group(n: int) -> FiniteGroup:
    return FiniteGroup([[(i + j) % n for j in range(n)] for i in range(n)])


def find_epimorphism(p: GroupPresentation, target: FiniteGroup) -> tuple[int, ...] | None:
    """Search for generator images that satisfy every relator and generate ``target``.

    Generators are assigned in order of the shortest relator they occur in;
    candidate images are tried in increasing element index, so the witness
    is the lexicographically least one in that assignment order.  Returns
    images indexed by generator, or None when no epimorphism exists.
    """
    n = p.ngens
    if n == 0:
        return () if target.order == 1 else None
    unbounded = 1 + sum(len(r) for r in p.relators)
    shortest = {g: unbounded for g in range(1, n + 1)}
    for r in p.relators:
        for x in r:
            shortest[abs(x)] = min(shortest[abs(x)], len(r))
    order = sorted(range(1, n + 1), key=lambda g: (shortest[g], g))
    rank = {g: i for i, g in enumerate(order)}
    # relators become checkable once their last-assigned generator is set
    due: list[list[tuple[int, ...]]] = [[] for _ in range(n)]
    for r in p.relators:
        due[max(rank[abs(x)] for x in r)].append(r)
    images = [target.identity] * n

    def search(level: int) -> bool:
        if level == n:
            return len(target.generated(images)) == target.order
        g = order[level]
        for cand in range(target.order):
            images[g - 1] = cand
            if all(target.evaluate(r, images) == target.identity for r in due[level]):
                if search(level + 1):
                    return True
        return False

    return tuple(images) if search(0) else None


# -- file format -------------------------------------------------------------------


def parse_complex(text: str, source: str = "<string>") -> SimplicialComplex:
    """Parse the facet-per-line format; ``#`` starts a comment line."""
    facets = []
    for lineno, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        toks = s.split()
        if len(set(toks)) != len(toks):
            raise ComplexError(f"{source}:{lineno}: repeated vertex in facet")
        facets.append(tuple(toks))
    if not facets:
        raise ComplexError(f"{source}: no facets")
    return SimplicialComplex(facets)


def read_complex(path) -> SimplicialComplex:
    with open(path) as fh:
        return parse_complex(fh.read(), str(path))


def format_complex(k: SimplicialComplex) -> str:
    lines = [" ".join(_label_text(v) for v in k.labels(f)) for f in k.facets()]
    return "\n".join(lines) + "\n"


def _label_text(v: Vertex) -> str:
    if isinstance(v, tuple):
        return "+".join(_label_text(x) for x in v)
    return str(v)
