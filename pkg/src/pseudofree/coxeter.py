"""Right-angled Coxeter groups: normal forms, the Tits representation,
torsion detection, and the abelianisation to sign vectors."""

from __future__ import annotations

import os
from collections.abc import Iterable, Sequence
from itertools import combinations

from .complexes import SimplicialComplex
from .matrix import IntegerMatrix

Word = tuple[int, ...]
SignVector = tuple[int, ...]

DEFAULT_MAX_RADIUS = 16


class CapExceeded(RuntimeError):
    pass


class CoxeterSystem:
    """Right-angled Coxeter system on ordered generators.

    ``s*s = 1`` for every generator and ``st = ts`` exactly for the listed
    commuting pairs; every other pair generates an infinite dihedral group.
    """

    def __init__(self, generators: Sequence, commuting: Iterable[tuple] = ()):
        self.generators = tuple(generators)
        self.index = {g: i for i, g in enumerate(self.generators)}
        if len(self.index) != len(self.generators):
            raise ValueError("duplicate generator labels")
        n = len(self.generators)
        self.commutes = [[False] * n for _ in range(n)]
        for a, b in commuting:
            i = a if isinstance(a, int) and a not in self.index else self.index[a]
            j = b if isinstance(b, int) and b not in self.index else self.index[b]
            if i == j:
                raise ValueError("a generator cannot be listed as commuting with itself")
            self.commutes[i][j] = self.commutes[j][i] = True

    @classmethod
    def from_complex(cls, k: SimplicialComplex) -> CoxeterSystem:
        return cls(k.vertices, [(k.vertices[a], k.vertices[b]) for a, b in k.edges()])

    @property
    def rank(self) -> int:
        return len(self.generators)

    def commuting_pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i, j in combinations(range(self.rank), 2) if self.commutes[i][j]]

    def word(self, labels: Iterable) -> Word:
        return tuple(self.index[x] for x in labels)

    def parse_word(self, text: str) -> Word:
        """Whitespace-separated labels; single-character labels may also be run together."""
        toks = text.split()
        if len(toks) == 1 and toks[0] not in self.index:
            toks = list(toks[0])
        return self.word(toks)

    def format_word(self, w: Word) -> str:
        return " ".join(str(self.generators[i]) for i in w) if w else "1"

    def __repr__(self) -> str:
        return f"CoxeterSystem({list(self.generators)}, commuting={self.commuting_pairs()})"

    # -- word problem --------------------------------------------------------

    def reduce(self, w: Iterable[int]) -> list[int]:
        """Some reduced expression for ``w``.

        Appending ``s`` to a reduced word ``u`` shortens it exactly when an
        occurrence of ``s`` in ``u`` is followed only by letters commuting
        with ``s``; that occurrence is deleted.
        """
        out: list[int] = []
        for s in w:
            row = self.commutes[s]
            for j in range(len(out) - 1, -1, -1):
                t = out[j]
                if t == s:
                    del out[j]
                    break
                if not row[t]:
                    out.append(s)
                    break
            else:
                out.append(s)
        return out

    def normal_form(self, w: Iterable[int]) -> Word:
        """ShortLex-least reduced word for the element ``w``."""
        letters = self.reduce(w)
        out = []
        while letters:
            best = None
            for i, s in enumerate(letters):
                if best is not None and s >= letters[best]:
                    continue
                if all(self.commutes[s][t] for t in letters[:i]):
                    best = i
            out.append(letters.pop(best))
        return tuple(out)

    def multiply(self, u: Word, v: Word) -> Word:
        return self.normal_form(u + v)

    def inverse(self, w: Word) -> Word:
        return self.normal_form(tuple(reversed(w)))

    def length(self, w: Iterable[int]) -> int:
        return len(self.reduce(w))

    def equal(self, u: Iterable[int], v: Iterable[int]) -> bool:
        return self.normal_form(u) == self.normal_form(v)

    # -- Tits representation -------------------------------------------------

    def bilinear(self, s: int, t: int) -> int:
        if s == t:
            return 1
        return 0 if self.commutes[s][t] else -1

    def generator_matrix(self, s: int) -> IntegerMatrix:
        n = self.rank
        m = IntegerMatrix.identity(n)
        for j in range(n):
            # sigma_s(alpha_j) = alpha_j - 2 B(alpha_s, alpha_j) alpha_s
            m.add(s, j, -2 * self.bilinear(s, j))
        return m

    def tits_matrix(self, w: Iterable[int]) -> IntegerMatrix:
        m = IntegerMatrix.identity(self.rank)
        for s in w:
            m = m @ self.generator_matrix(s)
        return m

    # -- torsion, abelianisation --------------------------------------------

    def cyclically_reduce(self, w: Iterable[int]) -> Word:
        """Shortest-by-conjugation representative reached by peeling letters
        that can be moved to both ends."""
        u = list(self.normal_form(w))
        while True:
            firsts = {}
            for i, s in enumerate(u):
                if s not in firsts and all(self.commutes[s][t] for t in u[:i]):
                    firsts[s] = i
            hit = None
            for j in range(len(u) - 1, -1, -1):
                s = u[j]
                if s in firsts and firsts[s] != j and all(self.commutes[s][t] for t in u[j + 1:]):
                    hit = (firsts[s], j)
                    break
            if hit is None:
                return tuple(u)
            i, j = hit
            u = u[:i] + u[i + 1:j] + u[j + 1:]

    def support(self, w: Iterable[int]) -> set[int]:
        return set(self.normal_form(w))

    def is_clique(self, gens: Iterable[int]) -> bool:
        gens = list(gens)
        return all(self.commutes[a][b] for a, b in combinations(gens, 2))

    def is_torsion(self, w: Iterable[int]) -> bool:
        """Finite order iff the cyclically reduced form has clique support."""
        return self.is_clique(set(self.cyclically_reduce(w)))

    def phi(self, w: Iterable[int]) -> SignVector:
        """Image in ``{-1, 1}^S``: coordinate ``s`` is ``(-1)^(occurrences of s)``."""
        signs = [1] * self.rank
        for s in w:
            signs[s] = -signs[s]
        return tuple(signs)

    def in_commutator_subgroup(self, w: Iterable[int]) -> bool:
        return all(x == 1 for x in self.phi(w))

    def ball(self, radius: int, max_radius: int | None = None) -> list[Word]:
        """All elements of length ``<= radius``, in ShortLex order."""
        if max_radius is None:
            max_radius = int(os.environ.get("DF_MAX_RADIUS", DEFAULT_MAX_RADIUS))
        if radius < 0:
            raise ValueError("radius must be non-negative")
        if radius > max_radius:
            raise CapExceeded(f"ball radius {radius} exceeds cap {max_radius}")
        seen = {(): None}
        layer = [()]
        for _ in range(radius):
            nxt = []
            for w in layer:
                for s in range(self.rank):
                    u = self.normal_form(w + (s,))
                    if len(u) == len(w) + 1 and u not in seen:
                        seen[u] = None
                        nxt.append(u)
            layer = nxt
        return sorted(seen, key=lambda w: (len(w), w))


def sign_product(e: SignVector, f: SignVector) -> SignVector:
    return tuple(a * b for a, b in zip(e, f))


def parse_system(text: str) -> CoxeterSystem:
    """First line: generators; each further line: one commuting pair."""
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ValueError("empty Coxeter system description")
    gens = lines[0]
    pairs = []
    for ln in lines[1:]:
        if len(ln) != 2:
            raise ValueError(f"commuting pair line must have two labels: {' '.join(ln)}")
        pairs.append(tuple(ln))
    return CoxeterSystem(gens, pairs)
