"""Eisenstein integers, the Heisenberg group over them, and its C_3 extension."""

from __future__ import annotations

import random
from dataclasses import dataclass


@dataclass(frozen=True)
class Eisenstein:
    """``a + b*w`` with ``w`` a primitive cube root of unity, ``w^2 = -1 - w``."""

    a: int = 0
    b: int = 0

    def __add__(self, other: Eisenstein) -> Eisenstein:
        other = _eis(other)
        return Eisenstein(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self) -> Eisenstein:
        return Eisenstein(-self.a, -self.b)

    def __sub__(self, other: Eisenstein) -> Eisenstein:
        return self + (-_eis(other))

    def __rsub__(self, other) -> Eisenstein:
        return _eis(other) - self

    def __mul__(self, other: Eisenstein) -> Eisenstein:
        return eis_mul(self, _eis(other))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Eisenstein:
        if k < 0:
            raise ValueError("negative powers are not defined in Z[w]")
        out = ONE
        for _ in range(k):
            out = out * self
        return out

    def conjugate(self) -> Eisenstein:
        # conj(w) = w^2 = -1 - w
        return Eisenstein(self.a - self.b, -self.b)

    def norm(self) -> int:
        return self.a * self.a - self.a * self.b + self.b * self.b

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        w = "w" if self.b == 1 else "-w" if self.b == -1 else f"{self.b}w"
        if self.a == 0:
            return w
        return f"{self.a}{w if w.startswith('-') else '+' + w}"


def _eis(x) -> Eisenstein:
    if isinstance(x, Eisenstein):
        return x
    if isinstance(x, int):
        return Eisenstein(x, 0)
    return NotImplemented


def eis_mul(u: Eisenstein, v: Eisenstein) -> Eisenstein:
    """``(a + bw)(c + dw) = (ac - bd) + (ad + bc - bd) w``."""
    a, b, c, d = u.a, u.b, v.a, v.b
    return Eisenstein(a * c - b * d, a * d + b * c - b * d)


ZERO = Eisenstein(0, 0)
ONE = Eisenstein(1, 0)
OMEGA = Eisenstein(0, 1)
OMEGA2 = Eisenstein(-1, -1)


@dataclass(frozen=True)
class HeisenbergElement:
    """The matrix ``[[1, x, z], [0, 1, y], [0, 0, 1]]``."""

    x: Eisenstein = ZERO
    y: Eisenstein = ZERO
    z: Eisenstein = ZERO

    def __mul__(self, other: HeisenbergElement) -> HeisenbergElement:
        return hei_mul(self, other)

    def inverse(self) -> HeisenbergElement:
        return HeisenbergElement(-self.x, -self.y, self.x * self.y - self.z)

    def matrix(self) -> list[list[Eisenstein]]:
        return [[ONE, self.x, self.z], [ZERO, ONE, self.y], [ZERO, ZERO, ONE]]

    def is_central(self) -> bool:
        return self.x.is_zero() and self.y.is_zero()


HEI_IDENTITY = HeisenbergElement()


def hei_mul(g: HeisenbergElement, h: HeisenbergElement) -> HeisenbergElement:
    return HeisenbergElement(g.x + h.x, g.y + h.y, g.z + h.z + g.x * h.y)


def hei_commutator(g: HeisenbergElement, h: HeisenbergElement) -> HeisenbergElement:
    """``g h g^-1 h^-1``."""
    return g * h * g.inverse() * h.inverse()


def matmul3(p, q):
    return [[sum((p[i][k] * q[k][j] for k in range(3)), ZERO) for j in range(3)] for i in range(3)]


def from_matrix(m) -> HeisenbergElement:
    if not (m[0][0] == m[1][1] == m[2][2] == ONE and m[1][0] == m[2][0] == m[2][1] == ZERO):
        raise ValueError("not a unipotent upper-triangular matrix")
    return HeisenbergElement(m[0][1], m[1][2], m[0][2])


def c3_act(k: int, g: HeisenbergElement) -> HeisenbergElement:
    """Conjugation by ``D^k``, ``D = diag(1, w, w^2)``.

    ``D M D^-1`` scales entry ``(i, j)`` by ``d_i / d_j``: ``x`` and ``y`` by
    ``w^2``, ``z`` by ``w``.
    """
    for _ in range(k % 3):
        g = HeisenbergElement(OMEGA2 * g.x, OMEGA2 * g.y, OMEGA * g.z)
    return g


@dataclass(frozen=True)
class GammaElement:
    h: HeisenbergElement = HEI_IDENTITY
    k: int = 0

    def __post_init__(self):
        object.__setattr__(self, "k", self.k % 3)

    def __mul__(self, other: GammaElement) -> GammaElement:
        return gamma_mul(self, other)

    def inverse(self) -> GammaElement:
        return gamma_inv(self)


GAMMA_IDENTITY = GammaElement()


def gamma_mul(a: GammaElement, b: GammaElement) -> GammaElement:
    return GammaElement(a.h * c3_act(a.k, b.h), a.k + b.k)


def gamma_inv(a: GammaElement) -> GammaElement:
    return GammaElement(c3_act(-a.k, a.h.inverse()), -a.k)


def nonabelian_witness() -> tuple[GammaElement, GammaElement]:
    """Two elements of the Heisenberg part whose commutator is central and non-trivial."""
    one = Eisenstein(1)
    return (GammaElement(HeisenbergElement(one, ZERO, ZERO)),
            GammaElement(HeisenbergElement(ZERO, one, ZERO)))


# -- randomised self-test ----------------------------------------------------------


def random_eisenstein(rng: random.Random, bound: int = 50) -> Eisenstein:
    return Eisenstein(rng.randint(-bound, bound), rng.randint(-bound, bound))


def random_hei(rng: random.Random, bound: int = 50) -> HeisenbergElement:
    return HeisenbergElement(random_eisenstein(rng, bound), random_eisenstein(rng, bound),
                             random_eisenstein(rng, bound))


def random_gamma(rng: random.Random, bound: int = 50) -> GammaElement:
    return GammaElement(random_hei(rng, bound), rng.randrange(3))


def selftest(samples: int = 10_000, seed: int = 0) -> dict[str, int]:
    """Run the randomised group-law checks; returns failure counts per check."""
    rng = random.Random(seed)
    fails = dict.fromkeys(["associativity", "identity", "inverse", "matrix_oracle", "automorphism",
                           "c3_order", "center", "commutator_central"], 0)
    w1, w2 = nonabelian_witness()
    for _ in range(samples):
        a, b, c = random_gamma(rng), random_gamma(rng), random_gamma(rng)
        fails["associativity"] += (a * b) * c != a * (b * c)
        fails["identity"] += GAMMA_IDENTITY * a != a or a * GAMMA_IDENTITY != a
        fails["inverse"] += a * a.inverse() != GAMMA_IDENTITY or a.inverse() * a != GAMMA_IDENTITY
        g, h = random_hei(rng), random_hei(rng)
        fails["matrix_oracle"] += from_matrix(matmul3(g.matrix(), h.matrix())) != g * h
        k = rng.randrange(3)
        fails["automorphism"] += c3_act(k, g * h) != c3_act(k, g) * c3_act(k, h)
        fails["c3_order"] += c3_act(3, g) != g
        z = HeisenbergElement(ZERO, ZERO, random_eisenstein(rng))
        fails["center"] += z * g != g * z
        # a non-central element fails to commute with one of the witness generators
        if not g.is_central():
            fails["center"] += g * w1.h == w1.h * g and g * w2.h == w2.h * g
        fails["commutator_central"] += not hei_commutator(g, h).is_central()
    return fails
