"""Cappell UNil groups of the integers and the structure-set assembler."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

THEOREM_MIN_N = 5


class UNilKind(enum.Enum):
    ZERO = "0"
    Z2_INFTY = "(Z/2)^inf"
    Z2_PLUS_Z4_INFTY = "(Z/2)^inf + (Z/4)^inf"

    def __str__(self) -> str:
        return self.value


def epsilon(n: int) -> int:
    """``(-1)^n``."""
    return -1 if n % 2 else 1


_TABLE = {0: UNilKind.ZERO, 1: UNilKind.ZERO, 2: UNilKind.Z2_PLUS_Z4_INFTY, 3: UNilKind.Z2_INFTY}


def unil_group(n: int) -> UNilKind:
    """Isomorphism type of ``UNil_{n+eps}(Z; Z, Z)`` with ``eps = (-1)^n``.

    Depends only on ``n mod 4``; the groups are infinitely generated, so
    only the type tag is returned.
    """
    return _TABLE[n % 4]


HYPOTHESES = (
    ("1", "centralisers of non-trivial finite subgroups are finite", "bounded-check"),
    ("2", "every infinite virtually cyclic non-fbc subgroup lies in a unique maximal one", "bounded-check"),
    ("3", "virtually torsion-free with vcd = n > 4", "assumed"),
    ("4", "a model with X_free / Gamma of finite homotopy type exists", "assumed"),
    ("5", "Farrell-Jones conjecture in lower K- and L-theory", "assumed"),
)


@dataclass
class StructureSet:
    n: int
    summand: UNilKind
    index_count: int
    confidence: str
    singleton: bool
    outside_hypotheses: bool
    checklist: list[dict] = field(default_factory=list)

    def describe(self) -> str:
        if self.singleton:
            return "one element"
        return f"direct sum over {self.index_count} classes of {self.summand}"


def structure_set(n: int, mid: int, confidence: str = "exact",
                  checked: dict[str, str] | None = None) -> StructureSet:
    """Assemble ``sum over (mid) classes of UNil_{n+eps}``.

    ``mid`` is the number of conjugacy classes of maximal infinite dihedral
    subgroups.  The result is a singleton exactly when the summand vanishes
    or there are no such classes.  ``checked`` may carry verdicts for the
    bounded hypotheses 1 and 2.
    """
    if mid < 0:
        raise ValueError("the dihedral class count cannot be negative")
    summand = unil_group(n)
    checked = checked or {}
    checklist = [{"hypothesis": h, "statement": text, "mode": mode,
                  "status": checked.get(h, "not-run" if mode == "bounded-check" else "assumed")}
                 for h, text, mode in HYPOTHESES]
    return StructureSet(
        n=n,
        summand=summand,
        index_count=mid,
        confidence=confidence,
        singleton=summand is UNilKind.ZERO or mid == 0,
        outside_hypotheses=n < THEOREM_MIN_N,
        checklist=checklist,
    )
