"""Exact computations around right-angled Coxeter groups, Davis cubical
complexes, pseudo-free reflection subgroups and UNil structure sets."""

__version__ = "0.1.0"
