"""Exact computations with Weyl groups, semifield points of the unipotent group,
the involution phi, tropical index sets of canonical bases, and the rank-two
coordinate-ring bases."""

__version__ = "0.1.0"
