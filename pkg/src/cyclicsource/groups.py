"""Cyclic p-group bookkeeping.

A group here is always D = C_{p^ell} together with its chain of subgroups
D_0 = 1 < D_1 < ... < D_ell = D, where D_i has order p^i.  Subgroups are
referred to by their chain index i.
"""

from __future__ import annotations

from dataclasses import dataclass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True, order=True)
class GroupSpec:
    """A cyclic group of order p^ell.

    ell = 0 (the trivial group) is allowed so that restriction to D_0 has
    a home; block-level consumers require ell >= 1.
    """

    p: int
    ell: int

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")
        if self.ell < 0:
            raise ValueError(f"ell must be non-negative, got {self.ell}")

    @property
    def order(self) -> int:
        return self.p ** self.ell

    def subgroup(self, i: int) -> "GroupSpec":
        """The subgroup D_i of order p^i."""
        if not 0 <= i <= self.ell:
            raise ValueError(f"subgroup index {i} out of range 0..{self.ell}")
        return GroupSpec(self.p, i)

    def __str__(self) -> str:
        return f"C_{self.order}"
