"""The Dade group of a cyclic p-group as bit vectors.

For D = C_{p^ell} the group of capped endo-permutation modules is
elementary abelian of rank ell, generated by the relative syzygies of the
trivial module.  An element is a bit vector alpha = (alpha_0..alpha_{ell-1});
the corresponding indecomposable module is obtained by inflating the result
for the quotient group and applying the Heller operator when alpha_0 = 1.
The sign vector of the determinant-one lift character gives a bijection onto
{+-1}^ell with an explicit inverse.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .groups import GroupSpec
from .modules import ModuleSum


class OddPrimeRequiredError(ValueError):
    pass


@dataclass(frozen=True)
class DadeElement:
    group: GroupSpec
    alpha: tuple[int, ...]

    def __post_init__(self) -> None:
        alpha = tuple(int(a) for a in self.alpha)
        object.__setattr__(self, "alpha", alpha)
        if len(alpha) != self.group.ell:
            raise ValueError(
                f"alpha must have length {self.group.ell}, got {len(alpha)}"
            )
        if any(a not in (0, 1) for a in alpha):
            raise ValueError(f"alpha entries must be bits, got {alpha}")

    @property
    def is_zero(self) -> bool:
        return not any(self.alpha)

    def __str__(self) -> str:
        return "".join(str(a) for a in self.alpha)


@dataclass(frozen=True)
class SignVector:
    group: GroupSpec
    signs: tuple[int, ...]

    def __post_init__(self) -> None:
        signs = tuple(int(s) for s in self.signs)
        object.__setattr__(self, "signs", signs)
        if len(signs) != self.group.ell:
            raise ValueError(
                f"signs must have length {self.group.ell}, got {len(signs)}"
            )
        if any(s not in (1, -1) for s in signs):
            raise ValueError(f"sign entries must be +-1, got {signs}")


@dataclass(frozen=True)
class LiftCharacter:
    """Character of the determinant-one lift of an indecomposable capped
    endo-permutation module: the degree plus one integer value per layer
    D_i \\ D_{i-1} (values are constant on layers)."""

    group: GroupSpec
    dim: int
    layer_values: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.layer_values) != self.group.ell:
            raise ValueError(
                f"need {self.group.ell} layer values, got {len(self.layer_values)}"
            )
        if self.dim <= 0 or any(v == 0 for v in self.layer_values):
            raise ValueError("degree must be positive and layer values non-zero")


def dade_zero(group: GroupSpec) -> DadeElement:
    return DadeElement(group, (0,) * group.ell)


def dade_add(a: DadeElement, b: DadeElement) -> DadeElement:
    """Composition in the Dade group: componentwise XOR (every class is
    2-torsion)."""
    if a.group != b.group:
        raise ValueError(f"group mismatch: {a.group} vs {b.group}")
    return DadeElement(a.group, tuple(x ^ y for x, y in zip(a.alpha, b.alpha)))


def w_module(e: DadeElement) -> int:
    """Jordan size n of the indecomposable module named by alpha.

    Recursion over the leading bit: alpha_0 = 0 inflates the module for
    D/D_1 (same dimension), alpha_0 = 1 additionally applies the Heller
    operator (dimension complements to p^ell).  The result is always
    coprime to p, i.e. the module is capped with full vertex.
    """
    p = e.group.p
    dim = 1
    for depth in range(1, e.group.ell + 1):
        bit = e.alpha[e.group.ell - depth]
        if bit:
            dim = p**depth - dim
    return dim


def w_module_sum(e: DadeElement) -> ModuleSum:
    return ModuleSum(e.group, (w_module(e),))


def enumerate_elements(group: GroupSpec):
    for bits in product((0, 1), repeat=group.ell):
        yield DadeElement(group, bits)


def element_from_jordan(group: GroupSpec, n: int) -> DadeElement:
    """Invert the (injective) map alpha -> Jordan size by enumeration."""
    for e in enumerate_elements(group):
        if w_module(e) == n:
            return e
    raise ValueError(
        f"J_{n} is not a capped endo-permutation class over {group}"
    )


def lift_character(e: DadeElement) -> LiftCharacter:
    """Character values of the determinant-one lift, layer by layer.

    Base case: the trivial group, degree 1.  If alpha_0 = 0 the module is
    inflated, so the bottom layer sees the degree of the quotient character
    and the higher layers shift down.  If alpha_0 = 1 the Heller step is
    applied on top: the degree complements to p^ell and every value negates,
    because the projective character of the cover vanishes off the identity.
    Requires p odd: the determinant-one lift argument needs permutation
    lattices of trivial determinant.
    """
    if e.group.p == 2:
        raise OddPrimeRequiredError("character recursion undefined for p = 2")
    p = e.group.p
    dim = 1
    layers: list[int] = []
    for depth in range(1, e.group.ell + 1):
        bit = e.alpha[e.group.ell - depth]
        layers = [dim] + layers
        if bit:
            dim = p**depth - dim
            layers = [-v for v in layers]
    return LiftCharacter(e.group, dim, tuple(layers))


def psi(e: DadeElement) -> SignVector:
    """Sign vector (omega(u_1)..omega(u_ell)): the i-th sign is the parity
    of the partial sum alpha_0 + ... + alpha_{i-1}."""
    signs = []
    total = 0
    for a in e.alpha:
        total += a
        signs.append(1 if total % 2 == 0 else -1)
    return SignVector(e.group, tuple(signs))


def psi_inverse(s: SignVector) -> DadeElement:
    """Inverse of `psi`: alpha_0 records the first sign, and each later bit
    records a sign change between consecutive layers."""
    alpha = []
    prev = 1
    for sign in s.signs:
        alpha.append(0 if sign == prev else 1)
        prev = sign
    return DadeElement(s.group, tuple(alpha))
