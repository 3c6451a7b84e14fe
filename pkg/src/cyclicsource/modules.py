"""Isomorphism-level arithmetic for modules over k[C_{p^ell}] in characteristic p.

The indecomposable modules over the group algebra of a cyclic p-group in
characteristic p are uniserial, one of each dimension 1..p^ell; we write J_n
for the one of dimension n.  A module up to isomorphism is therefore a finite
multiset of Jordan sizes, and everything in this file is closed-form
arithmetic on such multisets.  Explicit matrices live in `oracle`, which
certifies every formula here.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .groups import GroupSpec


class GroupMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class ModuleSum:
    """A finite multiset of Jordan sizes over a fixed cyclic p-group.

    parts are stored sorted in descending order; the zero module is the
    empty tuple.
    """

    group: GroupSpec
    parts: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        parts = tuple(sorted(self.parts, reverse=True))
        object.__setattr__(self, "parts", parts)
        bound = self.group.order
        for n in parts:
            if not 1 <= n <= bound:
                raise ValueError(
                    f"part {n} out of range 1..{bound} for {self.group}"
                )

    @property
    def dim(self) -> int:
        return sum(self.parts)

    def counter(self) -> Counter:
        return Counter(self.parts)

    def __add__(self, other: "ModuleSum") -> "ModuleSum":
        _check_group(self, other)
        return ModuleSum(self.group, self.parts + other.parts)

    def __str__(self) -> str:
        if not self.parts:
            return "0"
        c = self.counter()
        return " + ".join(
            f"{mult}*J_{n}" if mult > 1 else f"J_{n}"
            for n, mult in sorted(c.items(), reverse=True)
        )


def _check_group(a: ModuleSum, b: ModuleSum) -> None:
    if a.group != b.group:
        raise GroupMismatchError(f"group mismatch: {a.group} vs {b.group}")


def module(group: GroupSpec, *parts: int) -> ModuleSum:
    return ModuleSum(group, tuple(parts))


def heller(m: ModuleSum) -> ModuleSum:
    """Kernel-of-projective-cover operator, summand-wise.

    Projective parts (n = p^ell) are discarded; J_n goes to J_{p^ell - n}.
    An involution on projective-free modules.
    """
    order = m.group.order
    return ModuleSum(m.group, tuple(order - n for n in m.parts if n != order))


def relative_heller(m: ModuleSum, i: int) -> ModuleSum:
    """Kernel of the minimal cover relative to the subgroup D_i, summand-wise.

    The indecomposables relatively projective with respect to D_i are exactly
    the J_n with p^(ell-i) | n (they are induced from D_i); those parts are
    discarded.  Any other J_n has minimal relatively projective cover
    J_m with m = p^(ell-i) * ceil(n / p^(ell-i)), and the kernel is J_{m-n}
    by uniseriality.  i = 0 is the ordinary Heller operator.
    """
    if not 0 <= i <= m.group.ell:
        raise ValueError(f"subgroup index {i} out of range 0..{m.group.ell}")
    q = m.group.p ** (m.group.ell - i)
    out = []
    for n in m.parts:
        if n % q == 0:
            continue
        cover = q * (-(-n // q))
        out.append(cover - n)
    return ModuleSum(m.group, tuple(out))


def restrict(m: ModuleSum, i: int) -> ModuleSum:
    """Restriction to the subgroup D_i.

    The generator of D_i acts as the p^(ell-i)-th power of the generator of
    D, and on a single unipotent Jordan block of size n that power has
    Jordan type: writing n = a*q + b with q = p^(ell-i) and 0 <= b < q,
    b blocks of size a+1 and q-b blocks of size a.  Dimension is preserved;
    i = 0 gives n copies of J_1 over the trivial group.
    """
    if not 0 <= i <= m.group.ell:
        raise ValueError(f"subgroup index {i} out of range 0..{m.group.ell}")
    sub = m.group.subgroup(i)
    q = m.group.p ** (m.group.ell - i)
    out: list[int] = []
    for n in m.parts:
        a, b = divmod(n, q)
        out.extend([a + 1] * b)
        if a > 0:
            out.extend([a] * (q - b))
    return ModuleSum(sub, tuple(out))


def induce(m: ModuleSum, to: GroupSpec) -> ModuleSum:
    """Induction from the subgroup to the full group.

    m must live over a subgroup D_i of `to` (same p, smaller or equal ell);
    J_a over D_i induces to J_{a * p^(ell-i)} over D.
    """
    if m.group.p != to.p or m.group.ell > to.ell:
        raise GroupMismatchError(
            f"cannot induce from {m.group} to {to}"
        )
    q = to.p ** (to.ell - m.group.ell)
    return ModuleSum(to, tuple(n * q for n in m.parts))


def vertex(n: int, group: GroupSpec) -> int:
    """Subgroup index of the vertex of J_n: ell minus the p-adic valuation.

    J_{p^ell} is projective (vertex index 0); J_1 has full vertex ell.
    """
    if not 1 <= n <= group.order:
        raise ValueError(f"Jordan size {n} out of range 1..{group.order}")
    v = 0
    while n % group.p == 0:
        n //= group.p
        v += 1
    return group.ell - v


def is_permutation(m: ModuleSum) -> bool:
    """True iff every part is a p-power (the transitive permutation modules
    over a cyclic p-group are exactly the J_{p^i})."""
    p_powers = {m.group.p ** i for i in range(m.group.ell + 1)}
    return all(n in p_powers for n in m.parts)
