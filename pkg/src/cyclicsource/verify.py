"""Verification sweeps: every closed form against the matrix oracle.

Each suite enumerates a family of cases for one (p, ell), recomputes the
closed-form answer through explicit matrices, and records any mismatch with
its full witness.  A clean run has zero mismatches by construction; a
mismatch means a formula (or the oracle) is wrong.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from . import dade, modules, oracle
from .dade import DadeElement
from .groups import GroupSpec
from .modules import ModuleSum


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    skipped: int = 0
    mismatches: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.mismatches

    def check(self, ok: bool, witness: dict) -> None:
        self.cases += 1
        if not ok:
            self.mismatches.append(witness)


def _within_capacity(dim: int, cap: int | None) -> bool:
    return dim * dim <= oracle.capacity_limit(cap)


def suite_dade_law(group: GroupSpec, cap: int | None = None) -> SuiteResult:
    """cap(J_w(a) (x) J_w(b)) = J_w(a XOR b), all pairs, by tensor oracle."""
    result = SuiteResult("dade-law")
    elements = list(dade.enumerate_elements(group))
    for a, b in product(elements, repeat=2):
        wa, wb = dade.w_module(a), dade.w_module(b)
        if not _within_capacity(wa * wb, cap):
            result.skipped += 1
            continue
        tensor = oracle.tensor_decompose(
            dade.w_module_sum(a), dade.w_module_sum(b), cap
        )
        got = oracle.cap_part(tensor)
        expected = dade.w_module(dade.dade_add(a, b))
        result.check(got == expected, {
            "a": str(a), "b": str(b), "tensor": str(tensor),
            "cap": got, "expected": expected,
        })
    return result


def suite_classification(group: GroupSpec, cap: int | None = None) -> SuiteResult:
    """alpha -> Jordan size is injective, images are coprime to p, and each
    image passes the oracle endo-permutation and cap checks where capacity
    permits."""
    result = SuiteResult("classification")
    elements = list(dade.enumerate_elements(group))
    sizes = [dade.w_module(e) for e in elements]
    result.check(len(set(sizes)) == len(sizes), {
        "check": "injectivity", "sizes": sizes,
    })
    for e, n in zip(elements, sizes):
        result.check(n % group.p != 0, {
            "check": "full vertex", "alpha": str(e), "jordan": n,
        })
        if not _within_capacity(n * n, cap):
            result.skipped += 1
            continue
        m = dade.w_module_sum(e)
        result.check(oracle.is_endo_permutation(m, cap), {
            "check": "endo-permutation", "alpha": str(e), "jordan": n,
        })
        result.check(oracle.cap_part(m) == n, {
            "check": "cap", "alpha": str(e), "jordan": n,
        })
    return result


def suite_characters(group: GroupSpec, cap: int | None = None) -> SuiteResult:
    """Lift-character coherence: the Heller shift negates all layer values
    and complements the degree, and the sign pattern equals the sign vector
    of the element.  Odd p only."""
    result = SuiteResult("characters")
    if group.p == 2:
        result.skipped += 1
        return result
    heller_gen = DadeElement(group, (1,) + (0,) * (group.ell - 1))
    for e in dade.enumerate_elements(group):
        char = dade.lift_character(e)
        shifted = dade.lift_character(dade.dade_add(e, heller_gen))
        result.check(
            shifted.dim == group.order - char.dim
            and shifted.layer_values == tuple(-v for v in char.layer_values),
            {"check": "heller shift", "alpha": str(e),
             "char": (char.dim, char.layer_values),
             "shifted": (shifted.dim, shifted.layer_values)},
        )
        signs = tuple(1 if v > 0 else -1 for v in char.layer_values)
        result.check(signs == dade.psi(e).signs, {
            "check": "sign pattern", "alpha": str(e),
            "layers": char.layer_values, "psi": dade.psi(e).signs,
        })
        result.check(char.dim == dade.w_module(e), {
            "check": "degree", "alpha": str(e),
            "dim": char.dim, "jordan": dade.w_module(e),
        })
        result.check(dade.psi_inverse(dade.psi(e)) == e, {
            "check": "psi inverse", "alpha": str(e),
        })
    for a, b in product(dade.enumerate_elements(group), repeat=2):
        lhs = dade.psi(dade.dade_add(a, b)).signs
        rhs = tuple(x * y for x, y in zip(dade.psi(a).signs, dade.psi(b).signs))
        result.check(lhs == rhs, {
            "check": "psi multiplicative", "a": str(a), "b": str(b),
        })
    return result


def suite_relative_heller(group: GroupSpec, cap: int | None = None) -> SuiteResult:
    """Closed form of the relative syzygy against the matrix oracle for
    every Jordan size and every subgroup index."""
    result = SuiteResult("relative-heller")
    for n in range(1, group.order + 1):
        for i in range(0, group.ell + 1):
            m = ModuleSum(group, (n,))
            closed = modules.relative_heller(m, i)
            by_oracle = oracle.relative_heller_oracle(m, i, cap)
            result.check(closed == by_oracle, {
                "n": n, "i": i,
                "closed": str(closed), "oracle": str(by_oracle),
            })
    return result


def suite_restriction(group: GroupSpec, cap: int | None = None) -> SuiteResult:
    """Closed-form restriction against the matrix-power oracle, plus the
    cap-chain property along subgroup chains for the classified modules."""
    result = SuiteResult("restriction")
    for n in range(1, group.order + 1):
        for i in range(0, group.ell + 1):
            m = ModuleSum(group, (n,))
            closed = modules.restrict(m, i)
            by_oracle = oracle.restrict_oracle(m, i, cap)
            result.check(closed == by_oracle, {
                "n": n, "i": i,
                "closed": str(closed), "oracle": str(by_oracle),
            })
    for e in dade.enumerate_elements(group):
        n = dade.w_module(e)
        m = ModuleSum(group, (n,))
        for i in range(1, group.ell + 1):
            for j in range(1, i + 1):
                direct = oracle.cap_part(modules.restrict(m, j))
                mid = oracle.cap_part(modules.restrict(m, i))
                mid_module = ModuleSum(group.subgroup(i), (mid,))
                chained = oracle.cap_part(modules.restrict(mid_module, j))
                result.check(direct == chained, {
                    "check": "cap chain", "alpha": str(e),
                    "i": i, "j": j, "direct": direct, "chained": chained,
                })
    return result


def suite_operator_composition(group: GroupSpec, cap: int | None = None) -> SuiteResult:
    """Applying the relative syzygy operators literally, innermost first,
    agrees with the bit-vector recursion; spot-checked against the oracle
    within capacity."""
    result = SuiteResult("operator-composition")
    for e in dade.enumerate_elements(group):
        m = ModuleSum(group, (1,))
        for i in reversed(range(group.ell)):
            if e.alpha[i]:
                m = modules.relative_heller(m, i)
        result.check(m.parts == (dade.w_module(e),), {
            "alpha": str(e), "composed": str(m), "recursion": dade.w_module(e),
        })
        m_oracle = ModuleSum(group, (1,))
        for i in reversed(range(group.ell)):
            if e.alpha[i]:
                m_oracle = oracle.relative_heller_oracle(m_oracle, i, cap)
        result.check(m_oracle.parts == (dade.w_module(e),), {
            "check": "oracle composition", "alpha": str(e),
            "composed": str(m_oracle), "recursion": dade.w_module(e),
        })
    return result


def suite_induction(group: GroupSpec, cap: int | None = None) -> SuiteResult:
    """Closed-form induction against the explicit block-matrix oracle."""
    result = SuiteResult("induction")
    for i in range(0, group.ell + 1):
        sub = group.subgroup(i)
        for a in range(1, sub.order + 1):
            m = ModuleSum(sub, (a,))
            closed = modules.induce(m, group)
            if not _within_capacity(closed.dim, cap):
                result.skipped += 1
                continue
            by_oracle = oracle.induce_oracle(m, group, cap)
            result.check(closed == by_oracle, {
                "i": i, "a": a,
                "closed": str(closed), "oracle": str(by_oracle),
            })
    return result


SUITES = {
    "dade-law": suite_dade_law,
    "classification": suite_classification,
    "characters": suite_characters,
    "relative-heller": suite_relative_heller,
    "restriction": suite_restriction,
    "operator-composition": suite_operator_composition,
    "induction": suite_induction,
}


def run_suites(group: GroupSpec, names: list[str] | None = None,
               cap: int | None = None) -> list[SuiteResult]:
    if names is None:
        names = list(SUITES)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise ValueError(f"unknown suite(s): {', '.join(unknown)}")
    return [SUITES[name](group, cap) for name in names]
