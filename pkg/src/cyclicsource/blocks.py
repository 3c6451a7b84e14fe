"""Inferring the source module of a cyclic block from character data.

The non-exceptional character values at one element per layer of the defect
group determine the source module up to isomorphism: their signs, after a
global flip that normalizes the bottom layer to +1, are exactly the sign
vector of the Dade element of the source.  Group-theoretic triviality
criteria (principal block, centralizer/normalizer equalities, defect C_4)
enter as user-asserted metadata flags, and the reduction bookkeeping
(restriction-cap along subgroups, the defect-zero tensor shift) is wrapped
here as Dade-group arithmetic.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from . import dade
from .dade import DadeElement, SignVector
from .groups import GroupSpec
from .modules import ModuleSum, restrict
from .oracle import cap_part

PROVENANCE_CHARACTER = "character-values"
PROVENANCE_PRINCIPAL = "principal-block"
PROVENANCE_LOCAL = "local-equality"
PROVENANCE_C4 = "c4-defect"


class CharacterValueError(ValueError):
    pass


class OddPrimeRequiredError(ValueError):
    pass


class InconsistentDescriptorError(ValueError):
    pass


@dataclass(frozen=True)
class BlockDescriptor:
    """Input data for one block: the defect group, the character values
    chi(u_1)..chi(u_ell) of a non-exceptional character at one element per
    layer, and optional group-theoretic metadata flags."""

    group: GroupSpec
    chi_values: tuple[int, ...] | None = None
    is_principal: bool | None = None
    centralizer_equal: bool | None = None
    normalizer_equal: bool | None = None
    inertial_index: int | None = None
    label: str = ""

    def __post_init__(self) -> None:
        if self.group.ell < 1:
            raise ValueError("block defect group must be non-trivial")
        if self.chi_values is not None:
            values = tuple(int(v) for v in self.chi_values)
            object.__setattr__(self, "chi_values", values)
            if len(values) != self.group.ell:
                raise ValueError(
                    f"need {self.group.ell} character values, got {len(values)}"
                )
        e = self.inertial_index
        if e is not None:
            if e < 1:
                raise ValueError("inertial index must be positive")
            if (self.group.p - 1) % e != 0:
                raise ValueError(
                    f"inertial index {e} does not divide p - 1 = {self.group.p - 1}"
                )
            if (self.group.order - 1) % e != 0:
                raise ValueError(
                    f"inertial index {e} does not divide p^ell - 1 = "
                    f"{self.group.order - 1}"
                )


@dataclass(frozen=True)
class WResult:
    """The inferred source module: its Dade element, Jordan size, sign
    vector, triviality flag, and which criterion produced it."""

    dade: DadeElement
    jordan: int
    signs: SignVector
    trivial: bool
    provenance: str

    def __post_init__(self) -> None:
        if self.dade.alpha and self.dade.alpha[0] != 0:
            raise ValueError("source module must have trivial bottom-layer action")
        if self.trivial != self.dade.is_zero or self.trivial != (self.jordan == 1):
            raise ValueError("triviality flag inconsistent with the element")


def _trivial_result(group: GroupSpec, provenance: str) -> WResult:
    zero = dade.dade_zero(group)
    return WResult(zero, 1, dade.psi(zero), True, provenance)


def _checked_values(b: BlockDescriptor) -> tuple[int, ...]:
    if b.group.p == 2:
        raise OddPrimeRequiredError(
            "character inference requires an odd prime"
        )
    if b.chi_values is None:
        raise CharacterValueError("no character values supplied")
    for idx, v in enumerate(b.chi_values):
        if v == 0:
            raise CharacterValueError(
                f"chi value at layer {idx + 1} is zero; a non-zero integer "
                f"is required"
            )
    return b.chi_values


def infer_w(b: BlockDescriptor) -> WResult:
    """Recover the source module from the character values.

    Only the sign pattern matters: if the bottom-layer value is negative the
    character belongs to the Heller translate and every sign is flipped, so
    the normalized vector always starts with +1.  The inverse of the sign
    bijection then yields the Dade element, whose leading bit is forced to 0.
    """
    values = _checked_values(b)
    signs = [1 if v > 0 else -1 for v in values]
    if signs[0] == -1:
        signs = [-s for s in signs]
    sv = SignVector(b.group, tuple(signs))
    element = dade.psi_inverse(sv)
    return WResult(
        dade=element,
        jordan=dade.w_module(element),
        signs=sv,
        trivial=element.is_zero,
        provenance=PROVENANCE_CHARACTER,
    )


def is_trivial_by_signs(b: BlockDescriptor) -> bool:
    """True iff all character values share one strict sign, i.e. the source
    module is trivial."""
    values = _checked_values(b)
    return all(v > 0 for v in values) or all(v < 0 for v in values)


def metadata_criteria(b: BlockDescriptor) -> WResult | None:
    """Metadata-only triviality criteria: the source module is trivial for a
    principal block, when C_G(D) = C_G(D_1) or N_G(D) = N_G(D_1), and when
    the defect group is C_4.  Returns None when no criterion applies (which
    is not a claim of non-triviality)."""
    if b.is_principal:
        return _trivial_result(b.group, PROVENANCE_PRINCIPAL)
    if b.centralizer_equal or b.normalizer_equal:
        return _trivial_result(b.group, PROVENANCE_LOCAL)
    if b.group.p == 2 and b.group.ell == 2:
        return _trivial_result(b.group, PROVENANCE_C4)
    return None


def analyze(b: BlockDescriptor) -> WResult:
    """Combined inference: character values when usable, metadata flags
    otherwise.  When both routes produce an answer and disagree, the input
    is invalid and a hard error is raised rather than preferring either."""
    from_flags = metadata_criteria(b)
    from_chi: WResult | None = None
    if b.chi_values is not None and b.group.p != 2:
        from_chi = infer_w(b)
    if from_chi is not None and from_flags is not None:
        if not from_chi.trivial:
            raise InconsistentDescriptorError(
                f"metadata flags assert a trivial source module but the "
                f"character values give J_{from_chi.jordan}"
            )
        return from_flags
    if from_chi is not None:
        return from_chi
    if from_flags is not None:
        return from_flags
    if b.chi_values is not None and b.group.p == 2:
        raise OddPrimeRequiredError(
            "character inference requires an odd prime and no metadata "
            "criterion applies"
        )
    raise CharacterValueError(
        "descriptor carries neither character values nor an applicable "
        "metadata criterion"
    )


def restrict_w(w: WResult, i: int) -> int:
    """Jordan size of the source module of a covered block with defect
    group D_i: the cap of the restriction.  Requires i >= 1 (the covered
    block must meet the defect group non-trivially)."""
    if i == 0:
        raise ValueError("restriction target must be a non-trivial subgroup")
    group = w.dade.group
    if not 1 <= i <= group.ell:
        raise ValueError(f"subgroup index {i} out of range 1..{group.ell}")
    if i == group.ell or w.jordan == 1:
        return w.jordan
    res = restrict(ModuleSum(group, (w.jordan,)), i)
    return cap_part(res)


def fong_shift(w_hat: DadeElement, cap_v: int) -> DadeElement:
    """Dade-group shift for the defect-zero covered-block reduction: the
    source class of the original block is the class of the cap of the
    covered simple module plus the source class of the reduced block."""
    shift = dade.element_from_jordan(w_hat.group, cap_v)
    return dade.dade_add(w_hat, shift)


def check_layer_magnitudes(values_per_layer: list[list[int]]) -> list[str]:
    """When several elements of one layer are supplied, signs must agree
    (guaranteed by theory) and magnitudes are expected to, but only sign
    constancy is enforced; non-constant magnitudes produce warnings."""
    notes = []
    for idx, vals in enumerate(values_per_layer, start=1):
        if not vals:
            continue
        signs = {v > 0 for v in vals}
        if len(signs) > 1:
            raise CharacterValueError(
                f"layer {idx} has values of both signs: {vals}"
            )
        if len(set(abs(v) for v in vals)) > 1:
            msg = f"layer {idx} magnitudes are not constant: {vals}"
            warnings.warn(msg)
            notes.append(msg)
    return notes
