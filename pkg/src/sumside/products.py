"""Periodic structure in Euler exponent sequences.

A sum side whose factorization has purely periodic exponents is a candidate
identity: binary profiles (all exponents 0 or 1) say "partitions into parts
in these congruence classes", the classical product-side shape.  This module
finds the smallest certified period, renders shapes as congruence statements,
and classifies residue sets as symmetric or not under r -> p - r.
"""

from __future__ import annotations

from dataclasses import dataclass

from .series import ExponentSequence


@dataclass(frozen=True)
class ProductShape:
    """Periodic exponent pattern of a product prod (1 - q^m)^(-a_m).

    exponent_profile[i] is the exponent shared by all m with m mod period equal
    to i+1 (the last slot, index period-1, covers m divisible by period).
    """

    period: int
    exponent_profile: tuple[int, ...]

    def __post_init__(self):
        if self.period < 1:
            raise ValueError("period must be >= 1")
        object.__setattr__(
            self, "exponent_profile", tuple(int(e) for e in self.exponent_profile)
        )
        if len(self.exponent_profile) != self.period:
            raise ValueError(
                f"profile length {len(self.exponent_profile)} != period {self.period}"
            )

    @property
    def binary(self) -> bool:
        return all(e in (0, 1) for e in self.exponent_profile)

    @property
    def residues(self) -> frozenset[int]:
        """Residue classes (1..period, with period standing for 0) whose parts
        appear, for binary shapes.  Raises on non-binary profiles, where
        "which parts appear" is not the right question.
        """
        if not self.binary:
            raise ValueError("residue set is only defined for binary profiles")
        return frozenset(
            r for r in range(1, self.period + 1) if self.exponent_profile[r - 1] == 1
        )

    @classmethod
    def from_residues(cls, period: int, residues) -> "ProductShape":
        rs = set(residues)
        bad = [r for r in rs if not 1 <= r <= period]
        if bad:
            raise ValueError(f"residues {sorted(bad)} outside 1..{period}")
        return cls(period, tuple(1 if r in rs else 0 for r in range(1, period + 1)))

    def exponents(self, order: int) -> ExponentSequence:
        """The profile repeated out to a_1..a_order."""
        if order < 1:
            raise ValueError("order must be >= 1")
        prof = self.exponent_profile
        p = self.period
        return ExponentSequence(prof[(m - 1) % p] for m in range(1, order + 1))


def detect_period(
    a: ExponentSequence, p_max: int = 64, min_repeats: int = 2
) -> ProductShape | None:
    """Smallest pure period of an exponent sequence, or None.

    A period p is certified only when the window holds min_repeats full
    copies of the profile (p * min_repeats <= order) and a_m == a_{m+p} for
    every m with both indices in range; no preperiod is allowed.  Candidate
    periods are therefore capped at min(p_max, order // min_repeats).
    Returning the smallest such p also rules out reporting a proper multiple
    of the true period.
    """
    if p_max < 1:
        raise ValueError("p_max must be >= 1")
    if min_repeats < 1:
        raise ValueError("min_repeats must be >= 1")
    order = a.order
    p_limit = min(p_max, order // min_repeats)
    if p_limit < 1:
        raise ValueError(
            f"order {order} too short to certify {min_repeats} repetitions "
            "of any period"
        )
    exps = a.exps
    for p in range(1, p_limit + 1):
        if all(exps[i] == exps[i + p] for i in range(order - p)):
            return ProductShape(p, exps[:p])
    return None


def describe(shape: ProductShape) -> str:
    """Human-readable statement of what the product counts."""
    if not shape.binary:
        profile = ", ".join(str(e) for e in shape.exponent_profile)
        return (
            f"exponent profile ({profile}) repeating mod {shape.period} "
            "[non-partition-style]"
        )
    rs = sorted(shape.residues)
    if len(rs) == shape.period:
        return "all parts allowed"
    if not rs:
        return "no parts allowed"
    return f"parts ≡ {', '.join(str(r) for r in rs)} (mod {shape.period})"


def symmetry_classify(shape: ProductShape) -> str:
    """'symmetric' when the residue set is closed under r -> p - r (mod p),
    'asymmetric' otherwise.  Binary shapes only; the residue p (class 0) is
    its own mirror.
    """
    p = shape.period
    rs = shape.residues  # raises for non-binary shapes
    for r in rs:
        mirror = p if r == p else p - r
        if mirror not in rs:
            return "asymmetric"
    return "symmetric"
