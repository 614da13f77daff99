"""Partitions constrained by configurable sum-side conditions.

A partition is written with parts in weakly decreasing order,
lambda_1 >= lambda_2 >= ... >= lambda_m.  A ConditionSet is a conjunction of
three rule kinds:

  SmallestPartRule   every part >= min_part, and the number of parts equal to
                     min_part itself is at most max_mult (None = no cap).
  DiffDistRule       lambda_j - lambda_(j+distance) >= min_diff whenever both
                     indices exist.
  CongruenceRule     whenever lambda_j <= lambda_(j+span) + gap, the window sum
                     lambda_j + ... + lambda_(j+span) must be congruent to
                     residue mod modulus.

Rules quantify over indices that exist; a partition too short to form a window
satisfies that rule vacuously, and the empty partition of 0 satisfies every
ConditionSet.

Counting and enumeration share one depth-first descent over weakly decreasing
part sequences.  Every internal node of that tree is itself a valid partition
(conditions are prefix-closed in the order parts are appended largest-first),
so a single walk to total n yields counts for all totals 0..n at once.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .series import TruncatedSeries


@dataclass(frozen=True)
class SmallestPartRule:
    """Parts are >= min_part; at most max_mult parts equal min_part exactly.

    max_mult=None leaves the multiplicity of min_part uncapped.  The cap never
    applies to parts larger than min_part.
    """

    min_part: int
    max_mult: int | None = None

    def __post_init__(self):
        if self.min_part < 1:
            raise ValueError("min_part must be >= 1")
        if self.max_mult is not None and self.max_mult < 1:
            raise ValueError("max_mult must be >= 1 or None")

    def to_json(self) -> dict:
        return {
            "min_part": self.min_part,
            "max_mult": "unbounded" if self.max_mult is None else self.max_mult,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SmallestPartRule":
        mm = obj.get("max_mult", "unbounded")
        return cls(
            min_part=int(obj["min_part"]),
            max_mult=None if mm == "unbounded" else int(mm),
        )


@dataclass(frozen=True)
class DiffDistRule:
    """lambda_j - lambda_(j+distance) >= min_diff for every j in range.

    distance=1, min_diff=1 is "distinct parts"; distance=1, min_diff=2 is the
    classical Rogers-Ramanujan difference condition.
    """

    distance: int
    min_diff: int

    def __post_init__(self):
        if self.distance < 1:
            raise ValueError("distance must be >= 1")
        if self.min_diff < 0:
            raise ValueError("min_diff must be >= 0")

    def to_json(self) -> dict:
        return {"distance": self.distance, "min_diff": self.min_diff}

    @classmethod
    def from_json(cls, obj: dict) -> "DiffDistRule":
        return cls(distance=int(obj["distance"]), min_diff=int(obj["min_diff"]))


@dataclass(frozen=True)
class CongruenceRule:
    """Conditional congruence on sums of span+1 consecutive parts.

    For each window lambda_j .. lambda_(j+span): if the ends are close,
    lambda_j <= lambda_(j+span) + gap, then the window's sum must be
    congruent to residue mod modulus.  Windows that fail the closeness test
    are unconstrained.  A negative gap makes the rule vacuous (parts are
    weakly decreasing, so the trigger can never fire).
    """

    span: int
    gap: int
    residue: int
    modulus: int

    def __post_init__(self):
        if self.span < 1:
            raise ValueError("span must be >= 1")
        if self.modulus < 2:
            raise ValueError("modulus must be >= 2")
        if not 0 <= self.residue < self.modulus:
            raise ValueError("residue must lie in 0..modulus-1")

    def to_json(self) -> dict:
        return {
            "span": self.span,
            "gap": self.gap,
            "residue": self.residue,
            "modulus": self.modulus,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CongruenceRule":
        return cls(
            span=int(obj["span"]),
            gap=int(obj["gap"]),
            residue=int(obj["residue"]),
            modulus=int(obj["modulus"]),
        )


@dataclass(frozen=True)
class ConditionSet:
    """Conjunction of sum-side rules; a partition must satisfy all of them."""

    smallest: SmallestPartRule | None = None
    diffs: tuple[DiffDistRule, ...] = ()
    congruences: tuple[CongruenceRule, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "diffs", tuple(self.diffs))
        object.__setattr__(self, "congruences", tuple(self.congruences))

    def to_json(self) -> dict:
        obj: dict = {}
        if self.smallest is not None:
            obj["smallest"] = self.smallest.to_json()
        obj["diffs"] = [r.to_json() for r in self.diffs]
        obj["congruences"] = [r.to_json() for r in self.congruences]
        return obj

    @classmethod
    def from_json(cls, obj: dict) -> "ConditionSet":
        known = {"smallest", "diffs", "congruences"}
        extra = set(obj) - known
        if extra:
            raise ValueError(f"unknown condition keys: {sorted(extra)}")
        sm = obj.get("smallest")
        return cls(
            smallest=None if sm is None else SmallestPartRule.from_json(sm),
            diffs=tuple(DiffDistRule.from_json(r) for r in obj.get("diffs", ())),
            congruences=tuple(
                CongruenceRule.from_json(r) for r in obj.get("congruences", ())
            ),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def loads(cls, text: str) -> "ConditionSet":
        return cls.from_json(json.loads(text))

    @property
    def min_part(self) -> int:
        return 1 if self.smallest is None else self.smallest.min_part

    def satisfies(self, parts: Sequence[int]) -> bool:
        """Check a complete partition (weakly decreasing parts) against every
        rule.  Reference implementation: direct quantifier evaluation, used by
        the search/verify paths only for spot checks, never for bulk counting.
        """
        m = len(parts)
        for j in range(m - 1):
            if parts[j] < parts[j + 1]:
                raise ValueError("parts must be weakly decreasing")
        if any(p < 1 for p in parts):
            raise ValueError("parts must be positive")
        if self.smallest is not None:
            s = self.smallest
            if any(p < s.min_part for p in parts):
                return False
            if s.max_mult is not None:
                if sum(1 for p in parts if p == s.min_part) > s.max_mult:
                    return False
        for r in self.diffs:
            for j in range(m - r.distance):
                if parts[j] - parts[j + r.distance] < r.min_diff:
                    return False
        for r in self.congruences:
            for j in range(m - r.span):
                window = parts[j : j + r.span + 1]
                if window[0] <= window[-1] + r.gap:
                    if sum(window) % r.modulus != r.residue:
                        return False
        return True


def _window_len(conditions: ConditionSet) -> int:
    """How many trailing parts the DFS must remember to test a new part."""
    w = 1
    for r in conditions.diffs:
        w = max(w, r.distance)
    for r in conditions.congruences:
        w = max(w, r.span)
    return w


def _admits(conditions: ConditionSet, window: list[int], v: int) -> bool:
    """Can v be appended after the trailing parts in window?

    Only the rules whose newest index lands on v need rechecking; all earlier
    windows were validated when their own last part was appended.
    """
    for r in conditions.diffs:
        if len(window) >= r.distance:
            if window[-r.distance] - v < r.min_diff:
                return False
    for r in conditions.congruences:
        if len(window) >= r.span:
            first = window[-r.span]
            if first <= v + r.gap:
                total = sum(window[-r.span :]) + v
                if total % r.modulus != r.residue:
                    return False
    return True


def count_sum_side(conditions: ConditionSet, n: int) -> TruncatedSeries:
    """Generating function sum_s (#partitions of s satisfying conditions) q^s
    for s = 0..n, as an exact integer series.

    Iterative DFS over weakly decreasing part sequences, largest part first.
    Each stack frame remembers only the running total, the trailing window of
    parts, and the multiplicity of min_part so far; every frame contributes 1
    to the count at its own total because rule windows never reach forward.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    counts = [0] * (n + 1)
    counts[0] = 1
    if n == 0:
        return TruncatedSeries(counts)
    wlen = _window_len(conditions)
    sm = conditions.smallest
    min_part = conditions.min_part
    max_mult = None if sm is None else sm.max_mult
    # Frame: (total, window tuple, multiplicity of min_part so far).
    stack: list[tuple[int, tuple[int, ...], int]] = []
    for v in range(min_part, n + 1):
        stack.append((v, (v,), 1 if v == min_part else 0))
    while stack:
        total, window, mcount = stack.pop()
        counts[total] += 1
        bound = min(window[-1], n - total)
        for v in range(min_part, bound + 1):
            if v == min_part and max_mult is not None and mcount >= max_mult:
                continue
            if _admits(conditions, list(window), v):
                new_window = (window + (v,))[-wlen:]
                stack.append(
                    (total + v, new_window, mcount + (1 if v == min_part else 0))
                )
    return TruncatedSeries(counts)


def enumerate_sum_side(conditions: ConditionSet, n: int) -> list[tuple[int, ...]]:
    """All partitions of exactly n satisfying conditions, in decreasing
    lexicographic order of part tuples.  Intended for small n (listings,
    spot checks); counting should go through count_sum_side.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return [()]
    out: list[tuple[int, ...]] = []
    wlen = _window_len(conditions)
    sm = conditions.smallest
    min_part = conditions.min_part
    max_mult = None if sm is None else sm.max_mult

    def descend(prefix: list[int], total: int, window: tuple[int, ...], mcount: int):
        if total == n:
            out.append(tuple(prefix))
            return
        bound = min(window[-1], n - total) if window else n - total
        for v in range(bound, min_part - 1, -1):
            if v == min_part and max_mult is not None and mcount >= max_mult:
                continue
            if not window or _admits(conditions, list(window), v):
                prefix.append(v)
                descend(
                    prefix,
                    total + v,
                    (window + (v,))[-wlen:],
                    mcount + (1 if v == min_part else 0),
                )
                prefix.pop()

    descend([], 0, (), 0)
    return out


def count_with_cap(conditions: ConditionSet, n: int, cap: int) -> TruncatedSeries:
    """Like count_sum_side but additionally requiring every part <= cap.

    cap=0 admits only the empty partition, giving the constant series 1.
    These capped counts are the finitizations that the recursion families
    compute; matching them against this independent walk is the main
    cross-check on both sides.
    """
    if cap < 0:
        raise ValueError("cap must be >= 0")
    if n < 0:
        raise ValueError("n must be >= 0")
    counts = [0] * (n + 1)
    counts[0] = 1
    if n == 0 or cap == 0:
        return TruncatedSeries(counts)
    wlen = _window_len(conditions)
    sm = conditions.smallest
    min_part = conditions.min_part
    max_mult = None if sm is None else sm.max_mult
    stack: list[tuple[int, tuple[int, ...], int]] = []
    for v in range(min_part, min(cap, n) + 1):
        stack.append((v, (v,), 1 if v == min_part else 0))
    while stack:
        total, window, mcount = stack.pop()
        counts[total] += 1
        bound = min(window[-1], n - total)
        for v in range(min_part, bound + 1):
            if v == min_part and max_mult is not None and mcount >= max_mult:
                continue
            if _admits(conditions, list(window), v):
                new_window = (window + (v,))[-wlen:]
                stack.append(
                    (total + v, new_window, mcount + (1 if v == min_part else 0))
                )
    return TruncatedSeries(counts)
