"""High-order verification of the shipped identities via polynomial recursions.

Each identity's sum side has a finitized polynomial family indexed by a cap on
the largest part (and, for the mod 12 identities, a bound on how often that
largest part may appear).  The families satisfy short linear recursions with
q-power coefficients, so the sum side can be pushed to order 500 and beyond in
seconds: advance the recursion with all arithmetic modulo q^(N+1) until the
cap passes N, at which point the polynomial's first N+1 coefficients are those
of the full sum side.  The product side is expanded independently from its
residue classes, and the two are compared coefficientwise.

The recursion coefficients appear below in their factored form, exactly as
each q-power arises from the combinatorial step, alongside the simplified
exponent actually used; the two are cross-checked at import.  Every fixture
in this file is additionally validated against direct enumeration by the test
suite, which is what pinned down one corrected initial value (see
_P1_INITIAL).
"""

from __future__ import annotations

import hashlib
import time
import warnings
from dataclasses import dataclass

from .partitions import (
    ConditionSet,
    CongruenceRule,
    DiffDistRule,
    SmallestPartRule,
    count_sum_side,
)
from .products import ProductShape
from .series import TruncatedSeries, expand_product


@dataclass(frozen=True)
class IdentitySpec:
    """A claimed identity: sum-side conditions against a residue-class product."""

    name: str
    conditions: ConditionSet
    modulus: int
    residues: frozenset[int]
    recursion_family: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "residues", frozenset(self.residues))
        bad = [r for r in self.residues if not 1 <= r <= self.modulus]
        if bad:
            raise ValueError(f"residues {sorted(bad)} outside 1..{self.modulus}")
        if self.recursion_family is not None and self.recursion_family not in FAMILIES:
            raise ValueError(f"unknown recursion family {self.recursion_family!r}")


# ---------------------------------------------------------------------------
# Recursion fixtures
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _Term:
    """One summand: sign * q^(exponent) * <register at index - back>.

    Exponents are linear forms (c, d) meaning c*m + d, where m is the step
    parameter: for the mod 9 families the index is k = 3m + phase, for the
    mod 12 families m is the index itself.  `factors` lists the q-powers in
    the factored presentation; their sum must equal `exponent`.
    `back == 0` refers to a register already computed at the current index
    (only meaningful for a later register in the same step).
    """

    back: int
    register: int
    sign: int
    factors: tuple[tuple[int, int], ...]
    exponent: tuple[int, int]


def _t(back, register, sign, factors, exponent) -> _Term:
    return _Term(back, register, sign, tuple(factors), exponent)


@dataclass(frozen=True)
class _Family:
    """Recursion family: step tables, initial conditions, window geometry.

    `initial` maps index -> per-register coefficient tuples.  `phased` families
    choose the term table by index mod 3; others use one table per register,
    registers computed in listed order within a step.
    """

    name: str
    registers: int
    window: int
    first_step: int
    phased: bool
    tables: dict
    initial: dict[int, tuple[tuple[int, ...], ...]]
    sum_register: int  # which register carries the full capped sum side


# The three mod 9 sibling identities share one recursion; k = 3m, 3m+1, 3m+2.
_P_TABLES = {
    0: (  # index k = 3m
        _t(1, 0, +1, (), (0, 0)),
        _t(2, 0, +1, ((3, 0),), (3, 0)),
        _t(3, 0, +1, ((3, 0), (3, 0)), (6, 0)),
    ),
    1: (  # k = 3m + 1
        _t(1, 0, +1, (), (0, 0)),
        _t(2, 0, +1, ((3, 1),), (3, 1)),
    ),
    2: (  # k = 3m + 2
        _t(1, 0, +1, (), (0, 0)),
        _t(3, 0, +1, ((3, 2), (3, 1)), (6, 3)),
        _t(4, 0, +1, ((3, 2), (3, 0)), (6, 2)),
        _t(3, 0, +1, ((3, 2),), (3, 2)),
    ),
}

_Q_TABLES = {
    0: (
        _t(1, 0, +1, (), (0, 0)),
        _t(3, 0, +1, ((3, 0), (3, -1)), (6, -1)),
        _t(4, 0, +1, ((3, 0), (3, -2)), (6, -2)),
        _t(3, 0, +1, ((3, 0),), (3, 0)),
    ),
    1: (
        _t(1, 0, +1, (), (0, 0)),
        _t(3, 0, +1, ((3, 1), (3, 1)), (6, 2)),
        _t(2, 0, +1, ((3, 1),), (3, 1)),
    ),
    2: (
        _t(1, 0, +1, (), (0, 0)),
        _t(2, 0, +1, ((3, 2),), (3, 2)),
    ),
}

# Two-register families: register 0 allows the largest part at most once,
# register 1 at most twice.  Twice is already the full capped sum side: three
# equal parts form a window whose sum is divisible by 3, which the congruence
# condition (residue 1 or 2) forbids.
_R_TABLES = (
    (  # register 0 (at most one copy of the largest part); note the minus term
        _t(1, 1, +1, ((1, 0),), (1, 0)),
        _t(4, 0, -1, ((1, 0), (1, -1), (1, -2), (1, -2)), (4, -5)),
        _t(1, 1, +1, (), (0, 0)),
    ),
    (  # register 1
        _t(2, 0, +1, ((1, 0), (1, 0)), (2, 0)),
        _t(0, 0, +1, (), (0, 0)),
    ),
)

_S_TABLES = (
    (
        _t(1, 0, +1, ((1, 0),), (1, 0)),
        _t(1, 1, +1, (), (0, 0)),
    ),
    (
        _t(3, 1, +1, ((1, 0), (1, 0), (1, -1)), (3, -1)),
        _t(2, 0, +1, ((1, 0), (1, 0)), (2, 0)),
        _t(0, 0, +1, (), (0, 0)),
    ),
)

# Initial polynomials, as coefficient tuples, verified against direct
# enumeration by the test suite.  The value at cap 3 for the first family was
# corrected from a misprinted source that had its q^6 term at q^7: enumeration
# of {parts <= 3, difference >= 3 at distance 2, close consecutive parts
# summing to 0 mod 3} gives 3+3 at q^6 and nothing at q^7, and only the
# corrected value makes the recursion agree with enumeration at every larger
# cap (and with the product side at high order).
_P1_INITIAL = {
    0: ((1,),),
    1: ((1, 1),),
    2: ((1, 1, 1, 1),),
    3: ((1, 1, 1, 2, 1, 0, 1),),
}
_P2_INITIAL = {
    0: ((1,),),
    1: ((1,),),
    2: ((1, 0, 1),),
    3: ((1, 0, 1, 1, 0, 0, 1),),
}
_P3_INITIAL = {
    0: ((1,),),
    1: ((1,),),
    2: ((1,),),
    3: ((1, 0, 0, 1, 0, 0, 1),),
}
_Q_INITIAL = {
    0: ((1,),),
    1: ((1,),),
    2: ((1, 0, 1),),
    3: ((1, 0, 1, 1, 0, 1),),
}
_R_INITIAL = {
    1: ((1, 1), (1, 1)),
    2: ((1, 1, 1, 1), (1, 1, 1, 1, 1)),
    3: ((1, 1, 1, 2, 2, 1, 1, 1), (1, 1, 1, 2, 2, 1, 2, 2)),
    4: (
        (1, 1, 1, 2, 3, 2, 3, 4, 2, 1, 2, 1),
        (1, 1, 1, 2, 3, 2, 3, 4, 3, 2, 3, 2),
    ),
}
_S_INITIAL = {
    1: ((1,), (1,)),
    2: ((1, 0, 1), (1, 0, 1)),
    3: ((1, 0, 1, 1, 0, 1), (1, 0, 1, 1, 0, 1, 1, 0, 1)),
}

FAMILIES: dict[str, _Family] = {
    "P1": _Family("P1", 1, 4, 4, True, _P_TABLES, _P1_INITIAL, 0),
    "P2": _Family("P2", 1, 4, 4, True, _P_TABLES, _P2_INITIAL, 0),
    "P3": _Family("P3", 1, 4, 4, True, _P_TABLES, _P3_INITIAL, 0),
    "Q": _Family("Q", 1, 4, 4, True, _Q_TABLES, _Q_INITIAL, 0),
    "R": _Family("R", 2, 4, 5, False, _R_TABLES, _R_INITIAL, 1),
    "S": _Family("S", 2, 3, 4, False, _S_TABLES, _S_INITIAL, 1),
}


def _check_tables():
    # factored exponents must simplify to the exponent actually applied, and
    # back-references must stay inside the window
    for fam in FAMILIES.values():
        tables = fam.tables.values() if fam.phased else fam.tables
        for table in tables:
            for t in table:
                c = sum(f[0] for f in t.factors)
                d = sum(f[1] for f in t.factors)
                if (c, d) != t.exponent:
                    raise AssertionError(
                        f"{fam.name}: factored exponent {t.factors} simplifies "
                        f"to {(c, d)}, table says {t.exponent}"
                    )
                if not 0 <= t.back <= fam.window:
                    raise AssertionError(f"{fam.name}: back-reference {t.back}")
                if not 0 <= t.register < fam.registers:
                    raise AssertionError(f"{fam.name}: register {t.register}")
        start = min(fam.initial)
        if sorted(fam.initial) != list(range(start, fam.first_step)):
            raise AssertionError(f"{fam.name}: initial conditions not contiguous")


_check_tables()


# ---------------------------------------------------------------------------
# Stepping
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RecursionState:
    """A recursion family's window of most recent register values.

    registers is oldest-first: registers[-1] belongs to `index`,
    registers[-2] to index-1, and so on.  All series share `order`.
    """

    family: str
    index: int
    registers: tuple[tuple[TruncatedSeries, ...], ...]
    order: int

    def current(self, register: int = 0) -> TruncatedSeries:
        return self.registers[-1][register]


def initial_state(family: str, order: int) -> RecursionState:
    """State holding the family's initial polynomials, truncated to order."""
    fam = FAMILIES[family]
    if order < 0:
        raise ValueError("order must be >= 0")
    window = tuple(
        tuple(
            TruncatedSeries(coeffs[: order + 1], order=order)
            for coeffs in fam.initial[idx]
        )
        for idx in sorted(fam.initial)
    )
    return RecursionState(family, max(fam.initial), window, order)


def step(state: RecursionState) -> RecursionState:
    """Advance one index, computing every register at index+1."""
    fam = FAMILIES[state.family]
    idx = state.index + 1
    if idx < fam.first_step:
        raise ValueError(
            f"{fam.name} steps from {fam.first_step}; cannot compute index {idx}"
        )
    if len(state.registers) < fam.window:
        raise ValueError(
            f"{fam.name} needs a window of {fam.window}, got {len(state.registers)}"
        )
    if fam.phased:
        tables = (fam.tables[idx % 3],)
        m = idx // 3
    else:
        tables = fam.tables
        m = idx
    window = state.registers
    new: list[TruncatedSeries] = []
    for table in tables:
        acc = TruncatedSeries([0], order=state.order)
        for t in table:
            src = new[t.register] if t.back == 0 else window[-t.back][t.register]
            c, d = t.exponent
            shifted = src.shift(c * m + d)
            acc = acc + shifted if t.sign > 0 else acc - shifted
        new.append(acc)
    registers = (window + (tuple(new),))[-fam.window :]
    return RecursionState(state.family, idx, registers, state.order)


def advance(state: RecursionState, to_index: int) -> RecursionState:
    while state.index < to_index:
        state = step(state)
    return state


def step_p(state: RecursionState, j: int) -> RecursionState:
    """One step of the mod 9 sibling family for identity index j in 1..3."""
    if state.family != f"P{j}":
        raise ValueError(f"state belongs to family {state.family}, not P{j}")
    return step(state)


def step_q(state: RecursionState) -> RecursionState:
    if state.family != "Q":
        raise ValueError(f"state belongs to family {state.family}, not Q")
    return step(state)


def step_r(state: RecursionState) -> RecursionState:
    if state.family != "R":
        raise ValueError(f"state belongs to family {state.family}, not R")
    return step(state)


def step_s(state: RecursionState) -> RecursionState:
    if state.family != "S":
        raise ValueError(f"state belongs to family {state.family}, not S")
    return step(state)


def capped_polynomial(family: str, cap: int, order: int | None = None):
    """All registers of a family at the given cap, as exact polynomials.

    The default order, 2*cap*(cap+1), dominates the degree of every register
    (a part value can repeat at most distance-many times, so the total is at
    most 3 * cap*(cap+1)/2 here), making the result the untruncated
    polynomial padded with zeros.
    """
    fam = FAMILIES[family]
    if cap < min(fam.initial):
        raise ValueError(f"{family} is defined from cap {min(fam.initial)}")
    if order is None:
        order = max(1, 2 * cap * (cap + 1))
    state = advance(initial_state(family, order), cap)
    return state.registers[-1]


def sum_side_via_recursion(family: str, order: int) -> TruncatedSeries:
    """The full sum side through q^order, by advancing the family until the
    cap reaches order (partitions of n <= order have all parts <= order, so
    later caps cannot change these coefficients)."""
    return _recursion_sum_side(family, order)


# ---------------------------------------------------------------------------
# Identity fixtures and verification
# ---------------------------------------------------------------------------

BUILTIN_IDENTITIES: dict[str, IdentitySpec] = {
    "I1": IdentitySpec(
        "I1",
        ConditionSet(
            diffs=(DiffDistRule(2, 3),),
            congruences=(CongruenceRule(1, 1, 0, 3),),
        ),
        9,
        frozenset({1, 3, 6, 8}),
        "P1",
    ),
    "I2": IdentitySpec(
        "I2",
        ConditionSet(
            smallest=SmallestPartRule(2),
            diffs=(DiffDistRule(2, 3),),
            congruences=(CongruenceRule(1, 1, 0, 3),),
        ),
        9,
        frozenset({2, 3, 6, 7}),
        "P2",
    ),
    "I3": IdentitySpec(
        "I3",
        ConditionSet(
            smallest=SmallestPartRule(3),
            diffs=(DiffDistRule(2, 3),),
            congruences=(CongruenceRule(1, 1, 0, 3),),
        ),
        9,
        frozenset({3, 4, 5, 6}),
        "P3",
    ),
    "I4": IdentitySpec(
        "I4",
        ConditionSet(
            smallest=SmallestPartRule(2),
            diffs=(DiffDistRule(2, 3),),
            congruences=(CongruenceRule(1, 1, 2, 3),),
        ),
        9,
        frozenset({2, 3, 5, 8}),
        "Q",
    ),
    "I5": IdentitySpec(
        "I5",
        ConditionSet(
            smallest=SmallestPartRule(1, 1),
            diffs=(DiffDistRule(3, 3),),
            congruences=(CongruenceRule(2, 1, 1, 3),),
        ),
        12,
        frozenset({1, 3, 4, 6, 7, 10, 11}),
        "R",
    ),
    "I6": IdentitySpec(
        "I6",
        ConditionSet(
            smallest=SmallestPartRule(2, 1),
            diffs=(DiffDistRule(3, 3),),
            congruences=(CongruenceRule(2, 1, 2, 3),),
        ),
        12,
        frozenset({2, 3, 5, 6, 7, 8, 11}),
        "S",
    ),
}


def product_side(spec: IdentitySpec, order: int) -> TruncatedSeries:
    """Coefficients of the product over parts in the allowed residue classes."""
    shape = ProductShape.from_residues(spec.modulus, spec.residues)
    return expand_product(shape.exponents(order)) if order >= 1 else TruncatedSeries([1])


def coefficient_digest(series: TruncatedSeries) -> str:
    """Stable hex digest of a coefficient vector, for regression tracking:
    sha256 over the comma-joined decimal coefficients."""
    payload = ",".join(str(c) for c in series).encode()
    return hashlib.sha256(payload).hexdigest()


@dataclass(frozen=True)
class VerificationReport:
    identity: str
    order: int
    method: str
    match: bool
    first_mismatch: int | None
    sum_digest: str
    product_digest: str
    elapsed_ms: float
    warnings: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "identity": self.identity,
            "order": self.order,
            "method": self.method,
            "match": self.match,
            "first_mismatch": self.first_mismatch,
            "sum_digest": self.sum_digest,
            "product_digest": self.product_digest,
            "elapsed_ms": self.elapsed_ms,
        }


def _first_mismatch(a: TruncatedSeries, b: TruncatedSeries) -> int | None:
    for n in range(min(len(a), len(b))):
        if a[n] != b[n]:
            return n
    return None


def verify_identity(
    spec: IdentitySpec, order: int, method: str = "recursion"
) -> VerificationReport:
    """Compare the identity's sum side against its product side through
    q^order.

    method "recursion" advances the identity's recursion family (falling back
    to enumeration, with a warning, if the spec has none); "enumeration"
    counts partitions directly; "both" runs the two independently, requires
    them to agree with each other, and compares against the product.  A
    mismatch is an outcome, not an error: the report carries the first
    differing power.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    if method not in ("recursion", "enumeration", "both"):
        raise ValueError(f"unknown method {method!r}")
    t0 = time.perf_counter()
    warn: list[str] = []
    if method != "enumeration" and spec.recursion_family is None:
        warn.append(
            f"{spec.name} has no recursion family; verified by enumeration instead"
        )
        warnings.warn(warn[-1], stacklevel=2)
        method = "enumeration"

    sums: list[TruncatedSeries] = []
    if method in ("recursion", "both"):
        sums.append(
            _recursion_sum_side(spec.recursion_family, order)
        )
    if method in ("enumeration", "both"):
        sums.append(count_sum_side(spec.conditions, order))
    if method == "both" and sums[0] != sums[1]:
        n = _first_mismatch(sums[0], sums[1])
        warn.append(
            f"recursion and enumeration sum sides disagree first at q^{n}"
        )
    sum_series = sums[0]
    product = product_side(spec, order)

    mismatch = _first_mismatch(sum_series, product)
    if mismatch is None and len(sums) == 2:
        mismatch = _first_mismatch(sums[1], product)
    match = mismatch is None and not any("disagree" in w for w in warn)
    elapsed = (time.perf_counter() - t0) * 1000.0
    return VerificationReport(
        identity=spec.name,
        order=order,
        method=method,
        match=match,
        first_mismatch=mismatch,
        sum_digest=coefficient_digest(sum_series),
        product_digest=coefficient_digest(product),
        elapsed_ms=elapsed,
        warnings=tuple(warn),
    )


def _recursion_sum_side(family: str, order: int) -> TruncatedSeries:
    fam = FAMILIES[family]
    target = max(order, max(fam.initial))
    state = advance(initial_state(family, order), target)
    return state.current(fam.sum_register)
