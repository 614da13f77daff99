"""Recursion families against direct enumeration, and identity verification."""

import hashlib

import pytest

import oracles
from sumside import (
    BUILTIN_IDENTITIES,
    ConditionSet,
    IdentitySpec,
    RecursionState,
    TruncatedSeries,
    advance,
    capped_polynomial,
    coefficient_digest,
    count_sum_side,
    count_with_cap,
    initial_state,
    product_side,
    step,
    step_p,
    step_q,
    step_r,
    step_s,
    sum_side_via_recursion,
    verify_identity,
)
from sumside.recursions import FAMILIES

FAMILY_IDENTITY = {
    spec.recursion_family: spec for spec in BUILTIN_IDENTITIES.values()
}


def trim(series: TruncatedSeries) -> list[int]:
    coeffs = list(series)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


class TestFamilyGeometry:
    def test_registry(self):
        assert set(FAMILIES) == {"P1", "P2", "P3", "Q", "R", "S"}
        for name in ("P1", "P2", "P3", "Q"):
            fam = FAMILIES[name]
            assert (fam.registers, fam.window, fam.first_step) == (1, 4, 4)
        assert (FAMILIES["R"].registers, FAMILIES["R"].window) == (2, 4)
        assert (FAMILIES["S"].registers, FAMILIES["S"].window) == (2, 3)

    def test_every_family_is_wired_to_an_identity(self):
        assert set(FAMILY_IDENTITY) == set(FAMILIES)

    def test_initial_state_truncates(self):
        state = initial_state("P1", 3)
        assert state.index == 3
        assert state.current().coeffs == (1, 1, 1, 2)

    def test_advance_to_current_index_is_noop(self):
        state = initial_state("Q", 10)
        assert advance(state, state.index) is state


class TestStepGuards:
    def test_wrapper_family_checks(self):
        p1 = initial_state("P1", 10)
        assert step_p(p1, 1).index == 4
        with pytest.raises(ValueError):
            step_p(p1, 2)
        with pytest.raises(ValueError):
            step_q(p1)
        with pytest.raises(ValueError):
            step_r(initial_state("S", 10))
        with pytest.raises(ValueError):
            step_s(initial_state("R", 10))
        assert step_q(initial_state("Q", 10)).index == 4
        assert step_r(initial_state("R", 10)).index == 5
        assert step_s(initial_state("S", 10)).index == 4

    def test_step_below_first_index(self):
        fake = RecursionState(
            "P1", 1, ((TruncatedSeries([1], 5),),) * 4, 5
        )
        with pytest.raises(ValueError, match="steps from"):
            step(fake)

    def test_step_with_short_window(self):
        one = (TruncatedSeries([1], 5),)
        fake = RecursionState("P1", 7, (one, one), 5)
        with pytest.raises(ValueError, match="window"):
            step(fake)


class TestInitialPolynomials:
    def test_single_register_families_match_capped_counts(self):
        for name in ("P1", "P2", "P3", "Q"):
            conds = FAMILY_IDENTITY[name].conditions
            for cap, (coeffs,) in FAMILIES[name].initial.items():
                deg = len(coeffs) - 1
                assert list(count_with_cap(conds, deg, cap)) == list(coeffs), (name, cap)

    def test_two_register_families_match_oracle(self):
        for name, rules_key in (("R", "I5"), ("S", "I6")):
            rules = oracles.IDENTITY_RULES[rules_key]
            for cap, registers in FAMILIES[name].initial.items():
                for mult, coeffs in zip((1, 2), registers):
                    deg = len(coeffs) - 1
                    got = oracles.oracle_counts(deg, cap=cap, mult_of_cap=mult, **rules)
                    assert got == list(coeffs), (name, cap, mult)


class TestRecursionVsEnumeration:
    def test_single_register_families(self):
        for name in ("P1", "P2", "P3", "Q"):
            conds = FAMILY_IDENTITY[name].conditions
            for cap in range(4, 13):
                poly = capped_polynomial(name, cap)[0]
                assert poly == count_with_cap(conds, poly.order, cap), (name, cap)

    def test_two_register_sum_register(self):
        for name in ("R", "S"):
            conds = FAMILY_IDENTITY[name].conditions
            for cap in range(FAMILIES[name].first_step, 11):
                poly = capped_polynomial(name, cap)[1]
                assert poly == count_with_cap(conds, poly.order, cap), (name, cap)

    def test_two_register_restricted_register(self):
        # register 0 admits the largest part at most once
        for name, rules_key in (("R", "I5"), ("S", "I6")):
            rules = oracles.IDENTITY_RULES[rules_key]
            for cap in range(FAMILIES[name].first_step, 9):
                poly = capped_polynomial(name, cap)[0]
                want = oracles.oracle_counts(24, cap=cap, mult_of_cap=1, **rules)
                assert list(poly.truncate(24)) == want, (name, cap)

    def test_register_domination(self):
        # allowing the largest part twice can only add partitions
        for name in ("R", "S"):
            for cap in range(FAMILIES[name].first_step, 11):
                once, twice = capped_polynomial(name, cap)
                assert all(a <= b for a, b in zip(once, twice)), (name, cap)

    def test_stabilization(self):
        # coefficients below the cap are settled and never move again
        for name in FAMILIES:
            fam = FAMILIES[name]
            prev = None
            for cap in range(fam.first_step, 14):
                cur = capped_polynomial(name, cap, order=20)[fam.sum_register]
                if prev is not None:
                    k = min(cap - 1, 20)
                    assert prev.truncate(k) == cur.truncate(k), (name, cap)
                prev = cur

    def test_truncated_advance_matches_exact(self):
        for name in FAMILIES:
            fam = FAMILIES[name]
            small = advance(initial_state(name, 15), 10)
            exact = capped_polynomial(name, 10)
            for reg in range(fam.registers):
                assert small.registers[-1][reg] == exact[reg].truncate(15), name


class TestFrozenPolynomials:
    def test_first_family_cap_four(self):
        assert trim(capped_polynomial("P1", 4)[0]) == [1, 1, 1, 2, 2, 1, 2, 1]

    def test_q_family_cap_five(self):
        assert trim(capped_polynomial("Q", 5)[0]) == [1, 0, 1, 1, 1, 2, 1, 1, 2, 0, 1]

    def test_r_family_cap_five_register_zero(self):
        assert trim(capped_polynomial("R", 5)[0]) == [
            1, 1, 1, 2, 3, 3, 4, 5, 5, 5, 5, 5, 4, 3, 2, 2, 1,
        ]

    def test_phase_two_step_combines_two_predecessors(self):
        # at index 5 the new polynomial is built from indices 4 and 3 only
        order = 40
        state = advance(initial_state("Q", order), 5)
        q5 = state.current()
        q4 = advance(initial_state("Q", order), 4).current()
        q3 = initial_state("Q", order).registers[-1][0]
        assert q5 == q4 + q3.shift(5)

    def test_minus_term_step(self):
        # register 0 at index 5 subtracts a q^15 multiple of the cap 1 value
        order = 40
        state = advance(initial_state("R", order), 5)
        r4 = initial_state("R", order)
        r42 = r4.registers[-1][1]
        r11 = r4.registers[0][0]
        want = r42 + r42.shift(5) - r11.shift(15)
        assert state.current(0) == want


class TestSumSideViaRecursion:
    def test_matches_direct_count(self):
        for name in FAMILIES:
            conds = FAMILY_IDENTITY[name].conditions
            assert sum_side_via_recursion(name, 25) == count_sum_side(conds, 25), name


class TestIdentitySpecs:
    def test_builtin_registry(self):
        assert sorted(BUILTIN_IDENTITIES) == ["I1", "I2", "I3", "I4", "I5", "I6"]
        for key, spec in BUILTIN_IDENTITIES.items():
            assert spec.name == key
        assert BUILTIN_IDENTITIES["I1"].modulus == 9
        assert BUILTIN_IDENTITIES["I1"].residues == frozenset({1, 3, 6, 8})
        assert BUILTIN_IDENTITIES["I5"].modulus == 12
        assert BUILTIN_IDENTITIES["I6"].residues == frozenset({2, 3, 5, 6, 7, 8, 11})

    def test_residue_validation(self):
        with pytest.raises(ValueError):
            IdentitySpec("X", ConditionSet(), 9, frozenset({0}))
        with pytest.raises(ValueError):
            IdentitySpec("X", ConditionSet(), 9, frozenset({10}))

    def test_unknown_family_rejected(self):
        with pytest.raises(ValueError):
            IdentitySpec("X", ConditionSet(), 9, frozenset({1}), "nope")


class TestProductSide:
    def test_small_coefficients(self):
        assert product_side(BUILTIN_IDENTITIES["I1"], 3)[3] == 2
        assert product_side(BUILTIN_IDENTITIES["I4"], 5)[5] == 2
        assert product_side(BUILTIN_IDENTITIES["I3"], 2)[2] == 0

    def test_constant_term(self):
        for spec in BUILTIN_IDENTITIES.values():
            assert product_side(spec, 10)[0] == 1


class TestVerifyIdentity:
    def test_match_with_both_methods(self):
        report = verify_identity(BUILTIN_IDENTITIES["I1"], 30, method="both")
        assert report.match
        assert report.first_mismatch is None
        assert report.method == "both"
        assert report.sum_digest == report.product_digest
        assert report.warnings == ()

    def test_mismatch_is_reported_not_raised(self):
        wrong = IdentitySpec(
            "I1-wrong",
            BUILTIN_IDENTITIES["I1"].conditions,
            9,
            frozenset({1, 3, 6, 7}),
            "P1",
        )
        report = verify_identity(wrong, 30)
        assert not report.match
        assert report.first_mismatch == 7
        assert report.sum_digest != report.product_digest

    def test_enumeration_fallback_warns(self):
        spec = IdentitySpec(
            "bare",
            BUILTIN_IDENTITIES["I1"].conditions,
            9,
            frozenset({1, 3, 6, 8}),
            None,
        )
        with pytest.warns(UserWarning, match="enumeration"):
            report = verify_identity(spec, 20)
        assert report.method == "enumeration"
        assert report.match
        assert report.warnings

    def test_rejects_bad_arguments(self):
        spec = BUILTIN_IDENTITIES["I1"]
        with pytest.raises(ValueError):
            verify_identity(spec, 0)
        with pytest.raises(ValueError):
            verify_identity(spec, 10, method="guess")

    def test_report_json_fields(self):
        report = verify_identity(BUILTIN_IDENTITIES["I2"], 20)
        assert set(report.to_json()) == {
            "identity",
            "order",
            "method",
            "match",
            "first_mismatch",
            "sum_digest",
            "product_digest",
            "elapsed_ms",
        }

    def test_digest_definition(self):
        series = TruncatedSeries([1, 1])
        assert coefficient_digest(series) == hashlib.sha256(b"1,1").hexdigest()
