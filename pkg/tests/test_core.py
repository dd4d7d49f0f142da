import math

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from qcweights import core
from qcweights.model import (
    BASE_CASE_DIVISIBILITY,
    BASE_CASE_M1,
    FAILURE_REASONS,
    NO_WINDOW_EXISTS,
    OBSTRUCTION_SET_HIT,
    WeightError,
)

from oracles import (
    oracle_in_class,
    oracle_resonances,
    oracle_window_elements,
    valid_weights,
)


@st.composite
def small_weights(draw, max_n=4, max_entry=30):
    n = draw(st.integers(2, max_n))
    entries = tuple(sorted(draw(st.sets(st.integers(1, max_entry), min_size=n, max_size=n))))
    assume(math.gcd(*entries) == 1)
    return entries


class TestValidateWeight:
    def test_accepts_reference_weights(self):
        assert core.validate_weight((3, 5, 7)).m == (3, 5, 7)
        assert core.validate_weight([4, 5, 7]).m == (4, 5, 7)

    def test_passthrough_of_validated_tuple(self):
        w = core.validate_weight((3, 7, 11))
        assert core.validate_weight(w) is not None
        assert core.validate_weight(w).m == w.m

    @pytest.mark.parametrize(
        "raw, message",
        [
            ((1, 1), "strictly increasing"),
            ((5, 5, 7), "strictly increasing"),
            ((3, 2), "strictly increasing"),
            ((2, 4, 6), "gcd"),
            ((5,), "at least 2"),
            ((), "at least 2"),
            ((0, 3), "positive"),
            ((-2, 3), "positive"),
        ],
    )
    def test_rejects_invalid(self, raw, message):
        with pytest.raises(WeightError, match=message):
            core.validate_weight(raw)

    def test_rejects_non_integers(self):
        with pytest.raises(WeightError, match="integers"):
            core.validate_weight((1.5, 2))


class TestRValue:
    @pytest.mark.parametrize(
        "prefix, i, k, expected",
        [
            ((3, 7), 1, (2, 1), 16),
            ((3, 7), 2, (0, 0), 7),
            ((3, 5), 2, (1, 1), 13),
        ],
    )
    def test_reference_values(self, prefix, i, k, expected):
        assert core.r_value(prefix, i, k) == expected

    def test_zero_index_returns_entry(self):
        for prefix in [(3, 5), (3, 7), (4, 5, 9)]:
            zero = (0,) * len(prefix)
            for i, mi in enumerate(prefix, start=1):
                assert core.r_value(prefix, i, zero) == mi

    @pytest.mark.parametrize("i", [0, 3, -1])
    def test_index_out_of_range(self, i):
        with pytest.raises(WeightError, match="out of range"):
            core.r_value((3, 5), i, (0, 0))

    def test_bad_multi_index(self):
        with pytest.raises(WeightError, match="length"):
            core.r_value((3, 5), 1, (0, 0, 0))
        with pytest.raises(WeightError, match="nonnegative"):
            core.r_value((3, 5), 1, (-1, 0))


class TestCExponent:
    def test_reference_values(self):
        assert core.c_exponent((3, 5, 7), 1, 2, (0, 0, 0)) == -2
        assert core.c_exponent((3, 5, 7), 2, 1, (0, 0, 0)) == 2
        assert core.c_exponent((1, 2, 3), 1, 3, (0, 1, 0)) == 0

    def test_index_errors(self):
        with pytest.raises(WeightError, match="differ"):
            core.c_exponent((3, 5, 7), 2, 2, (0, 0, 0))
        with pytest.raises(WeightError, match="out of range"):
            core.c_exponent((3, 5, 7), 0, 2, (0, 0, 0))
        with pytest.raises(WeightError, match="out of range"):
            core.c_exponent((3, 5, 7), 1, 4, (0, 0, 0))

    @settings(deadline=None)
    @given(small_weights(), st.data())
    def test_upper_triangular_exponent_positive(self, m, data):
        # With roles swapped (first index above the second) the exponent is
        # at least the weight gap, hence never zero.
        n = len(m)
        k = tuple(data.draw(st.integers(0, 4)) for _ in range(n))
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                value = core.c_exponent(m, j, i, k)
                assert value >= m[j - 1] - m[i - 1] > 0


class TestObstructionSet:
    @pytest.mark.parametrize("backend", core.BACKENDS)
    def test_reference_sets(self, backend):
        assert core.obstruction_set((3, 7), 2, backend).elements == tuple(range(12, 20))
        assert core.obstruction_set((3, 5), 2, backend).elements == tuple(range(9, 16))

    def test_first_window_multiples_rule(self):
        # In window 1 only proper multiples of the smallest entry can occur.
        got = core.obstruction_set((3, 5), 1)
        expected = tuple(n * 3 for n in range(2, (3 + 5) // 3 + 1) if n * 3 < 3 + 5)
        assert got.elements == expected == (6,)
        assert got.interval == (0, 8)

    def test_window_bounds_and_membership(self):
        iset = core.obstruction_set((5, 7), 2)
        lo, hi = iset.interval
        assert (lo, hi) == (12, 24)
        assert all(lo < t < hi for t in iset.elements)
        assert 13 not in iset
        assert 14 in iset

    @pytest.mark.parametrize(
        "prefix", [(3, 5), (3, 7), (5, 7), (4, 6), (2, 3), (3, 5, 8), (5, 7, 11)]
    )
    @pytest.mark.parametrize("window", [1, 2, 3])
    def test_backends_agree_with_oracle(self, prefix, window):
        expected = tuple(oracle_window_elements(prefix, window))
        for backend in core.BACKENDS:
            assert core.obstruction_set(prefix, window, backend).elements == expected

    def test_errors(self):
        with pytest.raises(WeightError, match="M must be >= 1"):
            core.obstruction_set((3, 5), 0)
        with pytest.raises(WeightError, match="at least 2"):
            core.obstruction_set((3,), 1)
        with pytest.raises(WeightError, match="strictly increasing"):
            core.obstruction_set((5, 3), 1)
        with pytest.raises(WeightError, match="backend"):
            core.obstruction_set((3, 5), 1, "magic")


class TestIsInClass:
    @pytest.mark.parametrize(
        "weight, witnesses",
        [
            ((3, 5, 7), (1,)),
            ((4, 5, 7), (1,)),
            ((3, 7, 11), (2,)),
            ((2, 3), ()),
            ((3, 5), ()),
        ],
    )
    def test_accepted(self, weight, witnesses):
        verdict = core.is_in_class(weight)
        assert verdict.in_class
        assert verdict.failure is None
        assert verdict.witnesses == witnesses

    @pytest.mark.parametrize(
        "weight, reason, level, witnesses",
        [
            ((3, 5, 9), OBSTRUCTION_SET_HIT, 3, ()),
            ((1, 2, 3), BASE_CASE_M1, 2, ()),
            ((1, 2), BASE_CASE_M1, 2, ()),
            ((3, 5, 16), NO_WINDOW_EXISTS, 3, ()),
            ((2, 4, 7), BASE_CASE_DIVISIBILITY, 2, ()),
            ((3, 6, 8), BASE_CASE_DIVISIBILITY, 2, ()),
            ((3, 5, 7, 16), OBSTRUCTION_SET_HIT, 4, (1,)),
            ((3, 5, 7, 30), NO_WINDOW_EXISTS, 4, (1,)),
        ],
    )
    def test_rejected(self, weight, reason, level, witnesses):
        verdict = core.is_in_class(weight)
        assert not verdict.in_class
        assert verdict.failure is not None
        assert verdict.failure.reason == reason
        assert verdict.failure.reason in FAILURE_REASONS
        assert verdict.failure.level == level
        assert verdict.witnesses == witnesses

    def test_witness_windows_bracket_entries(self):
        for m in valid_weights(3, 20):
            verdict = core.is_in_class(m)
            if not verdict.in_class:
                continue
            (window,) = verdict.witnesses
            sigma = m[0] + m[1]
            assert (window - 1) * sigma < m[2] < window * sigma

    def test_verdict_shape_invariant(self):
        # in_class iff no failure; for n >= 3 also iff a full witness chain.
        for n, bound in [(2, 12), (3, 25)]:
            for m in valid_weights(n, bound):
                verdict = core.is_in_class(m)
                assert verdict.in_class == (verdict.failure is None)
                if n >= 3:
                    assert verdict.in_class == (len(verdict.witnesses) == n - 2)
                else:
                    assert verdict.witnesses == ()

    def test_matches_exists_window_oracle(self):
        # The oracle searches all window indices; production computes the
        # unique one.  They must agree everywhere.
        for m in valid_weights(3, 20):
            assert core.is_in_class(m).in_class == oracle_in_class(m)


class TestResonances:
    def test_frozen_witness_lists(self):
        assert [(w.i, w.j, w.k) for w in core.resonances((1, 2, 3))] == [
            (1, 2, (1,)),
            (1, 3, (0, 1)),
            (1, 3, (2, 0)),
            (2, 3, (1, 0)),
        ]
        assert [(w.i, w.j, w.k) for w in core.resonances((2, 3, 5))] == [
            (1, 3, (0, 1)),
            (2, 3, (1, 0)),
        ]
        assert core.resonances((3, 5, 7)) == []
        assert [(w.i, w.j, w.k) for w in core.resonances((1, 5))] == [(1, 2, (4,))]

    def test_witnesses_satisfy_equation(self):
        for m in [(1, 2, 3), (2, 3, 5), (1, 2, 3, 4), (2, 5, 9, 11)]:
            for w in core.resonances(m):
                assert m[w.i - 1] + sum(
                    mr * kr for mr, kr in zip(m, w.k)
                ) == m[w.j - 1]
                assert len(w.k) == w.j - 1
                assert w.i < w.j

    def test_matches_oracle_exhaustively(self):
        for m in valid_weights(3, 18):
            got = [(w.i, w.j, w.k) for w in core.resonances(m)]
            assert got == oracle_resonances(m)

    def test_sorted_output(self):
        wits = core.resonances((1, 2, 3, 4))
        keys = [w.sort_key() for w in wits]
        assert keys == sorted(keys)


class TestZeroSetEquivalence:
    @pytest.mark.parametrize(
        "weight, bound",
        [((3, 5, 7), 10), ((1, 2, 3), 10), ((2, 3, 5), 0)],
    )
    def test_reference_cases(self, weight, bound):
        assert core.zero_set_equivalence_check(weight, bound) is True

    def test_direct_box_enumeration(self):
        # Independent check for (1, 2, 3): collect exponent zeros over the
        # degree-6 box and compare against zero-padded witnesses.
        m = (1, 2, 3)
        zeros = set()
        for k1 in range(7):
            for k2 in range(7 - k1):
                for k3 in range(7 - k1 - k2):
                    k = (k1, k2, k3)
                    for i in range(1, 4):
                        for j in range(i + 1, 4):
                            if core.c_exponent(m, i, j, k) == 0:
                                zeros.add((i, j, k))
        embedded = {
            (w.i, w.j, w.k + (0,) * (3 - len(w.k)))
            for w in core.resonances(m)
            if sum(w.k) <= 6
        }
        assert zeros == embedded
        assert core.zero_set_equivalence_check(m, 6) is True

    @settings(deadline=None, max_examples=40)
    @given(small_weights(max_n=4, max_entry=25))
    def test_holds_on_random_weights(self, m):
        assert core.zero_set_equivalence_check(m, 6) is True

    def test_negative_bound_rejected(self):
        with pytest.raises(WeightError, match=">= 0"):
            core.zero_set_equivalence_check((2, 3), -1)


class TestEnumerateAdmissible:
    @pytest.mark.parametrize(
        "prefix, window, expected",
        [
            ((5, 7), 2, [13, 16, 18, 23]),
            ((3, 7), 2, [11]),
            ((3, 5), 2, []),
            ((5, 7), 1, [8, 9, 11]),
        ],
    )
    def test_reference_sets(self, prefix, window, expected):
        assert core.enumerate_admissible(prefix, window) == expected

    def test_results_extend_into_class(self):
        for prefix, window in [((5, 7), 2), ((3, 7), 2), ((4, 5), 2), ((3, 7, 11), 1)]:
            for s in core.enumerate_admissible(prefix, window):
                verdict = core.is_in_class((*prefix, s))
                assert verdict.in_class

    def test_complement_relation(self):
        # Admissible values are exactly the window complement of the
        # obstruction set, above the last entry, with gcd 1.
        for prefix, window in [((5, 7), 2), ((4, 6), 2), ((3, 7), 3)]:
            sigma = sum(prefix)
            lo, hi = (window - 1) * sigma, window * sigma
            blocked = set(oracle_window_elements(prefix, window))
            expected = [
                s
                for s in range(lo + 1, hi)
                if s not in blocked and s > prefix[-1] and math.gcd(*prefix, s) == 1
            ]
            assert core.enumerate_admissible(prefix, window) == expected

    def test_prefix_must_be_in_class(self):
        with pytest.raises(WeightError, match="base-case-m1"):
            core.enumerate_admissible((1, 2), 2)
        with pytest.raises(WeightError, match="base-case-divisibility"):
            core.enumerate_admissible((3, 6), 2)
        with pytest.raises(WeightError, match="obstruction-set-hit"):
            core.enumerate_admissible((3, 5, 9), 1)


class TestN3Criteria:
    @pytest.mark.parametrize(
        "weight, expected",
        [
            (
                (4, 5, 7),
                ["basic-criterion", "doubling-bound", "prime-pair", "twin-prime"],
            ),
            ((3, 5, 7), ["basic-criterion", "prime-pair", "twin-prime"]),
            ((3, 4, 8), []),
            ((6, 7, 11), ["basic-criterion", "doubling-bound", "prime-pair"]),
            ((5, 11, 13), ["basic-criterion", "prime-pair", "twin-prime"]),
        ],
    )
    def test_reference_tags(self, weight, expected):
        assert core.check_n3_criteria(weight) == expected

    def test_any_tag_implies_membership(self):
        for m in valid_weights(3, 30):
            if core.check_n3_criteria(m):
                assert core.is_in_class(m).in_class, m

    def test_wrong_arity(self):
        with pytest.raises(WeightError, match="length 3"):
            core.check_n3_criteria((3, 5))


class TestLargeInputs:
    def test_million_scale_entries_stay_exact(self):
        # entries near 10**6; expected elements derived by direct double
        # loop since at most four summands fit in the window
        prefix = (999983, 999989)
        expected = set()
        for a in range(5):
            for b in range(5 - a):
                if a + b == 0:
                    continue
                for mi in prefix:
                    r = mi + a * prefix[0] + b * prefix[1]
                    if 1999972 < r < 3999944:
                        expected.add(r)
        iset = core.obstruction_set(prefix, 2, "sieve")
        assert iset.interval == (1999972, 3999944)
        assert iset.elements == tuple(sorted(expected))
        verdict = core.is_in_class((999983, 999989, 1999973))
        assert verdict.in_class and verdict.witnesses == (2,)


class TestShiftMapMonotonicity:
    @pytest.mark.parametrize("prefix", [(3, 5), (3, 7), (5, 7), (4, 6), (2, 9)])
    def test_shift_embeds_into_next_window(self, prefix):
        sigma = sum(prefix)
        for window in range(1, 7):
            current = core.obstruction_set(prefix, window).elements
            following = set(core.obstruction_set(prefix, window + 1).elements)
            assert all(r + sigma in following for r in current)
            assert len(current) <= len(following)


class TestMembershipImpliesResonanceFree:
    @settings(deadline=None, max_examples=60)
    @given(small_weights(max_n=4, max_entry=30))
    def test_in_class_weights_have_no_resonances(self, m):
        if core.is_in_class(m).in_class:
            assert core.resonances(m) == []
