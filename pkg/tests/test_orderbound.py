import pytest
from hypothesis import given
from hypothesis import strategies as st

from semicurve.orderbound import (
    SIGN_TABLE,
    delta_profile,
    find_sm,
    nu,
    nu_sequence,
    order_bound,
    partition_counts,
    predict_sm,
    table_pattern,
)
from semicurve.semigroup import SemigroupError, from_generators, parse_semigroup, profile, semigroups_of_genus

S24 = "elem:0,8,12,14,15,16;c=20"

non_ordinary = (
    st.lists(st.integers(3, 12), min_size=2, max_size=4)
    .filter(lambda xs: __import__("math").gcd(*xs) == 1)
    .map(from_generators)
    .filter(lambda S: not S.is_ordinary())
)


def nu_oracle(S, s):
    return sum(1 for x in range(s + 1) if x in S and (s - x) in S)


def test_nu_example_values():
    S = parse_semigroup(S24)
    assert nu(S, 30) == 7
    assert nu(S, 20) == 4
    assert partition_counts(S, 30) == (0, 3, 0, 4)
    assert partition_counts(S, 20) == (0, 0, 2, 2)


def test_nu_rejects_gap():
    with pytest.raises(SemigroupError):
        nu(parse_semigroup(S24), 13)


@given(non_ordinary, st.integers(0, 60))
def test_nu_against_double_loop(S, s):
    if s not in S:
        return
    assert nu(S, s) == nu_oracle(S, s)
    assert sum(partition_counts(S, s)) == nu(S, s)


@given(non_ordinary)
def test_nu_sequence_matches_pointwise(S):
    members, vals = nu_sequence(S, 3 * S.conductor + 5)
    assert vals == [nu_oracle(S, s) for s in members]


@pytest.mark.parametrize(
    "spec,want",
    [
        ("elem:0,25,26,28,30,31,33;c=39", 61),
        ("elem:0,7,13,14,15,16,17;c=20", 31),
        ("elem:0,20,21,26,27,32;c=39", 54),
        ("elem:0,10,20,22,23,26;c=30", 46),
        (S24, 32),
    ],
)
def test_sm_examples(spec, want):
    S = parse_semigroup(spec)
    assert find_sm(S).s_m == want
    assert predict_sm(S).consistent_with(want)


def test_prediction_cases():
    assert predict_sm(parse_semigroup(S24)).case == "2a"
    p = predict_sm(parse_semigroup("elem:0,10,20,22,23,26;c=30"))
    assert p.case == "2c" and p.upper == 48


def sm_oracle(S):
    """Last strict drop of nu over a long window, by the double loop."""
    members = [x for x in range(4 * S.conductor + 4 * S.multiplicity) if x in S]
    vals = [nu_oracle(S, s) for s in members]
    drops = [i for i in range(len(vals) - 1) if vals[i] > vals[i + 1]]
    return members[drops[-1]]


@given(non_ordinary)
def test_find_sm_against_long_window(S):
    assert find_sm(S).s_m == sm_oracle(S)


@given(non_ordinary)
def test_prediction_contains_sm(S):
    assert predict_sm(S).consistent_with(find_sm(S).s_m)


@pytest.fixture(scope="module")
def small_non_ordinary():
    return [S for g in range(2, 11) for S in semigroups_of_genus(g) if not S.is_ordinary()]


def test_sign_table_exact(small_non_ordinary):
    seen = set()
    for S in small_non_ordinary:
        P = profile(S)
        i = 0
        while S.member_at(i) <= 2 * P.d_prime - 1:
            s_i = S.member_at(i)
            dp = delta_profile(S, s_i)
            pattern = table_pattern(S, s_i)
            seen.add(pattern)
            assert (dp.alpha, dp.beta, dp.delta) == SIGN_TABLE[pattern], (S.spec, s_i)
            i += 1
    assert len(seen) >= 6


def test_partition_sums(small_non_ordinary):
    for S in small_non_ordinary:
        for s in S.members(2 * S.conductor + S.multiplicity):
            assert sum(partition_counts(S, s)) == nu(S, s)


def test_sm_global_properties(small_non_ordinary):
    for S in small_non_ordinary:
        prof = find_sm(S)
        P = profile(S)
        assert prof.s_m <= 2 * P.d
        after = prof.nu[prof.m_index + 1:]
        assert all(a <= b for a, b in zip(after, after[1:]))


@given(non_ordinary)
def test_nu_linear_past_2c(S):
    for s in range(2 * S.conductor, 2 * S.conductor + 10):
        assert nu(S, s) == s - 2 * S.genus + 1


@given(non_ordinary)
def test_delta_past_2c(S):
    s_i = 2 * S.conductor + 1
    assert delta_profile(S, s_i).delta == 1


@given(non_ordinary)
def test_origin_partition(S):
    assert partition_counts(S, 0) == (0, 0, 1, 0)


def test_gamma_at_2d_prime():
    assert delta_profile(parse_semigroup(S24), 24).gamma == -1


@given(non_ordinary, st.integers(0, 12))
def test_order_bound_brute(S, k):
    members = [x for x in range(4 * S.conductor + 4 * S.multiplicity + 2 * k) if x in S]
    vals = [nu_oracle(S, s) for s in members]
    assert order_bound(S, k) == min(vals[k + 1:])


def test_order_bound_negative_k():
    with pytest.raises(ValueError):
        order_bound(from_generators([3, 5]), -1)


def test_ordinary_has_no_drop():
    S = from_generators([5, 6, 7, 8, 9])
    assert find_sm(S).s_m is None
    with pytest.raises(SemigroupError):
        predict_sm(S)
