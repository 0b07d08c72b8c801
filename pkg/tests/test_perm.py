import pytest
from hypothesis import given, strategies as st

from commclass.perm import (Permutation, PermutationParseError, all_permutations, apply_word,
                            compose, format_cycles, format_one_line, identity, inverse, length,
                            letter_in_support, longest, non_fixed_bounds, parse_permutation,
                            simple_reflection)
from commclass.words import reduced_words


def perms(min_degree=1, max_degree=7):
    return st.integers(min_degree, max_degree).flatmap(
        lambda d: st.permutations(range(1, d + 1)).map(lambda xs: Permutation(tuple(xs))))


def perm_pairs(max_degree=7):
    return st.integers(1, max_degree).flatmap(
        lambda d: st.tuples(*[st.permutations(range(1, d + 1)).map(lambda xs: Permutation(tuple(xs)))] * 2))


@pytest.mark.parametrize("text, degree, expected", [
    ("(1 3)(2 4 5)", 5, (3, 4, 1, 5, 2)),
    ("1,2,3", None, (1, 2, 3)),
    ("3, 4,2 ,1", None, (3, 4, 2, 1)),
    ("(1 3)", 4, (3, 2, 1, 4)),
    ("(1 3)", None, (3, 2, 1)),
])
def test_parse(text, degree, expected):
    assert parse_permutation(text, degree).images == expected


def test_parse_cycle_example_degree_ten():
    p = parse_permutation("(9 2 10 1 8 3)(4 7)(5 6)", 10)
    assert (p(1), p(2), p(10)) == (8, 10, 1)


@pytest.mark.parametrize("text, position", [
    ("3,4,x,1", 4),
    ("1,1", 2),
    ("1,5", 2),
    ("(1 2)(2 3)", 6),
    ("(1 2", 0),
    ("(0 1)", 1),
    ("", 0),
])
def test_parse_errors_report_position(text, position):
    with pytest.raises(PermutationParseError) as err:
        parse_permutation(text)
    assert err.value.position == position


@given(perms())
def test_format_parse_round_trip(p):
    assert parse_permutation(format_one_line(p)) == p
    assert parse_permutation(format_cycles(p), p.degree) == p


def test_compose():
    s1 = simple_reflection(1, 3)
    assert compose(s1, s1) == identity(3)
    # x -> s2(s3(x)) evaluated by hand
    assert compose(simple_reflection(2, 4), simple_reflection(3, 4)).images == (1, 3, 4, 2)
    p = Permutation((3, 1, 2))
    assert compose(p, identity(3)) == p
    with pytest.raises(ValueError):
        compose(identity(2), identity(3))


def test_inverse():
    assert inverse(Permutation((3, 4, 1, 5, 2))).images == (3, 5, 1, 2, 4)
    assert inverse(identity(4)) == identity(4)
    assert inverse(simple_reflection(2, 4)) == simple_reflection(2, 4)


@given(perms())
def test_inverse_composes_to_identity(p):
    assert compose(p, inverse(p)) == identity(p.degree)


def test_length():
    assert length(Permutation((3, 4, 2, 1))) == 5
    assert length(identity(5)) == 0
    assert length(longest(4)) == 6


@given(perms())
def test_length_of_inverse(p):
    assert length(p) == length(inverse(p))


@given(perm_pairs())
def test_length_subadditive_with_parity(pq):
    p, q = pq
    lp, lq, lpq = length(p), length(q), length(compose(p, q))
    assert lpq <= lp + lq
    assert (lpq - lp - lq) % 2 == 0


def test_non_fixed_bounds():
    b = non_fixed_bounds(Permutation((3, 2, 5, 4, 1)))
    assert (b.present, b.m, b.M_plus_1, b.M) == (True, 1, 5, 4)
    assert not non_fixed_bounds(identity(4)).present
    b = non_fixed_bounds(Permutation((1, 3, 2, 4)))
    assert (b.m, b.M_plus_1) == (2, 3)


@pytest.mark.parametrize("degree", range(1, 7))
def test_non_fixed_bounds_exhaustive(degree):
    for p in all_permutations(degree):
        b = non_fixed_bounds(p)
        assert b.present == (not p.is_identity())
        if b.present:
            assert 1 <= b.m < b.M_plus_1 <= degree
            assert p(b.m) != b.m and p(b.M_plus_1) != b.M_plus_1
            assert all(p(k) == k for k in range(1, degree + 1) if k < b.m or k > b.M_plus_1)


def test_letter_in_support():
    assert letter_in_support(Permutation((3, 4, 2, 1)), 3)
    assert not any(letter_in_support(identity(4), i) for i in (1, 2, 3))
    assert not letter_in_support(Permutation((2, 1, 3)), 2)
    with pytest.raises(ValueError):
        letter_in_support(identity(3), 3)


@pytest.mark.parametrize("degree", range(2, 7))
def test_letter_in_support_matches_reduced_words(degree):
    for p in all_permutations(degree):
        words = reduced_words(p)
        for i in range(1, degree):
            every = all(i in w for w in words)
            some = any(i in w for w in words)
            assert letter_in_support(p, i) == every == some


def test_apply_word():
    assert apply_word((2, 1, 2, 3, 2), 4).images == (3, 4, 2, 1)
    assert apply_word((), 4) == identity(4)
    # s1(s2(x)) pointwise: 1 -> 2, 2 -> 3, 3 -> 1
    assert apply_word((1, 2), 3).images == (2, 3, 1)
    with pytest.raises(ValueError):
        apply_word((3,), 3)
