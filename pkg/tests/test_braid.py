import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from doubletrace.braid import (
    BraidSyntaxError,
    BraidWord,
    Permutation,
    closure_component_count,
    compose,
    inverse,
    lens_braid,
    parse_braid,
    random_relation_moves,
    random_word,
    tensor,
    underlying_permutation,
)


@st.composite
def braids(draw, max_strands=5, max_len=10):
    n = draw(st.integers(2, max_strands))
    letters = draw(st.lists(st.tuples(st.integers(1, n - 1), st.sampled_from([1, -1])), max_size=max_len))
    return BraidWord(n, tuple(letters))


def test_parse_examples():
    b = parse_braid("s1 s1 s1 s1", 2)
    assert b.strands == 2 and b.letters == ((1, 1),) * 4
    b = parse_braid("s2 s1")
    assert b.strands == 3 and b.letters == ((2, 1), (1, 1))
    assert parse_braid("s1^-1 s2").letters == ((1, -1), (2, 1))
    assert parse_braid("").strands == 2 and parse_braid("", 4).letters == ()


@pytest.mark.parametrize("text,strands", [("s3", 2), ("s0", None), ("t1", None), ("s1^2", None), ("s", None)])
def test_parse_errors(text, strands):
    with pytest.raises(BraidSyntaxError):
        parse_braid(text, strands)


def test_lens_braid():
    assert lens_braid(1) == BraidWord(2, ((1, 1),))
    assert [i for i, _ in lens_braid(3).letters] == [3, 2, 1]
    for n in range(1, 9):
        p = underlying_permutation(lens_braid(n))
        assert [len(c) for c in p.cycles()] == [n + 1]
        assert closure_component_count(lens_braid(n)) == 1
    with pytest.raises(ValueError):
        lens_braid(0)


def test_compose_inverse_tensor():
    s1 = parse_braid("s1", 2)
    assert tensor(s1, s1) == BraidWord(4, ((1, 1), (3, 1)))
    assert inverse(lens_braid(2)) == parse_braid("s1^-1 s2^-1", 3)
    b = parse_braid("s1 s2^-1 s1", 3)
    assert underlying_permutation(compose(b, inverse(b))).is_identity()
    with pytest.raises(ValueError):
        compose(s1, lens_braid(2))


def test_component_counts():
    assert closure_component_count(parse_braid("s1 s1 s1 s1", 2)) == 2
    assert closure_component_count(parse_braid("s1 s1", 2)) == 2
    assert closure_component_count(parse_braid("s1 s1 s1", 2)) == 1
    assert closure_component_count(parse_braid("", 5)) == 5


def _perm_by_tracking(b):
    """Follow each strand from its start and record where it ends."""
    ends = []
    for start in range(b.strands):
        pos = start
        for i, _ in b.letters:
            if pos == i - 1:
                pos = i
            elif pos == i:
                pos = i - 1
        ends.append(pos)
    return ends


@settings(max_examples=200, deadline=None)
@given(braids())
def test_permutation_reading(b):
    # images[p] is the start of the strand ending at p
    ends = _perm_by_tracking(b)
    p = underlying_permutation(b)
    assert all(p(ends[s]) == s for s in range(b.strands))


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_underlying_permutation_is_homomorphism(data):
    a = data.draw(braids())
    letters = data.draw(st.lists(st.tuples(st.integers(1, a.strands - 1), st.sampled_from([1, -1])), max_size=8))
    c = BraidWord(a.strands, tuple(letters))
    assert underlying_permutation(compose(a, c)) == underlying_permutation(a) * underlying_permutation(c)
    assert underlying_permutation(inverse(a)) == underlying_permutation(a).inverse()


@settings(max_examples=200, deadline=None)
@given(braids())
def test_parse_serialize_round_trip(b):
    assert parse_braid(str(b), b.strands) == b
    assert BraidWord.from_json(b.to_json()) == b


def test_index_validation():
    with pytest.raises(BraidSyntaxError):
        BraidWord(2, ((2, 1),))
    with pytest.raises(BraidSyntaxError):
        BraidWord(1, ())


def test_permutation_basics():
    p = Permutation.from_cycles("(1 2 3)(4 5)")
    assert p.size == 5 and p.images == (1, 2, 0, 4, 3)
    assert (p**6).is_identity() and (p**-1) == p.inverse()
    assert Permutation.from_cycles(p.to_cycles(), 5) == p
    assert Permutation.from_cycles("(1 2)", 4).size == 4
    q = Permutation.from_cycles("(1 3)", 5)
    assert all((p * q)(i) == p(q(i)) for i in range(5))
    for bad in ["(1 1)", "(1 2", "1 2", "(0 1)"]:
        with pytest.raises(ValueError):
            Permutation.from_cycles(bad)
    with pytest.raises(ValueError):
        Permutation((0, 0))


def test_random_words_are_seeded():
    a = [random_word(3, 6, random.Random(7)) for _ in range(2)]
    assert a[0] == a[1]
    assert len(a[0]) == 6 and a[0].strands == 3


def test_relation_moves_keep_permutation():
    rng = random.Random(3)
    for _ in range(50):
        b = random_word(4, 6, rng)
        c = random_relation_moves(b, 20, rng)
        assert underlying_permutation(c) == underlying_permutation(b)
        s = sum(sign for _, sign in b.letters)
        assert sum(sign for _, sign in c.letters) == s
