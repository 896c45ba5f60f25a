import random

import pytest

from substrand import (
    Alphabet,
    FixedPointStream,
    InputError,
    Substitution,
    Word,
    abelianization_matrix,
    abelianize,
    apply_substitution,
    expand,
    list_periodic_seeds,
)
from conftest import oracle_prefix


def test_alphabet_rejects_duplicates_and_multichar():
    with pytest.raises(InputError):
        Alphabet("aa")
    with pytest.raises(InputError):
        Alphabet(["ab"])
    with pytest.raises(InputError):
        Alphabet([])


def test_word_basics(fibonacci):
    A = fibonacci.alphabet
    w = A.word("aab")
    assert len(w) == 3 and str(w) == "aab"
    assert w[0] == "a" and w[2] == "b"
    assert str(w[:2]) == "aa"
    assert str(w + A.word("ba")) == "aabba"
    with pytest.raises(InputError):
        A.word("axb")


def test_apply_substitution_examples(fibonacci):
    assert str(apply_substitution(fibonacci, "ab")) == "aba"
    assert str(apply_substitution(fibonacci, "")) == ""
    assert str(apply_substitution(fibonacci, "a", power=3)) == "abaab"
    with pytest.raises(InputError):
        apply_substitution(fibonacci, "a", power=0)


def test_abelianize_examples(fibonacci):
    A = fibonacci.alphabet
    assert abelianize(A.word("aabaa")) == (4, 1)
    assert abelianize(Word(A)) == (0, 0)
    # matrix-abelianization agreement on a fixed instance
    m = abelianization_matrix(fibonacci)
    u = A.word("aab")
    image_counts = abelianize(apply_substitution(fibonacci, u))
    assert image_counts == tuple(
        sum(m[i][j] * abelianize(u)[j] for j in range(2)) for i in range(2)
    )
    assert image_counts == (3, 2)


def test_abelianize_is_additive(fibonacci):
    A = fibonacci.alphabet
    rng = random.Random(7)
    for _ in range(50):
        u = Word(A, [rng.randrange(2) for _ in range(rng.randrange(0, 12))])
        v = Word(A, [rng.randrange(2) for _ in range(rng.randrange(0, 12))])
        assert abelianize(u + v) == tuple(
            a + b for a, b in zip(abelianize(u), abelianize(v))
        )


def test_periodic_seeds(fibonacci, thue_morse):
    assert list_periodic_seeds(fibonacci, 3) == [("a", 1)]
    assert list_periodic_seeds(thue_morse, 3) == [("a", 1), ("b", 1)]
    swap = Substitution({"a": "b", "b": "ab"})
    assert list_periodic_seeds(swap, 3) == [("a", 2), ("b", 2)]
    assert list_periodic_seeds(swap, 1) == []


def test_expand_against_oracle(fibonacci):
    stream = FixedPointStream(fibonacci, "a")
    assert str(expand(stream, 13)) == "abaababaabaab"
    assert str(expand(stream, 13)) == oracle_prefix(fibonacci, "a", 13)
    assert str(expand(stream, 0)) == ""


def test_expand_rejects_bad_seed(fibonacci):
    with pytest.raises(InputError):
        FixedPointStream(fibonacci, "b", period=1)
    with pytest.raises(InputError):
        FixedPointStream(Substitution({"a": "a"}), "a")


def test_expand_prefix_monotone(tribonacci):
    stream = FixedPointStream(tribonacci, "a")
    long = str(stream.expand(500))
    for length in (0, 1, 7, 99, 500):
        assert long.startswith(str(stream.expand(length)))
    # idempotent re-expansion
    assert str(stream.expand(100)) == str(stream.expand(100))


def test_period_two_stream_matches_oracle():
    swap = Substitution({"a": "b", "b": "ab"})
    stream = FixedPointStream(swap, "a", period=2)
    assert stream.prefix_text(40) == oracle_prefix(swap, "a", 40, period=2)


def test_substitution_power(fibonacci):
    squared = fibonacci.power(2)
    assert squared.rules() == {"a": "aba", "b": "ab"}
    assert fibonacci.power(1) is fibonacci
    with pytest.raises(InputError):
        fibonacci.power(0)
