import pytest

from substrand import Substitution, apply_substitution


@pytest.fixture
def fibonacci():
    return Substitution({"a": "ab", "b": "a"})


@pytest.fixture
def tribonacci():
    return Substitution({"a": "ab", "b": "ac", "c": "a"})


@pytest.fixture
def thue_morse():
    return Substitution({"a": "ab", "b": "ba"})


@pytest.fixture
def aab_ba():
    # binary irreducible Pisot pair with two fixed points and a witness at k=3
    return Substitution({"a": "aab", "b": "ba"})


@pytest.fixture
def aab_bbaab():
    # two fixed points whose occurrence sets carry IP structure without coincidence
    return Substitution({"a": "aab", "b": "bbaab"})


@pytest.fixture
def aaab_bbab():
    # uniform length-4 pair: proximal fixed points, no strong coincidence
    return Substitution({"a": "aaab", "b": "bbab"})


def oracle_prefix(sub, seed, length, period=1):
    """Expansion oracle independent of FixedPointStream: iterate plain
    substitution application on the seed letter until long enough."""
    word = sub.alphabet.word(seed)
    while len(word) < length:
        word = apply_substitution(sub, word, period)
    return str(word)[:length]
