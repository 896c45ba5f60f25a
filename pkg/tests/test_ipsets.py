import pytest

from substrand import (
    FixedPointStream,
    FsFamily,
    InputError,
    PathRepresentation,
    Substitution,
    Word,
    build_fs_family,
    build_prefix_graph,
    decode_path,
    find_strong_coincidence,
    occurrences,
    search_ip_witness,
    verify_finite_sums,
)


@pytest.fixture
def pair_witness(aab_ba):
    x = FixedPointStream(aab_ba, "a")
    y = FixedPointStream(aab_ba, "b")
    witness = find_strong_coincidence(x, y, 1000).witness
    return aab_ba, x, witness


def test_family_from_witness(pair_witness):
    sub, x, witness = pair_witness
    family = build_fs_family(sub, witness, 2)
    assert family.generators == (23, 1097)
    prov = family.provenance
    assert prov.power == 2
    assert str(prov.connector) == "aa"
    assert prov.target_letter == "b" and prov.start_letter == "a"
    # each generator is an occurrence of the target letter, by expansion
    text = x.prefix_text(max(family.generators) + 2)
    assert all(text[n] == "b" for n in family.generators)


def test_family_count_zero(pair_witness):
    sub, _, witness = pair_witness
    assert build_fs_family(sub, witness, 0).generators == ()


def test_generators_agree_with_path_decoder(pair_witness):
    sub, _, witness = pair_witness
    family = build_fs_family(sub, witness, 3)
    sigma = sub.power(family.provenance.power)
    g = build_prefix_graph(sigma)
    for path, value in zip(family.provenance.paths, family.generators):
        assert decode_path(g, path, materialize=False).value == value


def test_abelian_twin_paths_have_equal_values(pair_witness):
    # swapping the first label for the other fixed point's prefix keeps the value
    sub, _, witness = pair_witness
    family = build_fs_family(sub, witness, 3)
    prov = family.provenance
    sigma = sub.power(prov.power)
    g = build_prefix_graph(sigma)
    empty = Word(sub.alphabet)
    for i, value in enumerate(family.generators):
        twin = PathRepresentation(
            prov.target_letter, (prov.prefix_y, prov.connector) + (empty,) * (2 * i)
        )
        assert decode_path(g, twin, materialize=False).value == value


def test_verify_finite_sums_pass(pair_witness):
    sub, x, witness = pair_witness
    family = build_fs_family(sub, witness, 2)
    occ = occurrences(x, "b", sum(family.generators) + 10)
    verification = verify_finite_sums(family, occ, 2)
    assert verification.verdict == "pass"
    assert verification.failures == () and verification.unchecked == ()


def test_three_generators_all_subsets_occur(pair_witness):
    # exhaustive check through subset size 3 on a three-generator family
    sub, x, witness = pair_witness
    family = build_fs_family(sub, witness, 3)
    occ = occurrences(x, "b", sum(family.generators) + 2)
    verification = verify_finite_sums(family, occ, 3)
    assert verification.verdict == "pass"


def test_verify_reports_unchecked_when_horizon_short(pair_witness):
    sub, x, witness = pair_witness
    family = build_fs_family(sub, witness, 2)
    occ = occurrences(x, "b", 100)  # too short for 1097 and 1120
    verification = verify_finite_sums(family, occ, 2)
    assert verification.verdict == "incomplete"
    assert all(total > 100 - 1 for _, total in verification.unchecked)
    assert verification.failures == ()


def test_verify_failure(fibonacci):
    x = FixedPointStream(fibonacci, "a")
    occ = occurrences(x, "a", 50)
    verification = verify_finite_sums(FsFamily((1,), "searched"), occ, 1)
    assert verification.verdict == "fail"
    assert verification.failures == (((1,), 1),)


def test_verify_empty_family_vacuous(fibonacci):
    x = FixedPointStream(fibonacci, "a")
    occ = occurrences(x, "a", 50)
    assert verify_finite_sums(FsFamily((), "searched"), occ, 3).verdict == "pass"


def test_search_finds_small_family(fibonacci):
    x = FixedPointStream(fibonacci, "a")
    occ = occurrences(x, "a", 20)
    family = search_ip_witness(occ, 3)
    assert family is not None and family.provenance == "searched"
    assert len(family.generators) == 3
    assert verify_finite_sums(family, occ, 3).verdict == "pass"
    single = search_ip_witness(occ, 1)
    assert single.generators == (2,)


def test_search_exhausts_and_returns_none(fibonacci):
    x = FixedPointStream(fibonacci, "a")
    empty = occurrences(x, "bb", 100)
    assert search_ip_witness(empty, 2) is None
    with pytest.raises(InputError):
        search_ip_witness(empty, 0)


def test_family_for_period_two_pair():
    # seeds of period 2 go through the squared substitution; the connector
    # here is empty (the target letter opens its own image)
    swap = Substitution({"a": "b", "b": "ab"})
    sigma = swap.power(2)
    x = FixedPointStream(sigma, "a")
    y = FixedPointStream(sigma, "b")
    witness = find_strong_coincidence(x, y, 1000).witness
    assert (witness.index, witness.letter) == (2, "b")
    family = build_fs_family(sigma, witness, 2)
    assert len(family.provenance.connector) == 0
    target = family.provenance.target_letter
    text = x.prefix_text(max(family.generators) + 2)
    assert all(text[n] == target for n in family.generators)
    occ = occurrences(x, target, sum(family.generators) + 2)
    assert verify_finite_sums(family, occ, 2).verdict == "pass"


def test_family_requires_increasing_generators():
    with pytest.raises(InputError):
        FsFamily((3, 3), "searched")


def test_family_json(pair_witness):
    sub, _, witness = pair_witness
    family = build_fs_family(sub, witness, 2)
    payload = family.to_json_dict()
    assert payload["generators"] == [23, 1097]
    assert payload["provenance"]["power"] == 2
    assert payload["provenance"]["paths"][0]["labels"] == ["aab", "aa"]
