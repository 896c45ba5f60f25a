import io
import random

import numpy as np
import pytest

from substrand import (
    FixedPointStream,
    InputError,
    Segment,
    Strand,
    UnsupportedInputError,
    Word,
    abelianization_matrix,
    abelianize,
    apply_substitution,
    build_strand,
    classify,
    invariant_splitting,
    max_stable_delta_norm,
    stability_scan,
    substitute_strand,
    write_scan_csv,
    write_stable_scatter_svg,
)


def _splitting(sub, tolerance=1e-9):
    return invariant_splitting(classify(sub), abelianization_matrix(sub), tolerance)


def test_build_strand_examples(fibonacci):
    A = fibonacci.alphabet
    s = build_strand(A.word("ab"))
    assert [(seg.vertex, seg.letter_index) for seg in s] == [((0, 0), 0), ((1, 0), 1)]
    assert len(build_strand(Word(A))) == 0
    s2 = build_strand(A.word("abaab"))
    assert s2.segments[-1].terminal == (3, 2)
    assert s2.segments[-1].terminal == abelianize(A.word("abaab"))


def test_strand_chain_validation(fibonacci):
    A = fibonacci.alphabet
    with pytest.raises(InputError):
        Strand(A, [Segment((0, 0), 0), Segment((5, 5), 1)])


def test_substitute_single_segments(fibonacci):
    A = fibonacci.alphabet
    out = substitute_strand(fibonacci, build_strand(A.word("a")))
    assert [(seg.vertex, A.letters[seg.letter_index]) for seg in out] == [
        ((0, 0), "a"),
        ((1, 0), "b"),
    ]
    assert len(substitute_strand(fibonacci, Strand(A, []))) == 0
    out_b = substitute_strand(fibonacci, Strand(A, [Segment((1, 0), 1)]))
    assert [(seg.vertex, A.letters[seg.letter_index]) for seg in out_b] == [((1, 1), "a")]


def test_pattern_commutation_random(fibonacci, tribonacci, aab_ba):
    rng = random.Random(99)
    for sub in (fibonacci, tribonacci, aab_ba):
        n = len(sub.alphabet)
        for _ in range(10):
            w = Word(sub.alphabet, [rng.randrange(n) for _ in range(rng.randrange(0, 50))])
            assert substitute_strand(sub, build_strand(w)).pattern == apply_substitution(sub, w)


def test_vertex_law_with_origin(tribonacci):
    rng = random.Random(4)
    m = abelianization_matrix(tribonacci)
    for _ in range(10):
        w = Word(tribonacci.alphabet, [rng.randrange(3) for _ in range(rng.randrange(1, 30))])
        origin = [rng.randrange(-3, 4) for _ in range(3)]
        image_origin = [sum(m[i][j] * origin[j] for j in range(3)) for i in range(3)]
        left = substitute_strand(tribonacci, build_strand(w, origin))
        right = build_strand(apply_substitution(tribonacci, w), image_origin)
        assert left == right


def test_splitting_fibonacci_directions(fibonacci):
    sp = _splitting(fibonacci)
    phi = (1 + 5 ** 0.5) / 2
    expected_w = np.array([phi, 1.0]) / np.linalg.norm([phi, 1.0])
    assert np.allclose(sp.expanding_direction, expected_w, atol=1e-8)
    stable = sp.stable_basis[:, 0]
    reference = np.array([1.0, -phi]) / np.linalg.norm([1.0, -phi])
    assert min(np.linalg.norm(stable - reference), np.linalg.norm(stable + reference)) < 1e-8
    assert abs(sp.dilation - phi) < 1e-9


def test_splitting_projector_identities(fibonacci, tribonacci, aab_ba):
    for sub in (fibonacci, tribonacci, aab_ba):
        sp = _splitting(sub)
        n = sp.projector_stable.shape[0]
        m = np.array(abelianization_matrix(sub), dtype=float)
        assert np.abs(sp.projector_unstable @ sp.projector_unstable - sp.projector_unstable).max() < 1e-7
        assert np.abs(sp.projector_stable @ sp.projector_stable - sp.projector_stable).max() < 1e-7
        assert np.abs(sp.projector_unstable + sp.projector_stable - np.eye(n)).max() < 1e-12
        assert np.abs(m @ sp.projector_unstable - sp.projector_unstable @ m).max() < 1e-7
        # M w = dilation w
        assert np.abs(m @ sp.expanding_direction - sp.dilation * sp.expanding_direction).max() < 1e-7


def test_splitting_dimensions(tribonacci):
    assert _splitting(tribonacci).stable_dimension == 2


def test_splitting_rejects_non_pisot(thue_morse):
    with pytest.raises(UnsupportedInputError):
        _splitting(thue_morse)


def test_stability_scan_bounded(fibonacci):
    sp = _splitting(fibonacci)
    seed = build_strand(fibonacci.alphabet.word("a"))
    scan = stability_scan(fibonacci, seed, 10, sp)
    assert len(scan.envelopes) == 11
    assert max(scan.envelopes) < 2.0
    assert scan.empirical_radius == max(scan.envelopes[3:])
    assert scan.conjugation_max_error < 1e-6


def test_stability_scan_empty_strand(fibonacci):
    sp = _splitting(fibonacci)
    scan = stability_scan(fibonacci, Strand(fibonacci.alphabet, []), 1, sp)
    assert scan.envelopes == (0.0, 0.0)


def test_stability_transient_decays(fibonacci):
    # a seed pushed off the expanding line falls back into the invariant slab:
    # after burn-in nothing exceeds the initial transient
    sp = _splitting(fibonacci)
    seed = build_strand(fibonacci.alphabet.word("a"), origin=(3, -2))
    scan = stability_scan(fibonacci, seed, 10, sp)
    assert max(scan.envelopes) == max(scan.envelopes[: scan.burn_in + 1])


def test_stable_delta_norm_bounded(aab_ba):
    sp = _splitting(aab_ba)
    x = FixedPointStream(aab_ba, "a")
    y = FixedPointStream(aab_ba, "b")
    at_1k = max_stable_delta_norm(sp, x, y, 1000)
    at_10k = max_stable_delta_norm(sp, x, y, 10_000)
    assert at_1k == at_10k
    assert at_10k < 2.0


def test_csv_export_deterministic(fibonacci):
    sp = _splitting(fibonacci)
    seed = build_strand(fibonacci.alphabet.word("a"))
    scan = stability_scan(fibonacci, seed, 4, sp)
    first, second = io.StringIO(), io.StringIO()
    rows1 = write_scan_csv(scan, sp, first)
    rows2 = write_scan_csv(scan, sp, second)
    assert first.getvalue() == second.getvalue()
    assert rows1 == rows2 == sum(len(s) for s in scan.strands)
    header = first.getvalue().splitlines()[0]
    assert header == "iteration,v0,v1,type,expanding_coefficient,s0"


def test_svg_export_deterministic(tribonacci):
    sp = _splitting(tribonacci)
    seed = build_strand(tribonacci.alphabet.word("a"))
    scan = stability_scan(tribonacci, seed, 8, sp)
    first, second = io.StringIO(), io.StringIO()
    n1 = write_stable_scatter_svg(scan.strands[-1], sp, first)
    n2 = write_stable_scatter_svg(scan.strands[-1], sp, second)
    assert first.getvalue() == second.getvalue()
    assert n1 == n2 == len(scan.strands[-1]) + 1
    assert first.getvalue().startswith("<svg ")
    assert 'viewBox="0 0 800 800"' in first.getvalue()
