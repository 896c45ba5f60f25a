import random

import pytest
import sympy

from substrand import (
    InputError,
    IntPolynomial,
    PISOT_NO,
    PISOT_YES,
    Substitution,
    abelianization_matrix,
    characteristic_polynomial,
    classify,
    is_irreducible,
    is_primitive,
    perron_data,
)


def _random_substitution(rng, max_letters=4, max_image=4):
    n = rng.randrange(2, max_letters + 1)
    letters = "abcd"[:n]
    rules = {
        a: "".join(rng.choice(letters) for _ in range(rng.randrange(1, max_image + 1)))
        for a in letters
    }
    return Substitution(rules)


def test_matrix_examples(fibonacci, aab_bbaab):
    assert abelianization_matrix(fibonacci) == [[1, 1], [1, 0]]
    assert abelianization_matrix(aab_bbaab) == [[2, 2], [1, 3]]
    assert abelianization_matrix(Substitution({"a": "aa"})) == [[2]]


def test_primitivity(fibonacci):
    assert is_primitive(abelianization_matrix(fibonacci)) == (True, 2)
    assert is_primitive([[1, 0], [1, 1]]) == (False, None)
    assert is_primitive([[1, 2], [3, 4]]) == (True, 1)
    assert is_primitive([[3]]) == (True, 1)


def test_characteristic_polynomials(fibonacci, tribonacci, thue_morse):
    assert characteristic_polynomial(abelianization_matrix(fibonacci)).coeffs == (-1, -1, 1)
    assert characteristic_polynomial(abelianization_matrix(tribonacci)).coeffs == (-1, -1, -1, 1)
    assert characteristic_polynomial(abelianization_matrix(thue_morse)).coeffs == (0, -2, 1)


def test_characteristic_polynomial_against_sympy():
    rng = random.Random(42)
    for _ in range(30):
        sub = _random_substitution(rng)
        m = abelianization_matrix(sub)
        ours = characteristic_polynomial(m).coeffs
        theirs = sympy.Matrix(m).charpoly().all_coeffs()  # descending order
        assert list(ours) == [int(c) for c in reversed(theirs)]


def test_cayley_hamilton_exact():
    rng = random.Random(3)
    for _ in range(20):
        sub = _random_substitution(rng)
        m = abelianization_matrix(sub)
        poly = characteristic_polynomial(m)
        n = len(m)
        from substrand._intmat import identity, mat_mul

        acc = [[0] * n for _ in range(n)]
        power = identity(n)
        for coeff in poly.coeffs:
            for i in range(n):
                for j in range(n):
                    acc[i][j] += coeff * power[i][j]
            power = mat_mul(power, m)
        assert all(all(e == 0 for e in row) for row in acc)


def test_irreducibility_matches_sympy_on_char_polys():
    rng = random.Random(2024)
    for _ in range(60):
        sub = _random_substitution(rng)
        poly = characteristic_polynomial(abelianization_matrix(sub))
        expected = sympy.Poly(list(reversed(poly.coeffs)), sympy.Symbol("x")).is_irreducible
        assert is_irreducible(poly) == bool(expected)


def test_irreducibility_hard_cases():
    # squarefree-free square: (x^2 + x + 1)^2 has no rational roots,
    # is never irreducible mod p, and needs the exhaustive factor search
    assert is_irreducible(IntPolynomial((1, 2, 3, 2, 1))) is False
    # x^4 + 1: irreducible over Q yet reducible modulo every prime
    assert is_irreducible(IntPolynomial((1, 0, 0, 0, 1))) is True
    assert is_irreducible(IntPolynomial((-1, -1, 1))) is True
    assert is_irreducible(IntPolynomial((4, -5, 1))) is False  # (x-1)(x-4)
    assert is_irreducible(IntPolynomial((-2, 1))) is True


def test_classify_fibonacci(fibonacci):
    report = classify(fibonacci)
    assert report.primitive and report.primitivity_exponent == 2
    assert report.irreducible and report.pisot_type == PISOT_YES
    assert report.irreducible_pisot
    assert abs(report.dilation - 1.6180339887498949) < 1e-10
    # M w = dilation w within combined bounds, w positive and normalized
    import math

    m = abelianization_matrix(fibonacci)
    w = report.perron_vector
    assert all(x > 0 for x in w)
    assert abs(math.fsum(x * x for x in w) - 1.0) < 1e-9
    for i in range(2):
        got = sum(m[i][j] * w[j] for j in range(2))
        assert abs(got - report.dilation * w[i]) < 1e-8


def test_classify_reducible_pair():
    report = classify(Substitution({"a": "aaab", "b": "bbab"}))
    assert report.primitive
    assert report.char_poly.coeffs == (8, -6, 1)
    assert not report.irreducible
    moduli = sorted(b.modulus for b in report.root_bounds)
    assert moduli == [2.0, 4.0]
    assert all(b.exact for b in report.root_bounds)
    assert report.pisot_type == PISOT_NO
    assert not report.irreducible_pisot


def test_classify_unit_circle_eigenvalue_exact(aab_bbaab):
    report = classify(aab_bbaab)
    assert report.char_poly.coeffs == (4, -5, 1)
    assert not report.irreducible
    one = [b for b in report.root_bounds if b.modulus == 1.0]
    assert len(one) == 1 and one[0].exact
    assert one[0].status_vs_unit_circle() == "on-circle"
    assert report.pisot_type == PISOT_NO


def test_classify_non_primitive_is_partial():
    report = classify(Substitution({"a": "ab", "b": "b"}))
    assert not report.primitive
    assert report.primitivity_exponent is None
    assert report.char_poly.coeffs == (1, -2, 1)
    assert report.irreducible is None and report.pisot_type is None


def test_root_moduli_product_matches_determinant():
    rng = random.Random(11)
    for _ in range(20):
        sub = _random_substitution(rng)
        m = abelianization_matrix(sub)
        report = classify(sub)
        if not report.primitive:
            continue
        det = sympy.Matrix(m).det()
        product = 1.0
        for b in report.root_bounds:
            product *= b.modulus
        assert abs(product - abs(det)) < 1e-6 * max(1.0, abs(det))


def test_perron_data_tolerance():
    eigenvalue, vector, residual = perron_data([[1, 1], [1, 0]], tolerance=1e-12)
    assert abs(eigenvalue - 1.6180339887498949) < 1e-10
    assert residual <= 1e-12 * max(1.0, eigenvalue)
    assert all(x > 0 for x in vector)


def test_classify_rejects_bad_tolerance(fibonacci):
    with pytest.raises(InputError):
        classify(fibonacci, tolerance=0.0)


def test_report_json_round_trip(fibonacci):
    import json

    report = classify(fibonacci)
    payload = json.loads(report.to_json())
    assert payload["characteristic_polynomial"] == [-1, -1, 1]
    assert payload["pisot_type"] == "Yes"
    assert payload["dilation"]["error_bound"] >= 0.0
