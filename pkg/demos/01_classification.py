"""Classify a gallery of substitutions.

For each substitution this prints primitivity (with the smallest witnessing
exponent), the exact characteristic polynomial, irreducibility over the
rationals, the dilation with its certified error bound, and the Pisot
verdict. Two deliberately reducible examples show the verdict mechanics:
one has a second eigenvalue outside the unit circle, the other has an
eigenvalue sitting exactly on it (caught exactly, not numerically).
"""

from substrand import Substitution, classify

GALLERY = [
    ("Fibonacci", {"a": "ab", "b": "a"}),
    ("Tribonacci", {"a": "ab", "b": "ac", "c": "a"}),
    ("Thue-Morse", {"a": "ab", "b": "ba"}),
    ("uniform pair", {"a": "aaab", "b": "bbab"}),
    ("two-scale pair", {"a": "aab", "b": "bbaab"}),
    ("binary Pisot pair", {"a": "aab", "b": "ba"}),
    ("non-primitive", {"a": "ab", "b": "b"}),
]


def main():
    for name, rules in GALLERY:
        report = classify(Substitution(rules))
        print(f"== {name}  {rules}")
        print(f"   primitive: {report.primitive}"
              + (f" (exponent {report.primitivity_exponent})" if report.primitive else ""))
        print(f"   char poly: {report.char_poly}")
        if not report.primitive:
            print("   (partial report: spectral fields need primitivity)")
            continue
        print(f"   irreducible over Q: {report.irreducible}")
        print(f"   dilation: {report.dilation:.10f}  (+- {report.dilation_error:.2e})")
        moduli = ", ".join(
            f"{b.modulus:.6f}{'*' if b.exact else ''} [{b.status_vs_unit_circle()}]"
            for b in report.root_bounds
        )
        print(f"   root moduli (* = exact): {moduli}")
        print(f"   Pisot verdict: {report.pisot_type}   irreducible Pisot: {report.irreducible_pisot}")


if __name__ == "__main__":
    main()
