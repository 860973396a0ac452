"""Codes, circularity and purity on a few small examples.

Run with ``python3 demos/codes_and_purity.py``.
"""

from sadickit import Alphabet, analyze_code, green_classification, syntactic_semigroup
from sadickit.codes import brute_force_pure

examples = [("ab", "ba"), ("ac", "bcb", "ba"), ("aa",), ("b", "aba"), ("a", "ab", "ba")]

for spellings in examples:
    A = Alphabet(sorted({ch for s in spellings for ch in s}))
    code = [A.word(s) for s in spellings]
    report = analyze_code(code)
    print("{" + ", ".join(spellings) + "}")
    for key, value in report.as_dict().items():
        if key != "words":
            print(f"  {key}: {value}")
    if report.is_code:
        print(f"  brute-force root extraction (|u| <= 6, n <= 4): {brute_force_pure(code)}")
        S = syntactic_semigroup(code=code)
        g = green_classification(S)
        print(f"  syntactic semigroup: {len(S)} elements, {len(g.J)} J-classes, {len(g.H)} H-classes")
    print()
