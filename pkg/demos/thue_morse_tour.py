"""A walk through the Thue-Morse substitution a -> ab, b -> ba.

Run with ``python3 demos/thue_morse_tour.py``.
"""

from sadickit import (
    DirectiveSequence,
    Substitution,
    certify,
    factor_language,
    i2,
    is_stable,
    min_recognizability_constant,
    periodicity_probe,
    return_words,
)

tau = Substitution.from_strings({"a": "ab", "b": "ba"})
seq = DirectiveSequence.constant(tau)
a = tau.domain.word("a")

print("iterates of a:")
for k in range(5):
    print(f"  tau^{k}(a) = {tau.power(k)(a)}")

L = factor_language(seq, 0, 6)
print("\nfactor complexity p(1..6):", [L.complexity(k) for k in range(1, 7)])
print("factors of length 3:", " ".join(str(w) for w in L.sorted_words(3)))
print("periodicity probe:", periodicity_probe(seq, cap=12))
print("stable:", is_stable(seq)[0])

ab = tau.domain.word("ab")
print("return words to ab:", sorted(str(r) for r in return_words(seq, ab)))

print("\nI2(tau):")
print(i2(tau).render())

rc = min_recognizability_constant(seq, 0, cap=10)
print(f"\nleast window radius with unique centred de-substitution: {rc.constant}")
first = rc.verdicts[0]
print(f"radius 1 fails on window {first.witness}: {first.first.as_dict()} vs {first.second.as_dict()}")

print()
print(certify(seq).render())
