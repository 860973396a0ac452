"""Rees matrix models over Z/p and the endomorphisms they induce.

Run with ``python3 demos/rees_models.py``.
"""

from sadickit import Substitution, family_substitution, invertibility_report, rees_build, rees_induced_endo

for n, p in [(2, 2), (2, 3), (3, 2)]:
    model = rees_build(n, p)
    print(f"n={n}, p={p}: |T| = {model.size} (expected {model.expected_size}), maximal subgroups of order {model.subgroup_order}")

endos = {
    "sigma_2": family_substitution("sigma", 2),
    "sigma'_2": family_substitution("sigma_prime", 2),
    "Thue-Morse": Substitution.from_strings({"a": "ab", "b": "ba"}),
    "Fibonacci": Substitution.from_strings({"a": "ab", "b": "a"}),
    "a->ab, b->ab": Substitution.from_strings({"a": "ab", "b": "ab"}),
}
print()
for p in (2, 3):
    model = rees_build(2, p)
    for name, phi in endos.items():
        rep = rees_induced_endo(phi, model)
        det = invertibility_report(phi, [p]).det_i2
        print(
            f"p={p} {name:14s} det I2 = {det:3d}  invertible mod p: {rep.matrix_invertible_mod_p!s:5s}"
            f"  automorphism of T: {rep.is_automorphism!s:5s}  image {rep.image_size}/{model.size}"
        )
