"""Key polynomials: detection, lifting, enumeration, graded factorization.

Run:  python demos/03_keys_and_factorization.py
"""

from fractions import Fraction

import indval as iv
from indval import Poly

v2 = iv.PadicValuation(2)
nu1 = iv.validate_chain([("x", Fraction(1, 2))], v2)

# Keys are detected through the residual polynomial: s(chi) = 0, R(chi)
# irreducible, and the degree identity deg(chi) = e * n * deg(R).
for text in ("x", "x^2+2", "x^2+x", "x^3+2"):
    kc = iv.key_check(nu1, Poly.parse(text))
    print(f"is_key({text}) = {kc.ok}" + (f"  [{kc.branch}]" if kc.ok else f"  ({kc.reason})"))

# Every monic irreducible over the residue tower lifts to a key class; the
# class of the top key corresponds to psi = y.
print("\nkey classes with residual degree <= 2:")
for chi in iv.enumerate_keys(nu1, 2):
    print(f"  {chi}   (R = {iv.residual_poly(nu1, chi)}, ideal {iv.residual_ideal(nu1, chi)})")

# Graded factorization: factor R(f) over the tower and lift each factor.
# This is a first, graded approximation to factoring over Q_2.
f = Poly.parse("x^4+4")
gf = iv.graded_factorization(nu1, f, seed=0)
print(f"\n{f} over nu1: {gf}")
print(gf.accounting(nu1, f))

nu2 = iv.augment(nu1, Poly.parse("x^2+2"), Fraction(3, 2))
gf = iv.graded_factorization(nu2, f, seed=0)
print(f"{f} over nu2: {gf}")
print(gf.accounting(nu2, f))
print("check in Q[x]:", Poly.parse("x^2+2x+2") * Poly.parse("x^2-2x+2") == f)

# A lifted key of residual degree 2 pushes the chain into a genuine quartic
# level whose residue field is F_4.
chi4 = iv.lift_key(nu1, "y^2+y+1")
nu4 = iv.augment(nu1, chi4, Fraction(9, 4))
print("\naugmented by", chi4, "->", nu4.describe())
print("residue tower:", iv.residual_data(nu4).field.describe())
print("key classes of residual degree 1:",
      [str(k) for k in iv.enumerate_keys(nu4, 1)])
