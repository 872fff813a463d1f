"""Continuous families, stability, and limit augmentations.

Two families over the 2-adics: one whose keys run away linearly, and the
classic pseudo-convergent approximation of a quadratic 2-adic integer, whose
minimal unstable polynomial has degree 2.

Run:  python demos/04_limit_augmentation.py
"""

import indval as iv
from indval import Poly, Value

v2 = iv.PadicValuation(2)

# Family 1: phi_i = x - (2^(i+1) - 2), gamma_i = i + 1.
fam = [(Poly([-(2 ** (i + 1) - 2), 1]), i + 1) for i in range(1, 7)]
lam = iv.validate_continuous_chain(fam, v2)
print("family:", [f"({s.phi}, {s.gamma})" for s in lam.family])

# x stabilizes immediately; x+2 tracks the family and keeps growing.
print("stability(x):  ", iv.stability(lam, Poly.parse("x")))
print("stability(x+2):", iv.stability(lam, Poly.parse("x+2")))

# The limit augmentation gives x+2 a value dominating the whole family: a
# fresh major coordinate, with the old values embedded as (0, q).
lim = iv.limit_augment(lam, Poly.parse("x+2"), Value.of((1, 0)))
for text in ("x+2", "x", "x^2+2x"):
    print(f"  limit value of {text}: {lim(Poly.parse(text))}")

# Family 2: approximations of a square root of 17 in Z_2.  The linear keys
# x - a pseudo-converge; every linear polynomial eventually stabilizes, and
# the minimal unstable polynomial is x^2 - 17.
approx = []
a = 1
for k in range(4, 40):
    if (a * a - 17) % 2 ** (k + 1):
        a += 2 ** (k - 1)
        approx.append(a)
fam17 = []
for a in approx[:6]:
    gamma = v2.int_order(a * a - 17) - 1
    fam17.append((Poly([-a, 1]), gamma))
chain17 = iv.validate_continuous_chain(fam17, v2)
print("\nsqrt(17) family:", [f"({s.phi}, {s.gamma})" for s in chain17.family])
print("stability(x-9):   ", iv.stability(chain17, Poly.parse("x-9")))
print("stability(x^2-17):", iv.stability(chain17, Poly.parse("x^2-17")))

lim17 = iv.limit_augment(chain17, Poly.parse("x^2-17"), Value.of((1, 0)))
for text in ("x^2-17", "x-1", "x^2-1"):
    print(f"  limit value of {text}: {lim17(Poly.parse(text))}")
