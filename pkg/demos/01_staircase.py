"""Singular case: eps = 1/2 everywhere.

The middle weight g1 vanishes, so every cylinder whose address contains a 1
is mapped to a single value.  With the ternary matrix this is the classical
Cantor staircase.
"""
from fractions import Fraction

from qstar import FunctionSpec, classify_regime, eval_at, plateau_cylinders, plateau_measure

f = FunctionSpec.uniform(Fraction(1, 2))
print("regime:", classify_regime(f.eps).tag.value)

# a few exact values
for x in [Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(3, 4), Fraction(7, 9)]:
    print(f"f({x}) = {eval_at(f, x)}")

# flat pieces found up to rank 3, and how much of [0, 1] they cover
for w in plateau_cylinders(f, 3):
    print("plateau", "".join(map(str, w)))
for d in (1, 5, 10, 20):
    m = plateau_measure(f, d)
    print(f"rank {d:2d}: plateau measure {float(m):.6f}   missing {float(1 - m):.3e}")

# a non-ternary matrix moves the plateaus but the staircase survives
g = FunctionSpec.uniform(Fraction(1, 2), q=(Fraction(1, 2), Fraction(1, 4), Fraction(1, 4)))
print("\nskewed matrix, rank 8 plateau measure:", float(plateau_measure(g, 8)))
