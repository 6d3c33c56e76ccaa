"""eps = 1 everywhere: a continuous function with no monotone piece.

Each cylinder splits into three children whose increments are +, -, + (or
the reverse), so no interval of x is left where f keeps a direction.
Level sets then break into many small pieces.
"""
from fractions import Fraction

import numpy as np

from qstar import FunctionSpec, eval_approx, increment, preimage_regions, root_count_lower_bound, subcylinder_signs

f = FunctionSpec.uniform(1)

for w in ["", "1", "21", "0202"]:
    print(f"w={w or '-':<5} mu={str(increment(f, w)):<8} child signs={subcylinder_signs(f, w)}")

# quick float picture: count direction changes on a fine grid
xs = np.linspace(0, 1, 20001)
ys = np.array([eval_approx(f, float(x), 1e-9) for x in xs])
turns = np.count_nonzero(np.diff(np.sign(np.diff(ys))))
print("\ndirection changes seen on 20001 points:", turns)

y0 = Fraction(1, 2)
for depth in (4, 8, 12):
    regions = preimage_regions(f, y0, depth)
    print(f"depth {depth:2d}: {len(regions):5d} candidate regions, at least {root_count_lower_bound(f, y0, depth)} roots")
