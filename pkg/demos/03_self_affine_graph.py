"""Constant eps gives a graph that is the union of three affine copies of itself.

The maps are read off the matrix column and the g-weights.  The residual
check maps an exact sample of the graph and re-evaluates f at the images.
"""
from fractions import Fraction

from qstar import FunctionSpec, box_dimension, graph_sample, ifs_maps, self_affine_residual

for eps in (Fraction(0), Fraction(3, 4), Fraction(1)):
    f = FunctionSpec.uniform(eps)
    print(f"eps = {eps}")
    for i, m in enumerate(ifs_maps(f)):
        print(f"  phi_{i}: (x, y) -> ({m.qx} x + {m.bx}, {m.gy} y + {m.dy})")
    print("  residual at rank 4:", self_affine_residual(f, graph_sample(f, 4)))
    est, counts = box_dimension(f, [27, 81, 243])
    print("  boxes:", counts, f"slope {est:.4f}")

# eps = 1/2 collapses the middle map
try:
    ifs_maps(FunctionSpec.uniform(Fraction(1, 2)))
except ValueError as exc:
    print("\neps = 1/2:", exc)
