"""Write graph samples to CSV for plotting elsewhere.

Same output as `qstar graph --rank 7 --out ...`; here the array comes
straight from the library.
"""
import sys
from fractions import Fraction

import numpy as np

from qstar import FunctionSpec, graph_sample

out = sys.argv[1] if len(sys.argv) > 1 else "graph_eps_3_4.csv"
f = FunctionSpec.uniform(Fraction(3, 4))
pts = graph_sample(f, 7).to_array()
np.savetxt(out, pts, delimiter=",", header="x,y", comments="", fmt="%.15g")
print(f"wrote {len(pts)} points to {out}")
print("y range:", pts[:, 1].min(), pts[:, 1].max())
