"""Isolated vertices of the orthograph are exactly the right-invertible
elements, and the characterization is constructive in both directions.

Run:  python demos/03_isolated_vertices.py
"""

import numpy as np

from orthograph import (
    Element,
    Isolated,
    classify_isolated,
    is_right_invertible,
    mutual_strong,
    non_isolated_witness,
    sample_element,
)

# A right-invertible element can absorb any neighbor candidate: choosing
# c = -(inverse) a collapses ||a + bc||, so no mutual partner exists.
try:
    non_isolated_witness(Element.identity([3]))
except Isolated:
    print("identity: isolated (right invertible), no witness exists")

# A singular element always has a verified neighbor: normalize and take the
# positive square root of (1 - a a*).  It is nonzero exactly because a a*
# is singular.
a = Element([3], [np.diag([1.0, 1.0, 0.0])])
w = non_isolated_witness(a)
print("witness of diag(1,1,0):\n", np.round(w.blocks[0].real, 6))
print("mutual orthogonality verified:",
      mutual_strong(a, w, want_certificate=False).adjacent)

# The same works for any sampled rank-deficient element, in any shape.
for seed in range(3):
    x = sample_element([2, 3], "deficient:1", seed)
    wx = non_isolated_witness(x)
    print(f"seed {seed}: witness norm {wx.norm():.3f}, adjacent:",
          mutual_strong(x, wx, want_certificate=False).adjacent)

# classify_isolated partitions a vertex list and attaches the witnesses.
verts = [sample_element([3], "full", s) for s in range(5)]
verts += [sample_element([3], "deficient:1", s) for s in range(5)]
rep = classify_isolated(verts)
print("isolated:", list(rep.isolated))
print("candidates with witnesses:", list(rep.candidates))
print("classification matches invertibility:",
      all(is_right_invertible(verts[i]) for i in rep.isolated)
      and not any(is_right_invertible(verts[i]) for i in rep.candidates))
