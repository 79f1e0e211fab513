"""Explicit orthogonality paths: any two singular elements are joined by at
most four verified edges (three when every block has size >= 4), except in
the three small algebras [1], [1,1], [2].

Run:  python demos/04_short_paths.py
"""

from collections import Counter

import numpy as np

from orthograph import (
    Element,
    SmallAlgebra,
    connect,
    connect_direct_sum,
    direct_sum,
    sample_element,
)

# The backbone construction walks a -- q_a -- r -- q_b -- b through kernel
# projections and a third projection orthogonal to both, then trims to the
# shortest fully verified sub-chain.
a = Element([3], [np.diag([1.0, 1.0, 0.0])])
b = Element([3], [np.diag([0.0, 1.0, 1.0])])
path = connect(a, b)
print("diag(1,1,0) to diag(0,1,1): length", path.length, "(trimmed to a direct edge)")

lengths = Counter()
for seed in range(40):
    x = sample_element([3], "deficient:1", 2 * seed)
    y = sample_element([3], "deficient:1", 2 * seed + 1)
    lengths[connect(x, y).length] += 1
print("3x3 block, 40 random singular pairs, path lengths:", dict(sorted(lengths.items())))

# Blocks of size >= 4 admit a guaranteed three-edge bridge through two
# rank-two projections.
lengths = Counter()
for seed in range(40):
    x = sample_element([4], "deficient:1", 2 * seed)
    y = sample_element([4], "deficient:1", 2 * seed + 1)
    lengths[connect(x, y).length] += 1
print("4x4 block, 40 random singular pairs, path lengths:", dict(sorted(lengths.items())))

# Direct sums route across summands: with deficiencies on opposite sides the
# crossing path (a1,b1) -- (a',0) -- (0,b') -- (a2,b2) needs three edges.
x = direct_sum(sample_element([2], "deficient:1", 5), sample_element([2], "full", 6))
y = direct_sum(sample_element([2], "full", 7), sample_element([2], "deficient:1", 8))
path = connect_direct_sum(x, y, split=1)
print("crossing pair in [2,2]: length", path.length)
for i, v in enumerate(path.vertices[1:-1], start=1):
    side = "first" if v.blocks[1].max() == 0.0 else "second"
    print(f"  interior vertex {i} lives in the {side} summand")

# Fully degenerate crossings collapse to a single edge.
xz = direct_sum(Element.zero([2]), sample_element([2], "deficient:1", 9))
yz = direct_sum(sample_element([2], "deficient:1", 10), Element.zero([2]))
print("degenerate crossing: length", connect_direct_sum(xz, yz, split=1).length)

# The three small shapes are excluded: their singular elements do not form
# one component, so the construction refuses them.
try:
    connect(sample_element([2], "deficient:1", 0), sample_element([2], "deficient:1", 1))
except SmallAlgebra as exc:
    print("2x2 block algebra:", exc)
