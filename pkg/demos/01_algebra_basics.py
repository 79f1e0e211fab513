"""Elements of a block matrix algebra and their spectral toolbox.

Run:  python demos/01_algebra_basics.py
"""

import numpy as np

from orthograph import (
    AlgebraShape,
    Element,
    PureState,
    abs_star,
    is_right_invertible,
    kernel_projection,
    minimal_projection_from_state,
    sample_element,
    top_minimal_projection,
)

# An algebra is a list of block sizes.  [2, 3] means pairs (x, y) with x a
# 2x2 and y a 3x3 complex matrix; the norm is the larger operator norm.
shape = AlgebraShape([2, 3])
print("shape:", shape, "total dimension:", shape.total_dim)

a = Element(shape, [np.array([[0.0, 1.0], [0.0, 0.0]]), np.diag([3.0, 1.0, 0.0])])
print("norm(a) =", a.norm())  # max of block norms -> 3

# The absolute value (a a*)^(1/2) shares the norm and is positive.
h = abs_star(a)
print("norm(|a*|) =", h.norm())
print("|a*| of the nilpotent 2x2 block:\n", np.round(h.blocks[0].real, 6))

# Right invertibility is a spectral question: a a* must be invertible.
print("a right invertible?", is_right_invertible(a))
print("identity right invertible?", is_right_invertible(Element.identity(shape)))

# The kernel projection collects the directions a annihilates.
k = kernel_projection(h)
print("kernel projection ranks per block:", k.block_ranks)

# The top projection is the deterministic rank-one piece of the
# norm-attaining eigenspace and is dominated by a / norm(a).
p = top_minimal_projection(h)
print("top projection lives in block", p.support_block())
diff = h * (1.0 / h.norm()) - p.element
print("min eigenvalue of a/|a| - p:",
      min(np.linalg.eigvalsh(b).min() for b in diff.blocks))

# Vector states evaluate elements through a unit vector in one block, and
# carry a rank-one projection that compresses every element to a scalar.
rho = PureState(shape, 1, [1.0, 0.0, 0.0])
print("rho(a) =", rho(a))
q = minimal_projection_from_state(rho)
b = sample_element(shape, "full", 0)
resid = (q.element @ b @ q.element - rho(b) * q.element).norm()
print("compression residual |p b p - rho(b) p| =", f"{resid:.2e}")

# Random sampling with explicit seeds keeps every experiment reproducible.
r = sample_element(shape, "deficient:1", 42)
print("deficient sample: invertible?", is_right_invertible(r))
