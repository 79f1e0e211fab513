"""Deciding Birkhoff-James orthogonality, with certificates and an oracle.

x is orthogonal to y when no scalar multiple of y lowers the norm of x.
The strong form quantifies over algebra elements c instead of scalars:
||a + b c|| >= ||a|| for every c.  It is generally asymmetric; mutual strong
orthogonality (both directions) is the edge relation of the orthograph.

Run:  python demos/02_orthogonality_decisions.py
"""

import numpy as np

from orthograph import (
    Element,
    brute_force_min_lambda,
    bj_orthogonal,
    direct_sum,
    mutual_strong,
    strong_bj,
    verify_certificate,
)
from orthograph.orthogonality import strong_direction

E11 = Element([2], [np.diag([1.0, 0.0])])
E22 = Element([2], [np.diag([0.0, 1.0])])
I2 = Element.identity([2])

# Two matrix units with orthogonal ranges: orthogonal, with a witness vector
# that attains the norm of x and has zero pairing with y.
d = bj_orthogonal(E11, E22)
print("E11 perp E22:", d.verdict, " margin:", f"{d.margin:+.2e}")
print("  witness pairing:", abs(d.certificate.pairing))
print("  certificate re-verifies:", verify_certificate(d, E11, E22))

# An element is never orthogonal to itself: lambda = -1 kills it, and the
# decision carries that minimizing scalar as the counter-certificate.
d = bj_orthogonal(E11, E11)
print("E11 perp E11:", d.verdict, " lambda* =", np.round(d.certificate.lam, 6),
      " achieved:", f"{d.certificate.achieved:.1e}")

# The strong form is not symmetric.  The identity tolerates any right
# multiple of a projection, but the projection can be wiped out by one.
d1 = strong_bj(I2, E11)
d2 = strong_bj(E11, I2)
print("I strongly perp P:", d1.verdict, " P strongly perp I:", d2.verdict)

# Asymmetry disappears after swapping across a direct sum: (I, P) and (P, I)
# are mutually strongly orthogonal even though the summands are not.
m = mutual_strong(direct_sum(I2, E11), direct_sum(E11, I2))
print("(I,P) mutually perp (P,I):", m.verdicts,
      " margins:", f"{m.forward.margin:+.1e}", f"{m.backward.margin:+.1e}")

# An independent brute-force oracle scans a polar grid of scalars and then
# descends locally; it reproduces the decisions above.
lam, achieved = brute_force_min_lambda(I2, E11, grid_n=120, refine_steps=40)
print("oracle on (I, E11): achieved", f"{achieved:.6f}", "(no drop possible)")
lam, achieved = brute_force_min_lambda(E11, strong_direction(E11, I2),
                                       grid_n=120, refine_steps=40)
print("oracle on the reduced (P, I) direction: achieved", f"{achieved:.1e}",
      "at lambda* =", np.round(lam, 6))

# Decisions near the tolerance are reported as indeterminate instead of
# being forced: a pair engineered to have a drop of exactly one tolerance
# lands in the tie band.
knife = Element([2], [np.diag([1.0, 1.0 - 1e-7])])
d = bj_orthogonal(knife, E11)
print("engineered knife-edge pair: verdict", d.verdict,
      " indeterminate:", d.indeterminate)
