"""
Center-of-gravity defuzzification
=================================

Closed-form centroids for triangles and trapezoids, cross-checked by
numerical quadrature of the membership function.
"""

import numpy as np

from fuzzgrade import (
    PiecewiseLinearMembership,
    TrapezoidalFN,
    TriangularFN,
    cog,
    cog_numeric,
)

shapes = [
    TriangularFN(63.53, 71.74, 83.47),
    TriangularFN(65.88, 72.63, 79.53),
    TrapezoidalFN(47, 64.2, 79, 86.6),
    TrapezoidalFN(47.8, 65.3, 78.1, 85.9),
]

print(f"{'fuzzy number':<32} {'closed x':>10} {'quadrature x':>13} {'y':>7}")
for fn in shapes:
    closed = cog(fn)
    numeric = cog_numeric(PiecewiseLinearMembership.from_fn(fn))
    print(f"{str(fn.entries):<32} {closed.x:10.4f} {numeric.x:13.4f} {closed.y:7.4f}")

# Random shapes: the two routes agree to rounding error.
rng = np.random.default_rng(0)
worst = 0.0
for row in np.sort(rng.uniform(0, 100, size=(2000, 4)), axis=1):
    fn = TrapezoidalFN(*row)
    c, n = cog(fn), cog_numeric(PiecewiseLinearMembership.from_fn(fn), steps=2000)
    worst = max(worst, abs(c.x - n.x), abs(c.y - n.y))
print(f"largest disagreement over 2000 random trapezoids: {worst:.1e}")

# Any piecewise-linear membership works with the quadrature route, too.
skewed = PiecewiseLinearMembership([(0, 0), (10, 0.4), (30, 1), (35, 0)])
print("skewed shape centroid:", cog_numeric(skewed))
