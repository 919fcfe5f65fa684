"""
Arithmetic with triangular and trapezoidal fuzzy numbers
========================================================

Sums, differences and scalar operations act on the defining entries.
We check each closed form against interval arithmetic on alpha-cuts.
"""

from fuzzgrade import TrapezoidalFN, TriangularFN, alpha_cut, compare, membership

# "about 2" and "about 3"
A = TriangularFN(1, 2, 3)
B = TriangularFN(2, 3, 4)

print("A + B  =", (A + B).entries)
print("B - A  =", (B - A).entries)
print("A - A  =", (A - A).entries, " (not the crisp zero)")
print("-2 * A =", (-2 * A).entries, " (entries reverse for negative scalars)")
print("10 + A =", (10 + A).entries)

# The cut of a sum is the interval sum of the cuts.
for alpha in (0.0, 0.5, 1.0):
    lhs = alpha_cut(A + B, alpha)
    rhs = alpha_cut(A, alpha) + alpha_cut(B, alpha)
    print(f"alpha={alpha}: cut(A+B)=[{lhs.lo}, {lhs.hi}]  cut(A)+cut(B)=[{rhs.lo}, {rhs.hi}]")

# Triangles promote to trapezoids when the two shapes meet.
P = TrapezoidalFN(0, 1, 2, 3)
print("A + P  =", A + P)

# Membership and the partial order
print("membership of 2.5 in A:", membership(A, 2.5))
print("A vs B:", compare(A, B).value)
print("(63.53, 71.74, 83.47) vs (65.88, 72.63, 79.53):",
      compare(TriangularFN(63.53, 71.74, 83.47), TriangularFN(65.88, 72.63, 79.53)).value)
