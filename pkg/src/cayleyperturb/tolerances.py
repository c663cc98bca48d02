"""Numerical tolerances used on the floating-point backend.

Rational computations are exact and never consult these values.
"""

# max |S + S^T| accepted for a skew-symmetric float matrix (scaled by max(1, |S|_max))
TAU_SKEW = 1e-12

# a float LU pivot below TAU_PIVOT_REL * |A|_max counts as zero
TAU_PIVOT_REL = 1e-13

# residual bound for solve: |AX - B|_max <= TAU_SOLVE * |A|_max * |X|_max
TAU_SOLVE = 1e-10

# max |R^T R - I| accepted for an orthogonal float matrix
TAU_ORTH = 1e-8

# min_singular_proxy(I + R) below this means R admits eigenvalue -1
TAU_CAYLEY = 1e-9

# reconstruction tolerance for normal forms and representations
TAU_NF = 1e-9

# relative size below which a float sign-assignment determinant is suspect
TAU_FACT_E = 1e-12

# radius for grouping cos(theta) values of one eigenvalue cluster
CLUSTER_RADIUS = 1e-7

# sin(theta) at or below this is treated as a fixed (+1 / -1) direction
TAU_FIXED = 1e-10

# Jacobi sweeps stop when the off-diagonal mass falls below this (relative)
JACOBI_TOL = 1e-15
JACOBI_MAX_SWEEPS = 100
