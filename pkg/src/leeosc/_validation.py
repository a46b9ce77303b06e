"""Tolerances and small input checks shared by the modules and estimators."""

import numpy as np

# Structure matching on commutator tables; entries are algebraic numbers in doubles.
TABLE_TOL = 1e-12
# Coefficient identities on polynomial x Gaussian objects, relative to coefficient scale.
COEFF_RTOL = 1e-12
# f(gamma, lambda) == 0 test.
BOUNDARY_TOL = 1e-12
# |Re sigma| below this (relative to |sigma|) counts as a pure phase Gaussian.
PHASE_TOL = 1e-12
BLOWUP_THRESHOLD = 1e12


def as_vector4(v, dtype=float, name="v"):
    arr = np.asarray(v, dtype=dtype)
    if arr.shape != (4,):
        raise ValueError(f"{name} must have exactly 4 entries, got shape {arr.shape}")
    return arr


def as_square(m, n, name="matrix", dtype=float):
    arr = np.asarray(m, dtype=dtype)
    if arr.shape != (n, n):
        raise ValueError(f"{name} must be {n}x{n}, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} has non-finite entries")
    return arr


def check_finite_scalar(x, name):
    x = float(x)
    if not np.isfinite(x):
        raise ValueError(f"{name} must be finite, got {x}")
    return x


def check_nonneg_int(n, name="n"):
    if isinstance(n, bool) or int(n) != n or n < 0:
        raise ValueError(f"{name} must be a non-negative integer, got {n!r}")
    return int(n)
