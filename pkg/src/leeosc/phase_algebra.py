"""Symplectic linear algebra on the phase space (x, y, p_x, p_y), hbar = 1.

A linear observable a.v is stored as its coefficient 4-vector. Two of them
commute to the c-number ``i a^T J b``; a linear change of variables
``V = S v`` therefore has commutator table ``i S J S^T``.
"""

from dataclasses import dataclass

import numpy as np

from ._validation import as_square, as_vector4

BASIS = ("x", "y", "p_x", "p_y")

J = np.array(
    [
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [-1.0, 0.0, 0.0, 0.0],
        [0.0, -1.0, 0.0, 0.0],
    ]
)
J.setflags(write=False)


@dataclass(frozen=True, eq=False)
class LinearForm:
    """Observable ``sum_k coeffs[k] * v_k`` over the basis (x, y, p_x, p_y)."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = as_vector4(self.coeffs, dtype=complex, name="coeffs")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def basis(cls, name):
        c = np.zeros(4, dtype=complex)
        c[BASIS.index(name)] = 1.0
        return cls(c)

    def __add__(self, other):
        return LinearForm(self.coeffs + other.coeffs)

    def __rmul__(self, alpha):
        return LinearForm(alpha * self.coeffs)


@dataclass(frozen=True, eq=False)
class QuadraticHamiltonian:
    """``H = 1/2 v^T h v`` with h real symmetric."""

    h: np.ndarray

    def __post_init__(self):
        h = as_square(self.h, 4, name="h")
        if not np.array_equal(h, h.T):
            raise ValueError("h must be symmetric")
        h = h.copy()
        h.setflags(write=False)
        object.__setattr__(self, "h", h)

    @classmethod
    def from_upper(cls, h):
        """Symmetrize from the upper triangle."""
        h = np.asarray(h, dtype=float)
        return cls(np.triu(h) + np.triu(h, 1).T)


@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    eigenvalues: np.ndarray  # descending
    S: np.ndarray  # rows are eigenvectors
    h_d: np.ndarray


def commutator(f, g):
    """[f, g] = i f^T J g for linear forms (c-number times identity)."""
    f = f.coeffs if isinstance(f, LinearForm) else as_vector4(f, complex)
    g = g.coeffs if isinstance(g, LinearForm) else as_vector4(g, complex)
    # f^T J g written pairwise so that swapping f and g flips the sign exactly
    return 1j * ((f[0] * g[2] - f[2] * g[0]) + (f[1] * g[3] - f[3] * g[1]))


def transform_commutators(S):
    """Commutator table ``T[j, k] = [V_j, V_k]`` for ``V = S v``.

    S need not be orthogonal or square-symplectic. The returned table is
    exactly antisymmetric.
    """
    S = as_square(S, 4, name="S")
    M = S @ J @ S.T
    M = 0.5 * (M - M.T)
    return 1j * M


def canonical_table():
    return transform_commutators(np.eye(4))


def eigendecompose(h):
    """Orthogonal diagonalization ``S h S^T = h_d`` with descending eigenvalues.

    Each row of S is signed so that its first largest-magnitude entry is
    positive. Inside a degenerate eigenspace the basis is whatever the
    symmetric solver returns.
    """
    if isinstance(h, QuadraticHamiltonian):
        h = h.h
    h = as_square(h, 4, name="h")
    if not np.allclose(h, h.T, rtol=0, atol=1e-14):
        raise ValueError("h must be symmetric")
    w, V = np.linalg.eigh(0.5 * (h + h.T))
    order = np.argsort(-w, kind="stable")
    w = w[order]
    S = V[:, order].T.copy()
    for row in S:
        k = int(np.argmax(np.abs(row)))
        if row[k] < 0:
            row *= -1.0
    return EigenDecomposition(eigenvalues=w, S=S, h_d=np.diag(w))


def quad_eval(h, v):
    if isinstance(h, QuadraticHamiltonian):
        h = h.h
    v = as_vector4(v)
    return 0.5 * float(v @ np.asarray(h) @ v)
