"""Ladder operators, eigenfunctions and spectra of the decoupled modes.

Standard modes ``1/2 (A P^2 + B Q^2)`` use bosonic operators and Hermite
functions. Inverted modes use a pseudo-bosonic pair (A, B) with [A, B] = 1
but B != A^+; their vacuum is a pure-phase Gaussian, so the excited states
are tempered distributions rather than L^2 functions.
"""

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import hermite as H

from ._validation import check_nonneg_int
from .errors import NotStandardMode
from .modefunc import LadderOp, ModeFunction, apply_ladder, vacuum_solve
from .quantizer import DecoupledMode

E_IPI4 = complex(1.0, 1.0) / math.sqrt(2.0)
E_MIPI4 = complex(1.0, -1.0) / math.sqrt(2.0)


@dataclass(frozen=True)
class EnergyLevel:
    n: int
    m: int
    value: complex
    regime: str  # "real" | "complex"

    def __post_init__(self):
        v = complex(self.value)
        if self.regime == "real":
            v = complex(v.real, 0.0)
        object.__setattr__(self, "value", v)

    def to_dict(self):
        return {
            "n": self.n,
            "m": self.m,
            "re": float(self.value.real),
            "im": float(self.value.imag),
            "regime": self.regime,
        }


def _standard(mode):
    if mode.regime != "standard":
        raise NotStandardMode(f"p_coeff={mode.p_coeff}, q_coeff={mode.q_coeff}")
    return mode.p_coeff, mode.q_coeff


def standard_ladder(mode):
    """Bosonic pair for ``1/2 (A P^2 + B Q^2)``: ``a = (alpha Q + alpha^-1 d/dQ)/sqrt 2``.

    alpha = (B/A)^(1/4) and omega = sqrt(AB), so that H = omega (a^+ a + 1/2).
    """
    A, B = _standard(mode)
    alpha = (B / A) ** 0.25
    r = 1.0 / math.sqrt(2.0)
    a = LadderOp(r * alpha, r / alpha)
    adag = LadderOp(r * alpha, -r / alpha)
    return a, adag, math.sqrt(A * B)


def hermite(n, x):
    """Physicists' Hermite polynomial by the three-term recurrence."""
    n = check_nonneg_int(n)
    x = np.asarray(x, dtype=float)
    h_prev, h = np.ones_like(x), 2.0 * x
    if n == 0:
        return h_prev if h_prev.ndim else float(h_prev)
    for k in range(1, n):
        h_prev, h = h, 2.0 * x * h - 2.0 * k * h_prev
    return h if h.ndim else float(h)


def eigenfunction_standard(mode, n):
    n = check_nonneg_int(n)
    A, B = _standard(mode)
    w = math.sqrt(B / A)  # alpha^2
    alpha = math.sqrt(w)
    c = H.herm2poly([0.0] * n + [1.0]) * alpha ** np.arange(n + 1)
    norm = (w / math.pi) ** 0.25 / math.sqrt(2.0**n * math.factorial(n))
    return ModeFunction(norm * c, -w)


def pseudoboson_pair(omega_sq):
    """``A, B = (e^{i pi/4} Omega Q +/- e^{-i pi/4} d/dQ) / sqrt(2 Omega)``."""
    if not omega_sq > 0:
        raise ValueError(f"Omega^2 must be positive, got {omega_sq}")
    omega = math.sqrt(omega_sq)
    c = 1.0 / math.sqrt(2.0 * omega)
    A = LadderOp(c * E_IPI4 * omega, c * E_MIPI4)
    B = LadderOp(c * E_IPI4 * omega, -c * E_MIPI4)
    return A, B


def conjugate_op(L):
    """Operator acting as ``conj(L conj(f))``; Q and d/dQ are real."""
    return LadderOp(np.conj(L.mu), np.conj(L.nu))


def excited_pseudo(B, eta0, n):
    n = check_nonneg_int(n)
    f = eta0
    for _ in range(n):
        f = apply_ladder(B, f)
    return f.scale(1.0 / math.sqrt(math.factorial(n)))


def number_apply(A, B, f):
    """N f with N = B A."""
    return apply_ladder(B, apply_ladder(A, f))


def hamiltonian_apply(mode, f):
    """``1/2 (p_coeff (-d^2/dQ^2) + q_coeff Q^2) f`` on polynomial x Gaussian."""
    d2 = f.derivative().derivative()
    return d2.scale(-0.5 * mode.p_coeff) + f.times_q(2).scale(0.5 * mode.q_coeff)


def inverted_family(mode, branch=+1):
    """Pseudo-bosons and vacuum for an inverted mode.

    ``branch=+1`` is the pair above: H_mode eta_n = i p Omega (n + 1/2) eta_n.
    ``branch=-1`` is its complex conjugate, whose eigenvalues are the
    conjugates, -i p Omega (n + 1/2).
    """
    if mode.regime != "inverted":
        raise ValueError("not an inverted mode")
    A, B = pseudoboson_pair(-mode.q_coeff / mode.p_coeff)
    if branch < 0:
        A, B = conjugate_op(A), conjugate_op(B)
    return A, B, vacuum_solve(A)


def mode_eigenvalue(mode, k, branch=+1):
    if mode.regime == "standard":
        return complex(mode.frequency * (k + 0.5))
    if mode.regime == "inverted":
        return branch * 1j * mode.p_coeff * mode.frequency * (k + 0.5)
    raise ValueError(f"mode {mode} has no ladder spectrum")


def _y_branch(decoupled):
    # choose the inverted family whose eigenvalue enters H with +i
    return 1 if decoupled.relative_sign > 0 else -1


def spectrum(decoupled, n, m):
    """E_{n,m} of ``H = H_X +/- H_Y``.

    For an inverted Y mode the generalized eigenstates are taken from the
    pseudo-boson family that makes the Y contribution ``+i p Omega (m + 1/2)``
    for either relative sign.
    """
    n, m = check_nonneg_int(n, "n"), check_nonneg_int(m, "m")
    mx, my = decoupled.mode_x, decoupled.mode_y
    _standard(mx)
    ex = mx.frequency * (n + 0.5)
    if my.regime == "standard":
        return EnergyLevel(n, m, ex + decoupled.relative_sign * my.frequency * (m + 0.5), "real")
    if my.regime == "inverted":
        b = _y_branch(decoupled)
        ey = decoupled.relative_sign * mode_eigenvalue(my, m, branch=b)
        return EnergyLevel(n, m, ex + ey, "complex")
    raise NotStandardMode("Y mode is degenerate")


def mode_eigenfunction(mode, k, branch=+1):
    if mode.regime == "standard":
        return eigenfunction_standard(mode, k)
    _, B, eta0 = inverted_family(mode, branch)
    return excited_pseudo(B, eta0, k)


@dataclass(frozen=True, eq=False)
class TensorState:
    """phi_{n,m}(X, Y) = xi_n(X) eta_m(Y) with its energy."""

    xi: ModeFunction
    eta: ModeFunction
    level: EnergyLevel

    def __call__(self, X, Y):
        return self.xi(X) * self.eta(Y)

    def to_dict(self):
        return {"xi": self.xi.to_dict(), "eta": self.eta.to_dict(), "level": self.level.to_dict()}


def tensor_level(xi, eta, level):
    return TensorState(xi, eta, level)


def generalized_eigenstate(decoupled, n, m):
    level = spectrum(decoupled, n, m)
    xi = eigenfunction_standard(decoupled.mode_x, n)
    eta = mode_eigenfunction(decoupled.mode_y, m, branch=_y_branch(decoupled))
    return TensorState(xi, eta, level)


def eigen_residual(decoupled, state):
    """Relative coefficient residual of ``H phi - E phi`` on a product state.

    H acts factorwise: ``H(xi eta) = (H_X xi) eta + s xi (H_Y eta)``. The X
    factor must be an eigenfunction with energy omega_X (n + 1/2); the Y factor
    must carry the remainder of E.
    """
    ex = mode_eigenvalue(decoupled.mode_x, state.level.n)
    ey = state.level.value - ex
    rx = hamiltonian_apply(decoupled.mode_x, state.xi) - state.xi.scale(ex)
    ry = hamiltonian_apply(decoupled.mode_y, state.eta).scale(decoupled.relative_sign) - state.eta.scale(ey)

    def rel(r, f, e):
        scale = max(np.abs(f.coeffs).max() * max(1.0, abs(e)), 1e-300)
        return float(np.abs(r.coeffs).max() / scale)

    return max(rel(rx, state.xi, ex), rel(ry, state.eta, ey))


def truncated_matrix(mode, N):
    """``1/2 (p P^2 + q Q^2)`` in the first N unit-oscillator number states."""
    if int(N) != N or N < 2:
        raise ValueError(f"N must be an integer >= 2, got {N}")
    N = int(N)
    c = np.diag(np.sqrt(np.arange(1, N, dtype=float)), k=1)
    cd = c.T
    Q = (c + cd) / math.sqrt(2.0)
    Pm = 1j * (cd - c) / math.sqrt(2.0)
    return 0.5 * (mode.p_coeff * (Pm @ Pm) + mode.q_coeff * (Q @ Q))


def truncated_levels(mode, N, k=3):
    return np.linalg.eigvalsh(truncated_matrix(mode, N))[:k]
