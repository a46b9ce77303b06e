"""Lee coupled-oscillator model: Hamiltonian matrix, regions, Lagrangian mechanics.

Units: m = k = hbar = 1 throughout; only the damping-like coupling gamma and
the position coupling lambda vary.
"""

import math
from dataclasses import dataclass

import numpy as np

from ._validation import BOUNDARY_TOL, as_square, check_finite_scalar
from .dynamics import LinearSystem
from .errors import DegenerateKineticTerm
from .phase_algebra import QuadraticHamiltonian, eigendecompose

GAMMA_MINUS = 0.5 * (-1.0 - math.sqrt(5.0))
GAMMA_PLUS = 0.5 * (-1.0 + math.sqrt(5.0))

CASE_LABELS = ("Case1", "Case2", "Interior", "Boundary")


@dataclass(frozen=True)
class ModelParams:
    gamma: float
    lam: float

    def __post_init__(self):
        object.__setattr__(self, "gamma", check_finite_scalar(self.gamma, "gamma"))
        object.__setattr__(self, "lam", check_finite_scalar(self.lam, "lambda"))


@dataclass(frozen=True)
class RegionClass:
    f: float
    det_sign: str  # "positive" | "negative" | "zero"
    neg_count: int
    case_label: str


@dataclass(frozen=True, eq=False)
class QuadraticLagrangian:
    """``L = 1/2 qdot^T M qdot + qdot^T C q - 1/2 q^T K q`` with q = (x, y)."""

    M: np.ndarray
    C: np.ndarray
    K: np.ndarray

    def __post_init__(self):
        M = as_square(self.M, 2, "M")
        C = as_square(self.C, 2, "C")
        K = as_square(self.K, 2, "K")
        if not np.array_equal(M, M.T) or not np.array_equal(K, K.T):
            raise ValueError("M and K must be symmetric")
        for name, a in (("M", M), ("C", C), ("K", K)):
            a = a.copy()
            a.setflags(write=False)
            object.__setattr__(self, name, a)


def _params(params):
    if isinstance(params, ModelParams):
        return params
    gamma, lam = params
    return ModelParams(gamma, lam)


def build_h(params):
    p = _params(params)
    g, l = p.gamma, p.lam
    h = np.array(
        [
            [2.0, l, 0.0, -1.0],
            [l, 2.0 + g, -(1.0 + g), 0.0],
            [0.0, -(1.0 + g), 1.0, 0.0],
            [-1.0, 0.0, 0.0, 1.0],
        ]
    )
    return QuadraticHamiltonian(h)


def trace_det(h):
    if isinstance(h, QuadraticHamiltonian):
        h = h.h
    h = np.asarray(h, dtype=float)
    return float(np.trace(h)), float(np.linalg.det(h))


def closed_form_trace_det(params):
    p = _params(params)
    return 6.0 + p.gamma, 1.0 - p.gamma - p.gamma**2 - p.lam**2


def det_polynomial(gamma, lam):
    """f(gamma, lambda) = det h = 1 - gamma - gamma^2 - lambda^2 (vectorizes)."""
    return 1.0 - gamma - gamma * gamma - lam * lam


def classify_region(params):
    """Sign of det h, number of negative eigenvalues, and the region label.

    Points with 1 - gamma - gamma^2 < 0 and f < 0 are Case1; points with
    gamma in [gamma_-, gamma_+] and f < 0 are Case2 (the endpoints, where the
    strict inequalities of the usual description meet, go to Case2).
    """
    p = _params(params)
    f = float(det_polynomial(p.gamma, p.lam))
    if abs(f) <= BOUNDARY_TOL:
        det_sign, label = "zero", "Boundary"
    elif f > 0:
        det_sign, label = "positive", "Interior"
    else:
        det_sign = "negative"
        label = "Case1" if 1.0 - p.gamma - p.gamma**2 < 0 else "Case2"
    eig = eigendecompose(build_h(p)).eigenvalues
    if det_sign == "zero":
        # one eigenvalue sits at 0 up to rounding; do not count it
        scale = max(1.0, float(np.max(np.abs(eig))))
        neg = int(np.sum(eig < -1e-10 * scale))
    else:
        neg = int(np.sum(eig < 0))
    return RegionClass(f=f, det_sign=det_sign, neg_count=neg, case_label=label)


def lee_lagrangian(params):
    p = _params(params)
    return QuadraticLagrangian(
        M=np.eye(2),
        C=np.array([[0.0, 1.0 + p.gamma], [1.0, 0.0]]),
        K=np.array([[1.0, p.lam], [p.lam, 1.0]]),
    )


def bateman_lagrangian(gamma):
    """``L = xdot ydot + gamma/2 (x ydot - xdot y) - x y`` (m = k = 1)."""
    g = float(gamma)
    return QuadraticLagrangian(
        M=np.array([[0.0, 1.0], [1.0, 0.0]]),
        C=np.array([[0.0, -0.5 * g], [0.5 * g, 0.0]]),
        K=np.array([[0.0, 1.0], [1.0, 0.0]]),
    )


def euler_lagrange(lag):
    """Equations of motion ``M qddot + (C - C^T) qdot + K q = 0``."""
    if abs(np.linalg.det(lag.M)) < 1e-14:
        raise DegenerateKineticTerm()
    return LinearSystem(M=lag.M, G=lag.C - lag.C.T, K=lag.K)


def legendre_momenta(params, state):
    """Map (x, y, xdot, ydot) to phase-space coordinates (x, y, p_x, p_y)."""
    p = _params(params)
    x, y, xd, yd = (float(s) for s in state)
    return np.array([x, y, xd + (1.0 + p.gamma) * y, yd + x])


def velocities_from_momenta(params, v):
    """Inverse of :func:`legendre_momenta`."""
    p = _params(params)
    x, y, px, py = (float(s) for s in v)
    return np.array([x, y, px - (1.0 + p.gamma) * y, py - x])


def legendre_hamiltonian(lag):
    """Hamiltonian matrix obtained from ``lag`` by a Legendre transform.

    With p = M qdot + C q the result is ``1/2 v^T h v`` for
    h = [[C^T M^-1 C + K, -C^T M^-1], [-M^-1 C, M^-1]].

    For the Lee Lagrangian this differs from :func:`build_h` in the y-y entry,
    (1+gamma)^2 + 1 against 2 + gamma; the two agree at gamma = 0 and -1.
    """
    if abs(np.linalg.det(lag.M)) < 1e-14:
        raise DegenerateKineticTerm()
    Mi = np.linalg.inv(lag.M)
    C = lag.C
    top = C.T @ Mi @ C + lag.K
    h = np.block([[top, -C.T @ Mi], [-Mi @ C, Mi]])
    return QuadraticHamiltonian(0.5 * (h + h.T))
