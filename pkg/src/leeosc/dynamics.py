"""Classical linear oscillator systems and a fixed-step RK4 integrator."""

import math
from dataclasses import dataclass

import numpy as np

from ._validation import BLOWUP_THRESHOLD, as_square
from .errors import BlowUpError, DegenerateMassMatrix
from .phase_algebra import J, QuadraticHamiltonian


@dataclass(frozen=True, eq=False)
class LinearSystem:
    """``M qddot + G qdot + K q = 0`` for q = (x, y)."""

    M: np.ndarray
    G: np.ndarray
    K: np.ndarray

    def __post_init__(self):
        for name in ("M", "G", "K"):
            a = as_square(getattr(self, name), 2, name).copy()
            a.setflags(write=False)
            object.__setattr__(self, name, a)
        if abs(np.linalg.det(self.M)) < 1e-14:
            raise DegenerateMassMatrix()

    def first_order_matrix(self):
        """A with d/dt (q, qdot) = A (q, qdot)."""
        Minv = np.linalg.inv(self.M)
        A = np.zeros((4, 4))
        A[:2, 2:] = np.eye(2)
        A[2:, :2] = -Minv @ self.K
        A[2:, 2:] = -Minv @ self.G
        return A

    def exponents(self):
        """Eigenvalues of the first-order matrix (growth/oscillation diagnostic)."""
        return np.linalg.eigvals(self.first_order_matrix())


@dataclass(frozen=True)
class TrajectoryState:
    t: float
    q: tuple
    qdot: tuple

    def as_vector(self):
        return np.array([*self.q, *self.qdot], dtype=float)


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Uniformly sampled states; ``y[k] = (x, y, xdot, ydot)`` at ``t[k]``."""

    t: np.ndarray
    y: np.ndarray

    def __len__(self):
        return len(self.t)

    def __getitem__(self, k):
        row = self.y[k]
        return TrajectoryState(float(self.t[k]), (row[0], row[1]), (row[2], row[3]))

    def __iter__(self):
        return (self[k] for k in range(len(self)))

    @property
    def dt(self):
        return float(self.t[1] - self.t[0])


def lee_system(params):
    g, l = params.gamma, params.lam
    return LinearSystem(
        M=np.eye(2),
        G=np.array([[0.0, g], [-g, 0.0]]),
        K=np.array([[1.0, l], [l, 1.0]]),
    )


def bateman_system(gamma):
    return LinearSystem(M=np.eye(2), G=np.diag([gamma, -gamma]), K=np.eye(2))


def generalized_system(gamma, A, B):
    """Bateman system with cross couplings -2B(m yddot + k y), -2A(m xddot + k x)."""
    if 4.0 * A * B == 1.0:
        raise DegenerateMassMatrix()
    MK = np.array([[1.0, 2.0 * B], [2.0 * A, 1.0]])
    return LinearSystem(M=MK, G=np.diag([gamma, -gamma]), K=MK)


def _grid(dt, T):
    if not (dt > 0 and T > 0 and dt < T):
        raise ValueError(f"need 0 < dt < T, got dt={dt}, T={T}")
    n = math.ceil(T / dt - 1e-9)
    # step shrunk to T/n so the last sample lands on T and spacing stays uniform
    return n, T / n


def rk4_linear(A, s0, dt, T):
    """Classic RK4 for ``s' = A s``. Returns (t, states) with n + 1 rows."""
    A = np.asarray(A, dtype=float)
    n, h = _grid(dt, T)
    out = np.empty((n + 1, len(s0)))
    s = np.asarray(s0, dtype=float).copy()
    out[0] = s
    for k in range(1, n + 1):
        k1 = A @ s
        k2 = A @ (s + 0.5 * h * k1)
        k3 = A @ (s + 0.5 * h * k2)
        k4 = A @ (s + h * k3)
        s = s + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not np.all(np.abs(s) <= BLOWUP_THRESHOLD):
            raise BlowUpError(k * h)
        out[k] = s
    return np.arange(n + 1) * h, out


def integrate(sys, s0, dt=1e-3, T=100.0):
    if isinstance(s0, TrajectoryState):
        s0 = s0.as_vector()
    t, y = rk4_linear(sys.first_order_matrix(), s0, dt, T)
    return Trajectory(t=t, y=y)


def p_lambda(state, lam):
    """``1/2 (xdot^2 + ydot^2) + 1/2 (x^2 + y^2) + lambda x y``; vectorizes over rows."""
    if isinstance(state, TrajectoryState):
        state = state.as_vector()
    s = np.asarray(state, dtype=float)
    x, y, xd, yd = s[..., 0], s[..., 1], s[..., 2], s[..., 3]
    return 0.5 * (xd * xd + yd * yd) + 0.5 * (x * x + y * y) + lam * x * y


def hamilton_flow(h, v0, dt=1e-3, T=100.0):
    """RK4 on ``vdot = J h v``; the trajectory rows are (x, y, p_x, p_y)."""
    if isinstance(h, QuadraticHamiltonian):
        h = h.h
    t, v = rk4_linear(J @ np.asarray(h, dtype=float), v0, dt, T)
    return Trajectory(t=t, y=v)


def energy_along(h, v):
    if isinstance(h, QuadraticHamiltonian):
        h = h.h
    v = np.asarray(v, dtype=float)
    return 0.5 * np.einsum("ti,ij,tj->t", v, np.asarray(h), v)
