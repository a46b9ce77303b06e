"""Canonical pairs from the diagonal (tilde) variables.

The tilde variables ``V~ = S v`` diagonalize H but in general do not obey
canonical commutation relations. Two routes turn them into canonical pairs
(X, Y, P_X, P_Y):

* a Bopp shift ``X~ = a1 X + b1 P_Y, Y~ = a2 Y + b2 P_X,
  P~_X = a3 P_X + b3 Y, P~_Y = a4 P_Y + b4 X`` with a1 = a4 = 0, for tables
  with non-commuting positions and momenta;
* a pure relabeling for tables without cross commutators: every pair with
  [Q~, P~] = -i has its position and momentum swapped, e.g.
  ``X = P~_X, P_X = X~, Y = Y~, P_Y = P~_Y``.

Both are encoded as a matrix R with ``V~ = R V``; substituting into the
diagonal Hamiltonian gives ``H = 1/2 V^T (R^T h_d R) V``.
"""

from dataclasses import dataclass

import numpy as np

from ._validation import TABLE_TOL, as_square
from .errors import (
    AnsatzInadmissible,
    DecouplingFailed,
    DegenerateShift,
    NotDirectlyCanonical,
)
from .phase_algebra import canonical_table, transform_commutators

# index pairs of the commutator table, tilde ordering (X~, Y~, P~X, P~Y)
_CROSS = ((0, 1), (0, 3), (1, 2), (2, 3))

RELABEL_MAP = {"X": "P~_X", "P_X": "X~", "Y": "Y~", "P_Y": "P~_Y"}
_RELABEL_R = np.array(
    [
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ]
)


@dataclass(frozen=True)
class BoppSolution:
    a1: float
    a2: float
    a3: float
    a4: float
    b1: float
    b2: float
    b3: float
    b4: float

    @property
    def free_params(self):
        return (self.b3, self.b4)

    def matrix(self):
        """R with ``(X~, Y~, P~_X, P~_Y) = R (X, Y, P_X, P_Y)``."""
        return np.array(
            [
                [self.a1, 0.0, 0.0, self.b1],
                [0.0, self.a2, self.b2, 0.0],
                [0.0, self.b3, self.a3, 0.0],
                [self.b4, 0.0, 0.0, self.a4],
            ]
        )


@dataclass(frozen=True)
class DecoupledMode:
    """``1/2 (p_coeff P^2 + q_coeff Q^2)``."""

    p_coeff: float
    q_coeff: float

    @property
    def regime(self):
        p, q = self.p_coeff, self.q_coeff
        if p > 0 and q > 0:
            return "standard"
        if p * q < 0:
            return "inverted"
        return "degenerate"

    @property
    def frequency(self):
        """sqrt(p q) for standard modes, Omega = sqrt(-q/p) for inverted ones."""
        if self.regime == "standard":
            return float(np.sqrt(self.p_coeff * self.q_coeff))
        if self.regime == "inverted":
            return float(np.sqrt(-self.q_coeff / self.p_coeff))
        raise ValueError(f"mode {self} has no frequency")


@dataclass(frozen=True)
class DecoupledHamiltonian:
    """``H = H_X + relative_sign * H_Y``."""

    mode_x: DecoupledMode
    mode_y: DecoupledMode
    relative_sign: int = 1


def _t(table):
    """Real coefficients t with T = i t; rejects tables with real parts."""
    T = as_square(table, 4, "table", dtype=complex)
    if np.max(np.abs(T.real)) > TABLE_TOL:
        raise ValueError("commutator table must be purely imaginary")
    return T.imag


def verify_canonical(table):
    return bool(np.max(np.abs(np.asarray(table) - canonical_table())) <= TABLE_TOL)


def solve_bopp(table, b3, b4):
    """Coefficients of the Bopp ansatz reproducing ``table`` from canonical pairs.

    With a1 = a4 = 0 the four nonzero commutators fix the dependent
    coefficients in closed form::

        b1 = -t13 / b3,  a2 = t12 b3 / t13,  b2 = -t24 / b4,  a3 = -t34 / b4

    where ``[V~_j, V~_k] = i t_jk``.
    """
    b3, b4 = float(b3), float(b4)
    if b3 == 0.0 or b4 == 0.0:
        raise DegenerateShift("b3 and b4 must be nonzero")
    t = _t(table)
    if abs(t[0, 3]) > TABLE_TOL or abs(t[1, 2]) > TABLE_TOL:
        raise AnsatzInadmissible("[X~, P~_Y] and [Y~, P~_X] must vanish")
    t12, t13, t24, t34 = t[0, 1], t[0, 2], t[1, 3], t[2, 3]
    if abs(t13) <= TABLE_TOL or abs(t24) <= TABLE_TOL:
        raise AnsatzInadmissible("[X~, P~_X] and [Y~, P~_Y] must be nonzero")
    if abs(t12) <= TABLE_TOL and abs(t34) <= TABLE_TOL:
        raise AnsatzInadmissible("positions and momenta already commute; no shift to make")
    return BoppSolution(
        a1=0.0,
        a2=t12 * b3 / t13,
        a3=-t34 / b4,
        a4=0.0,
        b1=-t13 / b3,
        b2=-t24 / b4,
        b3=b3,
        b4=b4,
    )


def bopp_table(sol):
    """Commutators of the tilde variables implied by the ansatz."""
    return transform_commutators(sol.matrix())


def substitute(R, h_d):
    """Quadratic-form matrix of H in the new variables and its largest cross term."""
    h_d = as_square(h_d, 4, "h_d")
    G = R.T @ h_d @ R
    off = G - np.diag(np.diag(G))
    # couplings between the (X, P_X) and (Y, P_Y) sectors, and X-P_X mixing
    return G, float(np.max(np.abs(off))) if off.size else 0.0


def _modes(G):
    return (
        DecoupledMode(p_coeff=float(G[2, 2]), q_coeff=float(G[0, 0])),
        DecoupledMode(p_coeff=float(G[3, 3]), q_coeff=float(G[1, 1])),
    )


def decouple_case1(h_d, bopp):
    G, cross = substitute(bopp.matrix(), h_d)
    scale = max(1.0, float(np.max(np.abs(np.diag(G)))))
    if cross > TABLE_TOL * scale:
        raise DecouplingFailed(cross)
    mx, my = _modes(G)
    return DecoupledHamiltonian(mx, my, 1)


def _check_relabel_structure(table):
    T = as_square(table, 4, "table", dtype=complex)
    for j, k in _CROSS:
        if abs(T[j, k]) > TABLE_TOL:
            raise NotDirectlyCanonical(f"cross commutator [{j},{k}] = {T[j, k]}")
    if abs(T[0, 2] + 1j) > TABLE_TOL or abs(T[1, 3] - 1j) > TABLE_TOL:
        raise NotDirectlyCanonical("need [X~, P~_X] = -i and [Y~, P~_Y] = +i")


def relabel_case2(table, h_d):
    """Swap X~ and P~_X; a negative momentum coefficient on Y flips the sign of H_Y."""
    _check_relabel_structure(table)
    G, cross = substitute(_RELABEL_R, h_d)
    if cross > TABLE_TOL * max(1.0, float(np.max(np.abs(G)))):
        raise DecouplingFailed(cross)
    return _signed(*_modes(G))


def relabel_matrix():
    return _RELABEL_R.copy()


def relabel(table, h_d):
    """Relabeling for any table with vanishing cross commutators and [Q~, P~] = +/- i.

    Each pair whose commutator is -i gets position and momentum swapped; pairs
    at +i are kept. Returns (DecoupledHamiltonian, R, mapping).
    """
    T = as_square(table, 4, "table", dtype=complex)
    for j, k in _CROSS:
        if abs(T[j, k]) > TABLE_TOL:
            raise NotDirectlyCanonical(f"cross commutator [{j},{k}] = {T[j, k]}")
    R = np.zeros((4, 4))
    mapping = {}
    for pos, mom, q_name, p_name, qt, pt in ((0, 2, "X", "P_X", "X~", "P~_X"), (1, 3, "Y", "P_Y", "Y~", "P~_Y")):
        c = T[pos, mom]
        if abs(c - 1j) <= TABLE_TOL:
            R[pos, pos], R[mom, mom] = 1.0, 1.0
            mapping[q_name], mapping[p_name] = qt, pt
        elif abs(c + 1j) <= TABLE_TOL:
            R[pos, mom], R[mom, pos] = 1.0, 1.0
            mapping[q_name], mapping[p_name] = pt, qt
        else:
            raise NotDirectlyCanonical(f"[{qt}, {pt}] = {c}, expected +/- i")
    G, cross = substitute(R, h_d)
    if cross > TABLE_TOL * max(1.0, float(np.max(np.abs(G)))):
        raise DecouplingFailed(cross)
    return _signed(*_modes(G)), R, mapping


def _signed(mx, my):
    if mx.p_coeff < 0:
        raise NotDirectlyCanonical("X mode has negative kinetic coefficient")
    sign = 1
    if my.p_coeff < 0:
        my = DecoupledMode(-my.p_coeff, -my.q_coeff)
        sign = -1
    return DecoupledHamiltonian(mx, my, sign)


def branch_for(table):
    """Which route applies to a commutator table: 'relabel', 'bopp' or 'unsupported'."""
    T = as_square(table, 4, "table", dtype=complex)
    if all(abs(T[j, k]) <= TABLE_TOL for j, k in _CROSS) and all(
        min(abs(T[a, b] - 1j), abs(T[a, b] + 1j)) <= TABLE_TOL for a, b in ((0, 2), (1, 3))
    ):
        return "relabel"
    try:
        solve_bopp(table, 1.0, 1.0)
        return "bopp"
    except (AnsatzInadmissible, ValueError):
        return "unsupported"
