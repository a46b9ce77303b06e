"""Polynomial x complex-Gaussian functions and first-order ladder operators.

A :class:`ModeFunction` is ``poly(Q) * exp(sigma Q^2 / 2)``. The family is
closed under multiplication by Q and under d/dQ, so ladder operators and
quadratic Hamiltonians act on it exactly, by coefficient arithmetic:

    d/dQ [p e^{sigma Q^2/2}] = (p' + sigma Q p) e^{sigma Q^2/2}
"""

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as P

from ._validation import COEFF_RTOL, PHASE_TOL
from .errors import NoDifferentialPart, NotTempered


def _clean_sigma(sigma):
    sigma = complex(sigma)
    if abs(sigma.real) <= PHASE_TOL * max(1.0, abs(sigma)):
        sigma = complex(0.0, sigma.imag)
    return sigma


@dataclass(frozen=True, eq=False)
class ModeFunction:
    coeffs: np.ndarray  # ascending powers of Q
    sigma: complex

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.coeffs, dtype=complex)).copy()
        if c.ndim != 1 or c.size == 0:
            raise ValueError("coeffs must be a non-empty 1-D sequence")
        c.setflags(write=False)
        sigma = _clean_sigma(self.sigma)
        if sigma.real > 0:
            raise NotTempered(sigma)
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "sigma", sigma)

    @property
    def class_tag(self):
        return "normalizable" if self.sigma.real < 0 else "tempered"

    @property
    def degree(self):
        c = np.abs(self.coeffs)
        top = c.max()
        if top == 0:
            return 0
        nz = np.nonzero(c > COEFF_RTOL * 1e-2 * top)[0]
        return int(nz[-1])

    def __call__(self, Q):
        Q = np.asarray(Q)
        return P.polyval(Q, self.coeffs) * np.exp(0.5 * self.sigma * Q * Q)

    def with_coeffs(self, coeffs):
        return ModeFunction(coeffs, self.sigma)

    def scale(self, alpha):
        return self.with_coeffs(alpha * self.coeffs)

    def __add__(self, other):
        _same_sigma(self, other)
        return self.with_coeffs(P.polyadd(self.coeffs, other.coeffs))

    def __sub__(self, other):
        _same_sigma(self, other)
        return self.with_coeffs(P.polysub(self.coeffs, other.coeffs))

    def times_q(self, power=1):
        return self.with_coeffs(np.concatenate([np.zeros(power, complex), self.coeffs]))

    def derivative(self):
        p = self.coeffs
        dp = P.polyder(p) if p.size > 1 else np.zeros(1, complex)
        return self.with_coeffs(P.polyadd(dp, self.sigma * P.polymulx(p)))

    def conjugate(self):
        return ModeFunction(np.conj(self.coeffs), np.conj(self.sigma))

    def to_dict(self):
        return {
            "polyCoeffs": [[float(z.real), float(z.imag)] for z in self.coeffs],
            "sigmaRe": float(self.sigma.real),
            "sigmaIm": float(self.sigma.imag),
            "classTag": self.class_tag,
        }


def _same_sigma(f, g):
    if abs(f.sigma - g.sigma) > PHASE_TOL * max(1.0, abs(f.sigma)):
        raise ValueError("functions carry different Gaussian exponents")


def coeffs_close(f, g, rtol=COEFF_RTOL):
    """Coefficient-wise equality relative to the larger coefficient scale."""
    _same_sigma(f, g)
    n = max(f.coeffs.size, g.coeffs.size)
    a = np.pad(f.coeffs, (0, n - f.coeffs.size))
    b = np.pad(g.coeffs, (0, n - g.coeffs.size))
    scale = max(np.abs(a).max(), np.abs(b).max(), 1e-300)
    return bool(np.max(np.abs(a - b)) <= rtol * scale)


def is_zero(f, reference_scale=1.0, rtol=COEFF_RTOL):
    return bool(np.max(np.abs(f.coeffs)) <= rtol * reference_scale)


@dataclass(frozen=True)
class LadderOp:
    """``f -> mu Q f + nu f'``."""

    mu: complex
    nu: complex

    def __post_init__(self):
        mu, nu = complex(self.mu), complex(self.nu)
        if mu == 0 and nu == 0:
            raise ValueError("ladder operator with mu = nu = 0")
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "nu", nu)

    def formal_adjoint(self):
        # (Q)^+ = Q, (d/dQ)^+ = -d/dQ
        return LadderOp(np.conj(self.mu), -np.conj(self.nu))

    def __call__(self, f):
        return apply_ladder(self, f)


def apply_ladder(L, f):
    """Exact action: ``(mu Q p + nu (p' + sigma Q p)) e^{sigma Q^2/2}``."""
    return f.times_q().scale(L.mu) + f.derivative().scale(L.nu)


def commutator_on(L1, L2, f):
    return apply_ladder(L1, apply_ladder(L2, f)) - apply_ladder(L2, apply_ladder(L1, f))


def vacuum_solve(L):
    """Solution of ``L f = 0``: ``exp(-(mu/nu) Q^2 / 2)`` with unit polynomial."""
    if L.nu == 0:
        raise NoDifferentialPart()
    sigma = _clean_sigma(-L.mu / L.nu)
    if sigma.real > 0:
        raise NotTempered(sigma)
    return ModeFunction([1.0], sigma)
