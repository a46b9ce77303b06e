import math

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from leeosc.dynamics import bateman_system, lee_system
from leeosc.errors import DegenerateKineticTerm
from leeosc.model import (
    GAMMA_MINUS,
    GAMMA_PLUS,
    ModelParams,
    QuadraticLagrangian,
    bateman_lagrangian,
    build_h,
    classify_region,
    det_polynomial,
    euler_lagrange,
    lee_lagrangian,
    legendre_hamiltonian,
    legendre_momenta,
    trace_det,
    velocities_from_momenta,
)

coupling = st.floats(-3, 3, allow_nan=False)


def test_build_h_case1():
    expected = [[2, 1 / 3, 0, -1], [1 / 3, 1, 0, 0], [0, 0, 1, 0], [-1, 0, 0, 1]]
    assert np.array_equal(build_h((-1.0, 1 / 3)).h, np.array(expected))


def test_build_h_case2():
    expected = [[2, 1, 0, -1], [1, 3, -2, 0], [0, -2, 1, 0], [-1, 0, 0, 1]]
    assert np.array_equal(build_h((1.0, 1.0)).h, np.array(expected, dtype=float))


def test_build_h_origin():
    expected = [[2, 0, 0, -1], [0, 2, -1, 0], [0, -1, 1, 0], [-1, 0, 0, 1]]
    assert np.array_equal(build_h(ModelParams(0, 0)).h, np.array(expected, dtype=float))


def _legendre_oracle(gv, lv):
    # H = p.qdot - L with p taken from L, expanded symbolically
    x, y, px, py = sp.symbols("x y p_x p_y")
    g, l = sp.nsimplify(gv), sp.nsimplify(lv)
    xd, yd = px - (1 + g) * y, py - x
    L = (sp.Rational(1, 2) * (xd**2 + yd**2) + (1 + g) * xd * y + x * yd
         - sp.Rational(1, 2) * (x**2 + y**2) - l * x * y)
    H = sp.expand(px * xd + py * yd - L)
    return np.array(sp.hessian(H, [x, y, px, py]), dtype=float)


@pytest.mark.parametrize("params", [(-1.0, 1 / 3), (1.0, 1.0), (0.3, -0.7), (0.0, 2.0)])
def test_legendre_hamiltonian_against_sympy(params):
    got = legendre_hamiltonian(lee_lagrangian(params)).h
    assert np.allclose(got, _legendre_oracle(*params), rtol=0, atol=1e-14)


@pytest.mark.parametrize("gamma", [0.0, -1.0])
def test_build_h_is_legendre_where_they_coincide(gamma):
    h = legendre_hamiltonian(lee_lagrangian((gamma, 0.4))).h
    assert np.allclose(build_h((gamma, 0.4)).h, h, rtol=0, atol=1e-15)


def test_build_h_yy_entry_differs_from_legendre_elsewhere():
    a = build_h((1.0, 1.0)).h
    b = legendre_hamiltonian(lee_lagrangian((1.0, 1.0))).h
    assert a[1, 1] == 3.0 and b[1, 1] == 5.0
    mask = np.ones((4, 4), bool)
    mask[1, 1] = False
    assert np.array_equal(a[mask], b[mask])


@pytest.mark.parametrize(
    "params, expected",
    [((-1.0, 1 / 3), (5.0, 8 / 9)), ((1.0, 1.0), (7.0, -2.0)), ((0.0, 0.0), (6.0, 1.0))],
)
def test_trace_det_examples(params, expected):
    tr, det = trace_det(build_h(params))
    assert abs(tr - expected[0]) < 1e-12
    assert abs(det - expected[1]) < 1e-12


@settings(max_examples=200)
@given(coupling, coupling)
def test_trace_det_closed_form(g, l):
    tr, det = trace_det(build_h((g, l)))
    assert abs(tr - (6 + g)) <= 1e-12
    assert abs(det - (1 - g - g * g - l * l)) <= 1e-12


def test_gamma_roots():
    assert abs(det_polynomial(GAMMA_PLUS, 0.0)) <= 1e-12
    assert abs(det_polynomial(GAMMA_MINUS, 0.0)) <= 1e-12
    assert GAMMA_PLUS == pytest.approx(0.6180339887498949)


@pytest.mark.parametrize(
    "params, sign, count, label",
    [
        ((-1.0, 1 / 3), "positive", 0, "Interior"),
        ((1.0, 1.0), "negative", 1, "Case1"),
        ((0.0, 0.0), "positive", 0, "Interior"),
        ((0.0, 1.5), "negative", 1, "Case2"),
        ((-2.0, 0.0), "negative", 1, "Case1"),
        ((0.0, 1.0), "zero", 0, "Boundary"),
    ],
)
def test_classify_examples(params, sign, count, label):
    rc = classify_region(params)
    assert (rc.det_sign, rc.neg_count, rc.case_label) == (sign, count, label)


def test_classify_boundary_at_gamma_plus():
    rc = classify_region((GAMMA_PLUS, 0.0))
    assert rc.case_label == "Boundary" and abs(rc.f) < 1e-12


@settings(max_examples=200)
@given(coupling, coupling)
def test_negative_count_parity(g, l):
    rc = classify_region((g, l))
    if rc.det_sign == "negative":
        assert rc.neg_count in (1, 3)
    elif rc.det_sign == "positive":
        assert rc.neg_count % 2 == 0


def _el_oracle(L, q, qd, t):
    """Euler-Lagrange by sympy; returns (M, G, K) of M qdd + G qd + K q = 0."""
    qdd = [sp.Symbol(f"{s}dd") for s in ("x", "y")]
    eqs = []
    for qi, qdi in zip(q, qd):
        dL = sp.diff(L, qdi)
        # total time derivative of a function of (q, qd)
        ddt = sum(sp.diff(dL, a) * b for a, b in zip(q, qd)) + sum(sp.diff(dL, a) * b for a, b in zip(qd, qdd))
        eqs.append(sp.expand(ddt - sp.diff(L, qi)))
    coef = lambda vars_: np.array([[float(sp.diff(e, v)) for v in vars_] for e in eqs])
    return coef(qdd), coef(qd), coef(q)


def test_euler_lagrange_lee_against_sympy():
    x, y, xd, yd, t = sp.symbols("x y xd yd t")
    for g, l in [(1.0, 1.0), (-1.0, 1 / 3), (0.25, -1.5)]:
        L = (sp.Rational(1, 2) * (xd**2 + yd**2) + (1 + g) * xd * y + x * yd
             - sp.Rational(1, 2) * (x**2 + y**2) - l * x * y)
        M, G, K = _el_oracle(L, [x, y], [xd, yd], t)
        sys_ = euler_lagrange(lee_lagrangian((g, l)))
        assert np.allclose(sys_.M, M) and np.allclose(sys_.G, G) and np.allclose(sys_.K, K)
        ref = lee_system(ModelParams(g, l))
        assert np.array_equal(sys_.G, ref.G) and np.array_equal(sys_.K, ref.K)


def test_euler_lagrange_case2_system():
    # xdd + yd + x = -y ; ydd - xd + y = -x
    s = euler_lagrange(lee_lagrangian((1.0, 1.0)))
    assert np.array_equal(s.G, [[0, 1], [-1, 0]])
    assert np.array_equal(s.K, [[1, 1], [1, 1]])


def test_euler_lagrange_uncoupled():
    s = euler_lagrange(QuadraticLagrangian(np.eye(2), np.zeros((2, 2)), np.eye(2)))
    assert np.array_equal(s.G, np.zeros((2, 2))) and np.array_equal(s.K, np.eye(2))


def test_euler_lagrange_bateman_gives_damped_amplified_pair():
    x, y, xd, yd, t = sp.symbols("x y xd yd t")
    g = 0.3
    L = xd * yd + sp.Rational(3, 20) * (x * yd - xd * y) - x * y
    M, G, K = _el_oracle(L, [x, y], [xd, yd], t)
    s = euler_lagrange(bateman_lagrangian(g))
    assert np.allclose(s.M, M) and np.allclose(s.G, G) and np.allclose(s.K, K)
    # same first-order dynamics as xdd + g xd + x = 0, ydd - g yd + y = 0
    assert np.allclose(s.first_order_matrix(), bateman_system(g).first_order_matrix())


@given(st.floats(-5, 5), st.floats(-5, 5), st.floats(-5, 5))
def test_euler_lagrange_ignores_symmetric_part_of_C(a, b, c):
    base = lee_lagrangian((0.4, -0.2))
    shifted = QuadraticLagrangian(base.M, base.C + np.array([[a, b], [b, c]]), base.K)
    assert np.allclose(euler_lagrange(base).G, euler_lagrange(shifted).G, atol=1e-12)


def test_euler_lagrange_singular_mass():
    with pytest.raises(DegenerateKineticTerm, match="degenerate kinetic term"):
        euler_lagrange(QuadraticLagrangian(np.zeros((2, 2)), np.zeros((2, 2)), np.eye(2)))


@pytest.mark.parametrize(
    "gamma, state, expected",
    [(-1.0, (0, 5, 2, 0), (0, 5, 2, 0)), (1.0, (1, 1, 0, 0), (1, 1, 2, 1)), (0.0, (0, 0, 3, 4), (0, 0, 3, 4))],
)
def test_legendre_momenta(gamma, state, expected):
    assert np.array_equal(legendre_momenta((gamma, 0.0), state), np.array(expected, dtype=float))


@given(coupling, st.tuples(*[st.floats(-10, 10)] * 4))
def test_legendre_round_trip(g, state):
    v = legendre_momenta((g, 0.0), state)
    assert np.allclose(velocities_from_momenta((g, 0.0), v), state, atol=1e-12)


def test_params_must_be_finite():
    with pytest.raises(ValueError):
        ModelParams(math.nan, 0.0)
