"""Parser and forward-mode jet arithmetic for analytic expressions."""

import cmath

import numpy as np
import pytest

from bergspec.errors import EvaluationError, ExprSyntaxError
from bergspec.expr import parse_expr


def _fd_deriv(f, z, h=1e-5):
    # fourth-order central difference in the complex plane
    return (-f(z + 2 * h) + 8 * f(z + h) - 8 * f(z - h) + f(z - 2 * h)) / (12 * h)


POINTS = [0.3 + 0.1j, -0.2 + 0.4j, 0.05 - 0.6j, 0.0j]


@pytest.mark.parametrize("text,ref", [
    ("z", lambda z: z),
    ("2*z + 1", lambda z: 2 * z + 1),
    ("z^3 - z/2", lambda z: z ** 3 - z / 2),
    ("exp(z)", cmath.exp),
    ("log(1 + z)", lambda z: cmath.log(1 + z)),
    ("sqrt(1 - z)", lambda z: cmath.sqrt(1 - z)),
    ("(1+z)/(1-z)", lambda z: (1 + z) / (1 - z)),
    ("pow(1 - z, 0.5)", lambda z: (1 - z) ** 0.5),
    ("-z^2 + 3", lambda z: -z ** 2 + 3),
    ("exp(2*log(1+z))", lambda z: (1 + z) ** 2),
])
def test_values_match_reference(text, ref):
    e = parse_expr(text)
    for z in POINTS:
        assert abs(e(z) - ref(z)) < 1e-12 * (1 + abs(ref(z)))


@pytest.mark.parametrize("text", [
    "exp(z)", "log(1+z)", "sqrt(1-z)", "(1+z)/(1-z)", "z^3 - 2*z",
    "pow(1-z, 1.5)",
])
def test_deriv_matches_finite_difference(text):
    e = parse_expr(text)
    for z in POINTS[:3]:
        fd = _fd_deriv(e, z)
        assert abs(e.deriv(z) - fd) < 1e-8 * (1 + abs(fd))


def test_derivative_expression_consistent_with_jet():
    e = parse_expr("exp(z) / (1 - z)")
    d = e.derivative()
    for z in POINTS[:3]:
        assert abs(d(z) - e.deriv(z)) < 1e-13 * (1 + abs(e.deriv(z)))
        # second derivative of e equals first derivative of d
        assert abs(e.deriv2(z) - d.deriv(z)) < 1e-12 * (1 + abs(d.deriv(z)))


def test_third_order_jet_chain_rule():
    e = parse_expr("exp(z^2)")
    z = 0.3 + 0.2j
    j = e.jet(z)
    f = cmath.exp(z * z)
    assert abs(j.f - f) < 1e-13
    assert abs(j.d1 - 2 * z * f) < 1e-12
    assert abs(j.d2 - (2 + 4 * z * z) * f) < 1e-12
    assert abs(j.d3 - (12 * z + 8 * z ** 3) * f) < 1e-11


def test_vectorized_evaluation():
    e = parse_expr("exp(z)*(1-z)")
    z = np.array(POINTS)
    vals = e(z)
    assert vals.shape == z.shape
    for zi, vi in zip(POINTS, vals):
        assert abs(vi - cmath.exp(zi) * (1 - zi)) < 1e-13


@pytest.mark.parametrize("bad", ["", "z +", "2 ** z", "sin(z)", "(1+z", "pow(z)",
                                 "z^z"])
def test_syntax_errors_carry_position(bad):
    with pytest.raises(ExprSyntaxError) as ei:
        parse_expr(bad)
    assert ei.value.pos >= 1


def test_branch_point_evaluation_error():
    e = parse_expr("log(z)")
    with pytest.raises(EvaluationError):
        e(0.0)


def test_integer_power_vs_general_power():
    a = parse_expr("(1-z)^4")
    b = parse_expr("pow(1-z, 4)")
    for z in POINTS:
        assert abs(a(z) - b(z)) < 1e-12
        assert abs(a.deriv(z) - b.deriv(z)) < 1e-11
