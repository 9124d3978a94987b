import pytest

from gl2cq.algebra.scalar import GaussianRational, Scalar
from gl2cq.cli.expressions import MuPower, Number, Product, QPower, Sum, Variable, _Parser, parse_expression, parse_poly, render
from gl2cq.cli.sampling import Sampler
from gl2cq.errors import ConfigError, ExpressionSyntaxError
from gl2cq.module.polyrep import Polynomial


def x(m, n, e=1):
    return Polynomial.variable(m, n, e)


@pytest.mark.parametrize(
    "text,expected", [
        ("1", Polynomial.one()),
        ("0", Polynomial.zero()),
        ("x[0,0]", x(0, 0)),
        ("x[ -1 , 2 ]^3", x(-1, 2, 3)),
        ("x[0,0]^2 - x[0,0]*x[0,0]", Polynomial.zero()),
        ("2*x[1,0] + 3/2i*x[0,1]", x(1, 0).scale(2) + x(0, 1).scale(GaussianRational(0, "3/2"))),
        ("(1+i)*x[0,0]", x(0, 0).scale(GaussianRational(1, 1))),
        ("q^-1*mu^2", Polynomial.constant(Scalar.q(-1) * Scalar.mu(2))),
        ("q^(-2)", Polynomial.constant(Scalar.q(-2))),
        ("-(x[1,1] - 1)", Polynomial.one() - x(1, 1)),
        ("(x[0,0] + 1)^2", x(0, 0, 2) + x(0, 0).scale(2) + Polynomial.one()),
        ("mu*x[0,0] + q*x[0,0]", x(0, 0).scale(Scalar.mu() + Scalar.q())),
    ])
def test_parse_poly(text, expected):
    assert (ret := parse_poly(text)) == expected, ret


@pytest.mark.parametrize(
    "text,expected", [
        ("x[1,2]", Variable(1, 2)),
        ("q^3", QPower(3)),
        ("mu", MuPower()),
        ("2*x[0,0]", Product((Number(GaussianRational(2)), Variable(0, 0)))),
        ("-i", Sum(((-1, Number(GaussianRational(0, 1))),))),
    ])
def test_parse_expression(text, expected):
    assert (ret := parse_expression(text)) == expected, ret


@pytest.mark.parametrize(
    "text,position", [
        ("x[0,0", 6),
        ("", 1),
        ("x[0,0]^0", 8),
        ("x[0,0]^-1", 8),
        ("mu^-1", 4),
        ("1/0", 3),
        ("1/", 3),
        ("2 y", 3),
        ("x[a,0]", 3),
        ("(1 + q", 7),
    ])
def test_syntax_errors(text, position):
    with pytest.raises(ExpressionSyntaxError) as e:
        parse_poly(text)

    assert (ret := e.value.position) == position, ret
    assert (ret := str(e.value)).startswith(f"Syntax error at column {position}: expected "), ret


def test_syntax_error_is_config_error():
    with pytest.raises(ConfigError):
        parse_poly("x[")


@pytest.mark.parametrize(
    "p", [
        Polynomial.zero(),
        Polynomial.one(),
        x(-1, 2, 3).scale(GaussianRational("-1/2", 0)),
        x(0, 0).scale(Scalar.q(-1) * Scalar.mu()) + x(1, 0) * x(0, 1),
        Polynomial.constant(GaussianRational(1, -1)) - x(2, 2).scale(GaussianRational(0, "3/2")),
        x(0, 0).scale(Scalar.mu() + Scalar.q()),
    ])
def test_render_parses_back(p):
    assert (ret := parse_poly(render(p))) == p, render(p)


def test_render_parses_back_sampled():
    sampler = Sampler(3, "render")

    for _ in range(20):
        p = sampler.polynomial(3, max_terms=3)
        assert (ret := parse_poly(render(p))) == p, (render(p), ret)


@pytest.mark.parametrize("text", ["/2", "", "i"])
def test_number_requires_digits(text):
    with pytest.raises(ExpressionSyntaxError) as e:
        _Parser(text).number()

    assert (ret := e.value.position) == 1, ret
    assert (ret := str(e.value)).startswith("Syntax error at column 1: expected a number"), ret
