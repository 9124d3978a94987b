import pytest

from gl2cq.algebra.qtorus import TorusElement, kappa, monomial_product_phase, torus_bar, torus_deg, torus_mul, torus_product
from gl2cq.algebra.scalar import GaussianRational, Scalar
from gl2cq.errors import ConfigError


s = TorusElement.monomial(1, 0)
t = TorusElement.monomial(0, 1)
s_inv = TorusElement.monomial(-1, 0)
t_inv = TorusElement.monomial(0, -1)


def test_commutation_relation():
    assert (ret := torus_mul(t, s)) == TorusElement.monomial(1, 1, Scalar.q()), ret
    assert (ret := torus_mul(s, t)) == TorusElement.monomial(1, 1), ret
    assert (ret := monomial_product_phase((2, 3), (4, 5))) == 12, ret


def test_group_commutator_trace():
    assert (ret := kappa(torus_product(t, s, t_inv, s_inv))) == Scalar.q(), ret
    assert (ret := kappa(torus_mul(s, s_inv))) == Scalar.one(), ret
    assert not kappa(s)


def test_product_is_associative():
    a = TorusElement.monomial(2, -1, Scalar.mu()) + TorusElement.monomial(0, 3)
    b = TorusElement.monomial(-1, 1, GaussianRational(1, 2))
    c = s + t_inv

    assert (ret := torus_mul(torus_mul(a, b), c)) == torus_mul(a, torus_mul(b, c)), ret


@pytest.mark.parametrize(
    "text,expected", [
        ("s^2 t^-1", (2, -1)),
        ("s", (1, 0)),
        ("t^(-3)", (0, -3)),
        ("s*t", (1, 1)),
        ("1", (0, 0)),
    ])
def test_parse(text, expected):
    assert (ret := TorusElement.parse(text)) == TorusElement.monomial(*expected), ret


@pytest.mark.parametrize("text", ["x", "t s", "s^", ""])
def test_parse_invalid(text):
    with pytest.raises(ConfigError):
        TorusElement.parse(text)


def test_bar_is_an_involution():
    a = TorusElement.monomial(1, 2, Scalar.q() * GaussianRational(2, 1)) + TorusElement.monomial(-3, 0, Scalar.mu())

    assert (ret := torus_bar(torus_bar(a))) == a, ret
    assert (ret := torus_bar(TorusElement.monomial(1, 1))) == TorusElement.monomial(-1, -1, Scalar.q()), ret


def test_bar_reverses_products():
    a = TorusElement.monomial(2, 1, GaussianRational(0, 1))
    b = TorusElement.monomial(-1, 3) + t

    assert (ret := torus_bar(torus_mul(a, b))) == torus_mul(torus_bar(b), torus_bar(a)), ret


def test_degree_derivations():
    a = TorusElement.monomial(2, 1) + TorusElement.monomial(0, -1, 3)

    assert (ret := torus_deg(a, "s")) == TorusElement.monomial(2, 1, 2), ret
    assert (ret := torus_deg(a, "t")) == TorusElement.monomial(2, 1) + TorusElement.monomial(0, -1, -3), ret

    with pytest.raises(ValueError):
        torus_deg(a, "x")


def test_str_and_json():
    a = TorusElement.monomial(2, -1) + TorusElement.monomial(0, 0, Scalar.q())

    assert (ret := str(TorusElement.monomial(2, -1))) == "s^2 t^-1", ret
    assert (ret := str(a)) == "(q)*1 + s^2 t^-1", ret
    assert (ret := TorusElement.from_json(a.to_json())) == a, ret
