import itertools

from fractions import Fraction

import numpy as np
import pytest

from gl2cq.algebra.qtorus import TorusElement
from gl2cq.algebra.scalar import ExactPoint, GaussianRational, NumericSpec, RootOfUnity, Scalar
from gl2cq.errors import ConfigError, NonHermitianError
from gl2cq.module.gram import BasisBox, GramMatrix, HighestWeight, Verdict, check_highest_weight, check_leading_term, \
    check_positive_definite, check_translation_invariance, determinant_roots, enumerate_basis, gram_determinant, \
    gram_matrix, monomial_gram, radical_basis, scan_mu, translate_basis, variable_gram
from gl2cq.module.hermform import LevelBasisElement
from gl2cq.module.polyrep import Monomial, XFamily


mu = Scalar.mu()


@pytest.mark.parametrize(
    "box,expected", [
        (BasisBox.square(0, -1, 1), 1),
        (BasisBox.square(1, -1, 1), 9),
        (BasisBox.square(2, -1, 1), 45),
        (BasisBox.square(3, 0, 1), 20),
        (BasisBox(2, 0, 1, 0, 1, True, 1, 1), 5),
        (BasisBox(1, -1, 1, -1, 1, True, 0, 0), 1),
    ])
def test_enumerate_basis(box, expected):
    assert (ret := len(enumerate_basis(box))) == expected, ret


def test_enumerate_basis_order():
    basis = enumerate_basis(BasisBox.square(1, 0, 1))

    assert (ret := [h.to_json() for h in basis]) == [[[0, 0]], [[0, 1]], [[1, 0]], [[1, 1]]], ret


@pytest.mark.parametrize(
    "kwargs", [
        {"level": -1},
        {"m_min": 2, "m_max": 1},
        {"n_min": 0, "n_max": -3},
        {"positive_mode": True, "M": -1},
    ])
def test_invalid_box(kwargs):
    with pytest.raises(ConfigError):
        BasisBox(**kwargs)


def test_box_json():
    box = BasisBox(2, 0, 3, -1, 1, True, 2, 1)

    assert (ret := BasisBox.from_json(box.to_json())) == box, ret
    assert (ret := box.to_json()["mMax"]) == 3, ret

    with pytest.raises(ConfigError):
        BasisBox.from_json({"level": "two"})
    with pytest.raises(ConfigError):
        box.translate(1, 1)


def test_level_zero_and_one_gram(any_x):
    G = gram_matrix(BasisBox.square(1, -1, 1), any_x)

    assert (ret := G.dimension) == 9, ret
    for i, j in itertools.product(range(9), repeat=2):
        assert (ret := G[i, j]) == (mu if i == j else Scalar.zero()), (i, j, ret)

    G = gram_matrix(BasisBox.square(0, -1, 1), any_x)
    assert (ret := G.entries) == [[Scalar.one()]], ret


def test_variable_gram(constant_x):
    G = variable_gram(BasisBox.square(1, 0, 1), constant_x)

    for i, j in itertools.product(range(4), repeat=2):
        assert (ret := G[i, j]) == (mu * 4 if i == j else Scalar.zero()), (i, j, ret)


def test_monomial_gram_is_hermitian():
    monomials = [Monomial.from_indices(indices) for indices in ([(0, 0), (1, 1)], [(0, 1), (1, 0)], [(0, 0), (0, 0)])]
    G = monomial_gram(monomials)

    assert G.is_hermitian()
    assert (ret := G[0, 1]) == mu * (Scalar.one() + Scalar.q(-1)), ret


def test_gram_with_workers_matches_sequential(identity_x):
    box = BasisBox.square(2, 0, 1)

    assert (ret := gram_matrix(box, identity_x, workers=3).entries) == gram_matrix(box, identity_x).entries, ret


@pytest.mark.parametrize("method", ["push", "recursive", "jk"])
def test_level_two_gram(method, identity_x):
    G = gram_matrix(BasisBox.square(2, 0, 1), identity_x, method)

    assert (ret := G.dimension) == 10, ret
    assert G.is_hermitian()
    assert check_leading_term(G)


@pytest.mark.parametrize(
    "mu_value,expected", [
        (Fraction(-1), Verdict.INDEFINITE),
        (Fraction(0), Verdict.PSD_DEGENERATE),
        (Fraction(1, 4), Verdict.PD),
        (Fraction(3), Verdict.PD),
    ])
@pytest.mark.parametrize("q_value", list(ExactPoint))
def test_exact_level_one_positivity(mu_value, expected, q_value):
    G = gram_matrix(BasisBox.square(1, -1, 1))
    result = check_positive_definite(G, NumericSpec(q_value, mu_value))

    assert (ret := result.verdict) is expected, ret
    assert result.exact


@pytest.mark.parametrize(
    "mu_value,expected", [
        (Fraction(-1), Verdict.INDEFINITE),
        (Fraction(0), Verdict.PSD_DEGENERATE),
        (Fraction(1, 4), Verdict.PD),
        (Fraction(1), Verdict.PD),
    ])
@pytest.mark.parametrize("q_value", list(ExactPoint))
def test_exact_level_two_positivity(mu_value, expected, q_value):
    G = gram_matrix(BasisBox.square(2, 0, 1))
    result = check_positive_definite(G, NumericSpec(q_value, mu_value))

    assert (ret := result.verdict) is expected, ret


# Level 3 over [-1,1]^2 is positive definite for every mu > 0 only at q = 1.
LEVEL_THREE_POSITIVE = {
    ExactPoint.ONE: {Fraction(1, 4), Fraction(1), Fraction(3)},
    ExactPoint.I: {Fraction(3)},
    ExactPoint.MINUS_I: {Fraction(3)},
    ExactPoint.MINUS_ONE: set(),
}


@pytest.mark.slow
@pytest.mark.parametrize("mu_value", [Fraction(1, 4), Fraction(1), Fraction(3), Fraction(-1), Fraction(0)])
@pytest.mark.parametrize("q_value", list(ExactPoint))
def test_exact_level_three_positivity(mu_value, q_value, level_three_gram):
    result = check_positive_definite(level_three_gram, NumericSpec(q_value, mu_value))

    positive = mu_value in LEVEL_THREE_POSITIVE[q_value]
    assert (ret := result.is_positive_definite) is positive, (ret, result.verdict)
    if not positive and mu_value > 0:
        assert (ret := result.verdict) is Verdict.INDEFINITE, ret


@pytest.fixture(scope="module")
def level_three_gram():
    return gram_matrix(BasisBox.square(3, -1, 1))


@pytest.fixture(scope="module")
def weight_zero_block():
    return gram_matrix(BasisBox.square(2, -1, 1)).weight_block((0, 0))


def test_weight_zero_block(weight_zero_block):
    zero = LevelBasisElement.of((0, 0), (0, 0))
    diagonal = LevelBasisElement.of((-1, -1), (1, 1))

    assert (ret := set(weight_zero_block.basis)) == {
        zero, diagonal, LevelBasisElement.of((-1, 0), (1, 0)), LevelBasisElement.of((0, -1), (0, 1)),
        LevelBasisElement.of((-1, 1), (1, -1))}, ret
    i, j = weight_zero_block.basis.index(diagonal), weight_zero_block.basis.index(zero)
    assert (ret := weight_zero_block[i, j]) == mu * 2 * Scalar.q(-1), ret

    quadratic = weight_zero_block.mu_coefficient(2)
    for i, j in itertools.product(range(5), repeat=2):
        expected = Scalar.zero() if i != j else Scalar.constant(2 if weight_zero_block.basis[i] == zero else 1)
        assert (ret := quadratic[i, j]) == expected, (i, j, ret)
    assert (ret := weight_zero_block.mu_coefficient(0).entries) == [[Scalar.zero()] * 5] * 5, ret


@pytest.mark.parametrize(
    "q_value,expected", [
        (ExactPoint.ONE, Verdict.PSD_DEGENERATE),
        (ExactPoint.I, Verdict.INDEFINITE),
        (ExactPoint.MINUS_ONE, Verdict.INDEFINITE),
        (ExactPoint.MINUS_I, Verdict.INDEFINITE),
        (RootOfUnity(1, 8), Verdict.INDEFINITE),
    ])
def test_weight_zero_block_linear_coefficient(q_value, expected, weight_zero_block):
    result = check_positive_definite(weight_zero_block.mu_coefficient(1), NumericSpec(q_value))

    assert (ret := result.verdict) is expected, (ret, result.margin)


@pytest.mark.parametrize(
    "q_value,mu_value,expected", [
        (ExactPoint.ONE, Fraction(1, 100), Verdict.PD),
        (ExactPoint.ONE, Fraction(1), Verdict.PD),
        (ExactPoint.I, Fraction(1, 100), Verdict.INDEFINITE),
        (ExactPoint.I, Fraction(1), Verdict.INDEFINITE),
        (ExactPoint.MINUS_I, Fraction(1), Verdict.INDEFINITE),
        (ExactPoint.MINUS_ONE, Fraction(1, 100), Verdict.INDEFINITE),
        (ExactPoint.MINUS_ONE, Fraction(1), Verdict.INDEFINITE),
        (RootOfUnity(1, 8), Fraction(1, 4), Verdict.INDEFINITE),
    ])
def test_weight_zero_block_positivity(q_value, mu_value, expected, weight_zero_block):
    result = check_positive_definite(weight_zero_block, NumericSpec(q_value, mu_value))

    assert (ret := result.verdict) is expected, (ret, result.margin)


@pytest.mark.parametrize(
    "level,mu_value,expected", [
        (1, Fraction(1, 4), Verdict.PD),
        (1, Fraction(3), Verdict.PD),
        (1, Fraction(-1), Verdict.INDEFINITE),
        (2, Fraction(1, 4), Verdict.INDEFINITE),
        (2, Fraction(-1), Verdict.INDEFINITE),
    ])
def test_numeric_window_positivity(level, mu_value, expected):
    G = gram_matrix(BasisBox.square(level, -1, 1))
    result = check_positive_definite(G, NumericSpec(RootOfUnity(1, 8), mu_value))

    assert (ret := result.verdict) is expected, (ret, result.margin)
    if expected is Verdict.PD:
        assert (ret := result.margin) > 1e-6, ret


@pytest.mark.slow
def test_numeric_level_three_positivity(level_three_gram):
    result = check_positive_definite(level_three_gram, NumericSpec(RootOfUnity(1, 8), Fraction(1, 4)))

    assert (ret := result.verdict) is Verdict.INDEFINITE, ret
    assert (ret := result.margin) < -0.5, ret

    result = check_positive_definite(level_three_gram, NumericSpec(RootOfUnity(1, 8), Fraction(-1)))
    assert not result.is_positive_definite


def test_numeric_positivity():
    G = gram_matrix(BasisBox.square(2, 0, 1))
    result = check_positive_definite(G, NumericSpec(RootOfUnity(1, 8), Fraction(1, 4)))

    assert (ret := result.verdict) is Verdict.PD, ret
    assert (ret := result.margin) > 1e-6, ret
    assert not result.exact

    result = check_positive_definite(G, NumericSpec(RootOfUnity(1, 8), Fraction(-1)))
    assert (ret := result.verdict) is Verdict.INDEFINITE, ret
    assert isinstance(result.witness, np.ndarray)


def test_exact_positivity_with_off_diagonal_zero_pivot():
    G = GramMatrix(("a", "b"), [[Scalar.zero(), Scalar.one()], [Scalar.one(), Scalar.zero()]])

    assert (ret := check_positive_definite(G, NumericSpec()).verdict) is Verdict.INDEFINITE, ret


def test_non_hermitian_matrix_is_rejected():
    G = GramMatrix(("a", "b"), [[Scalar.one(), Scalar.one()], [Scalar.zero(), Scalar.one()]])

    with pytest.raises(NonHermitianError):
        check_positive_definite(G, NumericSpec())
    with pytest.raises(NonHermitianError):
        check_positive_definite(G, NumericSpec(RootOfUnity(1, 8)))


def test_leading_minors():
    G = GramMatrix(("a", "b"), [[Scalar.constant(2), Scalar.one()], [Scalar.one(), Scalar.constant(2)]])
    result = check_positive_definite(G, NumericSpec())

    assert (ret := result.leading_minors()) == [2, 3], ret


def test_single_element_determinant():
    G = gram_matrix(BasisBox.square(2, 0, 0))
    coefficients = gram_determinant(G, ExactPoint.I)

    assert (ret := coefficients) == [GaussianRational(0), GaussianRational(2), GaussianRational(2)], ret
    assert (ret := determinant_roots(coefficients)) == [Fraction(-1), Fraction(0)], ret


def test_radical_basis():
    G = gram_matrix(BasisBox.square(2, 0, 0))

    assert (ret := radical_basis(G, NumericSpec(ExactPoint.ONE, Fraction(-1)))) == [[GaussianRational(1)]], ret
    assert (ret := radical_basis(G, NumericSpec(ExactPoint.ONE, Fraction(1)))) == [], ret


def test_scan_mu():
    report = scan_mu(BasisBox.square(2, 0, 0), None, NumericSpec(ExactPoint.I), ["-1/2", "0", "1"])

    assert (ret := report.verdicts()) == [Verdict.INDEFINITE, Verdict.PSD_DEGENERATE, Verdict.PD], ret
    assert (ret := report.boundary) == [Fraction(-1), Fraction(0)], ret
    assert report.consistent
    assert (ret := report.to_csv().splitlines()[0]) == "mu,verdict,minEigenvalueOrMinor", ret
    assert (ret := report.to_csv().splitlines()[1]) == "-1/2,indefinite,-0.5", ret


def test_scan_mu_empty_grid():
    report = scan_mu(BasisBox.square(1, 0, 0), None, NumericSpec(), [])

    assert (ret := report.rows) == [], ret
    assert report.consistent


def test_scan_mu_checks_verdicts_against_determinant():
    report = scan_mu(BasisBox.square(2, 0, 0), None, NumericSpec(ExactPoint.I), ["-1/2", "0", "1"])

    assert (ret := report.determinant) == [GaussianRational(0), GaussianRational(2), GaussianRational(2)], ret
    assert (ret := report.determinant_conflicts()) == [], ret
    assert (ret := report.to_json()["mispredicted"]) == [], ret

    report.determinant = [GaussianRational(1)]
    assert (ret := [row.mu for row in report.determinant_conflicts()]) == [Fraction(0)], ret
    report.determinant = [GaussianRational(-1)]
    assert (ret := [row.mu for row in report.determinant_conflicts()]) == [Fraction(0), Fraction(1)], ret


def test_scan_mu_flags_mispredicted_verdicts():
    box = BasisBox.square(2, -1, 1)
    report = scan_mu(box, None, NumericSpec(ExactPoint.MINUS_ONE), ["-1", "1"])

    assert (ret := report.verdicts()) == [Verdict.INDEFINITE, Verdict.INDEFINITE], ret
    assert (ret := [row.mu for row in report.mispredicted()]) == [Fraction(1)], ret
    assert not report.consistent
    assert (ret := report.determinant) is None, ret
    assert (ret := report.to_json()["mispredicted"]) == ["1"], ret


def test_gram_csv():
    G = gram_matrix(BasisBox.square(2, 0, 0))

    assert (ret := G.to_csv(NumericSpec(ExactPoint.I, Fraction(1)))) == "4\n", ret
    assert (ret := G.to_csv(NumericSpec(RootOfUnity(1, 8), Fraction(1)))) == "4.0\n", ret


@pytest.mark.parametrize(
    "h,h2", [
        (LevelBasisElement.of((0, 1), (1, 0)), LevelBasisElement.of((0, 0), (1, 1))),
        (LevelBasisElement.of((1, 1), (-1, 0)), LevelBasisElement.of((1, 0), (-1, 1))),
        (LevelBasisElement.of((0, 0)), LevelBasisElement.of((0, 0))),
    ])
@pytest.mark.parametrize("shift", [(1, 1), (-2, 3)])
def test_translation_invariance(h, h2, shift, any_x):
    assert check_translation_invariance(h, h2, *shift, X=any_x)


def test_translate_basis():
    h = LevelBasisElement.of((0, 1), (1, 0))

    assert (ret := translate_basis(h, 2, -1)) == LevelBasisElement.of((2, 0), (3, -1)), ret


@pytest.mark.parametrize(
    "box,shift", [
        (BasisBox.square(2, -1, 0), (1, 1)),
        (BasisBox.square(2, -1, 1), (1, 1)),
        (BasisBox.square(2, -1, 1), (-2, 3)),
    ])
def test_translated_window_gram(box, shift):
    assert (ret := gram_matrix(box.translate(*shift)).entries) == gram_matrix(box).entries, ret


@pytest.mark.slow
def test_translated_level_three_window(level_three_gram):
    assert (ret := gram_matrix(BasisBox.square(3, -1, 1).translate(1, 1)).entries) == level_three_gram.entries, ret


@pytest.mark.parametrize("X,norm", [(XFamily.identity(), 1), (XFamily.constant("2", "3", "1/2"), 4)])
def test_variable_gram_on_five_by_five_window(X, norm):
    G = variable_gram(BasisBox.square(1, -2, 2), X)

    assert (ret := G.dimension) == 25, ret
    for i, j in itertools.product(range(25), repeat=2):
        assert (ret := G[i, j]) == (mu * norm if i == j else Scalar.zero()), (i, j, ret)


@pytest.mark.parametrize(
    "a1,a2,a3", [
        (TorusElement.one(), TorusElement.zero(), TorusElement.zero()),
        (TorusElement.monomial(1, 0), TorusElement.monomial(0, 0, 3), TorusElement.one().scale(Scalar.q())),
        (TorusElement.one() + TorusElement.monomial(-1, 2), TorusElement.monomial(2, 2), TorusElement.monomial(0, 0, 5)),
    ])
def test_highest_weight(a1, a2, a3, any_x):
    assert check_highest_weight(a1, a2, a3, any_x)


def test_highest_weight_value():
    value = HighestWeight().value(TorusElement.one(), TorusElement.monomial(0, 0, 3))

    assert (ret := value) == mu, ret
