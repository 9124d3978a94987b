"""
Level-graded Gram matrices of the contravariant form and their positivity.
"""

from __future__ import annotations

import itertools
import logging
import typing

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import numpy as np

from ..algebra.liealg import E_of, generator, CENTRAL_NAMES
from ..algebra.qtorus import TorusElement, kappa
from ..algebra.scalar import GaussianRational, NumericSpec, Scalar, ExactPoint, ZERO, ONE
from ..errors import ConfigError, NonHermitianError
from .hermform import FORM_METHODS, FormContext, LevelBasisElement, form_on_basis, form_recursive
from .polyrep import IndexPair, Monomial, Polynomial, XFamily, pi_apply


logger = logging.getLogger("gl2cq.gram")

# Largest Gram matrix whose mu-determinant is interpolated by scan_mu.
BOUNDARY_DIMENSION_LIMIT = 24


@dataclass(frozen=True)
class BasisBox:
    """
    A finite set of level-``level`` basis elements: indices drawn from the
    window [m_min, m_max] x [n_min, n_max]. In positive mode indices are also
    nonnegative and their sums are bounded by ``M`` and ``N``.
    """

    level: int = 1
    m_min: int = -1
    m_max: int = 1
    n_min: int = -1
    n_max: int = 1
    positive_mode: bool = False
    M: int = 0
    N: int = 0

    def __post_init__(self):
        if self.level < 0:
            raise ConfigError(f"The level must be nonnegative (got {self.level}).")
        if self.m_min > self.m_max or self.n_min > self.n_max:
            raise ConfigError(
                f"Empty index window [{self.m_min},{self.m_max}]x[{self.n_min},{self.n_max}]."
            )
        if self.positive_mode and (self.M < 0 or self.N < 0):
            raise ConfigError("The bounds M and N must be nonnegative in positive mode.")

    @classmethod
    def square(cls, level: int, low: int, high: int) -> "BasisBox":
        return cls(level, low, high, low, high)

    def window(self) -> list[IndexPair]:
        """Admissible index pairs in lexicographic order."""
        pairs = [
            IndexPair(m, n)
            for m in range(self.m_min, self.m_max + 1)
            for n in range(self.n_min, self.n_max + 1)
        ]
        if self.positive_mode:
            pairs = [p for p in pairs if 0 <= p.m <= self.M and 0 <= p.n <= self.N]
        return pairs

    def with_level(self, level: int) -> "BasisBox":
        return BasisBox(level, self.m_min, self.m_max, self.n_min, self.n_max, self.positive_mode, self.M, self.N)

    def translate(self, a: int, b: int) -> "BasisBox":
        if self.positive_mode:
            raise ConfigError("Positive-mode boxes cannot be translated.")
        return BasisBox(self.level, self.m_min + a, self.m_max + a, self.n_min + b, self.n_max + b)

    def to_json(self) -> dict:
        data = {
            "level": self.level,
            "mMin": self.m_min, "mMax": self.m_max,
            "nMin": self.n_min, "nMax": self.n_max,
            "positiveMode": self.positive_mode,
        }
        if self.positive_mode:
            data.update({"M": self.M, "N": self.N})
        return data

    @classmethod
    def from_json(cls, data: typing.Mapping) -> "BasisBox":
        try:
            return cls(
                int(data.get("level", 1)),
                int(data.get("mMin", -1)), int(data.get("mMax", 1)),
                int(data.get("nMin", -1)), int(data.get("nMax", 1)),
                bool(data.get("positiveMode", False)),
                int(data.get("M", 0)), int(data.get("N", 0)),
            )
        except (TypeError, ValueError) as e:
            raise ConfigError(f"Invalid basis box: {e}") from e


def enumerate_basis(box: BasisBox) -> list[LevelBasisElement]:
    window = box.window()
    basis = []
    for indices in itertools.combinations_with_replacement(window, box.level):
        if box.positive_mode:
            if sum(i.m for i in indices) > box.M or sum(i.n for i in indices) > box.N:
                continue
        basis.append(LevelBasisElement(indices))
    if not basis:
        logger.warning("The basis box %s is empty.", box)
    return basis


def translate_basis(h: LevelBasisElement, a: int, b: int) -> LevelBasisElement:
    return h.translate(a, b)


# Gram matrices

@dataclass
class GramMatrix:
    """
    Pairings ``entries[i][j] = (basis[i], basis[j])`` of a finite basis.

    The basis holds :class:`LevelBasisElement` values, or :class:`Monomial`
    values for Gram matrices of plain monomials.
    """

    basis: tuple
    entries: list[list[Scalar]]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def __getitem__(self, key: tuple[int, int]) -> Scalar:
        i, j = key
        return self.entries[i][j]

    def is_hermitian(self) -> bool:
        return all(
            self.entries[i][j] == self.entries[j][i].conj()
            for i in range(self.dimension)
            for j in range(i, self.dimension)
        )

    def diagonal(self) -> list[Scalar]:
        return [self.entries[i][i] for i in range(self.dimension)]

    def weight_block(self, weight: tuple[int, int]) -> "GramMatrix":
        """
        Rows and columns of the basis elements of the given (D_1, D_2) weight.
        Pairings across different weights vanish, so G is the direct sum of
        its weight blocks.
        """
        keep = [i for i, item in enumerate(self.basis) if item.weight() == tuple(weight)]
        return GramMatrix(
            tuple(self.basis[i] for i in keep),
            [[self.entries[i][j] for j in keep] for i in keep],
        )

    def mu_coefficient(self, degree: int) -> "GramMatrix":
        """The matrix of mu^degree coefficients, with entries in q only."""
        zero = Scalar.zero()
        return GramMatrix(
            self.basis,
            [[entry.mu_coefficients().get(degree, zero) for entry in row] for row in self.entries],
        )

    def evaluate(self, spec: NumericSpec):
        """
        The entries at ``spec``: a nested list of :class:`GaussianRational` for
        an exact q, a complex numpy array for a root of unity.
        """
        if spec.is_exact:
            return [[entry.evaluate(spec) for entry in row] for row in self.entries]
        return np.array(
            [[entry.evaluate(spec) for entry in row] for row in self.entries],
            dtype=complex,
        ).reshape(self.dimension, self.dimension)

    def to_json(self) -> dict:
        return {
            "basis": [_basis_json(item) for item in self.basis],
            "entries": [[entry.to_json() for entry in row] for row in self.entries],
        }

    def to_csv(self, spec: NumericSpec) -> str:
        values = self.evaluate(spec)
        lines = []
        for row in values:
            lines.append(",".join(_format_number(value) for value in row))
        return "\n".join(lines) + ("\n" if lines else "")


def _basis_json(item):
    if isinstance(item, LevelBasisElement):
        return item.to_json()
    return str(item)


def _format_number(value) -> str:
    if isinstance(value, GaussianRational):
        return str(value)
    value = complex(value)
    if value.imag == 0:
        return repr(value.real)
    return f"{value.real!r}{value.imag:+}j"


def gram_matrix(
    box: BasisBox,
    X: typing.Optional[XFamily] = None,
    method: str = "push",
    workers: int = 1,
    ctx: typing.Optional[FormContext] = None,
) -> GramMatrix:
    """
    Gram matrix of the box's basis. Only the upper triangle is evaluated,
    the lower triangle is filled in by conjugation.
    """
    if method not in FORM_METHODS:
        raise ValueError(f"Unknown form method '{method}'. Expected one of {', '.join(FORM_METHODS)}.")
    X = X if X is not None else XFamily.identity()
    if ctx is None or ctx.X != X:
        ctx = FormContext(X)

    basis = tuple(enumerate_basis(box))
    size = len(basis)
    entries = [[Scalar.zero()] * size for _ in range(size)]

    def compute_row(i: int):
        return [form_on_basis(basis[i], basis[j], X, method, ctx) for j in range(i, size)]

    logger.info("Computing %dx%d Gram matrix at level %d with the '%s' method.", size, size, box.level, method)
    if workers > 1 and size > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(compute_row, range(size)))
    else:
        rows = [compute_row(i) for i in range(size)]

    for i, row in enumerate(rows):
        for offset, value in enumerate(row):
            j = i + offset
            entries[i][j] = value
            entries[j][i] = value.conj()
    return GramMatrix(basis, entries)


def monomial_gram(
    monomials: typing.Sequence[Monomial],
    X: typing.Optional[XFamily] = None,
    ctx: typing.Optional[FormContext] = None,
) -> GramMatrix:
    """Gram matrix of the given monomials under :func:`form_recursive`."""
    X = X if X is not None else XFamily.identity()
    if ctx is None or ctx.X != X:
        ctx = FormContext(X)
    monomials = tuple(monomials)
    polys = [Polynomial.monomial(mono) for mono in monomials]
    entries = [[form_recursive(f, g, ctx) for g in polys] for f in polys]
    return GramMatrix(monomials, entries)


def variable_gram(box: BasisBox, X: typing.Optional[XFamily] = None) -> GramMatrix:
    """Gram matrix of the degree-one monomials x_A over the box's window."""
    return monomial_gram([Monomial.variable(A) for A in box.window()], X)


# Positivity

class Verdict(str, Enum):
    PD = "PD"
    PSD_DEGENERATE = "PSD-degenerate"
    INDEFINITE = "indefinite"


@dataclass
class PositivityResult:
    """
    Outcome of :func:`check_positive_definite`.

    ``witness`` is the basis position of the first failing pivot in exact
    mode and the eigenvector of the smallest eigenvalue in numeric mode.
    ``margin`` is the smallest pivot or the smallest eigenvalue.
    """

    verdict: Verdict
    margin: typing.Optional[float] = None
    witness: typing.Any = None
    exact: bool = True
    pivots: list = field(default_factory=list)

    @property
    def is_positive_definite(self) -> bool:
        return self.verdict is Verdict.PD

    def leading_minors(self) -> list:
        """Leading principal minors; meaningful when every pivot was taken in order."""
        minors = []
        product = Fraction(1)
        for pivot in self.pivots:
            product = product * pivot
            minors.append(product)
        return minors

    def to_json(self) -> dict:
        data = {"verdict": self.verdict.value, "margin": self.margin, "exact": self.exact}
        if isinstance(self.witness, np.ndarray):
            data["witness"] = [[float(v.real), float(v.imag)] for v in self.witness]
        else:
            data["witness"] = self.witness
        return data


def _check_exact_hermitian(values: list[list[GaussianRational]]):
    size = len(values)
    for i in range(size):
        for j in range(i, size):
            if values[i][j] != values[j][i].conjugate():
                raise NonHermitianError(f"Evaluated Gram matrix is not hermitian at ({i}, {j}).")


def _exact_positivity(values: list[list[GaussianRational]]) -> PositivityResult:
    """
    LDL^H elimination over the Gaussian rationals with diagonal pivoting.
    Pivots are taken in basis order whenever the next diagonal entry is positive.
    """
    _check_exact_hermitian(values)
    work = [list(row) for row in values]
    remaining = list(range(len(work)))
    pivots: list[Fraction] = []

    while remaining:
        diagonal = [(k, work[k][k].re) for k in remaining]
        negative = [k for k, value in diagonal if value < 0]
        if negative:
            k = negative[0]
            return PositivityResult(Verdict.INDEFINITE, float(work[k][k].re), k, True, pivots)

        positive = [k for k, value in diagonal if value > 0]
        if not positive:
            for i in remaining:
                for j in remaining:
                    if i != j and work[i][j]:
                        return PositivityResult(Verdict.INDEFINITE, 0.0, i, True, pivots)
            return PositivityResult(Verdict.PSD_DEGENERATE, 0.0, remaining[0], True, pivots)

        p = positive[0]
        pivot = work[p][p]
        pivots.append(pivot.re)
        remaining.remove(p)
        for i in remaining:
            factor = work[i][p] / pivot
            if not factor:
                continue
            for j in remaining:
                work[i][j] = work[i][j] - factor * work[p][j]

    margin = float(min(pivots)) if pivots else None
    return PositivityResult(Verdict.PD, margin, None, True, pivots)


def _numeric_positivity(values: np.ndarray, tolerance: float) -> PositivityResult:
    if values.size == 0:
        return PositivityResult(Verdict.PD, None, None, False)

    scale = max(1.0, float(np.linalg.norm(values, 2)))
    if not np.allclose(values, values.conj().T, atol=max(tolerance, 1e-12) * scale):
        raise NonHermitianError("Evaluated Gram matrix is not hermitian.")

    eigenvalues, eigenvectors = np.linalg.eigh(values)
    smallest = float(eigenvalues[0])
    threshold = tolerance * scale
    if smallest > threshold:
        verdict = Verdict.PD
    elif smallest < -threshold:
        verdict = Verdict.INDEFINITE
    else:
        verdict = Verdict.PSD_DEGENERATE
    witness = None if verdict is Verdict.PD else eigenvectors[:, 0]
    return PositivityResult(verdict, smallest, witness, False)


def check_positive_definite(G: GramMatrix, spec: NumericSpec) -> PositivityResult:
    """
    Classify the evaluated Gram matrix as positive definite, positive
    semidefinite but degenerate, or indefinite.
    """
    values = G.evaluate(spec)
    if spec.is_exact:
        return _exact_positivity(values)
    return _numeric_positivity(values, spec.tolerance)


def _exact_null_space(values: list[list[GaussianRational]]) -> list[list[GaussianRational]]:
    rows = [list(row) for row in values]
    size = len(rows[0]) if rows else 0
    pivot_columns = []
    r = 0
    for c in range(size):
        pivot_row = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        pivot = rows[r][c]
        rows[r] = [value / pivot for value in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                factor = rows[i][c]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        pivot_columns.append(c)
        r += 1

    basis = []
    for free in (c for c in range(size) if c not in pivot_columns):
        vector = [ZERO] * size
        vector[free] = ONE
        for row, c in zip(rows, pivot_columns):
            vector[c] = -row[free]
        basis.append(vector)
    return basis


def radical_basis(G: GramMatrix, spec: NumericSpec) -> list:
    """
    A basis of the radical of the evaluated form: exact vectors of
    :class:`GaussianRational` for an exact q, numpy vectors otherwise.
    """
    values = G.evaluate(spec)
    if spec.is_exact:
        return _exact_null_space(values)
    if values.size == 0:
        return []
    _, singular, vh = np.linalg.svd(values)
    threshold = spec.tolerance * max(1.0, float(singular[0]) if singular.size else 1.0)
    return [vh[k].conj() for k in range(len(singular)) if singular[k] <= threshold]


# Determinant in mu

def _exact_determinant(values: list[list[GaussianRational]]) -> GaussianRational:
    rows = [list(row) for row in values]
    size = len(rows)
    det = ONE
    for c in range(size):
        pivot_row = next((i for i in range(c, size) if rows[i][c]), None)
        if pivot_row is None:
            return ZERO
        if pivot_row != c:
            rows[c], rows[pivot_row] = rows[pivot_row], rows[c]
            det = -det
        pivot = rows[c][c]
        det = det * pivot
        for i in range(c + 1, size):
            if rows[i][c]:
                factor = rows[i][c] / pivot
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[c])]
    return det


def gram_determinant(G: GramMatrix, q_value: ExactPoint) -> list[GaussianRational]:
    """
    det G as a polynomial in mu (coefficients from degree 0 upwards) with q
    specialised to an exact point, by interpolation through integer mu.
    """
    degree = sum(max((entry.mu_degree() for entry in row), default=0) for row in G.entries)
    degree = max(degree, 0)
    points = [Fraction(k) for k in range(degree + 1)]
    values = [_exact_determinant(G.evaluate(NumericSpec(q_value, mu))) for mu in points]

    # Newton divided differences, then expansion into the monomial basis.
    coefficients = list(values)
    for level in range(1, len(points)):
        for k in range(len(points) - 1, level - 1, -1):
            coefficients[k] = (coefficients[k] - coefficients[k - 1]) / (points[k] - points[k - level])

    result = [ZERO] * len(points)
    for k in range(len(points) - 1, -1, -1):
        # result = result * (mu - points[k]) + coefficients[k]
        shifted = [ZERO] + result[:-1]
        result = [s - r * points[k] for s, r in zip(shifted, result)]
        result[0] = result[0] + coefficients[k]
    while len(result) > 1 and not result[-1]:
        result.pop()
    return result


def determinant_roots(coefficients: typing.Sequence[GaussianRational]) -> list[Fraction]:
    """Rational real roots of a mu-polynomial, recovered from numpy.roots and confirmed exactly."""
    if len(coefficients) <= 1:
        return []
    numeric = np.roots([c.to_complex() for c in reversed(coefficients)])
    roots = set()
    for root in numeric:
        if abs(root.imag) > 1e-8:
            continue
        candidate = Fraction(float(root.real)).limit_denominator(1000)
        if not _evaluate_mu_polynomial(coefficients, candidate):
            roots.add(candidate)
    return sorted(roots)


# Highest weight

@dataclass(frozen=True)
class HighestWeight:
    """
    The weight lambda of the vacuum 1: lambda(E_11(a)) = -mu kappa(a) / 2,
    lambda(E_22(a)) = mu kappa(a) / 2, zero on E_12, c_s, c_t, d_s and d_t.
    """

    mu: Scalar = field(default_factory=Scalar.mu)

    def value(self, a1: TorusElement, a3: TorusElement) -> Scalar:
        half = Fraction(1, 2)
        return self.mu * kappa(a3) * half - self.mu * kappa(a1) * half


def check_highest_weight(
    a1: TorusElement, a2: TorusElement, a3: TorusElement, X: typing.Optional[XFamily] = None,
) -> bool:
    """
    The upper-triangular element (a1 a2; 0 a3) acts on 1 by lambda and the
    central elements and derivations annihilate 1.
    """
    X = X if X is not None else XFamily.identity()
    one = Polynomial.one()
    element = E_of(1, 1, a1) + E_of(1, 2, a2) + E_of(2, 2, a3)
    expected = one.scale(HighestWeight().value(a1, a3))
    if pi_apply(element, one, X) != expected:
        return False
    return all(not pi_apply(generator(name), one, X) for name in CENTRAL_NAMES)


def check_translation_invariance(
    h: LevelBasisElement,
    h2: LevelBasisElement,
    a: int,
    b: int,
    X: typing.Optional[XFamily] = None,
    method: str = "push",
) -> bool:
    X = X if X is not None else XFamily.identity()
    original = form_on_basis(h, h2, X, method)
    shifted = form_on_basis(translate_basis(h, a, b), translate_basis(h2, a, b), X, method)
    return original == shifted


def check_leading_term(G: GramMatrix) -> bool:
    """
    Every diagonal entry of a level-n Gram matrix has mu-degree n and a
    positive integer leading coefficient.
    """
    for item, entry in zip(G.basis, G.diagonal()):
        level = item.level if isinstance(item, LevelBasisElement) else item.degree
        degree, leading = entry.leading_term()
        constant = leading.as_constant()
        if degree != level or constant is None:
            return False
        if constant.im != 0 or constant.re <= 0 or constant.re.denominator != 1:
            return False
    return True


# mu scans

@dataclass
class ScanRow:
    mu: Fraction
    result: PositivityResult

    @property
    def predicted_positive(self) -> bool:
        return self.mu > 0

    def to_csv(self) -> str:
        margin = "" if self.result.margin is None else repr(self.result.margin)
        return f"{self.mu},{self.result.verdict.value},{margin}"


def _evaluate_mu_polynomial(coefficients: typing.Sequence[GaussianRational], mu: Fraction) -> GaussianRational:
    value = ZERO
    for c in reversed(coefficients):
        value = value * mu + c
    return value


@dataclass
class ScanReport:
    """
    Computed verdicts over a mu grid. ``determinant`` holds the exact det G
    coefficients when q is exact and the matrix is small enough.
    """

    rows: list[ScanRow] = field(default_factory=list)
    boundary: list[Fraction] = field(default_factory=list)
    determinant: typing.Optional[list[GaussianRational]] = None

    def mispredicted(self) -> list[ScanRow]:
        """Rows whose computed verdict is not 'PD exactly when mu > 0'."""
        return [row for row in self.rows if row.predicted_positive != row.result.is_positive_definite]

    @property
    def consistent(self) -> bool:
        return not self.mispredicted()

    def determinant_conflicts(self) -> list[ScanRow]:
        """
        Rows whose verdict contradicts det G at the same mu: a PD matrix has a
        positive determinant, a PSD-degenerate one a vanishing determinant.
        """
        if self.determinant is None:
            return []
        conflicts = []
        for row in self.rows:
            det = _evaluate_mu_polynomial(self.determinant, row.mu)
            verdict = row.result.verdict
            if verdict is Verdict.PD and not (det.im == 0 and det.re > 0):
                conflicts.append(row)
            elif verdict is Verdict.PSD_DEGENERATE and det:
                conflicts.append(row)
        return conflicts

    def verdicts(self) -> list[Verdict]:
        return [row.result.verdict for row in self.rows]

    def to_csv(self) -> str:
        return "mu,verdict,minEigenvalueOrMinor\n" + "".join(row.to_csv() + "\n" for row in self.rows)

    def to_json(self) -> dict:
        data = {
            "rows": [{"mu": str(row.mu), **row.result.to_json()} for row in self.rows],
            "boundary": [str(mu) for mu in self.boundary],
            "consistent": self.consistent,
            "mispredicted": [str(row.mu) for row in self.mispredicted()],
        }
        if self.determinant is not None:
            data["determinant"] = [str(c) for c in self.determinant]
        return data


def scan_mu(
    box: BasisBox,
    X: typing.Optional[XFamily],
    q_spec: NumericSpec,
    mu_grid: typing.Iterable,
    method: str = "push",
    gram: typing.Optional[GramMatrix] = None,
) -> ScanReport:
    """
    Positivity verdicts of the box's Gram matrix for each mu in ``mu_grid``.
    For an exact q the determinant is kept and its rational roots are
    reported as boundary points.
    """
    report = ScanReport()
    mu_grid = [Fraction(mu) for mu in mu_grid]
    if not mu_grid:
        return report

    G = gram if gram is not None else gram_matrix(box, X, method)
    for mu in mu_grid:
        result = check_positive_definite(G, q_spec.with_mu(mu))
        logger.info("mu=%s: %s", mu, result.verdict.value)
        report.rows.append(ScanRow(mu, result))

    if q_spec.is_exact and 0 < G.dimension <= BOUNDARY_DIMENSION_LIMIT:
        report.determinant = gram_determinant(G, q_spec.q_value)
        report.boundary = determinant_roots(report.determinant)
    elif q_spec.is_exact and G.dimension:
        logger.debug("Skipping the determinant of a %dx%d Gram matrix.", G.dimension, G.dimension)

    for row in report.mispredicted():
        logger.warning("mu=%s: computed verdict %s, expected %s.", row.mu, row.result.verdict.value,
                       "PD" if row.predicted_positive else "not PD")
    return report
