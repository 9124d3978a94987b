"""
Exact coefficient ring (Gaussian rationals)[q, q^-1][mu].

Every other module works over this ring. ``q`` is kept as a formal Laurent
variable with conjugation ``q -> q^-1`` (we always assume ``|q| = 1``) and
``mu`` is a formal real variable fixed by conjugation.
"""

from __future__ import annotations

import cmath
import math
import re
import typing

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from ..errors import ConfigError


Rational = typing.Union[int, Fraction]


@dataclass(frozen=True, slots=True)
class GaussianRational:
    """A complex number with rational real and imaginary parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        if type(self.re) is not Fraction:
            object.__setattr__(self, "re", Fraction(self.re))
        if type(self.im) is not Fraction:
            object.__setattr__(self, "im", Fraction(self.im))

    @classmethod
    def coerce(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, complex):
            raise TypeError("Floating complex values cannot be converted exactly.")
        return cls(Fraction(value), Fraction(0))

    @classmethod
    def parse(cls, text: str) -> "GaussianRational":
        """
        Parse strings like ``"3"``, ``"-1/2"``, ``"i"``, ``"-3/2i"`` or ``"1/2+3/4 i"``.
        """
        compact = text.replace(" ", "")
        if not compact:
            raise ConfigError("Empty Gaussian rational literal.")
        match = _GAUSSIAN_RE.fullmatch(compact)
        if match is None:
            raise ConfigError(f"Invalid Gaussian rational literal '{text}'.")

        re_part = match.group("re")
        im_part = match.group("im")
        real = Fraction(re_part) if re_part else Fraction(0)
        imag = Fraction(0)
        if im_part is not None:
            if im_part in ("", "+"):
                imag = Fraction(1)
            elif im_part == "-":
                imag = Fraction(-1)
            else:
                imag = Fraction(im_part)
        return cls(real, imag)

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __add__(self, other):
        other = GaussianRational.coerce(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = GaussianRational.coerce(other)
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        other = GaussianRational.coerce(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = GaussianRational.coerce(other)
        norm = other.norm()
        if norm == 0:
            raise ZeroDivisionError("Division by a zero Gaussian rational.")
        num = self * other.conjugate()
        return GaussianRational(num.re / norm, num.im / norm)

    def __pow__(self, exponent: int):
        if exponent < 0:
            return GaussianRational(1) / (self ** -exponent)
        result = GaussianRational(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return self.im == 0

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))

    def to_json(self) -> tuple[str, str]:
        return str(self.re), str(self.im)

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        imag = "i" if abs(self.im) == 1 else f"{abs(self.im)}i"
        if self.re == 0:
            return imag if self.im > 0 else f"-{imag}"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{imag}"


_GAUSSIAN_RE = re.compile(
    r"(?P<re>[+-]?\d+(?:/\d+)?(?![\d/]*i))?"
    r"(?:(?P<im>[+-]?(?:\d+(?:/\d+)?)?)i)?"
)

ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


class ExactPoint(Enum):
    """The unit-modulus Gaussian rationals, indexed by their power of i."""

    ONE = 0
    I = 1
    MINUS_ONE = 2
    MINUS_I = 3

    @classmethod
    def parse(cls, text: str) -> "ExactPoint":
        table = {"1": cls.ONE, "i": cls.I, "-1": cls.MINUS_ONE, "-i": cls.MINUS_I}
        try:
            return table[text.strip()]
        except KeyError:
            raise ConfigError(f"Exact q must be one of 1, -1, i, -i (got '{text}').") from None

    def power(self, k: int) -> GaussianRational:
        return _I_POWERS[(self.value * k) % 4]

    @property
    def label(self) -> str:
        return ("1", "i", "-1", "-i")[self.value]


_I_POWERS = (ONE, I, GaussianRational(-1), GaussianRational(0, -1))


@dataclass(frozen=True)
class RootOfUnity:
    """q = exp(2*pi*i*numerator/order)."""

    numerator: int
    order: int

    def __post_init__(self):
        if self.order < 1:
            raise ConfigError(f"Root of unity order must be positive (got {self.order}).")

    @classmethod
    def parse(cls, text: str) -> "RootOfUnity":
        num, _, order = text.partition(":")
        try:
            return cls(int(num), int(order))
        except ValueError:
            raise ConfigError(f"Expected NUM:ORDER for a root of unity (got '{text}').") from None

    def power(self, k: int) -> complex:
        return cmath.exp(2j * math.pi * ((self.numerator * k) % self.order) / self.order)

    @property
    def label(self) -> str:
        return f"{self.numerator}:{self.order}"


@dataclass(frozen=True)
class NumericSpec:
    """A numeric specialisation of (q, mu) used by the positivity checks."""

    q_value: typing.Union[ExactPoint, RootOfUnity] = ExactPoint.I
    mu_value: Fraction = Fraction(1)
    tolerance: float = 1e-9

    def __post_init__(self):
        object.__setattr__(self, "mu_value", Fraction(self.mu_value))
        if self.tolerance < 0:
            raise ConfigError("Tolerance must be nonnegative.")

    @property
    def is_exact(self) -> bool:
        return isinstance(self.q_value, ExactPoint)

    def with_mu(self, mu) -> "NumericSpec":
        return NumericSpec(self.q_value, Fraction(mu), self.tolerance)


class Scalar:
    """
    Finite combination of ``q^k mu^d`` terms with Gaussian-rational coefficients.

    Instances are immutable and kept in canonical form (no zero coefficient
    is ever stored), so structural equality is ring equality.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: typing.Optional[typing.Mapping[tuple[int, int], typing.Any]] = None):
        canonical = {}
        if terms:
            for (k, d), coeff in terms.items():
                if d < 0:
                    raise ValueError("The degree in mu must be nonnegative.")
                coeff = GaussianRational.coerce(coeff)
                if coeff:
                    canonical[(int(k), int(d))] = coeff
        self._terms = canonical
        self._hash = None

    @classmethod
    def _from_canonical(cls, terms: dict) -> "Scalar":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls) -> "Scalar":
        return cls._from_canonical({})

    @classmethod
    def one(cls) -> "Scalar":
        return cls._from_canonical({(0, 0): ONE})

    @classmethod
    def constant(cls, value) -> "Scalar":
        value = GaussianRational.coerce(value)
        return cls._from_canonical({(0, 0): value} if value else {})

    @classmethod
    def q(cls, k: int = 1) -> "Scalar":
        return cls._from_canonical({(k, 0): ONE})

    @classmethod
    def mu(cls, d: int = 1) -> "Scalar":
        return cls._from_canonical({(0, d): ONE})

    @classmethod
    def coerce(cls, value) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        return cls.constant(value)

    @property
    def terms(self) -> dict[tuple[int, int], GaussianRational]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, k: int, d: int) -> GaussianRational:
        return self._terms.get((k, d), ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self._terms == other._terms
        try:
            return self._terms == Scalar.coerce(other)._terms
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other):
        other = Scalar.coerce(other)
        if not other._terms:
            return self
        if not self._terms:
            return other
        result = dict(self._terms)
        for key, coeff in other._terms.items():
            total = result.get(key)
            total = coeff if total is None else total + coeff
            if total:
                result[key] = total
            else:
                result.pop(key, None)
        return Scalar._from_canonical(result)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._from_canonical({key: -coeff for key, coeff in self._terms.items()})

    def __sub__(self, other):
        return self + (-Scalar.coerce(other))

    def __rsub__(self, other):
        return Scalar.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            value = GaussianRational.coerce(other)
            if not value:
                return Scalar.zero()
            return Scalar._from_canonical({key: coeff * value for key, coeff in self._terms.items()})
        if not self._terms or not other._terms:
            return Scalar.zero()
        result = {}
        for (k1, d1), c1 in self._terms.items():
            for (k2, d2), c2 in other._terms.items():
                key = (k1 + k2, d1 + d2)
                total = result.get(key)
                product = c1 * c2
                result[key] = product if total is None else total + product
        return Scalar._from_canonical({key: coeff for key, coeff in result.items() if coeff})

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise ValueError("Scalars can only be raised to nonnegative powers.")
        result = Scalar.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conj(self) -> "Scalar":
        return Scalar._from_canonical({(-k, d): coeff.conjugate() for (k, d), coeff in self._terms.items()})

    def mu_degree(self) -> int:
        """Degree in mu, or -1 for the zero scalar."""
        return max((d for _, d in self._terms), default=-1)

    def leading_term(self) -> tuple[int, "Scalar"]:
        """Return the mu-degree and the (q-dependent) coefficient of its leading power."""
        degree = self.mu_degree()
        return degree, Scalar._from_canonical({(k, 0): c for (k, d), c in self._terms.items() if d == degree})

    def mu_coefficients(self) -> dict[int, "Scalar"]:
        """Split into {mu-degree: q-Laurent coefficient}."""
        parts: dict[int, dict] = {}
        for (k, d), coeff in self._terms.items():
            parts.setdefault(d, {})[(k, 0)] = coeff
        return {d: Scalar._from_canonical(terms) for d, terms in parts.items()}

    def as_constant(self) -> typing.Optional[GaussianRational]:
        """The value when the scalar involves neither q nor mu, else None."""
        if not self._terms:
            return ZERO
        if set(self._terms) == {(0, 0)}:
            return self._terms[(0, 0)]
        return None

    def evaluate(self, spec: NumericSpec):
        """
        Substitute q and mu.

        Returns a :class:`GaussianRational` when q is an exact point and a
        Python ``complex`` when q is a root of unity.
        """
        mu = spec.mu_value
        if spec.is_exact:
            total = ZERO
            for (k, d), coeff in self._terms.items():
                total = total + coeff * spec.q_value.power(k) * (mu ** d)
            return total

        total = 0j
        for (k, d), coeff in self._terms.items():
            total += coeff.to_complex() * spec.q_value.power(k) * float(mu) ** d
        return total

    def sort_key(self):
        return tuple(sorted((key, coeff.re, coeff.im) for key, coeff in self._terms.items()))

    def to_json(self) -> list[dict]:
        return [
            {"q": k, "mu": d, "re": str(coeff.re), "im": str(coeff.im)}
            for (k, d), coeff in sorted(self._terms.items())
        ]

    @classmethod
    def from_json(cls, data: typing.Iterable[dict]) -> "Scalar":
        terms = {}
        for entry in data:
            key = (int(entry["q"]), int(entry["mu"]))
            terms[key] = GaussianRational.coerce(terms.get(key, ZERO)) + GaussianRational(
                Fraction(entry.get("re", "0")), Fraction(entry.get("im", "0"))
            )
        return cls(terms)

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for (k, d), coeff in sorted(self._terms.items(), key=lambda item: (-item[0][1], -item[0][0])):
            factors = []
            if k:
                factors.append("q" if k == 1 else f"q^{k}")
            if d:
                factors.append("mu" if d == 1 else f"mu^{d}")
            parts.append(_render_term(coeff, factors))
        text = " + ".join(parts)
        return text.replace("+ -", "- ")

    def __repr__(self):
        return f"Scalar('{self}')"


def _render_term(coeff: GaussianRational, factors: list[str]) -> str:
    if not factors:
        return str(coeff) if coeff.im == 0 or coeff.re == 0 else f"({coeff})"
    body = "*".join(factors)
    if coeff == ONE:
        return body
    if coeff == -ONE:
        return f"-{body}"
    if coeff.im == 0 or coeff.re == 0:
        return f"{coeff}*{body}"
    return f"({coeff})*{body}"


def scalar_add(a: Scalar, b: Scalar) -> Scalar:
    return a + b


def scalar_mul(a: Scalar, b: Scalar) -> Scalar:
    return a * b


def scalar_conj(a: Scalar) -> Scalar:
    return a.conj()


def scalar_eval(a: Scalar, spec: NumericSpec):
    return a.evaluate(spec)
