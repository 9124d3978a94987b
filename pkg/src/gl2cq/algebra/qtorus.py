"""
The quantum torus C_q = (+) C s^m t^n with ``t s = q s t``.
"""

from __future__ import annotations

import re
import typing

from .scalar import Scalar
from ..errors import ConfigError


Exponent = tuple[int, int]


class TorusElement:
    """
    Finite combination of monomials ``s^m t^n`` with :class:`Scalar` coefficients.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: typing.Optional[typing.Mapping[Exponent, typing.Any]] = None):
        canonical = {}
        if terms:
            for (m, n), coeff in terms.items():
                coeff = Scalar.coerce(coeff)
                if coeff:
                    canonical[(int(m), int(n))] = coeff
        self._terms = canonical
        self._hash = None

    @classmethod
    def _from_canonical(cls, terms: dict) -> "TorusElement":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, m: int, n: int, coeff=None) -> "TorusElement":
        coeff = Scalar.one() if coeff is None else Scalar.coerce(coeff)
        return cls._from_canonical({(m, n): coeff} if coeff else {})

    @classmethod
    def one(cls) -> "TorusElement":
        return cls.monomial(0, 0)

    @classmethod
    def zero(cls) -> "TorusElement":
        return cls._from_canonical({})

    @classmethod
    def parse(cls, text: str) -> "TorusElement":
        """Parse a single monomial written as ``"s^m t^n"`` (either factor may be omitted)."""
        compact = text.replace(" ", "").replace("*", "")
        if compact == "1":
            return cls.one()
        match = _MONOMIAL_RE.fullmatch(compact)
        if match is None or not compact:
            raise ConfigError(f"Invalid quantum torus monomial '{text}'.")
        m = _exponent(match.group("s"))
        n = _exponent(match.group("t"))
        return cls.monomial(m, n)

    @property
    def terms(self) -> dict[Exponent, Scalar]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def support(self) -> set[Exponent]:
        return set(self._terms)

    def coefficient(self, m: int, n: int) -> Scalar:
        return self._terms.get((m, n), Scalar.zero())

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if not isinstance(other, TorusElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other: "TorusElement") -> "TorusElement":
        result = dict(self._terms)
        for key, coeff in other._terms.items():
            total = result.get(key)
            total = coeff if total is None else total + coeff
            if total:
                result[key] = total
            else:
                result.pop(key, None)
        return TorusElement._from_canonical(result)

    def __neg__(self):
        return TorusElement._from_canonical({key: -coeff for key, coeff in self._terms.items()})

    def __sub__(self, other: "TorusElement") -> "TorusElement":
        return self + (-other)

    def scale(self, factor) -> "TorusElement":
        factor = Scalar.coerce(factor)
        if not factor:
            return TorusElement.zero()
        return TorusElement({key: coeff * factor for key, coeff in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, TorusElement):
            return torus_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for (m, n), coeff in sorted(self._terms.items()):
            mono = render_monomial(m, n)
            if coeff == Scalar.one():
                parts.append(mono)
            else:
                parts.append(f"({coeff})*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"TorusElement('{self}')"

    def to_json(self) -> list[dict]:
        return [{"m": m, "n": n, "coeff": coeff.to_json()} for (m, n), coeff in sorted(self._terms.items())]

    @classmethod
    def from_json(cls, data: typing.Iterable[dict]) -> "TorusElement":
        result = cls.zero()
        for entry in data:
            result = result + cls.monomial(int(entry["m"]), int(entry["n"]), Scalar.from_json(entry["coeff"]))
        return result


_MONOMIAL_RE = re.compile(r"(?:s(?P<s>\^\(?-?\d+\)?)?)?(?:t(?P<t>\^\(?-?\d+\)?)?)?")


def _exponent(group: typing.Optional[str]) -> int:
    if group is None:
        return 0
    return int(group.lstrip("^").strip("()"))


def render_monomial(m: int, n: int) -> str:
    if m == 0 and n == 0:
        return "1"
    parts = []
    if m:
        parts.append("s" if m == 1 else f"s^{m}")
    if n:
        parts.append("t" if n == 1 else f"t^{n}")
    return " ".join(parts)


def monomial_product_phase(first: Exponent, second: Exponent) -> int:
    """Exponent k in (s^m1 t^n1)(s^m2 t^n2) = q^k s^(m1+m2) t^(n1+n2)."""
    return first[1] * second[0]


def torus_mul(a: TorusElement, b: TorusElement) -> TorusElement:
    result: dict[Exponent, Scalar] = {}
    for (m1, n1), c1 in a._terms.items():
        for (m2, n2), c2 in b._terms.items():
            key = (m1 + m2, n1 + n2)
            term = c1 * c2 * Scalar.q(n1 * m2)
            total = result.get(key)
            result[key] = term if total is None else total + term
    return TorusElement._from_canonical({key: coeff for key, coeff in result.items() if coeff})


def torus_product(*factors: TorusElement) -> TorusElement:
    result = TorusElement.one()
    for factor in factors:
        result = torus_mul(result, factor)
    return result


def kappa(a: TorusElement) -> Scalar:
    return a._terms.get((0, 0), Scalar.zero())


def torus_deg(a: TorusElement, which: str) -> TorusElement:
    if which not in ("s", "t"):
        raise ValueError(f"Degree operator must be 's' or 't' (got '{which}').")
    index = 0 if which == "s" else 1
    return TorusElement({key: coeff * key[index] for key, coeff in a._terms.items()})


def torus_bar(a: TorusElement) -> TorusElement:
    """Antilinear extension of lambda s^m t^n -> conj(lambda) q^(mn) s^-m t^-n."""
    return TorusElement._from_canonical({
        (-m, -n): coeff.conj() * Scalar.q(m * n)
        for (m, n), coeff in a._terms.items()
    })
