"""
The polynomial space V = C[x_(m,n)] and the free-field operators acting on it.

P_A = a_A d/dx_A and Q_A = c_A d/dx_A + d_A x_A are twisted by an
:class:`XFamily` of lower-triangular SL_2 matrices. The operators e_ij(m, n),
D_1 and D_2 are formally infinite sums; on a given monomial only the
summands indexed by its own variables survive, so every sum below runs
over the monomial's support.
"""

from __future__ import annotations

import functools
import logging
import typing

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from ..algebra.liealg import LieElement, bracket
from ..algebra.scalar import GaussianRational, Scalar, ONE, ZERO
from ..errors import ConfigError


logger = logging.getLogger("gl2cq.polyrep")

HALF = Fraction(1, 2)


class IndexPair(typing.NamedTuple):
    m: int
    n: int

    def shift(self, a: int, b: int) -> "IndexPair":
        return IndexPair(self.m + a, self.n + b)

    def label(self) -> str:
        return f"x[{self.m},{self.n}]"


# X-family

@dataclass(frozen=True)
class XEntry:
    """One lower-triangular matrix (a 0; c d) with a*d = 1."""

    a: GaussianRational = ONE
    c: GaussianRational = ZERO
    d: GaussianRational = ONE

    def __post_init__(self):
        for name in ("a", "c", "d"):
            value = getattr(self, name)
            if not isinstance(value, GaussianRational):
                object.__setattr__(self, name, _parse_entry_value(value, name))
        if not self.a:
            raise ConfigError("X-family entries must have a != 0.")
        if self.a * self.d != ONE:
            raise ConfigError(f"X-family entries must satisfy a*d = 1 (got a={self.a}, d={self.d}).")

    def to_json(self) -> dict:
        return {"a": str(self.a), "c": str(self.c), "d": str(self.d)}


def _parse_entry_value(value, name: str) -> GaussianRational:
    if isinstance(value, str):
        return GaussianRational.parse(value)
    try:
        return GaussianRational.coerce(value)
    except (TypeError, ValueError) as e:
        raise ConfigError(f"Invalid X-family value for '{name}': {value!r}.") from e


IDENTITY_ENTRY = XEntry()


class XKind(str, Enum):
    IDENTITY = "identity"
    CONSTANT = "constant"
    TABLE = "table"


@dataclass(frozen=True)
class XFamily:
    """
    A family X_(m,n) of lower-triangular SL_2 matrices.

    ``identity`` uses a=d=1, c=0 everywhere, ``constant`` uses ``default``
    everywhere and ``table`` looks indices up in ``table``, falling back to
    the identity entry elsewhere.
    """

    kind: XKind = XKind.IDENTITY
    default: XEntry = IDENTITY_ENTRY
    table: tuple[tuple[IndexPair, XEntry], ...] = ()

    _lookup: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_lookup", dict(self.table))

    @classmethod
    def identity(cls) -> "XFamily":
        return cls()

    @classmethod
    def constant(cls, a, c, d) -> "XFamily":
        return cls(XKind.CONSTANT, XEntry(a, c, d))

    @classmethod
    def from_table(cls, entries: typing.Mapping[tuple[int, int], XEntry]) -> "XFamily":
        table = tuple(sorted((IndexPair(*key), value) for key, value in entries.items()))
        return cls(XKind.TABLE, IDENTITY_ENTRY, table)

    @classmethod
    def from_json(cls, data: typing.Mapping) -> "XFamily":
        """Load ``{"kind": "identity" | "constant" | "table", ...}``."""
        try:
            kind = XKind(data.get("kind", "identity"))
        except ValueError as e:
            raise ConfigError(f"Unknown X-family kind '{data.get('kind')}'.") from e

        if kind is XKind.IDENTITY:
            return cls.identity()
        if kind is XKind.CONSTANT:
            try:
                return cls.constant(data["a"], data.get("c", "0"), data["d"])
            except KeyError as e:
                raise ConfigError(f"Constant X-family is missing the '{e.args[0]}' entry.") from e

        entries = {}
        for entry in data.get("entries", []):
            try:
                key = (int(entry["m"]), int(entry["n"]))
                entries[key] = XEntry(entry["a"], entry.get("c", "0"), entry["d"])
            except KeyError as e:
                raise ConfigError(f"X-family table entry is missing the '{e.args[0]}' field.") from e
        return cls.from_table(entries)

    def to_json(self) -> dict:
        if self.kind is XKind.IDENTITY:
            return {"kind": "identity"}
        if self.kind is XKind.CONSTANT:
            return {"kind": "constant", **self.default.to_json()}
        return {
            "kind": "table",
            "entries": [{"m": key.m, "n": key.n, **value.to_json()} for key, value in self.table],
        }

    def entry(self, index: tuple[int, int]) -> XEntry:
        if self.kind is XKind.TABLE:
            return self._lookup.get(index, IDENTITY_ENTRY)
        return self.default

    def a(self, index) -> GaussianRational:
        return self.entry(index).a

    def c(self, index) -> GaussianRational:
        return self.entry(index).c

    def d(self, index) -> GaussianRational:
        return self.entry(index).d

    @property
    def is_identity(self) -> bool:
        return self.kind is XKind.IDENTITY


# Monomials and polynomials

class Monomial:
    """
    A product of variables x_(m,n)^e, stored as a sorted tuple of (index, exponent).
    """

    __slots__ = ("_powers", "_hash")

    def __init__(self, powers: typing.Optional[typing.Mapping[tuple[int, int], int]] = None):
        items = []
        for key, exponent in (powers or {}).items():
            if exponent < 0:
                raise ValueError("Monomial exponents must be nonnegative.")
            if exponent:
                items.append((IndexPair(*key), int(exponent)))
        self._powers = tuple(sorted(items))
        self._hash = hash(self._powers)

    @classmethod
    def _from_sorted(cls, powers: tuple) -> "Monomial":
        obj = cls.__new__(cls)
        obj._powers = powers
        obj._hash = hash(powers)
        return obj

    @classmethod
    def one(cls) -> "Monomial":
        return _ONE_MONOMIAL

    @classmethod
    def variable(cls, index: tuple[int, int], exponent: int = 1) -> "Monomial":
        return cls({index: exponent})

    @classmethod
    def from_indices(cls, indices: typing.Iterable[tuple[int, int]]) -> "Monomial":
        powers: dict = {}
        for index in indices:
            powers[index] = powers.get(index, 0) + 1
        return cls(powers)

    @property
    def powers(self) -> tuple[tuple[IndexPair, int], ...]:
        return self._powers

    def exponent(self, index: tuple[int, int]) -> int:
        for key, exponent in self._powers:
            if key == index:
                return exponent
        return 0

    def support(self) -> tuple[IndexPair, ...]:
        return tuple(key for key, _ in self._powers)

    def indices(self) -> tuple[IndexPair, ...]:
        """Variables listed with multiplicity, in sorted order."""
        return tuple(key for key, exponent in self._powers for _ in range(exponent))

    @property
    def degree(self) -> int:
        return sum(exponent for _, exponent in self._powers)

    def times(self, index: tuple[int, int], k: int = 1) -> "Monomial":
        index = IndexPair(*index)
        powers = dict(self._powers)
        powers[index] = powers.get(index, 0) + k
        return Monomial._from_sorted(tuple(sorted(powers.items())))

    def divided(self, index: tuple[int, int], k: int = 1) -> "Monomial":
        powers = dict(self._powers)
        remaining = powers.get(index, 0) - k
        if remaining < 0:
            raise ValueError(f"Cannot divide by x[{index[0]},{index[1]}]^{k}.")
        if remaining:
            powers[index] = remaining
        else:
            powers.pop(index)
        return Monomial._from_sorted(tuple(sorted(powers.items())))

    def __mul__(self, other: "Monomial") -> "Monomial":
        powers = dict(self._powers)
        for key, exponent in other._powers:
            powers[key] = powers.get(key, 0) + exponent
        return Monomial._from_sorted(tuple(sorted(powers.items())))

    def __eq__(self, other):
        if not isinstance(other, Monomial):
            return NotImplemented
        return self._powers == other._powers

    def __hash__(self):
        return self._hash

    def sort_key(self):
        return self.degree, self._powers

    def __lt__(self, other: "Monomial"):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        if not self._powers:
            return "1"
        return "*".join(key.label() if e == 1 else f"{key.label()}^{e}" for key, e in self._powers)

    def __repr__(self):
        return f"Monomial('{self}')"


_ONE_MONOMIAL = Monomial._from_sorted(())


Terms = dict  # Monomial -> Scalar


def _accumulate(target: dict, key, value: Scalar):
    total = target.get(key)
    total = value if total is None else total + value
    if total:
        target[key] = total
    else:
        target.pop(key, None)


class Polynomial:
    """An element of V: a finite :class:`Scalar` combination of monomials."""

    __slots__ = ("_terms",)

    def __init__(self, terms: typing.Optional[typing.Mapping[Monomial, typing.Any]] = None):
        canonical = {}
        for mono, coeff in (terms or {}).items():
            coeff = Scalar.coerce(coeff)
            if coeff:
                canonical[mono] = coeff
        self._terms = canonical

    @classmethod
    def _from_canonical(cls, terms: dict) -> "Polynomial":
        obj = cls.__new__(cls)
        obj._terms = terms
        return obj

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls._from_canonical({})

    @classmethod
    def one(cls) -> "Polynomial":
        return cls._from_canonical({_ONE_MONOMIAL: Scalar.one()})

    @classmethod
    def constant(cls, value) -> "Polynomial":
        return cls({_ONE_MONOMIAL: value})

    @classmethod
    def monomial(cls, mono: Monomial, coeff=None) -> "Polynomial":
        return cls({mono: Scalar.one() if coeff is None else coeff})

    @classmethod
    def variable(cls, m: int, n: int, exponent: int = 1) -> "Polynomial":
        return cls.monomial(Monomial.variable((m, n), exponent))

    @property
    def terms(self) -> dict[Monomial, Scalar]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def monomials(self) -> list[Monomial]:
        return sorted(self._terms)

    def coefficient(self, mono: Monomial) -> Scalar:
        return self._terms.get(mono, Scalar.zero())

    def constant_term(self) -> Scalar:
        return self.coefficient(_ONE_MONOMIAL)

    def degree(self) -> int:
        """Total degree, or -1 for the zero polynomial."""
        return max((mono.degree for mono in self._terms), default=-1)

    def support(self) -> set[IndexPair]:
        return {key for mono in self._terms for key in mono.support()}

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    __hash__ = None

    def __add__(self, other: "Polynomial") -> "Polynomial":
        result = dict(self._terms)
        for mono, coeff in other._terms.items():
            _accumulate(result, mono, coeff)
        return Polynomial._from_canonical(result)

    def __neg__(self):
        return Polynomial._from_canonical({mono: -coeff for mono, coeff in self._terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def scale(self, factor) -> "Polynomial":
        factor = Scalar.coerce(factor)
        if not factor:
            return Polynomial.zero()
        return Polynomial._from_canonical({mono: coeff * factor for mono, coeff in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        result: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                _accumulate(result, m1 * m2, c1 * c2)
        return Polynomial._from_canonical(result)

    def __rmul__(self, other):
        return self.scale(other)

    def __str__(self):
        if not self._terms:
            return "0"
        parts = [_render_term(coeff, mono) for mono, coeff in sorted(self._terms.items())]
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"Polynomial('{self}')"

    def to_json(self) -> list[dict]:
        return [
            {"monomial": [[key.m, key.n, e] for key, e in mono.powers], "coeff": coeff.to_json()}
            for mono, coeff in sorted(self._terms.items())
        ]


def _render_term(coeff: Scalar, mono: Monomial) -> str:
    constant = coeff.as_constant()
    if not mono.powers:
        text = str(coeff)
        if constant is None and len(coeff.terms) > 1:
            return f"({text})"
        return text
    body = str(mono)
    if coeff == Scalar.one():
        return body
    if coeff == -Scalar.one():
        return f"-{body}"
    if constant is not None:
        if constant.im == 0 or constant.re == 0:
            return f"{constant}*{body}"
        return f"({constant})*{body}"
    if constant is None and len(coeff.terms) == 1:
        return f"{coeff}*{body}"
    return f"({coeff})*{body}"


# Weyl generators on term dictionaries

def _P(index: IndexPair, terms: dict, X: XFamily) -> dict:
    a = X.a(index)
    result: dict = {}
    for mono, coeff in terms.items():
        e = mono.exponent(index)
        if e:
            _accumulate(result, mono.divided(index), coeff * (a * e))
    return result


def _Q(index: IndexPair, terms: dict, X: XFamily) -> dict:
    entry = X.entry(index)
    result: dict = {}
    for mono, coeff in terms.items():
        if entry.c:
            e = mono.exponent(index)
            if e:
                _accumulate(result, mono.divided(index), coeff * (entry.c * e))
        _accumulate(result, mono.times(index), coeff * entry.d)
    return result


def _linear(monomial_operator: typing.Callable[[Monomial], tuple], f: Polynomial) -> Polynomial:
    result: dict = {}
    for mono, coeff in f._terms.items():
        for image, value in monomial_operator(mono):
            _accumulate(result, image, coeff * value)
    return Polynomial._from_canonical(result)


@functools.lru_cache(maxsize=1 << 16)
def _e_on_monomial(i: int, j: int, m1: int, n1: int, mono: Monomial, X: XFamily) -> tuple:
    start = {mono: Scalar.one()}
    result: dict = {}

    if (i, j) == (2, 1):
        result = _Q(IndexPair(m1, n1), start, X)

    elif (i, j) in ((1, 1), (2, 2)):
        for A in mono.support():
            if (i, j) == (1, 1):
                phase = -Scalar.q(A.n * m1)
            else:
                phase = Scalar.q(A.m * n1)
            for image, value in _Q(A.shift(m1, n1), _P(A, start, X), X).items():
                _accumulate(result, image, value * phase)
        if (m1, n1) == (0, 0):
            delta = Scalar.mu() * (-HALF if (i, j) == (1, 1) else HALF)
            _accumulate(result, mono, delta)

    else:
        lowering = IndexPair(-m1, -n1)
        if mono.exponent(lowering):
            phase = -(Scalar.q(-m1 * n1) * Scalar.mu())
            for image, value in _P(lowering, start, X).items():
                _accumulate(result, image, value * phase)
        support = mono.support()
        for A in support:
            after_A = _P(A, start, X)
            for B in support:
                second = _P(B, after_A, X)
                if not second:
                    continue
                phase = -Scalar.q(n1 * B.m + A.n * m1 + A.n * B.m)
                target = IndexPair(A.m + B.m + m1, A.n + B.n + n1)
                for image, value in _Q(target, second, X).items():
                    _accumulate(result, image, value * phase)

    return tuple(result.items())


@functools.lru_cache(maxsize=1 << 16)
def _D_on_monomial(which: int, mono: Monomial, X: XFamily) -> tuple:
    start = {mono: Scalar.one()}
    result: dict = {}
    for A in mono.support():
        weight = A.m if which == 1 else A.n
        if not weight:
            continue
        for image, value in _Q(A, _P(A, start, X), X).items():
            _accumulate(result, image, value * weight)
    return tuple(result.items())


def clear_operator_cache():
    _e_on_monomial.cache_clear()
    _D_on_monomial.cache_clear()


# Public operators

def apply_P(A: tuple[int, int], f: Polynomial, X: XFamily) -> Polynomial:
    return Polynomial._from_canonical(_P(IndexPair(*A), f._terms, X))


def apply_Q(A: tuple[int, int], f: Polynomial, X: XFamily) -> Polynomial:
    return Polynomial._from_canonical(_Q(IndexPair(*A), f._terms, X))


def apply_e(i: int, j: int, m1: int, n1: int, f: Polynomial, X: XFamily) -> Polynomial:
    if i not in (1, 2) or j not in (1, 2):
        raise ValueError(f"Matrix indices must be 1 or 2 (got {i}{j}).")
    return _linear(lambda mono: _e_on_monomial(i, j, m1, n1, mono, X), f)


def apply_D(which: int, f: Polynomial, X: XFamily) -> Polynomial:
    if which not in (1, 2):
        raise ValueError(f"Degree operator must be 1 or 2 (got {which}).")
    return _linear(lambda mono: _D_on_monomial(which, mono, X), f)


def pi_apply(x: LieElement, f: Polynomial, X: XFamily) -> Polynomial:
    """
    The free-field action: E_ij(s^m t^n) -> e_ij(m, n), d_s -> D_1, d_t -> D_2,
    with c_s and c_t acting as zero.
    """
    result = Polynomial.zero()
    for (i, j, m, n), coeff in x.matrix_items():
        result = result + apply_e(i, j, m, n, f, X).scale(coeff)
    for name, which in (("ds", 1), ("dt", 2)):
        coeff = x.central(name)
        if coeff:
            result = result + apply_D(which, f, X).scale(coeff)
    return result


def commutator_action(x: LieElement, y: LieElement, f: Polynomial, X: XFamily) -> Polynomial:
    """pi(x) pi(y) f - pi(y) pi(x) f."""
    return pi_apply(x, pi_apply(y, f, X), X) - pi_apply(y, pi_apply(x, f, X), X)


def check_homomorphism(x: LieElement, y: LieElement, f: Polynomial, X: XFamily) -> bool:
    lhs = commutator_action(x, y, f, X)
    rhs = pi_apply(bracket(x, y), f, X)
    if lhs != rhs:
        logger.debug("Homomorphism failed for x=%s, y=%s, f=%s: %s != %s", x, y, f, lhs, rhs)
        return False
    return True


def check_weyl_relations(A: tuple[int, int], B: tuple[int, int], f: Polynomial, X: XFamily) -> bool:
    """[P_A, P_B] = 0, [Q_A, Q_B] = 0 and [P_A, Q_B] = delta_AB on ``f``."""
    PP = apply_P(A, apply_P(B, f, X), X) - apply_P(B, apply_P(A, f, X), X)
    QQ = apply_Q(A, apply_Q(B, f, X), X) - apply_Q(B, apply_Q(A, f, X), X)
    PQ = apply_P(A, apply_Q(B, f, X), X) - apply_Q(B, apply_P(A, f, X), X)
    expected = f if tuple(A) == tuple(B) else Polynomial.zero()
    return not PP and not QQ and PQ == expected


def _power_of_lowering(f: Polynomial, times: int, X: XFamily) -> Polynomial:
    for _ in range(times):
        f = apply_e(2, 1, 0, 0, f, X)
    return f


def check_raising_commutation(i: int, c, f: Polynomial, X: XFamily) -> bool:
    """
    With F = e_21(0,0) and e_jk(c) = c e_jk(0,0), check
    e_12(c) F^i = F^i e_12(c) + i F^(i-1) (e_11(c) - e_22(c)) - c i (i-1) F^(i-1) on ``f``.
    """
    if i < 0:
        raise ValueError("The power of the lowering operator must be nonnegative.")
    c = Scalar.coerce(c)

    lhs = apply_e(1, 2, 0, 0, _power_of_lowering(f, i, X), X).scale(c)
    rhs = _power_of_lowering(apply_e(1, 2, 0, 0, f, X).scale(c), i, X)
    if i:
        cartan = apply_e(1, 1, 0, 0, f, X) - apply_e(2, 2, 0, 0, f, X)
        rhs = rhs + _power_of_lowering(cartan.scale(c * i), i - 1, X)
        rhs = rhs - _power_of_lowering(f, i - 1, X).scale(c * (i * (i - 1)))
    return lhs == rhs
