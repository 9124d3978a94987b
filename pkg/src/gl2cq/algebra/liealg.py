"""
The extended affine Lie algebra gl_2(C_q)~ spanned by E_ij(s^m t^n), c_s, c_t, d_s and d_t.
"""

from __future__ import annotations

import re
import typing

from .qtorus import Exponent, TorusElement, render_monomial
from .scalar import Scalar
from ..errors import ConfigError


MatrixKey = tuple[int, int, int, int]
"""(i, j, m, n) indexing the generator E_ij(s^m t^n)."""

CENTRAL_NAMES = ("cs", "ct", "ds", "dt")


class LieElement:
    """
    Finite combination of the generators of gl_2(C_q)~ with :class:`Scalar` coefficients.

    ``matrix`` holds the E_ij(s^m t^n) coefficients keyed by (i, j, m, n), while
    the central elements and derivations are stored by name in ``extra``.
    """

    __slots__ = ("_matrix", "_extra", "_hash")

    def __init__(
        self,
        matrix: typing.Optional[typing.Mapping[MatrixKey, typing.Any]] = None,
        cs=None, ct=None, ds=None, dt=None,
    ):
        canonical = {}
        for (i, j, m, n), coeff in (matrix or {}).items():
            if i not in (1, 2) or j not in (1, 2):
                raise ValueError(f"Matrix indices must be 1 or 2 (got {i}{j}).")
            coeff = Scalar.coerce(coeff)
            if coeff:
                canonical[(i, j, int(m), int(n))] = coeff

        extra = {}
        for name, coeff in zip(CENTRAL_NAMES, (cs, ct, ds, dt)):
            if coeff is None:
                continue
            coeff = Scalar.coerce(coeff)
            if coeff:
                extra[name] = coeff

        self._matrix = canonical
        self._extra = extra
        self._hash = None

    @classmethod
    def _from_canonical(cls, matrix: dict, extra: dict) -> "LieElement":
        obj = cls.__new__(cls)
        obj._matrix = matrix
        obj._extra = extra
        obj._hash = None
        return obj

    @classmethod
    def zero(cls) -> "LieElement":
        return cls._from_canonical({}, {})

    @property
    def matrix(self) -> dict[MatrixKey, Scalar]:
        return dict(self._matrix)

    @property
    def extra(self) -> dict[str, Scalar]:
        return dict(self._extra)

    def matrix_items(self):
        return self._matrix.items()

    def central(self, name: str) -> Scalar:
        return self._extra.get(name, Scalar.zero())

    def torus_part(self, i: int, j: int) -> TorusElement:
        """The quantum torus entry of the (i, j) matrix position."""
        return TorusElement({(m, n): coeff for (a, b, m, n), coeff in self._matrix.items() if (a, b) == (i, j)})

    def __bool__(self):
        return bool(self._matrix) or bool(self._extra)

    def __eq__(self, other):
        if not isinstance(other, LieElement):
            return NotImplemented
        return self._matrix == other._matrix and self._extra == other._extra

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((frozenset(self._matrix.items()), frozenset(self._extra.items())))
        return self._hash

    def __add__(self, other: "LieElement") -> "LieElement":
        return LieElement._from_canonical(_merge(self._matrix, other._matrix), _merge(self._extra, other._extra))

    def __neg__(self):
        return LieElement._from_canonical(
            {key: -coeff for key, coeff in self._matrix.items()},
            {key: -coeff for key, coeff in self._extra.items()},
        )

    def __sub__(self, other: "LieElement") -> "LieElement":
        return self + (-other)

    def scale(self, factor) -> "LieElement":
        factor = Scalar.coerce(factor)
        if not factor:
            return LieElement.zero()
        return LieElement._from_canonical(
            {key: coeff * factor for key, coeff in self._matrix.items()},
            {key: coeff * factor for key, coeff in self._extra.items()},
        )

    def __mul__(self, other):
        return self.scale(other)

    __rmul__ = __mul__

    def terms(self) -> typing.Iterator[tuple["LieElement", Scalar]]:
        """Yield (basis generator, coefficient) pairs."""
        for (i, j, m, n), coeff in self._matrix.items():
            yield E(i, j, m, n), coeff
        for name, coeff in self._extra.items():
            yield generator(name), coeff

    def __str__(self):
        parts = []
        for (i, j, m, n), coeff in sorted(self._matrix.items()):
            parts.append(_with_coefficient(coeff, f"E{i}{j}({render_monomial(m, n)})"))
        for name in CENTRAL_NAMES:
            if name in self._extra:
                parts.append(_with_coefficient(self._extra[name], f"{name[0]}_{name[1]}"))
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"LieElement('{self}')"

    def to_json(self) -> dict:
        return {
            "matrix": [
                {"i": i, "j": j, "m": m, "n": n, "coeff": coeff.to_json()}
                for (i, j, m, n), coeff in sorted(self._matrix.items())
            ],
            **{name: self._extra[name].to_json() for name in CENTRAL_NAMES if name in self._extra},
        }


def _merge(first: dict, second: dict) -> dict:
    result = dict(first)
    for key, coeff in second.items():
        total = result.get(key)
        total = coeff if total is None else total + coeff
        if total:
            result[key] = total
        else:
            result.pop(key, None)
    return result


def _with_coefficient(coeff: Scalar, body: str) -> str:
    if coeff == Scalar.one():
        return body
    return f"({coeff})*{body}"


def E(i: int, j: int, m: int = 0, n: int = 0, coeff=None) -> LieElement:
    """The generator E_ij(s^m t^n), optionally scaled."""
    coeff = Scalar.one() if coeff is None else Scalar.coerce(coeff)
    return LieElement({(i, j, m, n): coeff})


def E_of(i: int, j: int, a: TorusElement) -> LieElement:
    """E_ij(a) for a general quantum torus element ``a``."""
    return LieElement({(i, j, m, n): coeff for (m, n), coeff in a.items()})


def generator(name: str) -> LieElement:
    if name not in CENTRAL_NAMES:
        raise ValueError(f"Unknown central generator '{name}'.")
    return LieElement(**{name: Scalar.one()})


def c_s() -> LieElement:
    return generator("cs")


def c_t() -> LieElement:
    return generator("ct")


def d_s() -> LieElement:
    return generator("ds")


def d_t() -> LieElement:
    return generator("dt")


_GENERATOR_RE = re.compile(r"E(?P<i>[12])(?P<j>[12])\[(?P<m>-?\d+),(?P<n>-?\d+)\]")


def parse_generator(text: str) -> LieElement:
    """Parse ``"E12[m,n]"``, ``"cs"``, ``"ct"``, ``"ds"`` or ``"dt"``."""
    compact = text.replace(" ", "")
    if compact in CENTRAL_NAMES:
        return generator(compact)
    match = _GENERATOR_RE.fullmatch(compact)
    if match is None:
        raise ConfigError(f"Invalid generator '{text}'. Expected 'Eij[m,n]', 'cs', 'ct', 'ds' or 'dt'.")
    return E(int(match["i"]), int(match["j"]), int(match["m"]), int(match["n"]))


def _bracket_matrix(first: MatrixKey, second: MatrixKey):
    """Structure constants of [E_ij(s^m1 t^n1), E_kl(s^m2 t^n2)]."""
    i, j, m1, n1 = first
    k, l, m2, n2 = second
    key_sum = (m1 + m2, n1 + n2)
    matrix = []
    extra = []
    if j == k:
        matrix.append(((i, l) + key_sum, Scalar.q(n1 * m2)))
    if i == l:
        matrix.append(((k, j) + key_sum, -Scalar.q(n2 * m1)))
    if j == k and i == l and key_sum == (0, 0):
        if m1:
            extra.append(("cs", Scalar.q(n1 * m2) * m1))
        if n1:
            extra.append(("ct", Scalar.q(n1 * m2) * n1))
    return matrix, extra


def _derivation_index(name: str) -> typing.Optional[int]:
    return {"ds": 2, "dt": 3}.get(name)


def bracket(x: LieElement, y: LieElement) -> LieElement:
    matrix: dict = {}
    extra: dict = {}

    def accumulate(target: dict, key, value: Scalar):
        total = target.get(key)
        target[key] = value if total is None else total + value

    for kx, cx in x._matrix.items():
        for ky, cy in y._matrix.items():
            coeff = cx * cy
            m_terms, e_terms = _bracket_matrix(kx, ky)
            for key, value in m_terms:
                accumulate(matrix, key, coeff * value)
            for key, value in e_terms:
                accumulate(extra, key, coeff * value)

    # [d, E(s^m t^n)] = (m or n) E(s^m t^n), and the reverse with a sign.
    for name, cd in x._extra.items():
        index = _derivation_index(name)
        if index is None:
            continue
        for key, cy in y._matrix.items():
            if key[index]:
                accumulate(matrix, key, cd * cy * key[index])
    for name, cd in y._extra.items():
        index = _derivation_index(name)
        if index is None:
            continue
        for key, cx in x._matrix.items():
            if key[index]:
                accumulate(matrix, key, -(cd * cx * key[index]))

    return LieElement._from_canonical(
        {key: value for key, value in matrix.items() if value},
        {key: value for key, value in extra.items() if value},
    )


def omega(x: LieElement) -> LieElement:
    """
    The antilinear anti-involution E_ij(a) -> (-1)^(i+j) E_ji(bar(a)).

    c_s, c_t, d_s and d_t are fixed; their coefficients are conjugated.
    """
    matrix = {}
    for (i, j, m, n), coeff in x._matrix.items():
        value = coeff.conj() * Scalar.q(m * n)
        if (i + j) % 2:
            value = -value
        matrix[(j, i, -m, -n)] = value
    extra = {name: coeff.conj() for name, coeff in x._extra.items()}
    return LieElement._from_canonical(matrix, extra)


def invariant_form(x: LieElement, y: LieElement) -> Scalar:
    """
    The symmetric invariant bilinear form: (A(a), B(b)) = tr(AB) kappa(ab)
    and (c_s, d_s) = (c_t, d_t) = 1.
    """
    total = Scalar.zero()
    for (i, j, m1, n1), cx in x._matrix.items():
        for (k, l, m2, n2), cy in y._matrix.items():
            if j == k and i == l and m1 + m2 == 0 and n1 + n2 == 0:
                total = total + cx * cy * Scalar.q(n1 * m2)
    for central, derivation in (("cs", "ds"), ("ct", "dt")):
        total = total + x.central(central) * y.central(derivation)
        total = total + x.central(derivation) * y.central(central)
    return total


def check_jacobi(x: LieElement, y: LieElement, z: LieElement) -> bool:
    total = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))
    return not total


def check_antisymmetry(x: LieElement, y: LieElement) -> bool:
    return bracket(x, y) == -bracket(y, x)


def check_invariance(x: LieElement, y: LieElement, z: LieElement) -> bool:
    """([x, y], z) + (y, [x, z]) = 0."""
    return not (invariant_form(bracket(x, y), z) + invariant_form(y, bracket(x, z)))


def check_omega_involution(x: LieElement) -> bool:
    return omega(omega(x)) == x


def check_omega_antihomomorphism(x: LieElement, y: LieElement) -> bool:
    """omega([x, y]) = [omega(y), omega(x)]."""
    return omega(bracket(x, y)) == bracket(omega(y), omega(x))


def generator_exponent(x: LieElement) -> typing.Optional[Exponent]:
    """(m, n) of a single matrix generator, or None when ``x`` is not one."""
    if len(x._matrix) != 1 or x._extra:
        return None
    (_, _, m, n), = x._matrix
    return m, n
