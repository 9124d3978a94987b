"""
The contravariant hermitian form on V.

The form satisfies (pi(a) f, g) = (f, pi(omega(a)) g), is antilinear in its
second argument and is normalised by (1, 1) = 1. Three independent
evaluations are provided:

* :func:`form_recursive` unfolds the inductive definition on monomials,
* :func:`form_operator_push` moves the lowering operators of a basis element
  across the form as their omega-images,
* :func:`form_jk_oracle` sums products of the trace functional over cycle
  partitions.
"""

from __future__ import annotations

import logging
import typing

from dataclasses import dataclass, field

from ..algebra.liealg import LieElement, omega
from ..algebra.qtorus import TorusElement, kappa, torus_bar, torus_mul
from ..algebra.scalar import Scalar
from .cycles import canonical_cycle_partitions
from .polyrep import IndexPair, Monomial, Polynomial, XFamily, apply_P, apply_e, pi_apply


logger = logging.getLogger("gl2cq.hermform")


@dataclass(frozen=True, order=True)
class LevelBasisElement:
    """
    The basis vector E_21(s^m1 t^n1) ... E_21(s^mk t^nk).1, stored as the sorted
    multiset of its index pairs. The level is the number of factors.
    """

    indices: tuple[IndexPair, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(sorted(IndexPair(*index) for index in self.indices)))

    @classmethod
    def of(cls, *indices: tuple[int, int]) -> "LevelBasisElement":
        return cls(tuple(indices))

    @property
    def level(self) -> int:
        return len(self.indices)

    def weight(self) -> tuple[int, int]:
        """Eigenvalues of D_1 and D_2."""
        return sum(index.m for index in self.indices), sum(index.n for index in self.indices)

    def translate(self, a: int, b: int) -> "LevelBasisElement":
        return LevelBasisElement(tuple(index.shift(a, b) for index in self.indices))

    def __str__(self):
        if not self.indices:
            return "1"
        return "".join(f"E21[{index.m},{index.n}]" for index in self.indices) + ".1"

    def to_json(self) -> list[list[int]]:
        return [[index.m, index.n] for index in self.indices]


def expand_basis(h: LevelBasisElement, X: XFamily) -> Polynomial:
    """The polynomial E_21(r_1) ... E_21(r_k).1 = Q_r1 ... Q_rk 1."""
    result = Polynomial.one()
    for index in h.indices:
        result = apply_e(2, 1, index.m, index.n, result, X)
    return result


def apply_omega_lowering(index: tuple[int, int], g: Polynomial, X: XFamily) -> Polynomial:
    """pi(omega(E_21(s^m t^n))) g = -q^(mn) e_12(-m, -n) g."""
    m, n = index
    return apply_e(1, 2, -m, -n, g, X).scale(-Scalar.q(m * n))


@dataclass
class FormContext:
    """
    Evaluation context for :func:`form_recursive`.

    ``memo`` maps an ordered pair of monomials to their pairing. Only the
    pair with the larger first entry is stored; the other is its conjugate.
    Inserts go through ``dict.setdefault`` so concurrent writers agree.
    """

    X: XFamily = field(default_factory=XFamily.identity)
    memo: dict = field(default_factory=dict)

    def clear(self):
        self.memo.clear()

    def __len__(self):
        return len(self.memo)


def _pair_monomials(f: Monomial, g: Monomial, ctx: FormContext) -> Scalar:
    if f.sort_key() < g.sort_key():
        return _pair_monomials(g, f, ctx).conj()

    key = (f, g)
    cached = ctx.memo.get(key)
    if cached is not None:
        return cached

    if f.degree == 0:
        value = Scalar.one()
    else:
        value = _expand_along(f, g, f.support()[0], ctx)
    return ctx.memo.setdefault(key, value)


def _expand_along(f: Monomial, g: Monomial, A: IndexPair, ctx: FormContext) -> Scalar:
    """
    One step of the recursion with f = x_A f_hat:
    (f, g) = a_A (f_hat, omega(E_21(A)) g) - c_A (P_A f_hat, g).
    """
    X = ctx.X
    entry = X.entry(A)
    f_hat = f.divided(A)

    total = Scalar.zero()
    lowered = apply_omega_lowering(A, Polynomial.monomial(g), X)
    for mono, coeff in lowered.items():
        total = total + _pair_monomials(f_hat, mono, ctx) * coeff.conj()
    total = total * entry.a

    if entry.c:
        e = f_hat.exponent(A)
        if e:
            derivative = _pair_monomials(f_hat.divided(A), g, ctx) * (entry.a * e)
            total = total - derivative * entry.c
    return total


def _sesquilinear(f: Polynomial, g: Polynomial, pairing: typing.Callable[[Monomial, Monomial], Scalar]) -> Scalar:
    total = Scalar.zero()
    for fm, fc in f.items():
        for gm, gc in g.items():
            total = total + pairing(fm, gm) * fc * gc.conj()
    return total


def form_recursive(f: Polynomial, g: Polynomial, ctx: typing.Optional[FormContext] = None) -> Scalar:
    """(f, g) through the inductive definition, memoised in ``ctx``."""
    ctx = ctx if ctx is not None else FormContext()
    return _sesquilinear(f, g, lambda fm, gm: _pair_monomials(fm, gm, ctx))


def form_with_choice(f: Monomial, g: Monomial, A: tuple[int, int], ctx: FormContext) -> Scalar:
    """
    (f, g) expanding first along the variable ``A`` of ``f`` instead of the
    canonical one. Deeper steps use the canonical choice.
    """
    A = IndexPair(*A)
    if not f.exponent(A):
        raise ValueError(f"{A.label()} does not divide {f}.")
    return _expand_along(f, g, A, ctx)


def check_well_definedness(f: Polynomial, g: Polynomial, ctx: FormContext) -> bool:
    """Every admissible first variable gives the same value of (f, g)."""
    for fm, _ in f.items():
        if len(fm.support()) < 2:
            continue
        values = set()
        for gm, _ in g.items():
            values.clear()
            for A in fm.support():
                values.add(form_with_choice(fm, gm, A, ctx))
            if len(values) != 1:
                logger.debug("Variable choice changes (%s, %s): %s", fm, gm, values)
                return False
    return True


def check_hermitian_symmetry(f: Polynomial, g: Polynomial, ctx: FormContext) -> bool:
    """
    (f, g) = conj((g, f)). The right side goes through the basis and
    :func:`form_operator_push` on a fresh context, so it never reads the
    conjugated entries of ``ctx.memo``.
    """
    lhs = form_recursive(f, g, ctx)
    rhs = form_on_polynomials(g, f, ctx.X, "push", FormContext(ctx.X)).conj()
    if lhs != rhs:
        logger.debug("Hermitian symmetry failed for f=%s, g=%s: %s != %s", f, g, lhs, rhs)
        return False
    return True


def check_contravariance(a: LieElement, f: Polynomial, g: Polynomial, ctx: FormContext) -> bool:
    """(pi(a) f, g) = (f, pi(omega(a)) g)."""
    lhs = form_recursive(pi_apply(a, f, ctx.X), g, ctx)
    rhs = form_recursive(f, pi_apply(omega(a), g, ctx.X), ctx)
    if lhs != rhs:
        logger.debug("Contravariance failed for a=%s, f=%s, g=%s: %s != %s", a, f, g, lhs, rhs)
        return False
    return True


def form_operator_push(
    h: LevelBasisElement,
    h2: LevelBasisElement,
    X: typing.Optional[XFamily] = None,
    ctx: typing.Optional[FormContext] = None,
) -> Scalar:
    """
    (h, h2) by moving each lowering factor of ``h`` to the right as its
    omega-image, ending with (1, v).
    """
    X = X if X is not None else XFamily.identity()
    if h.level > h2.level:
        return form_operator_push(h2, h, X, ctx).conj()

    v = expand_basis(h2, X)
    for index in h.indices:
        if not v:
            return Scalar.zero()
        v = apply_omega_lowering(index, v, X)

    if v.degree() <= 0:
        return v.constant_term().conj()

    # Mismatched levels: (1, v) = conj((v, 1)), which the recursion evaluates.
    if ctx is None or ctx.X != X:
        ctx = FormContext(X)
    return form_recursive(v, Polynomial.one(), ctx).conj()


def _index_monomial(index: IndexPair) -> TorusElement:
    return TorusElement.monomial(index.m, index.n)


def form_jk_oracle(h: LevelBasisElement, h2: LevelBasisElement) -> Scalar:
    """
    (h, h2) as a sum over canonical cycle partitions.

    With z_i = bar(s^m_i t^n_i) for the indices of ``h`` and w_j the index
    monomials of ``h2``, each cycle z w z w ... contributes mu times the trace
    of its product; the result is the conjugated sum over partitions.

    Expanding E_12(z_1) ... E_12(z_N) E_21(w_1) ... E_21(w_N).1 gives each
    cycle of length k the factor (-1)^(k-1) (-mu) = (-1)^k mu, so every
    partition carries (-1)^N in total. Pairing through omega(E_21(w)) =
    -E_12(bar(w)) contributes another (-1)^N. The two cancel, which is why
    the sum uses a plain mu per cycle.
    """
    if not isinstance(h, LevelBasisElement) or not isinstance(h2, LevelBasisElement):
        raise TypeError("form_jk_oracle expects two LevelBasisElement values.")
    if h.level != h2.level:
        return Scalar.zero()
    if h.weight() != h2.weight():
        return Scalar.zero()

    size = h.level
    z = [torus_bar(_index_monomial(index)) for index in h.indices]
    w = [_index_monomial(index) for index in h2.indices]
    z_exponents = [(-index.m, -index.n) for index in h.indices]
    w_exponents = list(h2.indices)

    total = Scalar.zero()
    mu = Scalar.mu()
    for partition in canonical_cycle_partitions(size):
        term = Scalar.one()
        for cycle in partition.cycles:
            m_sum = sum(z_exponents[i][0] + w_exponents[j][0] for i, j in cycle)
            n_sum = sum(z_exponents[i][1] + w_exponents[j][1] for i, j in cycle)
            if m_sum or n_sum:
                term = Scalar.zero()
                break

            word = TorusElement.one()
            for i, j in cycle:
                word = torus_mul(torus_mul(word, z[i]), w[j])
            term = term * kappa(word) * mu
            if not term:
                break
        if term:
            total = total + term
    return total.conj()


FORM_METHODS = ("push", "recursive", "jk")


def form_on_basis(
    h: LevelBasisElement,
    h2: LevelBasisElement,
    X: XFamily,
    method: str = "push",
    ctx: typing.Optional[FormContext] = None,
) -> Scalar:
    """Pair two basis elements with the named method."""
    if method == "push":
        return form_operator_push(h, h2, X, ctx)
    if method == "jk":
        return form_jk_oracle(h, h2)
    if method == "recursive":
        if ctx is None or ctx.X != X:
            ctx = FormContext(X)
        return form_recursive(expand_basis(h, X), expand_basis(h2, X), ctx)
    raise ValueError(f"Unknown form method '{method}'. Expected 'recursive', 'push' or 'jk'.")


def _monomial_to_basis(mono: Monomial, X: XFamily, cache: dict) -> dict:
    cached = cache.get(mono)
    if cached is not None:
        return cached

    if mono.degree == 0:
        result = {LevelBasisElement(): Scalar.one()}
    else:
        # x_A = a Q_A - c P_A on V
        A = mono.support()[0]
        entry = X.entry(A)
        f_hat = mono.divided(A)
        result: dict = {}
        for h, coeff in _monomial_to_basis(f_hat, X, cache).items():
            raised = LevelBasisElement(h.indices + (A,))
            result[raised] = result.get(raised, Scalar.zero()) + coeff * entry.a
        if entry.c:
            lowered = apply_P(A, Polynomial.monomial(f_hat), X)
            for lower_mono, lower_coeff in lowered.items():
                for h, coeff in _monomial_to_basis(lower_mono, X, cache).items():
                    result[h] = result.get(h, Scalar.zero()) - coeff * lower_coeff * entry.c
        result = {h: coeff for h, coeff in result.items() if coeff}
    cache[mono] = result
    return result


def basis_decomposition(f: Polynomial, X: XFamily) -> dict[LevelBasisElement, Scalar]:
    """Coefficients of ``f`` in the basis E_21(r_1) ... E_21(r_k).1."""
    cache: dict = {}
    result: dict = {}
    for mono, coeff in f.items():
        for h, value in _monomial_to_basis(mono, X, cache).items():
            result[h] = result.get(h, Scalar.zero()) + value * coeff
    return {h: coeff for h, coeff in result.items() if coeff}


def form_on_polynomials(
    f: Polynomial,
    g: Polynomial,
    X: typing.Optional[XFamily] = None,
    method: str = "recursive",
    ctx: typing.Optional[FormContext] = None,
) -> Scalar:
    """(f, g) for arbitrary polynomials, through the basis for 'push' and 'jk'."""
    X = X if X is not None else XFamily.identity()
    if method not in FORM_METHODS:
        raise ValueError(f"Unknown form method '{method}'. Expected 'recursive', 'push' or 'jk'.")
    if ctx is None or ctx.X != X:
        ctx = FormContext(X)
    if method == "recursive":
        return form_recursive(f, g, ctx)

    f_basis = basis_decomposition(f, X)
    g_basis = basis_decomposition(g, X)
    total = Scalar.zero()
    for h, fc in f_basis.items():
        for h2, gc in g_basis.items():
            if h.level != h2.level or h.weight() != h2.weight():
                continue
            total = total + form_on_basis(h, h2, X, method, ctx) * fc * gc.conj()
    return total
