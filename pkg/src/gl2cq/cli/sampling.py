"""
Seeded sampling for the verification suites.

Every check draws from its own child of ``numpy.random.SeedSequence(seed)``,
keyed by the CRC-32 of the check name, through a PCG64 bit generator. The
samples of one check therefore do not depend on which other checks ran.
"""

import typing
import zlib

from fractions import Fraction

import numpy as np

from ..algebra.liealg import E, LieElement, generator
from ..algebra.qtorus import TorusElement
from ..algebra.scalar import GaussianRational, Scalar
from ..module.hermform import LevelBasisElement
from ..module.polyrep import IndexPair, Monomial, Polynomial


GENERATOR_TYPES = ("E11", "E12", "E21", "E22", "ds", "dt")


class Sampler:
    def __init__(self, seed: int, name: str = "", low: int = -2, high: int = 2):
        self.seed = seed
        self.name = name
        self.low = low
        self.high = high

        sequence = np.random.SeedSequence(seed, spawn_key=(zlib.crc32(name.encode()),))
        self._rng = np.random.Generator(np.random.PCG64(sequence))

    def child(self, name: str) -> "Sampler":
        return Sampler(self.seed, f"{self.name}/{name}" if self.name else name, self.low, self.high)

    def integer(self, low: int, high: int) -> int:
        """Uniform integer in [low, high]."""
        return int(self._rng.integers(low, high, endpoint=True))

    def choice(self, options: typing.Sequence):
        return options[self.integer(0, len(options) - 1)]

    def index_pair(self) -> IndexPair:
        return IndexPair(self.integer(self.low, self.high), self.integer(self.low, self.high))

    def gaussian_rational(self, bound: int = 3) -> GaussianRational:
        """Nonzero small Gaussian rational with denominators up to 2."""
        while True:
            value = GaussianRational(
                Fraction(self.integer(-bound, bound), self.integer(1, 2)),
                Fraction(self.integer(-bound, bound), self.integer(1, 2)),
            )
            if value:
                return value

    def scalar(self) -> Scalar:
        """A Gaussian rational times a small power of q."""
        return Scalar.q(self.integer(-2, 2)) * self.gaussian_rational()

    def torus_monomial(self) -> TorusElement:
        m, n = self.index_pair()
        return TorusElement.monomial(m, n)

    def torus_element(self, max_terms: int = 2) -> TorusElement:
        result = TorusElement.zero()
        for _ in range(self.integer(1, max_terms)):
            m, n = self.index_pair()
            result = result + TorusElement.monomial(m, n, self.scalar())
        return result

    def generator(self, kinds: typing.Sequence[str] = GENERATOR_TYPES) -> LieElement:
        return self.generator_of(self.choice(kinds))

    def generator_of(self, kind: str) -> LieElement:
        if kind in ("ds", "dt", "cs", "ct"):
            return generator(kind)
        m, n = self.index_pair()
        return E(int(kind[1]), int(kind[2]), m, n)

    def lie_element(self, kinds: typing.Sequence[str] = GENERATOR_TYPES, max_terms: int = 2) -> LieElement:
        result = LieElement.zero()
        for _ in range(self.integer(1, max_terms)):
            result = result + self.generator(kinds).scale(self.scalar())
        return result

    def monomial(self, max_degree: int, min_degree: int = 0) -> Monomial:
        degree = self.integer(min_degree, max_degree)
        return Monomial.from_indices(self.index_pair() for _ in range(degree))

    def polynomial(self, max_degree: int, max_terms: int = 2, min_degree: int = 0) -> Polynomial:
        result = Polynomial.zero()
        for _ in range(self.integer(1, max_terms)):
            mono = self.monomial(max_degree, min_degree)
            result = result + Polynomial.monomial(mono, self.gaussian_rational())
        return result

    def multi_variable_monomial(self, max_degree: int) -> Monomial:
        """A monomial with at least two distinct variables."""
        while True:
            mono = self.monomial(max_degree, min_degree=2)
            if len(mono.support()) >= 2:
                return mono

    def basis_element(self, level: int) -> LevelBasisElement:
        return LevelBasisElement(tuple(self.index_pair() for _ in range(level)))
