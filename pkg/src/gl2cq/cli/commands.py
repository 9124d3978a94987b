import argparse
import itertools
import logging
import sys
import time
import typing

from dataclasses import dataclass, replace

from ..algebra.liealg import bracket, check_antisymmetry, check_invariance, check_jacobi, \
    check_omega_antihomomorphism, check_omega_involution, invariant_form, omega
from ..algebra.scalar import Scalar
from ..errors import ConfigError
from ..module.gram import BasisBox, check_highest_weight, check_leading_term, check_positive_definite, \
    enumerate_basis, gram_matrix, scan_mu, variable_gram
from ..module.hermform import FORM_METHODS, FormContext, check_contravariance, check_hermitian_symmetry, \
    check_well_definedness, form_on_basis, form_on_polynomials, form_recursive, form_with_choice
from ..module.polyrep import Monomial, Polynomial, XFamily, apply_P, apply_Q, check_homomorphism, \
    check_raising_commutation, check_weyl_relations, commutator_action, pi_apply
from .config import RunConfig, load_config, parse_mu_grid, parse_q, parse_range, parse_rational
from .expressions import parse_poly
from .report import Report
from .sampling import GENERATOR_TYPES, Sampler


logger = logging.getLogger("gl2cq.cli.commands")

DEFAULT_MU_GRID = "-1,0,1/4,1,3"


class _NumericArgumentsCLI:
    def add_numeric_arguments(self, parser):
        group = parser.add_mutually_exclusive_group()
        group.add_argument("--q-exact", type=str, default=None, help="Evaluate q exactly at one of 1, -1, i, -i.")
        group.add_argument("--q-root", type=str, default=None, metavar="NUM:ORDER", help="Evaluate q numerically at exp(2 pi i NUM/ORDER).")
        parser.add_argument("--mu", type=str, default=None, help="Rational value of mu used by numeric evaluations.")
        parser.add_argument("--tol", type=float, default=None, help="Tolerance of the numeric eigenvalue test.")

        return parser

    def parse_numeric_args(self, parsed_namespace, config: RunConfig) -> RunConfig:
        numeric = config.numeric
        q_value = parse_q(parsed_namespace.q_exact, parsed_namespace.q_root)
        if q_value is not None:
            numeric = replace(numeric, q_value=q_value)
        mu = getattr(parsed_namespace, "mu", None)
        if mu is not None and not getattr(self, "mu_is_grid", False):
            numeric = numeric.with_mu(parse_rational(mu))
        if parsed_namespace.tol is not None:
            numeric = replace(numeric, tolerance=parsed_namespace.tol)
        return config.with_overrides(numeric=numeric)


class _BoxArgumentsCLI:
    def add_box_arguments(self, parser):
        parser.add_argument("--level", type=int, default=None, help="Level of the basis elements.")
        parser.add_argument("--box", type=str, default=None, metavar="LOW..HIGH", help="Index window used for both coordinates.")
        parser.add_argument("--positive", type=int, nargs=2, default=None, metavar=("M", "N"), help="Restrict to nonnegative indices with sums bounded by M and N.")

        return parser

    def parse_box_args(self, parsed_namespace, config: RunConfig) -> RunConfig:
        box = config.box
        if parsed_namespace.box is not None:
            low, high = parse_range(parsed_namespace.box)
            box = BasisBox(box.level, low, high, low, high, box.positive_mode, box.M, box.N)
        if parsed_namespace.level is not None:
            box = box.with_level(parsed_namespace.level)
        if parsed_namespace.positive is not None:
            M, N = parsed_namespace.positive
            box = BasisBox(box.level, box.m_min, box.m_max, box.n_min, box.n_max, True, M, N)
        return config.with_overrides(box=box)


class _SamplingArgumentsCLI:
    def add_sampling_arguments(self, parser):
        parser.add_argument("--samples", type=int, default=None, help="Number of seeded samples per check.")
        parser.add_argument("--seed", type=int, default=None, help="Seed of the sample generator.")

        return parser

    def parse_sampling_args(self, parsed_namespace, config: RunConfig) -> RunConfig:
        return config.with_overrides(samples=parsed_namespace.samples, seed=parsed_namespace.seed)

    def sampler(self, config: RunConfig, name: str) -> Sampler:
        return Sampler(config.seed, name, config.box.m_min, config.box.m_max)


class _XFamilyArgumentsCLI:
    def add_x_family_arguments(self, parser):
        parser.add_argument("--x-constant", type=str, nargs=3, default=None, metavar=("A", "C", "D"), help="Use the same matrix (A 0; C D) for every index, with A*D = 1.")

        return parser

    def parse_x_family_args(self, parsed_namespace, config: RunConfig) -> RunConfig:
        if parsed_namespace.x_constant is None:
            return config
        a, c, d = parsed_namespace.x_constant
        return config.with_overrides(x_family=XFamily.constant(a, c, d))


class CommandCLI:
    """Base class of every command: common flags, configuration and report handling."""

    name: str = ""

    def __init__(self):
        self.parser = self.create_parser()

    def _usage(self):
        return None

    def _description(self):
        return None

    def create_parser(self):
        _a = argparse.ArgumentParser(prog=f"gl2cq {self.name}", usage=self._usage(), description=self._description())

        _a.add_argument("--config", type=str, default=None, help="JSON configuration file. Defaults to $GL2CQ_CONFIG.")
        _a.add_argument("--output", type=str, default=None, help="Path of the JSON report.")
        _a.add_argument("--no-timing", action="store_true", help="Write 0 as the elapsed time, for byte-identical reports.")
        _a.add_argument("--workers", type=int, default=1, help="Threads used to compute Gram matrix rows.")
        _a.add_argument("-v", "--verbose", action="count", default=0, help="Increase logging verbosity (repeatable).")

        return _a

    def build_config(self, parsed_namespace) -> RunConfig:
        config = load_config(parsed_namespace.config)
        return config.with_overrides(output_path=parsed_namespace.output)

    def run(self, parsed_namespace, config: RunConfig, report: Report):
        raise NotImplementedError

    def print_results(self, report: Report):
        pass

    def execute(self, argv: typing.Sequence[str]) -> int:
        try:
            parsed_namespace = self.parser.parse_args(list(argv))
        except SystemExit as e:
            return e.code if isinstance(e.code, int) else 2

        _configure_logging(parsed_namespace.verbose)

        start = time.perf_counter()
        try:
            assert parsed_namespace.workers >= 1, "The number of workers must be positive."
            config = self.build_config(parsed_namespace)
            report = Report(self.name, config.to_json())
            self.run(parsed_namespace, config, report)
        except (ConfigError, AssertionError) as e:
            logger.error("Configuration error: %s", e)
            print(f"error: {e}", file=sys.stderr)
            return 2

        if not parsed_namespace.no_timing:
            report.elapsed_ms = int((time.perf_counter() - start) * 1000)
        try:
            report.write(config.output_path)
        except OSError as e:
            print(f"error: could not write the report: {e}", file=sys.stderr)
            return 2

        self.print_results(report)
        for line in report.render_summary():
            print(line)
        return 0 if report.passed else 1


def _configure_logging(verbosity: int):
    level = [logging.WARNING, logging.INFO, logging.DEBUG][min(verbosity, 2)]
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    logging.getLogger("gl2cq").setLevel(level)


class _SuiteCLI(CommandCLI, _SamplingArgumentsCLI, _BoxArgumentsCLI, _XFamilyArgumentsCLI):
    def create_parser(self):
        _a = super().create_parser()

        _a = self.add_sampling_arguments(_a)
        _a = self.add_box_arguments(_a)
        _a = self.add_x_family_arguments(_a)

        return _a

    def build_config(self, parsed_namespace) -> RunConfig:
        config = super().build_config(parsed_namespace)
        config = self.parse_sampling_args(parsed_namespace, config)
        config = self.parse_box_args(parsed_namespace, config)
        return self.parse_x_family_args(parsed_namespace, config)


# Verification suites

class CommandVerifyBrackets(_SuiteCLI):
    name = "verify-brackets"

    def _description(self):
        return "Check the bracket relations, the invariant form and the free-field homomorphism on seeded samples."

    def run(self, parsed_namespace, config, report):
        X = config.x_family
        kinds = GENERATOR_TYPES + ("cs", "ct")

        check = report.check("jacobi")
        sampler = self.sampler(config, "jacobi")
        for _ in range(config.samples):
            x, y, z = (sampler.generator(kinds) for _ in range(3))
            if not check.record(check_jacobi(x, y, z)):
                lhs = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))
                check.fail(x=x, y=y, z=z, lhs=lhs, rhs=0)

        check = report.check("antisymmetry")
        sampler = self.sampler(config, "antisymmetry")
        for _ in range(config.samples):
            x, y = sampler.lie_element(kinds), sampler.lie_element(kinds)
            if not check.record(check_antisymmetry(x, y)):
                check.fail(x=x, y=y, lhs=bracket(x, y), rhs=-bracket(y, x))

        check = report.check("invariance")
        sampler = self.sampler(config, "invariance")
        for _ in range(config.samples):
            x, y, z = (sampler.lie_element(kinds) for _ in range(3))
            if not check.record(check_invariance(x, y, z)):
                lhs = invariant_form(bracket(x, y), z)
                check.fail(x=x, y=y, z=z, lhs=lhs, rhs=-invariant_form(y, bracket(x, z)))

        check = report.check("weyl")
        sampler = self.sampler(config, "weyl")
        for _ in range(config.samples):
            A, B = sampler.index_pair(), sampler.index_pair()
            f = sampler.polynomial(3)
            if not check.record(check_weyl_relations(A, B, f, X)):
                lhs = apply_P(A, apply_Q(B, f, X), X) - apply_Q(B, apply_P(A, f, X), X)
                check.fail(A=A.label(), B=B.label(), f=f, lhs=lhs, rhs=f if A == B else 0)

        check = report.check("homomorphism")
        for kx, ky in itertools.product(GENERATOR_TYPES, repeat=2):
            sampler = self.sampler(config, f"homomorphism/{kx}/{ky}")
            for _ in range(config.samples):
                x, y = sampler.generator_of(kx), sampler.generator_of(ky)
                f = sampler.polynomial(3)
                if not check.record(check_homomorphism(x, y, f, X)):
                    check.fail(x=x, y=y, f=f, lhs=commutator_action(x, y, f, X), rhs=pi_apply(bracket(x, y), f, X))

        check = report.check("raising-commutation")
        sampler = self.sampler(config, "raising-commutation")
        for _ in range(config.samples):
            i = sampler.integer(1, 3)
            c = sampler.gaussian_rational()
            f = sampler.polynomial(2)
            check.record(check_raising_commutation(i, c, f, X), i=i, c=c, f=f)


class CommandVerifyInvolution(_SuiteCLI):
    name = "verify-involution"

    def _description(self):
        return "Check that omega is an antilinear involutive anti-automorphism."

    def run(self, parsed_namespace, config, report):
        check = report.check("omega-involution")
        sampler = self.sampler(config, "omega-involution")
        for _ in range(config.samples):
            x = sampler.lie_element(GENERATOR_TYPES + ("cs", "ct"))
            if not check.record(check_omega_involution(x)):
                check.fail(x=x, lhs=omega(omega(x)), rhs=x)

        check = report.check("omega-antihomomorphism")
        sampler = self.sampler(config, "omega-antihomomorphism")
        for _ in range(config.samples):
            x, y = sampler.lie_element(), sampler.lie_element()
            if not check.record(check_omega_antihomomorphism(x, y)):
                check.fail(x=x, y=y, lhs=omega(bracket(x, y)), rhs=bracket(omega(y), omega(x)))


class CommandVerifyContravariance(_SuiteCLI):
    name = "verify-contravariance"

    def _description(self):
        return "Check the base cases, well-definedness, hermitian symmetry and contravariance of the form."

    def run(self, parsed_namespace, config, report):
        X = config.x_family
        ctx = FormContext(X)
        one = Polynomial.one()
        mu = Scalar.mu()

        check = report.check("base-cases")
        check.record(form_recursive(one, one, ctx) == Scalar.one(), f="1", g="1")
        window = config.box.window()
        for A in window:
            entry = X.entry(A)
            x_A = Polynomial.variable(*A)
            value = form_recursive(x_A, one, ctx)
            check.record(not value, f=x_A, g="1", lhs=value, rhs=0)

            square = Polynomial.monomial(Monomial.variable(A, 2))
            value, expected = form_recursive(square, one, ctx), Scalar.constant(-(entry.a * entry.c))
            check.record(value == expected, f=square, g="1", lhs=value, rhs=expected)

            for B in window:
                value = form_recursive(x_A, Polynomial.variable(*B), ctx)
                expected = mu * (entry.a * entry.a.conjugate()) if A == B else Scalar.zero()
                check.record(value == expected, f=x_A, g=Polynomial.variable(*B), lhs=value, rhs=expected)

        check = report.check("well-definedness")
        sampler = self.sampler(config, "well-definedness")
        for _ in range(config.samples):
            f = Polynomial.monomial(sampler.multi_variable_monomial(4))
            g = sampler.polynomial(4)
            if not check.record(check_well_definedness(f, g, ctx)):
                fm = f.monomials()[0]
                values = {A.label(): form_with_choice(fm, g.monomials()[0], A, ctx) for A in fm.support()}
                check.fail(f=f, g=g, **values)

        check = report.check("hermitian-symmetry")
        sampler = self.sampler(config, "hermitian-symmetry")
        for _ in range(config.samples):
            f, g = sampler.polynomial(3), sampler.polynomial(3)
            if not check.record(check_hermitian_symmetry(f, g, ctx)):
                check.fail(f=f, g=g, lhs=form_recursive(f, g, ctx), rhs=form_recursive(g, f, ctx).conj())

        for kind in GENERATOR_TYPES:
            check = report.check(f"contravariance[{kind}]")
            sampler = self.sampler(config, f"contravariance/{kind}")
            for _ in range(config.samples):
                a = sampler.lie_element((kind,), max_terms=1)
                f, g = sampler.polynomial(3), sampler.polynomial(3)
                if not check.record(check_contravariance(a, f, g, ctx)):
                    lhs = form_recursive(pi_apply(a, f, X), g, ctx)
                    rhs = form_recursive(f, pi_apply(omega(a), g, X), ctx)
                    check.fail(a=a, f=f, g=g, lhs=lhs, rhs=rhs)
        logger.debug("Form memo holds %d pairings.", len(ctx))


class CommandVerifyHighestWeight(_SuiteCLI):
    name = "verify-highest-weight"

    def _description(self):
        return "Check that the upper Borel subalgebra acts on 1 by the highest weight."

    def run(self, parsed_namespace, config, report):
        check = report.check("highest-weight")
        sampler = self.sampler(config, "highest-weight")
        for _ in range(config.samples):
            a1, a2, a3 = (sampler.torus_element() for _ in range(3))
            check.record(check_highest_weight(a1, a2, a3, config.x_family), a1=a1, a2=a2, a3=a3)


class CommandVerifyTranslation(_SuiteCLI):
    name = "verify-translation"

    def _usage(self):
        return "%(prog)s [--shift A B] [--level LEVEL] [--box LOW..HIGH]"

    def _description(self):
        return "Compare the Gram matrix of a window with the one of its translate."

    def create_parser(self):
        _a = super().create_parser()

        _a.add_argument("--shift", type=int, nargs=2, default=(1, 1), metavar=("A", "B"), help="Translation applied to every index.")
        _a.add_argument("--method", choices=FORM_METHODS, default="push", help="Form evaluation method.")

        return _a

    def run(self, parsed_namespace, config, report):
        a, b = parsed_namespace.shift
        X = config.x_family
        original = gram_matrix(config.box, X, parsed_namespace.method, parsed_namespace.workers)
        shifted = gram_matrix(config.box.translate(a, b), X, parsed_namespace.method, parsed_namespace.workers)

        check = report.check("translation")
        check.record(original.dimension == shifted.dimension, lhs=original.dimension, rhs=shifted.dimension)
        for i, j in itertools.product(range(min(original.dimension, shifted.dimension)), repeat=2):
            check.record(
                original[i, j] == shifted[i, j],
                h=original.basis[i], h2=original.basis[j], lhs=original[i, j], rhs=shifted[i, j],
            )


# Evaluation commands

class CommandForm(CommandCLI, _XFamilyArgumentsCLI):
    name = "form"

    def _usage(self):
        return "%(prog)s --f EXPR --g EXPR [--method recursive|push|jk]"

    def _description(self):
        return "Evaluate the contravariant form on two polynomials."

    def create_parser(self):
        _a = super().create_parser()

        _a.add_argument("--f", type=str, required=True, help="First polynomial, e.g. 'x[1,0]^2 * x[-1,2]'.")
        _a.add_argument("--g", type=str, required=True, help="Second polynomial.")
        _a.add_argument("--method", choices=FORM_METHODS, default="recursive", help="Form evaluation method.")
        _a = self.add_x_family_arguments(_a)

        return _a

    def build_config(self, parsed_namespace):
        return self.parse_x_family_args(parsed_namespace, super().build_config(parsed_namespace))

    def run(self, parsed_namespace, config, report):
        f = parse_poly(parsed_namespace.f)
        g = parse_poly(parsed_namespace.g)
        value = form_on_polynomials(f, g, config.x_family, parsed_namespace.method)
        report.results.update({
            "f": str(f),
            "g": str(g),
            "method": parsed_namespace.method,
            "value": value.to_json(),
            "text": str(value),
        })

    def print_results(self, report):
        print(report.results["text"])


class CommandGram(_SuiteCLI, _NumericArgumentsCLI):
    name = "gram"

    def _description(self):
        return "Compute the Gram matrix of a level over an index window."

    def create_parser(self):
        _a = super().create_parser()

        _a.add_argument("--method", choices=FORM_METHODS, default="push", help="Form evaluation method.")
        _a.add_argument("--csv", type=str, default=None, help="Also write the entries evaluated at (q, mu) as CSV.")
        _a = self.add_numeric_arguments(_a)

        return _a

    def build_config(self, parsed_namespace):
        return self.parse_numeric_args(parsed_namespace, super().build_config(parsed_namespace))

    def run(self, parsed_namespace, config, report):
        G = gram_matrix(config.box, config.x_family, parsed_namespace.method, parsed_namespace.workers)

        check = report.check("hermitian")
        check.record(G.is_hermitian())
        check = report.check("leading-term")
        check.record(check_leading_term(G), diagonal=[str(entry) for entry in G.diagonal()])

        report.results.update(G.to_json())
        report.results["positivity"] = check_positive_definite(G, config.numeric).to_json()

        if parsed_namespace.csv:
            with open(parsed_namespace.csv, "w") as _f:
                _f.write(G.to_csv(config.numeric))
            logger.info("Gram matrix CSV written to '%s'.", parsed_namespace.csv)

    def print_results(self, report):
        print(f"dimension {len(report.results['basis'])}, {report.results['positivity']['verdict']} at the configured (q, mu)")


class CommandScanMu(_SuiteCLI, _NumericArgumentsCLI):
    name = "scan-mu"
    mu_is_grid = True

    def _usage(self):
        return "%(prog)s [--level LEVEL] [--mu MU,MU,...] [--q-exact Q | --q-root NUM:ORDER]"

    def _description(self):
        return "Positivity verdicts of a Gram matrix over a grid of mu values."

    def create_parser(self):
        _a = super().create_parser()

        _a.add_argument("--method", choices=FORM_METHODS, default="push", help="Form evaluation method.")
        _a.add_argument("--csv", type=str, default=None, help="Also write the verdict rows as CSV.")
        _a = self.add_numeric_arguments(_a)

        return _a

    def build_config(self, parsed_namespace):
        return self.parse_numeric_args(parsed_namespace, super().build_config(parsed_namespace))

    def run(self, parsed_namespace, config, report):
        grid = parse_mu_grid(parsed_namespace.mu or DEFAULT_MU_GRID)
        G = gram_matrix(config.box, config.x_family, parsed_namespace.method, parsed_namespace.workers)
        scan = scan_mu(config.box, config.x_family, config.numeric, grid, gram=G)

        check = report.check("unitarity")
        for row in scan.rows:
            expected = "PD" if row.predicted_positive else "not PD"
            check.record(row.predicted_positive == row.result.is_positive_definite, mu=row.mu,
                         verdict=row.result.verdict.value, expected=expected)

        if scan.determinant is not None:
            conflicts = {row.mu for row in scan.determinant_conflicts()}
            check = report.check("determinant-agreement")
            for row in scan.rows:
                check.record(row.mu not in conflicts, mu=row.mu, verdict=row.result.verdict.value)

        report.results.update(scan.to_json())
        if parsed_namespace.csv:
            with open(parsed_namespace.csv, "w") as _f:
                _f.write(scan.to_csv())
            logger.info("Scan CSV written to '%s'.", parsed_namespace.csv)

    def print_results(self, report):
        for row in report.results["rows"]:
            print(f"mu={row['mu']}: {row['verdict']}")


class CommandOracleCompare(_SuiteCLI):
    name = "oracle-compare"

    def _description(self):
        return "Compare the recursive, push and cycle-sum evaluations of the form on every basis pair up to a level."

    def create_parser(self):
        _a = super().create_parser()

        _a.add_argument("--jk-max-level", type=int, default=None, help="Highest level at which the cycle-sum oracle is included.")

        return _a

    def run(self, parsed_namespace, config, report):
        X = config.x_family
        ctx = FormContext(X)
        top = config.box.level
        jk_top = top if parsed_namespace.jk_max_level is None else parsed_namespace.jk_max_level
        report.results["jkMaxLevel"] = min(jk_top, top)

        bases = {level: enumerate_basis(config.box.with_level(level)) for level in range(top + 1)}

        agreement = report.check("three-method-agreement")
        leading = report.check("leading-term")
        for level, basis in bases.items():
            methods = ("recursive", "push", "jk") if level <= jk_top else ("recursive", "push")
            for h, h2 in itertools.combinations_with_replacement(basis, 2):
                values = {method: form_on_basis(h, h2, X, method, ctx) for method in methods}
                first = values["recursive"]
                if not agreement.record(all(value == first for value in values.values())):
                    agreement.fail(h=h, h2=h2, **values)

            for h in basis:
                degree, coefficient = form_on_basis(h, h, X, "push", ctx).leading_term()
                constant = coefficient.as_constant()
                ok = degree == level and constant is not None and constant.im == 0 \
                    and constant.re > 0 and constant.re.denominator == 1
                leading.record(ok, h=h, degree=degree, leading=coefficient)

        check = report.check("level-orthogonality")
        sampler = self.sampler(config, "level-orthogonality")
        for low, high in itertools.combinations(range(top + 1), 2):
            if not bases[low] or not bases[high]:
                continue
            for _ in range(config.samples):
                h, h2 = sampler.choice(bases[low]), sampler.choice(bases[high])
                value = form_on_basis(h, h2, X, "push", ctx)
                check.record(not value, h=h, h2=h2, lhs=value, rhs=0)

        if top >= 1:
            self._check_level_one(config, report, ctx)

    def _check_level_one(self, config, report, ctx):
        X = config.x_family
        mu = Scalar.mu()

        check = report.check("level-one-gram")
        G = gram_matrix(config.box.with_level(1), X, "push", ctx=ctx)
        for i, j in itertools.product(range(G.dimension), repeat=2):
            expected = mu if i == j else Scalar.zero()
            check.record(G[i, j] == expected, h=G.basis[i], h2=G.basis[j], lhs=G[i, j], rhs=expected)

        check = report.check("level-one-monomials")
        G = variable_gram(config.box, X)
        for i, j in itertools.product(range(G.dimension), repeat=2):
            if i == j:
                a = X.entry(G.basis[i].support()[0]).a
                expected = mu * (a * a.conjugate())
            else:
                expected = Scalar.zero()
            check.record(G[i, j] == expected, f=G.basis[i], g=G.basis[j], lhs=G[i, j], rhs=expected)


@dataclass(frozen=True)
class CommandInformation:
    name: str
    user_name: str
    cls: type


class CommandWhitelist(list):
    def __init__(self, *commands: CommandInformation):
        super().__init__(commands)

    def get(self, name: str) -> typing.Optional[CommandInformation]:
        for info in self:
            if name in (info.name, info.user_name):
                return info
        return None


COMMAND_WHITELIST = CommandWhitelist(*[
    CommandInformation("verify-brackets", "verify_brackets", CommandVerifyBrackets),
    CommandInformation("verify-involution", "verify_involution", CommandVerifyInvolution),
    CommandInformation("verify-contravariance", "verify_contravariance", CommandVerifyContravariance),
    CommandInformation("verify-highest-weight", "verify_highest_weight", CommandVerifyHighestWeight),
    CommandInformation("verify-translation", "verify_translation", CommandVerifyTranslation),
    CommandInformation("form", "form", CommandForm),
    CommandInformation("gram", "gram", CommandGram),
    CommandInformation("scan-mu", "scan_mu", CommandScanMu),
    CommandInformation("oracle-compare", "oracle_compare", CommandOracleCompare),
])


def render_usage() -> str:
    lines = ["usage: gl2cq COMMAND [options]", "", "commands:"]
    for info in COMMAND_WHITELIST:
        lines.append(f"  {info.name:<24} {info.cls().parser.description or ''}")
    return "\n".join(lines)


def run_command(argv: typing.Sequence[str]) -> int:
    """
    Run one command. Returns 0 when every check passed, 1 when one failed and
    2 on configuration or usage errors.
    """
    argv = list(argv)
    if not argv or argv[0] in ("-h", "--help"):
        print(render_usage(), file=sys.stdout if argv else sys.stderr)
        return 0 if argv else 2

    info = COMMAND_WHITELIST.get(argv[0])
    if info is None:
        print(f"error: unknown command '{argv[0]}'.\n\n{render_usage()}", file=sys.stderr)
        return 2
    return info.cls().execute(argv[1:])
