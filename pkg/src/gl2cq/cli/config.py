import json
import logging
import os
import typing

from dataclasses import dataclass, field, replace
from fractions import Fraction

from ..algebra.scalar import ExactPoint, NumericSpec, RootOfUnity
from ..errors import ConfigError
from ..module.gram import BasisBox
from ..module.polyrep import XFamily


CONFIG_ENVVAR = "GL2CQ_CONFIG"
DEFAULT_OUTPUT_PATH = "gl2cq-report.json"

logger = logging.getLogger("gl2cq.cli.config")


@dataclass(frozen=True)
class RunConfig:
    x_family: XFamily = field(default_factory=XFamily.identity)
    numeric: NumericSpec = field(default_factory=NumericSpec)
    box: BasisBox = field(default_factory=BasisBox)
    samples: int = 20
    seed: int = 0
    output_path: str = DEFAULT_OUTPUT_PATH

    def __post_init__(self):
        if self.samples < 1:
            raise ConfigError(f"The number of samples must be positive (got {self.samples}).")
        if not 0 <= self.seed < 2 ** 64:
            raise ConfigError(f"The seed must fit in 64 unsigned bits (got {self.seed}).")

    def with_overrides(self, **kwargs) -> "RunConfig":
        return replace(self, **{key: value for key, value in kwargs.items() if value is not None})

    def to_json(self) -> dict:
        numeric = {"mu": str(self.numeric.mu_value), "tol": self.numeric.tolerance}
        if self.numeric.is_exact:
            numeric["qExact"] = self.numeric.q_value.label
        else:
            numeric["qRoot"] = self.numeric.q_value.label
        return {
            "xFamily": self.x_family.to_json(),
            "numeric": numeric,
            "box": self.box.to_json(),
            "samples": self.samples,
            "seed": self.seed,
            "outputPath": self.output_path,
        }

    @classmethod
    def from_json(cls, data: typing.Mapping) -> "RunConfig":
        if not isinstance(data, typing.Mapping):
            raise ConfigError("The configuration must be a JSON object.")

        kwargs = {}
        if "xFamily" in data:
            kwargs["x_family"] = XFamily.from_json(data["xFamily"])
        if "numeric" in data:
            kwargs["numeric"] = parse_numeric(data["numeric"])
        if "box" in data:
            kwargs["box"] = BasisBox.from_json(data["box"])
        try:
            if "samples" in data:
                kwargs["samples"] = int(data["samples"])
            if "seed" in data:
                kwargs["seed"] = int(data["seed"])
        except (TypeError, ValueError) as e:
            raise ConfigError(f"Invalid configuration value: {e}") from e
        if "outputPath" in data:
            kwargs["output_path"] = str(data["outputPath"])
        return cls(**kwargs)


def parse_q(q_exact: typing.Optional[str] = None, q_root: typing.Optional[str] = None):
    if q_exact is not None and q_root is not None:
        raise ConfigError("Only one of an exact q and a root-of-unity q can be given.")
    if q_root is not None:
        return RootOfUnity.parse(q_root)
    if q_exact is not None:
        return ExactPoint.parse(q_exact)
    return None


def parse_rational(text) -> Fraction:
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ConfigError(f"Invalid rational number '{text}'.") from e


def parse_numeric(data: typing.Mapping) -> NumericSpec:
    q_value = parse_q(data.get("qExact"), data.get("qRoot")) or ExactPoint.I
    mu = parse_rational(data.get("mu", "1"))
    try:
        tolerance = float(data.get("tol", 1e-9))
    except (TypeError, ValueError) as e:
        raise ConfigError(f"Invalid tolerance '{data.get('tol')}'.") from e
    return NumericSpec(q_value, mu, tolerance)


def parse_range(text: str) -> tuple[int, int]:
    """Parse ``"LOW..HIGH"`` (or a single integer) into an inclusive range."""
    low, sep, high = text.partition("..")
    try:
        if not sep:
            return int(low), int(low)
        return int(low), int(high)
    except ValueError:
        raise ConfigError(f"Expected LOW..HIGH for an index range (got '{text}').") from None


def parse_mu_grid(text: str) -> list[Fraction]:
    return [parse_rational(item) for item in text.split(",") if item.strip()]


def load_config(path: typing.Optional[str] = None) -> RunConfig:
    """
    Load a :class:`RunConfig` from ``path``, or from the file named by the
    ``GL2CQ_CONFIG`` environment variable, or return the defaults.
    """
    path = path or os.environ.get(CONFIG_ENVVAR)
    if not path:
        return RunConfig()

    logger.debug("Loading configuration from '%s'.", path)
    try:
        with open(path, "r") as _f:
            data = json.load(_f)
    except OSError as e:
        raise ConfigError(f"Could not read configuration file '{path}': {e.strerror}.") from e
    except json.JSONDecodeError as e:
        raise ConfigError(f"Configuration file '{path}' is not valid JSON: {e}.") from e
    return RunConfig.from_json(data)
