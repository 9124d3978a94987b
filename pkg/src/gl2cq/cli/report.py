import json
import logging
import typing

from dataclasses import dataclass, field
from enum import Enum


logger = logging.getLogger("gl2cq.cli.report")


class CheckStatus(str, Enum):
    PASSED = "passed"
    FAILED = "failed"


@dataclass
class CheckResult:
    name: str
    status: CheckStatus = CheckStatus.PASSED
    samples: int = 0
    counterexample: typing.Optional[dict] = None

    @property
    def passed(self) -> bool:
        return self.status is CheckStatus.PASSED

    def fail(self, **counterexample):
        """Mark the check as failed, keeping only the first counterexample."""
        self.status = CheckStatus.FAILED
        if counterexample and self.counterexample is None:
            self.counterexample = {key: str(value) for key, value in counterexample.items()}
            logger.error("Check '%s' failed: %s", self.name, self.counterexample)

    def record(self, ok: bool, **counterexample) -> bool:
        self.samples += 1
        if not ok:
            self.fail(**counterexample)
        return ok

    def to_json(self) -> dict:
        data = {"name": self.name, "status": self.status.value, "samples": self.samples}
        if self.counterexample is not None:
            data["counterexample"] = self.counterexample
        return data


@dataclass
class Report:
    command: str
    config: dict = field(default_factory=dict)
    checks: list[CheckResult] = field(default_factory=list)
    results: dict = field(default_factory=dict)
    elapsed_ms: int = 0

    def check(self, name: str) -> CheckResult:
        result = CheckResult(name)
        self.checks.append(result)
        return result

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def failed_checks(self) -> list[CheckResult]:
        return [check for check in self.checks if not check.passed]

    def to_json(self) -> dict:
        data = {
            "command": self.command,
            "config": self.config,
            "checks": [check.to_json() for check in self.checks],
            "elapsedMs": self.elapsed_ms,
        }
        if self.results:
            data["results"] = self.results
        return data

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=False) + "\n"

    def write(self, path: str):
        with open(path, "w") as _f:
            _f.write(self.dumps())
        logger.info("Report written to '%s'.", path)

    def render_summary(self) -> list[str]:
        lines = []
        for check in self.checks:
            lines.append(f"{check.name:<32} {check.status.value} ({check.samples} samples)")
            if check.counterexample:
                for key, value in check.counterexample.items():
                    lines.append(f"    {key}: {value}")
        return lines
