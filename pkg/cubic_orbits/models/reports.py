"""
Report records shared by the services and the CLI.
"""

from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional

from ..core.gfq import MIN_FIELD_ORDER, factor_prime_power
from ..exceptions import FieldTooSmall, GuardrailExceeded, InvalidRunConfig

PASS = "pass"
FAIL = "fail"
NOT_APPLICABLE = "not-applicable"
MEASURED = "measured"

OUTPUT_FORMATS = ("text", "json", "csv")


@dataclass(frozen=True)
class RunConfig:
    """
    One CLI invocation.

    Args:
        q: field order, a prime power >= 4
        command: verb name
        workers: process count, at least 1
        max_q: guardrail override
        output_format: text, json or csv
        line_spec: seed line as given on the command line

    Raises:
        NotPrimePower: q is not a prime power
        FieldTooSmall: q below 4
        InvalidRunConfig: bad worker count or output format
    """

    q: int
    command: str
    workers: int = 1
    max_q: Optional[int] = None
    output_format: str = "text"
    line_spec: Optional[str] = None

    def __post_init__(self):
        factor_prime_power(self.q)
        if self.q < MIN_FIELD_ORDER:
            raise FieldTooSmall(self.q)
        if self.workers < 1:
            raise InvalidRunConfig(f"worker count must be >= 1, got {self.workers}")
        if self.output_format not in OUTPUT_FORMATS:
            raise InvalidRunConfig(f"unknown output format {self.output_format}")

    def guardrail(self, default: int) -> int:
        return self.max_q if self.max_q is not None else default

    def check_guardrail(self, default: int, what: str) -> None:
        bound = self.guardrail(default)
        if self.q > bound:
            raise GuardrailExceeded(self.q, bound, what)


@dataclass
class CheckResult:
    check_id: str
    claim: str
    expected: Any
    measured: Any
    verdict: str
    seconds: float = 0.0
    detail: str = ""
    theorem_id: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class VerifyReport:
    q: int
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def failed(self) -> List[CheckResult]:
        return [c for c in self.checks if c.verdict == FAIL]

    @property
    def passed(self) -> bool:
        return not self.failed

    def summary(self) -> Dict[str, int]:
        counts: Dict[str, int] = {}
        for c in self.checks:
            counts[c.verdict] = counts.get(c.verdict, 0) + 1
        return dict(sorted(counts.items()))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "q": self.q,
            "passed": self.passed,
            "summary": self.summary(),
            "checks": [c.to_dict() for c in self.checks],
        }
