import enum
from typing import assert_never

import pydantic

from .atlas import SCHEMA_VERSION


class CheckStatus(str, enum.Enum):
    passed = 'pass'
    failed = 'fail'
    skipped = 'skip'

    def __str__(self) -> str:
        return self.value

    @property
    def symbol(self) -> str:
        if self == CheckStatus.passed:
            return 'ok'
        if self == CheckStatus.failed:
            return 'FAIL'
        if self == CheckStatus.skipped:
            return '-'
        assert_never(self)


class CheckResult(pydantic.BaseModel):
    """
    One line of the verification battery.

    Fields:
        name: stable identifier, e.g. ``iwasawa.reconstruction``
        status: pass, fail or skip
        value: measured residual or count, if any
        tolerance: threshold the value was held to, if any
        detail: human-readable context
    """

    name: str
    status: CheckStatus
    value: float | None = None
    tolerance: float | None = None
    detail: str = ''

    @classmethod
    def within(
            cls,
            name: str,
            value: float,
            tolerance: float,
            detail: str = '',
    ) -> 'CheckResult':
        passed = value <= tolerance
        status = CheckStatus.passed if passed else CheckStatus.failed
        return cls(
            name=name, status=status, value=value, tolerance=tolerance,
            detail=detail,
        )

    @classmethod
    def equal(
            cls,
            name: str,
            actual: int,
            expected: int,
            detail: str = '',
    ) -> 'CheckResult':
        passed = actual == expected
        status = CheckStatus.passed if passed else CheckStatus.failed
        return cls(
            name=name, status=status, value=float(actual),
            detail=detail or f'expected {expected}, got {actual}',
        )


class RankSummary(pydantic.BaseModel):
    samples: int
    histogram: dict[int, int]
    max_rank: int
    expected_max_rank: int
    borderline: int


class VerifyReport(pydantic.BaseModel):
    schema_version: int = SCHEMA_VERSION
    tool_version: str
    seed: int
    samples: int
    form: str
    realization: str
    tolerances: dict[str, float]
    checks: list[CheckResult]
    ranks: RankSummary | None = None
    hermitian_b: float | None = None

    @pydantic.computed_field  # type: ignore[prop-decorator]
    @property
    def ok(self) -> bool:
        return all(check.status != CheckStatus.failed for check in self.checks)

    @property
    def failed(self) -> list[CheckResult]:
        return [c for c in self.checks if c.status == CheckStatus.failed]
