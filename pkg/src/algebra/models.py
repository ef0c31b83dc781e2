"""Pydantic models for verification reports."""

from typing import List, Optional
from pydantic import BaseModel, Field


class CheckResult(BaseModel):
    """Outcome of one verified clause."""

    name: str = Field(..., description="Clause identifier")
    passed: bool
    witness: Optional[str] = Field(default=None, description="Counterexample or evidence")
    detail: Optional[str] = None

    def render(self) -> str:
        """Render as a single CHECK line."""
        line = f"CHECK {self.name}: {'PASS' if self.passed else 'FAIL'}"
        if self.witness:
            line += f" {self.witness}"
        return line


class Report(BaseModel):
    """A titled list of checks plus free-form information lines."""

    title: str
    checks: List[CheckResult] = Field(default_factory=list)
    info: List[str] = Field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def add(
        self,
        name: str,
        passed: bool,
        witness: Optional[str] = None,
        detail: Optional[str] = None,
    ) -> CheckResult:
        """
        Append a check.

        Args:
            name: Clause identifier
            passed: Whether the clause holds
            witness: Witness text shown after PASS/FAIL
            detail: Longer explanation, not rendered

        Returns:
            The appended CheckResult
        """
        check = CheckResult(name=name, passed=passed, witness=witness, detail=detail)
        self.checks.append(check)
        return check

    def get(self, name: str) -> CheckResult:
        """Return the check with the given name."""
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)

    def failures(self) -> List[CheckResult]:
        return [check for check in self.checks if not check.passed]

    def render(self) -> str:
        """Render the report as deterministic plain text."""
        lines = [f"# {self.title}"]
        lines.extend(self.info)
        lines.extend(check.render() for check in self.checks)
        return "\n".join(lines) + "\n"
