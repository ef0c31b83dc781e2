"""Pydantic models for API requests/responses."""

from typing import List

from pydantic import BaseModel, Field


class RunResult(BaseModel):
    """Rendered report of one verb."""

    verb: str
    exit_code: int = Field(..., description="0 all checks pass, 1 a check failed, 2 input error")
    report: str


class GeneratedInstance(BaseModel):
    """A builtin family member in instance file format."""

    family: str
    param: int
    index: int = 0
    order: int
    text: str


class ServiceInfo(BaseModel):
    """Root endpoint payload."""

    name: str
    version: str
    status: str = "running"
    verbs: List[str] = Field(default_factory=list)
