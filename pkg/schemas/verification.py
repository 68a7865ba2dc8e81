from enum import Enum as PyEnum
from typing import List, Optional

from pydantic import BaseModel, validator


class IdentityStatus(str, PyEnum):
    PASSED = "passed"
    FAILED = "failed"
    SKIPPED = "skipped"


# One checked identity: residual vanishing through t^order_checked
class IdentityResult(BaseModel):
    name: str
    status: IdentityStatus
    order_checked: Optional[int] = None
    detail: Optional[str] = None

    @property
    def failed(self) -> bool:
        return self.status == IdentityStatus.FAILED


# Schema for a full verification run
class VerificationReport(BaseModel):
    model: str
    order: int
    results: List[IdentityResult]
    passed: bool = True

    @validator("passed", always=True)
    def passed_matches_results(cls, v, values):
        return not any(result.failed for result in values.get("results", []))

    @validator("order")
    def order_must_be_nonnegative(cls, v):
        if v < 0:
            raise ValueError("order must be nonnegative")
        return v
