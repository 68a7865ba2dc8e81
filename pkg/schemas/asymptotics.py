from typing import List, Optional

from pydantic import BaseModel, validator


# Growth expected from the asymptotic table: mu^n n^alpha
class AsymptoticTarget(BaseModel):
    model: str
    aggregate: str
    mu: str
    mu_value: str
    alpha: str
    structural_zero: bool = False


# One sampled length with its raw extrapolants
class FitSample(BaseModel):
    n: int
    a_n: str
    mu_n: str
    alpha_n: str


class FitResult(BaseModel):
    mu_estimate: str
    alpha_estimate: str
    n_used: int
    period: int
    offset: int
    stride: int
    precision: int
    mu_table: List[str]
    alpha_table: List[List[str]]
    samples: List[FitSample]
    mu_deviations: List[str] = []
    alpha_deviations: List[str] = []
    monotone: bool = False

    @validator("mu_estimate", "alpha_estimate")
    def estimate_must_be_finite(cls, v):
        if v.strip().lower() in ("nan", "inf", "-inf", "+inf"):
            raise ValueError("estimate is not finite")
        return v


# Schema for a fit compared with its table entry
class ComparisonReport(BaseModel):
    target: Optional[AsymptoticTarget] = None
    max_n: int
    source: str
    fit: Optional[FitResult] = None
    mu_relative_error: Optional[str] = None
    alpha_error: Optional[str] = None
    nonzero_indices: Optional[List[int]] = None
