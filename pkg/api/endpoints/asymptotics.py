from typing import Any, Optional

from fastapi import APIRouter

from dependencies import run_or_raise
from schemas.asymptotics import ComparisonReport
from schemas.run_config import Subcommand

router = APIRouter()


@router.get("/", response_model=ComparisonReport)
def fit_growth(
        model: Optional[str] = None,
        steps: Optional[str] = None,
        start: Optional[str] = None,
        aggregate: str = "free",
        max_n: Optional[int] = None,
) -> Any:
    """
    Estimate mu and alpha for an aggregate sequence; catalog models are compared with their expected growth.
    """
    return run_or_raise(
        subcommand=Subcommand.ASYMPTOTICS, model=model, steps=steps, start=start,
        aggregate=aggregate, max_length=max_n,
    )
