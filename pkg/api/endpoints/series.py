from typing import Any, Optional

from fastapi import APIRouter

from dependencies import run_or_raise
from schemas.run_config import SeriesKind, Subcommand
from schemas.series import SeriesReport

router = APIRouter()


@router.get("/", response_model=SeriesReport)
def get_series(
        what: SeriesKind = SeriesKind.Q,
        model: Optional[str] = None,
        steps: Optional[str] = None,
        start: Optional[str] = None,
        order: Optional[int] = None,
) -> Any:
    return run_or_raise(
        subcommand=Subcommand.SERIES, model=model, steps=steps, start=start, what=what, order=order,
    )
