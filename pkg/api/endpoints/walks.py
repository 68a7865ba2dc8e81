from typing import Any, Optional

from fastapi import APIRouter

from dependencies import run_or_raise
from schemas.run_config import Subcommand
from schemas.walks import WalkTableOut

router = APIRouter()


@router.get("/", response_model=WalkTableOut)
def enumerate_walks(
        model: Optional[str] = None,
        steps: Optional[str] = None,
        start: Optional[str] = None,
        max_length: int = 10,
        aggregate: Optional[str] = None,
) -> Any:
    """
    Count walks by length and endpoint, or per length for one aggregate.
    """
    return run_or_raise(
        subcommand=Subcommand.ENUMERATE, model=model, steps=steps, start=start,
        max_length=max_length, aggregate=aggregate,
    )
