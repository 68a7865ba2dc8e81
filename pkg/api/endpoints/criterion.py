from typing import Any, Optional

from fastapi import APIRouter

from dependencies import run_or_raise
from schemas.criterion import CriterionReport
from schemas.run_config import Subcommand

router = APIRouter()


@router.get("/", response_model=CriterionReport)
def get_criterion(model: Optional[str] = None, steps: Optional[str] = None) -> Any:
    return run_or_raise(subcommand=Subcommand.CRITERION, model=model, steps=steps)
