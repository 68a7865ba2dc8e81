from typing import Any, Optional

from fastapi import APIRouter

from dependencies import run_or_raise
from schemas.run_config import Subcommand
from schemas.verification import VerificationReport

router = APIRouter()


@router.get("/{model}", response_model=VerificationReport)
def verify_model(model: str, order: Optional[int] = None) -> Any:
    """
    Run the verification suite of a catalog model.
    """
    return run_or_raise(subcommand=Subcommand.VERIFY, model=model, order=order)


@router.get("/", response_model=VerificationReport)
def verify_steps(steps: str, start: Optional[str] = None, order: Optional[int] = None) -> Any:
    """
    Check the general functional equations of a raw step set.
    """
    return run_or_raise(subcommand=Subcommand.VERIFY, steps=steps, start=start, order=order)
