from fastapi import HTTPException, status
from pydantic import ValidationError

from core.exceptions import InputError, WalkError
from schemas.run_config import RunConfig
from services.runs import Report, RunService


def run_or_raise(**options) -> Report:
    """
    Run one subcommand for the HTTP layer, turning library errors into HTTP errors.
    """
    try:
        config = RunConfig(**options)
    except ValidationError as exc:
        raise HTTPException(
            status_code=status.HTTP_400_BAD_REQUEST,
            detail=str(exc),
        )
    try:
        return RunService(config).execute()
    except InputError as exc:
        raise HTTPException(
            status_code=status.HTTP_400_BAD_REQUEST,
            detail=str(exc),
        )
    except WalkError as exc:
        raise HTTPException(
            status_code=status.HTTP_422_UNPROCESSABLE_ENTITY,
            detail=str(exc),
        )
