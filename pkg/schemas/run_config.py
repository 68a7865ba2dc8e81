from enum import Enum as PyEnum
from typing import Optional

from pydantic import BaseModel, root_validator, validator


class Subcommand(str, PyEnum):
    ENUMERATE = "enumerate"
    VERIFY = "verify"
    SERIES = "series"
    CRITERION = "criterion"
    ASYMPTOTICS = "asymptotics"


class OutputFormat(str, PyEnum):
    JSON = "json"
    CSV = "csv"
    TEXT = "text"


class SeriesKind(str, PyEnum):
    X = "X"
    Q00 = "Q00"
    QX0 = "Qx0"
    Y0 = "Y0"
    ORBIT = "orbit"
    Q = "Q"


# Schema for one run of a subcommand, shared by the CLI and the HTTP surface
class RunConfig(BaseModel):
    subcommand: Subcommand
    model: Optional[str] = None
    steps: Optional[str] = None
    start: Optional[str] = None
    max_length: Optional[int] = None
    order: Optional[int] = None
    aggregate: Optional[str] = None
    what: Optional[SeriesKind] = None
    format: OutputFormat = OutputFormat.JSON
    output: Optional[str] = None

    @root_validator(skip_on_failure=True)
    def exactly_one_source(cls, values):
        if (values.get("model") is None) == (values.get("steps") is None):
            raise ValueError("give either a model name or a step set, not both")
        if values.get("model") is not None and values.get("start") is not None:
            raise ValueError("a catalog model has a fixed start point")
        return values

    @validator("max_length", "order")
    def must_be_nonnegative(cls, v):
        if v is not None and v < 0:
            raise ValueError("orders and lengths must be nonnegative")
        return v
