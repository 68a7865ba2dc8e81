from typing import List, Optional

from pydantic import BaseModel, validator


# One nonzero table entry; counts travel as decimal strings
class WalkCount(BaseModel):
    n: int
    i: int
    j: int
    count: str


# Schema for returning enumerated walks
class WalkTableOut(BaseModel):
    steps: str
    start: List[int]
    max_length: int
    aggregate: Optional[str] = None
    values: Optional[List[str]] = None
    entries: Optional[List[WalkCount]] = None

    @validator("start")
    def start_is_a_point(cls, v):
        if len(v) != 2:
            raise ValueError("start must have two coordinates")
        return v
