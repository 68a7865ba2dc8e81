from typing import Optional

from pydantic import BaseModel, validator


# Schema for the sufficient D-finiteness criterion on a step set
class CriterionReport(BaseModel):
    steps: str
    y_symmetric: bool
    small_horizontal: bool
    holonomy_sufficient: Optional[bool] = None
    p: int
    P0: Optional[str] = None
    P1: Optional[str] = None
    note: Optional[str] = None

    @validator("holonomy_sufficient", always=True)
    def holonomy_follows_predicates(cls, v, values):
        expected = bool(values.get("y_symmetric")) and bool(values.get("small_horizontal"))
        if v is not None and v != expected:
            raise ValueError("holonomy_sufficient must equal y_symmetric and small_horizontal")
        return expected

    @validator("P1", always=True)
    def sections_need_small_variations(cls, v, values):
        if not values.get("small_horizontal") and (v is not None or values.get("P0") is not None):
            raise ValueError("P0 and P1 are only defined for small horizontal variations")
        return v
