from typing import List, Optional

from pydantic import BaseModel

from core.series import TSeries


# Schema for a truncated series: readable text plus the exact coefficient data
class SeriesOut(BaseModel):
    name: str
    order: Optional[int] = None
    text: str
    data: dict

    @classmethod
    def from_series(cls, name: str, series: TSeries) -> "SeriesOut":
        return cls(name=name, order=series.order, text=series.render(), data=series.to_dict())

    def to_series(self) -> TSeries:
        return TSeries.from_dict(self.data)


class OrbitPairOut(BaseModel):
    produced_by: str
    substitutable: bool
    kernel_order: Optional[int] = None
    x: SeriesOut
    y: SeriesOut


# Schema for the series subcommand
class SeriesReport(BaseModel):
    steps: str
    what: str
    order: int
    series: List[SeriesOut] = []
    orbit: List[OrbitPairOut] = []
