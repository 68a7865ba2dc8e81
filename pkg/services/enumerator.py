import logging
import re
from dataclasses import dataclass
from enum import Enum as PyEnum
from typing import Iterator, List, Optional

import numpy as np

from core.exceptions import InputError
from core.series import LaurentPoly, TSeries
from models.stepset import Point, StepSet, check_start
from models.walk_table import WalkTable

logger = logging.getLogger(__name__)


class AggregateKind(str, PyEnum):
    ENDPOINT = "endpoint"
    X_AXIS = "x_axis"
    ORIGIN = "origin"
    FREE = "free"


@dataclass(frozen=True)
class Aggregate:
    kind: AggregateKind
    endpoint: Optional[Point] = None

    def __post_init__(self):
        if self.kind == AggregateKind.ENDPOINT and self.endpoint is None:
            raise InputError("the endpoint aggregate needs a point (i,j)")

    def render(self) -> str:
        if self.kind == AggregateKind.ENDPOINT:
            return f"endpoint({self.endpoint[0]},{self.endpoint[1]})"
        return self.kind.value


_ENDPOINT_PATTERN = re.compile(r"endpoint[(:]?(-?\d+),(-?\d+)\)?")


def parse_aggregate(text: str) -> Aggregate:
    """Read ``origin``, ``x_axis``, ``free`` or ``endpoint(i,j)`` / ``endpoint:i,j``."""
    compact = re.sub(r"\s+", "", text or "").lower()
    match = _ENDPOINT_PATTERN.fullmatch(compact)
    if match:
        return Aggregate(AggregateKind.ENDPOINT, (int(match.group(1)), int(match.group(2))))
    try:
        kind = AggregateKind(compact.replace("-", "_"))
    except ValueError:
        raise InputError(f"unknown aggregate {text!r}")
    return Aggregate(kind)


def walk_layers(steps: StepSet, start: Point, max_length: int) -> Iterator[np.ndarray]:
    """
    Yield the count arrays a[n] for n = 0..max_length, one layer at a time.

    Each layer is pushed forward along every step; the slices drop the
    moves that would leave the quadrant.
    """
    i0, j0 = check_start(start)
    if max_length < 0:
        raise InputError(f"maximal length must be nonnegative, got {max_length}")
    grow_x, grow_y = max(0, steps.max_dx), max(0, steps.max_dy)
    layer = np.zeros((i0 + 1, j0 + 1), dtype=object)
    layer[i0, j0] = 1
    yield layer
    for n in range(1, max_length + 1):
        following = np.zeros((i0 + n * grow_x + 1, j0 + n * grow_y + 1), dtype=object)
        rows, cols = layer.shape
        for dx, dy in steps:
            src_i, src_j = max(0, -dx), max(0, -dy)
            if src_i >= rows or src_j >= cols:
                continue
            following[src_i + dx:rows + dx, src_j + dy:cols + dy] += layer[src_i:, src_j:]
        layer = following
        yield layer


def count_walks(steps: StepSet, start: Point, max_length: int) -> WalkTable:
    """
    Count quadrant walks of every length up to max_length, by endpoint.
    """
    table = WalkTable(steps, check_start(start), max_length)
    table.layers.extend(walk_layers(steps, start, max_length))
    logger.info(f"Counted walks for {steps} from {table.start} up to length {max_length}")
    return table


def layer_value(layer: np.ndarray, aggregate: Aggregate) -> int:
    if aggregate.kind == AggregateKind.FREE:
        return int(layer.sum())
    if aggregate.kind == AggregateKind.X_AXIS:
        return int(layer[:, 0].sum())
    i, j = (0, 0) if aggregate.kind == AggregateKind.ORIGIN else aggregate.endpoint
    if i >= layer.shape[0] or j >= layer.shape[1]:
        return 0
    return int(layer[i, j])


def aggregate(table: WalkTable, kind: Aggregate) -> List[int]:
    """
    Per-length sums over an endpoint class of a built table.
    """
    if kind.kind == AggregateKind.ENDPOINT:
        # raises for endpoints beyond the table bounds
        table.count(0, *kind.endpoint)
    return [layer_value(layer, kind) for layer in table.layers]


def aggregate_sequence(steps: StepSet, start: Point, max_length: int, kind: Aggregate) -> List[int]:
    """Same sums as ``aggregate`` without keeping the layers in memory."""
    if kind.kind == AggregateKind.ENDPOINT and min(kind.endpoint) < 0:
        raise InputError(f"endpoint {kind.endpoint} lies outside the quarter plane")
    return [layer_value(layer, kind) for layer in walk_layers(steps, start, max_length)]


def series_from_table(table: WalkTable) -> TSeries:
    """Q(x, y; t) = sum a_{i,j}(n) x^i y^j t^n, guaranteed through t^N."""
    coefficients = []
    for layer in table.layers:
        rows, cols = np.nonzero(layer)
        coefficients.append(LaurentPoly({(int(i), int(j)): int(layer[i, j]) for i, j in zip(rows, cols)}, 2))
    return TSeries(coefficients, 0, table.max_length, 2)
