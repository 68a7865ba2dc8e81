from dataclasses import dataclass, field
from typing import Iterator, List, Tuple

import numpy as np

from core.exceptions import ContractViolation
from models.stepset import Point, StepSet


@dataclass
class WalkTable:
    """Exact counts a[n][i][j] of quadrant walks of length n ending at (i, j).

    ``layers[n]`` is an object array (Python ints) covering the box
    ``0 <= i <= reach_x(n)``, ``0 <= j <= reach_y(n)``; no reachable state lies outside it.
    """

    steps: StepSet
    start: Point
    max_length: int
    layers: List[np.ndarray] = field(default_factory=list)

    def reach_x(self, n: int) -> int:
        return self.start[0] + n * max(0, self.steps.max_dx)

    def reach_y(self, n: int) -> int:
        return self.start[1] + n * max(0, self.steps.max_dy)

    @property
    def bound(self) -> Tuple[int, int]:
        return self.reach_x(self.max_length), self.reach_y(self.max_length)

    def _check_length(self, n: int) -> None:
        if n < 0 or n > self.max_length:
            raise ContractViolation(f"length {n} outside the table range 0..{self.max_length}")

    def count(self, n: int, i: int, j: int) -> int:
        self._check_length(n)
        max_i, max_j = self.bound
        if i < 0 or j < 0 or i > max_i or j > max_j:
            raise ContractViolation(f"endpoint ({i},{j}) outside the table bounds")
        layer = self.layers[n]
        if i >= layer.shape[0] or j >= layer.shape[1]:
            return 0
        return int(layer[i, j])

    def total(self, n: int) -> int:
        self._check_length(n)
        return int(self.layers[n].sum())

    def entries(self) -> Iterator[Tuple[int, int, int, int]]:
        """Nonzero (n, i, j, count) in lexicographic order."""
        for n, layer in enumerate(self.layers):
            for i, j in zip(*np.nonzero(layer)):
                yield n, int(i), int(j), int(layer[i, j])
