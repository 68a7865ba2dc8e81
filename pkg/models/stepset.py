import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

import sympy as sp

from core.exceptions import InvalidStepSet, QuadrantError
from core.series import LaurentPoly

Step = Tuple[int, int]
Point = Tuple[int, int]

_STEP_PATTERN = re.compile(r"\((-?\d+),(-?\d+)\)")
_POINT_PATTERN = re.compile(r"\(?(-?\d+),(-?\d+)\)?")


@dataclass(frozen=True)
class StepSet:
    """A finite set of allowed steps; every derived quantity is computed on access."""

    steps: Tuple[Step, ...]
    note: Optional[str] = None

    def __post_init__(self):
        if not self.steps:
            raise InvalidStepSet("a step set needs at least one step")
        if len(set(self.steps)) != len(self.steps):
            raise InvalidStepSet(f"duplicate steps in {self.steps}")
        object.__setattr__(self, "steps", tuple(sorted((int(dx), int(dy)) for dx, dy in self.steps)))

    @classmethod
    def of(cls, steps: Iterable[Step], note: Optional[str] = None) -> "StepSet":
        return cls(tuple(tuple(step) for step in steps), note)

    def __iter__(self):
        return iter(self.steps)

    def __len__(self) -> int:
        return len(self.steps)

    def __contains__(self, step) -> bool:
        return tuple(step) in self.steps

    @property
    def u(self) -> int:
        """Largest move to the left (0 when there is none)."""
        return max(0, -min(dx for dx, _ in self.steps))

    @property
    def p(self) -> int:
        """Largest down move (0 when there is none)."""
        return max(0, -min(dy for _, dy in self.steps))

    @property
    def max_dx(self) -> int:
        return max(dx for dx, _ in self.steps)

    @property
    def max_dy(self) -> int:
        return max(dy for _, dy in self.steps)

    @property
    def is_y_symmetric(self) -> bool:
        return all((-dx, dy) in self.steps for dx, dy in self.steps)

    @property
    def has_small_horizontal_variations(self) -> bool:
        return all(abs(dx) <= 1 for dx, _ in self.steps)

    def horizontal_section(self, dx: int) -> LaurentPoly:
        """Sum of y^dy over the steps (dx, dy)."""
        return LaurentPoly({(dy,): 1 for sx, dy in self.steps if sx == dx}, 1)

    def render(self) -> str:
        return ";".join(f"({dx},{dy})" for dx, dy in self.steps)

    def __str__(self) -> str:
        return self.render()


def parse_steps(text: str, note: Optional[str] = None) -> StepSet:
    """Parse ``"(dx,dy);(dx,dy);..."``; whitespace is ignored."""
    compact = re.sub(r"\s+", "", text or "")
    if not compact:
        raise InvalidStepSet("empty step set")
    steps: List[Step] = []
    for chunk in compact.strip(";").split(";"):
        match = _STEP_PATTERN.fullmatch(chunk)
        if match is None:
            raise InvalidStepSet(f"cannot read step {chunk!r}; expected (dx,dy)")
        steps.append((int(match.group(1)), int(match.group(2))))
    return StepSet.of(steps, note)


def parse_point(text: str) -> Point:
    match = _POINT_PATTERN.fullmatch(re.sub(r"\s+", "", text or ""))
    if match is None:
        raise InvalidStepSet(f"cannot read point {text!r}; expected i,j")
    return int(match.group(1)), int(match.group(2))


def check_start(start: Point) -> Point:
    i, j = start
    if i < 0 or j < 0:
        raise QuadrantError(f"start point {start} lies outside the quarter plane")
    return int(i), int(j)


def _rational(value) -> sp.Rational:
    value = Fraction(value)
    return sp.Rational(value.numerator, value.denominator)


def _vertex(support: Sequence[Step], active: Tuple[str, ...]) -> Optional[List[sp.Rational]]:
    # frequencies on the support summing to one with zero drift along every active axis
    rows = [[1] * len(support)]
    rows += [[dx if name == "x" else dy for dx, dy in support] for name in active]
    matrix = sp.Matrix(rows)
    if matrix.det() == 0:
        return None
    rhs = sp.Matrix([1] + [0] * len(active))
    return list(matrix.LUsolve(rhs))


def extreme_step_average(
        steps: Sequence[Step],
        weight: Tuple[Fraction, Fraction],
        constant: Fraction = Fraction(0),
        maximize: bool = False,
        level_y: bool = False,
) -> Optional[Fraction]:
    """Extreme value of ``constant + wx*dx + wy*dy`` averaged over step frequencies.

    Frequencies range over the probability vectors whose mean drift is
    nonnegative in both coordinates (long quadrant walks), with a zero mean
    vertical drift when ``level_y`` is set (long walks ending on the x-axis).
    The optimum of this linear program sits at a vertex, and every vertex
    has at most three nonzero frequencies, so the vertices are enumerated
    and each one solved exactly with sympy.  Returns None when no frequency
    vector is feasible.
    """
    wx, wy = _rational(weight[0]), _rational(weight[1])
    constant = _rational(constant)
    steps = list(steps)
    best: Optional[sp.Rational] = None
    active_sets = [("y",), ("x", "y")] if level_y else [(), ("x",), ("y",), ("x", "y")]
    for active in active_sets:
        for support in itertools.combinations(steps, 1 + len(active)):
            freqs = _vertex(support, active)
            if freqs is None or any(f < 0 for f in freqs):
                continue
            drift_x = sum((f * dx for f, (dx, _) in zip(freqs, support)), sp.Integer(0))
            drift_y = sum((f * dy for f, (_, dy) in zip(freqs, support)), sp.Integer(0))
            if drift_x < 0 or drift_y < 0 or (level_y and drift_y != 0):
                continue
            value = constant + wx * drift_x + wy * drift_y
            if best is None or (value > best if maximize else value < best):
                best = value
    return None if best is None else Fraction(int(best.p), int(best.q))
