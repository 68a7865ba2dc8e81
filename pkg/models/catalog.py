from dataclasses import dataclass, field
from enum import Enum as PyEnum
from typing import Callable, Optional

from core.exceptions import ContractViolation, UnknownModel
from core.series import LaurentPoly, TSeries
from models.stepset import Point, StepSet, check_start

# Q(x, y; t) as a bivariate series -> right-hand side of K(x, y) Q(x, y) = ...
RightHandSide = Callable[[TSeries], TSeries]


class ModelName(str, PyEnum):
    SQUARE = "square"
    DIAGONAL = "diagonal"
    KREWERAS = "kreweras"
    KNIGHT = "knight"


def boundary_x(q: TSeries) -> TSeries:
    """Q(x, 0) seen as a bivariate series."""
    return q.section(1, 0).embed(0)


def boundary_y(q: TSeries) -> TSeries:
    """Q(0, y) seen as a bivariate series."""
    return q.section(0, 0).embed(1)


def corner(q: TSeries) -> TSeries:
    return q.filter(lambda key: key == (0, 0))


def _monomial(c, i: int, j: int) -> TSeries:
    return TSeries.constant(LaurentPoly.monomial(c, (i, j)))


def _xy(i: int = 1, j: int = 1) -> LaurentPoly:
    return LaurentPoly.monomial(1, (i, j))


def square_rhs(q: TSeries) -> TSeries:
    t = TSeries.t(2)
    return _monomial(1, 1, 1) - t * boundary_x(q) * _xy(1, 0) - t * boundary_y(q) * _xy(0, 1)


def diagonal_rhs(q: TSeries) -> TSeries:
    t = TSeries.t(2)
    one = LaurentPoly.one(2)
    return (
            _monomial(1, 1, 1)
            - t * boundary_x(q) * (one + _xy(2, 0))
            - t * boundary_y(q) * (one + _xy(0, 2))
            + t * corner(q)
    )


# same boundary terms x t Q(x,0) and y t Q(0,y)
kreweras_rhs = square_rhs


def knight_rhs(q: TSeries) -> TSeries:
    t = TSeries.t(2)
    return _monomial(1, 2, 2) - t * boundary_x(q) * _xy(3, 0) - t * boundary_y(q) * _xy(0, 3)


def step_by_step_rhs(steps: StepSet, start: Point) -> RightHandSide:
    """Right-hand side for any step set: remove, step by step, the moves that leave the quadrant.

    Multiplied through by ``x^u y^p``, the construction
    ``Q = x^i0 y^j0 + t S(x, y) Q - t sum_s x^dx y^dy Q[i < -dx or j < -dy]``
    becomes ``K Q = x^u y^p (x^i0 y^j0 - t sum_s ...)``.
    """
    u, p = steps.u, steps.p
    i0, j0 = start

    def rhs(q: TSeries) -> TSeries:
        t = TSeries.t(2)
        total = _monomial(1, i0 + u, j0 + p)
        for dx, dy in steps:
            blocked = q.filter(lambda key, dx=dx, dy=dy: key[0] < -dx or key[1] < -dy)
            if not blocked.is_zero():
                total = total - t * blocked * _xy(dx + u, dy + p)
        return total

    return rhs


def symmetric_rhs(steps: StepSet, start: Point) -> RightHandSide:
    """Right-hand side for y-symmetric sets with small horizontal variations.

    The kernel is ``x y^p (1 - t P0(y) - t (x + 1/x) P1(y))`` and the boundary
    terms are the rows ``Q_m(x) = [y^m] Q(x, y)`` for ``m < p`` together with
    ``Q(0, y)``.
    """
    if not (steps.is_y_symmetric and steps.has_small_horizontal_variations):
        raise ContractViolation(f"{steps} is not y-symmetric with small horizontal variations")
    if steps.u != 1:
        raise ContractViolation(f"{steps} has no horizontal steps")
    p = steps.p
    i0, j0 = start
    p1 = steps.horizontal_section(1).embed(1)

    def rhs(q: TSeries) -> TSeries:
        t = TSeries.t(2)
        total = _monomial(1, 1 + i0, p + j0) - t * boundary_y(q) * p1 * _xy(0, p)
        for a, b in steps:
            if b >= 0:
                continue
            for m in range(-b):
                row = q.section(1, m).embed(0)
                term = row * _xy(1 + a, 0)
                if a == -1:
                    term = term - row.filter(lambda key: key[0] == 0)
                total = total - t * term * _xy(0, p + m + b)
        return total

    return rhs


@dataclass(frozen=True)
class ModelSpec:
    name: str
    steps: StepSet
    start: Point = (0, 0)
    rhs: Optional[RightHandSide] = field(default=None, compare=False)
    description: str = ""

    def __post_init__(self):
        object.__setattr__(self, "start", check_start(self.start))
        if self.rhs is None:
            object.__setattr__(self, "rhs", step_by_step_rhs(self.steps, self.start))

    @property
    def is_builtin(self) -> bool:
        return self.name in {model.value for model in ModelName}

    @classmethod
    def custom(cls, steps: StepSet, start: Point = (0, 0)) -> "ModelSpec":
        return cls("custom", steps, start, None, "user-supplied step set")


_CATALOG = {
    ModelName.SQUARE: lambda: ModelSpec(
        ModelName.SQUARE.value,
        StepSet.of([(0, 1), (1, 0), (0, -1), (-1, 0)]),
        (0, 0),
        square_rhs,
        "ordinary square lattice",
    ),
    ModelName.DIAGONAL: lambda: ModelSpec(
        ModelName.DIAGONAL.value,
        StepSet.of([(1, 1), (1, -1), (-1, 1), (-1, -1)]),
        (0, 0),
        diagonal_rhs,
        "diagonal square lattice",
    ),
    ModelName.KREWERAS: lambda: ModelSpec(
        ModelName.KREWERAS.value,
        StepSet.of([(-1, 0), (0, -1), (1, 1)]),
        (0, 0),
        kreweras_rhs,
        "South, West and North-East steps",
    ),
    ModelName.KNIGHT: lambda: ModelSpec(
        ModelName.KNIGHT.value,
        StepSet.of([(2, -1), (-1, 2)]),
        (1, 1),
        knight_rhs,
        "knight's walks from (1,1)",
    ),
}


def builtin_model(name: str) -> ModelSpec:
    try:
        key = ModelName((name or "").strip().lower())
    except ValueError:
        raise UnknownModel(f"unknown model {name!r}; choose from {', '.join(m.value for m in ModelName)}")
    return _CATALOG[key]()
