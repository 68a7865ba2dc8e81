"""Kernel method toolkit: kernel roots, orbit of the kernel, and identity checks.

Every identity is checked as a residual series that must vanish through its
guaranteed order; orders come out of the series bookkeeping and are never
assumed.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from config import settings
from core.exceptions import (
    ContractViolation,
    KernelError,
    NonInvertibleError,
    OrbitIndecisionError,
    SeriesError,
)
from core.series import (
    DegreeBound,
    LaurentPoly,
    TSeries,
    constant_term_xbar,
    newton_root,
    positive_part,
    sqrt_series,
    substitute,
)
from models.catalog import ModelName, ModelSpec
from models.stepset import Point, StepSet, extreme_step_average
from models.walk_table import WalkTable
from schemas.verification import IdentityResult, IdentityStatus
from services.closedforms import quadratic_equation_residual
from services.enumerator import series_from_table

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Kernel:
    """K(x, y; t) = x^u y^p (1 - t sum_{(i,j) in S} x^i y^j), stored exactly."""

    steps: StepSet
    u: int
    p: int
    series: TSeries

    @property
    def degree_x(self) -> int:
        return self.u + max(0, self.steps.max_dx)

    @property
    def degree_y(self) -> int:
        return self.p + max(0, self.steps.max_dy)

    def y_coefficients(self) -> List[TSeries]:
        """Coefficients of y^0, y^1, ... as series in t over Laurent polynomials in x."""
        return [self.series.section(1, k) for k in range(self.degree_y + 1)]

    def x_coefficients(self) -> List[TSeries]:
        """Coefficients of x^0, x^1, ...; their single variable stands for y."""
        return [self.series.section(0, k) for k in range(self.degree_x + 1)]

    def evaluate(self, x_value: TSeries, y_value: TSeries) -> TSeries:
        powers_x: Dict[int, TSeries] = {}
        powers_y: Dict[int, TSeries] = {}
        total = TSeries.zero(1)
        for n, poly in self.series.items():
            for (a, b), c in poly.items():
                if a not in powers_x:
                    powers_x[a] = x_value ** a
                if b not in powers_y:
                    powers_y[b] = y_value ** b
                total = total + (powers_x[a] * powers_y[b]).shift(n) * c
        return total


@dataclass(frozen=True)
class OrbitPair:
    x: TSeries
    y: TSeries
    produced_by: str
    substitutable: bool
    kernel_order: Optional[int]

    @property
    def valuations(self) -> Tuple[int, int]:
        return self.x.valuation, self.y.valuation


def build_kernel(steps: StepSet) -> Kernel:
    u, p = steps.u, steps.p
    terms = {(0, (u, p)): 1}
    for dx, dy in steps:
        terms[(1, (dx + u, dy + p))] = -1
    return Kernel(steps, u, p, TSeries.from_terms(terms, nvars=2))


def xbar() -> TSeries:
    return TSeries.constant(LaurentPoly.variable(0, 1, -1))


def quadratic_small_root(c: TSeries, b: TSeries, a: TSeries, order: int) -> TSeries:
    """Root of a y^2 + b y + c vanishing at t = 0, through the quadratic formula.

    With beta the t^0 coefficient of b, the root is
    -2c / (b + beta * sqrt((b^2 - 4ac) / beta^2)).
    """
    beta = b.coefficient(0)
    if not beta.is_monomial:
        raise KernelError(f"the linear coefficient {beta} is not a unit at t = 0")
    scale = beta.inverse()
    discriminant = (b * b - a * c * 4) * scale * scale
    root = sqrt_series(discriminant.truncate(order + 1))
    return (c * -2).divide(b + root * beta, order=order)


def y_root_vanishing(kernel: Kernel, order: Optional[int] = None) -> TSeries:
    """
    The root Y0(x; t) of K(x, y) in y with Y0 = 0 at t = 0.
    """
    if kernel.p != 1:
        raise KernelError(f"exactly one small root is needed, the step set has p = {kernel.p}")
    order = settings.DEFAULT_ORDER if order is None else order
    coefficients = kernel.y_coefficients()
    root = newton_root(coefficients, LaurentPoly.zero(1), order)
    if kernel.degree_y == 2:
        explicit = quadratic_small_root(*coefficients, order)
        if not (root - explicit).is_zero():
            raise KernelError("Newton iteration and the quadratic formula disagree on Y0")
    logger.debug(f"Y0 for {kernel.steps} computed to order {root.order}")
    return root


def symmetric_functions(kernel: Kernel) -> Tuple[TSeries, TSeries]:
    """
    Y0 + Y1 = -b/a and Y0 Y1 = c/a for a kernel a y^2 + b y + c.
    """
    if kernel.degree_y != 2:
        raise KernelError(f"the kernel has degree {kernel.degree_y} in y, not 2")
    c, b, a = kernel.y_coefficients()
    if a.last != a.valuation or not a.coefficient(a.valuation).is_monomial:
        raise KernelError(f"the leading coefficient {a} is not a monomial")
    inverse = a.inverse()
    return (-b) * inverse, c * inverse


def _evaluate_coefficient(coefficient: TSeries, value: TSeries) -> TSeries:
    total = TSeries.zero(1)
    for n, poly in coefficient.items():
        for (e,), c in poly.items():
            total = total + (value ** e).shift(n) * c
    return total


def _other_root(coefficients: List[TSeries], fixed: TSeries, moving: TSeries) -> TSeries:
    """The other root of a quadratic: product of the roots divided by the known one."""
    leading = _evaluate_coefficient(coefficients[2], fixed)
    constant = _evaluate_coefficient(coefficients[0], fixed)
    return constant * (leading * moving).inverse()


def phi(kernel: Kernel, x_value: TSeries, y_value: TSeries) -> Tuple[TSeries, TSeries]:
    return _other_root(kernel.x_coefficients(), y_value, x_value), y_value


def psi(kernel: Kernel, x_value: TSeries, y_value: TSeries) -> Tuple[TSeries, TSeries]:
    return x_value, _other_root(kernel.y_coefficients(), x_value, y_value)


def is_substitutable(steps: StepSet, x_value: TSeries, y_value: TSeries) -> bool:
    """Q(X, Y) is a well-defined series when every long walk gains t-valuation at a positive rate."""
    rate = extreme_step_average(
        steps.steps, (Fraction(x_value.valuation), Fraction(y_value.valuation)), Fraction(1)
    )
    return rate is None or rate > 0


def _known_order(*series: TSeries) -> Optional[int]:
    orders = [s.order for s in series if s.order is not None]
    return min(orders) if orders else None


def orbit(
        kernel: Kernel,
        max_size: Optional[int] = None,
        order: Optional[int] = None,
        decision_order: Optional[int] = None,
) -> List[OrbitPair]:
    """
    Alternate the involutions Psi and Phi from (x, Y0) until a pair comes back.

    Two pairs are equal when their difference vanishes through the known
    order; a coincidence known only below decision_order is undecidable.
    """
    if kernel.degree_x != 2 or kernel.degree_y != 2:
        raise KernelError("the orbit needs a kernel of degree 2 in x and in y")
    max_size = settings.ORBIT_MAX_SIZE if max_size is None else max_size
    decision_order = settings.ORBIT_DECISION_ORDER if decision_order is None else decision_order
    x = TSeries.variable(0, 1)
    y0 = y_root_vanishing(kernel, order)
    raw: List[Tuple[TSeries, TSeries, str]] = [(x, y0, "start")]
    closed = False
    while len(raw) < max_size:
        current_x, current_y, _ = raw[-1]
        use_psi = len(raw) % 2 == 1
        try:
            if use_psi:
                candidate_x, candidate_y = psi(kernel, current_x, current_y)
            else:
                candidate_x, candidate_y = phi(kernel, current_x, current_y)
        except NonInvertibleError as exc:
            raise KernelError(f"orbit step {len(raw)} is not defined: {exc}")
        for known_x, known_y, _ in raw:
            if (candidate_x - known_x).is_zero() and (candidate_y - known_y).is_zero():
                known = _known_order(candidate_x - known_x, candidate_y - known_y)
                if known is not None and known < decision_order:
                    raise OrbitIndecisionError(
                        f"orbit pairs agree only through t^{known}, below the decision order {decision_order}"
                    )
                closed = True
                break
        if closed:
            break
        raw.append((candidate_x, candidate_y, "psi" if use_psi else "phi"))
    if not closed:
        logger.warning(f"orbit of {kernel.steps} did not close within {max_size} pairs")

    pairs = []
    for pair_x, pair_y, tag in raw:
        residual = kernel.evaluate(pair_x, pair_y)
        if not residual.is_zero():
            raise KernelError(f"the {tag} pair does not cancel the kernel")
        pairs.append(OrbitPair(pair_x, pair_y, tag, is_substitutable(kernel.steps, pair_x, pair_y), residual.order))
    logger.info(f"orbit of {kernel.steps}: {len(pairs)} pairs, closed={closed}")
    return pairs


def check_identity(name: str, compute: Callable[[], TSeries], required_order: Optional[int] = None) -> IdentityResult:
    """
    Evaluate a residual and grade it; truncation problems become a skipped result.
    """
    try:
        residual = compute()
    except (SeriesError, OrbitIndecisionError) as exc:
        logger.debug(f"{name}: skipped ({exc})")
        return IdentityResult(name=name, status=IdentityStatus.SKIPPED, detail=str(exc))
    except ContractViolation as exc:
        return IdentityResult(name=name, status=IdentityStatus.FAILED, detail=str(exc))
    order = residual.order
    if not residual.is_zero():
        n, poly = next(residual.items())
        return IdentityResult(
            name=name, status=IdentityStatus.FAILED, order_checked=order,
            detail=f"first nonzero residual term at t^{n}: {poly}",
        )
    if required_order is not None and order is not None and order < required_order:
        return IdentityResult(
            name=name, status=IdentityStatus.SKIPPED, order_checked=order,
            detail=f"guaranteed order {order} is below the required {required_order}",
        )
    logger.debug(f"{name}: passed through t^{order}")
    return IdentityResult(name=name, status=IdentityStatus.PASSED, order_checked=order)


def verify_functional_equation(model: ModelSpec, table: WalkTable, rhs=None) -> TSeries:
    """
    K(x, y) Q(x, y) minus the right-hand side, with Q read from the table.
    """
    if table.steps.steps != model.steps.steps or table.start != model.start:
        raise ContractViolation("the table was not built for this model")
    kernel = build_kernel(model.steps)
    q = series_from_table(table)
    builder = rhs or model.rhs
    return kernel.series * q - builder(q)


def axis_series(table: WalkTable) -> TSeries:
    """Q(x, 0; t) from the table."""
    return series_from_table(table).section(1, 0)


def r_series(table: WalkTable) -> TSeries:
    """R(x; t) = x t Q(x, 0; t)."""
    return axis_series(table).shift(1) * LaurentPoly.variable(0, 1)


def r_degree_bound(steps: StepSet, start: Point) -> DegreeBound:
    """x-exponents of R at t^m: walks of length m - 1 ending on the x-axis."""
    slope = None
    if start[1] == 0:
        slope = extreme_step_average(steps.steps, (Fraction(1), Fraction(0)), maximize=True, level_y=True)
    if slope is None:
        slope = Fraction(max(0, steps.max_dx))
    return DegreeBound(
        upper_slope=slope,
        upper_offset=start[0] + 1 - slope,
        lower_slope=Fraction(0),
        lower_offset=Fraction(1),
    )


class _Lazy:
    """Memoized named computations, so one failing substitution only skips the identities using it."""

    def __init__(self):
        self._values: Dict[str, TSeries] = {}

    def get(self, key: str, compute: Callable[[], TSeries]) -> TSeries:
        if key not in self._values:
            self._values[key] = compute()
        return self._values[key]


def verify_kernel_identities(model: ModelSpec, table: WalkTable) -> List[IdentityResult]:
    """
    Kernel-method identities for Kreweras walks and the square lattice, checked on table data.
    """
    if model.name not in (ModelName.KREWERAS.value, ModelName.SQUARE.value):
        raise ContractViolation(f"kernel identities are available for kreweras and square, not {model.name}")
    length = table.max_length
    kernel = build_kernel(model.steps)
    x = TSeries.variable(0, 1)
    r = r_series(table)
    bound = r_degree_bound(model.steps, model.start)
    cache = _Lazy()

    def y0() -> TSeries:
        return cache.get("Y0", lambda: y_root_vanishing(kernel, 2 * length + 4))

    def r_of(name: str, value: Callable[[], TSeries]) -> TSeries:
        return cache.get(f"R({name})", lambda: substitute(r, value(), bound))

    results = [
        check_identity("R(x) + R(Y0) - x*Y0", lambda: r + r_of("Y0", y0) - x * y0()),
    ]
    if model.name == ModelName.SQUARE.value:
        antisymmetric = lambda: (x - xbar()) * y0()
        results += [
            check_identity("Y0(1/x) - Y0(x)", lambda: y0().mirror() - y0()),
            check_identity("R(x) - R(1/x) - (x - 1/x)*Y0", lambda: r - r.mirror() - antisymmetric()),
            check_identity("R(x) - positive part of (x - 1/x)*Y0", lambda: r - positive_part(antisymmetric())),
        ]
        return results

    e1, e2 = symmetric_functions(kernel)
    inverse_t = TSeries.t(1, -1)

    def y1() -> TSeries:
        return cache.get("Y1", lambda: e2 * y0().inverse())

    def product() -> TSeries:
        return cache.get("L", lambda: (r_of("Y0", y0) - x * y0()) * (r_of("Y1", y1) - x * y1()))

    q_axis = axis_series(table)
    q00 = q_axis.filter(lambda key: key == (0,))
    t = TSeries.t(1)
    results += [
        check_identity("Y0 + Y1 - e1", lambda: y0() + y1() - e1),
        check_identity("Y0*Y1 - e2", lambda: y0() * y1() - e2),
        check_identity(
            "R(Y1) - x*Y1 - (R(x) + 2/x - 1/t)",
            lambda: r_of("Y1", y1) - x * y1() - (r + xbar() * 2 - inverse_t),
        ),
        check_identity("R(Y0) + R(Y1) - 1/x", lambda: r_of("Y0", y0) + r_of("Y1", y1) - xbar()),
        check_identity(
            "(R(Y0) - x*Y0)(R(Y1) - x*Y1) + R(x)(R(x) + 2/x - 1/t)",
            lambda: product() + r * (r + xbar() * 2 - inverse_t),
        ),
        check_identity(
            "positive part of the product - (x - 2t*Q(0,0))",
            lambda: positive_part(product()) - (x - t * q00 * 2),
        ),
        check_identity(
            "t^2 x^2 Q(x,0)^2 + (2t - x) Q(x,0) - 2t Q(0,0) + x",
            lambda: quadratic_equation_residual(q_axis, q00),
        ),
    ]
    return results


def symmetric_constant_term_suite(
        kernel: Kernel,
        samples: Optional[int] = None,
        seed: Optional[int] = None,
        required_order: int = 12,
) -> List[IdentityResult]:
    """
    For random symmetric polynomials F of degree at most 4, F(Y0, Y1) involves
    only nonpositive powers of x and its x^0 part is the constant F(0, 0).
    """
    samples = settings.LEMMA_SAMPLES if samples is None else samples
    seed = settings.LEMMA_SEED if seed is None else seed
    _, e2 = symmetric_functions(kernel)
    y0 = y_root_vanishing(kernel, required_order + 12)
    y1 = e2 * y0.inverse()
    powers0 = [TSeries.one(1)]
    powers1 = [TSeries.one(1)]
    for _ in range(4):
        powers0.append(powers0[-1] * y0)
        powers1.append(powers1[-1] * y1)
    monomials = [(a, b) for a in range(5) for b in range(a, 5) if a + b <= 4]
    rng = np.random.default_rng(seed)
    results = []
    for sample in range(samples):
        coefficients = [int(c) for c in rng.integers(-5, 6, size=len(monomials))]

        def evaluate(coefficients=coefficients) -> TSeries:
            total = TSeries.zero(1)
            for (a, b), c in zip(monomials, coefficients):
                if not c:
                    continue
                term = powers0[a] * powers1[b]
                if a != b:
                    term = term + powers0[b] * powers1[a]
                total = total + term * c
            return constant_term_xbar(total) - coefficients[0]

        results.append(check_identity(f"symmetric sample {sample}: constant term = F(0,0)", evaluate, required_order))
    return results
