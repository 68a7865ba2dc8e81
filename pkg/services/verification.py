import logging
from typing import Dict, Iterable, List, Optional, Tuple

from config import settings
from core.exceptions import InputError
from core.series import TSeries
from models.catalog import ModelName, ModelSpec, step_by_step_rhs, symmetric_rhs
from models.walk_table import WalkTable
from schemas.verification import IdentityResult, IdentityStatus, VerificationReport
from services import closedforms
from services.enumerator import Aggregate, AggregateKind, aggregate, count_walks
from services.kernel import (
    axis_series,
    build_kernel,
    check_identity,
    r_series,
    symmetric_constant_term_suite,
    verify_functional_equation,
    verify_kernel_identities,
    y_root_vanishing,
)

logger = logging.getLogger(__name__)

Comparison = Tuple[str, int, int]


def compare_counts(name: str, comparisons: Iterable[Comparison], order_checked: Optional[int] = None) -> IdentityResult:
    """
    Grade a list of (label, expected, actual) integer pairs; the first mismatch fails the check.
    """
    checked = 0
    for label, expected, actual in comparisons:
        checked += 1
        if expected != actual:
            return IdentityResult(
                name=name, status=IdentityStatus.FAILED, order_checked=order_checked,
                detail=f"{label}: expected {expected}, got {actual}",
            )
    logger.debug(f"{name}: {checked} values agree")
    return IdentityResult(name=name, status=IdentityStatus.PASSED, order_checked=order_checked)


class VerificationService:
    # lengths of the exact cross-checks against the enumerator
    KREWERAS_AXIS_LENGTH = 27
    KREWERAS_SOLUTION_ORDER = 24
    KREWERAS_X_ORDER = 50
    QUADRATIC_EQUATION_LENGTH = 20
    DOUBLE_SUM_LENGTH = 15
    LATTICE_COUNT_LENGTH = 20
    LATTICE_TOTAL_LENGTH = 30
    EXPANSION_ORDER = 16
    KNIGHT_ENDPOINT_LENGTH = 22

    def __init__(self, model: ModelSpec, order: Optional[int] = None):
        order = settings.DEFAULT_ORDER if order is None else order
        if order < 0:
            raise InputError(f"order must be nonnegative, got {order}")
        self.model = model
        self.order = order
        self._tables: Dict[int, WalkTable] = {}

    def table(self, length: int) -> WalkTable:
        """
        Walk table of the model up to the given length, built once.
        """
        if length not in self._tables:
            self._tables[length] = count_walks(self.model.steps, self.model.start, length)
        return self._tables[length]

    def run(self) -> VerificationReport:
        """
        Run every identity and oracle comparison that applies to the model.
        """
        name = self.model.name
        logger.info(f"Verifying {name} at order {self.order}")
        results = self.functional_equations()
        if name in (ModelName.SQUARE.value, ModelName.KREWERAS.value):
            results += verify_kernel_identities(self.model, self.table(self.order))
        if name == ModelName.KREWERAS.value:
            results += self.kreweras_checks()
            results += self.constant_term_checks()
        elif name == ModelName.SQUARE.value:
            results += self.lattice_checks(square=True)
            results += self.square_expansion_checks()
        elif name == ModelName.DIAGONAL.value:
            results += self.lattice_checks(square=False)
        elif name == ModelName.KNIGHT.value:
            results.append(self.knight_endpoint_check())
        report = VerificationReport(model=name, order=self.order, results=results)
        failed = [result.name for result in results if result.failed]
        if failed:
            logger.warning(f"{name}: {len(failed)} checks failed: {', '.join(failed)}")
        else:
            logger.info(f"{name}: {len(results)} checks, none failed")
        return report

    def functional_equations(self) -> List[IdentityResult]:
        """
        K Q - RHS through t^order, for the model's own equation and the general constructions.
        """
        model, table = self.model, self.table(self.order)
        results = []
        if model.is_builtin:
            results.append(check_identity(
                "functional equation", lambda: verify_functional_equation(model, table), self.order,
            ))
        results.append(check_identity(
            "step-by-step functional equation",
            lambda: verify_functional_equation(model, table, step_by_step_rhs(model.steps, model.start)),
            self.order,
        ))
        steps = model.steps
        if steps.is_y_symmetric and steps.has_small_horizontal_variations and steps.u == 1:
            results.append(check_identity(
                "symmetric functional equation",
                lambda: verify_functional_equation(model, table, symmetric_rhs(steps, model.start)),
                self.order,
            ))
        return results

    # Kreweras

    def kreweras_checks(self) -> List[IdentityResult]:
        results = []

        # axis counts against the enumerator
        length = self.KREWERAS_AXIS_LENGTH
        table = self.table(length)
        rows = closedforms.kreweras_axis_counts(length)
        results.append(compare_counts(
            "axis counts",
            (
                (f"i={i}, n={n}", value, table.count(3 * n + 2 * i, i, 0))
                for i, row in enumerate(rows) for n, value in enumerate(row)
            ),
            length,
        ))
        results.append(compare_counts(
            "axis totals",
            zip(
                (f"length {m}" for m in range(length + 1)),
                closedforms.kreweras_axis_totals(length),
                aggregate(table, Aggregate(AggregateKind.X_AXIS)),
            ),
            length,
        ))
        results.append(compare_counts(
            "free totals",
            zip(
                (f"length {m}" for m in range(length + 1)),
                closedforms.kreweras_free_totals(length),
                aggregate(table, Aggregate(AggregateKind.FREE)),
            ),
            length,
        ))

        # algebraic solution
        x_order = self.KREWERAS_X_ORDER
        t = TSeries.t(1)
        results.append(check_identity(
            "X - t(2 + X^3)",
            lambda: (lambda x: x - t * (x ** 3 + 2))(closedforms.solve_x(x_order)),
            x_order,
        ))
        order = self.KREWERAS_SOLUTION_ORDER
        solution = closedforms.solve_kreweras(order)
        dp_axis = axis_series(self.table(order))
        results.append(check_identity(
            "Q(0,0) from X against counts",
            lambda: solution.q00 - dp_axis.filter(lambda key: key == (0,)),
            order,
        ))
        results.append(check_identity("Q(x,0) from X against counts", lambda: solution.qx0 - dp_axis, order))
        for label, residual in zip(
                ("P(Q(X,0), X)", "dP/du at (Q(X,0), X)", "dP/dx at (Q(X,0), X)"),
                closedforms.quadratic_method_residuals(closedforms.solve_kreweras(max(self.order, 1))),
        ):
            results.append(check_identity(f"quadratic method: {label}", lambda residual=residual: residual))

        # quadratic equation on enumerated data
        eq_table = self.table(self.QUADRATIC_EQUATION_LENGTH)
        q_axis = axis_series(eq_table)
        results.append(check_identity(
            "quadratic equation on counts",
            lambda: closedforms.quadratic_equation_residual(q_axis, q_axis.filter(lambda key: key == (0,))),
            self.QUADRATIC_EQUATION_LENGTH,
        ))
        results.append(self.double_sum_check())
        return results

    def double_sum_check(self) -> IdentityResult:
        """
        Both double-sum formulas against each other and against the enumerator.
        """
        length = self.DOUBLE_SUM_LENGTH
        table = self.table(length)
        comparisons = []
        for r in range(length + 1):
            for p in range(r + 1):
                for q in range(r + 1):
                    n = p + q + r
                    if n > length:
                        continue
                    first, second = closedforms.kreweras_full_count(p, q, r)
                    counted = table.count(n, r - p, r - q)
                    comparisons.append((f"p={p}, q={q}, r={r} (second sum)", first, second))
                    comparisons.append((f"p={p}, q={q}, r={r} (counts)", first, counted))
        return compare_counts("double sums", comparisons, length)

    def constant_term_checks(self) -> List[IdentityResult]:
        kernel = build_kernel(self.model.steps)
        return symmetric_constant_term_suite(kernel, required_order=min(self.order, 12))

    # square and diagonal lattices

    def lattice_checks(self, square: bool) -> List[IdentityResult]:
        count = closedforms.square_count if square else closedforms.diagonal_count
        total = closedforms.square_total if square else closedforms.diagonal_total
        axis_total = closedforms.square_axis_total if square else closedforms.diagonal_axis_total

        length = self.LATTICE_COUNT_LENGTH
        table = self.table(length)
        results = [compare_counts(
            "endpoint counts",
            (
                (f"({i},{j}) at n={n}", count(i, j, n), table.count(n, i, j))
                for n in range(length + 1) for i in range(n + 1) for j in range(n + 1)
            ),
            length,
        )]

        length = self.LATTICE_TOTAL_LENGTH
        table = self.table(length)
        free = aggregate(table, Aggregate(AggregateKind.FREE))
        axis = aggregate(table, Aggregate(AggregateKind.X_AXIS))
        results.append(compare_counts(
            "free totals",
            ((f"length {n}", total(n), free[n]) for n in range(length + 1)),
            length,
        ))
        results.append(compare_counts(
            "axis totals",
            ((f"length {n}", axis_total(n), axis[n]) for n in range(length + 1)),
            length,
        ))
        if square:
            results.append(compare_counts(
                "shuffle sum",
                ((f"length {n}", closedforms.square_total(n), closedforms.square_shuffle_total(n))
                 for n in range(length + 1)),
                length,
            ))
        return results

    def square_expansion_checks(self) -> List[IdentityResult]:
        """
        Double-sum expansions of Y0 and R(x) against Newton iteration and the enumerator.
        """
        order = self.EXPANSION_ORDER
        y0_sum, r_sum = closedforms.square_kernel_expansions(order)
        kernel = build_kernel(self.model.steps)
        return [
            check_identity("Y0 double sum", lambda: y0_sum - y_root_vanishing(kernel, order), order),
            check_identity("R(x) double sum", lambda: r_sum - r_series(self.table(order - 1)), order),
        ]

    # knight

    def knight_endpoint_check(self) -> IdentityResult:
        """
        Every step raises i + j by one, so (i, j) is only reached at length i + j - 2.
        """
        length = self.KNIGHT_ENDPOINT_LENGTH
        table = self.table(length)
        comparisons = []
        for n, i, j, value in table.entries():
            comparisons.append((f"({i},{j}) at n={n}", i + j - 2, n))
        return compare_counts("endpoint lengths", comparisons, length)
