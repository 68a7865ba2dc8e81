import logging
from typing import Union

from config import settings
from core.exceptions import ContractViolation
from models.catalog import ModelName, ModelSpec, builtin_model
from models.stepset import parse_point, parse_steps
from schemas.asymptotics import ComparisonReport
from schemas.criterion import CriterionReport
from schemas.run_config import RunConfig, SeriesKind, Subcommand
from schemas.series import OrbitPairOut, SeriesOut, SeriesReport
from schemas.verification import VerificationReport
from schemas.walks import WalkCount, WalkTableOut
from services import closedforms
from services.asymptotics import compare_to_table, fit
from services.criterion import analyze
from services.enumerator import aggregate, aggregate_sequence, count_walks, parse_aggregate, series_from_table
from services.kernel import build_kernel, orbit, y_root_vanishing
from services.verification import VerificationService

logger = logging.getLogger(__name__)

DEFAULT_ENUMERATE_LENGTH = 10
DEFAULT_FIT_LENGTH = 2000

Report = Union[WalkTableOut, VerificationReport, SeriesReport, CriterionReport, ComparisonReport]


class RunService:
    def __init__(self, config: RunConfig):
        self.config = config

    def model_spec(self) -> ModelSpec:
        """
        The catalog model or a custom model from the raw step set and start point.
        """
        if self.config.model is not None:
            return builtin_model(self.config.model)
        steps = parse_steps(self.config.steps)
        start = parse_point(self.config.start) if self.config.start else (0, 0)
        return ModelSpec.custom(steps, start)

    def execute(self) -> Report:
        handlers = {
            Subcommand.ENUMERATE: self.enumerate,
            Subcommand.VERIFY: self.verify,
            Subcommand.SERIES: self.series,
            Subcommand.CRITERION: self.criterion,
            Subcommand.ASYMPTOTICS: self.asymptotics,
        }
        return handlers[self.config.subcommand]()

    def enumerate(self) -> WalkTableOut:
        model = self.model_spec()
        length = DEFAULT_ENUMERATE_LENGTH if self.config.max_length is None else self.config.max_length
        table = count_walks(model.steps, model.start, length)
        out = WalkTableOut(steps=model.steps.render(), start=list(model.start), max_length=length)
        if self.config.aggregate:
            kind = parse_aggregate(self.config.aggregate)
            out.aggregate = kind.render()
            out.values = [str(value) for value in aggregate(table, kind)]
        else:
            out.entries = [WalkCount(n=n, i=i, j=j, count=str(count)) for n, i, j, count in table.entries()]
        return out

    def verify(self) -> VerificationReport:
        return VerificationService(self.model_spec(), self.config.order).run()

    def criterion(self) -> CriterionReport:
        return analyze(self.model_spec().steps)

    def series(self) -> SeriesReport:
        """
        Requested series through t^order.
        """
        model = self.model_spec()
        order = settings.DEFAULT_ORDER if self.config.order is None else self.config.order
        what = self.config.what or SeriesKind.Q
        report = SeriesReport(steps=model.steps.render(), what=what.value, order=order)
        if what in (SeriesKind.X, SeriesKind.Q00, SeriesKind.QX0):
            if model.steps.steps != builtin_model(ModelName.KREWERAS.value).steps.steps or model.start != (0, 0):
                raise ContractViolation(f"{what.value} is only available for Kreweras walks")
            if what == SeriesKind.X:
                report.series = [SeriesOut.from_series("X", closedforms.solve_x(order))]
            else:
                solution = closedforms.solve_kreweras(max(order, 1))
                chosen = solution.q00 if what == SeriesKind.Q00 else solution.qx0
                report.series = [SeriesOut.from_series(what.value, chosen.truncate(order))]
        elif what == SeriesKind.Y0:
            report.series = [SeriesOut.from_series("Y0", y_root_vanishing(build_kernel(model.steps), order))]
        elif what == SeriesKind.ORBIT:
            pairs = orbit(build_kernel(model.steps), order=order)
            report.orbit = [
                OrbitPairOut(
                    produced_by=pair.produced_by,
                    substitutable=pair.substitutable,
                    kernel_order=pair.kernel_order,
                    x=SeriesOut.from_series("X", pair.x),
                    y=SeriesOut.from_series("Y", pair.y),
                )
                for pair in pairs
            ]
        else:
            table = count_walks(model.steps, model.start, order)
            report.series = [SeriesOut.from_series("Q", series_from_table(table))]
        return report

    def asymptotics(self) -> ComparisonReport:
        """
        Fit a catalog aggregate against its table entry, or fit raw step-set counts.
        """
        kind = parse_aggregate(self.config.aggregate or "free")
        max_n = DEFAULT_FIT_LENGTH if self.config.max_length is None else self.config.max_length
        if self.config.model is not None:
            return compare_to_table(self.config.model, kind, max_n)
        model = self.model_spec()
        if max_n > settings.DP_MAX_LENGTH:
            logger.warning(f"counting {model.steps} only up to {settings.DP_MAX_LENGTH}")
            max_n = settings.DP_MAX_LENGTH
        sequence = aggregate_sequence(model.steps, model.start, max_n, kind)
        return ComparisonReport(max_n=max_n, source="dynamic programming", fit=fit(sequence))
