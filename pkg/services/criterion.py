import logging

from models.stepset import StepSet
from schemas.criterion import CriterionReport

logger = logging.getLogger(__name__)


def analyze(steps: StepSet) -> CriterionReport:
    """
    Check the two conditions under which the generating function is D-finite.

    The criterion is sufficient only: a step set failing it may still have
    a D-finite series.
    """
    small = steps.has_small_horizontal_variations
    p0 = p1 = None
    if small:
        p0 = steps.horizontal_section(0).embed(1).render()
        p1 = steps.horizontal_section(1).embed(1).render()
    report = CriterionReport(
        steps=steps.render(),
        y_symmetric=steps.is_y_symmetric,
        small_horizontal=small,
        p=steps.p,
        P0=p0,
        P1=p1,
        note=steps.note,
    )
    logger.debug(f"criterion for {steps}: holonomy_sufficient={report.holonomy_sufficient}")
    return report
