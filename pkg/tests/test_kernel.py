import pytest

from core.exceptions import KernelError, SubstitutionOrderError
from core.series import LaurentPoly, TSeries
from models.catalog import builtin_model, step_by_step_rhs, symmetric_rhs
from models.stepset import StepSet
from schemas.verification import IdentityStatus
from services.enumerator import count_walks
from services.kernel import (
    build_kernel,
    check_identity,
    orbit,
    phi,
    psi,
    symmetric_constant_term_suite,
    symmetric_functions,
    verify_functional_equation,
    verify_kernel_identities,
    y_root_vanishing,
)

x = LaurentPoly.variable(0, 1)
xbar = LaurentPoly.variable(0, 1, -1)


def kernel_of(model):
    return build_kernel(builtin_model(model).steps)


def test_kernel_degrees():
    kernel = kernel_of("square")
    assert (kernel.u, kernel.p, kernel.degree_x, kernel.degree_y) == (1, 1, 2, 2)
    assert kernel_of("knight").degree_y == 3


def test_small_root_cancels_the_kernel():
    kernel = kernel_of("kreweras")
    y0 = y_root_vanishing(kernel, 10)
    assert y0.valuation == 1
    assert y0.coefficient(1) == 1
    assert y0.coefficient(2) == xbar
    assert kernel.evaluate(TSeries.variable(0, 1), y0).is_zero()


def test_small_root_needs_one_down_move():
    with pytest.raises(KernelError):
        y_root_vanishing(build_kernel(StepSet.of([(0, -2), (1, 1), (-1, 1)])), 5)


def test_symmetric_functions():
    _, e2 = symmetric_functions(kernel_of("kreweras"))
    assert e2.is_exact
    assert e2.coefficient(0) == xbar
    with pytest.raises(KernelError):
        symmetric_functions(kernel_of("diagonal"))


def test_square_symmetric_functions():
    e1, e2 = symmetric_functions(kernel_of("square"))
    # 1/t - x - 1/x: not a polynomial in x and 1/x
    assert e1.is_exact
    assert e1.valuation == -1
    assert e1.coefficient(-1) == 1
    assert e1.coefficient(0) == -(x + xbar)
    assert e1.coefficient(0).coefficient((1,)) == -1
    assert e1.last == 0
    assert e2.is_exact
    assert (e2 - TSeries.constant(1)).is_zero()


@pytest.mark.parametrize("model", ["square", "diagonal"])
def test_small_root_is_mirror_invariant(model):
    y0 = y_root_vanishing(kernel_of(model), 12)
    assert (y0.mirror() - y0).is_zero()


@pytest.mark.parametrize("model", ["kreweras", "square"])
def test_orbit_maps_are_involutions(model):
    kernel = kernel_of(model)
    start = (TSeries.variable(0, 1), y_root_vanishing(kernel, 12))
    for involution in (phi, psi):
        image = involution(kernel, *start)
        back = involution(kernel, *image)
        assert (back[0] - start[0]).is_zero()
        assert (back[1] - start[1]).is_zero()


@pytest.mark.parametrize("model, size", [("kreweras", 6), ("square", 4)])
def test_orbit_sizes(model, size):
    pairs = orbit(kernel_of(model))
    assert len(pairs) == size
    assert pairs[0].produced_by == "start"
    assert pairs[0].substitutable


def test_check_identity_grades():
    zero = TSeries.zero(1, 8)
    assert check_identity("zero", lambda: zero).status == IdentityStatus.PASSED
    assert check_identity("nonzero", lambda: TSeries.t()).status == IdentityStatus.FAILED
    assert check_identity("short", lambda: zero, required_order=9).status == IdentityStatus.SKIPPED

    def diverges():
        raise SubstitutionOrderError("no")

    assert check_identity("diverges", diverges).status == IdentityStatus.SKIPPED


@pytest.mark.parametrize("model", ["square", "diagonal", "kreweras", "knight"])
def test_functional_equations_vanish(model):
    spec = builtin_model(model)
    table = count_walks(spec.steps, spec.start, 20)
    for rhs in (None, step_by_step_rhs(spec.steps, spec.start)):
        residual = verify_functional_equation(spec, table, rhs)
        assert residual.is_zero()
        assert residual.order >= 20


@pytest.mark.parametrize("model", ["square", "diagonal"])
def test_symmetric_functional_equation(model):
    spec = builtin_model(model)
    table = count_walks(spec.steps, spec.start, 12)
    assert verify_functional_equation(spec, table, symmetric_rhs(spec.steps, spec.start)).is_zero()


@pytest.mark.parametrize("model", ["square", "kreweras"])
def test_kernel_identities(model):
    spec = builtin_model(model)
    results = verify_kernel_identities(spec, count_walks(spec.steps, spec.start, 16))
    assert not [result for result in results if result.failed]
    first = results[0]
    assert first.status == IdentityStatus.PASSED
    assert first.order_checked >= 14


def test_square_antisymmetric_identity():
    spec = builtin_model("square")
    results = {r.name: r for r in verify_kernel_identities(spec, count_walks(spec.steps, spec.start, 16))}
    identity = results["R(x) - R(1/x) - (x - 1/x)*Y0"]
    assert identity.status == IdentityStatus.PASSED
    assert identity.order_checked >= 14


def test_symmetric_polynomials_of_the_roots():
    results = symmetric_constant_term_suite(kernel_of("kreweras"), samples=20, seed=7)
    assert len(results) == 20
    assert all(result.status == IdentityStatus.PASSED for result in results)
