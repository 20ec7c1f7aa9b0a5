import math
import pytest
import numpy as np
from niemytzki_lab.core.errors import (
    AllDegenerateError, ArgumentError, DomainError, EvaluationError, NoRootError,
    PreconditionError,
)
from niemytzki_lab.core.liminf import (
    GeometricGrid, MonotoneFunction, PositiveFunction, derivative_quotient, descent_sequence,
    eq1_check, gamma_check, liminf_estimate, quotient_bound_check, random_descent_pair,
    random_instance, sample_rows,
)
from niemytzki_lab.core.profile import TOL_INV, parabolas, w
from niemytzki_lab.core.registry import monotone_functions, positive_functions

def positive(name):
    return positive_functions.build(name)

def monotone(name):
    return monotone_functions.build(name)

def test_grid_points():
    """Test grid levels, window ids and ordering"""
    grid = GeometricGrid(x0=1.0, ratio=0.5, depth=12, window=4, oversample=8)
    xs, ids = grid.points()

    assert grid.n_windows == 3
    assert xs.size == 12 * 8
    assert xs[0] == pytest.approx(1.0)
    assert np.all(np.diff(xs) < 0)
    assert xs[-1] > 0.5 ** 12
    assert list(np.unique(ids)) == [0, 1, 2]
    assert np.sum(ids == 0) == 4 * 8

def test_grid_drops_partial_window():
    """Test levels past the last full window are not sampled"""
    grid = GeometricGrid(depth=11, window=5, oversample=2)
    xs, ids = grid.points()
    assert grid.n_windows == 2
    assert xs.size == 10 * 2

def test_grid_validation():
    """Test grid parameters are validated"""
    with pytest.raises(ArgumentError):
        GeometricGrid(ratio=1.0)
    with pytest.raises(ArgumentError):
        GeometricGrid(x0=0.0)
    with pytest.raises(ArgumentError):
        GeometricGrid(depth=8, window=5)

def test_liminf_oscillating():
    """Test liminf of 2 + sin(1/x) is 1"""
    estimate = liminf_estimate(positive("oscillating"))

    assert estimate.value == pytest.approx(1.0, abs=0.05)
    assert estimate.converged
    assert len(estimate.window_minima) == 8

def test_liminf_identity_and_constant():
    """Test liminf of x is 0 and of 1 is 1"""
    assert liminf_estimate(positive("x")).value < 1e-10
    estimate = liminf_estimate(positive("one"))
    assert estimate.value == 1.0
    assert estimate.converged

def test_liminf_undefined_function():
    """Test functions undefined on the grid raise EvaluationError"""
    broken = PositiveFunction("log-1", lambda xs: np.log(xs - 1))
    with pytest.raises(EvaluationError):
        liminf_estimate(broken)

def test_sample_rows():
    """Test CSV rows carry x, F(x) and the window id"""
    grid = GeometricGrid(depth=10, window=5, oversample=4)
    rows = sample_rows(positive("square"), grid)

    assert len(rows) == 40
    x, value, window_id = rows[-1]
    assert value == pytest.approx(x * x)
    assert window_id == 1

def test_quotient_bound_simple():
    """Test h(x/2)/h(x) for h = x has liminf 1/2"""
    check = quotient_bound_check(positive("x"), positive("half"), positive("x"))

    assert check.holds
    assert check.estimate.value == pytest.approx(0.5)

@pytest.mark.parametrize("seed", range(200))
def test_quotient_bound_random(seed):
    """Test the quotient bound on seeded admissible random instances"""
    h, phi, psi = random_instance(seed)
    check = quotient_bound_check(h, phi, psi, seed=seed)

    assert check.holds
    assert check.seed == seed

def test_random_instance_reproducible():
    """Test the same seed gives the same instance"""
    xs = np.geomspace(1e-12, 0.1, 50)
    first = random_instance(11)
    second = random_instance(11)
    for f, g in zip(first, second):
        assert np.array_equal(f(xs), g(xs))

def test_quotient_bound_preconditions():
    """Test phi <= psi and psi -> 0 are required"""
    with pytest.raises(PreconditionError):
        quotient_bound_check(positive("x"), positive("x"), positive("half"))
    with pytest.raises(PreconditionError):
        quotient_bound_check(positive("x"), positive("half"), positive("one"))

def test_piecewise_linear_validation():
    """Test piecewise-linear functions need positive increasing knots"""
    with pytest.raises(ArgumentError):
        PositiveFunction.piecewise_linear("bad", [0.0, 1.0], [1.0, 2.0])
    with pytest.raises(ArgumentError):
        PositiveFunction.piecewise_linear("bad", [1.0, 0.5], [1.0, 2.0])
    with pytest.raises(ArgumentError):
        PositiveFunction.piecewise_linear("bad", [0.5, 1.0], [0.0, 2.0])

def test_descent_halving():
    """Test phi = x/2, psi = x halves each step"""
    xs = descent_sequence(positive("half"), positive("x"), 0.5, K=20)

    assert len(xs) == 20
    for prev, nxt in zip(xs, xs[1:]):
        assert nxt == pytest.approx(prev / 2, rel=1e-12)

def test_descent_squaring():
    """Test phi = x^2, psi = x squares each step and stops below the floor"""
    xs = descent_sequence(positive("square"), positive("x"), 0.5)

    for prev, nxt in zip(xs, xs[1:]):
        assert nxt == pytest.approx(prev * prev, rel=1e-12)
    assert xs[-1] < 1e-14
    assert xs[-2] >= 1e-14

@pytest.mark.parametrize("seed", range(50))
def test_descent_random(seed):
    """Test descent residuals on seeded random pairs"""
    phi, psi = random_descent_pair(seed)
    xs = descent_sequence(phi, psi, 0.5)

    assert all(nxt < prev for prev, nxt in zip(xs, xs[1:]))
    for prev, nxt in zip(xs, xs[1:]):
        assert abs(psi.at(nxt) - phi.at(prev)) <= TOL_INV

def test_descent_preconditions():
    """Test descent needs phi < psi and a positive start"""
    with pytest.raises(PreconditionError):
        descent_sequence(positive("x"), positive("half"), 0.5)
    with pytest.raises(ArgumentError):
        descent_sequence(positive("half"), positive("x"), 0.0)

def test_descent_no_root():
    """Test a psi bounded away from 0 cannot be bracketed"""
    floor = PositiveFunction("x+1", lambda xs: xs + 1)
    constant = PositiveFunction("1/2", lambda xs: np.full_like(xs, 0.5))
    with pytest.raises(NoRootError):
        descent_sequence(constant, floor, 0.5)

def test_derivative_quotient():
    """Test symmetric derivative quotients"""
    r = positive("x")
    assert derivative_quotient(monotone("x"), 0.3, r, 0.1) == pytest.approx(1.0)
    # (g(u+r) - g(u-r)) / 2r = 3u^2 + r^2 for g = x^3
    assert derivative_quotient(monotone("cube"), 1.0, r, 0.1) == pytest.approx(3.01)
    # The closed form survives radii that cancel in floating point
    assert derivative_quotient(monotone("expm1"), 0.0, r, 1e-300) == pytest.approx(1.0)

def test_derivative_quotient_fallback():
    """Test quotients without a closed-form increment"""
    g = MonotoneFunction("x^2+x", lambda xs: xs * xs + xs)
    assert derivative_quotient(g, 1.0, positive("x"), 0.25) == pytest.approx(3.0)

def test_derivative_quotient_domain():
    """Test radii and domains are checked"""
    g = MonotoneFunction("sqrt", np.sqrt, domain=(0.0, math.inf))
    with pytest.raises(DomainError):
        derivative_quotient(g, 0.1, positive("x"), 0.5)
    zero = PositiveFunction("0", np.zeros_like)
    with pytest.raises(DomainError):
        derivative_quotient(monotone("x"), 0.0, zero, 0.5)

@pytest.mark.parametrize("name, u", [("x", 0.0), ("cube", 1.0), ("arctan", 0.0), ("expm1", 0.0)])
def test_eq1_nonzero_derivative(name, u):
    """Test the double quotient tends to 1 where g' is nonzero"""
    report = eq1_check(monotone(name), u, positive("square"), positive("x"))

    assert report.estimate.value == pytest.approx(1.0, abs=0.01)
    assert report.holds
    assert report.skipped == 0
    assert not report.low_confidence

def test_eq1_cube_at_zero():
    """Test the double quotient tends to 0 for x^3 at 0 with phi = h^2, psi = h"""
    report = eq1_check(monotone("cube"), 0.0, positive("square"), positive("x"))

    assert report.estimate.value <= 0.01
    assert report.holds

def test_eq1_constant_is_degenerate():
    """Test a locally constant g leaves no usable sample"""
    with pytest.raises(AllDegenerateError):
        eq1_check(monotone("constant"), 0.0, positive("square"), positive("x"))

def test_eq1_preconditions():
    """Test eq1 needs phi <= psi"""
    with pytest.raises(PreconditionError):
        eq1_check(monotone("x"), 0.0, positive("x"), positive("square"))

def test_gamma_check():
    """Test the boundary-trace quotient for g = x^3 at 0"""
    grid = GeometricGrid(depth=20, window=5, oversample=8)
    # I(0, r, w) = r(w)^2 and f_m^-1 / f_n^-1 = sqrt(n/m) for parabolas
    report = gamma_check(monotone("cube"), 0.0, parabolas(), 1, 2, grid)
    assert report.estimate.value == pytest.approx(0.5, rel=1e-6)

    # the identity trace gives 1 for every family
    report = gamma_check(monotone("x"), 0.0, w(), 1, 2, grid)
    assert report.estimate.value == pytest.approx(1.0)

    report = gamma_check(monotone("cube"), 0.0, w(), 1, 2, grid)
    assert report.estimate.value < 0.5

    with pytest.raises(ArgumentError):
        gamma_check(monotone("x"), 0.0, parabolas(), 2, 2)

def test_estimate_serialises():
    """Test estimates serialise with their grid"""
    data = liminf_estimate(positive("one"), GeometricGrid(depth=10, window=5, oversample=2)).to_dict()
    assert data["grid"]["depth"] == 10
    assert data["value"] == 1.0
