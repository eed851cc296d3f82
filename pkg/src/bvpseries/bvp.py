"""General solution assembly and the two-point problem u(0) = alpha, u'(x1) = beta.

With the fundamental system in hand the general solution is
u = c1*I1 + c2*I2 + F, and the mixed-endpoint normalizations of the series
make the two-point problem trivial to pin: I2 is the only piece with a
nonzero value at 0 and I1 the only one with a nonzero derivative at x1, so
c2 = alpha and c1 = beta, provided I2(x1) != 0, which keeps (I1, I2) a
genuine fundamental pair (their Wronskian is the constant -I2(x1)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .checks import Check, bound_checks
from .errors import GridMismatch, InvalidDomain, SingularI2
from .grid import SampledFn, same_grid, sup_norm
from .series_core import SeriesSolution, apply_B

SINGULAR_REL_TOL = 1e-8


@dataclass(frozen=True)
class ProblemD:
    """Two-point data: value at the left end, slope at the right end."""

    alpha: float
    beta: float

    def __post_init__(self):
        for name, value in (("alpha", self.alpha), ("beta", self.beta)):
            if not (isinstance(value, (int, float)) and math.isfinite(value)):
                raise InvalidDomain(f"{name} must be a finite real, got {value!r}")


@dataclass(frozen=True)
class Diagnostics:
    """Defect measures for an assembled solution.

    residual_max is the largest interior-node second-difference residual of
    the differential equation; fixedpoint_err the largest node defect in the
    integral fixed-point form u = Bu + g + c1*x + c2.
    """

    residual_max: float
    fixedpoint_err: float


@dataclass(frozen=True, eq=False)
class SolveReport:
    """Solution plus every diagnostic a solve produces.

    On a singular solve (|I2(x1)| below the gate) the report is still built
    for debugging, with u, du, boundary_err, residual_max, and
    fixedpoint_err left as None.
    """

    u: SampledFn | None
    du: SampledFn | None
    c1: float
    c2: float
    boundary_err: tuple[float, float] | None
    residual_max: float | None
    wronskian_dev: float
    i2_at_x1: float
    bound_checks: tuple[Check, ...]
    fixedpoint_err: float | None


def general_solution(sol: SeriesSolution, c1: float, c2: float):
    """Assemble u = c1*I1 + c2*I2 + F and its derivative, node-wise.

    Returns
    -------
    (u, du) : tuple of SampledFn
    """
    grid = sol.grid
    u = SampledFn(grid, c1 * sol.I1.values + c2 * sol.I2.values + sol.F.values)
    du = SampledFn(grid, c1 * sol.dI1.values + c2 * sol.dI2.values + sol.dF.values)
    return u, du


def wronskian_check(sol: SeriesSolution):
    """Node-wise Wronskian of (I1, I2) and its deviation from -I2(x1).

    Returns
    -------
    (w_nodes, dev) : SampledFn, float
        w_nodes[i] = I1*dI2 - dI1*I2 at node i; dev = max |w_nodes + I2(x1)|.
    """
    w = sol.I1.values * sol.dI2.values - sol.dI1.values * sol.I2.values
    dev = float(np.max(np.abs(w + sol.i2_at_x1)))
    return SampledFn(sol.grid, w), dev


def residual_report(u: SampledFn, du: SampledFn, a: SampledFn, f: SampledFn,
                    c1: float, c2: float, g: SampledFn) -> Diagnostics:
    """Measure how well an assembled solution satisfies the equation.

    The derivative column is accepted to mirror the solve outputs but the
    diagnostics need only u: the differential residual uses the central
    second difference on interior nodes, and the fixed-point defect applies
    the discrete operator B directly to u.
    """
    for other in (du, a, f, g):
        if not same_grid(u.grid, other.grid):
            raise GridMismatch("all inputs must share a grid")
    grid = u.grid
    h = grid.h
    uv = u.values
    second = (uv[:-2] - 2.0 * uv[1:-1] + uv[2:]) / (h * h)
    residual = second + a.values[1:-1] * uv[1:-1] - f.values[1:-1]
    bu = apply_B(u, a)
    defect = uv - bu.values - g.values - c1 * grid.nodes - c2
    return Diagnostics(
        residual_max=float(np.max(np.abs(residual))),
        fixedpoint_err=float(np.max(np.abs(defect))),
    )


def solve_problem_d(sol: SeriesSolution, prob: ProblemD) -> SolveReport:
    """Solve the two-point problem via u = beta*I1 + alpha*I2 + F.

    The boundary data map straight onto the series coefficients (c1 = beta,
    c2 = alpha), so u(0) = alpha and u'(x1) = beta hold exactly on the grid.

    Raises
    ------
    SingularI2
        If |I2(x1)| <= 1e-8 * max(1, sup|I2|); the solution formula is then
        not certified. The exception carries the partial report.
    """
    c1, c2 = prob.beta, prob.alpha
    _, wronskian_dev = wronskian_check(sol)
    bchecks = tuple(bound_checks(sol))
    i2_at_x1 = sol.i2_at_x1
    singular_tol = SINGULAR_REL_TOL * max(1.0, sup_norm(sol.I2))
    if abs(i2_at_x1) <= singular_tol:
        partial = SolveReport(
            u=None, du=None, c1=c1, c2=c2, boundary_err=None, residual_max=None,
            wronskian_dev=wronskian_dev, i2_at_x1=i2_at_x1,
            bound_checks=bchecks, fixedpoint_err=None,
        )
        raise SingularI2(i2_at_x1, singular_tol, report=partial)
    u, du = general_solution(sol, c1, c2)
    diag = residual_report(u, du, sol.a, sol.f, c1, c2, sol.g)
    boundary_err = (
        abs(float(u.values[0]) - prob.alpha),
        abs(float(du.values[-1]) - prob.beta),
    )
    return SolveReport(
        u=u, du=du, c1=c1, c2=c2, boundary_err=boundary_err,
        residual_max=diag.residual_max, wronskian_dev=wronskian_dev,
        i2_at_x1=i2_at_x1, bound_checks=bchecks,
        fixedpoint_err=diag.fixedpoint_err,
    )
