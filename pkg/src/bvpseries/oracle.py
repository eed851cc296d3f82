"""Independent cross-check: Runge-Kutta shooting for the same equation.

The series pipeline is verified against a deliberately different method:
integrate u'' + a(x)u = f(x) as the first-order system (u' = v,
v' = f - a*u) with the classic fourth-order one-step scheme, then recombine
initial-value solutions by shooting so the mixed endpoint normalizations of
I1, I2, F come out by construction. Nothing here touches the trapezoid
quadrature of the series path; independence is the point.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import Diverged, GridMismatch, OracleSingular
from .grid import Grid, SampledFn, same_grid

OVERFLOW_GUARD = 1e100
SHOOTING_REL_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class IvpTrajectory:
    """Node-aligned initial-value solution: u and its derivative."""

    grid: Grid
    u: np.ndarray
    du: np.ndarray


def _midpoint_values(fn: SampledFn, fn_eval) -> np.ndarray:
    grid = fn.grid
    if fn_eval is None:
        return (fn.values[:-1] + fn.values[1:]) / 2.0
    mids = grid.nodes[:-1] + grid.h / 2.0
    return np.array([float(fn_eval(float(x))) for x in mids])


def rk4_ivp(a: SampledFn, f: SampledFn, u0: float, du0: float, *,
            a_eval=None, f_eval=None) -> IvpTrajectory:
    """Integrate the equation from x = 0 with the classic 4-stage scheme.

    Half-step coefficient values come from ``a_eval``/``f_eval`` (callables
    of x) when given, e.g. exact expression evaluation, and from linear
    interpolation of the node samples otherwise, which keeps the scheme's
    accuracy limited by the representation, not the stepping.

    Raises
    ------
    GridMismatch
        If a and f live on different grids.
    Diverged
        If the state exceeds 1e100 in magnitude or stops being finite.
    """
    if not same_grid(a.grid, f.grid):
        raise GridMismatch("a and f must share a grid")
    grid = a.grid
    h = grid.h
    an, fn = a.values, f.values
    am = _midpoint_values(a, a_eval)
    fm = _midpoint_values(f, f_eval)
    n = grid.n
    u_out = np.empty(n + 1)
    du_out = np.empty(n + 1)
    u, v = float(u0), float(du0)
    u_out[0], du_out[0] = u, v
    for i in range(n):
        k1u = v
        k1v = fn[i] - an[i] * u
        k2u = v + 0.5 * h * k1v
        k2v = fm[i] - am[i] * (u + 0.5 * h * k1u)
        k3u = v + 0.5 * h * k2v
        k3v = fm[i] - am[i] * (u + 0.5 * h * k2u)
        k4u = v + h * k3v
        k4v = fn[i + 1] - an[i + 1] * (u + h * k3u)
        u += h * (k1u + 2.0 * k2u + 2.0 * k3u + k4u) / 6.0
        v += h * (k1v + 2.0 * k2v + 2.0 * k3v + k4v) / 6.0
        if not (abs(u) < OVERFLOW_GUARD and abs(v) < OVERFLOW_GUARD):
            raise Diverged(
                f"initial-value state exceeded {OVERFLOW_GUARD:g} at x = {grid.nodes[i + 1]}"
            )
        u_out[i + 1], du_out[i + 1] = u, v
    return IvpTrajectory(grid=grid, u=u_out, du=du_out)


@dataclass(frozen=True, eq=False)
class OracleFundamental:
    """Shooting reconstruction of the fundamental system and its derivatives."""

    I1: SampledFn
    I2: SampledFn
    F: SampledFn
    dI1: SampledFn
    dI2: SampledFn
    dF: SampledFn


def oracle_fundamental(a: SampledFn, f: SampledFn, *,
                       a_eval=None, f_eval=None) -> OracleFundamental:
    """Rebuild I1, I2, F by shooting from x = 0.

    With phi, psi the homogeneous solutions started from (u, u')(0) = (1, 0)
    and (0, 1), and p the forced solution started from (0, 0):

        I1 = psi / psi'(x1)
        I2 = phi - (phi'(x1) / psi'(x1)) * psi
        F  = p   - (p'(x1)   / psi'(x1)) * psi

    each of which satisfies the endpoint normalizations by construction.

    Raises
    ------
    OracleSingular
        If |psi'(x1)| <= 1e-12 * (1 + sup|psi|), making the recombination
        denominators uncertifiable.
    Diverged
        Propagated from the initial-value integrations.
    """
    grid = a.grid
    zero = SampledFn(grid, np.zeros(grid.n + 1))
    phi = rk4_ivp(a, zero, 1.0, 0.0, a_eval=a_eval, f_eval=lambda x: 0.0)
    psi = rk4_ivp(a, zero, 0.0, 1.0, a_eval=a_eval, f_eval=lambda x: 0.0)
    p = rk4_ivp(a, f, 0.0, 0.0, a_eval=a_eval, f_eval=f_eval)
    dpsi_x1 = float(psi.du[-1])
    if abs(dpsi_x1) <= SHOOTING_REL_TOL * (1.0 + float(np.max(np.abs(psi.u)))):
        raise OracleSingular(
            f"shooting denominator |psi'(x1)| = {abs(dpsi_x1):.3e} is numerically zero"
        )
    c_phi = float(phi.du[-1]) / dpsi_x1
    c_p = float(p.du[-1]) / dpsi_x1
    return OracleFundamental(
        I1=SampledFn(grid, psi.u / dpsi_x1),
        I2=SampledFn(grid, phi.u - c_phi * psi.u),
        F=SampledFn(grid, p.u - c_p * psi.u),
        dI1=SampledFn(grid, psi.du / dpsi_x1),
        dI2=SampledFn(grid, phi.du - c_phi * psi.du),
        dF=SampledFn(grid, p.du - c_p * psi.du),
    )


def compare(series, oracle) -> float:
    """Largest node-wise relative gap between series and oracle limits.

    The gap for each of I1, I2, F is |series - oracle| / (1 + |oracle|),
    maximized over nodes and over the three functions.

    Raises
    ------
    GridMismatch
    """
    worst = 0.0
    for name in ("I1", "I2", "F"):
        s: SampledFn = getattr(series, name)
        o: SampledFn = getattr(oracle, name)
        if not same_grid(s.grid, o.grid):
            raise GridMismatch("series and oracle must share a grid")
        gap = np.max(np.abs(s.values - o.values) / (1.0 + np.abs(o.values)))
        worst = max(worst, float(gap))
    return worst
