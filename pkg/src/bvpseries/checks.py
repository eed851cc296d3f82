"""Verification checks for a converged series solution.

Each check compares a measured quantity against a limit and reports the pair,
so failures show how far off the measurement was. Three limit regimes appear:

* Analytic bounds (decay rates, sup bounds) hold with margin in exact
  arithmetic; they are asserted with a fixed 1e-12 slack for rounding.
* Constructive identities (boundary values) hold exactly on the grid and get
  the same 1e-12 slack.
* Discretization diagnostics (ODE residuals, derivative consistency,
  Wronskian constancy, oracle agreement) shrink like h^2; their limits are
  scale-aware O(h^2) envelopes, with empirically calibrated constants and a
  tolerance term covering series truncation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import sup_norm
from .series_core import SeriesSolution

BOUND_SLACK = 1e-12
BOUNDARY_TOL = 1e-12

RESIDUAL_CONST = 100.0
CONSISTENCY_CONST = 50.0
WRONSKIAN_CONST = 50.0
ORACLE_CONST = 200.0


@dataclass(frozen=True)
class Check:
    """One named verification result.

    ``value`` is the measured quantity, ``limit`` what it must not exceed;
    ``passed`` is value <= limit.
    """

    name: str
    passed: bool
    value: float
    limit: float


def _check(name: str, value: float, limit: float) -> Check:
    value = float(value)
    limit = float(limit)
    return Check(name=name, passed=bool(value <= limit), value=value, limit=limit)


def _worst_excess(sups, bound_at) -> float:
    """Largest amount by which a term sup exceeds its per-index bound."""
    return max(s - bound_at(k) for k, s in enumerate(sups))


def bound_checks(sol: SeriesSolution) -> list[Check]:
    """Decay-rate and sup-norm bounds for every computed series term.

    For each series the k-th term is bounded by 2*||seed||*q^k; the
    homogeneous iterates obey the sharper ||B^k t|| <= q^k*x1 and
    ||B^k 1|| <= 2*q^k; and with c = sup|a|*x1^2 the limits obey
    sup|I1| <= 2/(2-c), sup|I2| <= (2+c)/(2-c), sup|F| <= ||g||*(2+c)/(2-c).
    Values reported are worst-case excesses over the bound (negative means
    margin); the limit is the rounding slack.
    """
    cert = sol.certificate
    q, x1 = cert.q, cert.x1
    c = cert.a_sup * x1 * x1
    g_sup = sup_norm(sol.g)
    seed_sups = {"I1": x1, "I2": 1.0, "F": g_sup}
    checks = []
    for name in ("I1", "I2", "F"):
        seed = seed_sups[name]
        checks.append(_check(
            f"geometric_decay:{name}",
            _worst_excess(sol.term_sups[name], lambda k, s=seed: 2.0 * s * q**k),
            BOUND_SLACK,
        ))
    checks.append(_check(
        "iterate_bound:a_k",
        _worst_excess(sol.term_sups["I1"], lambda k: q**k * x1),
        BOUND_SLACK,
    ))
    checks.append(_check(
        "iterate_bound:b_k",
        _worst_excess(sol.term_sups["I2"], lambda k: 2.0 * q**k),
        BOUND_SLACK,
    ))
    checks.append(_check(
        "sup_bound:I1", sup_norm(sol.I1) - 2.0 / (2.0 - c), BOUND_SLACK))
    checks.append(_check(
        "sup_bound:I2", sup_norm(sol.I2) - (2.0 + c) / (2.0 - c), BOUND_SLACK))
    checks.append(_check(
        "sup_bound:F", sup_norm(sol.F) - g_sup * (2.0 + c) / (2.0 - c), BOUND_SLACK))
    return checks


def boundary_checks(sol: SeriesSolution) -> list[Check]:
    """The six endpoint normalizations, exact by construction on the grid."""
    targets = [
        ("boundary:I1(0)", sol.I1.values[0], 0.0),
        ("boundary:I2(0)", sol.I2.values[0], 1.0),
        ("boundary:F(0)", sol.F.values[0], 0.0),
        ("boundary:dI1(x1)", sol.dI1.values[-1], 1.0),
        ("boundary:dI2(x1)", sol.dI2.values[-1], 0.0),
        ("boundary:dF(x1)", sol.dF.values[-1], 0.0),
    ]
    return [_check(name, abs(got - want), BOUNDARY_TOL) for name, got, want in targets]


def _tol_term(sol: SeriesSolution) -> float:
    """Truncation contribution to discretization diagnostics."""
    worst_tail = max(sol.tail_bound.values())
    return 10.0 * (1.0 + sol.certificate.a_sup) * worst_tail


def residual_checks(sol: SeriesSolution) -> list[Check]:
    """Interior-node second-difference residuals of the three limits.

    I1 and I2 solve the homogeneous equation, F the forced one; the central
    second difference of each should cancel a*u (minus f for F) to O(h^2).
    Endpoints carry no stencil; their behaviour is covered by the boundary
    checks instead.
    """
    grid = sol.grid
    h = grid.h
    a = sol.a.values
    f = sol.f.values
    a_sup = sol.certificate.a_sup
    extra = _tol_term(sol)
    checks = []
    for name, fn, rhs in (("I1", sol.I1, None), ("I2", sol.I2, None), ("F", sol.F, f)):
        u = fn.values
        r = (u[:-2] - 2.0 * u[1:-1] + u[2:]) / (h * h) + a[1:-1] * u[1:-1]
        if rhs is not None:
            r = r - rhs[1:-1]
        scale = (1.0 + a_sup) ** 2 * (1.0 + sup_norm(fn)) + (0.0 if rhs is None else sup_norm(sol.f))
        checks.append(_check(
            f"ode_residual:{name}",
            float(np.max(np.abs(r))),
            RESIDUAL_CONST * h * h * scale + extra,
        ))
    return checks


def consistency_checks(sol: SeriesSolution) -> list[Check]:
    """Central differences of each limit against its integral-form derivative."""
    grid = sol.grid
    h = grid.h
    a_sup = sol.certificate.a_sup
    f_sup = sup_norm(sol.f)
    extra = _tol_term(sol)
    checks = []
    for name, fn, dfn in (("I1", sol.I1, sol.dI1), ("I2", sol.I2, sol.dI2),
                          ("F", sol.F, sol.dF)):
        u = fn.values
        central = (u[2:] - u[:-2]) / (2.0 * h)
        dev = float(np.max(np.abs(dfn.values[1:-1] - central)))
        scale = (1.0 + a_sup) * (1.0 + sup_norm(fn)) + (1.0 + f_sup)
        checks.append(_check(
            f"derivative_consistency:{name}",
            dev,
            CONSISTENCY_CONST * h * h * scale + extra,
        ))
    return checks


def wronskian_entry(sol: SeriesSolution, dev: float) -> Check:
    """Constancy of I1*dI2 - dI1*I2 at the value -I2(x1)."""
    h = sol.grid.h
    a_sup = sol.certificate.a_sup
    scale = (1.0 + a_sup) * (1.0 + sup_norm(sol.I1)) * (1.0 + sup_norm(sol.I2))
    limit = WRONSKIAN_CONST * h * h * scale + _tol_term(sol) * (1.0 + sup_norm(sol.I1))
    return _check("wronskian_constant", dev, limit)


def fixed_point_entry(err: float, tol: float, alpha: float, beta: float) -> Check:
    """Defect of u in the integral fixed-point form, bounded by truncation."""
    return _check("fixed_point", err, 10.0 * tol * (1.0 + abs(alpha) + abs(beta)))


def oracle_entry(max_rel_err: float, sol: SeriesSolution) -> Check:
    """Agreement with the independent initial-value integration."""
    h = sol.grid.h
    biggest = max(sup_norm(sol.I1), sup_norm(sol.I2), sup_norm(sol.F))
    scale = (1.0 + sol.certificate.a_sup) * (1.0 + biggest)
    limit = ORACLE_CONST * h * h * scale + 10.0 * max(sol.tail_bound.values())
    return _check("oracle_agreement", max_rel_err, limit)
