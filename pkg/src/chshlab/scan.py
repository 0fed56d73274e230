"""Grid scans and derivative-free refinement over analyzer-angle space.

Used to verify the bound structure of the three scalar objectives:

* ``constrained_e4``       -- the conditioned four-variable expectation,
                              bounded by [-2, 2];
* ``eight_variable_sum``   -- q1 + q2 + q3 - q4, bounded by +-2 sqrt(2);
* ``t_validity_margin``    -- t0 - |E|, which must stay nonnegative for the
                              two-point outcome law to be a probability
                              distribution.

All objectives are pi-periodic in each angle, so the lattice
{(i/resolution) pi : 0 <= i < resolution}^4 covers the whole space. At the
default resolution 24 every multiple of pi/8 is on-lattice, which places
the known extremal configurations exactly on grid points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Union

import numpy as np

from .constrained import (
    DegenerateConditioningError,
    constrained_expectation_closed,
    correlation_quad,
)
from .lhv import AngleConfig
from .chsh_operator import t0_closed_form, t_mean
from .seeding import component_stream

BOUND_SLACK = 1e-9

# Default refinement schedule; step0 matches the resolution-24 lattice pitch.
DEFAULT_STEP0 = math.pi / 24
DEFAULT_TOL = 1e-10

# Violations stored per report are capped; n_violations counts all of them.
MAX_STORED_VIOLATIONS = 1000


@dataclass(frozen=True)
class _Objective:
    name: str
    evaluate: Callable[[AngleConfig], float]
    lattice_values: Callable | None  # (q1..q4 broadcastable arrays) -> ndarray
    default_bound: float
    two_sided: bool  # True: |v| <= bound; False: v >= bound


def _e4_scalar(config: AngleConfig) -> float:
    return constrained_expectation_closed(correlation_quad(config))


def _eight_scalar(config: AngleConfig) -> float:
    quad = correlation_quad(config)
    return quad.q1 + quad.q2 + quad.q3 - quad.q4


def _margin_scalar(config: AngleConfig) -> float:
    return t0_closed_form(config) - abs(t_mean(config))


def _e4_lattice(q1, q2, q3, q4):
    den = 1.0 + q1 * q2 * q3 * q4
    num = (q1 + q2 + q3 - q4) + (q2 * q3 * q4 + q1 * q3 * q4 + q1 * q2 * q4 - q1 * q2 * q3)
    valid = den > 1e-12
    return np.where(valid, num / np.where(valid, den, 1.0), np.nan)


def _eight_lattice(q1, q2, q3, q4):
    return q1 + q2 + q3 - q4


def _t0_lattice(a1, a2, b1, b2):
    # Needs the raw angles, not just the quad; same cancellation-free
    # sum-of-squares form as the scalar t0 evaluation.
    x = 2.0 * (a1 - a2)
    y = 2.0 * (b1 - b2)
    return 2.0 * np.hypot(np.sin((x - y) / 2.0), np.cos((x + y) / 2.0))


OBJECTIVES: dict[str, _Objective] = {
    "constrained_e4": _Objective(
        name="constrained_e4",
        evaluate=_e4_scalar,
        lattice_values=_e4_lattice,
        default_bound=2.0,
        two_sided=True,
    ),
    "eight_variable_sum": _Objective(
        name="eight_variable_sum",
        evaluate=_eight_scalar,
        lattice_values=_eight_lattice,
        default_bound=2.0 * math.sqrt(2.0),
        two_sided=True,
    ),
    "t_validity_margin": _Objective(
        name="t_validity_margin",
        evaluate=_margin_scalar,
        lattice_values=None,  # handled specially: needs raw angles
        default_bound=0.0,
        two_sided=False,
    ),
}


@dataclass(frozen=True)
class ScanReport:
    """Outcome of a lattice scan (optionally sharpened by refinement)."""

    objective_name: str
    grid_resolution: int
    n_refinements: int
    max_value: float
    argmax: AngleConfig
    min_value: float
    argmin: AngleConfig
    violations: list = field(default_factory=list)  # [(AngleConfig, value), ...]
    n_violations: int = 0
    n_evaluated: int = 0
    n_skipped: int = 0
    bound: float | None = None


def _lookup(objective: Union[str, _Objective]) -> _Objective:
    if isinstance(objective, _Objective):
        return objective
    try:
        return OBJECTIVES[objective]
    except KeyError:
        raise ValueError(
            f"unknown objective {objective!r}; expected one of {sorted(OBJECTIVES)}"
        ) from None


def _lattice_axis(resolution: int) -> np.ndarray:
    return (np.arange(resolution) / resolution) * math.pi


def _evaluate_lattice(obj: _Objective, resolution: int) -> np.ndarray:
    """Objective values on the resolution^4 lattice (NaN where degenerate)."""
    ax = _lattice_axis(resolution)
    a1 = ax[:, None, None, None]
    a2 = ax[None, :, None, None]
    b1 = ax[None, None, :, None]
    b2 = ax[None, None, None, :]
    q1 = -np.cos(2.0 * (a1 - b1))
    q2 = -np.cos(2.0 * (a1 - b2))
    q3 = -np.cos(2.0 * (a2 - b1))
    q4 = -np.cos(2.0 * (a2 - b2))
    if obj.name == "t_validity_margin":
        t0 = _t0_lattice(a1, a2, b1, b2)
        values = t0 - np.abs(q1 + q2 + q3 - q4)
        return np.broadcast_to(values, (resolution,) * 4).copy()
    values = obj.lattice_values(q1, q2, q3, q4)
    return np.broadcast_to(values, (resolution,) * 4).copy()


def _config_at(ax: np.ndarray, flat_index: int, shape) -> AngleConfig:
    i1, i2, i3, i4 = np.unravel_index(flat_index, shape)
    return AngleConfig(float(ax[i1]), float(ax[i2]), float(ax[i3]), float(ax[i4]))


def _is_violation(obj: _Objective, bound: float, value: float) -> bool:
    if obj.two_sided:
        return abs(value) > bound + BOUND_SLACK
    return value < bound - BOUND_SLACK


def grid_scan(objective: Union[str, _Objective], resolution: int, bound: float | None = None) -> ScanReport:
    """Evaluate an objective on the full angle lattice and record extrema.

    Degenerate-conditioning points (possible only off the angle manifold,
    so in practice never) are skipped and counted, never flagged. Ties for
    the extrema resolve to the lexicographically smallest lattice index.
    """
    obj = _lookup(objective)
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    if bound is None:
        bound = obj.default_bound
    values = _evaluate_lattice(obj, resolution)
    flat = values.ravel()
    valid = ~np.isnan(flat)
    n_skipped = int(np.count_nonzero(~valid))
    n_evaluated = flat.size - n_skipped
    ax = _lattice_axis(resolution)
    idx_max = int(np.nanargmax(flat))
    idx_min = int(np.nanargmin(flat))

    if obj.two_sided:
        bad = valid & (np.abs(flat) > bound + BOUND_SLACK)
    else:
        bad = valid & (flat < bound - BOUND_SLACK)
    bad_indices = np.flatnonzero(bad)
    violations = [
        (_config_at(ax, int(i), values.shape), float(flat[i]))
        for i in bad_indices[:MAX_STORED_VIOLATIONS]
    ]

    return ScanReport(
        objective_name=obj.name,
        grid_resolution=resolution,
        n_refinements=0,
        max_value=float(flat[idx_max]),
        argmax=_config_at(ax, idx_max, values.shape),
        min_value=float(flat[idx_min]),
        argmin=_config_at(ax, idx_min, values.shape),
        violations=violations,
        n_violations=int(bad_indices.size),
        n_evaluated=n_evaluated,
        n_skipped=n_skipped,
        bound=bound,
    )


def _safe_eval(fn: Callable[[AngleConfig], float], config: AngleConfig) -> float:
    try:
        return fn(config)
    except DegenerateConditioningError:
        return math.nan


def refine(
    objective: Union[str, _Objective, Callable[[AngleConfig], float]],
    start: AngleConfig,
    step0: float = DEFAULT_STEP0,
    tol: float = DEFAULT_TOL,
    maximize: bool = True,
) -> tuple[AngleConfig, float]:
    """Coordinate descent with step halving from ``start``.

    Cycles the four angles, moving by +-step whenever that strictly improves
    the objective; halves the step once no coordinate improves; stops when
    the step drops below ``tol``. The returned value is never worse than at
    the start. ``objective`` may be an objective name or any scalar callable
    of an AngleConfig (degenerate evaluations count as non-improving).
    """
    if not (step0 > tol > 0.0):
        raise ValueError("need step0 > tol > 0")
    fn = objective if callable(objective) else _lookup(objective).evaluate
    sense = 1.0 if maximize else -1.0

    x = list(start.astuple())
    best = _safe_eval(fn, AngleConfig(*x))
    best_s = sense * best if not math.isnan(best) else -math.inf
    step = step0
    while step >= tol:
        improved = False
        for i in range(4):
            for delta in (step, -step):
                cand = x.copy()
                cand[i] += delta
                val = _safe_eval(fn, AngleConfig(*cand))
                val_s = sense * val if not math.isnan(val) else -math.inf
                if val_s > best_s:
                    x, best, best_s = cand, val, val_s
                    improved = True
        if not improved:
            step /= 2.0
    return AngleConfig(*x), best


def verify_bound(
    objective: Union[str, _Objective],
    bound: float,
    resolution: int,
    n_random_restarts: int,
    seed: int = 0,
    n_grid_starts: int = 5,
) -> ScanReport:
    """Grid scan plus local refinement hunting for bound violations.

    Refines from the ``n_grid_starts`` best lattice points in each relevant
    direction and from ``n_random_restarts`` uniform random configurations,
    then reports every refined or lattice value beyond the bound (with a
    1e-9 slack). Deterministic in (objective, bound, resolution,
    n_random_restarts, seed).
    """
    obj = _lookup(objective)
    report = grid_scan(obj, resolution, bound=bound)

    values = _evaluate_lattice(obj, resolution)
    flat = values.ravel()
    ax = _lattice_axis(resolution)
    order = np.argsort(flat, kind="stable")  # NaN sorts last
    n_valid = int(np.count_nonzero(~np.isnan(flat)))
    bottom = [int(i) for i in order[: min(n_grid_starts, n_valid)]]
    top = [int(i) for i in order[max(0, n_valid - n_grid_starts) : n_valid]]

    rng = component_stream(seed, "scan/restarts")
    restarts = [
        AngleConfig(*(float(v) for v in rng.uniform(0.0, math.pi, 4)))
        for _ in range(n_random_restarts)
    ]

    max_value, argmax = report.max_value, report.argmax
    min_value, argmin = report.min_value, report.argmin
    violations = list(report.violations)
    n_violations = report.n_violations
    n_refinements = 0

    senses = [True, False] if obj.two_sided else [False]
    for maximize in senses:
        starts = [_config_at(ax, i, values.shape) for i in (top if maximize else bottom)]
        starts += restarts
        for start in starts:
            cand, value = refine(obj, start, maximize=maximize)
            n_refinements += 1
            if math.isnan(value):
                continue
            if value > max_value:
                max_value, argmax = value, cand
            if value < min_value:
                min_value, argmin = value, cand
            if _is_violation(obj, bound, value):
                n_violations += 1
                if len(violations) < MAX_STORED_VIOLATIONS:
                    violations.append((cand, value))

    return ScanReport(
        objective_name=obj.name,
        grid_resolution=resolution,
        n_refinements=n_refinements,
        max_value=max_value,
        argmax=argmax,
        min_value=min_value,
        argmin=argmin,
        violations=violations,
        n_violations=n_violations,
        n_evaluated=report.n_evaluated,
        n_skipped=report.n_skipped,
        bound=bound,
    )
