import math
import numpy as np
from scipy.optimize import minimize_scalar

from oscihaz import NumericalError
from .params import Regime, AdmissibilityReport, regime_of, coefficients
from .closed_form import hazard_at, cumulative_hazard_at, envelope_horizon

ZERO_SLACK = 1e-12
GRID_STEP = 1e-3
MAX_GRID_POINTS = 1_000_000
# stationary phases closer than this to t = 0 are the initial state itself
MIN_PHASE = 1e-12

class CriticallyDampedUnsupported(NumericalError):
    def __init__(self, eta):
        super().__init__(eta)
        self.eta = eta
    def __str__(self):
        return f'no closed-form critical points for critically damped eta={self.eta}'

class InadmissibleParams(NumericalError):
    def __init__(self, params, report):
        super().__init__(params, report)
        self.params = params
        self.report = report
    def __str__(self):
        return f'parameters {tuple(self.params)} are not admissible: {self.report}'

def _is_constant(params):
    return params.h0 == params.hb and params.r0 == 0

def _with_values(params, times):
    return [(t, float(hazard_at(params, t))) for t in times]

def critical_points(params):
    """Interior stationary points of the hazard, as (time, hazard) pairs.

    Under-damped: the first two roots after t = 0 of tan(w1*t + phi) = mu.
    Over-damped: the single root, if it exists and is positive."""
    regime = regime_of(params)
    if regime == Regime.CRITICALLY_DAMPED:
        raise CriticallyDampedUnsupported(params.eta)
    if _is_constant(params):
        return []
    coef = coefficients(params)
    w1 = coef.w1
    k = coef.damping
    if regime == Regime.UNDER_DAMPED:
        # atan2(w1, k) is arctan(mu), and pi/2 when eta = 0
        base = math.atan2(w1, k) - coef.phase
        index = math.floor((MIN_PHASE - base) / math.pi) + 1
        while base + index * math.pi <= MIN_PHASE:
            index += 1
        first = (base + index * math.pi) / w1
        return _with_values(params, [first, first + math.pi / w1])
    if params.r0 == 0:
        # h' = -b*es keeps one sign; the log argument below is 1 up to rounding
        return []
    c1, a = coef.c1, coef.a
    num = (c1 - a) * (w1 + k)
    den = (c1 + a) * (w1 - k)
    if num == 0 or den == 0 or num / den <= 0:
        return []
    t_star = math.log(num / den) / (2.0 * w1)
    if t_star <= 0:
        return []
    return _with_values(params, [t_star])

def _numeric_minimum(params):
    horizon = envelope_horizon(params)
    count = min(math.ceil(horizon / GRID_STEP), MAX_GRID_POINTS) + 1
    grid = np.linspace(0.0, horizon, count)
    values = hazard_at(params, grid)
    i = int(np.argmin(values))
    if 0 < i < count - 1:
        try:
            res = minimize_scalar(lambda s: float(hazard_at(params, s)),
                bracket=(grid[i - 1], grid[i], grid[i + 1]), method='golden')
            if res.fun <= values[i]:
                return float(res.x), float(res.fun)
        except ValueError:
            pass
    return float(grid[i]), float(values[i])

def is_admissible(params):
    slack = ZERO_SLACK * params.hb
    if params.hb <= 0 or params.h0 <= slack:
        return AdmissibilityReport(False, 0.0, params.h0)
    if _is_constant(params):
        return AdmissibilityReport(True)
    regime = regime_of(params)
    if regime == Regime.CRITICALLY_DAMPED:
        location, value = _numeric_minimum(params)
        return AdmissibilityReport(value > slack, location, value)
    points = critical_points(params)
    if not points:
        return AdmissibilityReport(True)
    # the initial state competes with the interior critical points
    location, value = min([(0.0, params.h0)] + points, key=lambda p: p[1])
    if regime == Regime.UNDER_DAMPED and params.eta == 0:
        # undamped: every trough sits exactly at hb - A
        value = params.hb - coefficients(params).amplitude
    return AdmissibilityReport(value > slack, location, value)

def require_admissible(params):
    report = is_admissible(params)
    if not report.admissible:
        raise InadmissibleParams(params, report)
    return report

def survival_at(params, t):
    require_admissible(params)
    return np.exp(-cumulative_hazard_at(params, t))

def tail_rate(params):
    require_admissible(params)
    return params.hb
