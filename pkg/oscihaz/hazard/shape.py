from .params import Regime, ShapeClass, regime_of
from .closed_form import hazard_derivative_at
from .admissibility import critical_points, require_admissible

SHAPE_OFFSET = 1e-8

def _initial_slope(params):
    if params.r0 != 0:
        return params.r0
    return float(hazard_derivative_at(params, SHAPE_OFFSET))

def _has_turn_critically_damped(params):
    # h'(t) = e^{-w0 t} * (r0 - b*t): at most one sign change, at t = r0/b
    c1 = params.h0 - params.hb
    b = params.w0 * params.w0 * c1 + params.w0 * params.r0
    return b != 0 and params.r0 / b > 0

def classify_shape(params):
    require_admissible(params)
    if params.h0 == params.hb and params.r0 == 0:
        return ShapeClass.CONSTANT
    match regime_of(params):
        case Regime.UNDER_DAMPED:
            return ShapeClass.OSCILLATORY
        case Regime.OVER_DAMPED:
            turns = len(critical_points(params)) > 0
        case Regime.CRITICALLY_DAMPED:
            turns = _has_turn_critically_damped(params)
    rising = _initial_slope(params) > 0
    match (rising, turns):
        case (True, False): return ShapeClass.INCREASING
        case (False, False): return ShapeClass.DECREASING
        case (True, True): return ShapeClass.UNIMODAL
        case (False, True): return ShapeClass.BATHTUB
