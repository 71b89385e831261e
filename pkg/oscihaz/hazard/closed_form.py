import math
import numpy as np

from .params import Regime, regime_of

def _as_time(t):
    return np.asarray(t, dtype=float)

def _out(x):
    return x[()] if isinstance(x, np.ndarray) else x

class Kernels:
    """Damped cos/sin kernels of the solution.

    With k = w0*eta (w0 in the critical band) the deviation from equilibrium is
    C1*ec(t) + D*es(t), where ec and es solve
        ec' = -k*ec + q*es,  es' = ec - k*es,  ec(0) = 1,  es(0) = 0,
    q = w0^2*(eta^2 - 1). Under-damped: ec = e^{-kt}cos(w1 t), es = e^{-kt}sin(w1 t)/w1;
    over-damped: cosh/sinh in place of cos/sin; critical: ec = e^{-kt}, es = t*e^{-kt}."""

    def __init__(self, params, t):
        w0 = params.w0
        self.regime = regime_of(params)
        match self.regime:
            case Regime.UNDER_DAMPED:
                k = w0 * params.eta
                w1 = w0 * math.sqrt(1.0 - params.eta * params.eta)
                decay = np.exp(-k * t)
                self.ec = decay * np.cos(w1 * t)
                self.es = decay * np.sin(w1 * t) / w1
                self.q = -w1 * w1
            case Regime.OVER_DAMPED:
                k = w0 * params.eta
                w1 = w0 * math.sqrt(params.eta * params.eta - 1.0)
                slow = np.exp((w1 - k) * t)
                self.ec = 0.5 * (slow + np.exp(-(k + w1) * t))
                self.es = -slow * np.expm1(-2.0 * w1 * t) / (2.0 * w1)
                self.q = w1 * w1
            case Regime.CRITICALLY_DAMPED:
                k = w0
                decay = np.exp(-k * t)
                self.ec = decay
                self.es = t * decay
                self.q = 0.0
        self.k = k
        self.c1 = params.h0 - params.hb
        self.d = params.r0 + k * self.c1
        # b = w0^2*C1 + k*r0 drives the derivative's sine-kernel weight
        self.b = w0 * w0 * self.c1 + k * params.r0

def hazard_at(params, t):
    t = _as_time(t)
    kn = Kernels(params, t)
    return _out(params.hb + kn.c1 * kn.ec + kn.d * kn.es)

def hazard_derivative_at(params, t):
    t = _as_time(t)
    kn = Kernels(params, t)
    return _out(params.r0 * kn.ec - kn.b * kn.es)

def hazard_second_derivative_at(params, t):
    t = _as_time(t)
    kn = Kernels(params, t)
    return _out(-(kn.k * params.r0 + kn.b) * kn.ec + (kn.q * params.r0 + kn.k * kn.b) * kn.es)

def cumulative_hazard_at(params, t):
    t = _as_time(t)
    kn = Kernels(params, t)
    w0 = params.w0
    integral_es = (1.0 - kn.ec - kn.k * kn.es) / (w0 * w0)
    return _out(params.hb * t + kn.c1 * kn.es + (kn.k * kn.c1 + kn.d) * integral_es)

def envelope_horizon(params, rel=1e-6):
    c1 = params.h0 - params.hb
    if c1 == 0 and params.r0 == 0:
        return 0.0
    w0 = params.w0
    level = rel * params.hb
    match regime_of(params):
        case Regime.UNDER_DAMPED if params.eta == 0:
            return 2.0 * math.pi / w0
        case Regime.UNDER_DAMPED:
            k = w0 * params.eta
            w1 = w0 * math.sqrt(1.0 - params.eta * params.eta)
            bound = math.hypot(c1, (params.r0 + k * c1) / w1)
            rate = k
        case Regime.OVER_DAMPED:
            k = w0 * params.eta
            root = math.sqrt(params.eta * params.eta - 1.0)
            w1 = w0 * root
            bound = abs(c1) + abs((params.r0 + k * c1) / w1)
            rate = w0 / (params.eta + root)
        case Regime.CRITICALLY_DAMPED:
            bound = abs(c1) + 2.0 * abs(params.r0 + w0 * c1) / (math.e * w0)
            rate = 0.5 * w0
    return max(0.0, math.log(bound / level) / rate)
