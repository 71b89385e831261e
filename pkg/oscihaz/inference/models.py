import math
import numpy as np

from oscihaz import AppError
from oscihaz import competitors
from oscihaz import hazard as core
from oscihaz.competitors import WeibullParams, PGWParams

class UnknownModel(AppError):
    def __init__(self, name):
        super().__init__(name)
        self.name = name
    def __str__(self):
        return f'unknown model "{self.name}"; expected one of: ho, weibull, pgw'

def _positive(theta):
    return all(math.isfinite(x) and x > 0 for x in theta)

class HazardModel:
    name = ''
    param_names = ()

    @property
    def k(self):
        return len(self.param_names)

    def feasible(self, theta):
        return _positive(theta)

    def hazard(self, theta, t):
        raise NotImplementedError

    def cumhaz(self, theta, t):
        raise NotImplementedError

    def survival(self, theta, t):
        return np.exp(-self.cumhaz(theta, t))

    def initial_guesses(self, data):
        raise NotImplementedError

def _exponential_rate(data):
    return data.n_events / float(np.sum(data.times))

class OscillatorModel(HazardModel):
    name = 'ho'
    param_names = ('eta', 'w0', 'hb')

    def __init__(self, h0, r0):
        self.h0 = float(h0)
        self.r0 = float(r0)

    def params(self, theta):
        eta, w0, hb = theta
        return core.OscillatorParams(float(eta), float(w0), float(hb), self.h0, self.r0)

    def feasible(self, theta):
        if not _positive(theta) or self.h0 <= 0:
            return False
        # the critically damped band is never proposed
        if abs(theta[0] - 1.0) <= core.EPS_REGIME:
            return False
        return core.is_admissible(self.params(theta)).admissible

    def hazard(self, theta, t):
        return core.hazard_at(self.params(theta), t)

    def cumhaz(self, theta, t):
        return core.cumulative_hazard_at(self.params(theta), t)

    def initial_guesses(self, data):
        rate = _exponential_rate(data)
        freq = 1.0 / float(np.mean(data.times))
        return [(0.5, freq, rate), (2.0, freq, rate), (0.2, 4.0 * freq, rate)]

def _origin_value(shape, at_unit_shape):
    if shape < 1:
        return math.inf
    return at_unit_shape if shape == 1 else 0.0

def _with_origin(evaluate, t, origin):
    t = np.asarray(t, dtype=float)
    positive = t > 0
    values = evaluate(np.where(positive, t, 1.0))
    out = np.where(positive, values, origin)
    return out[()] if out.ndim == 0 else out

class WeibullModel(HazardModel):
    name = 'weibull'
    param_names = ('scale', 'shape')

    def hazard(self, theta, t):
        p = WeibullParams(*map(float, theta))
        return _with_origin(lambda s: competitors.weibull_hazard(p, s), t,
            _origin_value(p.shape, 1.0 / p.scale))

    def cumhaz(self, theta, t):
        return competitors.weibull_cumhazard(WeibullParams(*map(float, theta)), t)

    def initial_guesses(self, data):
        return [(float(np.mean(data.times)), 1.0)]

class PGWModel(HazardModel):
    name = 'pgw'
    param_names = ('scale', 'shape1', 'shape2')

    def hazard(self, theta, t):
        p = PGWParams(*map(float, theta))
        return _with_origin(lambda s: competitors.pgw_hazard(p, s), t,
            _origin_value(p.shape1, 1.0 / (p.shape2 * p.scale)))

    def cumhaz(self, theta, t):
        return competitors.pgw_cumhazard(PGWParams(*map(float, theta)), t)

    def initial_guesses(self, data):
        scale = float(np.mean(data.times))
        return [(scale, 1.0, 1.0), (scale, 2.0, 4.0)]

MODEL_NAMES = ('ho', 'weibull', 'pgw')

def model_from_name(name, /, *, fixed=None):
    match name.lower():
        case 'ho' | 'oscillator':
            if fixed is None:
                raise ValueError('the oscillator model needs fixed initial conditions (h0, r0)')
            return OscillatorModel(*fixed)
        case 'weibull':
            return WeibullModel()
        case 'pgw':
            return PGWModel()
        case _:
            raise UnknownModel(name)
