"""Weibull and power generalized Weibull baselines.

Parametrizations: Weibull H(t) = (t/scale)^shape; PGW
H(t) = (1 + (t/scale)^shape1)^(1/shape2) - 1, which is Weibull when shape2 = 1."""

from typing import NamedTuple
import numpy as np

from oscihaz import NonPositiveTime

class WeibullParams(NamedTuple):
    scale: float
    shape: float

class PGWParams(NamedTuple):
    scale: float
    shape1: float
    shape2: float

def _as_time(t, *, singular):
    t = np.asarray(t, dtype=float)
    bad = (t <= 0) if singular else (t < 0)
    if np.any(bad):
        raise NonPositiveTime(float(t[bad][0]) if t.ndim else float(t))
    return t

def _out(x):
    return x[()] if isinstance(x, np.ndarray) else x

def weibull_hazard(p, t):
    t = _as_time(t, singular=p.shape < 1)
    z = t / p.scale
    return _out(p.shape / p.scale * z ** (p.shape - 1.0))

def weibull_cumhazard(p, t):
    t = _as_time(t, singular=False)
    return _out((t / p.scale) ** p.shape)

def pgw_hazard(p, t):
    t = _as_time(t, singular=p.shape1 < 1)
    z = t / p.scale
    return _out(p.shape1 / (p.shape2 * p.scale) * z ** (p.shape1 - 1.0)
        * (1.0 + z ** p.shape1) ** (1.0 / p.shape2 - 1.0))

def pgw_cumhazard(p, t):
    t = _as_time(t, singular=False)
    z = t / p.scale
    # expm1/log1p keep H accurate where (t/scale)^shape1 is tiny
    return _out(np.expm1(np.log1p(z ** p.shape1) / p.shape2))
