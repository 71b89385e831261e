import enum
import math
from typing import NamedTuple

from oscihaz import AppError, NumericalError

EPS_REGIME = 1e-9

class InvalidParams(AppError):
    def __init__(self, name, value, rule):
        super().__init__(name, value, rule)
        self.name = name
        self.value = value
        self.rule = rule
    def __str__(self):
        return f'invalid oscillator parameter {self.name}={self.value}: must be {self.rule}'

class CriticallyDampedCoefficients(NumericalError):
    def __init__(self, eta):
        super().__init__(eta)
        self.eta = eta
    def __str__(self):
        return f'modified frequency is undefined for critically damped eta={self.eta}'

class UndefinedMu(NumericalError):
    def __str__(self):
        return 'mu = w1/(w0*eta) is undefined for eta=0'

class OscillatorParams(NamedTuple):
    eta: float
    w0: float
    hb: float
    h0: float
    r0: float

    @classmethod
    def make(cls, eta, w0, hb, h0, r0):
        params = cls(float(eta), float(w0), float(hb), float(h0), float(r0))
        params.check()
        return params

    def check(self):
        for name, value in zip(self._fields, self):
            if not math.isfinite(value):
                raise InvalidParams(name, value, 'finite')
        if self.eta < 0:
            raise InvalidParams('eta', self.eta, '>= 0')
        for name in ('w0', 'hb', 'h0'):
            if getattr(self, name) <= 0:
                raise InvalidParams(name, getattr(self, name), '> 0')

class Regime(enum.Enum):
    UNDER_DAMPED = 'under-damped'
    OVER_DAMPED = 'over-damped'
    CRITICALLY_DAMPED = 'critically-damped'

class ShapeClass(enum.Enum):
    INCREASING = 'increasing'
    DECREASING = 'decreasing'
    UNIMODAL = 'unimodal'
    BATHTUB = 'bathtub'
    OSCILLATORY = 'oscillatory'
    CONSTANT = 'constant'

class AdmissibilityReport(NamedTuple):
    admissible: bool
    min_location: float | None = None
    min_value: float | None = None

    def __str__(self):
        verdict = 'admissible' if self.admissible else 'inadmissible'
        if self.min_location is None:
            return verdict
        return f'{verdict} (minimum hazard {self.min_value:.6g} at t={self.min_location:.6g})'

def regime_of(params):
    if abs(params.eta - 1.0) <= EPS_REGIME:
        return Regime.CRITICALLY_DAMPED
    if params.eta < 1.0:
        return Regime.UNDER_DAMPED
    return Regime.OVER_DAMPED

class RegimeCoefficients:
    def __init__(self, params):
        regime = regime_of(params)
        if regime == Regime.CRITICALLY_DAMPED:
            raise CriticallyDampedCoefficients(params.eta)
        self.regime = regime
        self.damping = params.w0 * params.eta
        self.w1 = params.w0 * math.sqrt(abs(params.eta * params.eta - 1.0))
        self.c1 = params.h0 - params.hb
        self.c2 = (params.r0 + self.damping * self.c1) / self.w1

    @property
    def mu(self):
        if self.damping == 0:
            raise UndefinedMu()
        return self.w1 / self.damping

    @property
    def amplitude(self):
        return math.hypot(self.c1, self.c2)

    @property
    def phase(self):
        phi = math.atan2(self.c1, self.c2)
        # keep the phase in (-pi, pi]
        return math.pi if phi == -math.pi else phi

    @property
    def a(self):
        return self.c2

    def __repr__(self):
        return (f'RegimeCoefficients(w1={self.w1!r}, c1={self.c1!r}, c2={self.c2!r}, '
            f'amplitude={self.amplitude!r}, phase={self.phase!r})')

def coefficients(params):
    return RegimeCoefficients(params)
