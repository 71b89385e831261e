from typing import NamedTuple

from oscihaz import AppError

class NonPositiveH0(AppError):
    def __init__(self, s0, s1):
        super().__init__(s0, s1)
        self.s0 = s0
        self.s1 = s1
    def __str__(self):
        return f'S(dt)={self.s1} must be below S(0)={self.s0} to give a positive initial hazard'

class InvalidElicitation(AppError):
    def __init__(self, spec):
        super().__init__(spec)
        self.spec = spec
    def __str__(self):
        s = self.spec
        return (f'invalid elicitation inputs dt={s.dt}, S(0)={s.s0}, S(dt)={s.s1}, S(2dt)={s.s2}: '
            'need dt > 0 and 1 >= S(0) >= S(dt) >= S(2dt) > 0')

class InitialConditionSpec(NamedTuple):
    dt: float
    s1: float
    s2: float
    s0: float = 1.0

def elicit_initial_conditions(spec):
    """(h0, r0) from survival values at 0, dt and 2*dt, using forward differences
    of S for S' and S''."""
    if spec.s1 >= spec.s0:
        raise NonPositiveH0(spec.s0, spec.s1)
    if not (spec.dt > 0 and 1 >= spec.s0 >= spec.s1 >= spec.s2 > 0):
        raise InvalidElicitation(spec)
    slope = (spec.s1 - spec.s0) / (spec.dt * spec.s1)
    curvature = (spec.s2 - 2.0 * spec.s1 + spec.s0) / (spec.dt * spec.dt * spec.s1)
    return -slope, slope * slope - curvature
