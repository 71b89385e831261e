import numpy as np

from oscihaz import NumericalError
from oscihaz.hazard import hazard_at, cumulative_hazard_at, require_admissible
from .dataset import SurvivalDataset

ROOT_RTOL = 1e-10
MAX_DOUBLINGS = 1100
MAX_ITER = 500

class RootNotBracketed(NumericalError):
    def __init__(self, target):
        super().__init__(target)
        self.target = target
    def __str__(self):
        return f'cumulative hazard never reaches {self.target}; cannot invert it'

def invert_cumulative_hazard(cumhaz, hazard, targets, /, *, rtol=ROOT_RTOL):
    """Solves cumhaz(t) = target for every target at once.

    The bracket [0, T] starts at T = 1 and doubles until cumhaz(T) > target; the
    root is then refined by Newton steps, falling back to bisection whenever a
    step leaves the current bracket."""
    targets = np.asarray(targets, dtype=float)
    lo = np.zeros_like(targets)
    hi = np.ones_like(targets)
    for _ in range(MAX_DOUBLINGS):
        short = cumhaz(hi) <= targets
        if not np.any(short):
            break
        lo = np.where(short, hi, lo)
        hi = np.where(short, 2.0 * hi, hi)
    else:
        raise RootNotBracketed(float(targets[cumhaz(hi) <= targets][0]))

    x = 0.5 * (lo + hi)
    for _ in range(MAX_ITER):
        f = cumhaz(x) - targets
        lo = np.where(f < 0, x, lo)
        hi = np.where(f > 0, x, hi)
        slope = hazard(x)
        with np.errstate(divide='ignore', invalid='ignore'):
            newton = x - f / slope
        inside = np.isfinite(newton) & (newton > lo) & (newton < hi)
        x_next = np.where(f == 0, x, np.where(inside, newton, 0.5 * (lo + hi)))
        done = np.abs(x_next - x) <= rtol * np.abs(x_next)
        x = x_next
        if np.all(done):
            break
    return x

def _draw(cumhaz, hazard, n, censoring_rate, seed):
    if n < 1:
        raise ValueError('sample size must be at least 1')
    if censoring_rate < 0:
        raise ValueError('censoring rate must be non-negative')
    rng = np.random.default_rng(seed)
    targets = rng.standard_exponential(n)
    event_times = invert_cumulative_hazard(cumhaz, hazard, targets)
    if censoring_rate == 0:
        return SurvivalDataset(event_times, np.ones(n, dtype=bool))
    censor_times = rng.exponential(1.0 / censoring_rate, n)
    return SurvivalDataset(np.minimum(event_times, censor_times), event_times <= censor_times)

def simulate(params, n, /, *, censoring_rate=0.0, seed=0):
    require_admissible(params)
    return _draw(lambda t: cumulative_hazard_at(params, t), lambda t: hazard_at(params, t),
        n, censoring_rate, seed)

def simulate_model(model, theta, n, /, *, censoring_rate=0.0, seed=0):
    if not model.feasible(theta):
        raise ValueError(f'parameters {tuple(theta)} are outside the support of {model.name}')
    return _draw(lambda t: model.cumhaz(theta, t), lambda t: model.hazard(theta, t),
        n, censoring_rate, seed)
