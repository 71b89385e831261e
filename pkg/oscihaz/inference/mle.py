import math
import warnings
from typing import NamedTuple
import numpy as np
from scipy.optimize import minimize

from oscihaz import AppError, NumericalError
from .likelihood import log_likelihood, bic

DEFAULT_STARTS = 10
START_SPREAD = 1.0
MAX_START_ATTEMPTS = 200
# absolute tolerances: log-parameters and log-likelihood units
NELDER_MEAD_OPTIONS = {'xatol': 1e-8, 'fatol': 1e-7, 'adaptive': True}

class NoEvents(AppError):
    def __str__(self):
        return 'dataset has no uncensored observations'

class AllStartsFailed(NumericalError):
    def __init__(self, model, starts):
        super().__init__(model, starts)
        self.model = model
        self.starts = starts
    def __str__(self):
        return f'no feasible start found for the {self.model} model in {self.starts} attempts'

class StartSummary(NamedTuple):
    start: int
    initial: tuple
    loglik: float
    iterations: int
    evaluations: int
    converged: bool

class FitResult(NamedTuple):
    model: str
    names: tuple
    params: tuple
    loglik: float
    bic: float
    k: int
    n: int
    converged: bool
    optimizer_trace: tuple
    seed: int | None = None

    def as_dict(self):
        return {
            'model': self.model,
            'params': dict(zip(self.names, self.params)),
            'loglik': self.loglik,
            'bic': self.bic,
            'k': self.k,
            'n': self.n,
            'converged': self.converged,
            'seed': self.seed,
            'starts': len(self.optimizer_trace),
        }

def _start_points(model, data, starts, rng, objective):
    guesses = [np.log(np.asarray(g, dtype=float)) for g in model.initial_guesses(data)]
    points = []
    for z in guesses:
        if len(points) < starts and math.isfinite(objective(z)):
            points.append(z)
    attempts = 0
    while len(points) < starts and attempts < MAX_START_ATTEMPTS:
        base = guesses[attempts % len(guesses)]
        z = base + rng.normal(0.0, START_SPREAD, model.k)
        attempts += 1
        if math.isfinite(objective(z)):
            points.append(z)
    return points

def _nelder_mead(objective, z0, k):
    options = NELDER_MEAD_OPTIONS | {'maxiter': 2000 * k, 'maxfev': 4000 * k}
    first = minimize(objective, z0, method='Nelder-Mead', options=options)
    # restarting from the optimum rebuilds a fresh simplex around it
    second = minimize(objective, first.x, method='Nelder-Mead', options=options)
    best = second if second.fun <= first.fun else first
    return best, first.nit + second.nit, first.nfev + second.nfev

def fit_mle(model, data, /, *, starts=DEFAULT_STARTS, seed=0):
    if data.n_events == 0:
        raise NoEvents()
    rng = np.random.default_rng(seed)

    def objective(z):
        if not np.all(np.isfinite(z)):
            return math.inf
        with np.errstate(over='ignore'):
            theta = tuple(np.exp(z))
        return -log_likelihood(model, theta, data)

    points = _start_points(model, data, max(1, starts), rng, objective)
    if not points:
        raise AllStartsFailed(model.name, MAX_START_ATTEMPTS)

    trace = []
    best = None
    for i, z0 in enumerate(points):
        res, nit, nfev = _nelder_mead(objective, z0, model.k)
        loglik = -float(res.fun)
        trace.append(StartSummary(i, tuple(float(x) for x in np.exp(z0)), loglik,
            int(nit), int(nfev), bool(res.success)))
        if math.isfinite(loglik) and (best is None or loglik > -best.fun):
            best = res
    if best is None:
        raise AllStartsFailed(model.name, len(points))
    if not best.success:
        warnings.warn(f'{model.name} fit: best start stopped before convergence ({best.message})')

    params = tuple(float(x) for x in np.exp(best.x))
    loglik = log_likelihood(model, params, data)
    return FitResult(model.name, model.param_names, params, loglik,
        bic(loglik, model.k, data.n), model.k, data.n, bool(best.success), tuple(trace), seed)
