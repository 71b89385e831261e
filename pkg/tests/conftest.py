"""Shared oracles: an RK4 integrator for the hazard ODE, random parameter
draws and brute-force grid classifiers."""
import math
import numpy as np
import pytest
from scipy.optimize import minimize_scalar

from oscihaz import hazard
from oscihaz.hazard import OscillatorParams, Regime, ShapeClass

GRID_POINTS = 20_000

def random_params(rng, n, /, *, eta_max=3.0, band=1e-3):
    """eta uniform on [0, eta_max] away from the critical band, log-uniform w0
    on [0.1, 3], hb and h0 uniform on [0.05, 5], r0 uniform on [-5, 5]."""
    out = []
    while len(out) < n:
        eta = rng.uniform(0.0, eta_max)
        if abs(eta - 1.0) <= band:
            continue
        out.append(OscillatorParams(eta, math.exp(rng.uniform(math.log(0.1), math.log(3.0))),
            rng.uniform(0.05, 5.0), rng.uniform(0.05, 5.0), rng.uniform(-5.0, 5.0)))
    return out

def rk4_hazard(params_list, times, /, *, step=1e-4):
    """Integrates h'' + 2*eta*w0*h' + w0^2*(h - hb) = 0 for many parameter sets
    at once; returns h at the increasing `times`, one row per parameter set."""
    eta = np.array([p.eta for p in params_list])
    w0 = np.array([p.w0 for p in params_list])
    hb = np.array([p.hb for p in params_list])
    h = np.array([p.h0 for p in params_list])
    r = np.array([p.r0 for p in params_list])

    def f(h, r):
        return r, -2.0 * eta * w0 * r - w0 * w0 * (h - hb)

    out = np.empty((len(params_list), len(times)))
    t = 0.0
    for j, target in enumerate(times):
        steps = math.ceil((target - t) / step) if target > t else 0
        if steps:
            dt = (target - t) / steps
            for _ in range(steps):
                k1h, k1r = f(h, r)
                k2h, k2r = f(h + 0.5 * dt * k1h, r + 0.5 * dt * k1r)
                k3h, k3r = f(h + 0.5 * dt * k2h, r + 0.5 * dt * k2r)
                k4h, k4r = f(h + dt * k3h, r + dt * k3r)
                h = h + dt / 6.0 * (k1h + 2.0 * k2h + 2.0 * k3h + k4h)
                r = r + dt / 6.0 * (k1r + 2.0 * k2r + 2.0 * k3r + k4r)
            t = target
        out[:, j] = h
    return out

def oracle_horizon(params):
    horizon = hazard.envelope_horizon(params)
    if hazard.regime_of(params) == Regime.UNDER_DAMPED:
        w1 = params.w0 * math.sqrt(1.0 - params.eta ** 2)
        horizon = max(horizon, 2.5 * math.pi / w1)
    return max(horizon, 1.0)

def oracle_grid(params):
    horizon = oracle_horizon(params)
    return np.union1d(np.linspace(0.0, horizon, GRID_POINTS),
        np.geomspace(1e-9, 10.0 * horizon, 2_000))

def grid_minimum(params):
    """Minimum of the hazard on a dense grid, polished by a bounded scalar search."""
    if hazard.regime_of(params) == Regime.UNDER_DAMPED:
        # troughs shrink, so the lowest one lies in the first period
        w1 = params.w0 * math.sqrt(1.0 - params.eta ** 2)
        grid = np.linspace(0.0, 2.5 * math.pi / w1, GRID_POINTS)
    else:
        grid = oracle_grid(params)
    values = hazard.hazard_at(params, grid)
    i = int(np.argmin(values))
    best = float(values[i])
    if 0 < i < grid.size - 1:
        res = minimize_scalar(lambda s: float(hazard.hazard_at(params, s)),
            bounds=(grid[i - 1], grid[i + 1]), method='bounded',
            options={'xatol': 1e-12})
        best = min(best, float(res.fun))
    return best

def grid_shape(params):
    """Shape from the sign changes of h' on a dense grid."""
    slopes = np.sign(hazard.hazard_derivative_at(params, oracle_grid(params)))
    slopes = slopes[slopes != 0]
    if slopes.size == 0:
        return ShapeClass.CONSTANT
    changes = int(np.count_nonzero(np.diff(slopes)))
    match (changes, bool(slopes[0] > 0)):
        case (0, True): return ShapeClass.INCREASING
        case (0, False): return ShapeClass.DECREASING
        case (1, True): return ShapeClass.UNIMODAL
        case (1, False): return ShapeClass.BATHTUB
        case _: return ShapeClass.OSCILLATORY

@pytest.fixture
def rng():
    return np.random.default_rng(20240611)

@pytest.fixture
def under():
    return OscillatorParams(0.6, 1.0, 1.0, 2.0, 0.0)

@pytest.fixture
def over():
    return OscillatorParams(1.25, 1.0, 1.0, 2.0, -1.0)

def toy_csv(tmp_path, rows, name='toy.csv'):
    path = tmp_path / name
    path.write_text('time,status\n' + ''.join(f'{t},{s}\n' for t, s in rows))
    return path
