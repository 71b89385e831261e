from typing import NamedTuple
import numpy as np

from oscihaz import NumericalError

DEFAULT_LEVELS = (0.025, 0.975)

class EmptyDraws(NumericalError):
    def __str__(self):
        return 'no posterior draws to build predictive curves from'

class CurveGrid(NamedTuple):
    times: np.ndarray
    hazard_mean: np.ndarray
    hazard_lo: np.ndarray
    hazard_hi: np.ndarray
    survival_mean: np.ndarray
    survival_lo: np.ndarray
    survival_hi: np.ndarray
    levels: tuple = DEFAULT_LEVELS

def time_grid(t_max, points, /):
    if not t_max > 0 or points < 2:
        raise ValueError('grid needs t_max > 0 and at least 2 points')
    return np.linspace(0.0, t_max, points)

def predictive_curves(model, draws, grid, /, *, levels=DEFAULT_LEVELS):
    matrix = np.atleast_2d(np.asarray(getattr(draws, 'draws', draws), dtype=float))
    if matrix.size == 0:
        raise EmptyDraws()
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or np.any(np.diff(grid) <= 0) or np.any(grid < 0):
        raise ValueError('curve grid must be a non-negative increasing vector')
    lo, hi = levels
    if not 0 <= lo <= hi <= 1:
        raise ValueError(f'invalid quantile levels {levels}')

    with np.errstate(all='ignore'):
        hazards = np.array([model.hazard(tuple(theta), grid) for theta in matrix])
        survivals = np.array([model.survival(tuple(theta), grid) for theta in matrix])
        return CurveGrid(grid,
            hazards.mean(axis=0), np.quantile(hazards, lo, axis=0), np.quantile(hazards, hi, axis=0),
            survivals.mean(axis=0), np.quantile(survivals, lo, axis=0), np.quantile(survivals, hi, axis=0),
            (lo, hi))

def curves_csv(curves):
    yield 'time,hazard_mean,hazard_lo,hazard_hi,survival_mean,survival_lo,survival_hi'
    for row in zip(*curves[:7]):
        yield ','.join(repr(float(x)) for x in row)
