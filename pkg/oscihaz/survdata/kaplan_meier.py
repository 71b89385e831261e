from typing import NamedTuple
import numpy as np

class KMCurve(NamedTuple):
    times: np.ndarray
    survival: np.ndarray
    at_risk: np.ndarray
    deaths: np.ndarray

def kaplan_meier(data):
    times = data.times
    events = data.events
    event_times, deaths = np.unique(times[events], return_counts=True)
    sorted_times = np.sort(times)
    # risk set at t: everyone whose observed time is >= t
    at_risk = sorted_times.size - np.searchsorted(sorted_times, event_times, side='left')
    survival = np.cumprod(1.0 - deaths / at_risk)
    return KMCurve(event_times, survival, at_risk, deaths)

def km_sup_distance(curve, survival, /, *, t_max=None):
    times = curve.times
    steps = curve.survival
    if t_max is not None:
        keep = times <= t_max
        times = times[keep]
        steps = steps[keep]
    if times.size == 0:
        return 0.0
    model = np.asarray(survival(times), dtype=float)
    before = np.concatenate([[1.0], steps[:-1]])
    return float(max(np.max(np.abs(before - model)), np.max(np.abs(steps - model))))
