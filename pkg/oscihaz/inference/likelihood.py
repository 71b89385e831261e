import math
import numpy as np

def log_likelihood(model, theta, data):
    if not model.feasible(theta):
        return -math.inf
    with np.errstate(all='ignore'):
        rates = np.asarray(model.hazard(theta, data.times[data.events]))
        if np.any(~(rates > 0)):
            return -math.inf
        value = float(np.sum(np.log(rates)) - np.sum(model.cumhaz(theta, data.times)))
    return value if math.isfinite(value) else -math.inf

def bic(loglik, k, n):
    if n < 1:
        raise ValueError('BIC needs at least one observation')
    return k * math.log(n) - 2.0 * loglik
