import math
import warnings
from typing import NamedTuple
import numpy as np
from scipy import stats

from oscihaz import NumericalError
from .likelihood import log_likelihood
from .mle import fit_mle, NoEvents

TARGET_ACCEPTANCE = (0.2, 0.4)
MIN_ACCEPTANCE = 0.01
ADAPT_EVERY = 100
INITIAL_LOG_SD = 0.1

class ChainStuck(NumericalError):
    def __init__(self, rate):
        super().__init__(rate)
        self.rate = rate
    def __str__(self):
        return f'MCMC acceptance rate {self.rate:.4f} is below {MIN_ACCEPTANCE}; chain is stuck'

class GammaPrior(NamedTuple):
    shape: float = 0.001
    scale: float = 1000.0

    @property
    def mean(self):
        return self.shape * self.scale

    @property
    def variance(self):
        return self.shape * self.scale * self.scale

class PriorSpec(NamedTuple):
    components: tuple

    @classmethod
    def default(cls, k, /, *, shape=0.001, scale=1000.0):
        return cls(tuple(GammaPrior(shape, scale) for _ in range(k)))

    @property
    def mean(self):
        return tuple(c.mean for c in self.components)

def log_prior(prior, theta):
    theta = np.asarray(theta, dtype=float)
    if len(theta) != len(prior.components):
        raise ValueError(f'prior has {len(prior.components)} components, got {len(theta)} parameters')
    if np.any(~(theta > 0)):
        return -math.inf
    return float(sum(stats.gamma.logpdf(x, c.shape, scale=c.scale)
        for x, c in zip(theta, prior.components)))

class SamplerRun(NamedTuple):
    samples: np.ndarray
    log_densities: np.ndarray
    acceptance_rate: float
    scale: float
    cov: np.ndarray

def _proposal_factor(scale, cov):
    try:
        return np.linalg.cholesky(scale * cov)
    except np.linalg.LinAlgError:
        return None

def _rescale(scale, rate):
    low, high = TARGET_ACCEPTANCE
    if rate < low:
        return scale * (0.5 if rate < 0.05 else 0.8)
    if rate > high:
        return scale * (2.0 if rate > 0.7 else 1.25)
    return scale

def adaptive_metropolis(log_density, x0, /, *, iters, burn_in=0, thin=1, seed=0,
        adapt_every=ADAPT_EVERY, initial_cov=None):
    if not iters > burn_in >= 0:
        raise ValueError('need iters > burn_in >= 0')
    if thin < 1:
        raise ValueError('thin must be at least 1')
    x = np.array(x0, dtype=float, ndmin=1)
    d = x.size
    lp = float(log_density(x))
    if not math.isfinite(lp):
        raise ValueError(f'initial point {tuple(x)} has zero density')

    rng = np.random.default_rng(seed)
    cov = np.eye(d) if initial_cov is None else np.atleast_2d(np.array(initial_cov, dtype=float))
    scale = 2.38 ** 2 / d
    factor = _proposal_factor(scale, cov)
    if factor is None:
        raise ValueError('initial proposal covariance is not positive definite')

    history = np.empty((burn_in, d))
    window_accepted = 0
    accepted = 0
    samples = []
    log_densities = []
    for i in range(iters):
        proposal = x + factor @ rng.standard_normal(d)
        lp_new = float(log_density(proposal))
        if math.isfinite(lp_new) and math.log(rng.random()) < lp_new - lp:
            x, lp = proposal, lp_new
            if i < burn_in:
                window_accepted += 1
            else:
                accepted += 1
        if i < burn_in:
            history[i] = x
            if (i + 1) % adapt_every == 0:
                scale = _rescale(scale, window_accepted / adapt_every)
                window_accepted = 0
                recent = history[(i + 1) // 2:i + 1]
                if len(recent) > d + 1:
                    candidate = np.atleast_2d(np.cov(recent, rowvar=False)) + 1e-10 * np.eye(d)
                    if _proposal_factor(scale, candidate) is not None:
                        cov = candidate
                factor = _proposal_factor(scale, cov)
        elif (i - burn_in) % thin == 0:
            samples.append(x.copy())
            log_densities.append(lp)

    # post-burn-in acceptance only
    rate = accepted / (iters - burn_in)
    if rate < MIN_ACCEPTANCE:
        raise ChainStuck(rate)
    low, high = TARGET_ACCEPTANCE
    if not low <= rate <= high:
        warnings.warn(f'MCMC acceptance rate {rate:.3f} is outside the {low:.0%}-{high:.0%} target band')
    return SamplerRun(np.array(samples), np.array(log_densities), rate, scale, cov)

class PosteriorDraws(NamedTuple):
    model: str
    names: tuple
    draws: np.ndarray
    log_posts: np.ndarray
    acceptance_rate: float
    seed: int | None
    burn_in: int
    thin: int
    iters: int

    @property
    def mean(self):
        return tuple(float(x) for x in self.draws.mean(axis=0))

    @property
    def sd(self):
        return tuple(float(x) for x in self.draws.std(axis=0, ddof=1)) if len(self.draws) > 1 \
            else (0.0,) * len(self.names)

    def best(self):
        return tuple(float(x) for x in self.draws[int(np.argmax(self.log_posts))])

    def as_dict(self):
        return {
            'model': self.model,
            'posterior_mean': dict(zip(self.names, self.mean)),
            'posterior_sd': dict(zip(self.names, self.sd)),
            'acceptance_rate': self.acceptance_rate,
            'draws': len(self.draws),
            'seed': self.seed,
            'iters': self.iters,
            'burn_in': self.burn_in,
            'thin': self.thin,
        }

def draws_csv(posterior):
    yield ','.join(posterior.names + ('log_post',))
    for row, lp in zip(posterior.draws, posterior.log_posts):
        yield ','.join([repr(float(x)) for x in row] + [repr(float(lp))])

def run_mcmc(model, data, /, *, prior=None, iters=20_000, burn_in=5_000, thin=5, seed=0,
        init=None, starts=None, prior_only=False):
    if prior is None:
        prior = PriorSpec.default(model.k)
    if not prior_only and data.n_events == 0:
        raise NoEvents()

    def target(z):
        with np.errstate(over='ignore'):
            theta = np.exp(z)
        value = log_prior(prior, theta)
        if not prior_only and math.isfinite(value):
            value += log_likelihood(model, tuple(theta), data)
        return value + float(np.sum(z))

    if init is None:
        if prior_only:
            init = prior.mean
        else:
            fit = fit_mle(model, data, seed=seed) if starts is None \
                else fit_mle(model, data, starts=starts, seed=seed)
            init = fit.params
    z0 = np.log(np.asarray(init, dtype=float))
    run = adaptive_metropolis(target, z0, iters=iters, burn_in=burn_in, thin=thin, seed=seed,
        initial_cov=INITIAL_LOG_SD ** 2 * np.eye(model.k))
    draws = np.exp(run.samples)
    # reported on the parameter scale, without the log-transform Jacobian
    log_posts = run.log_densities - run.samples.sum(axis=1)
    return PosteriorDraws(model.name, model.param_names, draws, log_posts, run.acceptance_rate,
        seed, burn_in, thin, iters)
