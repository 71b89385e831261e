from .models import (HazardModel, OscillatorModel, WeibullModel, PGWModel, MODEL_NAMES,
    model_from_name, UnknownModel)
from .elicit import (InitialConditionSpec, elicit_initial_conditions, NonPositiveH0,
    InvalidElicitation)
from .likelihood import log_likelihood, bic
from .mle import fit_mle, FitResult, StartSummary, NoEvents, AllStartsFailed, DEFAULT_STARTS
from .bayes import (GammaPrior, PriorSpec, PosteriorDraws, SamplerRun, log_prior,
    adaptive_metropolis, run_mcmc, draws_csv, ChainStuck)
from .predictive import (CurveGrid, predictive_curves, curves_csv, time_grid, EmptyDraws,
    DEFAULT_LEVELS)
