import math
import os
from pathlib import Path
import numpy as np
import pytest

from oscihaz import survdata, hazard
from oscihaz.survdata import SurvivalDataset
from oscihaz.inference import (InitialConditionSpec, elicit_initial_conditions, NonPositiveH0,
    InvalidElicitation, OscillatorModel, WeibullModel, PGWModel, model_from_name, UnknownModel,
    log_likelihood, bic, fit_mle, NoEvents, AllStartsFailed)

ROTTERDAM = Path(os.environ.get('OSCIHAZ_ROTTERDAM', Path(__file__).parent / 'data' / 'rotterdam.csv'))
DAYS_PER_YEAR = 365.25

needs_rotterdam = pytest.mark.skipif(not ROTTERDAM.is_file(),
    reason='prepared rotterdam CSV not available')

def rotterdam():
    with open(ROTTERDAM, 'rb') as f:
        return survdata.load_csv(f, time_scale=DAYS_PER_YEAR)

def test_elicitation_monthly_steps():
    h0, r0 = elicit_initial_conditions(InitialConditionSpec(1 / 12, 0.999, 0.998))
    assert h0 == pytest.approx(0.0120120, rel=1e-5)
    assert r0 == pytest.approx(0.0001442, rel=1e-3)
    assert round(h0, 3) == 0.012
    assert round(r0, 5) == 0.00014

def test_elicitation_exponential_decay():
    h0, r0 = elicit_initial_conditions(InitialConditionSpec(1.0, math.exp(-1), math.exp(-2)))
    e = math.e
    assert h0 == pytest.approx(e - 1)
    assert r0 == pytest.approx((e - 1) ** 2 - (math.exp(-2) - 2 * math.exp(-1) + 1) * e)

def test_elicitation_errors():
    with pytest.raises(NonPositiveH0):
        elicit_initial_conditions(InitialConditionSpec(0.1, 1.0, 0.9))
    with pytest.raises(InvalidElicitation):
        elicit_initial_conditions(InitialConditionSpec(0.1, 0.9, 0.95))
    with pytest.raises(InvalidElicitation):
        elicit_initial_conditions(InitialConditionSpec(-0.1, 0.9, 0.8))

def test_model_from_name():
    assert isinstance(model_from_name('WEIBULL'), WeibullModel)
    assert isinstance(model_from_name('pgw'), PGWModel)
    model = model_from_name('ho', fixed=(0.5, -0.1))
    assert (model.h0, model.r0) == (0.5, -0.1)
    assert model.k == 3
    with pytest.raises(ValueError):
        model_from_name('ho')
    with pytest.raises(UnknownModel):
        model_from_name('gompertz')

def test_hazard_at_origin():
    assert WeibullModel().hazard((2.0, 0.5), 0.0) == math.inf
    assert WeibullModel().hazard((2.0, 1.0), 0.0) == pytest.approx(0.5)
    assert WeibullModel().hazard((2.0, 3.0), 0.0) == 0
    assert PGWModel().hazard((2.0, 1.0, 4.0), 0.0) == pytest.approx(1 / 8)
    values = WeibullModel().hazard((2.0, 2.0), np.array([0.0, 2.0]))
    assert list(values) == [0.0, 1.0]

def test_oscillator_feasibility():
    model = OscillatorModel(2.0, -1.0)
    assert model.feasible((1.25, 1.0, 1.0))
    assert not model.feasible((1.0, 1.0, 1.0))
    assert not model.feasible((0.5, -1.0, 1.0))
    assert not OscillatorModel(1.0, -50.0).feasible((0.1, 5.0, 1.0))

def test_log_likelihood_exponential():
    data = SurvivalDataset([1.0, 2.0, 3.0], [True, True, False])
    expected = 2 * math.log(0.5) - 3.0
    assert log_likelihood(WeibullModel(), (2.0, 1.0), data) == pytest.approx(expected)
    assert log_likelihood(PGWModel(), (2.0, 1.0, 1.0), data) == pytest.approx(expected)
    # constant oscillator hazard is the same exponential
    assert log_likelihood(OscillatorModel(0.5, 0.0), (0.5, 1.0, 0.5), data) == pytest.approx(expected)

def test_log_likelihood_outside_support():
    data = SurvivalDataset([1.0, 2.0], [True, True])
    assert log_likelihood(WeibullModel(), (-2.0, 1.0), data) == -math.inf
    assert log_likelihood(OscillatorModel(0.5, 0.0), (1.0, 1.0, 0.5), data) == -math.inf
    assert log_likelihood(OscillatorModel(1.0, -50.0), (0.1, 5.0, 1.0), data) == -math.inf

def test_bic():
    assert bic(-10.0, 3, 100) == pytest.approx(3 * math.log(100) + 20)
    with pytest.raises(ValueError):
        bic(-10.0, 3, 0)

def test_fit_weibull_recovers_truth():
    data = survdata.simulate_model(WeibullModel(), (1.0, 1.0), 5000, seed=1)
    result = fit_mle(WeibullModel(), data, starts=3, seed=7)
    scale, shape = result.params
    assert scale == pytest.approx(1.0, abs=0.05)
    assert shape == pytest.approx(1.0, abs=0.05)
    assert result.k == 2
    assert result.n == 5000
    assert result.converged
    assert len(result.optimizer_trace) == 3
    assert result.bic == pytest.approx(2 * math.log(5000) - 2 * result.loglik)
    assert result.loglik >= log_likelihood(WeibullModel(), (1.0, 1.0), data)

def test_fit_is_deterministic():
    data = survdata.simulate_model(PGWModel(), (1.0, 1.5, 2.0), 400, censoring_rate=0.2, seed=3)
    a = fit_mle(PGWModel(), data, starts=4, seed=11)
    b = fit_mle(PGWModel(), data, starts=4, seed=11)
    assert a.params == b.params
    assert a.loglik == b.loglik

def test_fit_oscillator():
    truth = (1.5, 0.8, 1.2)
    model = OscillatorModel(2.0, -1.0)
    data = survdata.simulate(model.params(truth), 2000, seed=17)
    result = fit_mle(model, data, seed=5)
    assert result.model == 'ho'
    assert model.feasible(result.params)
    assert hazard.is_admissible(model.params(result.params)).admissible
    assert result.loglik >= log_likelihood(model, truth, data) - 1e-6
    assert result.as_dict()['params'].keys() == {'eta', 'w0', 'hb'}

def test_fit_without_events():
    data = SurvivalDataset([1.0, 2.0], [False, False])
    with pytest.raises(NoEvents):
        fit_mle(WeibullModel(), data)

def test_fit_without_feasible_start():
    class Nowhere(WeibullModel):
        def feasible(self, theta):
            return False
    data = SurvivalDataset([1.0, 2.0], [True, True])
    with pytest.raises(AllStartsFailed) as info:
        fit_mle(Nowhere(), data, starts=2)
    assert info.value.exit_code == 2

@needs_rotterdam
def test_rotterdam_counts():
    data = rotterdam()
    assert data.n == 2982
    assert data.n_events == 1272

@needs_rotterdam
def test_rotterdam_bic_table():
    data = rotterdam()
    fixed = elicit_initial_conditions(InitialConditionSpec(1 / 12, 0.999, 0.998))
    results = {name: fit_mle(model_from_name(name, fixed=fixed), data, seed=7)
        for name in ('weibull', 'pgw', 'ho')}
    assert results['weibull'].bic == pytest.approx(9650.30, abs=0.10)
    assert results['pgw'].bic == pytest.approx(9590.03, abs=0.50)
    assert results['ho'].bic == pytest.approx(9581.04, abs=1.00)
    assert results['ho'].bic < results['pgw'].bic < results['weibull'].bic

def test_log_likelihood_constant_hazard():
    data = SurvivalDataset([1.0, 2.0], [True, False])
    model = OscillatorModel(2.0, 0.0)
    assert log_likelihood(model, (0.5, 1.0, 2.0), data) == pytest.approx(math.log(2) - 6)

def test_log_likelihood_additive():
    model = OscillatorModel(2.0, -1.0)
    theta = (1.25, 1.0, 1.0)
    a = survdata.simulate(model.params(theta), 40, censoring_rate=0.3, seed=1)
    b = survdata.simulate(model.params(theta), 25, censoring_rate=0.3, seed=2)
    joint = log_likelihood(model, theta, a.concat(b))
    assert joint == pytest.approx(log_likelihood(model, theta, a) + log_likelihood(model, theta, b),
        rel=1e-12)

def test_censoring_flip():
    model = OscillatorModel(2.0, -1.0)
    theta = (1.25, 1.0, 1.0)
    data = survdata.simulate(model.params(theta), 30, seed=3)
    events = data.events.copy()
    i = 7
    events[i] = False
    flipped = SurvivalDataset(data.times, events)
    delta = log_likelihood(model, theta, flipped) - log_likelihood(model, theta, data)
    assert delta == pytest.approx(-math.log(model.hazard(theta, data.times[i])), abs=1e-10)

def test_fit_stationary():
    data = survdata.simulate_model(WeibullModel(), (1.5, 1.3), 2000, censoring_rate=0.2, seed=4)
    result = fit_mle(WeibullModel(), data, starts=2, seed=1)
    z = np.log(result.params)
    step = 1e-5

    def loglik(z):
        return log_likelihood(WeibullModel(), tuple(np.exp(z)), data)

    for j in range(len(z)):
        e = np.zeros_like(z)
        e[j] = step
        slope = (loglik(z + e) - loglik(z - e)) / (2 * step)
        assert abs(slope) / data.n < 1e-3
