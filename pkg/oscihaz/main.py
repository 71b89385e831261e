from . import __version__ as oscihaz_version

from . import hazard, survdata, inference
from . import AppError

import sys
import os
import json
import getopt
import contextlib
import warnings
import numpy as np
from typing import NamedTuple, Any

COMMANDS = ('fit', 'bayes', 'compare', 'km', 'simulate', 'curves')
SEED_VARIABLE = 'OSCIHAZ_SEED'

_quiet = False

def main(argv=None):
    global _quiet
    _quiet = False
    try:
        return _main(sys.argv[1:] if argv is None else argv)
    except AppError as err:
        print(f'error: {err}', file=sys.stderr)
        return err.exit_code

def _main(argv):
    global _quiet
    try:
        opts, args = getopt.gnu_getopt(argv, 'i:o:m:q',
            ['version', 'quiet', 'input=', 'model=', 'models=', 'time-scale=',
            'dt=', 's1=', 's2=', 'h0=', 'r0=', 'eta=', 'w0=', 'hb=',
            'seed=', 'starts=', 'iters=', 'burn-in=', 'thin=', 'prior-shape=', 'prior-scale=',
            'draws=', 'curves=', 'grid-max=', 'grid-points=', 'levels=',
            'n=', 'censoring-rate='])
    except getopt.GetoptError as err:
        raise ArgParseError(err)

    if any(key == '--version' for key, _ in opts):
        print(f'oscihaz v{oscihaz_version}')
        return 0

    params = ParamList()
    command = None
    iargs = iter(args)
    for arg in iargs:
        if arg not in COMMANDS:
            raise UnknownCommand(arg)
        command = arg
        break
    for arg in iargs:
        params.ignored = Param.positional(arg)
    del iargs

    if command is None:
        print_usage()
        return 1

    params.target = _TARGETS[command]
    for key, value in opts:
        param = Param(key, value)
        match key:
            case '-q' | '--quiet':
                _quiet = True
            case '-i' | '--input':
                params.infile = param
            case '-o':
                params.outfile = param
            case '-m' | '--model':
                params.model = param
                _assert_param(param, lambda x: x.lower() in inference.MODEL_NAMES)
            case '--models':
                params.models = _parse_param(param, _model_list)
            case '--time-scale':
                params.time_scale = _parse_param(param, float)
                _assert_param(params['time_scale'], lambda x: x > 0)
            case '--dt':
                params.dt = _parse_param(param, float)
                _assert_param(params['dt'], lambda x: x > 0)
            case '--s1':
                params.s1 = _parse_param(param, float)
                _assert_param(params['s1'], lambda x: 0 < x <= 1)
            case '--s2':
                params.s2 = _parse_param(param, float)
                _assert_param(params['s2'], lambda x: 0 < x <= 1)
            case '--h0' | '--r0' | '--eta' | '--w0' | '--hb':
                params[key[2:]] = _parse_param(param, float)
                _assert_param(params[key[2:]], np.isfinite)
            case '--seed':
                params.seed = _parse_param(param, int)
                _assert_param(params['seed'], lambda x: x >= 0)
            case '--starts':
                params.starts = _parse_param(param, int)
                _assert_param(params['starts'], lambda x: x >= 1)
            case '--iters':
                params.iters = _parse_param(param, int)
                _assert_param(params['iters'], lambda x: x >= 1)
            case '--burn-in':
                params.burn_in = _parse_param(param, int)
                _assert_param(params['burn_in'], lambda x: x >= 0)
            case '--thin':
                params.thin = _parse_param(param, int)
                _assert_param(params['thin'], lambda x: x >= 1)
            case '--prior-shape' | '--prior-scale':
                params[key[2:].replace('-', '_')] = _parse_param(param, float)
                _assert_param(params[key[2:].replace('-', '_')], lambda x: x > 0)
            case '--draws':
                params.draws_file = param
            case '--curves':
                params.curves_file = param
            case '--grid-max':
                params.grid_max = _parse_param(param, float)
                _assert_param(params['grid_max'], lambda x: x > 0)
            case '--grid-points':
                params.grid_points = _parse_param(param, int)
                _assert_param(params['grid_points'], lambda x: x >= 2)
            case '--levels':
                params.levels = _parse_param(param, _level_pair)
            case '--n':
                params.n = _parse_param(param, int)
                _assert_param(params['n'], lambda x: x >= 1)
            case '--censoring-rate':
                params.censoring_rate = _parse_param(param, float)
                _assert_param(params['censoring_rate'], lambda x: x >= 0)

    _set_defaults(params, command)
    params.check_target()
    match command:
        case 'fit':
            fit(params)
        case 'bayes':
            bayes(params)
        case 'compare':
            compare(params)
        case 'km':
            km(params)
        case 'simulate':
            simulate(params)
        case 'curves':
            curves(params)
    return 0

_ELICITATION = {
    'dt': 'elicitation step (--dt)',
    's1': 'survival at dt (--s1)',
    's2': 'survival at 2*dt (--s2)',
    'h0': 'initial hazard (--h0)',
    'r0': 'initial hazard slope (--r0)',
}
_OSCILLATOR = {
    'eta': 'damping ratio (--eta)',
    'w0': 'natural frequency (--w0)',
    'hb': 'baseline hazard (--hb)',
    'h0': 'initial hazard (--h0)',
    'r0': 'initial hazard slope (--r0)',
}
_FITTING = {
    'infile': 'input file (--input)',
    'outfile': 'output file',
    'time_scale': 'time scale',
    'seed': 'seed',
    'starts': 'number of optimizer starts',
} | _ELICITATION

_TARGETS = {
    'fit': _FITTING | {'model': 'model'},
    'bayes': _FITTING | {
        'model': 'model',
        'iters': 'iteration count',
        'burn_in': 'burn-in length',
        'thin': 'thinning interval',
        'prior_shape': 'prior shape',
        'prior_scale': 'prior scale',
        'draws_file': 'draws output file',
        'curves_file': 'curves output file',
        'grid_max': 'grid end time',
        'grid_points': 'grid size',
        'levels': 'quantile levels',
    },
    'compare': _FITTING | {'models': 'model list'},
    'km': {
        'infile': 'input file (--input)',
        'outfile': 'output file',
        'time_scale': 'time scale',
    },
    'simulate': _OSCILLATOR | {
        'outfile': 'output file',
        'n': 'sample size (--n)',
        'censoring_rate': 'censoring rate',
        'seed': 'seed',
    },
    'curves': _OSCILLATOR | {
        'outfile': 'output file',
        'grid_max': 'grid end time',
        'grid_points': 'grid size',
    },
}

def _set_defaults(params, command):
    target = params.target
    params.outfile = DefaultValue(None)
    if 'time_scale' in target:
        params.time_scale = DefaultValue(1.0)
    if 'seed' in target:
        params.seed = DefaultValue(_env_seed())
    if 'starts' in target:
        params.starts = DefaultValue(inference.DEFAULT_STARTS)
    if command in ('fit', 'bayes', 'compare'):
        for key in _ELICITATION:
            params[key] = DefaultValue(None)
    params.model = DefaultValue('ho')
    params.models = DefaultValue(inference.MODEL_NAMES)
    params.iters = DefaultValue(20_000)
    params.burn_in = DefaultValue(5_000)
    params.thin = DefaultValue(5)
    params.prior_shape = DefaultValue(0.001)
    params.prior_scale = DefaultValue(1000.0)
    params.draws_file = DefaultValue(None)
    params.curves_file = DefaultValue(None)
    params.grid_max = DefaultValue(None)
    params.grid_points = DefaultValue(200)
    params.levels = DefaultValue(inference.DEFAULT_LEVELS)
    params.n = DefaultValue(100)
    params.censoring_rate = DefaultValue(0.0)

def _env_seed():
    value = os.environ.get(SEED_VARIABLE)
    if value is None:
        return 0
    param = _parse_param(Param(SEED_VARIABLE, value), int)
    _assert_param(param, lambda x: x >= 0)
    return param.value

def _model_list(value):
    names = tuple(name.strip().lower() for name in value.split(',') if name.strip())
    if not names:
        raise ValueError(value)
    for name in names:
        if name not in inference.MODEL_NAMES:
            raise inference.UnknownModel(name)
    return names

def _level_pair(value):
    lo, hi = map(float, value.split(','))
    if not 0 <= lo < hi <= 1:
        raise ValueError(value)
    return lo, hi

class Param(NamedTuple):
    cl_key: str
    value: Any = None

    @classmethod
    def positional(cls, value):
        return cls(cl_key=value, value=value)

class DefaultValue:
    __match_args__ = ('value', )
    def __init__(self, value):
        self.value = value

class ParamList:
    def __init__(self):
        self._paramdict = dict()
        self._target = None

    @staticmethod
    def _warn_ignored_parameter(cl_key):
        if cl_key is not None:
            warnings.warn(f'parameter "{cl_key}" ignored')

    def __getattr__(self, key):
        try:
            return self._paramdict[key].value
        except KeyError:
            raise AttributeError(f'ParamList object has no attribute "{key}"') from None

    _reserved_fields = frozenset(['_paramdict', '_target', 'target', 'ignored'])
    def __setattr__(self, key, value):
        if key in ParamList._reserved_fields:
            super().__setattr__(key, value)
        else:
            self._add_param(key, value)

    def __getitem__(self, key):
        return self._paramdict[key]

    def __setitem__(self, key, value):
        self._add_param(key, value)

    def _add_param(self, key, value):
        match value:
            case DefaultValue(x):
                if key not in self._paramdict and (self._target is None or key in self._target):
                    self._paramdict[key] = Param(None, x)
            case Param(_, _):
                self._paramdict[key] = value
                if self._target is not None and key not in self._target:
                    ParamList._warn_ignored_parameter(value.cl_key)
            case _:
                raise ValueError(f'invalid value assign: {value}')

    @property
    def target(self):
        return self._target

    @target.setter
    def target(self, value):
        self._target = value
        for key in set(self._paramdict) - set(value):
            ParamList._warn_ignored_parameter(self._paramdict[key].cl_key)

    @property
    def ignored(self):
        return None

    @ignored.setter
    def ignored(self, value):
        ParamList._warn_ignored_parameter(value.cl_key)

    def check_target(self):
        if self._target is None:
            return
        for (key, name) in self._target.items():
            if key not in self._paramdict:
                raise MissingParameter(name)

class FileOpenReadError(AppError):
    def __init__(self, filename, err):
        super().__init__(filename, err)
        self.filename = filename
        self.err = err
    def __str__(self):
        return f'could not open file "{self.filename}" for reading: {self.err}'

class FileOpenWriteError(AppError):
    def __init__(self, filename, err):
        super().__init__(filename, err)
        self.filename = filename
        self.err = err
    def __str__(self):
        return f'could not open file "{self.filename}" for writing: {self.err}'

class ArgParseError(AppError):
    def __init__(self, err):
        super().__init__(err)
        self.err = err
    def __str__(self):
        return str(self.err)

class UnknownCommand(AppError):
    def __init__(self, name):
        super().__init__(name)
        self.name = name
    def __str__(self):
        return f'unknown command "{self.name}"; expected one of: {", ".join(COMMANDS)}'

class MissingParameter(AppError):
    def __init__(self, name):
        super().__init__(name)
        self.name = name
    def __str__(self):
        return f'no {self.name} provided'

class InvalidParameter(AppError):
    def __init__(self, param):
        super().__init__(param)
        self.param = param
    def __str__(self):
        return f'parameter "{self.param[0]}" has invalid value: "{self.param[1]}"'

def _parse_param(param, parse):
    try:
        if type(param[1]) is str:
            return Param(param[0], parse(param[1]))
        else:
            return param
    except ValueError:
        raise InvalidParameter(param) from None

def _assert_param(param, cond):
    if not cond(param[1]):
        raise InvalidParameter(param)

def _open_read(filename):
    try:
        return open(filename, 'rb')
    except OSError as err:
        raise FileOpenReadError(filename, err)

def _open_write_text(filename):
    try:
        return open(filename, 'w', newline='\n')
    except OSError as err:
        raise FileOpenWriteError(filename, err)

@contextlib.contextmanager
def _open_write_or(filename, /, *, defaultfile):
    if filename is None:
        yield defaultfile
    else:
        file = _open_write_text(filename)
        try:
            yield file
        finally:
            file.close()

def eprint(*args, **kwargs):
    if not _quiet:
        print(*args, **kwargs, file=sys.stderr)

def _warning(message, category, filename, lineno, file=None, line=None):
    if file is None:
        file = sys.stderr
    print(f'warning: {message}', file=file)
warnings.showwarning = _warning

def _load(params):
    eprint('Loading data...')
    with _open_read(params.infile) as f:
        data = survdata.load_csv(f, time_scale=params.time_scale)
    eprint(f'{data.n} records, {data.n_events} events.')
    return data

def _fixed_conditions(params):
    match (params.h0, params.r0, params.dt, params.s1, params.s2):
        case (h0, r0, _, _, _) if h0 is not None and r0 is not None:
            return h0, r0
        case (_, _, dt, s1, s2) if None not in (dt, s1, s2):
            spec = inference.InitialConditionSpec(dt, s1, s2)
            h0, r0 = inference.elicit_initial_conditions(spec)
            eprint(f'Elicited h0={h0:.6g}, r0={r0:.6g}.')
            return h0, r0
        case _:
            raise MissingParameter('initial conditions (--dt, --s1, --s2 or --h0, --r0)')

def _model(name, params, cache):
    if name == 'ho' and 'fixed' not in cache:
        cache['fixed'] = _fixed_conditions(params)
    return inference.model_from_name(name, fixed=cache.get('fixed'))

def _fit_summary(model, result):
    summary = result.as_dict()
    if isinstance(model, inference.OscillatorModel):
        summary['fixed'] = {'h0': model.h0, 'r0': model.r0}
    return summary

def _write_json(obj, outfile):
    with _open_write_or(outfile, defaultfile=sys.stdout) as f:
        print(json.dumps(obj, indent=2), file=f)

def _oscillator_params(params):
    return hazard.OscillatorParams.make(params.eta, params.w0, params.hb, params.h0, params.r0)

def fit(params):
    data = _load(params)
    model = _model(params.model.lower(), params, {})
    eprint(f'Fitting {model.name} model...')
    result = inference.fit_mle(model, data, starts=params.starts, seed=params.seed)
    _write_json(_fit_summary(model, result), params.outfile)
    eprint('Done.')

def bayes(params):
    if params.iters <= params.burn_in:
        raise InvalidParameter(params['burn_in'])
    data = _load(params)
    model = _model(params.model.lower(), params, {})
    prior = inference.PriorSpec.default(model.k, shape=params.prior_shape, scale=params.prior_scale)

    eprint(f'Sampling {model.name} posterior...')
    posterior = inference.run_mcmc(model, data, prior=prior, iters=params.iters,
        burn_in=params.burn_in, thin=params.thin, seed=params.seed, starts=params.starts)
    eprint(f'Acceptance rate {posterior.acceptance_rate:.3f}.')

    best = posterior.best()
    loglik = inference.log_likelihood(model, best, data)
    grid_max = params.grid_max if params.grid_max is not None else float(data.times.max())
    grid = inference.time_grid(grid_max, params.grid_points)
    curves = inference.predictive_curves(model, posterior, grid, levels=params.levels)
    km_curve = survdata.kaplan_meier(data)
    distance = survdata.km_sup_distance(km_curve,
        lambda t: np.interp(t, curves.times, curves.survival_mean), t_max=grid_max)

    summary = posterior.as_dict() | {
        'point_estimate': dict(zip(model.param_names, best)),
        'loglik': loglik,
        'bic': inference.bic(loglik, model.k, data.n),
        'k': model.k,
        'n': data.n,
        'km_sup_distance': distance,
    }
    if isinstance(model, inference.OscillatorModel):
        summary['fixed'] = {'h0': model.h0, 'r0': model.r0}
    _write_json(summary, params.outfile)

    if params.draws_file is not None:
        eprint('Writing draws...')
        with _open_write_text(params.draws_file) as f:
            for line in inference.draws_csv(posterior):
                print(line, file=f)
    if params.curves_file is not None:
        eprint('Writing curves...')
        with _open_write_text(params.curves_file) as f:
            for line in inference.curves_csv(curves):
                print(line, file=f)
    eprint('Done.')

class CompareRow(NamedTuple):
    model: str
    k: int
    loglik: float
    bic: float
    delta: float

def compare_table(rows):
    yield f'{"model":<8} {"k":>2} {"loglik":>12} {"BIC":>12} {"dBIC":>12}'
    for r in rows:
        yield f'{r.model:<8} {r.k:>2} {r.loglik:>12.6g} {r.bic:>12.6g} {r.delta:>12.6g}'

def compare(params):
    data = _load(params)
    cache = {}
    results = []
    for name in params.models:
        model = _model(name, params, cache)
        eprint(f'Fitting {model.name} model...')
        results.append((model, inference.fit_mle(model, data, starts=params.starts, seed=params.seed)))
    results.sort(key=lambda x: x[1].bic)
    best = results[0][1].bic
    rows = [CompareRow(r.model, r.k, r.loglik, r.bic, r.bic - best) for _, r in results]
    for line in compare_table(rows):
        print(line)
    if params.outfile is not None:
        _write_json({
            'n': data.n,
            'seed': params.seed,
            'models': [_fit_summary(model, r) | {'delta_bic': r.bic - best} for model, r in results],
        }, params.outfile)
    eprint('Done.')

def km(params):
    data = _load(params)
    curve = survdata.kaplan_meier(data)
    with _open_write_or(params.outfile, defaultfile=sys.stdout) as f:
        survdata.write_km_csv(curve, f)
    eprint('Done.')

def simulate(params):
    p = _oscillator_params(params)
    eprint(f'Simulating {params.n} survival times...')
    data = survdata.simulate(p, params.n, censoring_rate=params.censoring_rate, seed=params.seed)
    with _open_write_or(params.outfile, defaultfile=sys.stdout) as f:
        survdata.write_csv(data, f)
    eprint('Done.')

def curves(params):
    p = _oscillator_params(params)
    hazard.require_admissible(p)
    grid_max = params.grid_max
    if grid_max is None:
        horizon = hazard.envelope_horizon(p)
        grid_max = horizon if horizon > 0 else 10.0 / p.hb
    grid = inference.time_grid(grid_max, params.grid_points)
    model = inference.OscillatorModel(p.h0, p.r0)
    result = inference.predictive_curves(model, [(p.eta, p.w0, p.hb)], grid)
    with _open_write_or(params.outfile, defaultfile=sys.stdout) as f:
        for line in inference.curves_csv(result):
            print(line, file=f)
    eprint('Done.')

def print_usage():
    usage = '''usage:
  oscihaz fit --input data.csv [--model ho|weibull|pgw] [--dt DT --s1 S1 --s2 S2 | --h0 H0 --r0 R0]
  oscihaz bayes --input data.csv [--model M] [--iters N --burn-in N --thin N] [--draws F] [--curves F]
  oscihaz compare --input data.csv [--models ho,weibull,pgw] [-o table.json]
  oscihaz km --input data.csv
  oscihaz simulate --eta E --w0 W --hb B --h0 H0 --r0 R0 [--n N] [--censoring-rate C] [--seed S]
  oscihaz curves --eta E --w0 W --hb B --h0 H0 --r0 R0 [--grid-max T] [--grid-points N]
  oscihaz --version'''
    eprint(usage)
