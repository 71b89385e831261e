import numpy as np
import pandas as pd

from oscihaz import AppError, NonPositiveTime
from .dataset import SurvivalDataset

TIME_COLUMN = 'time'
STATUS_COLUMN = 'status'

class MissingColumn(AppError):
    def __init__(self, name):
        super().__init__(name)
        self.name = name
    def __str__(self):
        return f'CSV header has no "{self.name}" column'

class NonNumericTime(AppError):
    def __init__(self, row, value):
        super().__init__(row, value)
        self.row = row
        self.value = value
    def __str__(self):
        return f'row {self.row}: time "{self.value}" is not a finite number'

class InvalidStatus(AppError):
    def __init__(self, row, value):
        super().__init__(row, value)
        self.row = row
        self.value = value
    def __str__(self):
        return f'row {self.row}: status must be 0 or 1, got "{self.value}"'

class InvalidEncoding(AppError):
    def __init__(self, err):
        super().__init__(err)
        self.err = err
    def __str__(self):
        return f'input is not valid UTF-8: {self.err}'

class MalformedCsv(AppError):
    def __init__(self, err):
        super().__init__(err)
        self.err = err
    def __str__(self):
        return f'input is not a well-formed CSV table: {self.err}'

def _read_frame(source):
    try:
        frame = pd.read_csv(source, dtype=str, encoding='utf-8-sig', skip_blank_lines=True,
            keep_default_na=False)
    except pd.errors.EmptyDataError:
        raise MissingColumn(TIME_COLUMN) from None
    except UnicodeDecodeError as err:
        raise InvalidEncoding(err) from None
    except pd.errors.ParserError as err:
        raise MalformedCsv(err) from None
    frame.columns = [str(name).strip() for name in frame.columns]
    for name in (TIME_COLUMN, STATUS_COLUMN):
        if name not in frame.columns:
            raise MissingColumn(name)
    return frame

def load_csv(source, /, *, time_scale=1.0):
    frame = _read_frame(source)
    raw_times = frame[TIME_COLUMN].fillna('').str.strip().to_numpy()
    raw_status = frame[STATUS_COLUMN].fillna('').str.strip().to_numpy()
    times = pd.to_numeric(pd.Series(raw_times), errors='coerce').to_numpy(dtype=float)

    # rows are numbered from 1 after the header; within a row the time is checked first
    failures = [
        (~np.isfinite(times), lambda i: NonNumericTime(i + 1, raw_times[i])),
        (times <= 0, lambda i: NonPositiveTime(raw_times[i], row=i + 1)),
        (~np.isin(raw_status, ('0', '1')), lambda i: InvalidStatus(i + 1, raw_status[i])),
    ]
    first = [(int(np.argmax(bad)), order) for order, (bad, _) in enumerate(failures) if np.any(bad)]
    if first:
        i, order = min(first)
        raise failures[order][1](i)
    return SurvivalDataset(times / time_scale, raw_status == '1')

def dataset_csv(data):
    yield f'{TIME_COLUMN},{STATUS_COLUMN}'
    for t, e in zip(data.times, data.events):
        yield f'{float(t)!r},{int(e)}'

def km_csv(curve):
    yield 'time,survival,at_risk,deaths'
    for t, s, n, d in zip(curve.times, curve.survival, curve.at_risk, curve.deaths):
        yield f'{float(t)!r},{float(s)!r},{int(n)},{int(d)}'

def write_csv(data, file):
    for line in dataset_csv(data):
        print(line, file=file)

def write_km_csv(curve, file):
    for line in km_csv(curve):
        print(line, file=file)
