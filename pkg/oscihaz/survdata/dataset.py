from typing import NamedTuple
import numpy as np

from oscihaz import AppError, NonPositiveTime

class EmptyDataset(AppError):
    def __str__(self):
        return 'dataset has no records'

class SurvivalRecord(NamedTuple):
    time: float
    event: bool

class SurvivalDataset:
    def __init__(self, times, events):
        times = np.array(times, dtype=float, ndmin=1)
        events = np.array(events, dtype=bool, ndmin=1)
        if times.size == 0:
            raise EmptyDataset()
        if times.shape != events.shape:
            raise ValueError('times and events must have the same length')
        bad = ~np.isfinite(times) | (times <= 0)
        if np.any(bad):
            i = int(np.argmax(bad))
            raise NonPositiveTime(times[i], row=i + 1)
        times.flags.writeable = False
        events.flags.writeable = False
        self.times = times
        self.events = events

    @classmethod
    def from_records(cls, records):
        records = list(records)
        return cls([r.time for r in records], [r.event for r in records])

    @property
    def n(self):
        return self.times.size

    @property
    def n_events(self):
        return int(self.events.sum())

    @property
    def records(self):
        return [SurvivalRecord(float(t), bool(e)) for t, e in zip(self.times, self.events)]

    def sorted_by_time(self):
        order = np.argsort(self.times, kind='mergesort')
        return SurvivalDataset(self.times[order], self.events[order])

    def concat(self, other):
        return SurvivalDataset(np.concatenate([self.times, other.times]),
            np.concatenate([self.events, other.events]))

    def __len__(self):
        return self.n

    def __eq__(self, other):
        return (isinstance(other, SurvivalDataset)
            and np.array_equal(self.times, other.times)
            and np.array_equal(self.events, other.events))

    def __repr__(self):
        return f'SurvivalDataset(n={self.n}, n_events={self.n_events})'
