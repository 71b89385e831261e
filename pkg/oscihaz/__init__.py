__version__ = '0.1.0'

class AppError(Exception):
    exit_code = 1

class NumericalError(AppError):
    exit_code = 2

class NonPositiveTime(AppError):
    def __init__(self, value, row=None):
        super().__init__(value, row)
        self.value = value
        self.row = row
    def __str__(self):
        if self.row is None:
            return f'time must be positive, got {self.value}'
        return f'row {self.row}: time must be positive, got "{self.value}"'
