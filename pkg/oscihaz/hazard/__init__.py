from .params import (OscillatorParams, Regime, RegimeCoefficients, ShapeClass,
    AdmissibilityReport, InvalidParams, CriticallyDampedCoefficients, UndefinedMu,
    EPS_REGIME, regime_of, coefficients)
from .closed_form import (hazard_at, hazard_derivative_at, hazard_second_derivative_at,
    cumulative_hazard_at, envelope_horizon)
from .admissibility import (critical_points, is_admissible, require_admissible,
    survival_at, tail_rate, InadmissibleParams, CriticallyDampedUnsupported)
from .shape import classify_shape
