from .dataset import SurvivalRecord, SurvivalDataset, EmptyDataset
from .csvio import (load_csv, write_csv, write_km_csv, dataset_csv, km_csv,
    MissingColumn, NonNumericTime, InvalidStatus, InvalidEncoding, MalformedCsv)
from .kaplan_meier import KMCurve, kaplan_meier, km_sup_distance
from .simulate import simulate, simulate_model, invert_cumulative_hazard, RootNotBracketed
