"""octquad - excursion counts of octant and quadrant lattice walks, checked exactly."""

from importlib import metadata

__version__ = metadata.version(__name__)

from .config import Config
from .holonomic import DiffOperator, PRecurrence, diff_to_rec, rec_generate, rec_verify
from .laurent import LaurentPoly, ct_sequence
from .pipelines import generate
from .seqcore import Sequence, binomial_transform, reference
from .series import PowerSeries, bt_series
from .verify import VerificationReport, run_verification
from .walks import WalkModel, count_excursions

__all__ = [
    "Config",
    "DiffOperator",
    "LaurentPoly",
    "PRecurrence",
    "PowerSeries",
    "Sequence",
    "VerificationReport",
    "WalkModel",
    "binomial_transform",
    "bt_series",
    "count_excursions",
    "ct_sequence",
    "diff_to_rec",
    "generate",
    "rec_generate",
    "rec_verify",
    "reference",
    "run_verification",
]
