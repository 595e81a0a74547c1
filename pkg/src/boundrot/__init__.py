"""Functions of bounded radius and boundary rotation.

Truncated power-series constructions of the classes ``P_k``, ``R_k`` and
``V_k``, closed-form evaluators for their growth, distortion and coefficient
bounds, and seeded numerical checks of those bounds.
"""
from .bounds import (BoundSet, coeff_bound, distortion_bounds, growth_bounds, pk_disk,
                     radius_starlike, re_bounds, robertson_disk)
from .caratheodory import (SchwarzFn, caratheodory_from_schwarz, is_caratheodory,
                           random_schwarz, schwarz_series)
from .classes import (ClassFunction, Kind, Provenance, alexander, extremal_fn,
                      extremal_measure, extremal_pk, from_measure, pk_from_pair,
                      pk_from_rk, rk_from_pk, vk_from_pk)
from .errors import (BoundRotError, DivisionBySmallConstant, InvalidMeasure,
                     InvalidParameter, NonzeroInnerConstant, NotCaratheodory)
from .measures import (DiscreteMeasure, herglotz_series, jordan_decompose, sample_measure,
                       total_variation)
from .series import TruncSeries, arith, compose, derive, div, evaluate, exp_log, pow_real
from .verify import (VerificationReport, rotation_integral, verify_coefficients, verify_disk,
                     verify_growth_distortion, verify_mean_value, verify_radius_starlike,
                     verify_rotation)

__version__ = "0.1.0"
