"""Multidimensional polarization index, comparison indices and chamber tooling."""

from .comparative import DiscreteDistribution1D, ERParams, esteban_ray, gini_er, reynal_querol
from .core import (CHEBYSHEV_COUNTEREXAMPLE, METRICS, Group, Metric, PolarizationReport, Society,
                   Violation, center_of_mass, diagonal_poles, distance, polarization,
                   polarization_modified, polarization_report, validate_society)
from .errors import (AggregationError, BoundsError, DimensionError, ParameterError, ParseError,
                     PolarIndexError, SizeError, UnknownMemberError, ValidationError)
from .experiments import (McEstimate, SeriesRow, continuum_limit_estimate, convergence_series,
                          extremal_search_chebyshev, random_society, uniform_grid_society)
from .grouping import (INDEPENDENT_LABEL, AttachmentConfig, Chamber, Individual, aggregate,
                       attach_independents, nearest_neighbors)

__version__ = "0.1.0"
