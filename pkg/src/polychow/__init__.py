"""Exact intersection theory of polymatroids on small ground sets."""

from .core import (DEFAULT_MAX_M, GroundData, Polymatroid, PolymatroidError,
                   ValidationError, cap_element, closure, dual, enumerate_polymatroids,
                   flats, hall_rado, is_loopless, make_boolean, make_H, make_zero,
                   meet, rado_matching, union, validate)

__version__ = "0.1.0"
