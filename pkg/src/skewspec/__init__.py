"""Exact specification-property witnesses for step skew products.

The base is a subshift of finite type over ``{1, ..., n}``; the fibre maps
are continuous piecewise-linear maps of [0, 1] with rational nodes, so all
constructions and checks run in exact rational arithmetic.
"""

from .errors import SkewSpecError
from .kernel import BACKEND
from .numeric import UnitInterval, format_rational, make_rational, parse_rational
from .pwl import PwlMap, tent, valley, zigzag3
from .skew import OrbitSegmentSpec, SkewPoint, SkewSystem, verify_tracing
from .subshift import BasePoint, Sft
from .witness import WitnessReport, witness

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BasePoint",
    "OrbitSegmentSpec",
    "PwlMap",
    "Sft",
    "SkewPoint",
    "SkewSpecError",
    "SkewSystem",
    "UnitInterval",
    "WitnessReport",
    "format_rational",
    "make_rational",
    "parse_rational",
    "tent",
    "valley",
    "verify_tracing",
    "witness",
    "zigzag3",
]
