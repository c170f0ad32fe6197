"""Exact computations with the autonomous operator on Hurwitz series and the flows it generates."""

from .autonomous import apply_pointwise, apply_series, invert
from .bell import complete_bell, partial_bell, partial_bell_rec, partitions
from .errors import AutflowError
from .flow import closed_form_flow, flow_at_point, parse_field
from .homogeneity import group_structure, solve_hk
from .hurwitz import HurwitzSeries, compose, hurwitz_mul
from .rings import RingSpec, parse_ring_spec, ring_make, unit_group_model

__all__ = [
    "AutflowError",
    "HurwitzSeries",
    "RingSpec",
    "apply_pointwise",
    "apply_series",
    "closed_form_flow",
    "complete_bell",
    "compose",
    "flow_at_point",
    "group_structure",
    "hurwitz_mul",
    "invert",
    "parse_field",
    "parse_ring_spec",
    "partial_bell",
    "partial_bell_rec",
    "partitions",
    "ring_make",
    "solve_hk",
    "unit_group_model",
]
