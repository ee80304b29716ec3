"""Exact construction and verification of generalized Gould-Hopper polynomial systems."""
from .exact import Basis, Poly, format_poly, pochhammer
from .operators import Kind, SpecError, SystemSpec, apply_L, build_P, dumps_spec, loads_spec
from .presets import PRESETS, parse_preset
from .report import CheckReport

__all__ = [
    "Basis", "Poly", "format_poly", "pochhammer", "Kind", "SpecError", "SystemSpec", "apply_L",
    "build_P", "dumps_spec", "loads_spec", "PRESETS", "parse_preset", "CheckReport",
]
