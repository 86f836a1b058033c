"""Gelfand-Graev submodules of the Steinberg module for GL_n(q) and SL_2(q)."""

from .bnpair import GLProvider, SL2Provider, WeylElem, make_provider
from .fields import (
    CoeffField,
    FieldDesc,
    additive_character,
    make_coeff_field,
    make_structure_field,
    trace_to_prime_field,
)
from .kernels import BACKEND
from .linalg import SubspaceBasis, echelonize, member, pairing_rank, perp, spin
from .permmodule import PermModule
from .steinberg import (
    FactorReport,
    Instance,
    RegularCharacter,
    build_instance,
    sigma_conj,
    sigma_star,
    verify_suite,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CoeffField",
    "FactorReport",
    "FieldDesc",
    "GLProvider",
    "Instance",
    "PermModule",
    "RegularCharacter",
    "SL2Provider",
    "SubspaceBasis",
    "WeylElem",
    "additive_character",
    "build_instance",
    "echelonize",
    "make_coeff_field",
    "make_provider",
    "make_structure_field",
    "member",
    "pairing_rank",
    "perp",
    "sigma_conj",
    "sigma_star",
    "spin",
    "trace_to_prime_field",
    "verify_suite",
]
