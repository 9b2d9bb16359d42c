"""Exact computations with Macaulay inverse systems of local Artinian
Gorenstein algebras: Hilbert functions, annihilator ideals, symmetric
subquotient decompositions, constructive deformations of dual generators,
and dual-generator normal forms."""

from .fields import Field, binomial_in_field
from .poly import DPPoly, PSElement, RingSpec, contract, dp_mul, \
    dp_power_of_linear, linear_substitute, pairing
from .apolarity import PartialFiltration, annihilator, \
    associated_graded_dims, hilbert_function, loewy_hilbert, \
    verify_graded_presentation, verify_ideal_presentation
from .decomposition import SymDecomp, component_dims, component_dual_dims, \
    component_generator_degrees, compressed_hilbert, dual_component_basis, \
    filtration_ideal, is_o_sequence, macaulay_bound, max_continuation, \
    overweight_check, symmetric_decomposition, verify_graded_ideal
from .constructions import ExtensionSpec, allowed_component_indices, \
    ancestor_data, connected_sum, connected_sum_hilbert, is_a_modification, \
    lift_to_modification, linear_extension, noncyclic_extension, \
    relatively_compressed_modification, restricted_components, \
    simple_deformation
from .normalform import CoordChange, adapted_coordinates, adjoint_apply, \
    detect_exotic, normalize, split_connected_summand
from .io import parse_poly, parse_ps, render_decomposition

__all__ = [
    "Field", "binomial_in_field",
    "DPPoly", "PSElement", "RingSpec", "contract", "dp_mul",
    "dp_power_of_linear", "linear_substitute", "pairing",
    "PartialFiltration", "annihilator", "associated_graded_dims",
    "hilbert_function", "loewy_hilbert", "verify_graded_presentation",
    "verify_ideal_presentation",
    "SymDecomp", "component_dims", "component_dual_dims",
    "component_generator_degrees", "compressed_hilbert",
    "dual_component_basis", "filtration_ideal", "is_o_sequence",
    "macaulay_bound", "max_continuation", "overweight_check",
    "symmetric_decomposition", "verify_graded_ideal",
    "ExtensionSpec", "allowed_component_indices", "ancestor_data",
    "connected_sum", "connected_sum_hilbert", "is_a_modification",
    "lift_to_modification", "linear_extension", "noncyclic_extension",
    "relatively_compressed_modification", "restricted_components",
    "simple_deformation",
    "CoordChange", "adapted_coordinates", "adjoint_apply", "detect_exotic",
    "normalize", "split_connected_summand",
    "parse_poly", "parse_ps", "render_decomposition",
]

__version__ = "0.1.0"
