"""irtensor: spherical/cartesian irreducible tensor algebra.

The package provides dense rank-n complex cartesian tensors over 3-space and,
on top of them, the standard spin-tensor bases, Wigner D-matrices, spherical,
bipolar, and tensor spherical harmonics, several Wigner-Eckart theorem
variants, closed-form derivatives of spherical harmonics to every order, and
electric/magnetic multipole machinery.  Every nontrivial construction is
paired with an independent numerical cross-check; run ``irtensor verify`` or
the pytest suite to execute them.
"""

__version__ = "0.1.0"

from .angular_momentum import HalfInt, cg, j_matrix, j_matrix_element
from .harmonics import (
    assoc_legendre,
    bipolar,
    legendre_multilinear,
    tensor_sh,
    theta,
    ylm,
    ylm_derivatives,
    ylm_linear_combo,
)
from .multipoles import (
    ChargeDistribution,
    CurrentDistribution,
    MultipoleSet,
    electric_moments,
    electric_potential,
    magnetic_moments,
    vector_potential,
)
from .spin_rotations import (
    Rotation,
    SpinOperator,
    rotation,
    spin_matrix,
    spin_squared,
    tensor_rotate,
    wigner_d,
)
from .standard_basis import (
    epsilon,
    irreducible_part,
    partial_basis,
    partial_decompose,
    sym_basis,
    sym_expand,
)
from .tensor_core import contract, outer, symmetrize, trace_pair
from .verify import run_verify
from .wigner_eckart import (
    OperatorSpec,
    ReducedME,
    cito_from_sito,
    momentum_sandwich,
    polarization_operator,
    reduced_me_gradient_op,
    reduced_me_jpow,
    reduced_me_ylm,
    sito_from_cito,
    stevens_factor,
    we_matrix_element,
)

__all__ = [
    "__version__",
    "HalfInt", "cg", "j_matrix", "j_matrix_element",
    "contract", "outer", "symmetrize", "trace_pair",
    "epsilon", "irreducible_part", "sym_basis", "sym_expand",
    "partial_basis", "partial_decompose",
    "Rotation", "SpinOperator", "rotation", "spin_matrix", "spin_squared",
    "tensor_rotate", "wigner_d",
    "assoc_legendre", "ylm", "legendre_multilinear", "bipolar",
    "ylm_linear_combo", "tensor_sh", "ylm_derivatives", "theta",
    "OperatorSpec", "ReducedME", "sito_from_cito", "cito_from_sito",
    "reduced_me_ylm", "reduced_me_jpow", "reduced_me_gradient_op",
    "we_matrix_element", "polarization_operator", "stevens_factor",
    "momentum_sandwich",
    "ChargeDistribution", "CurrentDistribution", "MultipoleSet",
    "electric_moments", "electric_potential", "magnetic_moments",
    "vector_potential",
    "run_verify",
]
