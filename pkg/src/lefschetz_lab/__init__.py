"""Exact transversal symplectic Hodge calculus on Lie-algebra foliation models."""

from .cohomology import CohomologyEngine, PreconditionError
from .exterior import Form, Frame, Multivector, SymplecticStructure, contract, integrate, wedge
from .foliated import (BasicClosureError, LieModel, NotIsoparametricError, Operators,
                       basic_basis, ce_differential, lie_derivative, mean_curvature,
                       operator_matrix, validate_model)
from .identities import run_identities
from .modelfile import ModelFileError, dump_model, load_model, parse_model
from .models import CATALOG_NAMES, get_model
from .sl2 import (L, Lambda, A, is_primitive, lefschetz_power_matrix, primitive_basis,
                  primitive_decompose)

__version__ = "0.1.0"

__all__ = [
    "A", "BasicClosureError", "CATALOG_NAMES", "CohomologyEngine", "Form", "Frame", "L",
    "Lambda", "LieModel", "ModelFileError", "Multivector", "NotIsoparametricError",
    "Operators", "PreconditionError", "SymplecticStructure", "basic_basis",
    "ce_differential", "contract", "dump_model", "get_model", "integrate", "is_primitive",
    "lefschetz_power_matrix", "lie_derivative", "load_model", "mean_curvature",
    "operator_matrix", "parse_model", "primitive_basis", "primitive_decompose",
    "run_identities", "validate_model", "wedge",
]
