"""Quantum GL_n, its Borel quotient, Ore localizations and flag-bundle charts."""

__version__ = "0.1.0"

from ._kernel import COMPILED  # noqa: E402
from .scalar import ScalarQ, SymbolicField, SpecializedField  # noqa: E402
from .qalgebra import (QAlgebra, NcPoly, TensorPoly, BorelPoly, get_algebra, comultiply, counit,  # noqa: E402
                       rho_borel, borel_project, parabolic_project, normal_form, reduce_word, diamond_check)
from .borel import BLoc, borel_antipode  # noqa: E402
from .qminor import (MinorSpec, GlElement, qdet, qminor, qminor_poly, antipode, laplace_check,  # noqa: E402
                     quasideterminant, submatrix_inverse)
from .orelocal import (OreSet, OreFraction, OreNotFound, ore_solve, ore_solve_linear, fraction_multiply,  # noqa: E402
                       fraction_add, fraction_equal, simplify, coact_fraction, coinvariant_check, compat_check,
                       nested_check)
from .gaussbundle import (Permutation, CellChart, Comodule, gauss_decompose, gauss_verify, gamma_sigma,  # noqa: E402
                          triangle_action, transition_matrix, cocycle_check, prop1_check)
from .report import Case, SuiteReport  # noqa: E402
from .suites import Config, run_suite, SUITES  # noqa: E402
from .expr import parse, print_expr, evaluate  # noqa: E402

__all__ = [
    "__version__", "COMPILED", "ScalarQ", "SymbolicField", "SpecializedField",
    "QAlgebra", "NcPoly", "TensorPoly", "BorelPoly", "get_algebra", "comultiply", "counit", "rho_borel",
    "borel_project", "parabolic_project", "normal_form", "reduce_word", "diamond_check",
    "BLoc", "borel_antipode", "MinorSpec", "GlElement", "qdet", "qminor", "qminor_poly", "antipode",
    "laplace_check", "quasideterminant", "submatrix_inverse",
    "OreSet", "OreFraction", "OreNotFound", "ore_solve", "ore_solve_linear", "fraction_multiply",
    "fraction_add", "fraction_equal", "simplify", "coact_fraction", "coinvariant_check", "compat_check",
    "nested_check", "Permutation", "CellChart", "Comodule", "gauss_decompose", "gauss_verify", "gamma_sigma",
    "triangle_action", "transition_matrix", "cocycle_check", "prop1_check",
    "Case", "SuiteReport", "Config", "run_suite", "SUITES", "parse", "print_expr", "evaluate",
]
