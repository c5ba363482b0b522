"""Numerical toolkit for compact matrix Lie algebras: roots, Weyl groups,
Dynkin diagrams and bi-invariant geometry."""

from .algebra import (
    LieAlgebra,
    build_classical,
    center,
    direct_sum,
    is_compact_type,
    is_semisimple,
    killing_form,
    split_simple_ideals,
)
from .cartan import (
    CartanSubalgebra,
    RootSystem,
    centralizer_cartan,
    choose_positive,
    root_decomposition,
    root_system,
    standard_cartan,
)
from .dynkin import DynkinDiagram, cartan_matrix, classify, dynkin_diagram, render_ascii
from .errors import LieError
from .numlin import commutator, herm_eig, mat_exp, mat_log_principal
from .weyl import WeylGroup, generate, to_fundamental_domain

__version__ = "0.1.0"

__all__ = [
    "LieAlgebra", "build_classical", "center", "direct_sum", "is_compact_type",
    "is_semisimple", "killing_form", "split_simple_ideals",
    "CartanSubalgebra", "RootSystem", "centralizer_cartan", "choose_positive",
    "root_decomposition", "root_system", "standard_cartan",
    "DynkinDiagram", "cartan_matrix", "classify", "dynkin_diagram", "render_ascii",
    "LieError", "commutator", "herm_eig", "mat_exp", "mat_log_principal",
    "WeylGroup", "generate", "to_fundamental_domain",
]
