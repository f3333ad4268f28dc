"""Exact Hochschild and singular Hochschild cohomology of finite-dimensional
algebras and isolated hypersurface singularities."""
from .algebra import FinDimAlgebra, FinDimCommAlg, enveloping, make_algebra, truncated_polynomial_algebra
from .complexes import CochainComplex, ChainMap, cone, hom_complex, koszul, truncate
from .formats import format_algebra, parse_algebra
from .groebner import groebner, quotient_algebra
from .hochschild import HochschildClass, cup_product, hh_basis, hh_dims
from .hypersurface import (
    compare_singularities, fingerprint, milnor_algebra, quasi_homogeneous_weights,
    singularity_report, stable_hh_dims, tyurina_algebra,
)
from .linalg import GF, QQ, Field, Matrix
from .mfactor import MatrixFactorization, make_mf, mf_hom_cohomology, parse_mf
from .poly import GREVLEX, MonomialOrder, MultiPoly, parse_poly
from .resolutions import (
    FreeResolution, bar_resolution, free_resolution, load_resolution,
    truncated_poly_periodic_resolution,
)
from .tate import (
    SingularClass, TateEngine, degree_zero_algebra, hhsg_dim, hhsg_product,
    stable_ext_dim, syzygy_identification_check,
)

__version__ = "0.1.0"

__all__ = [
    "FinDimAlgebra", "FinDimCommAlg", "enveloping", "make_algebra", "truncated_polynomial_algebra",
    "CochainComplex", "ChainMap", "cone", "hom_complex", "koszul", "truncate",
    "format_algebra", "parse_algebra", "groebner", "quotient_algebra",
    "HochschildClass", "cup_product", "hh_basis", "hh_dims",
    "compare_singularities", "fingerprint", "milnor_algebra", "quasi_homogeneous_weights",
    "singularity_report", "stable_hh_dims", "tyurina_algebra",
    "GF", "QQ", "Field", "Matrix",
    "MatrixFactorization", "make_mf", "mf_hom_cohomology", "parse_mf",
    "GREVLEX", "MonomialOrder", "MultiPoly", "parse_poly",
    "FreeResolution", "bar_resolution", "free_resolution", "load_resolution",
    "truncated_poly_periodic_resolution",
    "SingularClass", "TateEngine", "degree_zero_algebra", "hhsg_dim", "hhsg_product",
    "stable_ext_dim", "syzygy_identification_check",
]
