"""Exact prequantisation and section counting for stacky polytopes."""

from .linalg import (
    FgAbGroup,
    IntMatrix,
    PresentedQuotient,
    SnfDecomposition,
    cokernel,
    hermite_normal_form,
    kernel_basis,
    smith_normal_form,
    solve_diophantine,
)
from .polytope import Halfspace, PolytopeReport, RatPolytope, analyze, enumerate_vertices, lattice_points
from .stacky import (
    DerivedTriple,
    StackyPolytope,
    StackyPolytopeError,
    TripleReport,
    delta_prime,
    derive_triple,
    polytope_of,
    verify_triple,
    weighted_projective,
)
from .quantization import (
    MainTheoremCheck,
    PrequantReport,
    SectionBasis,
    main_theorem_check,
    prequantization_exists,
    section_basis,
)
from .hrr import EulerResult, WpsDatum, euler_cp1b, euler_cpaa

__version__ = "0.1.0"
