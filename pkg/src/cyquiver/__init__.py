"""Top-level package for cyquiver, graded quivers with potential and cyclic A∞ structures."""

__author__ = """Pavel P. Serikov"""
__email__ = 'pavel.p.serikov@gmail.com'
__version__ = '0.1.0'

from .exceptions import (
    CyQuiverError,
    QuiverError,
    ForbiddenCycleError,
    WordError,
    ExpressionError,
    DegreeError,
    IncompatibleSpaceError,
    InadmissiblePotentialError,
    InadmissibleTransformError,
    ConsistencyError,
)
from .quiver import (
    Arrow,
    GradedQuiver,
    ExtTable,
    OrientationChoice,
    validate_ext_table,
    quiver_from_ext_table,
    double_quiver,
    ext_table_from_quiver,
)
from .words import (
    CoordinateSpace,
    Word,
    CyclicWord,
    CyclicSeries,
    PathSeries,
    canonical_cyclic,
    grading,
    is_minimal,
    restrict,
)
from .expressions import parse_potential, print_potential, parse_path, print_path
from .calculus import (
    cyclic_derivative,
    right_cyclic_derivative,
    necklace_bracket,
    build_W_can,
    lift_potential,
    check_master,
    maurer_cartan_check,
    cyclic_identity_residual,
    MasterReport,
)
from .gauge import Automorphism, apply_automorphism, flow_automorphism, hamiltonian_flow, project_gauge
from .ainfty import (
    Pairing,
    StructureConstants,
    extract_products,
    check_ainfty,
    check_cyclicity_and_unit,
    potential_from_products,
)
from .dgla import bigraded_basis, differential_matrix, cohomology_ranks, psi_probe
