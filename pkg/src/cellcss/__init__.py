"""Cell complexes, their homology, and the qudit CSS codes they define."""
from .accformat import load_acc, parse_acc, serialize_acc
from .cellcomplex import (
    BoundaryCircle,
    CellComplex,
    GluingSpec,
    OrientedCellRef,
    Ref,
    builtin,
    connected_components,
    direct_sum,
    lift_classical,
    quotient,
    tensor_product_1d,
    validate,
)
from .chaincomplex import ChainComplex, change_ring, dual, from_cell_complex, tensor, verify
from .csscode import (
    ClassicalCode,
    CssCode,
    PauliVector,
    classify,
    combined_syndrome,
    commutes,
    css_from_chain,
    distance_x,
    distance_z,
    render_stabilizers,
    syndrome_x,
    syndrome_z,
)
from .errors import CellCssError
from .homology import h0_components, homology_mod_oracle, homology_z, logical_space
from .intlinalg import IntMatrix, ModMatrix, SmithForm, hermite_form, image_basis, kernel_basis, reduce_mod, smith_form, solve_in_lattice

__version__ = "0.1.0"
