"""Exact-arithmetic toolkit for a Toeplitz-algebra multipullback model of
complex projective space and its covering lattice.
"""

from .circle_hopf import CirclePoly, CircleTensor, Scalar
from .classical_cpn import (
    ChartPoint,
    CoveringSet,
    chart,
    chart_inv,
    classical_freeness,
    lattice_L,
    lattice_R,
    transition,
    transition_agreement,
    transition_inverse,
)
from .multipullback import (
    ExtensionError,
    FreenessEvidence,
    IncompatiblePartialFamily,
    KernelIdeal,
    PullbackElement,
    SlotFunctional,
    extend,
    is_member,
    project,
    sample_kernel_intersection,
    verify_freeness,
    witness_TmI,
    witness_xI,
)
from .order_lattice import (
    AntichainForm,
    FiniteDistributiveLattice,
    FreenessReport,
    LatticeError,
    Poset,
    antichain_count,
    birkhoff_transform,
    check_freeness_criterion,
    fdl_enumerate,
    fdl_join,
    fdl_leq,
    fdl_meet,
    join_irreducibles,
    meet_irreducibles,
    upper_sets,
)
from .tensor_gluing import (
    QuotientClass,
    TensorElement,
    chi,
    chi_inv,
    cocycle_check,
    diagonal_coaction,
    embed_toeplitz,
    flip,
    kernel_image_check,
    lift_circle,
    phi,
    project_slots,
    psi,
    psi_ij,
    psi_ij_inv,
    psi_involution_check,
    quotient_class,
    slot_for,
    slot_symbol,
)
from .toeplitz_core import CompactPart, ToeplitzElement, gauge_coaction, symbol_map, toeplitz_lift

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
