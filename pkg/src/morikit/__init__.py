"""Exact Mori, nef and movable cones of K3^[n]-type hyperkaehler varieties."""
__version__ = "0.1.0"

from .lattice import Lattice, LatticeError, build_standard, orthogonal_complement, pair, primitivize, signature
from .markman import (
    CurveClass,
    DivisorClass,
    ExtendedAlgebraicLattice,
    H2Coordinates,
    ValidationError,
    from_k3_hilbert,
    from_raw,
    h2_alg_basis,
    q_pair,
    theta_dual,
)
from .cones import RationalCone, dual_cone
from .enumeration import (
    EnumerationBudget,
    PolarizationOnWallError,
    box_oracle,
    default_budget,
    enumerate_theorem_set,
    extremal_search,
    k3_pseudoeffective,
    negative_extremal_rays,
)
from .chambers import (
    contains,
    exceptional_candidates,
    mori_cone,
    movable_chambers,
    movable_decomposition,
    nef_cone,
    reflect_into_movable,
    reflection,
)

__all__ = [name for name in dir() if not name.startswith("_")]
