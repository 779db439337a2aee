"""Exact eps-SL2-tilings of Z^n: classification, construction, verification."""

from .descent import (
    DescentCertificate,
    SliceSequence,
    extend_sequence,
    nonexistence_scan,
    tiling_to_slices,
    uniqueness_scan,
)
from .engine import (
    ViolationReport,
    build_tiling,
    check_constant_slices,
    cube_consistency,
    flip_tiling,
    verify_diagonal_relation,
    verify_window,
)
from .fibonacci import check_odd_fib_identity, fib, staircase_plane, staircase_value
from .frontier import Frontier, complete_frontier, reflect_plane
from .lattice import (
    SignatureMatrix,
    TilingWindow,
    Window,
    dumps_tiling,
    get_entry,
    loads_tiling,
    make_window,
)
from .signatures import (
    SignVector,
    enumerate_admissible,
    flip,
    is_admissible,
    orbit_of_anti,
    signature_to_signs,
)

__all__ = [
    "DescentCertificate",
    "Frontier",
    "SignVector",
    "SignatureMatrix",
    "SliceSequence",
    "TilingWindow",
    "ViolationReport",
    "Window",
    "build_tiling",
    "check_constant_slices",
    "check_odd_fib_identity",
    "complete_frontier",
    "cube_consistency",
    "dumps_tiling",
    "enumerate_admissible",
    "extend_sequence",
    "fib",
    "flip",
    "flip_tiling",
    "get_entry",
    "is_admissible",
    "loads_tiling",
    "make_window",
    "nonexistence_scan",
    "orbit_of_anti",
    "reflect_plane",
    "signature_to_signs",
    "staircase_plane",
    "staircase_value",
    "tiling_to_slices",
    "uniqueness_scan",
    "verify_diagonal_relation",
    "verify_window",
]
