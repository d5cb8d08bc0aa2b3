"""Finite loop computations on Cayley tables.

Loops are validated Latin squares with the identity fixed at element 0.
The package decides equational identities by exhaustive assignment,
enumerates pseudoautomorphisms and autotopisms by backtracking, verifies
companion-nuclearity facts over exhaustively generated corpora, and
realizes the Bruck loop of symmetric positive definite matrices in
floating point.
"""

from .core import (
    FormatError,
    LoopError,
    LoopTable,
    NoIdentityError,
    NotLatinError,
    NotTwoSidedError,
    Permutation,
    dumps,
    load,
    loads,
    relabel,
    save,
    validate,
)
from .identities import (
    Identity,
    builtin,
    check_identity,
    eval_term,
    format_identity,
    format_term,
    holds,
    parse_identity,
)
from .nuclei import NucleusKind, is_subloop, nucleus, nucleus_via_pseudo
from .pseudo import (
    Autotopism,
    PseudoPair,
    all_autotopisms,
    as_autotopism,
    companions,
    compose,
    enumerate_pseudo,
    has_rip,
    has_wcip,
    invert,
    is_automorphism,
    is_autotopism,
    is_pseudo,
    iter_pseudo,
    middle_to_right,
    right_to_middle,
    rip_reflect,
    wcip_reflect,
)
from .constructions import (
    all_commutative_loops,
    all_loops,
    commutative_ip_loops,
    commutative_isotope,
    cyclic,
    dihedral,
    direct_product,
    filter_by,
    load_catalog,
    quaternion,
)
from .theorems import VerificationReport, format_report, verify_loop

__version__ = "0.1.0"
