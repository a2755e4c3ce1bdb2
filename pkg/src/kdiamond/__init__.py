"""Truncated q-series arithmetic and congruence checks for broken k-diamond partitions."""

from .kernels import BACKEND
from .series import (
    EXACT,
    CoefficientRing,
    TruncatedSeries,
    dissect,
    divide,
    eq_up_to,
    from_terms,
    inverse,
    linear_combine,
    mul,
    power,
    reduce_mod,
    ring_mod,
    shift,
)
from .qproducts import (
    ProductFactor,
    ProductSpec,
    broken_diamond_gf,
    dissection_A,
    expand_spec,
    parse_spec,
    pochhammer,
    psi_series,
)
from .operators import HeckeContext, apply_T, apply_U, apply_V, eigen_check
from .oracle import DiamondConfig, count_broken_diamonds, validate_config
from .congruences import (
    ProgressionCongruence,
    gen_family,
    scan_congruences,
    verify_progression,
)
from .identities import identity, verify_identity

__version__ = "0.1.0"
