"""Algebraic soft-decision decoding of Reed-Solomon codes over BEC and BSC.

Modules
-------
algebra
    GF(2^m) arithmetic, evaluation-map RS encoding, erasure decoding.
channels
    BEC, BSC, 1-bit flipped BSC and modulation-erasure channels.
mas
    Multiplicity assignment, score/cost and the sufficient condition.
regions
    Guaranteed decoding radii and worst-case patterns.
kv
    Small-field interpolation and root-finding list decoder.
sim
    Monte Carlo and exact frame error rates, bounds.
"""

from .algebra import CodeParams, FieldContext, Poly, encode, erasure_decode, gf_inv, gf_mul, make_field, rs_code
from .channels import ChannelSpec, ReceivedWord, TypeProfile, transmit, type_profile
from .errors import DecodingFailure, NotApplicableError, ResourceError
from .kv import BivariatePoly, CandidateList, asd_decode, interpolate, y_roots
from .mas import (
    BscMas,
    DecodabilityReport,
    MasProfile,
    MultiplicityMatrix,
    bsc_assign,
    eta,
    pmas_assign,
    pmas_matrix,
    score_cost,
    sufficient,
)
from .regions import (
    BecRadius,
    BscRadiusSolution,
    WorstCasePattern,
    baseline_radii,
    bec_radius,
    bec_radius_oracle,
    bec_undecodable_bound,
    bsc_optimal,
    bsc_radius_at,
    mod_radius,
    worst_pattern_bec,
    worst_pattern_bsc,
)
from .sim import FerEstimate, Strategy, TrialConfig, exact_fer_bec, fer_bounds, run_fer

__version__ = "0.1.0"

__all__ = [
    "CodeParams",
    "FieldContext",
    "Poly",
    "encode",
    "erasure_decode",
    "gf_inv",
    "gf_mul",
    "make_field",
    "rs_code",
    "ChannelSpec",
    "ReceivedWord",
    "TypeProfile",
    "transmit",
    "type_profile",
    "DecodingFailure",
    "NotApplicableError",
    "ResourceError",
    "BivariatePoly",
    "CandidateList",
    "asd_decode",
    "interpolate",
    "y_roots",
    "BscMas",
    "DecodabilityReport",
    "MasProfile",
    "MultiplicityMatrix",
    "bsc_assign",
    "eta",
    "pmas_assign",
    "pmas_matrix",
    "score_cost",
    "sufficient",
    "BecRadius",
    "BscRadiusSolution",
    "WorstCasePattern",
    "baseline_radii",
    "bec_radius",
    "bec_radius_oracle",
    "bec_undecodable_bound",
    "bsc_optimal",
    "bsc_radius_at",
    "mod_radius",
    "worst_pattern_bec",
    "worst_pattern_bsc",
    "FerEstimate",
    "Strategy",
    "TrialConfig",
    "exact_fer_bec",
    "fer_bounds",
    "run_fer",
]
