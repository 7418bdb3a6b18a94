"""Exact ADO link invariants from braid closures, with fibredness analysis."""

from adoknot.cyclo import RingCtx, CycloNum, ring, in_zq2
from adoknot.symbolic import LaurentA, ScaledLaurent, AdoPoly
from adoknot.engine import BraidWord, AdoResult, compute_ado, calibrate
from adoknot.fibred import (
    TopData,
    FibredVerdict,
    PlumbingSpec,
    genus_bound,
    top_data,
    fibred_obstruction,
    combine_residues,
    plumbing_predict,
    homogeneous_predict,
    sqp_predict,
    hopf_closed_form,
)
from adoknot.catalog import KnotRecord, load_catalog, builtin_catalog

__all__ = [
    "RingCtx",
    "CycloNum",
    "ring",
    "in_zq2",
    "LaurentA",
    "ScaledLaurent",
    "AdoPoly",
    "BraidWord",
    "AdoResult",
    "compute_ado",
    "calibrate",
    "TopData",
    "FibredVerdict",
    "PlumbingSpec",
    "genus_bound",
    "top_data",
    "fibred_obstruction",
    "combine_residues",
    "plumbing_predict",
    "homogeneous_predict",
    "sqp_predict",
    "hopf_closed_form",
    "KnotRecord",
    "load_catalog",
    "builtin_catalog",
]
