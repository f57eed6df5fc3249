"""Bredon homology of finite simplicial G-sets with covariant coefficients."""

from .pipelines import (
    cellular_chain_complex,
    coend_homology,
    coequalizer_coend,
    fixed_point_pipeline,
    quotient_pipeline,
    verify_theorem,
)

__all__ = [
    "cellular_chain_complex",
    "coend_homology",
    "coequalizer_coend",
    "fixed_point_pipeline",
    "quotient_pipeline",
    "verify_theorem",
]
