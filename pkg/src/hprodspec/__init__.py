"""Spectra of H-products of commuting graphs by block reduction.

The heavy lifting is in :mod:`hprodspec.fiedler` (the reduction of a coupled
block-symmetric matrix to small reduced matrices) and
:mod:`hprodspec.spectra` (its application to H-products).
"""

from .fiedler import (
    CouplingSpec,
    FiedlerInput,
    Spectrum,
    assemble_coupled,
    coupled_eigenpairs,
    coupled_spectrum,
    reduced_matrix,
)
from .graphs import Graph, UniversalParams, h_product, universal_matrix
from .linalg import CommonBasis, EigenDecomposition, common_eigenbasis, commutator_norm, eigh
from .spectra import (
    HProductJob,
    adjacency_spectrum_hproduct,
    compare_spectra,
    dense_oracle_spectrum,
    laplacian_spectrum_hproduct,
    seidel_spectrum_hproduct,
    signless_laplacian_spectrum_hproduct,
    universal_spectrum_hproduct,
)

__version__ = "0.1.0"
