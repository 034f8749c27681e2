"""Spectra of H-products of commuting graphs through the Fiedler reduction.

For ``G = H-product(H; H_1..H_l)`` with factors of order ``n`` the relevant
matrix of ``G`` is an ``l x l`` block matrix whose off-diagonal blocks are
multiples of ``I_n`` (plus ``eta*J`` in the universal case). A common
eigenbasis ``u_0..u_{n-1}`` of the factors turns it into ``n`` reduced
``l x l`` problems, one per basis vector.

Universal adjacency (``alpha*A + beta*D + gamma*I + eta*J``) needs regular
factors and a basis whose first vector is the normalised all-ones vector;
the reduced matrix for that vector carries the extra ``n*eta`` terms.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import AlphaZero, InvalidInput, MultiplicityMismatch, NotRegular, OrderMismatch, FactorCountMismatch
from .fiedler import (
    CouplingSpec,
    FiedlerInput,
    Spectrum,
    reduced_spectra,
    coupled_spectrum,
)
from .graphs import (
    ADJACENCY,
    LAPLACIAN,
    SEIDEL,
    SIGNLESS_LAPLACIAN,
    Graph,
    UniversalParams,
    h_product,
    is_regular,
    universal_matrix,
)
from .linalg import COMMUTE_TOL, CommonBasis, EigenDecomposition, common_eigenbasis, eigvalsh

ORACLE_TOL = 1e-8

MATRIX_KINDS = ("adjacency", "laplacian", "signless_laplacian", "seidel", "universal")
FIXED_PARAMS = {
    "adjacency": ADJACENCY,
    "laplacian": LAPLACIAN,
    "signless_laplacian": SIGNLESS_LAPLACIAN,
    "seidel": SEIDEL,
}


@dataclass(frozen=True)
class HProductJob:
    H: Graph
    factors: tuple
    matrix_kind: str = "adjacency"
    params: Optional[UniversalParams] = None
    tolerance: float = ORACLE_TOL
    commute_tol: float = COMMUTE_TOL

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if self.matrix_kind not in MATRIX_KINDS:
            raise InvalidInput(f"unknown matrix kind {self.matrix_kind!r}")
        if (self.matrix_kind == "universal") != (self.params is not None):
            raise InvalidInput("params are required for, and only for, matrix kind 'universal'")
        _check_orders(self.H, self.factors)

    @property
    def universal_params(self) -> UniversalParams:
        return self.params if self.params is not None else FIXED_PARAMS[self.matrix_kind]


@dataclass(frozen=True)
class ReducedMatrix:
    t: int
    matrix: np.ndarray
    eigenvalues: np.ndarray


@dataclass
class SpectrumReport:
    structured: Spectrum
    reduced: list
    fiedler_input: FiedlerInput
    basis: CommonBasis
    oracle: Optional[Spectrum] = None
    max_abs_diff: Optional[float] = None
    timings: dict = field(default_factory=dict)

    def attach_oracle(self, oracle: Spectrum, elapsed: float) -> None:
        self.oracle = oracle
        self.max_abs_diff = compare_spectra(self.structured, oracle, np.inf)[1]
        self.timings["oracle_ms"] = 1e3 * elapsed


def _check_orders(H: Graph, factors: Sequence[Graph]) -> None:
    if len(factors) != H.order:
        raise FactorCountMismatch(f"H has {H.order} vertices but {len(factors)} factors were given")
    n = factors[0].order
    for j, F in enumerate(factors):
        if F.order != n:
            raise OrderMismatch(f"factor {j} has order {F.order}, expected {n}")


def _snap_integral(table: np.ndarray, mats: Sequence[np.ndarray]) -> np.ndarray:
    """Round eigenvalues of 0/1 adjacency matrices that sit within rounding of an integer.

    Eigenvalues of integer matrices are algebraic integers, so a rational one
    is an integer; snapping removes the last-ulp noise of the Rayleigh quotients.
    """
    scale = np.array([max(1.0, np.linalg.norm(A)) for A in mats])
    nearest = np.round(table)
    close = np.abs(table - nearest) <= 1e-12 * scale
    return np.where(close, nearest, table) + 0.0


def adjacency_input(H: Graph, factors: Sequence[Graph], tol: float = COMMUTE_TOL):
    """Fiedler input whose coupled matrix is ``A(H-product)``; returns ``(input, basis)``."""
    _check_orders(H, factors)
    adj = [F.adjacency() for F in factors]
    basis = common_eigenbasis(adj, tol=tol)
    basis = CommonBasis(basis.U, _snap_integral(basis.table, adj))
    decomps = tuple(basis.decomposition(j) for j in range(len(factors)))
    inp = FiedlerInput(tuple(adj), decomps, factors[0].order, CouplingSpec(H.adjacency()))
    return inp, basis


def universal_input(
    H: Graph, factors: Sequence[Graph], params: UniversalParams, tol: float = COMMUTE_TOL
):
    """Fiedler input whose coupled matrix is ``U(H-product)``; returns ``(input, basis)``.

    Diagonal of the reduced matrix for basis vector ``i``::

        alpha*lam[i, j] + (r_j + deg_H(j))*beta + gamma   (+ n*eta when i = 0)

    and off-diagonal ``alpha*rho[j, k]`` (``+ n*eta`` when ``i = 0``), with
    ``lam[0, j] = r_j`` on the all-ones vector.
    """
    _check_orders(H, factors)
    a, b, g, e = params.as_tuple()
    if a == 0:
        raise AlphaZero("universal spectrum requires alpha != 0")
    degs = []
    for j, F in enumerate(factors):
        r = is_regular(F)
        if r is None:
            raise NotRegular(j)
        degs.append(r)
    n, l = factors[0].order, H.order
    rho = H.adjacency()
    deg_H = rho.sum(axis=1)
    adj = [F.adjacency() for F in factors]
    basis = common_eigenbasis(adj, seed_vector=np.ones(n) / np.sqrt(n), tol=tol)
    basis = CommonBasis(basis.U, _snap_integral(basis.table, adj))

    shift = (np.array(degs) + deg_H) * b + g
    table = a * basis.table + shift
    table[0] = a * np.array(degs, dtype=float) + shift + n * e

    blocks = tuple(universal_matrix(F, params) + b * deg_H[j] * np.eye(n) for j, F in enumerate(factors))
    decomps = tuple(EigenDecomposition(table[:, j].copy(), basis.U) for j in range(l))
    ones_coupling = a * rho + n * e * (np.ones((l, l)) - np.eye(l))
    inp = FiedlerInput(
        blocks,
        decomps,
        n,
        CouplingSpec(a * rho),
        index_couplings={0: CouplingSpec(ones_coupling)},
    )
    return inp, basis


def _report(inp: FiedlerInput, basis: CommonBasis, started: float) -> SpectrumReport:
    mats, w = reduced_spectra(inp)
    spectrum = coupled_spectrum(inp)
    elapsed = time.perf_counter() - started
    reduced = [ReducedMatrix(t, mats[t], w[t]) for t in range(inp.k)]
    return SpectrumReport(spectrum, reduced, inp, basis, timings={"structured_ms": 1e3 * elapsed})


def adjacency_spectrum_hproduct(
    H: Graph, factors: Sequence[Graph], tol: float = COMMUTE_TOL, oracle: bool = False
) -> SpectrumReport:
    """Adjacency spectrum of the H-product of pairwise commuting factors.

    Regularity is not required. Raises :class:`NotCommuting` rather than
    falling back to a dense solve.
    """
    started = time.perf_counter()
    report = _report(*adjacency_input(H, factors, tol), started)
    if oracle:
        _run_oracle(report, HProductJob(H, factors, "adjacency", commute_tol=tol))
    return report


def universal_spectrum_hproduct(
    H: Graph,
    factors: Sequence[Graph],
    params: UniversalParams,
    tol: float = COMMUTE_TOL,
    oracle: bool = False,
) -> SpectrumReport:
    """Universal-adjacency spectrum of the H-product of regular commuting factors."""
    started = time.perf_counter()
    report = _report(*universal_input(H, factors, params, tol), started)
    if oracle:
        _run_oracle(report, HProductJob(H, factors, "universal", params, commute_tol=tol))
    return report


def laplacian_spectrum_hproduct(H, factors, tol=COMMUTE_TOL, oracle=False) -> SpectrumReport:
    return universal_spectrum_hproduct(H, factors, LAPLACIAN, tol, oracle)


def signless_laplacian_spectrum_hproduct(H, factors, tol=COMMUTE_TOL, oracle=False) -> SpectrumReport:
    return universal_spectrum_hproduct(H, factors, SIGNLESS_LAPLACIAN, tol, oracle)


def seidel_spectrum_hproduct(H, factors, tol=COMMUTE_TOL, oracle=False) -> SpectrumReport:
    return universal_spectrum_hproduct(H, factors, SEIDEL, tol, oracle)


# -- dense ground truth -------------------------------------------------------


def job_matrix(job: HProductJob) -> np.ndarray:
    """The job's matrix of the assembled product graph."""
    return universal_matrix(h_product(job.H, job.factors), job.universal_params)


def dense_oracle_spectrum(job: HProductJob) -> Spectrum:
    """Spectrum by eigensolving the full ``(n*l) x (n*l)`` matrix. Works unconditionally."""
    return Spectrum(eigvalsh(job_matrix(job)))


def _run_oracle(report: SpectrumReport, job: HProductJob) -> None:
    started = time.perf_counter()
    spectrum = dense_oracle_spectrum(job)
    report.attach_oracle(spectrum, time.perf_counter() - started)


def compare_spectra(a, b, tol: float = ORACLE_TOL) -> tuple:
    """``(matched, max_abs_diff)`` between two multisets, compared sorted descending."""
    va = np.sort(np.asarray(getattr(a, "values", a), dtype=float))[::-1]
    vb = np.sort(np.asarray(getattr(b, "values", b), dtype=float))[::-1]
    if va.shape != vb.shape:
        raise MultiplicityMismatch(f"spectra have {va.size} and {vb.size} values")
    diff = float(np.max(np.abs(va - vb))) if va.size else 0.0
    return diff <= tol, diff


def structured_spectrum(job: HProductJob, oracle: bool = False) -> SpectrumReport:
    """Dispatch a job to the matching spectrum function."""
    if job.matrix_kind == "adjacency":
        return adjacency_spectrum_hproduct(job.H, job.factors, job.commute_tol, oracle)
    return universal_spectrum_hproduct(
        job.H, job.factors, job.universal_params, job.commute_tol, oracle
    )
