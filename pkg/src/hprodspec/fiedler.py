"""Generalized Fiedler reduction for coupled block-symmetric matrices.

Given symmetric blocks ``A_1..A_n`` with orthonormal eigenpairs
``(lam[i, j], u[i, j])`` and a symmetric coupling ``rho``, the matrix ``C``
with diagonal blocks ``A_j`` and off-diagonal blocks ``rho[i, j] U_i U_j^T``
(``U_j`` = first ``k`` eigenvectors of block ``j``) has spectrum

* ``lam[i, j]`` for ``i >= k`` (leftover pairs, untouched by the coupling), and
* the eigenvalues of the ``n x n`` reduced matrices ``C_t``, ``t < k``, with
  diagonal ``lam[t, :]`` and off-diagonal ``rho``.

So one eigenproblem of size ``sum(m_j)`` becomes ``k`` problems of size ``n``.
``C`` itself is never eigensolved here; :func:`assemble_coupled` exists for
checking against a dense solve.

Indices are 0-based: ``t`` runs over ``0..k-1``. The coupling may differ per
index ``t`` through ``index_couplings``; the reduction holds index by index,
which is what the universal-adjacency case needs (the ``J`` term only couples
along the all-ones direction).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, NamedTuple, Optional, Sequence

import numpy as np

from .errors import IndexOutOfRange, InvalidInput
from .linalg import RESIDUAL_TOL, EigenDecomposition, as_symmetric, eigh

GROUP_TOL = 1e-8


@dataclass(frozen=True)
class CouplingSpec:
    """Symmetric coupling scalars; the diagonal is ignored and stored as 0."""

    rho: np.ndarray

    def __post_init__(self):
        rho = np.array(self.rho, dtype=float)
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1] or rho.shape[0] < 1:
            raise InvalidInput(f"coupling must be a non-empty square matrix, got shape {rho.shape}")
        if not np.all(np.isfinite(rho)):
            raise InvalidInput("coupling contains NaN or Inf")
        np.fill_diagonal(rho, 0.0)
        if not np.array_equal(rho, rho.T):
            raise InvalidInput("coupling must be exactly symmetric")
        rho.setflags(write=False)
        object.__setattr__(self, "rho", rho)

    @property
    def block_count(self) -> int:
        return self.rho.shape[0]


def path_coupling(rhos: Sequence[float]) -> CouplingSpec:
    """Tridiagonal coupling: block ``j`` talks only to ``j+1`` with weight ``rhos[j]``."""
    n = len(rhos) + 1
    rho = np.zeros((n, n))
    for j, r in enumerate(rhos):
        rho[j, j + 1] = rho[j + 1, j] = r
    return CouplingSpec(rho)


@dataclass(frozen=True)
class FiedlerInput:
    """Blocks, their eigendecompositions, the coupling rank ``k`` and the coupling.

    The column order of each ``decomps[j]`` is authoritative: the first ``k``
    columns form ``U_j`` and column ``t`` of every block is paired with the
    same reduced matrix ``C_t``.
    """

    blocks: tuple
    decomps: tuple
    k: int
    coupling: CouplingSpec
    index_couplings: Mapping[int, CouplingSpec] = field(default_factory=dict)
    check_tol: float = RESIDUAL_TOL

    def __post_init__(self):
        blocks = tuple(as_symmetric(B) for B in self.blocks)
        decomps = tuple(self.decomps)
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "decomps", decomps)
        n = len(blocks)
        if n == 0 or len(decomps) != n:
            raise InvalidInput(f"need one decomposition per block ({n} blocks, {len(decomps)} decomps)")
        if self.coupling.block_count != n:
            raise InvalidInput(f"coupling is for {self.coupling.block_count} blocks, got {n}")
        sizes = [B.shape[0] for B in blocks]
        if not 1 <= self.k <= min(sizes):
            raise InvalidInput(f"k={self.k} must lie in 1..{min(sizes)}")
        for t, cs in self.index_couplings.items():
            if not 0 <= t < self.k:
                raise InvalidInput(f"index coupling for t={t} outside 0..{self.k - 1}")
            if cs.block_count != n:
                raise InvalidInput(f"index coupling for t={t} has wrong block count")
        for j, (B, d) in enumerate(zip(blocks, decomps)):
            m = B.shape[0]
            if d.vectors.shape != (m, m) or len(d.values) != m:
                raise InvalidInput(f"decomposition {j} does not match block size {m}")
            if np.max(np.abs(d.vectors.T @ d.vectors - np.eye(m))) > self.check_tol:
                raise InvalidInput(f"eigenvectors of block {j} are not orthonormal")
            bound = self.check_tol * max(1.0, float(np.linalg.norm(B)))
            worst = float(np.max(d.residuals(B)))
            if worst > bound:
                raise InvalidInput(f"decomposition {j} has eigen-residual {worst:.3g} > {bound:.3g}")

    @property
    def block_count(self) -> int:
        return len(self.blocks)

    @property
    def sizes(self) -> list:
        return [B.shape[0] for B in self.blocks]

    @property
    def dimension(self) -> int:
        return sum(self.sizes)

    def offsets(self) -> np.ndarray:
        return np.concatenate([[0], np.cumsum(self.sizes)])

    def coupling_at(self, t: int) -> np.ndarray:
        cs = self.index_couplings.get(t, self.coupling)
        return cs.rho

    def eigenvalue_table(self) -> np.ndarray:
        """``(k, n)`` array whose row ``t`` is the diagonal of ``C_t``."""
        return np.column_stack([d.values[: self.k] for d in self.decomps])


def from_blocks(blocks: Sequence, coupling: CouplingSpec, k: int, **kwargs) -> FiedlerInput:
    """Input whose decompositions come from :func:`eigh` (descending order)."""
    return FiedlerInput(tuple(blocks), tuple(eigh(B) for B in blocks), k, coupling, **kwargs)


def two_block_input(A, B, rho: float) -> FiedlerInput:
    """The classical two-block rank-one coupling ``[[A, rho u v^T], [rho v u^T, B]]``
    with ``u``, ``v`` the leading eigenvectors."""
    return from_blocks([A, B], CouplingSpec([[0.0, rho], [rho, 0.0]]), k=1)


def random_fiedler_input(
    rng: np.random.Generator,
    n_range=(2, 5),
    m_range=(2, 6),
    low: float = -2.0,
    high: float = 2.0,
    coupling: Optional[np.ndarray] = None,
) -> FiedlerInput:
    """Random blocks and coupling with entries uniform in ``[low, high]``."""
    n = int(rng.integers(n_range[0], n_range[1] + 1))
    sizes = rng.integers(m_range[0], m_range[1] + 1, size=n)
    blocks = []
    for m in sizes:
        X = rng.uniform(low, high, size=(m, m))
        blocks.append(np.triu(X) + np.triu(X, 1).T)
    if coupling is None:
        R = rng.uniform(low, high, size=(n, n))
        coupling = np.triu(R, 1) + np.triu(R, 1).T
    k = int(rng.integers(1, min(sizes) + 1))
    return from_blocks(blocks, CouplingSpec(coupling), k)


# -- operations -------------------------------------------------------------


def assemble_coupled(inp: FiedlerInput) -> np.ndarray:
    """The full coupled matrix ``C`` (dense, for verification)."""
    off = inp.offsets()
    C = np.zeros((inp.dimension, inp.dimension))
    n, k = inp.block_count, inp.k
    Us = [d.vectors[:, :k] for d in inp.decomps]
    weights = np.stack([inp.coupling_at(t) for t in range(k)])  # (k, n, n)
    for j, B in enumerate(inp.blocks):
        C[off[j] : off[j + 1], off[j] : off[j + 1]] = B
    for i in range(n):
        for j in range(i + 1, n):
            w = weights[:, i, j]
            if not np.any(w):
                continue
            blk = (Us[i] * w) @ Us[j].T
            C[off[i] : off[i + 1], off[j] : off[j + 1]] = blk
            C[off[j] : off[j + 1], off[i] : off[i + 1]] = blk.T
    return C


def reduced_matrix(t: int, inp: FiedlerInput) -> np.ndarray:
    """``C_t``: diagonal ``lam[t, :]``, off-diagonal the coupling at index ``t``."""
    if not 0 <= t < inp.k:
        raise IndexOutOfRange(f"t={t} outside 0..{inp.k - 1}")
    C = np.array(inp.coupling_at(t), dtype=float)
    C[np.diag_indices_from(C)] = [d.values[t] for d in inp.decomps]
    return C


def reduced_matrices(inp: FiedlerInput) -> np.ndarray:
    """All ``k`` reduced matrices stacked into a ``(k, n, n)`` array."""
    return np.stack([reduced_matrix(t, inp) for t in range(inp.k)])


class Reduced(NamedTuple):
    t: int
    s: int

    def __str__(self):
        return f"reduced(t={self.t},s={self.s})"


class Leftover(NamedTuple):
    block: int
    index: int

    def __str__(self):
        return f"leftover(block={self.block},i={self.index})"


class SpectrumEntry(NamedTuple):
    value: float
    multiplicity: int
    provenance: tuple


@dataclass(frozen=True)
class Spectrum:
    """Multiset of eigenvalues, raw values kept in descending order.

    ``provenance[i]`` says where ``values[i]`` came from. :attr:`entries`
    groups values lying within ``tol`` of a group's largest member.
    """

    values: np.ndarray
    provenance: tuple = ()
    tol: float = GROUP_TOL

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float).reshape(-1)
        prov = tuple(self.provenance) or (None,) * len(values)
        if len(prov) != len(values):
            raise InvalidInput("provenance length differs from value count")
        order = np.argsort(-values, kind="stable")
        object.__setattr__(self, "values", values[order])
        object.__setattr__(self, "provenance", tuple(prov[i] for i in order))

    def __len__(self) -> int:
        return len(self.values)

    @property
    def entries(self) -> list:
        out = []
        start = 0
        vals = self.values
        for i in range(1, len(vals) + 1):
            if i == len(vals) or vals[start] - vals[i] > self.tol:
                out.append(SpectrumEntry(float(vals[start]), i - start, self.provenance[start:i]))
                start = i
        return out

    def multiplicity(self, value: float, tol: Optional[float] = None) -> int:
        tol = self.tol if tol is None else tol
        return int(np.sum(np.abs(self.values - value) <= tol))


def _solve_reduced(mats: np.ndarray, vectors: bool):
    # batched LAPACK call over the (k, n, n) stack; reverse to descending order
    if vectors:
        w, V = np.linalg.eigh(mats)
        return w[:, ::-1], V[:, :, ::-1]
    return np.linalg.eigvalsh(mats)[:, ::-1], None


def _leftovers(inp: FiedlerInput):
    vals, tags = [], []
    for j, d in enumerate(inp.decomps):
        for i in range(inp.k, d.size):
            vals.append(d.values[i])
            tags.append(Leftover(j, i))
    return vals, tags


def reduced_spectra(inp: FiedlerInput) -> tuple:
    """``(mats, eigenvalues)`` with ``eigenvalues[t]`` the descending spectrum of ``C_t``."""
    mats = reduced_matrices(inp)
    w, _ = _solve_reduced(mats, vectors=False)
    return mats, w


def coupled_spectrum(inp: FiedlerInput, tol: float = GROUP_TOL) -> Spectrum:
    """Spectrum of the coupled matrix without forming it."""
    _, w = reduced_spectra(inp)
    vals, tags = _leftovers(inp)
    for t in range(inp.k):
        for s in range(inp.block_count):
            vals.append(w[t, s])
            tags.append(Reduced(t, s))
    return Spectrum(np.array(vals), tuple(tags), tol)


class EigenPair(NamedTuple):
    value: float
    vector: np.ndarray
    provenance: object


def coupled_eigenpairs(inp: FiedlerInput) -> list:
    """All ``sum(m_j)`` eigenpairs of the coupled matrix, sorted by value descending.

    Reduced pairs stack ``w[j] * u[t, j]`` over the blocks for each unit
    eigenvector ``w`` of ``C_t``; leftover pairs are ``u[i, j]`` padded with
    zeros. Both kinds come out unit-norm.
    """
    off = inp.offsets()
    mats = reduced_matrices(inp)
    w, W = _solve_reduced(mats, vectors=True)
    pairs = []
    for t in range(inp.k):
        cols = [d.vectors[:, t] for d in inp.decomps]
        for s in range(inp.block_count):
            v = np.concatenate([W[t, j, s] * cols[j] for j in range(inp.block_count)])
            pairs.append(EigenPair(float(w[t, s]), v / np.linalg.norm(v), Reduced(t, s)))
    for j, d in enumerate(inp.decomps):
        for i in range(inp.k, d.size):
            v = np.zeros(inp.dimension)
            v[off[j] : off[j + 1]] = d.vectors[:, i]
            pairs.append(EigenPair(float(d.values[i]), v, Leftover(j, i)))
    pairs.sort(key=lambda p: -p.value)
    return pairs
