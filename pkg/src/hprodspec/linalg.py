"""Dense symmetric eigensolves and simultaneous diagonalization.

Symmetric matrices are plain ``numpy`` arrays; :func:`as_symmetric` is the
gatekeeper that every public entry point runs its inputs through.
Eigenvalues are sorted in descending order throughout the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from .errors import NonFinite, NonSymmetric, NotCommuting, SeedNotEigenvector, SizeMismatch

SYM_TOL = 1e-12
COMMUTE_TOL = 1e-10
DEGENERACY_TOL = 1e-8
RESIDUAL_TOL = 1e-8


def as_symmetric(A, sym_tol: float = SYM_TOL) -> np.ndarray:
    """Validate ``A`` as a real symmetric matrix and return it as float64.

    The returned array is exactly symmetric: the tolerated asymmetry is
    averaged away.
    """
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] < 1:
        raise SizeMismatch(f"expected a non-empty square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise NonFinite("matrix contains NaN or Inf")
    scale = max(1.0, float(np.max(np.abs(A))))
    asym = float(np.max(np.abs(A - A.T)))
    if asym > sym_tol * scale:
        raise NonSymmetric(f"max |A - A^T| = {asym:.3g} exceeds {sym_tol:g} * {scale:.3g}")
    if asym:
        A = 0.5 * (A + A.T)
    return A


def fix_signs(V: np.ndarray) -> np.ndarray:
    """Flip columns so the entry of largest magnitude is positive.

    Entries within a relative 1e-12 of the column maximum count as ties and
    the lowest index wins, so Hadamard-like vectors get a stable sign.
    """
    V = np.array(V, dtype=float, copy=True)
    if V.size == 0:
        return V
    mags = np.abs(V)
    top = mags.max(axis=0)
    tied = mags >= top * (1 - 1e-12)
    lead = np.argmax(tied, axis=0)
    signs = np.sign(V[lead, np.arange(V.shape[1])])
    signs[signs == 0] = 1.0
    return V * signs


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenpairs of a symmetric matrix; column ``i`` of ``vectors`` pairs with ``values[i]``.

    :func:`eigh` returns values in descending order. Callers that build a
    decomposition by hand (e.g. from a common basis) may use any order.
    """

    values: np.ndarray
    vectors: np.ndarray

    @property
    def size(self) -> int:
        return len(self.values)

    def residuals(self, A) -> np.ndarray:
        """Per-column ``||A v_i - values[i] v_i||_2``."""
        A = np.asarray(A, dtype=float)
        return np.linalg.norm(A @ self.vectors - self.vectors * self.values, axis=0)


def eigh(A, sym_tol: float = SYM_TOL) -> EigenDecomposition:
    """Full eigendecomposition of a symmetric matrix, values descending."""
    A = as_symmetric(A, sym_tol)
    w, V = np.linalg.eigh(A)
    return EigenDecomposition(values=w[::-1].copy(), vectors=fix_signs(V[:, ::-1]))


def eigvalsh(A, sym_tol: float = SYM_TOL) -> np.ndarray:
    """Eigenvalues only, descending."""
    return np.linalg.eigvalsh(as_symmetric(A, sym_tol))[::-1].copy()


def commutator_norm(A, B) -> float:
    """Frobenius norm of ``AB - BA``."""
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    if A.shape != B.shape:
        raise SizeMismatch(f"shapes differ: {A.shape} vs {B.shape}")
    if B.tobytes() < A.tobytes():
        # canonical operand order: (A, B) and (B, A) run identical arithmetic
        A, B = B, A
    return float(np.linalg.norm(A @ B - B @ A))


def check_commuting(family: Sequence[np.ndarray], tol: float = COMMUTE_TOL) -> None:
    """Raise :class:`NotCommuting` for the first pair violating the relative bound."""
    norms = [np.linalg.norm(A) for A in family]
    for i, j in combinations(range(len(family)), 2):
        c = commutator_norm(family[i], family[j])
        bound = tol * max(1.0, norms[i] * norms[j])
        if c > bound:
            raise NotCommuting(i, j, c, bound)


@dataclass(frozen=True)
class CommonBasis:
    """Orthonormal ``U`` diagonalizing a commuting family.

    ``table[i, j]`` is the eigenvalue of family member ``j`` on column ``i``.
    """

    U: np.ndarray
    table: np.ndarray

    @property
    def order(self) -> int:
        return self.U.shape[0]

    @property
    def family_size(self) -> int:
        return self.table.shape[1]

    def decomposition(self, j: int) -> EigenDecomposition:
        """The basis viewed as an eigendecomposition of family member ``j``."""
        return EigenDecomposition(values=self.table[:, j].copy(), vectors=self.U)


def _refine(family, Q, tols):
    """Split the invariant subspace spanned by ``Q`` until every member is diagonal on it."""
    if Q.shape[1] == 1 or not family:
        return Q
    A, rest = family[0], family[1:]
    M = Q.T @ A @ Q
    w, V = np.linalg.eigh(0.5 * (M + M.T))
    w, V = w[::-1], V[:, ::-1]
    Qr = Q @ V
    blocks = []
    start = 0
    for i in range(1, len(w) + 1):
        # anchor on the group's largest value so a group never spreads past tol
        if i == len(w) or w[start] - w[i] > tols[0]:
            blocks.append(_refine(rest, Qr[:, start:i], tols[1:]))
            start = i
    return np.hstack(blocks)


def common_eigenbasis(
    family: Sequence,
    seed_vector: Optional[np.ndarray] = None,
    tol: float = COMMUTE_TOL,
) -> CommonBasis:
    """Common orthonormal eigenbasis of pairwise commuting symmetric matrices.

    The first matrix is eigendecomposed, each of its eigenspaces is split by
    the eigendecomposition of the next matrix restricted to it, and so on
    down the family. A ``seed_vector`` (a known common eigenvector) becomes
    column 0 and the rest of the basis is built on its orthogonal complement.

    Columns come out ordered by descending eigenvalue of the first matrix,
    ties broken by the next matrix, etc.
    """
    if len(family) == 0:
        raise SizeMismatch("empty family")
    mats = [as_symmetric(A) for A in family]
    n = mats[0].shape[0]
    for j, A in enumerate(mats):
        if A.shape != (n, n):
            raise SizeMismatch(f"matrix {j} has shape {A.shape}, expected {(n, n)}")
    check_commuting(mats, tol)
    norms = [float(np.linalg.norm(A)) for A in mats]
    tols = [DEGENERACY_TOL * max(1.0, s) for s in norms]

    if seed_vector is None:
        U = _refine(mats, np.eye(n), tols)
    else:
        s = np.asarray(seed_vector, dtype=float).reshape(-1)
        if s.shape != (n,):
            raise SizeMismatch(f"seed vector has length {s.size}, expected {n}")
        s = s / np.linalg.norm(s)
        for j, A in enumerate(mats):
            As = A @ s
            r = np.linalg.norm(As - (s @ As) * s)
            if r > max(tol, RESIDUAL_TOL) * max(1.0, norms[j]):
                raise SeedNotEigenvector(
                    f"seed is not an eigenvector of matrix {j} (residual {r:.3g})"
                )
        # Orthonormal complement of s from a full QR of [s | I].
        Q, _ = np.linalg.qr(np.column_stack([s, np.eye(n)]), mode="complete")
        rest = _refine(mats, Q[:, 1:n], tols) if n > 1 else np.zeros((n, 0))
        U = np.column_stack([s, rest])

    U = fix_signs(U)
    table = np.column_stack([np.einsum("ij,ij->j", U, A @ U) for A in mats])
    return CommonBasis(U=U, table=table)
