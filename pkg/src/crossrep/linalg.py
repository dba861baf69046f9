"""Dense complex linear algebra primitives with one explicit tolerance policy.

Matrices are plain complex ``numpy`` arrays (row-major); every decision that
involves rounding (rank, eigenvalue clustering, unitarity) goes through a
:class:`Tolerance` passed explicitly.  All functions are pure and never
mutate their arguments.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import DimensionMismatch, NotUnitary

__all__ = [
    "Tolerance",
    "DEFAULT_TOL",
    "nullspace",
    "unitary_eigenspaces",
    "solve_sylvester_family",
    "orthonormal_span",
    "phase_normalize",
    "scalar_quotient",
    "random_unitary",
    "random_hermitian",
]


@dataclass(frozen=True)
class Tolerance:
    """Numerical thresholds used by every decision in the package.

    abs_eps   absolute comparison threshold for matrix identities
    rank_eps  relative singular-value cutoff for rank decisions
    eig_sep   angular gap below which unitary eigenvalues are one cluster
    """

    abs_eps: float = 1e-9
    rank_eps: float = 1e-8
    eig_sep: float = 1e-6

    def __post_init__(self):
        if not (self.abs_eps > 0 and self.rank_eps > 0 and self.eig_sep > 0):
            raise ValueError("tolerances must be strictly positive")
        if not self.abs_eps < self.eig_sep:
            raise ValueError("abs_eps must be smaller than eig_sep")


DEFAULT_TOL = Tolerance()


def as_matrix(m) -> np.ndarray:
    """Coerce to a 2-d complex array without copying when possible."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise DimensionMismatch(f"expected a matrix, got array of ndim {a.ndim}")
    return a


def nullspace(M, tol: Tolerance = DEFAULT_TOL) -> list[np.ndarray]:
    """Orthonormal basis of the right nullspace of ``M``.

    Rank is decided at ``tol.rank_eps`` relative to the largest singular
    value; a matrix whose largest singular value is below ``abs_eps`` is
    treated as zero outright (relative thresholds are meaningless there).
    """
    M = as_matrix(M)
    rows, cols = M.shape
    if cols == 0:
        return []
    if rows == 0 or not np.any(M):
        return [np.eye(cols, dtype=complex)[:, j] for j in range(cols)]
    _, s, vh = np.linalg.svd(M)
    if s.size == 0 or s[0] <= tol.abs_eps:
        return [np.eye(cols, dtype=complex)[:, j] for j in range(cols)]
    rank = int(np.sum(s > tol.rank_eps * s[0]))
    return [vh[j].conj() for j in range(rank, cols)]


def _cluster_unit_circle(eigs: np.ndarray, gap: float) -> list[list[int]]:
    """Group indices of unit-modulus eigenvalues whose angular distance < gap."""
    angles = np.mod(np.angle(eigs), 2 * np.pi)
    order = np.argsort(angles, kind="stable")
    clusters: list[list[int]] = []
    for idx in order:
        if clusters and angles[idx] - angles[clusters[-1][-1]] < gap:
            clusters[-1].append(int(idx))
        else:
            clusters.append([int(idx)])
    # the circle wraps: the last cluster may continue into the first
    if len(clusters) > 1:
        first, last = clusters[0], clusters[-1]
        if angles[first[0]] + 2 * np.pi - angles[last[-1]] < gap:
            clusters[0] = last + first
            clusters.pop()
    return clusters


def unitary_eigenspaces(
    U, tol: Tolerance = DEFAULT_TOL
) -> list[tuple[complex, np.ndarray]]:
    """Clustered spectral decomposition of a unitary matrix.

    Returns ``[(lambda_c, Q_c), ...]`` where each ``Q_c`` has orthonormal
    columns spanning the eigenspace of the cluster around ``lambda_c``.
    Eigenvalues closer than ``tol.eig_sep`` on the unit circle are merged.
    Clusters are ordered by the angle of their eigenvalue in [0, 2*pi).

    Raises :class:`NotUnitary` when ``||U*U - 1|| > abs_eps`` (scaled by dim).
    """
    U = as_matrix(U)
    n = U.shape[0]
    if U.shape[0] != U.shape[1]:
        raise DimensionMismatch("unitary_eigenspaces needs a square matrix")
    defect = np.linalg.norm(U.conj().T @ U - np.eye(n))
    if defect > tol.abs_eps * max(1.0, np.sqrt(n)):
        raise NotUnitary(f"matrix is not unitary: ||U*U - 1|| = {defect:.3e}")
    # U is normal, so its complex Schur form is diagonal and the Schur basis
    # is an orthonormal eigenbasis.
    T, Q = scipy.linalg.schur(U, output="complex")
    eigs = np.diag(T)
    out = []
    for cluster in _cluster_unit_circle(eigs, tol.eig_sep):
        val = np.mean(eigs[cluster])
        val = complex(val / abs(val))
        iso = Q[:, sorted(cluster)]
        out.append((val, iso))
    out.sort(key=lambda pair: np.mod(np.angle(pair[0]), 2 * np.pi))
    return out


def _sylvester_gram(pairs, p: int, q: int) -> np.ndarray:
    """Gram matrix sum_i K_i* K_i of the constraints vec(T R_i - L_i T)."""
    N = np.zeros((p * q, p * q), dtype=complex)
    Ip, Iq = np.eye(p), np.eye(q)
    for L, R in pairs:
        Rc, Rt = R.conj(), R.T
        N += np.kron(Rc @ Rt, Ip)
        N += np.kron(Iq, L.conj().T @ L)
        N -= np.kron(Rc, L)
        N -= np.kron(Rt, L.conj().T)
    return N


# above this many host-space dimensions the stacked SVD is replaced by a
# Gram-matrix eigendecomposition (same nullspace, one O((pq)^3) solve)
_STACK_LIMIT = 120
# the Gram route squares the condition number, so singular values below
# sqrt(machine eps) are noise; its rank cutoff is floored accordingly
_GRAM_FLOOR = 1e-6


def solve_sylvester_family(
    pairs,
    dims: tuple[int, int] | None = None,
    tol: Tolerance = DEFAULT_TOL,
) -> list[np.ndarray]:
    """Orthonormal basis (Frobenius) of ``{T : T R_i = L_i T for all i}``.

    ``pairs`` is a sequence of ``(L_i, R_i)``; every ``L_i`` must be p x p
    and every ``R_i`` q x q, and the solutions T are p x q.  For an empty
    family ``dims=(p, q)`` must be given and the full matrix-unit basis is
    returned.
    """
    pairs = [(as_matrix(L), as_matrix(R)) for L, R in pairs]
    if not pairs:
        if dims is None:
            raise DimensionMismatch("empty constraint family needs explicit dims")
        p, q = dims
        units = []
        for i in range(p):
            for j in range(q):
                E = np.zeros((p, q), dtype=complex)
                E[i, j] = 1.0
                units.append(E)
        return units
    p = pairs[0][0].shape[0]
    q = pairs[0][1].shape[0]
    for L, R in pairs:
        if L.shape != (p, p) or R.shape != (q, q):
            raise DimensionMismatch(
                f"all L must be {p}x{p} and all R {q}x{q}, got {L.shape} and {R.shape}"
            )
    if dims is not None and dims != (p, q):
        raise DimensionMismatch(f"declared dims {dims} do not match pairs ({p},{q})")

    if p * q <= _STACK_LIMIT:
        Ip, Iq = np.eye(p), np.eye(q)
        blocks = [np.kron(R.T, Ip) - np.kron(Iq, L) for L, R in pairs]
        vecs = nullspace(np.vstack(blocks), tol)
    else:
        N = _sylvester_gram(pairs, p, q)
        evals, evecs = np.linalg.eigh(N)
        svals = np.sqrt(np.clip(evals, 0.0, None))
        if svals[-1] <= tol.abs_eps:
            cutoff = np.inf  # the whole system is zero at tolerance
        else:
            cutoff = max(tol.rank_eps, _GRAM_FLOOR) * svals[-1]
        vecs = [evecs[:, j] for j in range(len(svals)) if svals[j] <= cutoff]
    # vec is column-major so that vec(T R) = (R^T (x) I) vec(T)
    return [v.reshape((p, q), order="F") for v in vecs]


def orthonormal_span(mats, tol: Tolerance = DEFAULT_TOL) -> list[np.ndarray]:
    """Orthonormal (Frobenius) basis of the linear span of ``mats``."""
    mats = [as_matrix(m) for m in mats]
    if not mats:
        return []
    shape = mats[0].shape
    stacked = np.array([m.reshape(-1) for m in mats])
    _, s, vh = np.linalg.svd(stacked, full_matrices=False)
    cutoff = tol.rank_eps * s[0] if s.size and s[0] > 0 else 0.0
    return [vh[j].conj().reshape(shape) for j in range(int(np.sum(s > cutoff)))]


def phase_normalize(M) -> np.ndarray:
    """Rescale by a unit scalar so the largest-modulus entry is real positive."""
    M = as_matrix(M)
    idx = np.unravel_index(int(np.argmax(np.abs(M))), M.shape)
    pivot = M[idx]
    if abs(pivot) == 0:
        return M.copy()
    return M * (abs(pivot) / pivot)


def scalar_quotient(A, B, tol: Tolerance = DEFAULT_TOL) -> complex:
    """The scalar c with ``A == c * B``, read off the largest entry of B.

    Validated entrywise; raises ValueError when A is not a scalar multiple
    of B within ``abs_eps`` relative to the scale of A.
    """
    A, B = as_matrix(A), as_matrix(B)
    if A.shape != B.shape:
        raise DimensionMismatch("scalar_quotient needs equal shapes")
    idx = np.unravel_index(int(np.argmax(np.abs(B))), B.shape)
    if abs(B[idx]) == 0:
        raise ValueError("cannot divide by the zero matrix")
    c = complex(A[idx] / B[idx])
    scale = max(np.linalg.norm(A), 1.0)
    if np.linalg.norm(A - c * B) > 1e3 * tol.abs_eps * scale:
        raise ValueError("matrices are not scalar multiples of each other")
    return c


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Ginibre matrix."""
    Z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    Q, R = np.linalg.qr(Z)
    return Q * (np.diag(R) / np.abs(np.diag(R)))


def random_hermitian(n: int, rng: np.random.Generator) -> np.ndarray:
    Z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (Z + Z.conj().T) / 2
