"""Symplectic linear algebra kernel.

Conventions used everywhere in the package: the standard symplectic matrix
on R^(2m) is J = [[0, Id], [-Id, 0]] in coordinates (q_1..q_m, p_1..p_m),
a quadratic Hamiltonian is H(x) = x^T A x / 2 with A symmetric, and its
linearized flow is t |-> exp(t J A).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import (
    ClusterAmbiguous,
    DegenerateInput,
    DegenerateRestriction,
    InputError,
)

__all__ = [
    "Tolerances",
    "DEFAULT_TOL",
    "Spectrum",
    "SpectrumItem",
    "standard_J",
    "symplectic_direct_sum",
    "sym_matrix",
    "spectrum_with_jordan",
    "matrix_exp",
    "kernel_dim",
    "kernel_basis",
    "inertia",
    "signature",
    "restricted_signature",
    "imaginary_eigenspace_basis",
]


@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerances shared by every routine in the package.

    eig_cluster : relative radius used to cluster eigenvalues
    rank_cut    : relative singular-value cutoff for numerical rank
    crossing    : absolute tolerance for crossing/resonance times
    """

    eig_cluster: float = 1e-9
    rank_cut: float = 1e-10
    crossing: float = 1e-10

    def __post_init__(self):
        for name in ("eig_cluster", "rank_cut", "crossing"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and np.isfinite(v) and v > 0):
                raise InputError(f"tolerance {name} must be a positive finite number, got {v!r}")


DEFAULT_TOL = Tolerances()


def _as_square(M, name="matrix"):
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise InputError(f"{name} must be square, got shape {M.shape}")
    return M


def sym_matrix(A, name="matrix", tol_factor=1e-12):
    """Validate symmetry (within tol_factor * max|entry|) and symmetrize."""
    A = _as_square(A, name)
    if A.size == 0:
        return A
    scale = float(np.abs(A).max())
    if float(np.abs(A - A.T).max()) > tol_factor * max(scale, 1.0):
        raise InputError(f"{name} is not symmetric within tolerance")
    return (A + A.T) / 2.0


def standard_J(m: int) -> np.ndarray:
    """Standard symplectic matrix [[0, Id_m], [-Id_m, 0]] on R^(2m)."""
    if not isinstance(m, (int, np.integer)) or m < 0:
        raise InputError(f"m must be a nonnegative integer, got {m!r}")
    J = np.zeros((2 * m, 2 * m))
    J[:m, m:] = np.eye(m)
    J[m:, :m] = -np.eye(m)
    return J


def symplectic_direct_sum(*parts) -> np.ndarray:
    """Direct sum of quadratic forms on a product of symplectic spaces.

    Each part is a 2m_i x 2m_i matrix in its own (q, p) coordinates; the
    result is the matrix of the sum in the ambient coordinates
    (q^1, q^2, ..., p^1, p^2, ...), so that conjugating standard_J of the
    total space recovers the blockwise flows.
    """
    mats = [_as_square(p, "direct summand") for p in parts]
    dofs = []
    for p in mats:
        if p.shape[0] % 2 != 0:
            raise InputError("direct summands must have even dimension")
        dofs.append(p.shape[0] // 2)
    m_tot = sum(dofs)
    out = np.zeros((2 * m_tot, 2 * m_tot))
    off = 0
    for p, m in zip(mats, dofs):
        if m == 0:
            continue
        idx = np.concatenate([np.arange(off, off + m), m_tot + np.arange(off, off + m)])
        out[np.ix_(idx, idx)] = p
        off += m
    return out


# ---------------------------------------------------------------------------
# spectra with Jordan data
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SpectrumItem:
    eigenvalue: complex
    block_sizes: tuple  # Jordan block sizes, descending

    @property
    def multiplicity(self) -> int:
        return int(sum(self.block_sizes))


@dataclass(frozen=True)
class Spectrum:
    items: tuple  # tuple[SpectrumItem], sorted by (Re, Im)

    @property
    def total_dim(self) -> int:
        return sum(it.multiplicity for it in self.items)

    def key(self, ndigits: int = 6):
        """Rounded multiset representation, for comparisons in tests."""
        return tuple(
            sorted(
                (round(it.eigenvalue.real, ndigits), round(it.eigenvalue.imag, ndigits), it.block_sizes)
                for it in self.items
            )
        )


def _single_linkage(points, radius):
    n = len(points)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(points[i] - points[j]) <= radius:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(points[i])
    return list(groups.values())


def _nullity_chain(M, lam, tol):
    """Nullities of (M - lam I)^j, j = 1, 2, ..., until they stabilize."""
    n = M.shape[0]
    base = M.astype(complex) - complex(lam) * np.eye(n)
    nullities = []
    P = np.eye(n, dtype=complex)
    prev = 0
    for _ in range(n):
        P = P @ base
        sv = np.linalg.svd(P, compute_uv=False)
        smax = float(sv[0]) if sv.size else 0.0
        if smax == 0.0:
            nu = n
        else:
            nu = int(np.count_nonzero(sv < tol.rank_cut * smax))
            P = P / smax
        nullities.append(nu)
        if nu == prev or nu >= n:
            break
        prev = nu
    return nullities


def _block_sizes_from_chain(nullities):
    # delta_j = nu_j - nu_{j-1} counts Jordan blocks of size >= j; the
    # sequence must be nonincreasing for a consistent Jordan structure.
    deltas = []
    prev = 0
    for nu in nullities:
        d = nu - prev
        if d < 0:
            raise ClusterAmbiguous("nullity chain decreased; rank cutoffs are inconsistent")
        deltas.append(d)
        prev = nu
    for a, b in zip(deltas, deltas[1:]):
        if b > a:
            raise ClusterAmbiguous("rank chain inconsistent with any Jordan structure")
    sizes = []
    for j, d in enumerate(deltas, start=1):
        nxt = deltas[j] if j < len(deltas) else 0
        sizes.extend([j] * (d - nxt))
    return sorted(sizes, reverse=True)


def spectrum_with_jordan(M, tol: Tolerances = DEFAULT_TOL) -> Spectrum:
    """Eigenvalues of M with Jordan block sizes, recovered numerically.

    Eigenvalues are clustered at relative radius ``tol.eig_cluster``; block
    sizes come from the rank chain of (M - lambda I)^j at each cluster
    center.  Computed eigenvalues of a defective eigenvalue split into a
    ring of radius roughly eps^(1/m), far wider than the cluster radius, so
    clusters are enlarged adaptively: whenever a cluster's rank-chain
    multiplicity disagrees with its eigenvalue count it is merged with the
    nearest cluster and re-validated.  If no merge sequence reconciles the
    two counts the input is rejected as ClusterAmbiguous.
    """
    M = _as_square(M)
    n = M.shape[0]
    if n == 0:
        return Spectrum(())
    eigs = list(np.linalg.eigvals(M))
    scale = max(1.0, float(np.abs(eigs).max()))
    radius = tol.eig_cluster * scale
    clusters = _single_linkage(eigs, radius)

    for _ in range(len(eigs) + 1):
        centers = [complex(np.mean(c)) for c in clusters]
        sizes_list = [_block_sizes_from_chain(_nullity_chain(M, z, tol)) for z in centers]
        bad = [i for i, c in enumerate(clusters) if sum(sizes_list[i]) != len(c)]
        if not bad:
            items = tuple(
                sorted(
                    (SpectrumItem(z, tuple(s)) for z, s in zip(centers, sizes_list)),
                    key=lambda it: (it.eigenvalue.real, it.eigenvalue.imag),
                )
            )
            spec = Spectrum(items)
            if spec.total_dim != n:
                raise ClusterAmbiguous("cluster multiplicities do not add up to the dimension")
            return spec
        if len(clusters) == 1:
            raise ClusterAmbiguous(
                "eigenvalue clusters cannot be reconciled with rank data; input is ill-conditioned"
            )
        i = bad[0]
        dists = [
            (abs(centers[i] - centers[j]), j) for j in range(len(clusters)) if j != i
        ]
        _, j = min(dists)
        merged = clusters[i] + clusters[j]
        clusters = [c for idx, c in enumerate(clusters) if idx not in (i, j)] + [merged]
    raise ClusterAmbiguous("eigenvalue clustering did not converge")


# ---------------------------------------------------------------------------
# exponentials, kernels, signatures
# ---------------------------------------------------------------------------


def matrix_exp(M, t: float) -> np.ndarray:
    """exp(t M).  Scaling-and-squaring Pade; exact identity at t == 0."""
    M = _as_square(M)
    t = float(t)
    if not np.isfinite(t):
        raise InputError(f"time parameter must be finite, got {t!r}")
    if M.size == 0:
        return M.copy()
    if t == 0.0:
        return np.eye(M.shape[0])
    return scipy.linalg.expm(t * M)


def kernel_dim(M, tol: Tolerances = DEFAULT_TOL) -> int:
    """Numerical nullity: singular values below rank_cut * scale.

    The scale is max(largest singular value, 1): the callers feed
    matrices of the shape exp(...) - Id whose natural size is order one,
    and a fully resonant exponential must report a full kernel rather
    than let roundoff noise pass as rank.
    """
    M = np.asarray(M, dtype=float)
    if M.ndim != 2:
        raise InputError("kernel_dim expects a matrix")
    if M.size == 0:
        return min(M.shape) if M.shape else 0
    sv = np.linalg.svd(M, compute_uv=False)
    cut = tol.rank_cut * max(float(sv[0]), 1.0)
    return int(np.count_nonzero(sv < cut))


def kernel_basis(M, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis of the numerical kernel, as matrix columns."""
    M = np.asarray(M, dtype=float)
    u, sv, vh = np.linalg.svd(M)
    smax = float(sv[0]) if sv.size else 0.0
    null = sv < tol.rank_cut * max(smax, 1.0)
    # rows of vh beyond the rank also belong to the kernel
    cols = list(np.nonzero(null)[0]) + list(range(sv.size, vh.shape[0]))
    return vh[cols].T.copy() if cols else np.zeros((M.shape[1], 0))


def inertia(S, tol: Tolerances = DEFAULT_TOL):
    """(p, q) = numbers of positive/negative eigenvalues of symmetric S.

    Raises DegenerateInput when an eigenvalue sits below the rank cutoff.
    """
    S = sym_matrix(S)
    if S.size == 0:
        return (0, 0)
    w = np.linalg.eigvalsh(S)
    amax = float(np.abs(w).max())
    if amax == 0.0:
        raise DegenerateInput("form is identically zero")
    cut = tol.rank_cut * amax
    if np.any(np.abs(w) <= cut):
        raise DegenerateInput("form has a numerical kernel")
    p = int(np.count_nonzero(w > 0))
    return (p, len(w) - p)


def signature(S, tol: Tolerances = DEFAULT_TOL) -> int:
    """sgn(S) = p - q for a nondegenerate symmetric matrix."""
    p, q = inertia(S, tol)
    return p - q


def restricted_signature(S, basis, tol: Tolerances = DEFAULT_TOL) -> int:
    """Signature of x^T S x restricted to span(basis).

    basis : matrix whose columns span the subspace, or a sequence of
        vectors; the columns must be linearly independent.
    Raises DegenerateRestriction when the restricted form has a numerical
    kernel (it is reported, never silently dropped).
    """
    S = sym_matrix(S)
    B = np.asarray(basis, dtype=float)
    if B.ndim == 1:
        B = B[:, None]
    elif B.ndim == 2 and B.shape[0] != S.shape[0] and B.shape[1] == S.shape[0]:
        B = B.T  # sequence of row vectors
    if B.ndim != 2 or B.shape[0] != S.shape[0]:
        raise InputError("basis shape incompatible with the form")
    if B.shape[1] == 0:
        return 0
    sv = np.linalg.svd(B, compute_uv=False)
    if sv.size and sv[-1] <= tol.rank_cut * sv[0]:
        raise InputError("basis vectors are not linearly independent")
    G = B.T @ S @ B
    G = (G + G.T) / 2.0
    w = np.linalg.eigvalsh(G)
    amax = float(np.abs(w).max())
    # degeneracy is judged against the ambient scale |B|^2 |S|, not against
    # the restricted form itself: a form that vanishes on the subspace comes
    # back as pure roundoff, and its own max eigenvalue is no yardstick
    scale = float(sv[0]) ** 2 * float(np.linalg.norm(S, 2)) if sv.size else 1.0
    cut = tol.rank_cut * max(amax, scale, 1e-300)
    if np.any(np.abs(w) <= cut):
        raise DegenerateRestriction("restricted form has a numerical kernel")
    return int(np.count_nonzero(w > 0) - np.count_nonzero(w < 0))


def imaginary_eigenspace_basis(M, mu: float, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis of the real invariant plane span{Re v, Im v} over
    the complex eigenvectors v of M with eigenvalue i*mu (mu > 0).

    Only genuine eigenvectors enter, so for a defective imaginary
    eigenvalue this is the kernel of exp(t M) - Id at resonance.
    """
    M = _as_square(M)
    n = M.shape[0]
    C = M.astype(complex) - 1j * float(mu) * np.eye(n)
    _, sv, vh = np.linalg.svd(C)
    smax = float(sv[0]) if sv.size else 0.0
    if smax == 0.0:
        raise DegenerateInput("matrix is a multiple of i*mu*Id")
    null_rows = np.nonzero(sv < tol.rank_cut * smax * 1e2)[0]
    if null_rows.size == 0:
        # fall back to the plain cutoff before giving up
        null_rows = np.nonzero(sv < tol.rank_cut * smax)[0]
    if null_rows.size == 0:
        raise ClusterAmbiguous(f"no eigenvector found for eigenvalue {mu}i")
    V = vh[null_rows].conj().T  # complex eigenvector columns
    R = np.hstack([V.real, V.imag])
    u, sv2, _ = np.linalg.svd(R, full_matrices=False)
    rank = int(np.count_nonzero(sv2 > tol.rank_cut * sv2[0] * 1e2)) if sv2.size else 0
    if rank != 2 * V.shape[1]:
        raise ClusterAmbiguous("realified eigenspace has unexpected dimension")
    return u[:, :rank]
