"""Normal-form blocks for quadratic Hamiltonians and their classification.

A symmetric nondegenerate A on symplectic R^(2n) decomposes, up to a linear
symplectic change of coordinates, into a direct sum of canonical blocks
indexed by the Jordan data of J A.  Three kinds occur:

  kind 'a' : real eigenvalue pair (lam, -lam), lam != 0.  One block per
             Jordan size m; dimension 2m, signature (m, m).
  kind 'b' : quadruple (lam, conj lam, -lam, -conj lam) with nonzero real
             and imaginary part.  Dimension 4m, signature (2m, 2m).
  kind 'c' : imaginary pair (i mu, -i mu).  Dimension 2m; signature (m, m)
             for even m and (m + gamma, m - gamma) for odd m, where
             gamma = +-1 is the Krein sign.

Entry tables below produce a block whose flow J A_i has exactly the
declared eigenvalues and Jordan sizes; this pins the center entry of the
kind 'c' anti-diagonal to |Im lam| (doubling it would double the
eigenvalue, contradicting both the Williamson normal form at m = 1 and the
declared Jordan data).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ClusterAmbiguous,
    DegenerateInput,
    GammaUndetermined,
    IncompatibleEigenvalue,
    InputError,
    InternalError,
    SignatureMismatch,
)
from .symlin import (
    DEFAULT_TOL,
    Tolerances,
    imaginary_eigenspace_basis,
    inertia,
    restricted_signature,
    spectrum_with_jordan,
    standard_J,
    sym_matrix,
    symplectic_direct_sum,
)

__all__ = [
    "HormanderBlock",
    "NormalForm",
    "build_block",
    "block_signature",
    "assemble",
    "classify",
]

KINDS = ("a", "b", "c")


@dataclass(frozen=True)
class HormanderBlock:
    kind: str
    m: int
    lam: complex  # canonical representative: Re >= 0, Im >= 0
    gamma: int | None = None  # Krein sign, kind 'c' only
    matrix: np.ndarray = field(default=None, compare=False, repr=False)

    @property
    def dof(self) -> int:
        return 2 * self.m if self.kind == "b" else self.m

    @property
    def dim(self) -> int:
        return 2 * self.dof

    def key(self, ndigits: int = 9):
        return (
            self.kind,
            self.m,
            round(self.lam.real, ndigits),
            round(self.lam.imag, ndigits),
            self.gamma,
        )


def _matrix_a(m, lam_abs):
    # B has |lam| on the diagonal and ones directly under it
    B = np.diag(np.full(m, lam_abs))
    for j in range(1, m):
        B[j, j - 1] = 1.0
    A = np.zeros((2 * m, 2 * m))
    A[:m, m:] = B
    A[m:, :m] = B.T
    return A


def _matrix_b(m, re, im):
    d = 2 * m
    B = np.zeros((d, d))
    for j in range(d):
        B[j, j] = re
    for l in range(m):
        B[2 * l + 1, 2 * l] = im
        B[2 * l, 2 * l + 1] = -im
    for j in range(d - 2):
        B[j, j + 2] = 1.0
    A = np.zeros((2 * d, 2 * d))
    A[:d, d:] = B
    A[d:, :d] = B.T
    return A


def _matrix_c(m, im, gamma):
    B = np.zeros((m, m))
    for j in range(1, m + 1):
        for k in range(1, m + 1):
            if j + k == m + 1:
                B[j - 1, k - 1] = im  # anti-diagonal, center included
            elif j + k == m + 2:
                B[j - 1, k - 1] = -2.0 if j == k else -1.0
    B = gamma * B
    BP = B[::-1, ::-1].T  # reflection across the anti-diagonal
    A = np.zeros((2 * m, 2 * m))
    A[:m, :m] = B
    A[m:, m:] = BP
    return A


def build_block(kind: str, m: int, lam: complex, gamma: int | None = None,
                tol: Tolerances = DEFAULT_TOL) -> HormanderBlock:
    """Canonical block for the given kind, Jordan size and eigenvalue.

    The eigenvalue is canonicalized to Re >= 0, Im >= 0; gamma is required
    exactly when kind == 'c'.
    """
    if kind not in KINDS:
        raise InputError(f"unknown block kind {kind!r}")
    if not isinstance(m, (int, np.integer)) or m < 1:
        raise InputError(f"Jordan size m must be a positive integer, got {m!r}")
    lam = complex(lam)
    scale = max(1.0, abs(lam))
    re, im = abs(lam.real), abs(lam.imag)
    axis = 1e-12 * scale
    if kind == "a":
        if im > axis:
            raise IncompatibleEigenvalue("kind 'a' requires a real eigenvalue")
        if re <= axis:
            raise IncompatibleEigenvalue("kind 'a' requires a nonzero eigenvalue")
        if gamma is not None:
            raise InputError("gamma is only meaningful for kind 'c'")
        return HormanderBlock("a", int(m), complex(re), None, _matrix_a(m, re))
    if kind == "b":
        if re <= axis or im <= axis:
            raise IncompatibleEigenvalue(
                "kind 'b' requires nonzero real and imaginary parts")
        if gamma is not None:
            raise InputError("gamma is only meaningful for kind 'c'")
        return HormanderBlock("b", int(m), complex(re, im), None, _matrix_b(m, re, im))
    # kind 'c'
    if re > axis:
        raise IncompatibleEigenvalue("kind 'c' requires a purely imaginary eigenvalue")
    if im <= axis:
        raise IncompatibleEigenvalue("kind 'c' requires a nonzero eigenvalue")
    if gamma not in (-1, 1):
        raise InputError("kind 'c' requires gamma in {-1, +1}")
    return HormanderBlock("c", int(m), complex(0.0, im), int(gamma), _matrix_c(m, im, gamma))


def block_signature(block: HormanderBlock, tol: Tolerances = DEFAULT_TOL):
    """(p, q) signature of the block, closed form checked numerically."""
    if block.kind == "a":
        expected = (block.m, block.m)
    elif block.kind == "b":
        expected = (2 * block.m, 2 * block.m)
    else:
        if block.m % 2 == 0:
            expected = (block.m, block.m)
        else:
            expected = (block.m + block.gamma, block.m - block.gamma)
    numeric = inertia(block.matrix, tol)
    if numeric != expected:
        raise SignatureMismatch(
            f"block {block.key()}: closed form {expected} vs numerical {numeric}")
    return expected


def assemble(blocks) -> np.ndarray:
    """Symplectic direct sum of block matrices, in ambient (q, p) order."""
    if isinstance(blocks, NormalForm):
        blocks = blocks.blocks
    return symplectic_direct_sum(*[b.matrix for b in blocks])


@dataclass(frozen=True)
class NormalForm:
    blocks: tuple  # tuple[HormanderBlock], canonically ordered
    total_dim: int

    @property
    def matrix(self) -> np.ndarray:
        return assemble(self.blocks)

    def block_keys(self, ndigits: int = 6):
        return tuple(sorted(b.key(ndigits) for b in self.blocks))


def _sort_blocks(blocks):
    return tuple(
        sorted(
            blocks,
            key=lambda b: (b.kind, abs(b.lam.real), abs(b.lam.imag), b.m,
                           -(b.gamma or 0)),
        )
    )


def normal_form(blocks) -> NormalForm:
    """Wrap freshly built blocks in a canonically ordered NormalForm."""
    blocks = _sort_blocks(blocks)
    return NormalForm(blocks, sum(b.dim for b in blocks))


def _take_partner(items, used, target, match_tol):
    best = None
    for idx, it in enumerate(items):
        if used[idx]:
            continue
        d = abs(it["center"] - target)
        if d <= match_tol and (best is None or d < best[0]):
            best = (d, idx)
    return None if best is None else best[1]


def _krein_split(A, J, mu, p, tol):
    """Split a multiplicity-p semisimple imaginary eigenvalue by Krein sign."""
    basis = imaginary_eigenspace_basis(J @ A, mu, tol)
    if basis.shape[1] != 2 * p:
        raise ClusterAmbiguous(
            f"eigenspace of {mu}i has dimension {basis.shape[1]}, expected {2 * p}")
    s = restricted_signature(A, basis, tol)
    if s % 2 != 0 or (p + s // 2) % 2 != 0 or abs(s) > 2 * p:
        raise GammaUndetermined(
            f"Krein data at eigenvalue {mu}i is not a valid sign vector")
    p_plus = (p + s // 2) // 2
    return p_plus, p - p_plus


def classify(A, tol: Tolerances = DEFAULT_TOL) -> NormalForm:
    """Normal form of a nondegenerate symmetric A from the Jordan data of J A.

    One block is emitted per conjugation/negation orbit of eigenvalues and
    per Jordan size.  Purely imaginary eigenvalues with any Jordan block of
    size > 1 raise GammaUndetermined (their sign invariant is not extracted
    here); imaginary semisimple eigenvalues are split by Krein sign.
    """
    A = sym_matrix(A)
    n2 = A.shape[0]
    if n2 == 0:
        return NormalForm((), 0)
    if n2 % 2 != 0:
        raise InputError("quadratic form on a symplectic space has even dimension")
    sv = np.linalg.svd(A, compute_uv=False)
    if sv[-1] <= tol.rank_cut * sv[0]:
        raise DegenerateInput("form is degenerate; no normal form")
    J = standard_J(n2 // 2)
    spec = spectrum_with_jordan(J @ A, tol)

    items = [{"center": it.eigenvalue, "sizes": it.block_sizes} for it in spec.items]
    used = [False] * len(items)
    scale = max(1.0, max(abs(it["center"]) for it in items))
    match_tol = max(100.0 * tol.eig_cluster, 1e-6) * scale

    blocks = []
    for idx, it in enumerate(items):
        if used[idx]:
            continue
        lam = it["center"]
        re_zero = abs(lam.real) <= match_tol
        im_zero = abs(lam.imag) <= match_tol
        if re_zero and im_zero:
            raise DegenerateInput("zero eigenvalue of the flow; form is degenerate")
        used[idx] = True
        if im_zero:  # kind 'a'
            j = _take_partner(items, used, -lam, match_tol)
            if j is None or items[j]["sizes"] != it["sizes"]:
                raise ClusterAmbiguous(f"negation partner of {lam} missing or mismatched")
            used[j] = True
            for size in it["sizes"]:
                blocks.append(build_block("a", size, abs(lam.real), tol=tol))
        elif re_zero:  # kind 'c'
            j = _take_partner(items, used, -lam, match_tol)
            if j is None or items[j]["sizes"] != it["sizes"]:
                raise ClusterAmbiguous(f"conjugate partner of {lam} missing or mismatched")
            used[j] = True
            mu = abs(lam.imag)
            if any(s > 1 for s in it["sizes"]):
                raise GammaUndetermined(
                    f"imaginary eigenvalue {mu}i has a Jordan block of size > 1")
            p = len(it["sizes"])
            p_plus, p_minus = _krein_split(A, J, mu, p, tol)
            for _ in range(p_plus):
                blocks.append(build_block("c", 1, 1j * mu, gamma=1, tol=tol))
            for _ in range(p_minus):
                blocks.append(build_block("c", 1, 1j * mu, gamma=-1, tol=tol))
        else:  # kind 'b'
            partners = []
            for target in (np.conj(lam), -lam, -np.conj(lam)):
                j = _take_partner(items, used, complex(target), match_tol)
                if j is None or items[j]["sizes"] != it["sizes"]:
                    raise ClusterAmbiguous(f"orbit of {lam} incomplete or mismatched")
                used[j] = True
                partners.append(j)
            for size in it["sizes"]:
                blocks.append(
                    build_block("b", size, complex(abs(lam.real), abs(lam.imag)), tol=tol))

    nf = NormalForm(_sort_blocks(blocks), n2)
    if sum(b.dim for b in nf.blocks) != n2:
        raise InternalError("normal form dimensions do not add up")
    # the assembled normal form must reproduce the observed Jordan data
    re_spec = spectrum_with_jordan(standard_J(n2 // 2) @ nf.matrix, tol)
    if re_spec.key() != spec.key():
        raise InternalError("assembled normal form has different Jordan data")
    return nf
