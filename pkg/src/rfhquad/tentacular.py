"""Split quadratic Hamiltonians and spectral admissibility checks.

The objects of study are H(x) = x^T A x / 2 - 1 with A = A0 (+) A1 in a
symplectic splitting R^(2n) = R^(2k) x R^(2(n-k)): A0 positive definite on
the elliptic factor, J A1 hyperbolic (no purely imaginary eigenvalue) on
the other.  The zero level of H is then a hyperboloid S^(n+k-1) x R^(n-k).

All homological statements downstream need only this validity; the
sufficient spectral conditions checked by ``tentacular_check`` (strong
tentacularity of the level set) are advisory metadata on top of it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .hormander import NormalForm
from .symlin import (
    DEFAULT_TOL,
    Tolerances,
    standard_J,
    sym_matrix,
    symplectic_direct_sum,
)

__all__ = [
    "QuadraticHamiltonian",
    "ValidationReport",
    "validate",
    "BlockCheck",
    "TentacularVerdict",
    "tentacular_check",
    "SUFFICIENT_RE_M2",
    "SUFFICIENT_RE_DEEP",
]

# thresholds on |Re lambda| in the sufficient conditions, by Jordan size
SUFFICIENT_RE_M2 = 1.0 / np.sqrt(2.0)
SUFFICIENT_RE_DEEP = 2.0


@dataclass(frozen=True)
class QuadraticHamiltonian:
    """Defining data (n, k, A0, A1) of a split quadratic Hamiltonian.

    frequencies, when given, must list the k symplectic eigenvalues of A0
    ascending; they are checked against A0 by ``validate``.
    """

    n: int
    k: int
    a0: np.ndarray
    a1: np.ndarray
    frequencies: tuple | None = None

    def __post_init__(self):
        if not (isinstance(self.n, (int, np.integer)) and self.n >= 1):
            raise InputError(f"n must be a positive integer, got {self.n!r}")
        if not (isinstance(self.k, (int, np.integer)) and 0 <= self.k <= self.n):
            raise InputError(f"k must lie in [0, n], got {self.k!r}")
        a0 = sym_matrix(self.a0, "A0")
        a1 = sym_matrix(self.a1, "A1")
        if a0.shape != (2 * self.k, 2 * self.k):
            raise InputError(f"A0 must be {2 * self.k}x{2 * self.k}, got {a0.shape}")
        if a1.shape != (2 * (self.n - self.k),) * 2:
            raise InputError(
                f"A1 must be {2 * (self.n - self.k)}x{2 * (self.n - self.k)}, got {a1.shape}")
        object.__setattr__(self, "a0", a0)
        object.__setattr__(self, "a1", a1)
        if self.frequencies is not None:
            freqs = tuple(float(f) for f in self.frequencies)
            if len(freqs) != self.k or any(f <= 0 for f in freqs):
                raise InputError("frequencies must be k positive numbers")
            object.__setattr__(self, "frequencies", tuple(sorted(freqs)))

    @classmethod
    def from_frequencies(cls, n: int, k: int, frequencies, a1) -> "QuadraticHamiltonian":
        freqs = sorted(float(f) for f in frequencies)
        a0 = np.diag(np.concatenate([freqs, freqs])) if freqs else np.zeros((0, 0))
        return cls(n, k, a0, np.asarray(a1, dtype=float), tuple(freqs))

    @property
    def full_matrix(self) -> np.ndarray:
        """A = A0 (+) A1 in ambient (q, p) coordinates on R^(2n)."""
        return symplectic_direct_sum(self.a0, self.a1)


@dataclass(frozen=True)
class ValidationReport:
    positive_definite: bool
    hyperbolic: bool
    k_in_range: bool
    offending: dict
    frequencies_match: bool | None = None

    @property
    def all_ok(self) -> bool:
        return (
            self.positive_definite
            and self.hyperbolic
            and self.k_in_range
            and self.frequencies_match in (None, True)
        )


def validate(H: QuadraticHamiltonian, tol: Tolerances = DEFAULT_TOL) -> ValidationReport:
    """Check the three defining conditions, reporting offenders.

    positive_definite : all eigenvalues of A0 above the rank cutoff
    hyperbolic        : no eigenvalue of J A1 with |Re| <= eig_cluster * |A1|
    k_in_range        : 1 <= k <= n - 1
    """
    offending: dict = {}

    if H.a0.size:
        w = np.linalg.eigvalsh(H.a0)
        cut = tol.rank_cut * float(np.abs(w).max())
        bad = [float(x) for x in w if x <= cut]
        pos = not bad
        if bad:
            offending["a0_eigenvalues"] = bad
    else:
        pos = True

    if H.a1.size:
        ev = np.linalg.eigvals(standard_J(H.n - H.k) @ H.a1)
        margin = tol.eig_cluster * max(1.0, float(np.abs(np.linalg.eigvalsh(H.a1)).max()))
        bad = [complex(z) for z in ev if abs(z.real) <= margin]
        hyp = not bad
        if bad:
            offending["a1_flow_eigenvalues"] = bad
    else:
        hyp = True

    k_ok = 1 <= H.k <= H.n - 1
    if not k_ok:
        offending["k"] = [H.k]

    freq_ok = None
    if H.frequencies is not None and H.k >= 1 and pos:
        from .orbits import williamson_frequencies

        actual = williamson_frequencies(H.a0, tol)
        freq_ok = len(actual) == len(H.frequencies) and all(
            abs(a - b) <= 1e-8 * max(1.0, abs(b))
            for a, b in zip(actual, H.frequencies)
        )
        if not freq_ok:
            offending["frequencies"] = list(actual)

    return ValidationReport(pos, hyp, k_ok, offending, freq_ok)


@dataclass(frozen=True)
class BlockCheck:
    kind: str
    m: int
    lam: complex
    case: str  # "m=1", "m=2", "m>2"
    passed: bool
    margin: float  # distance of |Re lam| above the relevant threshold


@dataclass(frozen=True)
class TentacularVerdict:
    sufficient: bool
    trace: tuple  # tuple[BlockCheck]

    @property
    def label(self) -> str:
        if self.sufficient:
            return "strongly tentacular (sufficient spectral conditions met)"
        return "sufficient conditions not met (tentacularity undecided)"


def tentacular_check(nf1: NormalForm) -> TentacularVerdict:
    """Sufficient per-block conditions for a strongly tentacular level set.

    For each block with eigenvalue lam and Jordan size m:
      m == 1 : |Re lam| > 0
      m == 2 : |Re lam| > 1/sqrt(2)
      m >  2 : |Re lam| > 2
    Failing blocks leave tentacularity undecided, never refuted; validity
    of the Hamiltonian itself is independent of this verdict.
    """
    checks = []
    for b in nf1.blocks:
        re = abs(b.lam.real)
        if b.m == 1:
            case, threshold = "m=1", 0.0
        elif b.m == 2:
            case, threshold = "m=2", SUFFICIENT_RE_M2
        else:
            case, threshold = "m>2", SUFFICIENT_RE_DEEP
        checks.append(
            BlockCheck(b.kind, b.m, b.lam, case, re > threshold, re - threshold))
    return TentacularVerdict(all(c.passed for c in checks), tuple(checks))
