"""Conley-Zehnder indices and gradings of orbit-family generators.

The index of the symplectic path t |-> exp(t J S), t in [0, T], is computed
by the signature-weighted crossing count

    cz = sgn(S)/2 + sgn(S restricted to ker(exp(T J S) - Id))/2
         + sum over interior crossings of sgn(S restricted to the kernel),

with half-weight contributions at both endpoints t = 0 and t = T (this
endpoint convention is fixed here once and used consistently; all degree
formulas downstream depend on it).  Crossings are located analytically
from the purely imaginary eigenvalues of J S, so hyperbolic directions
contribute no crossings at all.

Half-integers are kept exact as doubled integers; no index or grading is
ever computed in floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (
    CrossingDegenerate,
    DegenerateRestriction,
    InputError,
    InternalError,
    NonIntegerResult,
    ZeroEta,
)
from .orbits import TWO_PI, OrbitFamily
from .symlin import (
    DEFAULT_TOL,
    Tolerances,
    imaginary_eigenspace_basis,
    restricted_signature,
    signature,
    spectrum_with_jordan,
    standard_J,
    sym_matrix,
)
from .tentacular import QuadraticHamiltonian

__all__ = [
    "HalfInt",
    "cz_index_path",
    "cz_index_data",
    "crossing_times",
    "cz_transverse",
    "sigma_index",
    "grading",
    "hybrid_virtual_dim",
    "stationary_fiber_dim",
]


@dataclass(frozen=True, eq=False)
class HalfInt:
    """Exact element of (1/2) Z, stored as the doubled integer."""

    doubled: int

    def __post_init__(self):
        if isinstance(self.doubled, bool) or not isinstance(self.doubled, (int, np.integer)):
            raise InputError(f"HalfInt needs an integer, got {self.doubled!r}")
        object.__setattr__(self, "doubled", int(self.doubled))

    @classmethod
    def from_int(cls, n: int) -> "HalfInt":
        return cls(2 * int(n))

    @property
    def is_integer(self) -> bool:
        return self.doubled % 2 == 0

    def as_int(self) -> int:
        if not self.is_integer:
            raise NonIntegerResult(f"{self} is not an integer")
        return self.doubled // 2

    def __float__(self) -> float:
        return self.doubled / 2.0

    @staticmethod
    def _coerce(other):
        if isinstance(other, HalfInt):
            return other.doubled
        if isinstance(other, bool):
            return NotImplemented
        if isinstance(other, (int, np.integer)):
            return 2 * int(other)
        return NotImplemented

    def __add__(self, other):
        d = self._coerce(other)
        return NotImplemented if d is NotImplemented else HalfInt(self.doubled + d)

    __radd__ = __add__

    def __sub__(self, other):
        d = self._coerce(other)
        return NotImplemented if d is NotImplemented else HalfInt(self.doubled - d)

    def __rsub__(self, other):
        d = self._coerce(other)
        return NotImplemented if d is NotImplemented else HalfInt(d - self.doubled)

    def __neg__(self):
        return HalfInt(-self.doubled)

    def __mul__(self, other):
        if isinstance(other, bool) or not isinstance(other, (int, np.integer)):
            return NotImplemented
        return HalfInt(self.doubled * int(other))

    __rmul__ = __mul__

    def __eq__(self, other):
        d = self._coerce(other)
        return NotImplemented if d is NotImplemented else self.doubled == d

    def __lt__(self, other):
        d = self._coerce(other)
        return NotImplemented if d is NotImplemented else self.doubled < d

    def __le__(self, other):
        d = self._coerce(other)
        return NotImplemented if d is NotImplemented else self.doubled <= d

    def __gt__(self, other):
        d = self._coerce(other)
        return NotImplemented if d is NotImplemented else self.doubled > d

    def __ge__(self, other):
        d = self._coerce(other)
        return NotImplemented if d is NotImplemented else self.doubled >= d

    def __hash__(self):
        return hash(Fraction(self.doubled, 2))

    def __str__(self):
        if self.is_integer:
            return str(self.doubled // 2)
        return f"{self.doubled}/2"

    def __repr__(self):
        return f"HalfInt({self})"


# ---------------------------------------------------------------------------
# crossing enumeration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CzPathData:
    sgn_start: int  # sgn(S), weighted 1/2
    interior: tuple  # tuple[(time, signature)], full weight
    endpoint: tuple | None  # (time, signature) at t = T, weighted 1/2

    @property
    def index(self) -> HalfInt:
        doubled = self.sgn_start + (self.endpoint[1] if self.endpoint else 0)
        doubled += 2 * sum(sig for _, sig in self.interior)
        return HalfInt(doubled)


def _imaginary_frequencies(JS, tol):
    """Distinct positive imaginary parts of imaginary eigenvalues of JS.

    Works from the clustered Jordan spectrum rather than raw eigenvalues:
    a defective imaginary pair scatters raw eigenvalues onto a ring of
    radius ~eps^(1/m), which a plain real-part filter misreads as
    off-axis, silently dropping the crossing.
    """
    spec = spectrum_with_jordan(JS, tol)
    vals = [it.eigenvalue for it in spec.items]
    scale = max(1.0, float(max(abs(z) for z in vals)))
    mus = sorted(z.imag for z in vals
                 if abs(z.real) <= tol.eig_cluster * scale
                 and z.imag > tol.eig_cluster * scale)
    distinct = []
    for mu in mus:
        if distinct and abs(mu - distinct[-1]) <= tol.eig_cluster * scale:
            continue
        distinct.append(float(mu))
    return distinct


def cz_index_data(S, T: float, tol: Tolerances = DEFAULT_TOL) -> CzPathData:
    """Crossing data of the path exp(t J S) on [0, T], T > 0.

    Crossing times are 2 pi j / mu for the imaginary eigenvalue
    frequencies mu of J S; coincident times (within tol.crossing) are
    merged into a single crossing with the combined kernel.
    """
    S = sym_matrix(S)
    T = float(T)
    if not (np.isfinite(T) and T > 0):
        raise InputError(f"path length T must be positive, got {T!r}")
    if S.size == 0:
        return CzPathData(0, (), None)
    if S.shape[0] % 2 != 0:
        raise InputError("S must act on an even-dimensional space")
    sgn_s = signature(S, tol)  # raises DegenerateInput on a kernel
    JS = standard_J(S.shape[0] // 2) @ S
    mus = _imaginary_frequencies(JS, tol)

    events = []  # (time, [mu, ...])
    for mu in mus:
        j = 1
        while True:
            t = TWO_PI * j / mu
            if t > T + tol.crossing:
                break
            events.append((t, mu))
            j += 1
    events.sort()
    merged = []
    for t, mu in events:
        if merged and abs(t - merged[-1][0]) <= tol.crossing:
            merged[-1][1].append(mu)
        else:
            merged.append([t, [mu]])

    interior = []
    endpoint = None
    for t, group in merged:
        if t <= tol.crossing:
            continue
        bases = [imaginary_eigenspace_basis(JS, mu, tol) for mu in group]
        B = np.hstack(bases)
        try:
            sig = restricted_signature(S, B, tol)
        except DegenerateRestriction as exc:
            raise CrossingDegenerate(f"degenerate crossing form at t = {t}: {exc}") from exc
        if abs(t - T) <= tol.crossing:
            endpoint = (t, sig)
        elif t < T:
            interior.append((t, sig))
    return CzPathData(sgn_s, tuple(interior), endpoint)


def cz_index_path(S, T: float, tol: Tolerances = DEFAULT_TOL) -> HalfInt:
    """Conley-Zehnder index of t |-> exp(t J S) on [0, T]."""
    return cz_index_data(S, T, tol).index


def crossing_times(S, T: float, tol: Tolerances = DEFAULT_TOL) -> tuple:
    """All crossing times in (0, T], endpoint included when resonant."""
    data = cz_index_data(S, T, tol)
    times = [t for t, _ in data.interior]
    if data.endpoint:
        times.append(data.endpoint[0])
    return tuple(times)


# ---------------------------------------------------------------------------
# family-level indices
# ---------------------------------------------------------------------------


def cz_transverse(H: QuadraticHamiltonian, family: OrbitFamily,
                  tol: Tolerances = DEFAULT_TOL) -> HalfInt:
    """Transverse Conley-Zehnder index of a nonstationary orbit family.

    Computed on the elliptic factor over [0, |eta|] and negated for
    eta < 0.  The hyperbolic factor is checked to contribute zero.
    """
    if family.eta == 0.0 or abs(family.eta) <= tol.crossing:
        raise ZeroEta("transverse index is undefined for the stationary families")
    eta_abs = abs(family.eta)
    main = cz_index_path(H.a0, eta_abs, tol)
    if H.a1.size:
        hyp = cz_index_path(H.a1, eta_abs, tol)
        if hyp != 0:
            raise InternalError(f"hyperbolic factor has nonzero index {hyp}")
    return main if family.eta > 0 else -main


def sigma_index(family: OrbitFamily, pole: str) -> HalfInt:
    """Signature index of the Morse-Bott extremum on the family.

    Sphere families S^(2m-1): -(m - 1/2) at the minimum, m - 1/2 at the
    maximum.  The stationary compact family behaves like the sphere with
    m = k; the stationary noncompact family has -(n - 1/2) at the minimum
    and k - 1/2 at the maximum.
    """
    if pole not in ("min", "max"):
        raise InputError(f"pole must be 'min' or 'max', got {pole!r}")
    if family.topology in ("sphere", "sigma0"):
        m = family.m
        return HalfInt(-(2 * m - 1)) if pole == "min" else HalfInt(2 * m - 1)
    if family.topology == "sigma":
        if pole == "min":
            return HalfInt(-(2 * family.n - 1))
        return HalfInt(2 * family.k - 1)
    raise InputError(f"unknown topology {family.topology!r}")


def grading(family: OrbitFamily, pole: str, H: QuadraticHamiltonian,
            tol: Tolerances = DEFAULT_TOL) -> HalfInt:
    """Full grading: transverse index + signature index + 1/2."""
    if family.eta == 0.0:
        cz = HalfInt(0)
    elif family.cz_transverse is not None:
        cz = family.cz_transverse
    else:
        cz = cz_transverse(H, family, tol)
    return cz + sigma_index(family, pole) + HalfInt(1)


def hybrid_virtual_dim(cz_l0: HalfInt, cz_l: HalfInt, dim_l0: int, dim_l: int) -> int:
    """Virtual dimension cz(L) - cz(L0) + (dim L0 + dim L)/2 of a hybrid
    moduli problem between two orbit families; must come out integral."""
    for d in (dim_l0, dim_l):
        if isinstance(d, bool) or not isinstance(d, (int, np.integer)) or d < 0:
            raise InputError(f"family dimensions must be nonnegative integers, got {d!r}")
    doubled = cz_l.doubled - cz_l0.doubled + (int(dim_l0) + int(dim_l))
    if doubled % 2 != 0:
        raise NonIntegerResult("virtual dimension is not an integer")
    return doubled // 2


def stationary_fiber_dim(sigma_z: HalfInt, sigma_x: HalfInt) -> int:
    """Fiber dimension of the stationary solutions: sigma(z) - sigma(x)."""
    return (sigma_z - sigma_x).as_int()
