"""Rabinowitz Floer homology of the hyperboloid family.

Two long exact sequences over Z/2 deliver the full homology from known
compact inputs.  Dimensions are propagated through the sequences by an
interval solver on the ranks of the connecting maps; underdetermined or
inconsistent systems raise instead of guessing.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .czindex import HalfInt, cz_index_path, grading, sigma_index
from .errors import Inconsistent, InputError, InternalError, Underdetermined
from .orbits import ActionWindow, OrbitFamily, census
from .symlin import DEFAULT_TOL, Tolerances
from .tentacular import QuadraticHamiltonian

__all__ = [
    "GradedZ2Space",
    "Generator",
    "generator_census",
    "positive_correspondence_check",
    "singular_homology",
    "rfh_pm_compact",
    "ExactSequenceProblem",
    "SolvedSequence",
    "solve_exact_sequence",
    "exact1_problem",
    "exact2_problem",
    "rfh_positive",
    "rfh_geq0",
    "rfh_full",
    "RfhReport",
    "rfh_report",
    "alternating_sum",
]


class GradedZ2Space:
    """Finite-dimensional graded Z/2 vector space, held as degree -> dim."""

    def __init__(self, dims=None):
        self._dims = {}
        for deg, d in dict(dims or {}).items():
            if isinstance(d, bool) or int(d) != d or d < 0:
                raise InputError(f"dimension at degree {deg} must be a nonnegative integer")
            if d:
                self._dims[int(deg)] = int(d)

    def dim(self, degree: int) -> int:
        return self._dims.get(int(degree), 0)

    @property
    def support(self) -> tuple:
        return tuple(sorted(self._dims))

    @property
    def total_dim(self) -> int:
        return sum(self._dims.values())

    def as_dict(self) -> dict:
        return dict(sorted(self._dims.items()))

    def __eq__(self, other):
        if isinstance(other, GradedZ2Space):
            return self._dims == other._dims
        if isinstance(other, dict):
            return self == GradedZ2Space(other)
        return NotImplemented

    def __hash__(self):
        return hash(tuple(sorted(self._dims.items())))

    def __bool__(self):
        return bool(self._dims)

    def __repr__(self):
        inner = ", ".join(f"{d}: {v}" for d, v in sorted(self._dims.items()))
        return f"GradedZ2Space({{{inner}}})"


@dataclass(frozen=True)
class Generator:
    """One Morse-Bott generator: an orbit family capped at one extremum."""

    family: OrbitFamily
    pole: str
    action: float
    sigma_index: HalfInt
    grading: HalfInt

    @property
    def label(self) -> str:
        side = "stationary" if self.family.eta == 0.0 else f"eta={self.family.eta:.6g}"
        return f"{self.family.side}/{side}/{self.pole}"


def generator_census(H: QuadraticHamiltonian, window: ActionWindow,
                     tol: Tolerances = DEFAULT_TOL) -> list:
    """All generators with action in the window, two per orbit family.

    Transverse indices are computed once per critical value and reused
    across the members of a resonance class.
    """
    families = census(H, window, tol)
    cz_cache: dict = {}
    out = []
    for fam in families:
        if fam.eta == 0.0:
            cz = HalfInt(0)
        else:
            key = round(fam.eta, 12)
            if key not in cz_cache:
                sign = 1 if fam.eta > 0 else -1
                cz_cache[key] = sign * cz_index_path(H.a0, abs(fam.eta), tol)
            cz = cz_cache[key]
        fam = replace(fam, cz_transverse=cz)
        for pole in ("min", "max"):
            g = grading(fam, pole, H, tol)
            if not isinstance(g, HalfInt) or not g.is_integer:
                raise InternalError(f"non-integer grading {g} for {fam} at {pole}")
            out.append(Generator(fam, pole, fam.eta, sigma_index(fam, pole), g))
    out.sort(key=lambda g: (g.action, g.family.side, g.pole))
    return out


def positive_correspondence_check(H: QuadraticHamiltonian, window: ActionWindow,
                                  tol: Tolerances = DEFAULT_TOL,
                                  h_side: QuadraticHamiltonian | None = None) -> bool:
    """Over a positive action window the two stationary-free complexes agree.

    Compares the multisets of (grading, action) pairs between generators
    attached to the compact side and to the full hypersurface side, each
    computed by its own census.  ``h_side`` substitutes a different
    Hamiltonian for the hypersurface side; tests use it to demonstrate
    that a genuine mismatch is detected.
    """
    if window.lo <= 0:
        raise InputError("correspondence check needs a strictly positive window")
    gens0 = generator_census(H, window, tol)
    gens1 = generator_census(h_side if h_side is not None else H, window, tol)
    h0 = sorted((g.grading.doubled, round(g.action, 9))
                for g in gens0 if g.family.side == "H0")
    h1 = sorted((g.grading.doubled, round(g.action, 9))
                for g in gens1 if g.family.side == "H")
    return h0 == h1


# ---------------------------------------------------------------------------
# known homological inputs
# ---------------------------------------------------------------------------


def singular_homology(kind: str, n: int | None = None, k: int | None = None) -> GradedZ2Space:
    """Z/2 singular homology of the level set ('sigma'), its compact core
    ('sigma0'), or a point."""
    if kind == "point":
        return GradedZ2Space({0: 1})
    if n is None or k is None:
        raise InputError("n and k are required for level-set homology")
    if not (1 <= k <= n - 1):
        raise InputError(f"need 1 <= k <= n-1, got n={n}, k={k}")
    if kind == "sigma":
        # S^(n+k-1) x R^(n-k), homotopy equivalent to the sphere
        return GradedZ2Space({0: 1, n + k - 1: 1})
    if kind == "sigma0":
        return GradedZ2Space({0: 1, 2 * k - 1: 1})
    raise InputError(f"unknown space kind {kind!r}")


def rfh_pm_compact(k: int) -> tuple:
    """Positive and negative homology of the compact model: one Z/2 class
    each, in degrees k+1 and -k."""
    if isinstance(k, bool) or int(k) != k or k < 1:
        raise InputError(f"k must be a positive integer, got {k!r}")
    return GradedZ2Space({k + 1: 1}), GradedZ2Space({-k: 1})


# ---------------------------------------------------------------------------
# exact sequence solver
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExactSequenceProblem:
    """A bounded long exact sequence of Z/2 spaces.

    terms: tuple of (label, dim or None); None marks an unknown.
    maps: annotations for the arrows term[i] -> term[i+1], each one of
    'unknown', 'zero', 'iso', or an integer rank.  The sequence must be
    closed off by zero terms at both ends.
    """

    terms: tuple
    maps: tuple = field(default=())

    def __post_init__(self):
        if len(self.terms) < 3:
            raise InputError("an exact sequence needs at least three terms")
        maps = self.maps or ("unknown",) * (len(self.terms) - 1)
        if len(maps) != len(self.terms) - 1:
            raise InputError("need exactly one map annotation per arrow")
        for ann in maps:
            if ann in ("unknown", "zero", "iso"):
                continue
            if isinstance(ann, bool) or not isinstance(ann, int) or ann < 0:
                raise InputError(f"bad map annotation {ann!r}")
        first, last = self.terms[0][1], self.terms[-1][1]
        if first != 0 or last != 0:
            raise InputError("sequence must start and end with explicit zero terms")
        object.__setattr__(self, "maps", tuple(maps))


@dataclass(frozen=True)
class SolvedSequence:
    dims: tuple  # (label, dim) for every term
    ranks: tuple  # solved rank of each arrow

    def dim_of(self, label) -> int:
        hits = [d for lab, d in self.dims if lab == label]
        if not hits:
            raise InputError(f"no term labelled {label!r}")
        if len(hits) > 1:
            raise InputError(f"label {label!r} is not unique")
        return hits[0]


def _intervals_step(lo, hi, rlo, rhi, maps, n):
    """One monotone tightening pass; returns True if anything moved."""
    changed = False

    def set_lo(arr, i, v):
        nonlocal changed
        if v > arr[i]:
            arr[i] = v
            changed = True

    def set_hi(arr, i, v):
        nonlocal changed
        if v < arr[i]:
            arr[i] = v
            changed = True

    for i in range(n - 1):
        # rank bounds from the two adjacent terms
        set_hi(rhi, i, min(hi[i], hi[i + 1]))
        ann = maps[i]
        if ann == "zero":
            set_hi(rhi, i, 0)
        elif ann == "iso":
            set_lo(rlo, i, max(lo[i], lo[i + 1]))
            set_hi(rhi, i, min(hi[i], hi[i + 1]))
            # iso forces equal dims
            set_lo(lo, i, lo[i + 1])
            set_lo(lo, i + 1, lo[i])
            set_hi(hi, i, hi[i + 1])
            set_hi(hi, i + 1, hi[i])
        elif isinstance(ann, int):
            set_lo(rlo, i, ann)
            set_hi(rhi, i, ann)
    for i in range(n):
        # exactness at interior term i: dim = rank(in) + rank(out)
        rin_lo = rlo[i - 1] if i > 0 else 0
        rin_hi = rhi[i - 1] if i > 0 else 0
        rout_lo = rlo[i] if i < n - 1 else 0
        rout_hi = rhi[i] if i < n - 1 else 0
        set_lo(lo, i, rin_lo + rout_lo)
        set_hi(hi, i, rin_hi + rout_hi)
        if i > 0:
            set_lo(rlo, i - 1, lo[i] - rout_hi)
            set_hi(rhi, i - 1, hi[i] - rout_lo)
        if i < n - 1:
            set_lo(rlo, i, lo[i] - rin_hi)
            set_hi(rhi, i, hi[i] - rin_lo)
    # iso annotations force equal dims; propagate once more through ranks
    for i in range(n - 1):
        if maps[i] == "iso":
            set_lo(rlo, i, max(lo[i], lo[i + 1]))
    return changed


BIG = 10**9


def solve_exact_sequence(problem: ExactSequenceProblem) -> SolvedSequence:
    """Solve all unknown dimensions by interval propagation on ranks.

    Raises Underdetermined (naming the stuck terms) when propagation
    stalls with slack left, and Inconsistent when the constraints admit
    no solution.
    """
    n = len(problem.terms)
    labels = [lab for lab, _ in problem.terms]
    lo = [0] * n
    hi = [BIG] * n
    for i, (_, d) in enumerate(problem.terms):
        if d is not None:
            if isinstance(d, bool) or int(d) != d or d < 0:
                raise InputError(f"bad dimension {d!r} at term {labels[i]!r}")
            lo[i] = hi[i] = int(d)
    rlo = [0] * (n - 1)
    rhi = [BIG] * (n - 1)
    maps = problem.maps

    for _ in range(64 * n + 64):
        if not _intervals_step(lo, hi, rlo, rhi, maps, n):
            break
    for i in range(n):
        if lo[i] > hi[i]:
            raise Inconsistent(f"no consistent dimension for term {labels[i]!r}")
    for i in range(n - 1):
        if rlo[i] > rhi[i]:
            raise Inconsistent(f"no consistent rank for arrow {labels[i]!r} -> {labels[i + 1]!r}")
    stuck = [labels[i] for i in range(n) if lo[i] != hi[i]]
    if stuck:
        raise Underdetermined(f"cannot determine dimensions of: {', '.join(map(str, stuck))}")
    stuck_r = [i for i in range(n - 1) if rlo[i] != rhi[i]]
    if stuck_r:
        arrows = ", ".join(f"{labels[i]} -> {labels[i + 1]}" for i in stuck_r)
        raise Underdetermined(f"cannot determine ranks of: {arrows}")
    return SolvedSequence(tuple(zip(labels, lo)), tuple(rlo))


def alternating_sum(dims) -> int:
    """Alternating sum of a finite list of dimensions; zero on any
    dimension list realized by a bounded exact sequence."""
    return sum((-1) ** i * d for i, d in enumerate(dims))


# ---------------------------------------------------------------------------
# the two sequences
# ---------------------------------------------------------------------------


def _degree_range(n: int, k: int) -> tuple:
    d_hi = max(k + 2, 2)
    d_lo = -n - 1
    return d_hi, d_lo


def exact1_problem(n: int, k: int) -> ExactSequenceProblem:
    """Sequence relating level-set homology, the nonnegative-action theory
    and the positive-action theory:

        ... -> H_(d+n-1)(Sigma) -> RFH>=0_d -> RFH+_d -> H_(d+n-2)(Sigma) -> ...

    The arrow out of the positive part in top degree is an isomorphism
    onto the fundamental-class term; that single seed determines the rest.
    """
    h_sigma = singular_homology("sigma", n, k)
    hplus, _ = rfh_pm_compact(k)
    d_hi, d_lo = _degree_range(n, k)
    terms = [("0-", None)]
    maps = []
    for d in range(d_hi, d_lo - 1, -1):
        terms.append((("H(Sigma)", d + n - 1), h_sigma.dim(d + n - 1)))
        terms.append((("RFH>=0", d), None))
        terms.append((("RFH+", d), hplus.dim(d)))
        maps.extend(["unknown", "unknown", "unknown"])
    terms.append(("0+", None))
    maps.append("unknown")
    # close the ends: outside the degree range everything is zero
    terms[0] = ("0-", 0)
    terms[-1] = ("0+", 0)
    # seed: RFH+_{k+1} -> H_{k+n-1}(Sigma) is an isomorphism
    labels = [lab for lab, _ in terms]
    i = labels.index(("RFH+", k + 1))
    if labels[i + 1] != ("H(Sigma)", k + n - 1):
        raise InternalError("sequence layout broke")
    maps[i] = "iso"
    return ExactSequenceProblem(tuple(terms), tuple(maps))


def exact2_problem(n: int, k: int, geq0: GradedZ2Space) -> ExactSequenceProblem:
    """Sequence relating the negative, full, and nonnegative theories:

        ... -> RFH-_d -> RFH_d -> RFH>=0_d -> RFH-_(d-1) -> ...
    """
    _, hminus = rfh_pm_compact(k)
    d_hi, d_lo = _degree_range(n, k)
    terms = [("0-", 0)]
    maps = ["unknown"]
    for d in range(d_hi, d_lo - 1, -1):
        terms.append((("RFH-", d), hminus.dim(d)))
        terms.append((("RFH", d), None))
        terms.append((("RFH>=0", d), geq0.dim(d)))
        maps.extend(["unknown", "unknown", "unknown"])
    terms.append(("0+", 0))
    return ExactSequenceProblem(tuple(terms), tuple(maps))


def _collect(solved: SolvedSequence, name: str) -> GradedZ2Space:
    dims = {}
    for lab, d in solved.dims:
        if isinstance(lab, tuple) and lab[0] == name and d:
            dims[lab[1]] = dims.get(lab[1], 0) + d
    return GradedZ2Space(dims)


def rfh_positive(k: int) -> GradedZ2Space:
    return rfh_pm_compact(k)[0]


def rfh_geq0(n: int, k: int) -> GradedZ2Space:
    solved = solve_exact_sequence(exact1_problem(n, k))
    return _collect(solved, "RFH>=0")


def rfh_full(H_or_n, k: int | None = None, tol: Tolerances = DEFAULT_TOL) -> GradedZ2Space:
    """Full Rabinowitz Floer homology; accepts either (n, k) or a
    Hamiltonian carrying them."""
    if isinstance(H_or_n, QuadraticHamiltonian):
        n, k = H_or_n.n, H_or_n.k
    else:
        n = H_or_n
        if k is None:
            raise InputError("k is required when n is given directly")
    geq0 = rfh_geq0(n, k)
    solved = solve_exact_sequence(exact2_problem(n, k, geq0))
    return _collect(solved, "RFH")


@dataclass(frozen=True)
class RfhReport:
    n: int
    k: int
    plus: GradedZ2Space
    minus: GradedZ2Space
    geq0: GradedZ2Space
    full: GradedZ2Space


def rfh_report(H_or_n, k: int | None = None, tol: Tolerances = DEFAULT_TOL) -> RfhReport:
    if isinstance(H_or_n, QuadraticHamiltonian):
        n, k = H_or_n.n, H_or_n.k
    else:
        n = H_or_n
        if k is None:
            raise InputError("k is required when n is given directly")
    if not (1 <= k <= n - 1):
        raise InputError(f"need 1 <= k <= n-1, got n={n}, k={k}")
    plus, minus = rfh_pm_compact(k)
    geq0 = rfh_geq0(n, k)
    solved = solve_exact_sequence(exact2_problem(n, k, geq0))
    return RfhReport(n, k, plus, minus, geq0, _collect(solved, "RFH"))
