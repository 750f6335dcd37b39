"""Exhaustive coefficient searches over permutation polynomials.

Quadratic searches never build permutation tables.  For f = f1 x + f2 x^2,

    f(x + d) - f(x) = f1 d + f2 d^2 + 2 f2 d x,

and as x runs over Z_N the last term runs over the multiples of
g_d = gcd(2 f2 d, N).  The closest point at horizontal offset d therefore
sits at vertical Lee distance min(r, g_d - r) with r = (f1 d + f2 d^2) mod g_d,
so the spread factor costs O(D) per candidate instead of O(N D).
"""
from __future__ import annotations

import enum
import itertools
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numba
import numpy as np

from .geometry import (
    InterleaverCode,
    local_cap,
    spread_DE,
    spread_via_representatives,
    translation_period,
    ub_spread,
)
from .metrics import (
    MetricsReport,
    UnsupportedPolynomial,
    corner_merit,
    omega,
    parameter_entropy,
    zeta_refined,
)
from .modring import RingPolynomial
from .permcheck import admissible_f1, exists_irreducible_qpp, is_irreducible_degree, qpp_f2_admissible

log = logging.getLogger(__name__)


class Objective(str, enum.Enum):
    MAX_D = "max_D"
    MAX_OMEGA_REFINED = "max_omega_refined"


class NoQPPExists(ValueError):
    pass


class NoCandidate(ValueError):
    pass


def default_beta(N: int) -> float:
    return 0.45 if N <= 1600 else 0.30


@dataclass(frozen=True)
class SearchSpec:
    N: int
    degree: int = 2
    objective: Objective = Objective.MAX_D
    beta: float | None = None
    # degree > 2 only: one range per coefficient f1..fK
    coefficient_bounds: tuple[range, ...] | None = None
    symmetry_pruning: bool = False

    def __post_init__(self):
        object.__setattr__(self, "objective", Objective(self.objective))
        if self.degree < 2:
            raise ValueError("degree must be >= 2")
        if self.beta is not None and not 0 < self.beta <= 1:
            raise ValueError("beta must lie in (0, 1]")
        if self.degree > 2 and self.coefficient_bounds is None:
            raise ValueError("degree > 2 searches need explicit coefficient_bounds")

    @property
    def effective_beta(self) -> float:
        return default_beta(self.N) if self.beta is None else self.beta

    @property
    def spread_floor(self) -> float:
        # floor(sqrt(2N)) reproduces the published beta thresholds (N = 40 needs it)
        return self.effective_beta * ub_spread(self.N)


@dataclass(frozen=True)
class SearchResult:
    winner: RingPolynomial
    D: int
    zeta: int
    zeta_refined: int
    omega_refined: float
    candidates_examined: int
    ties_at_optimum: int
    objective: Objective = field(default=Objective.MAX_D)

    def to_dict(self) -> dict:
        return {
            "winner": list(self.winner.coefficients),
            "N": self.winner.modulus,
            "polynomial": str(self.winner),
            "D": self.D,
            "zeta": self.zeta,
            "zeta_refined": self.zeta_refined,
            "omega_refined": self.omega_refined,
            "candidates_examined": self.candidates_examined,
            "ties_at_optimum": self.ties_at_optimum,
            "objective": self.objective.value,
        }


@numba.njit(nogil=True, cache=True)
def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


@numba.njit(nogil=True, cache=True)
def qpp_spreads(N, f2, f1s):
    """Spread factor D of f1 x + f2 x^2 (mod N) for every f1 in f1s."""
    half = N // 2
    out = np.empty(len(f1s), dtype=np.int64)
    for i in range(len(f1s)):
        f1 = f1s[i]
        best = 2 * N
        d = 1
        while d <= half and d < best:
            g = _gcd(2 * f2 * d % N, N)
            r = (f1 * d + f2 * (d * d % N)) % g
            lee = r if r < g - r else g - r
            if d + lee < best:
                best = d + lee
            d += 1
        out[i] = best
    return out


def qpp_zeta(N: int, f2: int) -> int:
    return N // math.gcd(2 * f2, N)


def qpp_zeta_refined(N: int, f2: int) -> int:
    """Distinct f2 x^2 mod N over x < zeta; independent of f1."""
    z = qpp_zeta(N, f2)
    return len({f2 * x * x % N for x in range(z)})


@dataclass(frozen=True)
class _Best:
    """Per-f2 summary; keys compare exactly (D, or D**zeta' for omega)."""

    key: int
    f2: int
    f1: int
    D: int
    zeta: int
    zeta_refined: int
    ties: int
    examined: int


def _scan_f2(spec: SearchSpec, f2: int) -> _Best | None:
    N = spec.N
    f1s = admissible_f1(N, f2)
    if spec.symmetry_pruning:
        f1s = f1s[f1s <= N // 2]
    if len(f1s) == 0:
        return None
    D = qpp_spreads(N, f2, f1s)
    z = qpp_zeta(N, f2)
    zp = qpp_zeta_refined(N, f2)
    if spec.objective is Objective.MAX_D:
        Dm = int(D.max())
        key = Dm
    else:
        ok = D >= spec.spread_floor
        if not ok.any():
            return _Best(-1, f2, -1, -1, z, zp, 0, len(f1s))
        Dm = int(D[ok].max())
        key = Dm**zp
    hits = D == Dm
    f1 = int(f1s[np.argmax(hits)])
    return _Best(key, f2, f1, Dm, z, zp, int(hits.sum()), len(f1s))


def _scan_chunk(spec: SearchSpec, f2s: list[int]) -> list[_Best]:
    return [b for b in (_scan_f2(spec, f2) for f2 in f2s) if b is not None]


def _merge(bests: list[_Best]) -> _Best | None:
    """Largest key, then smallest f2, then smallest f1; independent of order."""
    top = None
    for b in bests:
        if b.key < 0:
            continue
        if top is None or (-b.key, b.f2, b.f1) < (-top.key, top.f2, top.f1):
            top = b
    return top


def candidate_f2(spec: SearchSpec) -> list[int]:
    N = spec.N
    hi = N // 2 if spec.symmetry_pruning else N - 1
    return [f2 for f2 in range(1, hi + 1) if (2 * f2) % N and qpp_f2_admissible(N, f2)]


def _run_quadratic(spec: SearchSpec, workers: int) -> SearchResult:
    if exists_irreducible_qpp(spec.N) is None:
        raise NoQPPExists(f"no irreducible-degree QPP exists for N={spec.N}")
    f2s = candidate_f2(spec)
    n_chunks = max(1, min(len(f2s), 4 * workers))
    chunks = [f2s[i::n_chunks] for i in range(n_chunks)]
    if workers <= 1:
        parts = [_scan_chunk(spec, c) for c in chunks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda c: _scan_chunk(spec, c), chunks))
    bests = [b for part in parts for b in part]
    top = _merge(bests)
    examined = sum(b.examined for b in bests)
    if top is None:
        raise NoCandidate(
            f"no QPP for N={spec.N} reaches D >= {spec.spread_floor:.3f} "
            f"(beta={spec.effective_beta})"
        )
    ties = sum(b.ties for b in bests if b.key == top.key)
    return SearchResult(
        winner=RingPolynomial.qpp(spec.N, top.f1, top.f2),
        D=top.D,
        zeta=top.zeta,
        zeta_refined=top.zeta_refined,
        omega_refined=omega(top.D, top.zeta_refined),
        candidates_examined=examined,
        ties_at_optimum=ties,
        objective=spec.objective,
    )


def _run_higher(spec: SearchSpec) -> SearchResult:
    """Brute-force search over explicit coefficient ranges (exploratory)."""
    N = spec.N
    bounds = spec.coefficient_bounds
    if len(bounds) != spec.degree:
        raise ValueError(f"need {spec.degree} coefficient ranges (f1..f{spec.degree})")
    best = None
    examined = ties = 0
    for coeffs in itertools.product(*bounds):
        if coeffs[-1] % N == 0:
            continue
        poly = RingPolynomial(N, (0,) + coeffs)
        try:
            code = InterleaverCode.from_poly(poly)
        except ValueError:
            continue
        if not is_irreducible_degree(poly):
            continue
        examined += 1
        z = translation_period(code)
        D = spread_via_representatives(code, range(z))
        try:
            zp = zeta_refined(poly, z)
        except UnsupportedPolynomial:
            zp = None
        if spec.objective is Objective.MAX_D:
            key = D
        else:
            if zp is None or D < spec.spread_floor:
                continue
            key = D**zp
        # highest-order coefficient first, then downwards
        order = (-key,) + tuple(reversed(coeffs[1:])) + (coeffs[0],)
        if best is None or order < best[0]:
            best = (order, poly, D, z, zp)
            ties = 1
        elif order[0] == best[0][0]:
            ties += 1
    if best is None:
        raise NoCandidate(f"no admissible polynomial in the given ranges for N={N}")
    _, poly, D, z, zp = best
    return SearchResult(
        winner=poly,
        D=D,
        zeta=z,
        zeta_refined=zp if zp is not None else -1,
        omega_refined=omega(D, zp) if zp is not None else float("nan"),
        candidates_examined=examined,
        ties_at_optimum=ties,
        objective=spec.objective,
    )


def run_search(spec: SearchSpec, workers: int = 1) -> SearchResult:
    if spec.degree == 2 and spec.coefficient_bounds is None:
        return _run_quadratic(spec, workers)
    return _run_higher(spec)


def search_max_D(spec: SearchSpec | int, workers: int = 1) -> SearchResult:
    if isinstance(spec, int):
        spec = SearchSpec(spec)
    if spec.objective is not Objective.MAX_D:
        raise ValueError("search_max_D needs objective max_D")
    return run_search(spec, workers)


def search_omega(spec: SearchSpec | int, workers: int = 1, beta: float | None = None) -> SearchResult:
    if isinstance(spec, int):
        spec = SearchSpec(spec, objective=Objective.MAX_OMEGA_REFINED, beta=beta)
    if spec.objective is not Objective.MAX_OMEGA_REFINED:
        raise ValueError("search_omega needs objective max_omega_refined")
    return run_search(spec, workers)


def evaluate_candidate(poly: RingPolynomial) -> MetricsReport:
    """Full metrics bundle; raises NotAPermutation with a colliding pair."""
    code = InterleaverCode.from_poly(poly)
    N = code.length
    z = translation_period(code)
    D, capped = spread_via_representatives(code, range(z), with_flag=True)
    try:
        zp = zeta_refined(poly, z)
    except UnsupportedPolynomial:
        zp = None
    try:
        entropy = parameter_entropy(poly)
    except UnsupportedPolynomial:
        entropy = None
    if capped:
        log.warning("spread of %s reached the clamp %d", poly, local_cap(N))
    return MetricsReport(
        N=N,
        D=D,
        D_E=spread_DE(code),
        zeta=z,
        epsilon=N // z,
        zeta_refined=zp,
        omega=omega(D, z),
        omega_refined=omega(D, zp) if zp is not None else None,
        corner_merit=corner_merit(code),
        entropy_bits=entropy,
        D_capped=capped,
    )

