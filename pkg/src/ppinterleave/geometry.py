"""Interleaver-codes: the point set {(x, f(x))} in Z_N^2.

Distances, spread factors, local spreads and the translation isometries of a
code.  The permutation table is the only representation; nothing is
materialized as a 2-D grid.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .modring import RingPolynomial, eval_sequence
from .permcheck import find_collision, is_qpp_fast

Point = tuple[int, int]


class NotAPermutation(ValueError):
    def __init__(self, collision: tuple[int, int, int]):
        x1, x2, y = collision
        super().__init__(f"not a permutation: f({x1}) = f({x2}) = {y}")
        self.collision = collision


@dataclass(frozen=True, eq=False)
class InterleaverCode:
    length: int
    perm: np.ndarray
    source: RingPolynomial | None = field(default=None)

    @classmethod
    def from_perm(cls, perm: Iterable[int]) -> "InterleaverCode":
        arr = np.array(list(perm), dtype=np.int64)
        N = len(arr)
        if N < 1 or arr.min() < 0 or arr.max() >= N:
            raise ValueError("perm entries must lie in [0, N)")
        collision = find_collision(arr)
        if collision is not None:
            raise NotAPermutation(collision)
        arr.flags.writeable = False
        return cls(N, arr)

    @classmethod
    def from_poly(cls, poly: RingPolynomial) -> "InterleaverCode":
        arr = eval_sequence(poly)
        collision = find_collision(arr)
        if collision is not None:
            raise NotAPermutation(collision)
        return cls(poly.modulus, arr, poly)

    def point(self, x: int) -> Point:
        x %= self.length
        return x, int(self.perm[x])

    def qpp_coefficients(self) -> tuple[int, int] | None:
        """(q1, q2) if the source is a quadratic (constant ignored)."""
        if self.source is None or self.source.degree != 2:
            return None
        return self.source.coef(1), self.source.coef(2)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, InterleaverCode) and np.array_equal(self.perm, other.perm)

    def __hash__(self) -> int:
        return hash(self.perm.tobytes())


def lee(i: int, N: int) -> int:
    """Circular distance |i|_N."""
    i %= N
    return min(i, N - i)


def lee_dist(N: int, p1: Point, p2: Point) -> int:
    return lee(p1[0] - p2[0], N) + lee(p1[1] - p2[1], N)


def l1_dist(p1: Point, p2: Point) -> int:
    return abs(p1[0] - p2[0]) + abs(p1[1] - p2[1])


def ub_spread(N: int) -> int:
    """Integer-tightened upper bound floor(sqrt(2N))."""
    return math.isqrt(2 * N)


def local_cap(N: int) -> int:
    """ceil(sqrt(2N)), the clamp applied to local spreads."""
    r = math.isqrt(2 * N)
    return r if r * r == 2 * N else r + 1


def _circ_gaps(perm: np.ndarray, d: int) -> np.ndarray:
    N = len(perm)
    diff = np.abs(np.roll(perm, -d) - perm) % N
    return np.minimum(diff, N - diff)


def spread_D(code: InterleaverCode) -> int:
    """Minimum Lee distance between distinct points.

    Offsets are scanned in increasing |Δx|_N; once the offset alone reaches
    the current best nothing closer can exist.  Offset d and N - d give the
    same pairs, so only d <= N/2 is visited.
    """
    N = code.length
    if N < 2:
        raise ValueError("spread needs N >= 2")
    best = 2 * N
    d = 1
    while d <= N // 2 and d < best:
        best = min(best, d + int(_circ_gaps(code.perm, d).min()))
        d += 1
    return best


def spread_DE(code: InterleaverCode) -> int:
    """Minimum L1 (non-wrapping) distance between distinct points."""
    N = code.length
    if N < 2:
        raise ValueError("spread needs N >= 2")
    perm = code.perm
    best = 2 * N
    d = 1
    while d < N and d < best:
        best = min(best, d + int(np.abs(perm[d:] - perm[:-d]).min()))
        d += 1
    return best


def local_spread(code: InterleaverCode, x: int, with_flag: bool = False):
    """Distance from p_x to its nearest neighbour, clamped at ceil(sqrt(2N)).

    With ``with_flag`` returns ``(value, capped)`` where ``capped`` means no
    neighbour lies within the clamp.
    """
    N = code.length
    cap = local_cap(N)
    perm = code.perm
    y = int(perm[x % N])
    best = None
    for d in range(1, min(cap, N // 2) + 1):
        if best is not None and d >= best:
            break
        for xx in ((x + d) % N, (x - d) % N):
            dist = d + lee(int(perm[xx]) - y, N)
            if dist <= cap and (best is None or dist < best):
                best = dist
    capped = best is None
    if capped:
        best = cap
    return (best, capped) if with_flag else best


def spread_via_representatives(code: InterleaverCode, reps: Sequence[int], with_flag: bool = False):
    """Spread factor as the minimum local spread over orbit representatives."""
    period = translation_period(code)
    residues = sorted({r % period for r in reps})
    if len(reps) != period or len(residues) != period:
        raise ValueError(
            f"representatives must hit each of the {period} orbits exactly once"
        )
    values, capped = _local_spreads(code, np.asarray(reps, dtype=np.int64) % code.length)
    value = int(values.min())
    return (value, bool(capped.all())) if with_flag else value


def _local_spreads(code: InterleaverCode, xs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """local_spread for many points at once; returns (values, capped flags)."""
    N = code.length
    cap = local_cap(N)
    perm = code.perm
    y = perm[xs]
    best = np.full(len(xs), cap + 1, dtype=np.int64)
    for d in range(1, min(cap, N // 2) + 1):
        if d >= best.max():
            break
        for xx in ((xs + d) % N, (xs - d) % N):
            gap = np.abs(perm[xx] - y)
            np.minimum(best, d + np.minimum(gap, N - gap), out=best)
    capped = best > cap
    best[capped] = cap
    return best, capped


def qpp_orbit_translations(N: int, q1: int, q2: int) -> list[Point]:
    """Closed-form isometries of q1*x + q2*x^2: k0 solves 2*q2*k0 = 0 (mod N)."""
    if not is_qpp_fast(N, q1, q2):
        raise ValueError(f"{q1}x + {q2}x^2 is not a QPP mod {N}")
    g = math.gcd(2 * q2, N)
    out = []
    for i in range(g):
        k0 = N * i // g
        out.append((k0, (q1 * k0 - q2 * k0 * k0) % N))
    return out


def _divisors(n: int) -> list[int]:
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def _is_isometry_shift(perm: np.ndarray, k0: int) -> bool:
    N = len(perm)
    diff = (np.roll(perm, -k0) - perm) % N
    return bool((diff == diff[0]).all())


def translation_period(code: InterleaverCode, generic: bool = False) -> int:
    """Smallest k0 > 0 such that a translation (k0, k1) maps the code to itself.

    The admissible k0 form a subgroup of Z_N, so the smallest one divides N
    and only divisors need testing.  This is also the number of orbits.
    Quadratic sources use the gcd formula unless ``generic`` is set.
    """
    qc = None if generic else code.qpp_coefficients()
    N = code.length
    if qc is not None:
        return N // math.gcd(2 * qc[1], N)
    for t in _divisors(N):
        if _is_isometry_shift(code.perm, t):
            return t
    return N


def isometry_group(code: InterleaverCode, generic: bool = False) -> list[Point]:
    """All translations (k0, k1) with perm[x + k0] = perm[x] + k1 for every x.

    Works for any permutation.  For a permutation k1 is forced by k0
    (k1 = perm[k0] - perm[0]), so the group is cyclic, generated by the
    translation with the smallest valid k0.
    """
    N = code.length
    t = translation_period(code, generic=generic)
    base = int(code.perm[0])
    return [(k0, (int(code.perm[k0]) - base) % N) for k0 in range(0, N, t)]


@dataclass(frozen=True)
class OrbitDecomposition:
    translations: list[Point]
    orbits: list[list[Point]]
    representatives: list[int]

    @property
    def zeta(self) -> int:
        return len(self.orbits)

    @property
    def orbit_size(self) -> int:
        return len(self.translations)


def orbits(code: InterleaverCode) -> OrbitDecomposition:
    """Partition the points under the isometry group; reps are x = 0..zeta-1."""
    N = code.length
    H = isometry_group(code)
    zeta = N // len(H)
    out = []
    for r in range(zeta):
        y = int(code.perm[r])
        out.append([((r + k0) % N, (y + k1) % N) for k0, k1 in H])
    return OrbitDecomposition(H, out, list(range(zeta)))


def intra_orbit_bound(N: int, q2: int) -> int:
    """Lower bound 2N/gcd(2 q2, N) on Lee distances within one QPP orbit.

    Both coordinates of the orbit translations are multiples of N/gcd(2 q2, N).
    """
    return 2 * N // math.gcd(2 * q2, N)


def spread_profile(code: InterleaverCode, x: int) -> dict[int, int]:
    """Count of points at Lee distance exactly i from p_x, i = 1..floor(sqrt(2N))."""
    N = code.length
    B = ub_spread(N)
    counts = {i: 0 for i in range(1, B + 1)}
    y = int(code.perm[x % N])
    seen = set()
    for d in range(1, min(B, N // 2) + 1):
        for xx in ((x + d) % N, (x - d) % N):
            if xx in seen:
                continue
            seen.add(xx)
            dist = d + lee(int(code.perm[xx]) - y, N)
            if dist <= B:
                counts[dist] += 1
    return counts


def brute_force_spread(code: InterleaverCode, metric: str = "lee") -> int:
    """O(N^2) pairwise minimum, used as an oracle."""
    N = code.length
    x = np.arange(N)
    best = 2 * N
    for i in range(N - 1):
        dx = x[i + 1:] - i
        dy = np.abs(code.perm[i + 1:] - code.perm[i])
        if metric == "lee":
            dx = np.minimum(dx, N - dx)
            dy = np.minimum(dy, N - dy)
        best = min(best, int((dx + dy).min()))
    return best
