"""Closed-form constructions and spread bounds."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .geometry import InterleaverCode, spread_D
from .modring import RingPolynomial


class DEFamily(str, enum.Enum):
    TWO_P_SQUARED = "two_p_squared"
    CENTERED_SQUARE = "centered_square"
    INSPECTION = "inspection"


@dataclass(frozen=True)
class BoundReport:
    N: int
    ub_D: float
    ub_D_int: int
    ub_DE: float | None
    ub_DE_family: DEFamily | None


def ms_qpp(k: int) -> RingPolynomial:
    """(2^k - 1) x + 2^(k+1) x^2 mod 2^(2k-1); a genuine quadratic only for k >= 4."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return RingPolynomial(2 ** (2 * k - 1), (0, 2**k - 1, 2 ** (k + 1)))


def ms_qpp_is_reducible(k: int) -> bool:
    return k <= 3


def ub_D(N: int) -> tuple[float, int]:
    if N < 2:
        raise ValueError("N must be >= 2")
    return math.sqrt(2 * N), math.isqrt(2 * N)


def _exact_sqrt(n: int) -> int | None:
    r = math.isqrt(n)
    return r if r * r == n else None


def ub_DE_families(N: int) -> list[tuple[DEFamily, float]]:
    """Every closed-form L1 spread bound that applies to N."""
    out = []
    if N == 4:
        out.append((DEFamily.INSPECTION, 3.0))
    p = _exact_sqrt(N // 2) if N % 2 == 0 else None
    if p is not None and p >= 2:
        out.append((DEFamily.TWO_P_SQUARED, 2 * (N - 1) / (math.sqrt(2 * N) - 1)))
    # N = p^2 + (p-1)^2  <=>  2N - 1 = (2p - 1)^2
    s = _exact_sqrt(2 * N - 1)
    if s is not None and s % 2 == 1 and (s + 1) // 2 >= 2:
        out.append((DEFamily.CENTERED_SQUARE, 2 * (N - 1) / (math.sqrt(2 * N - 1) - 1)))
    return out


def ub_DE(N: int) -> float | None:
    fams = ub_DE_families(N)
    return fams[0][1] if fams else None


def bounds(N: int) -> BoundReport:
    real, integer = ub_D(N)
    fams = ub_DE_families(N)
    fam, val = fams[0] if fams else (None, None)
    return BoundReport(N, real, integer, val, fam)


def linear_ms_enumerate(N: int) -> list[int]:
    """All unit f1 whose linear interleaver f1*x reaches D = floor(sqrt(2N))."""
    n = _exact_sqrt(N // 2) if N % 2 == 0 else None
    if n is None or n < 1:
        raise ValueError(f"N must be 2n^2, got {N}")
    target = math.isqrt(2 * N)
    out = []
    for f1 in range(1, N):
        if math.gcd(f1, N) != 1:
            continue
        if spread_D(InterleaverCode.from_poly(RingPolynomial(N, (0, f1)))) == target:
            out.append(f1)
    return out
