"""Non-linearity and quality metrics for interleavers."""
from __future__ import annotations

import math
from dataclasses import dataclass, asdict

import numpy as np

from .geometry import InterleaverCode, translation_period
from .modring import RingPolynomial, evaluate


class UnsupportedPolynomial(ValueError):
    pass


@dataclass(frozen=True)
class MetricsReport:
    N: int
    D: int
    D_E: int
    zeta: int
    epsilon: int
    zeta_refined: int | None
    omega: float
    omega_refined: float | None
    corner_merit: int
    entropy_bits: float | None
    D_capped: bool = False

    def to_dict(self) -> dict:
        return asdict(self)


def zeta(code: InterleaverCode) -> int:
    """Number of orbits under the code's translation isometries."""
    return translation_period(code)


def epsilon(code: InterleaverCode) -> int:
    return code.length // zeta(code)


def zeta_refined(poly: RingPolynomial, period: int | None = None) -> int:
    """Distinct values of the non-linear part f(x) - f1*x - f0 over one period.

    ``period`` defaults to the orbit count of the polynomial's code.  Only
    defined when the linear coefficient is a unit mod N.
    """
    N = poly.modulus
    f0, f1 = poly.coef(0), poly.coef(1)
    if math.gcd(f1, N) != 1:
        raise UnsupportedPolynomial(f"gcd(f1={f1}, N={N}) != 1")
    if period is None:
        period = translation_period(InterleaverCode.from_poly(poly))
    return len({(evaluate(poly, x) - f1 * x - f0) % N for x in range(period)})


def omega(D: int, zeta: int) -> float:
    if D < 1:
        raise ValueError("D must be >= 1")
    return math.log(D) * zeta


omega_refined = omega


def corner_merit(code: InterleaverCode) -> int:
    """min over x of the L1 distance from (x, f(x)) to (N-1, N-1)."""
    N = code.length
    x = np.arange(N)
    return int(((N - 1 - x) + (N - 1 - code.perm)).min())


def _corner_merit_values(perm0: np.ndarray) -> np.ndarray:
    """Corner merit of perm0 + f0 for every f0 at once.

    For a fixed point x the L1 distance to the corner after shifting by f0 is
    (N-1-x) + (N-1-((y+f0) mod N)); we take the minimum over x per f0.
    """
    N = len(perm0)
    best = np.full(N, 2 * N, dtype=np.int64)
    f0 = np.arange(N, dtype=np.int64)
    # only points near the right edge can be the minimiser once best is small
    for x in range(N - 1, -1, -1):
        dx = N - 1 - x
        if dx >= best.max():
            break
        y = (perm0[x] + f0) % N
        np.minimum(best, dx + (N - 1 - y), out=best)
    return best


def optimize_constant(poly: RingPolynomial) -> tuple[int, int]:
    """f0 maximising the corner merit of poly + f0; ties go to the smallest f0."""
    code = InterleaverCode.from_poly(poly.with_constant(0))
    merits = _corner_merit_values(code.perm)
    f0 = int(np.argmax(merits))
    return f0, int(merits[f0])


def parameter_entropy(poly: RingPolynomial) -> float:
    """deg(poly) * log2(N/2) bits; the model assumes N is a power of two."""
    N = poly.modulus
    if N & (N - 1):
        raise UnsupportedPolynomial(f"entropy model needs N a power of two, got {N}")
    return poly.degree * math.log2(N / 2)
