"""Inverse interleavers and inverse polynomials."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import InterleaverCode
from .modring import RingPolynomial, fit_sequence


@dataclass(frozen=True)
class InverseResult:
    inverse_perm: np.ndarray
    inverse_poly: RingPolynomial | None = None
    fitted_degree: int | None = None


def inverse_permutation(code: InterleaverCode) -> np.ndarray:
    inv = np.empty(code.length, dtype=np.int64)
    inv[code.perm] = np.arange(code.length, dtype=np.int64)
    inv.flags.writeable = False
    return inv


def fit_polynomial_inverse(poly: RingPolynomial, max_degree: int) -> RingPolynomial | None:
    """Lowest-degree polynomial (<= max_degree) equal to the inverse permutation.

    Candidates come from interpolation at y = 0..d with every branch of a
    singular system enumerated, so ``None`` means no such polynomial exists.
    """
    return invert(poly, max_degree).inverse_poly


def invert(poly: RingPolynomial, max_degree: int = 2) -> InverseResult:
    inv = inverse_permutation(InterleaverCode.from_poly(poly))
    for d in range(1, max_degree + 1):
        found = fit_sequence(inv, poly.modulus, d)
        if found is not None:
            return InverseResult(inv, found, found.degree)
    return InverseResult(inv)


def ms_inverse(k: int) -> RingPolynomial:
    """Closed-form inverse (-2^k - 1) x + 2^(k+1) x^2 mod 2^(2k-1)."""
    if k < 4:
        raise ValueError("closed-form inverse is stated for k >= 4")
    return RingPolynomial(2 ** (2 * k - 1), (0, -(2**k) - 1, 2 ** (k + 1)))


def shifted_inverse(inv: RingPolynomial, f0: int) -> RingPolynomial:
    """Inverse of f(x) + f0 given the inverse of f: y -> inv(y - f0)."""
    return inv.shift_argument(-f0)
