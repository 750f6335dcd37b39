"""Polynomials over the integer ring Z_N.

All residues are kept canonical in ``[0, N)``.  Evaluation uses Horner's
rule; :func:`eval_sequence` produces the whole table ``f(0), ..., f(N-1)``
with a cascade of forward differences so that the inner loop only adds and
compares.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

MAX_MODULUS = 2**31


@dataclass(frozen=True)
class RingPolynomial:
    """``f(x) = f0 + f1*x + ... + fK*x**K (mod N)``, value semantics."""

    modulus: int
    coefficients: tuple[int, ...]

    def __init__(self, modulus: int, coefficients: Iterable[int]):
        modulus = int(modulus)
        if not 2 <= modulus <= MAX_MODULUS:
            raise ValueError(f"modulus must be in [2, 2**31], got {modulus}")
        coeffs = [int(c) % modulus for c in coefficients]
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        if not coeffs:
            coeffs = [0]
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @classmethod
    def qpp(cls, N: int, f1: int, f2: int, f0: int = 0) -> "RingPolynomial":
        return cls(N, (f0, f1, f2))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def coef(self, i: int) -> int:
        return self.coefficients[i] if i < len(self.coefficients) else 0

    def __call__(self, x: int) -> int:
        return evaluate(self, x)

    def __add__(self, other: "RingPolynomial") -> "RingPolynomial":
        _check_same_ring(self, other)
        n = max(len(self.coefficients), len(other.coefficients))
        return RingPolynomial(self.modulus, (self.coef(i) + other.coef(i) for i in range(n)))

    def __sub__(self, other: "RingPolynomial") -> "RingPolynomial":
        _check_same_ring(self, other)
        n = max(len(self.coefficients), len(other.coefficients))
        return RingPolynomial(self.modulus, (self.coef(i) - other.coef(i) for i in range(n)))

    def __mul__(self, other: "RingPolynomial") -> "RingPolynomial":
        _check_same_ring(self, other)
        out = [0] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            for j, b in enumerate(other.coefficients):
                out[i + j] = (out[i + j] + a * b) % self.modulus
        return RingPolynomial(self.modulus, out)

    def with_constant(self, f0: int) -> "RingPolynomial":
        return RingPolynomial(self.modulus, (f0,) + self.coefficients[1:])

    def shift_argument(self, c: int) -> "RingPolynomial":
        """Return ``g(x) = f(x + c)`` expanded (Taylor shift)."""
        N = self.modulus
        K = self.degree
        out = [0] * (K + 1)
        for i, a in enumerate(self.coefficients):
            if a == 0:
                continue
            # (x + c)^i = sum_j C(i, j) c^(i-j) x^j
            for j in range(i + 1):
                out[j] = (out[j] + a * math.comb(i, j) * pow(c, i - j, N)) % N
        return RingPolynomial(N, out)

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coefficients):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append("x" if c == 1 else f"{c}x")
            else:
                terms.append(f"x^{i}" if c == 1 else f"{c}x^{i}")
        return f"{' + '.join(terms) or '0'} (mod {self.modulus})"


def _check_same_ring(a: RingPolynomial, b: RingPolynomial) -> None:
    if a.modulus != b.modulus:
        raise ValueError(f"moduli differ: {a.modulus} vs {b.modulus}")


def evaluate(poly: RingPolynomial, x: int) -> int:
    """Horner evaluation, one multiply-add per degree."""
    N = poly.modulus
    acc = 0
    for c in reversed(poly.coefficients):
        acc = (acc * x + c) % N
    return acc


def evaluate_all(poly: RingPolynomial) -> np.ndarray:
    """Vectorized Horner over every residue; int64 is safe because N <= 2**31."""
    N = poly.modulus
    x = np.arange(N, dtype=np.int64)
    acc = np.zeros(N, dtype=np.int64)
    for c in reversed(poly.coefficients):
        acc = (acc * x + c) % N
    return acc


def forward_differences(poly: RingPolynomial) -> list[int]:
    """``[f(0), Δf(0), Δ²f(0), ..., Δ^K f(0)]`` reduced mod N."""
    K = poly.degree
    vals = [evaluate(poly, x) for x in range(K + 1)]
    diffs = []
    for _ in range(K + 1):
        diffs.append(vals[0] % poly.modulus)
        vals = [b - a for a, b in zip(vals, vals[1:])]
    return diffs


def iter_sequence(poly: RingPolynomial) -> Iterator[int]:
    """Yield f(0), f(1), ..., f(N-1) using additions and comparisons only."""
    N = poly.modulus
    acc = forward_differences(poly)
    K = len(acc) - 1
    for _ in range(N):
        yield acc[0]
        for i in range(K):
            v = acc[i] + acc[i + 1]
            if v >= N:
                v -= N
            acc[i] = v


def eval_sequence(poly: RingPolynomial) -> np.ndarray:
    """All N evaluations from the difference cascade, as a read-only array."""
    out = np.fromiter(iter_sequence(poly), dtype=np.int64, count=poly.modulus)
    out.flags.writeable = False
    return out


def zero_polynomial(N: int, p: int, q: int, m: int = 1, k: int = 0) -> RingPolynomial:
    """Expand ``m*q*prod_{i<p}(x + k + i) mod N`` for ``N = p*q``.

    One of any ``p`` consecutive integers is divisible by ``p`` so every value
    is a multiple of ``m*q*p``, hence zero.
    """
    if p < 1 or q < 1 or p * q != N:
        raise ValueError(f"need N = p*q with p, q >= 1; got N={N}, p={p}, q={q}")
    acc = RingPolynomial(N, [m * q])
    for i in range(p):
        acc = acc * RingPolynomial(N, [k + i, 1])
    return acc


def functional_equal(a: RingPolynomial, b: RingPolynomial) -> bool:
    _check_same_ring(a, b)
    return bool(np.array_equal(evaluate_all(a), evaluate_all(b)))


def _solve_linear_congruence(a: int, b: int, N: int) -> list[int]:
    """All ``t`` in Z_N with ``a*t = b (mod N)``."""
    g = math.gcd(a, N)
    if b % g:
        return []
    step = N // g
    t0 = (b // g) * pow(a // g, -1, step) % step if step > 1 else 0
    return [t0 + j * step for j in range(g)]


def _stirling2(n: int) -> list[list[int]]:
    S = [[0] * (n + 1) for _ in range(n + 1)]
    S[0][0] = 1
    for i in range(1, n + 1):
        for j in range(1, i + 1):
            S[i][j] = j * S[i - 1][j] + S[i - 1][j - 1]
    return S


def interpolation_candidates(values: Sequence[int], N: int, degree: int) -> Iterator[RingPolynomial]:
    """Every polynomial of degree <= ``degree`` matching ``values`` at 0..degree.

    The forward differences satisfy ``Δ^k h(0) = k! * sum_{j>=k} S(j,k) a_j``
    (Stirling numbers of the second kind), a triangular system solved from
    the top coefficient down.  Each row is a linear congruence with
    ``gcd(k!, N)`` solutions, so singular systems enumerate every branch.
    """
    # polynomials only see x mod N, so sample points past the table wrap
    pts = [int(values[x % N]) for x in range(degree + 1)]
    diffs = []
    for _ in range(degree + 1):
        diffs.append(pts[0] % N)
        pts = [b - a for a, b in zip(pts, pts[1:])]
    S = _stirling2(degree)

    def rec(k: int, partial: dict[int, int]) -> Iterator[dict[int, int]]:
        if k < 0:
            yield partial
            return
        known = sum(S[j][k] * partial[j] for j in range(k + 1, degree + 1))
        fk = math.factorial(k)
        for t in _solve_linear_congruence(fk, (diffs[k] - fk * known) % N, N):
            yield from rec(k - 1, {**partial, k: t})

    for sol in rec(degree, {}):
        yield RingPolynomial(N, [sol[j] for j in range(degree + 1)])


def fit_sequence(values: Sequence[int], N: int, degree: int) -> RingPolynomial | None:
    """First polynomial of degree <= ``degree`` reproducing all N ``values``."""
    target = np.asarray(values, dtype=np.int64)
    for cand in interpolation_candidates(target, N, degree):
        if _matches(cand, target):
            return cand
    return None


def _matches(poly: RingPolynomial, target: np.ndarray) -> bool:
    # cheap prefix probe first; most wrong candidates fail within a few points
    probe = min(len(target), 64)
    if any(evaluate(poly, x) != target[x] for x in range(probe)):
        return False
    return bool(np.array_equal(evaluate_all(poly), target))


def reduce_degree(poly: RingPolynomial) -> RingPolynomial:
    """Functionally equal polynomial of minimal nominal degree."""
    if poly.degree == 0:
        return poly
    target = evaluate_all(poly)
    for d in range(poly.degree):
        found = fit_sequence(target, poly.modulus, d)
        if found is not None:
            return found
    return poly

