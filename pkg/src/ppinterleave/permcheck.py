"""Permutation tests for polynomials over Z_N."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .modring import RingPolynomial, eval_sequence, reduce_degree


class Method(str, enum.Enum):
    BRUTE_FORCE = "brute_force"
    ALGEBRAIC_QUADRATIC = "algebraic_quadratic"


@dataclass(frozen=True)
class PermutationVerdict:
    is_permutation: bool
    method: Method
    irreducible_degree: bool | None = None
    reduced: RingPolynomial | None = None
    collision: tuple[int, int, int] | None = None  # (x1, x2, shared value)


@lru_cache(maxsize=4096)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization by trial division, as ((p, e), ...) ascending."""
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def find_collision(seq: np.ndarray) -> tuple[int, int, int] | None:
    """First pair x1 < x2 with seq[x1] == seq[x2], else None."""
    if np.bincount(seq, minlength=len(seq)).max(initial=0) <= 1:
        return None
    seen = np.full(len(seq), -1, dtype=np.int64)
    for x, y in enumerate(seq.tolist()):
        if seen[y] >= 0:
            return int(seen[y]), x, y
        seen[y] = x
    return None


def is_permutation(poly: RingPolynomial) -> bool:
    """Occupancy check over the full evaluation table."""
    seq = eval_sequence(poly)
    occupied = np.zeros(poly.modulus, dtype=bool)
    occupied[seq] = True
    return bool(occupied.all())


def qpp_f2_admissible(N: int, f2: int) -> bool:
    """The part of the quadratic criterion that involves f2 only."""
    f2 %= N
    for p, e in factorize(N):
        if p == 2:
            if e >= 2 and f2 % 2:
                return False
        elif f2 % p:
            return False
    return True


def qpp_f1_admissible(N: int, f1: int, f2: int) -> bool:
    f1 %= N
    for p, e in factorize(N):
        if p == 2 and e == 1:
            if (f1 + f2) % 2 == 0:
                return False
        elif f1 % p == 0:
            return False
    return True


def is_qpp_fast(N: int, f1: int, f2: int) -> bool:
    """Decide whether ``f1*x + f2*x^2 (mod N)`` permutes Z_N.

    Per prime power p^e of N: for odd p (or p = 2 with e >= 2) the polynomial
    must be linear-invertible mod p (p does not divide f1) with p | f2.  For
    p = 2 with e = 1 every map of Z_2 is x -> (f1 + f2) x, so f1 + f2 must be
    odd.
    """
    return qpp_f2_admissible(N, f2) and qpp_f1_admissible(N, f1, f2)


def admissible_f1(N: int, f2: int) -> np.ndarray:
    """Ascending array of f1 with (f1, f2) a QPP, assuming f2 is admissible."""
    f1 = np.arange(N, dtype=np.int64)
    ok = np.ones(N, dtype=bool)
    for p, e in factorize(N):
        if p == 2 and e == 1:
            ok &= (f1 + f2) % 2 == 1
        else:
            ok &= f1 % p != 0
    return f1[ok]


def is_irreducible_degree(poly: RingPolynomial) -> bool:
    if poly.degree <= 1:
        return True
    if poly.degree == 2:
        return (2 * poly.coef(2)) % poly.modulus != 0
    return reduce_degree(poly).degree == poly.degree


def verdict(poly: RingPolynomial) -> PermutationVerdict:
    """Bundle the permutation decision with degree-irreducibility."""
    if poly.degree == 2:
        ok = is_qpp_fast(poly.modulus, poly.coef(1), poly.coef(2))
        method = Method.ALGEBRAIC_QUADRATIC
    else:
        ok = is_permutation(poly)
        method = Method.BRUTE_FORCE
    collision = None if ok else find_collision(eval_sequence(poly))
    reduced = reduce_degree(poly)
    return PermutationVerdict(
        is_permutation=ok,
        method=method,
        irreducible_degree=reduced.degree == poly.degree,
        reduced=None if reduced.degree == poly.degree else reduced,
        collision=collision,
    )


def exists_irreducible_qpp(N: int) -> tuple[int, int] | None:
    """Smallest (by f2, then f1) QPP witness whose degree cannot drop."""
    if N < 2:
        raise ValueError("N must be >= 2")
    for f2 in range(1, N):
        if (2 * f2) % N == 0 or not qpp_f2_admissible(N, f2):
            continue
        for f1 in range(1, N):
            if qpp_f1_admissible(N, f1, f2):
                return f1, f2
    return None


def scan_existence(n_max: int, n_min: int = 2) -> list[int]:
    """All N in [n_min, n_max] admitting an irreducible-degree QPP."""
    return [N for N in range(n_min, n_max + 1) if exists_irreducible_qpp(N) is not None]

