"""Enumeration of short vectors of a positive definite quadratic form.

The form is given by its Gram matrix G (integer or Fraction entries) and
evaluated as Q(x) = x G x^T on integer row vectors.  Enumeration walks the
standard LDL cone: with G = L D L^T the value splits as a sum of
D_j * (x_j + c_j)^2 terms, which gives exact interval bounds for each
coordinate once the later ones are fixed.  All square roots are taken with
math.isqrt on cleared denominators, so the bounds are exact.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Iterator


def ldl(gram) -> tuple[list[list[Fraction]], list[Fraction]]:
    """LDL^T decomposition of a symmetric positive definite matrix.

    Returns (L, D) with L unit lower triangular and D the positive diagonal,
    both exact.  Raises ValueError if the matrix is not positive definite.
    """
    n = len(gram)
    L = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    D = [Fraction(0)] * n
    for j in range(n):
        d = Fraction(gram[j][j]) - sum(L[j][k] ** 2 * D[k] for k in range(j))
        if d <= 0:
            raise ValueError("gram matrix is not positive definite")
        D[j] = d
        for i in range(j + 1, n):
            s = Fraction(gram[i][j]) - sum(L[i][k] * L[j][k] * D[k] for k in range(j))
            L[i][j] = s / d
    return L, D


def floor_plus_sqrt(c: Fraction, r: Fraction) -> int:
    """Exact floor(c + sqrt(r)) for rational c and rational r >= 0.

    Writing c = su/sd (sd > 0) and r = tn/td, the value is
    (su*td + sqrt(tn*td*sd^2)) / (sd*td); replacing the square root by its
    integer part does not move the floor since any integer boundary crossed
    between the two would itself be a better integer part.
    """
    c = Fraction(c)
    r = Fraction(r)
    if r < 0:
        raise ValueError("negative radicand")
    su, sd = c.numerator, c.denominator
    tn, td = r.numerator, r.denominator
    m = isqrt(tn * td * sd * sd)
    return (su * td + m) // (sd * td)


def iter_short_vectors(gram, bound) -> Iterator[tuple[tuple[int, ...], Fraction]]:
    """Yield (x, Q(x)) over nonzero integer x with 0 <= Q(x) <= bound.

    Exactly one of each pair {x, -x} is produced: the one whose highest
    indexed nonzero coordinate is positive.
    """
    n = len(gram)
    bound = Fraction(bound)
    if bound < 0:
        return
    L, D = ldl(gram)
    x = [0] * n

    def rec(j: int, used: Fraction, leading_zero: bool):
        if j < 0:
            if not leading_zero:
                yield tuple(x), used
            return
        c = sum(L[i][j] * x[i] for i in range(j + 1, n))
        r = (bound - used) / D[j]
        hi = floor_plus_sqrt(-c, r)
        lo = 0 if leading_zero else -floor_plus_sqrt(c, r)
        for xj in range(lo, hi + 1):
            x[j] = xj
            y = xj + c
            yield from rec(j - 1, used + D[j] * y * y, leading_zero and xj == 0)
        x[j] = 0

    yield from rec(n - 1, Fraction(0), True)


def _as_key(value: Fraction):
    return int(value) if value.denominator == 1 else value


def vector_counts(gram, bound) -> dict:
    """Counts {Q(x): #x} over nonzero integer vectors with Q(x) <= bound.

    Both signs are counted, so every count is even.  Keys are ints whenever
    the value is integral (always the case for an integer Gram matrix).
    """
    counts: dict = {}
    for _, val in iter_short_vectors(gram, bound):
        key = _as_key(val)
        counts[key] = counts.get(key, 0) + 2
    return counts


def exists_value(gram, value) -> bool:
    """Whether some integer vector has Q(x) exactly equal to value."""
    n = len(gram)
    target = Fraction(value)
    if target < 0:
        return False
    if target == 0:
        return True
    L, D = ldl(gram)
    x = [0] * n

    def rec(j: int, used: Fraction) -> bool:
        rem = target - used
        if j == 0:
            # solve D_0 * (x_0 + c)^2 == rem for integer x_0
            c = sum(L[i][0] * x[i] for i in range(1, n))
            q = rem / D[0]
            num, den = q.numerator, q.denominator
            root = isqrt(num * den)
            if root * root != num * den:
                return False
            s = Fraction(root, den)
            return (s - c).denominator == 1 or (-s - c).denominator == 1
        c = sum(L[i][j] * x[i] for i in range(j + 1, n))
        r = rem / D[j]
        hi = floor_plus_sqrt(-c, r)
        lo = -floor_plus_sqrt(c, r)
        for xj in range(lo, hi + 1):
            x[j] = xj
            y = xj + c
            if rec(j - 1, used + D[j] * y * y):
                return True
        x[j] = 0
        return False

    return rec(n - 1, Fraction(0))
