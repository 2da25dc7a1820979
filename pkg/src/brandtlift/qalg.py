"""Definite rational quaternion algebras (a, b | Q) and their local invariants.

An algebra is presented by two negative integers a, b with i^2 = a, j^2 = b
and k = ij = -ji.  Elements carry exact rational coordinates.  Local
behaviour is read off Hilbert symbols: at an odd prime by the Legendre
symbol formula, at 2 by testing primitive solvability of
z^2 = a x^2 + b y^2 modulo 64, and at the real place by the signs of a, b.
choose_presentation searches for the smallest pair whose finite ramified
set is exactly one given prime.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import count

from sympy import factorint, isprime

Rational = int | Fraction

_SQ64 = {(z * z) % 64 for z in range(64)}
_SQ64_ODD = {(z * z) % 64 for z in range(1, 64, 2)}


def _squarefree_core(x: Rational) -> int:
    """Integer representing x up to nonzero rational squares."""
    f = Fraction(x)
    if f == 0:
        raise ValueError("hilbert symbol needs nonzero arguments")
    return f.numerator * f.denominator


def _legendre(u: int, p: int) -> int:
    s = pow(u % p, (p - 1) // 2, p)
    return 1 if s == 1 else -1


def _hilbert_odd(a: int, b: int, p: int) -> int:
    alpha = 0
    while a % p == 0:
        a //= p
        alpha += 1
    beta = 0
    while b % p == 0:
        b //= p
        beta += 1
    sign = 1
    if alpha % 2 and beta % 2 and p % 4 == 3:
        sign = -sign
    if beta % 2:
        sign *= _legendre(a, p)
    if alpha % 2:
        sign *= _legendre(b, p)
    return sign


def _reduce_dyadic(n: int) -> int:
    # strip square powers of 2, then shrink the odd part mod 64; both moves
    # multiply by a 2-adic square so the symbol is unchanged
    alpha = 0
    while n % 2 == 0:
        n //= 2
        alpha ^= 1
    return (2 if alpha else 1) * (n % 64)


def _hilbert_two(a: int, b: int) -> int:
    aa, bb = _reduce_dyadic(a), _reduce_dyadic(b)
    for x in range(64):
        for y in range(64):
            w = (aa * x * x + bb * y * y) % 64
            if x % 2 or y % 2:
                if w in _SQ64:
                    return 1
            elif w in _SQ64_ODD:
                # x, y both even forces z odd in a primitive solution
                return 1
    return -1


def hilbert_symbol(a: Rational, b: Rational, place) -> int:
    """Hilbert symbol (a, b) at a finite prime or at the real place "inf".

    Returns +1 when z^2 = a x^2 + b y^2 has a nontrivial solution over the
    completion at the given place and -1 otherwise.
    """
    na, nb = _squarefree_core(a), _squarefree_core(b)
    if place == "inf":
        return -1 if na < 0 and nb < 0 else 1
    p = int(place)
    if not isprime(p):
        raise ValueError(f"place must be a prime or 'inf', got {place!r}")
    if p == 2:
        return _hilbert_two(na, nb)
    return _hilbert_odd(na, nb, p)


def finite_ramified_primes(a: Rational, b: Rational) -> list[int]:
    """Sorted finite primes where the algebra (a, b | Q) is division."""
    na, nb = _squarefree_core(a), _squarefree_core(b)
    candidates = sorted(factorint(abs(2 * na * nb)).keys())
    return [p for p in candidates if hilbert_symbol(na, nb, p) == -1]


@dataclass(frozen=True)
class AlgebraPresentation:
    """Definite quaternion algebra with i^2 = a, j^2 = b, both negative."""

    a: int
    b: int

    def __post_init__(self):
        if self.a >= 0 or self.b >= 0:
            raise ValueError("both defining constants must be negative")

    def element(self, t, x, y, z) -> "QuaternionElement":
        return QuaternionElement(self, (Fraction(t), Fraction(x), Fraction(y), Fraction(z)))

    def one(self) -> "QuaternionElement":
        return self.element(1, 0, 0, 0)

    def basis(self) -> tuple["QuaternionElement", ...]:
        """The standard generators 1, i, j, k."""
        return (
            self.element(1, 0, 0, 0),
            self.element(0, 1, 0, 0),
            self.element(0, 0, 1, 0),
            self.element(0, 0, 0, 1),
        )


@dataclass(frozen=True)
class QuaternionElement:
    """Element t + x i + y j + z k with exact rational coordinates."""

    alg: AlgebraPresentation
    coeffs: tuple[Fraction, Fraction, Fraction, Fraction]

    def _wrap(self, coeffs) -> "QuaternionElement":
        return QuaternionElement(self.alg, tuple(coeffs))

    def __add__(self, other: "QuaternionElement") -> "QuaternionElement":
        assert self.alg == other.alg
        return self._wrap(s + o for s, o in zip(self.coeffs, other.coeffs))

    def __sub__(self, other: "QuaternionElement") -> "QuaternionElement":
        assert self.alg == other.alg
        return self._wrap(s - o for s, o in zip(self.coeffs, other.coeffs))

    def __neg__(self) -> "QuaternionElement":
        return self._wrap(-s for s in self.coeffs)

    def __mul__(self, other):
        if isinstance(other, QuaternionElement):
            assert self.alg == other.alg
            a, b = Fraction(self.alg.a), Fraction(self.alg.b)
            t1, x1, y1, z1 = self.coeffs
            t2, x2, y2, z2 = other.coeffs
            return self._wrap(
                (
                    t1 * t2 + a * x1 * x2 + b * y1 * y2 - a * b * z1 * z2,
                    t1 * x2 + x1 * t2 - b * y1 * z2 + b * z1 * y2,
                    t1 * y2 + y1 * t2 + a * x1 * z2 - a * z1 * x2,
                    t1 * z2 + x1 * y2 - y1 * x2 + z1 * t2,
                )
            )
        return self._wrap(s * Fraction(other) for s in self.coeffs)

    def __rmul__(self, other) -> "QuaternionElement":
        # scalars commute with everything
        return self._wrap(Fraction(other) * s for s in self.coeffs)

    def __truediv__(self, scalar) -> "QuaternionElement":
        return self._wrap(s / Fraction(scalar) for s in self.coeffs)

    def conjugate(self) -> "QuaternionElement":
        t, x, y, z = self.coeffs
        return self._wrap((t, -x, -y, -z))

    def trace(self) -> Fraction:
        return 2 * self.coeffs[0]

    def norm(self) -> Fraction:
        t, x, y, z = self.coeffs
        a, b = self.alg.a, self.alg.b
        return t * t - a * x * x - b * y * y + a * b * z * z

    def is_integral(self) -> bool:
        """Whether the reduced characteristic polynomial has integer coefficients."""
        return self.trace().denominator == 1 and self.norm().denominator == 1

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def inverse(self) -> "QuaternionElement":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("zero quaternion has no inverse")
        return self.conjugate() / n


def certify_presentation(a: int, b: int, q: int) -> bool:
    """Check that (a, b | Q) is definite and ramified exactly at q and infinity."""
    if a >= 0 or b >= 0:
        return False
    return finite_ramified_primes(a, b) == [q]


def choose_presentation(q: int) -> AlgebraPresentation:
    """Smallest definite presentation ramified exactly at the prime q.

    Pairs are scanned by increasing |a| + |b|, then by increasing |a|, and
    each candidate is certified through its Hilbert symbols, so the result
    is deterministic.
    """
    if not isprime(q):
        raise ValueError(f"ramified prime must be prime, got {q}")
    for s in count(2):
        if s > 8 * q + 64:
            raise RuntimeError(f"no presentation found for q={q} within search bound")
        for na in range(1, s):
            a, b = -na, -(s - na)
            if certify_presentation(a, b, q):
                return AlgebraPresentation(a, b)
    raise AssertionError("unreachable")
