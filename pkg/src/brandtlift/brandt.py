"""Hecke action on functions on the ideal class set.

The matrix of the degree-n operator is computed from short-vector counts on
the lattices I_i * conj(I_j): the entry at (i, j) is the number of elements
of reduced norm n * Nm(I_i) * Nm(I_j), divided by the unit weight w_i.  With
this normalization the all-ones covector is fixed up to p+1 (column sums),
diag(w) intertwines the matrix with its transpose, and cuspidal right
eigenvectors have plain coordinate sum zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from sympy import isprime

from .linalg import mat_vec, primitive_vector, rational_nullspace
from .orders import ClassSet
from .shortvec import vector_counts


@dataclass(frozen=True)
class HeckeMatrix:
    """Exact integer matrix of T_p (p coprime to the level) or U_p (p | level)."""

    p: int
    kind: str
    entries: tuple[tuple[int, ...], ...]

    def to_json_dict(self) -> dict:
        return {"p": self.p, "kind": self.kind, "entries": [list(r) for r in self.entries]}


class BrandtModule:
    """Caches pair lattices and their norm counts for one class set."""

    def __init__(self, classes: ClassSet, count_bound: int = 60):
        self.classes = classes
        self.h = classes.h
        self.level = classes.q * classes.M
        self._default_bound = count_bound
        self._pairs: dict[tuple[int, int], tuple[int, dict[int, int]]] = {}
        self._matrices: dict[int, HeckeMatrix] = {}

    def _raw_counts(self, i: int, j: int, nmax: int) -> dict[int, int]:
        """Counts {n: #elements of I_i conj(I_j) with norm n Nm_i Nm_j}, n <= nmax."""
        if j < i:
            return self._raw_counts(j, i, nmax)
        cached = self._pairs.get((i, j))
        if cached is not None and cached[0] >= nmax:
            return cached[1]
        reps = self.classes.reps
        prod = reps[i].multiply(reps[j].conjugated())
        unit = Fraction(reps[i].norm) * Fraction(reps[j].norm) * 2 * prod.den**2
        assert unit.denominator == 1
        unit = int(unit)
        counts = vector_counts(prod.reduced_gram()[0], nmax * unit)
        out: dict[int, int] = {}
        for val, cnt in counts.items():
            assert val % unit == 0, "element norm outside the ideal norm lattice"
            out[val // unit] = cnt
        self._pairs[(i, j)] = (nmax, out)
        return out

    def brandt_matrix(self, p: int) -> HeckeMatrix:
        """Degree-p Hecke matrix; kind T_p when p is coprime to the level."""
        if not isprime(p):
            raise ValueError(f"need a prime degree, got {p}")
        if p in self._matrices:
            return self._matrices[p]
        nmax = max(p, self._default_bound)
        w = self.classes.weights
        rows = []
        for i in range(self.h):
            row = []
            for j in range(self.h):
                raw = self._raw_counts(i, j, nmax).get(p, 0)
                assert raw % w[i] == 0, "unit orbits do not divide the count"
                row.append(raw // w[i])
            rows.append(tuple(row))
        kind = "U_p" if self.level % p == 0 else "T_p"
        if kind == "T_p":
            for j in range(self.h):
                colsum = sum(rows[i][j] for i in range(self.h))
                assert colsum == p + 1, f"column sum {colsum} != {p + 1} at j={j}"
        mat = HeckeMatrix(p, kind, tuple(rows))
        self._matrices[p] = mat
        return mat

    def pairing(self, u, v) -> Fraction:
        """Weighted inner product sum(u_i v_i w_i)."""
        if len(u) != self.h or len(v) != self.h:
            raise ValueError("pairing needs two vectors of length h")
        total = sum(Fraction(a) * Fraction(b) * w for a, b, w in zip(u, v, self.classes.weights))
        return int(total) if total.denominator == 1 else total

    def eigenvector(self, eigendata) -> list[int]:
        """Primitive integer vector spanning the joint eigenspace.

        eigendata is a list of (p, a_p) pairs; the intersection of the
        kernels of B(p) - a_p must be one-dimensional.
        """
        if not eigendata:
            raise ValueError("eigendata must contain at least one (p, a_p) pair")
        stacked = []
        for p, ap in eigendata:
            mat = self.brandt_matrix(p).entries
            for i in range(self.h):
                stacked.append([mat[i][j] - (ap if i == j else 0) for j in range(self.h)])
        kernel = rational_nullspace(stacked)
        if not kernel:
            raise ValueError("no such eigenform for the given eigendata")
        if len(kernel) > 1:
            raise ValueError(f"underdetermined eigendata: residual dimension {len(kernel)}")
        return primitive_vector(kernel[0])

    def eigenvalue_of(self, phi, p: int) -> int:
        """The B(p) eigenvalue of an exact eigenvector phi."""
        mat = self.brandt_matrix(p).entries
        image = mat_vec([list(r) for r in mat], list(phi))
        pivot = next((k for k, x in enumerate(phi) if x), None)
        if pivot is None:
            raise ValueError("zero vector is not an eigenvector")
        a, rem = divmod(image[pivot], phi[pivot])
        if rem or any(image[k] != a * phi[k] for k in range(self.h)):
            raise ValueError(f"vector is not a B({p}) eigenvector")
        return a

    def eisenstein_vector(self) -> list[int]:
        """The vector with entries proportional to 1/w_i, primitive-integral."""
        return primitive_vector([Fraction(1, w) for w in self.classes.weights])

    def atkin_lehner_sign(self, phi, p: int) -> int:
        """Atkin-Lehner sign at p dividing the level, from the U_p eigenvalue.

        At an exactly-dividing prime of a weight-2 newform the involution
        eigenvalue is the negative of the U_p eigenvalue; the ramified prime
        follows the same rule here (checked against both worked levels).
        """
        if self.level % p != 0:
            raise ValueError(f"{p} does not divide the level {self.level}")
        lam = self.eigenvalue_of(phi, p)
        if lam not in (1, -1):
            raise ValueError(f"U_{p} eigenvalue {lam} is not a sign; not a newform vector")
        return -lam

    def discover_eigensystems(self, pmax: int = 20) -> list[tuple[dict[int, int], list[int]]]:
        """Exhaustive search for rational eigensystems using primes <= pmax.

        Splits the module by integer eigenvalues prime by prime (Ramanujan
        bound |a_p| <= 2 sqrt(p) for the cuspidal part, p+1 allowed for the
        Eisenstein direction) and reports the one-dimensional pieces.
        """
        primes = [p for p in range(2, pmax + 1) if isprime(p) and self.level % p]
        spaces = [[[Fraction(1 if i == k else 0) for i in range(self.h)] for k in range(self.h)]]
        labels = [{}]
        for p in primes:
            mat = self.brandt_matrix(p).entries
            next_spaces, next_labels = [], []
            for basis, label in zip(spaces, labels):
                if len(basis) == 1:
                    next_spaces.append(basis)
                    next_labels.append(label)
                    continue
                candidates = list(range(-2 * isqrt(p), 2 * isqrt(p) + 1)) + [p + 1]
                for a in candidates:
                    images = []
                    for v in basis:
                        bv = mat_vec([list(r) for r in mat], v)
                        images.append([x - a * y for x, y in zip(bv, v)])
                    # restrict ker(B(p) - a) to the span of basis
                    coords = rational_nullspace(
                        [[images[k][i] for k in range(len(basis))] for i in range(self.h)]
                    )
                    if not coords:
                        continue
                    sub = [
                        [sum(c[k] * basis[k][i] for k in range(len(basis))) for i in range(self.h)]
                        for c in coords
                    ]
                    next_spaces.append(sub)
                    next_labels.append({**label, p: a})
            spaces, labels = next_spaces, next_labels
        out = []
        for basis, label in zip(spaces, labels):
            if len(basis) == 1:
                vec = primitive_vector(basis[0])
                full = {p: self.eigenvalue_of(vec, p) for p in primes}
                out.append((full, vec))
        out.sort(key=lambda t: sorted(t[0].items()))
        return out


def eigenvectors(module: BrandtModule, eigendata) -> list[int]:
    """Module-level alias matching the operation name."""
    return module.eigenvector(eigendata)
