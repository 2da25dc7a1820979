"""Ternary trace-zero lattices and their theta series.

For each class order R the rank-3 lattice {x in Z + 2R : tr(x) = 0} carries
the reduced norm as a positive definite integer quadratic form; its theta
series is the generating function counting vectors by norm.  A canonical
reduction of the Gram matrix (exhaustive lexicographic minimization over
short unimodular bases) provides the deterministic class ordering.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .linalg import greedy_reduce, hnf, vec_mat
from .shortvec import iter_short_vectors, vector_counts


@dataclass(frozen=True)
class TernaryLattice:
    """Rank-3 lattice given by the integer Gram matrix of its norm form."""

    gram: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        g = self.gram
        assert len(g) == 3 and all(len(row) == 3 for row in g)
        assert all(g[i][j] == g[j][i] for i in range(3) for j in range(3))

    def determinant(self) -> int:
        g = self.gram
        return (
            g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1])
            - g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0])
            + g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0])
        )


@dataclass(frozen=True)
class QSeries:
    """Truncated q-expansion with exact integer coefficients.

    Coefficients are known exactly for exponents n <= bound; zero
    coefficients are never stored, so equality is structural.
    """

    bound: int
    coeffs: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {int(n): int(c) for n, c in self.coeffs.items() if c and n <= self.bound}
        assert all(n >= 0 for n in clean)
        object.__setattr__(self, "coeffs", clean)

    def coefficient(self, n: int) -> int:
        if n > self.bound:
            raise ValueError(f"coefficient {n} beyond truncation bound {self.bound}")
        return self.coeffs.get(n, 0)

    def __eq__(self, other):
        return (
            isinstance(other, QSeries)
            and self.bound == other.bound
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.bound, tuple(sorted(self.coeffs.items()))))

    def __add__(self, other: "QSeries") -> "QSeries":
        b = min(self.bound, other.bound)
        keys = set(self.coeffs) | set(other.coeffs)
        out = {}
        for n in keys:
            if n <= b:
                out[n] = self.coeffs.get(n, 0) + other.coeffs.get(n, 0)
        return QSeries(b, out)

    def __rmul__(self, scalar: int) -> "QSeries":
        return QSeries(self.bound, {n: scalar * c for n, c in self.coeffs.items()})

    def __mul__(self, scalar: int) -> "QSeries":
        return self.__rmul__(scalar)

    def __neg__(self) -> "QSeries":
        return self.__rmul__(-1)

    def truncated(self, bound: int) -> "QSeries":
        return QSeries(min(self.bound, bound), dict(self.coeffs))

    def support(self) -> list[int]:
        return sorted(self.coeffs)

    def to_text(self, header: str | None = None) -> str:
        lines = [] if header is None else [header]
        lines += [f"{n} {self.coeffs[n]}" for n in sorted(self.coeffs)]
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        return {"bound": self.bound, "coeffs": {str(n): c for n, c in sorted(self.coeffs.items())}}


def parse_qseries(text: str) -> tuple[QSeries, str | None]:
    """Read the plain text format back; returns (series, header line or None)."""
    header = None
    coeffs = {}
    bound = None
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            header = line
            for tok in line[1:].split():
                if tok.startswith("bound="):
                    bound = int(tok.split("=", 1)[1])
            continue
        n, c = line.split()
        coeffs[int(n)] = int(c)
    if bound is None:
        bound = max(coeffs, default=0)
    return QSeries(bound, coeffs), header


def trace_zero_lattice(order) -> TernaryLattice:
    """The lattice {x in Z + 2R : tr(x) = 0} with its norm Gram matrix.

    The Gram entries are tr(x_k conj(x_m)) / 2, which lands in Z because
    every member of the lattice has norm congruent to 0 or 3 mod 4; the
    diagonal entries are the reduced norms of the basis vectors.
    """
    alg = order.alg
    ambient_elems = [alg.one()] + [2 * b for b in order.basis()]
    from .orders import OrderLattice

    ambient = OrderLattice.from_elements(alg, ambient_elems)
    traces = [b.trace() for b in ambient.basis()]
    assert all(t.denominator == 1 for t in traces)
    aug = [[int(traces[m])] + [1 if n == m else 0 for n in range(4)] for m in range(4)]
    reduced = hnf(aug)
    kernel = [row[1:] for row in reduced if row[0] == 0]
    assert len(kernel) == 3, "trace functional must have a rank-3 kernel"
    vecs = [
        sum((ci * b for ci, b in zip(c, ambient.basis())), start=alg.element(0, 0, 0, 0))
        for c in kernel
    ]
    gram = []
    for x in vecs:
        row = []
        for y in vecs:
            t = (x * y.conjugate()).trace()
            assert t.denominator == 1 and int(t) % 2 == 0
            row.append(int(t) // 2)
        gram.append(tuple(row))
    out = TernaryLattice(tuple(gram))
    assert out.determinant() > 0
    return out


def theta_series(lattice: TernaryLattice, bound: int) -> QSeries:
    """Vector counts of the norm form: coefficient of q^n is #{x : Nm(x)=n}."""
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    coeffs = {0: 1}
    if bound > 0:
        reduced, _ = greedy_reduce([list(r) for r in lattice.gram])
        counts = vector_counts(reduced, bound)
        coeffs.update({int(n): c for n, c in counts.items()})
    return QSeries(bound, coeffs)


def _det3(u, v, w) -> int:
    return (
        u[0] * (v[1] * w[2] - v[2] * w[1])
        - u[1] * (v[0] * w[2] - v[2] * w[0])
        + u[2] * (v[0] * w[1] - v[1] * w[0])
    )


def canonical_gram(gram) -> tuple[tuple[int, int, int], ...]:
    """Canonical representative of the Gram matrix under GL_3(Z) changes.

    Minimizes the key (G00, G11, G22, G01, G02, G12) lexicographically over
    all ordered bases drawn from vectors of norm up to the largest diagonal
    entry of the (pre-reduced) input.  The pre-reduced basis itself is a
    candidate, and any key-minimizing basis must consist of such short
    vectors, so the search is exhaustive.
    """
    g, _ = greedy_reduce(gram)
    cap = max(g[i][i] for i in range(3))
    vecs = []
    for v, val in iter_short_vectors(g, cap):
        vecs.append((int(val), v))
        vecs.append((int(val), tuple(-x for x in v)))
    vecs.sort()

    def bil(u, w):
        return sum(u[i] * g[i][j] * w[j] for i in range(3) for j in range(3))

    best = None
    for q1, v1 in vecs:
        if best is not None and q1 > best[0]:
            break
        for q2, v2 in vecs:
            if best is not None and (q1, q2) > best[:2]:
                break
            for q3, v3 in vecs:
                if best is not None and (q1, q2, q3) > best[:3]:
                    break
                if _det3(v1, v2, v3) not in (1, -1):
                    continue
                key = (q1, q2, q3, bil(v1, v2), bil(v1, v3), bil(v2, v3))
                if best is None or key < best:
                    best = key
    assert best is not None, "no unimodular triple found; gram was not a basis form"
    q1, q2, q3, b12, b13, b23 = best
    return ((q1, b12, b13), (b12, q2, b23), (b13, b23, q3))


def class_sort_key(order, ideal) -> tuple:
    """Deterministic sort key for an ideal class: reduced Gram, theta, basis."""
    cg = canonical_gram(trace_zero_lattice(order).gram)
    counts = vector_counts([list(r) for r in cg], 50)
    theta_tail = tuple(counts.get(n, 0) for n in range(1, 51))
    flat = tuple(x for row in cg for x in row)
    return (flat, theta_tail, ideal.den, ideal.rows)
