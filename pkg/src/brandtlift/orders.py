"""Lattices and orders in a definite quaternion algebra over Q.

A lattice is stored as a denominator together with the Hermite normal form
of an integer matrix whose rows are coordinates in the 1, i, j, k basis, so
lattice equality is tuple equality.  On top of the lattice arithmetic sit
the three construction stages: saturating the obvious order to a maximal
one, cutting an Eichler order of square-free level, and walking the
p-neighbor graph to enumerate the right ideal classes with their unit
weights, certified complete by the mass formula.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from sympy import factorint, isprime, primerange

from .linalg import det_int, greedy_reduce, hnf, mat_inv, nullspace_mod, rref_mod, transpose, vec_mat
from .qalg import AlgebraPresentation, QuaternionElement, finite_ramified_primes
from .shortvec import exists_value, vector_counts


def _sqrt_fraction(x: Fraction) -> Fraction:
    num, den = x.numerator, x.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn != num or rd * rd != den:
        raise ValueError(f"{x} is not a perfect square")
    return Fraction(rn, rd)


class OrderLattice:
    """Full rank-4 lattice in the algebra, in canonical HNF form.

    kind is one of "maximal-order", "eichler-order", "right-ideal" or the
    generic "lattice"; level is set for orders (reduced discriminant) and
    norm for ideals.  Equality and hashing ignore the metadata and compare
    the lattice itself.
    """

    __slots__ = ("alg", "den", "rows", "kind", "level", "norm", "_basis", "_inv", "_gram", "_red")

    def __init__(self, alg: AlgebraPresentation, den: int, rows, kind="lattice", level=None, norm=None):
        self.alg = alg
        self.den = den
        self.rows = tuple(tuple(r) for r in rows)
        self.kind = kind
        self.level = level
        self.norm = norm
        self._basis = None
        self._inv = None
        self._gram = None
        self._red = None

    @classmethod
    def from_rows(cls, alg, den: int, rows, **meta) -> "OrderLattice":
        reduced = hnf(rows)
        if len(reduced) != 4:
            raise ValueError("lattice is not of full rank 4")
        g = den
        for row in reduced:
            for x in row:
                g = gcd(g, x)
        if g > 1:
            den //= g
            reduced = [[x // g for x in row] for row in reduced]
        return cls(alg, den, reduced, **meta)

    @classmethod
    def from_elements(cls, alg, elems, **meta) -> "OrderLattice":
        den = 1
        for e in elems:
            for c in e.coeffs:
                den = den * c.denominator // gcd(den, c.denominator)
        rows = [[int(c * den) for c in e.coeffs] for e in elems]
        return cls.from_rows(alg, den, rows, **meta)

    def __eq__(self, other):
        return (
            isinstance(other, OrderLattice)
            and self.alg == other.alg
            and self.den == other.den
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.alg, self.den, self.rows))

    def __repr__(self):
        return f"OrderLattice(kind={self.kind}, den={self.den}, rows={self.rows})"

    def with_meta(self, **meta) -> "OrderLattice":
        return OrderLattice(self.alg, self.den, self.rows, **meta)

    def basis(self) -> tuple[QuaternionElement, ...]:
        if self._basis is None:
            d = self.den
            self._basis = tuple(
                self.alg.element(*(Fraction(x, d) for x in row)) for row in self.rows
            )
        return self._basis

    def _basis_inverse(self):
        if self._inv is None:
            mat = [[Fraction(x, self.den) for x in row] for row in self.rows]
            self._inv = mat_inv(mat)
        return self._inv

    def coordinates(self, elem: QuaternionElement) -> list[Fraction]:
        """Coefficients of elem over the lattice basis."""
        return vec_mat(list(elem.coeffs), self._basis_inverse())

    def contains(self, elem: QuaternionElement) -> bool:
        return all(c.denominator == 1 for c in self.coordinates(elem))

    def covolume(self) -> Fraction:
        return Fraction(abs(det_int(self.rows)), self.den**4)

    def gram_int(self) -> list[list[int]]:
        """Integer Gram [tr(r_m conj(r_n))] over the numerator rows.

        A coordinate vector c represents the element (c . rows) / den of
        reduced norm (c G c^T) / (2 den^2), so norm-n vectors are exactly
        the solutions of the integer form at value 2 den^2 n.
        """
        if self._gram is None:
            elems = [self.alg.element(*row) for row in self.rows]
            conjs = [e.conjugate() for e in elems]
            g = [[(elems[m] * conjs[n]).trace() for n in range(4)] for m in range(4)]
            assert all(v.denominator == 1 for row in g for v in row)
            self._gram = [[int(v) for v in row] for row in g]
        return self._gram

    def reduced_gram(self) -> tuple[list[list[int]], list[list[int]]]:
        """Length-reduced Gram with the unimodular basis change: (U G U^T, U)."""
        if self._red is None:
            self._red = greedy_reduce(self.gram_int())
        return self._red

    def norm_counts(self, max_norm: Fraction) -> dict[Fraction, int]:
        """Counts of nonzero lattice vectors by reduced norm, up to max_norm."""
        scale = 2 * self.den**2
        raw = vector_counts(self.reduced_gram()[0], Fraction(max_norm) * scale)
        out: dict = {}
        for val, cnt in raw.items():
            out[Fraction(val, scale)] = cnt
        return out

    def minimal_vector(self) -> QuaternionElement:
        """A nonzero lattice element of smallest reduced norm."""
        gram, umat = self.reduced_gram()
        bound = min(gram[m][m] for m in range(4))
        counts = vector_counts(gram, bound)
        target = min(counts)
        from .shortvec import iter_short_vectors

        for coords, val in iter_short_vectors(gram, target):
            if val == target:
                cv = vec_mat(vec_mat(coords, umat), self.rows)
                return self.alg.element(*(Fraction(x, self.den) for x in cv))
        raise AssertionError("minimal vector enumeration came back empty")

    # lattice arithmetic ------------------------------------------------

    def add(self, other: "OrderLattice") -> "OrderLattice":
        assert self.alg == other.alg
        d = self.den * other.den // gcd(self.den, other.den)
        rows = [[x * (d // self.den) for x in row] for row in self.rows]
        rows += [[x * (d // other.den) for x in row] for row in other.rows]
        return OrderLattice.from_rows(self.alg, d, rows)

    def dual(self) -> "OrderLattice":
        # dual for the coordinate dot product: den * inverse transpose
        inv = mat_inv([list(row) for row in self.rows])
        mat = [[self.den * inv[j][i] for j in range(4)] for i in range(4)]
        return _from_fraction_matrix(self.alg, mat)

    def intersect(self, other: "OrderLattice") -> "OrderLattice":
        return self.dual().add(other.dual()).dual()

    def multiply(self, other: "OrderLattice") -> "OrderLattice":
        assert self.alg == other.alg
        prods = [x * y for x in self.basis() for y in other.basis()]
        return OrderLattice.from_elements(self.alg, prods)

    def mul_element(self, x: QuaternionElement, side: str) -> "OrderLattice":
        if side == "right":
            elems = [v * x for v in self.basis()]
        elif side == "left":
            elems = [x * v for v in self.basis()]
        else:
            raise ValueError("side must be 'left' or 'right'")
        return OrderLattice.from_elements(self.alg, elems)

    def scaled(self, c: Fraction) -> "OrderLattice":
        c = Fraction(c)
        rows = [[x * c.numerator for x in row] for row in self.rows]
        return OrderLattice.from_rows(self.alg, self.den * c.denominator, rows)

    def conjugated(self) -> "OrderLattice":
        rows = [(r[0], -r[1], -r[2], -r[3]) for r in self.rows]
        return OrderLattice.from_rows(self.alg, self.den, rows)

    def left_order(self) -> "OrderLattice":
        out = None
        for v in self.basis():
            cand = self.mul_element(v.inverse(), "right")
            out = cand if out is None else out.intersect(cand)
        return out.with_meta(kind="lattice")

    def right_order(self) -> "OrderLattice":
        out = None
        for v in self.basis():
            cand = self.mul_element(v.inverse(), "left")
            out = cand if out is None else out.intersect(cand)
        return out.with_meta(kind="lattice")

    def reduced_discriminant(self) -> int:
        d2 = Fraction(abs(det_int(self.gram_int())), self.den**8)
        if d2.denominator != 1:
            raise ValueError("trace form determinant is not integral; not an order")
        return int(_sqrt_fraction(d2))

    def is_order(self) -> bool:
        one = self.alg.one()
        if not self.contains(one):
            return False
        bas = self.basis()
        return all(self.contains(x * y) for x in bas for y in bas)


def _from_fraction_matrix(alg, mat) -> OrderLattice:
    den = 1
    for row in mat:
        for x in row:
            f = Fraction(x)
            den = den * f.denominator // gcd(den, f.denominator)
    rows = [[int(Fraction(x) * den) for x in row] for row in mat]
    return OrderLattice.from_rows(alg, den, rows)


def standard_order(alg: AlgebraPresentation) -> OrderLattice:
    """The obvious order Z<1, i, j, k>."""
    return OrderLattice(
        alg, 1, [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)], kind="lattice"
    )


def ideal_norm(ideal: OrderLattice, reference: OrderLattice) -> Fraction:
    """Reduced norm of an ideal: square root of the covolume ratio."""
    return _sqrt_fraction(ideal.covolume() / reference.covolume())


def unit_weight(order: OrderLattice) -> int:
    """Number of norm-1 elements; for a definite order these are the units."""
    counts = order.norm_counts(1)
    return counts.get(Fraction(1), 0)


def eichler_mass(q: int, M: int) -> Fraction:
    mass = Fraction(q * M, 24)
    for p in factorint(q).keys():
        mass *= 1 - Fraction(1, p)
    for p in factorint(M).keys():
        mass *= 1 + Fraction(1, p)
    return mass


# order construction ----------------------------------------------------


def _projective_points(p: int):
    """Representatives of P^3(F_p): first nonzero coordinate equal to 1."""
    for lead in range(4):
        head = [0] * lead + [1]
        tail_len = 3 - lead
        idx = [0] * tail_len
        while True:
            yield head + idx[:]
            for t in range(tail_len - 1, -1, -1):
                idx[t] += 1
                if idx[t] < p:
                    break
                idx[t] = 0
            else:
                break
            continue


def _try_overorder(order: OrderLattice, vecs: list[list[int]], p: int) -> OrderLattice | None:
    elems = list(order.basis())
    extra = []
    for c in vecs:
        e = sum((ci * b for ci, b in zip(c, elems)), start=order.alg.element(0, 0, 0, 0)) / p
        if not e.is_integral():
            return None
        extra.append(e)
    cand = OrderLattice.from_elements(order.alg, elems + extra)
    if not cand.is_order():
        return None
    return cand


def maximal_order(alg: AlgebraPresentation) -> OrderLattice:
    """Saturate Z<1,i,j,k> to an order of reduced discriminant q."""
    ram = finite_ramified_primes(alg.a, alg.b)
    if len(ram) != 1:
        raise ValueError("presentation must be ramified at exactly one finite prime")
    q = ram[0]
    order = standard_order(alg)
    for _ in range(64):
        d = order.reduced_discriminant()
        if d == q:
            return order.with_meta(kind="maximal-order", level=q)
        assert d % q == 0
        p = min(factorint(d // q).keys())
        singles = [c for c in _projective_points(p)]
        grown = None
        for c in singles:
            grown = _try_overorder(order, [c], p)
            if grown is not None:
                break
        if grown is None:
            # index p^2 fallback: adjoin two independent p-denominator elements
            for a_i in range(len(singles)):
                for b_i in range(a_i + 1, len(singles)):
                    ech, piv = rref_mod([singles[a_i], singles[b_i]], p)
                    if len(piv) != 2:
                        continue
                    grown = _try_overorder(order, [singles[a_i], singles[b_i]], p)
                    if grown is not None:
                        break
                if grown is not None:
                    break
        if grown is None:
            raise RuntimeError(f"saturation failed at p={p} (discriminant {d})")
        order = grown
    raise RuntimeError("saturation did not terminate")


def _split_idempotent(order: OrderLattice, p: int) -> list[int]:
    """Coordinates mod p of a rank-1 idempotent in order/p ~ M_2(F_p)."""
    bas = order.basis()
    conj = [b.conjugate() for b in bas]
    norm_diag = [b.norm() for b in bas]
    pair = [[(bas[m] * conj[n]).trace() for n in range(4)] for m in range(4)]
    assert all(v.denominator == 1 for v in norm_diag)

    def norm_mod(c):
        total = 0
        for m in range(4):
            total += int(norm_diag[m]) * c[m] * c[m]
            for n in range(m + 1, 4):
                total += int(pair[m][n]) * c[m] * c[n]
        return total % p

    zero_div = None
    for c in _projective_points(p):
        if norm_mod(c) == 0:
            zero_div = c
            break
    if zero_div is None:
        raise RuntimeError(f"norm form anisotropic mod {p}; is p coprime to the level?")

    def as_element(c):
        return sum((ci * b for ci, b in zip(c, bas)), start=order.alg.element(0, 0, 0, 0))

    x = as_element(zero_div)
    if int(x.trace()) % p == 0:
        # slide to a rank-1 element of nonzero trace; some basis multiple works
        for b in bas:
            y = x * b
            if int(y.trace()) % p != 0:
                x = y
                break
        else:
            raise RuntimeError("no nonzero-trace zero divisor found; trace pairing degenerate?")
    coords = order.coordinates(x)
    assert all(v.denominator == 1 for v in coords)
    tinv = pow(int(x.trace()) % p, -1, p)
    idem = [int(v) * tinv % p for v in coords]
    return idem


def _level_raise(order: OrderLattice, p: int) -> OrderLattice:
    """Index-p Eichler suborder: kill one off-diagonal Peirce block mod p."""
    alg = order.alg
    bas = order.basis()
    idem = _split_idempotent(order, p)
    e = sum((ci * b for ci, b in zip(idem, bas)), start=alg.element(0, 0, 0, 0))
    ee = order.coordinates(e * e - e)
    assert all(v.denominator == 1 and int(v) % p == 0 for v in ee), "not idempotent mod p"
    f = alg.one() - e
    cols = []
    for b in bas:
        w = order.coordinates(f * b * e)
        assert all(v.denominator == 1 for v in w)
        cols.append([int(v) % p for v in w])
    kernel = nullspace_mod(transpose(cols), p)
    assert len(kernel) == 3, "Peirce corner does not have corank 1"
    rows = [[p * x for x in row] for row in order.rows]
    for c in kernel:
        rows.append(vec_mat(c, order.rows))
    sub = OrderLattice.from_rows(alg, order.den, rows)
    assert sub.is_order()
    assert sub.reduced_discriminant() == p * order.reduced_discriminant()
    return sub


def eichler_order(order: OrderLattice, M: int) -> OrderLattice:
    """Eichler order of level q*M inside a maximal order of discriminant q."""
    q = order.reduced_discriminant()
    if M < 1:
        raise ValueError("level cofactor M must be positive")
    if gcd(M, q) != 1:
        raise ValueError(f"M={M} must be coprime to the ramified prime {q}")
    fac = factorint(M)
    if any(e > 1 for e in fac.values()):
        raise ValueError(f"level N={q * M} must be square-free")
    if M == 1:
        return order.with_meta(kind="eichler-order", level=q)
    current = order
    for p in sorted(fac.keys()):
        current = _level_raise(current, p)
    return current.with_meta(kind="eichler-order", level=q * M)


# ideal class enumeration ------------------------------------------------


def _right_action_matrices(ideal: OrderLattice, base: OrderLattice) -> list[list[list[int]]]:
    mats = []
    for r in base.basis():
        rows = []
        for v in ideal.basis():
            coords = ideal.coordinates(v * r)
            assert all(c.denominator == 1 for c in coords), "lattice is not a right ideal"
            rows.append([int(c) for c in coords])
        mats.append(rows)
    return mats


def _neighbor_submodules(ideal: OrderLattice, base: OrderLattice, p: int) -> list[list[list[int]]]:
    """The p+1 two-dimensional right submodules of ideal/p ideal."""
    mats = _right_action_matrices(ideal, base)
    found = {}
    for line in _projective_points(p):
        span = [line]
        while True:
            new_rows = [vec_mat(v, m) for v in span for m in mats]
            ech, piv = rref_mod(span + new_rows, p)
            if len(piv) == len(span) and ech == span:
                break
            span = ech
        if len(span) == 2:
            key = tuple(tuple(r) for r in span)
            found[key] = span
    subs = [found[k] for k in sorted(found)]
    assert len(subs) == p + 1, f"expected {p + 1} neighbor submodules, found {len(subs)}"
    return subs


def _neighbor_ideal(ideal: OrderLattice, sub_rows: list[list[int]], p: int) -> OrderLattice:
    rows = [[p * x for x in row] for row in ideal.rows]
    for c in sub_rows:
        rows.append(vec_mat(c, ideal.rows))
    out = OrderLattice.from_rows(ideal.alg, ideal.den, rows, kind="right-ideal")
    out.norm = ideal.norm * p
    return out


def _reduce_ideal(ideal: OrderLattice, base: OrderLattice) -> OrderLattice:
    """Replace an ideal by a small equivalent integral one inside base."""
    alpha = ideal.minimal_vector()
    small = ideal.mul_element(alpha.conjugate() / ideal.norm, "left")
    small.kind = "right-ideal"
    small.norm = alpha.norm() / ideal.norm
    assert small.norm.denominator == 1
    assert ideal_norm(small, base) == small.norm
    return small


def _reduced_norm(latt: OrderLattice) -> Fraction:
    if latt.norm is not None:
        return Fraction(latt.norm)
    return _sqrt_fraction(latt.covolume() / latt.right_order().covolume())


def equivalent_ideals(lhs: OrderLattice, rhs: OrderLattice) -> bool:
    """Whether two right ideals differ by a left unit: x with lhs = x*rhs.

    The test searches lhs * conj(rhs) for an element of reduced norm
    Nm(lhs) * Nm(rhs), which exists exactly in the equivalent case.
    """
    prod = lhs.multiply(rhs.conjugated())
    target = _reduced_norm(lhs) * _reduced_norm(rhs) * 2 * prod.den**2
    assert target.denominator == 1
    return exists_value(prod.reduced_gram()[0], int(target))


def _norm_profile(ideal: OrderLattice, depth: int = 8) -> tuple[int, ...]:
    counts = ideal.norm_counts(ideal.norm * depth)
    return tuple(counts.get(ideal.norm * k, 0) for k in range(1, depth + 1))


@dataclass
class ClassSet:
    """Right ideal classes of an Eichler order, with their orders and weights."""

    presentation: AlgebraPresentation
    q: int
    M: int
    h: int
    reps: list[OrderLattice]
    right_orders: list[OrderLattice]
    weights: list[int]
    mass: Fraction

    def to_json_dict(self) -> dict:
        def mat(latt):
            return [[str(Fraction(x, latt.den)) for x in row] for row in latt.rows]

        return {
            "presentation": {"a": self.presentation.a, "b": self.presentation.b},
            "q": self.q,
            "M": self.M,
            "h": self.h,
            "classes": [
                {
                    "ideal_basis": mat(self.reps[i]),
                    "right_order_basis": mat(self.right_orders[i]),
                    "weight": self.weights[i],
                }
                for i in range(self.h)
            ],
        }


def right_ideal_classes(base: OrderLattice) -> ClassSet:
    """Enumerate the right ideal classes of an Eichler order by p-neighbors.

    Breadth-first traversal at the smallest prime not dividing the level,
    with every new class certified inequivalent by short-vector search and
    the whole walk certified complete by the Eichler mass formula.
    """
    alg = base.alg
    N = base.level if base.level is not None else base.reduced_discriminant()
    ram = finite_ramified_primes(alg.a, alg.b)
    assert len(ram) == 1
    q = ram[0]
    M = N // q
    target_mass = eichler_mass(q, M)
    p = next(r for r in primerange(2, 1000) if N % r)

    first = base.with_meta(kind="right-ideal", norm=Fraction(1))
    classes = [first]
    orders = [first.left_order().with_meta(kind="eichler-order", level=N)]
    weights = [unit_weight(orders[0])]
    profiles = [_norm_profile(first)]
    acc = Fraction(1, weights[0])
    frontier = [first]

    while frontier and acc < target_mass:
        current = frontier.pop(0)
        for sub in _neighbor_submodules(current, base, p):
            neighbor = _neighbor_ideal(current, sub, p)
            reduced = _reduce_ideal(neighbor, base)
            prof = _norm_profile(reduced)
            known = any(
                profiles[k] == prof and equivalent_ideals(classes[k], reduced)
                for k in range(len(classes))
            )
            if known:
                continue
            left = reduced.left_order().with_meta(kind="eichler-order", level=N)
            w = unit_weight(left)
            classes.append(reduced)
            orders.append(left)
            weights.append(w)
            profiles.append(prof)
            acc += Fraction(1, w)
            frontier.append(reduced)
            if acc >= target_mass:
                break

    if acc != target_mass:
        raise RuntimeError(
            f"class enumeration ended at mass {acc}, expected {target_mass}"
        )

    # canonical ordering: the base class stays first, the rest sort on the
    # reduced Gram of their ternary trace-zero lattice, then on theta
    from .theta import class_sort_key

    rest = sorted(range(1, len(classes)), key=lambda k: class_sort_key(orders[k], classes[k]))
    perm = [0] + rest
    return ClassSet(
        presentation=alg,
        q=q,
        M=M,
        h=len(classes),
        reps=[classes[k] for k in perm],
        right_orders=[orders[k] for k in perm],
        weights=[weights[k] for k in perm],
        mass=target_mass,
    )
