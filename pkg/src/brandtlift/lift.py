"""Weight-3/2 lifts: weighted sums of class theta series.

The lift of a vector phi on the class set is sum(phi_i * theta_i), taken
with exact integer coefficients.  Because eigenvectors are only defined up
to scale, the module also provides the unit rescaling mod ell that aligns
two congruent eigenvectors entrywise, which is how printed data and pairing
values at a fixed normalization are reproduced.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import primitive_vector
from .theta import QSeries


@dataclass(frozen=True)
class LiftResult:
    """A computed lift: the series, the exact vector used, and the size h."""

    series: QSeries
    phi: tuple[int, ...]
    class_count: int

    def metadata(self, N: int, q: int, M: int, eigendata=None, sign_convention: str | None = None) -> dict:
        return {
            "N": N,
            "q": q,
            "M": M,
            "eigendata": [[p, a] for p, a in eigendata] if eigendata else None,
            "phi": list(self.phi),
            "sign_convention": sign_convention
            or "integer vector, gcd of entries divides the stated scaling, "
            "first nonzero entry of the primitive form positive",
        }


def normalize_phi(phi) -> list[int]:
    """Clear denominators and content; first nonzero entry positive."""
    return primitive_vector(list(phi))


def waldspurger_lift(phi, thetas: list[QSeries]) -> LiftResult:
    """Exact linear combination sum(phi_i * theta_i).

    phi must be integral; the truncation bound of the result is the minimum
    of the input bounds.  Permuting (phi_i, theta_i) pairs jointly leaves
    the output unchanged.
    """
    if len(phi) != len(thetas):
        raise ValueError(f"phi has {len(phi)} entries but there are {len(thetas)} theta series")
    ints = []
    for x in phi:
        if x != int(x):
            raise ValueError("phi must have integer entries")
        ints.append(int(x))
    bound = min((t.bound for t in thetas), default=0)
    out = QSeries(bound, {})
    for c, t in zip(ints, thetas):
        out = out + c * t
    return LiftResult(series=out, phi=tuple(ints), class_count=len(ints))


def scale_congruent_pair(phi_f, phi_g, ell: int) -> tuple[list[int], list[int], int | None]:
    """Rescale phi_g by the unit making it congruent to phi_f mod ell.

    Searches signed multipliers c of least absolute value (positive first)
    with phi_f = c * phi_g entrywise mod ell, and returns
    (phi_f, c * phi_g, c).  When no unit works the vectors come back
    unchanged with c = None.  This realizes the rescaling-by-a-unit step
    that fixes a common normalization for a congruent pair.
    """
    if len(phi_f) != len(phi_g):
        raise ValueError("vectors must have equal length")
    f = [int(x) for x in phi_f]
    g = [int(x) for x in phi_g]
    for size in range(1, (ell + 1) // 2 + 1):
        for c in (size, -size):
            if all((a - c * b) % ell == 0 for a, b in zip(f, g)):
                return f, [c * b for b in g], c
    return f, g, None
