"""Congruence verification between two eigenforms and their lifts.

Checks run at desk scale with exact arithmetic: eigenvalue agreement mod ell
for every prime up to the Sturm bound, coefficientwise lift congruence with
a unit multiplier, divisibility of the pairing norms, the hypothesis flags
of the underlying theorem, and the irreducibility heuristic.  Everything a
verdict depends on is recorded in the report.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from sympy import factorint, isprime, primerange

from .brandt import BrandtModule
from .lift import LiftResult, scale_congruent_pair, waldspurger_lift
from .theta import QSeries, theta_series, trace_zero_lattice


def sturm_bound(k: int, N: int) -> int:
    """ceil((k*N/12) * prod_{p|N} (1 + 1/p)) for square-free N."""
    val = Fraction(k * N, 12)
    for p in factorint(N):
        val *= Fraction(p + 1, p)
    return -(-val.numerator // val.denominator)


@dataclass(frozen=True)
class EigenvalueVerdict:
    ok: bool
    first_failing_prime: int | None
    compared_primes: tuple[int, ...]


@dataclass(frozen=True)
class LiftVerdict:
    ok: bool
    witness_c: int | None
    first_failing_exponent: int | None
    all_zero_mod_ell: bool


@dataclass(frozen=True)
class HypothesisFlags:
    ell_gt_2: bool
    coprime_or_ramified: bool

    @property
    def ok(self) -> bool:
        return self.ell_gt_2 and self.coprime_or_ramified


@dataclass(frozen=True)
class IrreducibilityVerdict:
    ok: bool
    witness_prime: int | None


def check_eigenvalue_congruence(module: BrandtModule, phi_f, phi_g, ell: int) -> EigenvalueVerdict:
    """Compare eigenvalues of the two vectors mod ell for p up to Sturm."""
    bound = sturm_bound(2, module.level)
    primes = tuple(primerange(2, bound + 1))
    for p in primes:
        af = module.eigenvalue_of(phi_f, p)
        ag = module.eigenvalue_of(phi_g, p)
        if (af - ag) % ell:
            return EigenvalueVerdict(False, p, primes)
    return EigenvalueVerdict(True, None, primes)


def check_lift_congruence(wf, wg, ell: int) -> LiftVerdict:
    """Search units c mod ell with a(wf, n) = c * a(wg, n) mod ell for all n.

    Accepts LiftResult or bare QSeries inputs of equal truncation bound.
    On failure the exponent reported is the first disagreement at c = 1.
    The all-zero flag marks the degenerate case where both series vanish
    identically mod ell, making the congruence trivially 0 = 0.
    """
    sf = wf.series if isinstance(wf, LiftResult) else wf
    sg = wg.series if isinstance(wg, LiftResult) else wg
    if sf.bound != sg.bound:
        raise ValueError(f"truncation bounds differ: {sf.bound} != {sg.bound}")
    ns = range(sf.bound + 1)
    all_zero = all(sf.coefficient(n) % ell == 0 for n in ns) and all(
        sg.coefficient(n) % ell == 0 for n in ns
    )
    for c in range(1, ell):
        if all((sf.coefficient(n) - c * sg.coefficient(n)) % ell == 0 for n in ns):
            return LiftVerdict(True, c, None, all_zero)
    first = next(n for n in ns if (sf.coefficient(n) - sg.coefficient(n)) % ell)
    return LiftVerdict(False, None, first, all_zero)


def check_norm_divisibility(module: BrandtModule, phi, ell: int) -> bool:
    return module.pairing(phi, phi) % ell == 0


def check_hypotheses(N: int, q: int, ell: int) -> HypothesisFlags:
    """The theorem's conditions on ell: ell > 2, and ell coprime to N(q-1) or ell = q."""
    return HypothesisFlags(ell > 2, (N * (q - 1)) % ell != 0 or ell == q)


def irreducibility_heuristic(module: BrandtModule, phi, ell: int, bound: int) -> IrreducibilityVerdict:
    """Certified irreducible iff some a_p with p coprime to ell*N avoids 1+p mod ell."""
    for p in primerange(2, bound + 1):
        if (ell * module.level) % p == 0:
            continue
        if (module.eigenvalue_of(phi, p) - (1 + p)) % ell:
            return IrreducibilityVerdict(True, p)
    return IrreducibilityVerdict(False, None)


@dataclass(frozen=True)
class CongruenceReport:
    N: int
    q: int
    M: int
    ell: int
    bound: int
    sturm: int
    phi_f: tuple[int, ...]
    phi_g: tuple[int, ...]
    phi_scale_witness: int | None
    eigenvalue_check: EigenvalueVerdict
    lift_check: LiftVerdict
    norm_divisibility: tuple[bool, bool]
    hypothesis_flags: HypothesisFlags
    irreducibility_f: IrreducibilityVerdict
    irreducibility_g: IrreducibilityVerdict

    @property
    def ok(self) -> bool:
        """Verdict for the exit code: the congruence checks themselves."""
        return (
            self.eigenvalue_check.ok
            and self.lift_check.ok
            and all(self.norm_divisibility)
        )

    def to_json_dict(self) -> dict:
        return {
            "N": self.N,
            "q": self.q,
            "M": self.M,
            "ell": self.ell,
            "bound": self.bound,
            "sturm_bound": self.sturm,
            "phi_f": list(self.phi_f),
            "phi_g": list(self.phi_g),
            "phi_scale_witness": self.phi_scale_witness,
            "eigenvalue_check": {
                "ok": self.eigenvalue_check.ok,
                "first_failing_prime": self.eigenvalue_check.first_failing_prime,
            },
            "lift_check": {
                "ok": self.lift_check.ok,
                "witness_c": self.lift_check.witness_c,
                "first_failing_exponent": self.lift_check.first_failing_exponent,
                "all_zero_mod_ell": self.lift_check.all_zero_mod_ell,
            },
            "norm_divisibility": {
                "f": self.norm_divisibility[0],
                "g": self.norm_divisibility[1],
            },
            "hypotheses": {
                "ell_gt_2": self.hypothesis_flags.ell_gt_2,
                "coprime_or_ramified": self.hypothesis_flags.coprime_or_ramified,
                "ok": self.hypothesis_flags.ok,
            },
            "irreducibility": {
                "f": {"ok": self.irreducibility_f.ok, "witness_prime": self.irreducibility_f.witness_prime},
                "g": {"ok": self.irreducibility_g.ok, "witness_prime": self.irreducibility_g.witness_prime},
            },
            "ok": self.ok,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True) + "\n"

    def to_text(self) -> str:
        ev, lc = self.eigenvalue_check, self.lift_check
        lines = [
            f"N={self.N} (q={self.q}, M={self.M})  ell={self.ell}  sturm bound={self.sturm}",
            f"phi_f = {list(self.phi_f)}",
            f"phi_g = {list(self.phi_g)}",
            f"phi scale witness: {self.phi_scale_witness}",
            "eigenvalue congruence: "
            + ("pass" if ev.ok else f"FAIL at p={ev.first_failing_prime}")
            + f" ({len(ev.compared_primes)} primes up to {self.sturm})",
            "lift congruence:       "
            + (f"pass with witness c={lc.witness_c}" if lc.ok else f"FAIL first at n={lc.first_failing_exponent}")
            + (" [all coefficients zero mod ell]" if lc.all_zero_mod_ell else ""),
            f"norm divisibility:     ell | <f,f>: {self.norm_divisibility[0]}, ell | <g,g>: {self.norm_divisibility[1]}",
            "hypotheses:            "
            + ("hold" if self.hypothesis_flags.ok else "FAIL")
            + f" (ell>2: {self.hypothesis_flags.ell_gt_2},"
            + f" ell coprime to N(q-1) or ell=q: {self.hypothesis_flags.coprime_or_ramified})",
            f"irreducibility (f):    "
            + (f"certified via p={self.irreducibility_f.witness_prime}" if self.irreducibility_f.ok else "not certified"),
            f"irreducibility (g):    "
            + (f"certified via p={self.irreducibility_g.witness_prime}" if self.irreducibility_g.ok else "not certified"),
            "verdict:               " + ("pass" if self.ok else "FAIL")
            + ("" if self.hypothesis_flags.ok else " (congruence observed but outside the theorem's hypotheses)"),
        ]
        return "\n".join(lines) + "\n"


def run_congruence_checks(
    module: BrandtModule,
    eigendata_f,
    eigendata_g,
    ell: int,
    bound: int = 100,
) -> CongruenceReport:
    """Full pipeline: eigenvectors, lifts, and every check, in one report."""
    if not isprime(ell):
        raise ValueError(f"ell must be prime, got {ell}")
    classes = module.classes
    N = classes.q * classes.M
    phi_f = module.eigenvector(eigendata_f)
    phi_g = module.eigenvector(eigendata_g)
    phi_f, phi_g_scaled, c_phi = scale_congruent_pair(phi_f, phi_g, ell)
    thetas = [theta_series(trace_zero_lattice(o), bound) for o in classes.right_orders]
    wf = waldspurger_lift(phi_f, thetas)
    wg = waldspurger_lift(phi_g_scaled, thetas)
    sturm = sturm_bound(2, N)
    irr_bound = max(sturm, 20)
    return CongruenceReport(
        N=N,
        q=classes.q,
        M=classes.M,
        ell=ell,
        bound=bound,
        sturm=sturm,
        phi_f=tuple(phi_f),
        phi_g=tuple(phi_g_scaled),
        phi_scale_witness=c_phi,
        eigenvalue_check=check_eigenvalue_congruence(module, phi_f, phi_g, ell),
        lift_check=check_lift_congruence(wf, wg, ell),
        norm_divisibility=(
            check_norm_divisibility(module, phi_f, ell),
            check_norm_divisibility(module, phi_g_scaled, ell),
        ),
        hypothesis_flags=check_hypotheses(N, classes.q, ell),
        irreducibility_f=irreducibility_heuristic(module, phi_f, ell, irr_bound),
        irreducibility_g=irreducibility_heuristic(module, phi_g, ell, irr_bound),
    )
