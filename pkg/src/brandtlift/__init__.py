"""Exact arithmetic engine for definite quaternion orders and their lifts.

The pipeline: pick a definite rational quaternion algebra ramified at one
finite prime, build an Eichler order of square-free level, enumerate its
right ideal classes, act on them with Hecke operators, extract integer
eigenvectors, lift them to weight-3/2 q-expansions through ternary theta
series, and verify eigenvalue and coefficient congruences mod a prime.
Everything is computed over Z and Q; no floats anywhere.
"""

from .brandt import BrandtModule, HeckeMatrix, eigenvectors
from .congruence import (
    CongruenceReport,
    check_eigenvalue_congruence,
    check_hypotheses,
    check_lift_congruence,
    check_norm_divisibility,
    irreducibility_heuristic,
    run_congruence_checks,
    sturm_bound,
)
from .lift import LiftResult, normalize_phi, scale_congruent_pair, waldspurger_lift
from .orders import (
    ClassSet,
    OrderLattice,
    eichler_mass,
    eichler_order,
    equivalent_ideals,
    ideal_norm,
    maximal_order,
    right_ideal_classes,
    standard_order,
    unit_weight,
)
from .qalg import (
    AlgebraPresentation,
    QuaternionElement,
    certify_presentation,
    choose_presentation,
    finite_ramified_primes,
    hilbert_symbol,
)
from .theta import (
    QSeries,
    TernaryLattice,
    canonical_gram,
    parse_qseries,
    theta_series,
    trace_zero_lattice,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraPresentation",
    "BrandtModule",
    "ClassSet",
    "CongruenceReport",
    "HeckeMatrix",
    "LiftResult",
    "OrderLattice",
    "QSeries",
    "QuaternionElement",
    "TernaryLattice",
    "canonical_gram",
    "certify_presentation",
    "check_eigenvalue_congruence",
    "check_hypotheses",
    "check_lift_congruence",
    "check_norm_divisibility",
    "choose_presentation",
    "eichler_mass",
    "eichler_order",
    "eigenvectors",
    "equivalent_ideals",
    "finite_ramified_primes",
    "hilbert_symbol",
    "ideal_norm",
    "irreducibility_heuristic",
    "maximal_order",
    "normalize_phi",
    "parse_qseries",
    "right_ideal_classes",
    "run_congruence_checks",
    "scale_congruent_pair",
    "standard_order",
    "sturm_bound",
    "theta_series",
    "trace_zero_lattice",
    "unit_weight",
    "waldspurger_lift",
    "__version__",
]
