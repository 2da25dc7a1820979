"""Acceptance gate: one check per contract criterion, one verdict line each.

Run with output visible to read the verdict lines:

    pytest tests/test_acceptance.py -v -s

Each test prints "PASS criterion n: ..." or "FAIL criterion n: ..." before
asserting, so the transcript always carries the full scoreboard.  Criteria
the implementation genuinely cannot meet are left failing on purpose; their
verdict lines state exactly which sub-check diverges and by how much.
"""

import itertools
import json
import random
from fractions import Fraction
from math import isqrt
from pathlib import Path

from brandtlift.congruence import irreducibility_heuristic, sturm_bound
from brandtlift.lift import scale_congruent_pair, waldspurger_lift
from brandtlift.orders import eichler_mass
from brandtlift.shortvec import vector_counts
from brandtlift.theta import QSeries, parse_qseries, theta_series, trace_zero_lattice

GOLDEN = Path(__file__).parent / "golden"

TABLE_170_F = {3: -2, 7: 2, 11: 6, 13: 2, 19: 8, 23: -6, 29: -6, 31: 2,
               37: 2, 41: -6, 43: -4, 47: 12, 53: 6}
TABLE_170_G = {3: 3, 7: 2, 11: -4, 13: -3, 19: 3, 23: -6, 29: 9, 31: -3,
               37: -8, 41: -6, 43: 6, 47: -13, 53: -9}
TABLE_174_F = {5: -3, 7: 5, 11: 6, 13: -4, 17: 3, 19: -1, 23: 0, 31: -4,
               37: -1, 41: -9, 43: -7, 47: -3, 53: -6, 59: 3}
TABLE_174_G = {5: 2, 7: 0, 11: -4, 13: 6, 17: -2, 19: 4, 23: 0, 31: -4,
               37: -6, 41: 6, 43: -12, 47: -8, 53: -6, 59: 8}

REF_170_F = [-4, -4, -4, -4, 5, 5, 5, 5, 5, 5, 5, 5, 2, 2,
             -1, -1, -1, -1, -1, -1, -1, -1, -10, -10]
REF_170_G = [1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 2, 2,
             -1, -1, -1, -1, -1, -1, -1, -1, 0, 0]
REF_174_F = [2, 2, -5, -5, -5, -5, 10, 10, 10, 10, -2, -2, -2, -2, -8, -8]
REF_174_G = [2, 2, 0, 0, 0, 0, 0, 0, 0, 0, -2, -2, -2, -2, 2, 2]


def _report(num: int, desc: str, ok: bool, detail: str = "") -> bool:
    line = f"{'PASS' if ok else 'FAIL'} criterion {num}: {desc}"
    if detail:
        line += f" [{detail}]"
    print(line)
    return ok


def test_criterion_1_class_sets(classes170, classes174):
    ok_170 = classes170.h == 24 and classes170.weights == [2] * 24
    ok_174 = classes174.h == 16 and sorted(classes174.weights) == [2] * 14 + [4, 4]
    ok = ok_170 and ok_174
    detail = (f"N=170: h={classes170.h}, weights all 2: {ok_170}; "
              f"N=174: h={classes174.h}, weight multiset "
              f"{sorted(classes174.weights)}")
    assert _report(1, "class numbers and unit weights", ok, detail)


def test_criterion_2_mass_formula(classes170, classes174):
    sums = (sum(Fraction(1, w) for w in classes170.weights),
            sum(Fraction(1, w) for w in classes174.weights))
    ok = (sums == (Fraction(12), Fraction(15, 2))
          and eichler_mass(17, 10) == 12
          and eichler_mass(3, 58) == Fraction(15, 2))
    assert _report(2, "mass formula certificates", ok,
                   f"sum(1/w) = {sums[0]} and {sums[1]}")


def test_criterion_3_hecke_eigenvalues(module170, module174,
                                       phi170_f, phi170_g, phi174_f, phi174_g):
    bad = []
    for module, phi, table in ((module170, phi170_f, TABLE_170_F),
                               (module170, phi170_g, TABLE_170_G),
                               (module174, phi174_f, TABLE_174_F),
                               (module174, phi174_g, TABLE_174_G)):
        for p, ap in table.items():
            if module.eigenvalue_of(phi, p) != ap:
                bad.append((module.level, p))
    al_ok = all(
        [module170.atkin_lehner_sign(phi, p) for p in (2, 5, 17)] == [1, 1, -1]
        for phi in (phi170_f, phi170_g)
    ) and all(
        [module174.atkin_lehner_sign(phi, p) for p in (2, 3, 29)] == [1, -1, 1]
        for phi in (phi174_f, phi174_g)
    )
    ok = not bad and al_ok
    assert _report(3, "eigenvalue tables and Atkin-Lehner signs", ok,
                   f"27 good-prime eigenvalues checked, mismatches: {bad or 'none'}; "
                   f"AL signs: {'match' if al_ok else 'MISMATCH'}")


def test_criterion_4_eigenvector_multisets(phi170_f, phi170_g, phi174_f, phi174_g):
    def match_up_to_sign(phi, ref):
        return sorted(phi) == sorted(ref) or sorted(-x for x in phi) == sorted(ref)

    checks = {
        "170 f": match_up_to_sign(phi170_f, REF_170_F),
        "170 g": match_up_to_sign(phi170_g, REF_170_G),
        "174 f": match_up_to_sign(phi174_f, REF_174_F),
        "174 g": match_up_to_sign(phi174_g, REF_174_G),
    }
    ok = all(checks.values())
    detail = "; ".join(f"{k}: {'match' if v else 'MISMATCH'}" for k, v in checks.items())
    if not checks["174 g"]:
        detail += ("; the 174 g reference vector has entry gcd 2, so no primitive "
                   "integral vector can reach it by a global sign alone")
    assert _report(4, "eigenvector entry multisets up to global sign", ok, detail)


def test_criterion_5_pairing_norms(module170, module174,
                                   phi170_f, phi170_g, phi174_f, phi174_g):
    # norms taken at the common normalization fixed by the mod-5 congruence
    f170, g170, c170 = scale_congruent_pair(phi170_f, phi170_g, 5)
    f174, g174, c174 = scale_congruent_pair(phi174_f, phi174_g, 5)
    values = (module170.pairing(f170, f170), module170.pairing(g170, g170),
              module174.pairing(f174, f174), module174.pairing(g174, g174))
    ok = values == (960, 40, 1320, 80)
    assert _report(5, "pairing norms 960/40/1320/80", ok,
                   f"got {values}; scale witnesses c={c170} and c={c174}")


def test_criterion_6_lift_golden_files(phi170_f, phi170_g, phi174_f, phi174_g,
                                       thetas170, thetas174):
    meta = json.loads((GOLDEN / "metadata.json").read_text())
    cases = [
        ("w170_f", phi170_f, thetas170),
        ("w170_g", phi170_g, thetas170),
        ("w174_f", phi174_f, thetas174),
        ("w174_g", phi174_g, thetas174),
    ]
    details = []
    ok = True
    for name, phi, thetas in cases:
        golden, _ = parse_qseries((GOLDEN / f"{name}.txt").read_text())
        computed = waldspurger_lift(phi, thetas).series

        def matches(scalar):
            return all(computed.coefficient(n) == scalar * golden.coefficient(n)
                       for n in range(100))

        allowed = [Fraction(1), Fraction(-1)]
        allowance = meta[name]["scalar_allowance"]
        if allowance:
            s = Fraction(allowance["scalar"])
            allowed += [s, -s]
        good = any(matches(c) for c in allowed)
        ok = ok and good
        first = next(n for n in golden.support() if golden.coefficient(n))
        ratio = Fraction(computed.coefficient(first), golden.coefficient(first))
        exact = matches(ratio)
        details.append(f"{name}: ratio {ratio}{'' if exact else ' (inconsistent)'}"
                       f" -> {'ok' if good else 'outside the allowed scalars'}")
    assert _report(6, "lift q-expansions against golden files", ok, "; ".join(details))


def test_criterion_7_congruence_verdicts(report170, report174):
    checks = {
        "170 eigenvalues mod 5": report170.eigenvalue_check.ok and report170.sturm == 54,
        "174 eigenvalues mod 5": report174.eigenvalue_check.ok and report174.sturm == 60,
        "170 lift congruence": report170.lift_check.ok,
        "174 lift congruence": report174.lift_check.ok,
        "170 hypotheses fail": not report170.hypothesis_flags.ok,
        "174 hypotheses hold": report174.hypothesis_flags.ok,
        "norm divisibility": (report170.norm_divisibility == (True, True)
                              and report174.norm_divisibility == (True, True)),
    }
    ok = all(checks.values())
    detail = (f"lift witnesses c={report170.lift_check.witness_c} and "
              f"c={report174.lift_check.witness_c}; "
              + "; ".join(k for k, v in checks.items() if not v))
    assert _report(7, "congruence verdicts at ell=5", ok, detail.rstrip("; "))


def _random_pd_gram(rng):
    off = {(i, j): rng.randint(-2, 2) for i in range(3) for j in range(i + 1, 3)}
    g = [[0] * 3 for _ in range(3)]
    for (i, j), v in off.items():
        g[i][j] = g[j][i] = v
    for i in range(3):
        slack = sum(abs(g[i][j]) for j in range(3) if j != i)
        g[i][i] = rng.randint(slack + 1, 10)
    return g


def _naive_box_counts(gram, bound):
    m = min(gram[i][i] - sum(abs(gram[i][j]) for j in range(3) if j != i)
            for i in range(3))
    radius = isqrt(bound // max(m, 1))
    counts = {}
    for x in itertools.product(range(-radius, radius + 1), repeat=3):
        if x == (0, 0, 0):
            continue
        val = sum(x[i] * gram[i][j] * x[j] for i in range(3) for j in range(3))
        if 0 < val <= bound:
            counts[val] = counts.get(val, 0) + 1
    return counts


def test_criterion_8_property_suites(module170, module174, classes170, classes174):
    failures = []

    # Hecke commutativity, self-adjointness, column sums
    for module in (module170, module174):
        n = module.classes.h
        w = module.classes.weights
        level = module.level
        good = [p for p in (2, 3, 5, 7, 11, 13, 17, 19) if level % p]
        mats = {p: module.brandt_matrix(p).entries for p in good}
        for p in good:
            b = mats[p]
            if any(sum(b[i][j] for i in range(n)) != p + 1 for j in range(n)):
                failures.append(f"column sums B({p}) at N={level}")
            if any(w[i] * b[i][j] != b[j][i] * w[j] for i in range(n) for j in range(n)):
                failures.append(f"self-adjointness B({p}) at N={level}")
        for p, q in itertools.combinations(good, 2):
            a, b = mats[p], mats[q]
            ab = [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
            ba = [[sum(b[i][k] * a[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
            if ab != ba:
                failures.append(f"commutativity B({p})B({q}) at N={level}")

    # theta series shape and cross-class Gram determinants
    for cs in (classes170, classes174):
        dets = {trace_zero_lattice(o).determinant() for o in cs.right_orders}
        if len(dets) != 1:
            failures.append(f"Gram determinants differ at N={cs.q * cs.M}: {sorted(dets)}")
        for order in cs.right_orders:
            s = theta_series(trace_zero_lattice(order), 60)
            if s.coefficient(0) != 1:
                failures.append("theta constant term")
            if any(n % 4 in (1, 2) for n in s.support() if n):
                failures.append("theta support mod 4")
            if any(s.coefficient(n) % 2 for n in s.support() if n):
                failures.append("theta parity")

    # lift linearity and joint-permutation invariance on synthetic data
    rng = random.Random(11)
    thetas = [QSeries(40, {0: 1, **{rng.randrange(3, 41): rng.randint(1, 6)
                                    for _ in range(4)}}) for _ in range(5)]
    for _ in range(10):
        u = [rng.randint(-4, 4) for _ in range(5)]
        v = [rng.randint(-4, 4) for _ in range(5)]
        a, b = rng.randint(-3, 3), rng.randint(-3, 3)
        lhs = waldspurger_lift([a * x + b * y for x, y in zip(u, v)], thetas).series
        rhs = a * waldspurger_lift(u, thetas).series + b * waldspurger_lift(v, thetas).series
        if lhs != rhs:
            failures.append("lift linearity")
        perm = rng.sample(range(5), 5)
        if (waldspurger_lift([u[k] for k in perm], [thetas[k] for k in perm]).series
                != waldspurger_lift(u, thetas).series):
            failures.append("lift permutation invariance")

    # short-vector enumeration against a naive box scan
    rng = random.Random(23)
    for _ in range(20):
        gram = _random_pd_gram(rng)
        if vector_counts(gram, 50) != _naive_box_counts(gram, 50):
            failures.append(f"enumeration oracle on {gram}")

    ok = not failures
    assert _report(8, "structural property suites", ok,
                   "all properties hold" if ok else "; ".join(sorted(set(failures))))


def test_criterion_9_hypothesis_machinery(module174, phi174_f, phi174_g):
    sturm_ok = sturm_bound(2, 170) == 54 and sturm_bound(2, 174) == 60
    irr_f = irreducibility_heuristic(module174, phi174_f, 5, 60)
    irr_g = irreducibility_heuristic(module174, phi174_g, 5, 60)
    ok = sturm_ok and irr_f.ok and irr_g.ok
    assert _report(9, "Sturm bounds and irreducibility certificates", ok,
                   f"sturm: {'ok' if sturm_ok else 'wrong'}; witnesses "
                   f"p={irr_f.witness_prime} and p={irr_g.witness_prime}")
