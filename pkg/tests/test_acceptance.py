"""Acceptance suite. Each criterion prints one PASS/FAIL line; every
comparison is exact rational equality."""

import io
from fractions import Fraction as F

import pytest

from wshift.cli import main
from wshift.exactmath import INFINITE
from wshift.measures import (
    Measure,
    backstep_subnormal_threshold,
    dirac,
    monomial_density,
    multi_backstep_check,
    neg_moment,
    piece_measure,
    pushforward_power,
    shift_from_measure,
)
from wshift.positivity import (
    all_passed,
    backstep_k_threshold,
    is_power_k_hyponormal_window,
    power_backstep_k_threshold,
    schur_preservation_check,
)
from wshift.quadratic import beta_family, d_poly, det_window, pqh_threshold_family, uvw
from wshift.weights import backstep, bergman, constant

RESULTS = []


def report(number, ok, detail=""):
    line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'} {detail}".rstrip()
    RESULTS.append(line)
    print(line)
    assert ok, detail


def hyp_closed(lp):
    return F((lp + 1) ** 2, 2 * (2 * lp + 1))


def two_hyp_closed(lp):
    return F((lp + 1) ** 2 * (2 * lp + 1) ** 2, 2 * (3 * lp + 1) * (4 * lp**2 + 3 * lp + 1))


def pqh_closed(lp):
    if lp <= 2:
        return hyp_closed(lp)
    num = (lp + 1) ** 2 * (1 + 7 * lp + 34 * lp**2 + 44 * lp**3)
    den = 2 * (1 + 9 * lp + 45 * lp**2 + 99 * lp**3 + 94 * lp**4)
    return F(num, den)


def test_criterion_01_backstep_thresholds():
    got = (backstep_k_threshold(bergman(), 1), backstep_k_threshold(bergman(), 2),
           backstep_subnormal_threshold(monomial_density(2, 1)))
    report(1, got == (F(2, 3), F(9, 16), F(1, 2)), f"{tuple(map(str, got))}")


def test_criterion_02_power_thresholds():
    bad = []
    for lp in range(1, 9):
        for k, closed in ((1, hyp_closed), (2, two_hyp_closed)):
            value = power_backstep_k_threshold(bergman(), lp, k)
            if value != closed(lp):
                bad.append((lp, k, str(value)))
    report(2, not bad, f"mismatches={bad}" if bad else "l=1..8, k=1,2")


def test_criterion_03_pqh_thresholds():
    bad = [(lp, str(pqh_threshold_family(lp))) for lp in range(1, 9) if pqh_threshold_family(lp) != pqh_closed(lp)]
    ok = not bad and pqh_threshold_family(2) == F(9, 10)
    report(3, ok, f"mismatches={bad}" if bad else "l=1..8, l=2 -> 9/10")


def test_criterion_04_uvw_closed_forms():
    bad = []
    for lp in range(1, 7):
        w = beta_family(lp, F(1, 2))
        for n in range(3, 51):
            u, v, ww = uvw(w, n)
            if u != F(lp**2, ((n + 1) * lp + 1) * (n * lp + 1)):
                bad.append(("u", lp, n))
            if v != F(4 * lp**2, ((n + 2) * lp + 1) * (n * lp + 1)):
                bad.append(("v", lp, n))
            if uvw(w, n + 1)[0] * v != ww:
                bad.append(("u_{n+1} v_n = w_n", lp, n))
    report(4, not bad, f"mismatches={bad[:5]}" if bad else "n=3..50, l=1..6")


def test_criterion_05_determinant_oracle():
    families = [beta_family(lp, x) for lp in (1, 2, 3) for x in (F(1, 2), F(9, 10))] + [constant()]
    bad = []
    for idx, w in enumerate(families):
        for n in range(11):
            p = d_poly(w, n)
            for t in (F(0), F(1), F(7, 3), F(10)):
                if p(t) != det_window(w, n, t):
                    bad.append((idx, n, t))
    report(5, not bad, f"mismatches={bad[:5]}" if bad else "7 families, n<=10")


MEASURE_PAIRS = [
    (monomial_density(2, 1), monomial_density(2, 1)),
    (monomial_density(2, 1), monomial_density(1, 0)),
    (monomial_density(3, 2), dirac(F(1, 2))),
    (dirac(F(1, 2)), dirac(F(1, 3))),
    (dirac(1), monomial_density(1, 0)),
    (Measure(((F(1, 3), F(1, 4)), (1, F(3, 4)))), monomial_density(2, 1)),
    (Measure(((F(1, 3), F(1, 4)), (1, F(3, 4)))), Measure(((F(1, 2), F(1, 2)), (1, F(1, 2))))),
    (Measure(((F(1, 2), F(1, 2)),), ((1, 1),)), dirac(F(2, 3))),
    (Measure(((F(1, 4), F(1, 3)), (F(1, 2), F(1, 3)), (F(3, 4), F(1, 3)))), monomial_density(3, 2)),
    (Measure((), ((F(1, 2), 0), (1, 1))), Measure(((F(1, 5), F(2, 3)), (F(4, 5), F(1, 3))))),
]


def test_criterion_06_schur_preservation():
    assert len(MEASURE_PAIRS) == 10
    bad = []
    for i, (mu1, mu2) in enumerate(MEASURE_PAIRS):
        assert mu1.is_probability and mu2.is_probability
        w1, w2 = shift_from_measure(mu1), shift_from_measure(mu2)
        for k in (1, 2, 3):
            if not schur_preservation_check(w1, w2, k, 25):
                bad.append((i, k))
    report(6, not bad, f"failures={bad}" if bad else "10 pairs, k<=3, N=25")


def test_criterion_07_measure_transforms():
    measures = [monomial_density(2, 1), monomial_density(1, 0), dirac(F(1, 2)), Measure(((F(1, 3), F(1, 4)), (1, F(3, 4))))]
    bad = []
    for m_idx, mu in enumerate(measures):
        gamma = [mu.moment(j) for j in range(4 * 20 + 4)]
        for lp in range(1, 5):
            pushed = pushforward_power(mu, lp)
            pieces = {i: piece_measure(mu, lp, i) for i in range(1, lp)}
            for n in range(21):
                if pushed.moment(n) != gamma[lp * n]:
                    bad.append((m_idx, lp, 0, n))
                for i, piece in pieces.items():
                    if piece.moment(n) != gamma[lp * n + i] / gamma[i]:
                        bad.append((m_idx, lp, i, n))
    report(7, not bad, f"mismatches={bad[:5]}" if bad else "4 measures, l<=4, n<=20")


def test_criterion_08_multi_step_extensions():
    cubic, berg = monomial_density(3, 2), monomial_density(2, 1)
    boundary = multi_backstep_check(cubic, [F(2, 3), F(1, 2)])
    eps = [F(1, 100), F(1, 10**6)]
    above = [multi_backstep_check(cubic, [F(2, 3), F(1, 2) + e]) for e in eps]
    chains = [[F(1, 2), F(1, 3)], [F(1, 10), F(1, 100)], [F(1, 2), F(1, 10**6)], [F(1, 1000), F(1, 1000)]]
    verdicts = [multi_backstep_check(berg, c) for c in chains]
    ok = (
        boundary.subnormal
        and not any(v.subnormal for v in above)
        and neg_moment(berg, 2) == INFINITE
        and all(not v.subnormal and v.step == 2 and "not integrable" in v.reason for v in verdicts)
    )
    report(8, ok, "3t^2 dt: (2/3, 1/2) subnormal; 2t dt: every two-step chain rejected")


def test_criterion_09_threshold_window_consistency():
    cases = [(lp, k) for lp in range(1, 9) for k in (1, 2)] + [(1, 3), (1, 4)]
    bad = []
    for lp, k in cases:
        s = power_backstep_k_threshold(bergman(), lp, k)
        if not all_passed(is_power_k_hyponormal_window(backstep(bergman(), s), lp, k, 25)):
            bad.append((lp, k, "at threshold"))
        for eps in (F(1, 100), F(1, 10**6)):
            verdicts = is_power_k_hyponormal_window(backstep(bergman(), s + eps), lp, k, 25)
            failures = [v.failed_at for v in verdicts if not v.passed]
            if failures != [0]:
                bad.append((lp, k, str(eps), failures))
    report(9, not bad, f"problems={bad}" if bad else f"{len(cases)} thresholds, N=25, fail at n=0")


def test_criterion_10_boundary_weights():
    w = beta_family(2, F(9, 10))
    got = (w.weight_sq(0), w.weight_sq(1))
    report(10, got == (F(3, 5), F(3, 5)), f"{tuple(map(str, got))}")


def test_criterion_11_threshold_tables_end_to_end():
    out = io.StringIO()
    code = main(["paper-tables", "--format", "csv"], stdout=out)
    lines = out.getvalue().splitlines()[1:]
    statuses = [line.rsplit(",", 1)[1] for line in lines]
    ok = code == 0 and len(statuses) == 32 and set(statuses) == {"MATCH"}
    report(11, ok, f"exit={code}, rows={len(statuses)}")


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
