from fractions import Fraction as F

import pytest

from wshift.exactmath import INFINITE
from wshift.measures import (
    AboveThreshold,
    DegenerateSupport,
    Measure,
    backstep_measure,
    backstep_subnormal_threshold,
    dirac,
    monomial_density,
    multi_backstep_check,
    neg_moment,
    piece_measure,
    power_backstep_subnormal_threshold,
    pushforward_power,
    shift_from_measure,
    split_origin,
)
from wshift.weights import backstep, bergman, packet

BERGMAN = monomial_density(2, 1)
LEBESGUE = monomial_density(1, 0)
CUBIC = monomial_density(3, 2)
TWO_ATOMS = Measure(((F(1, 3), F(1, 4)), (1, F(3, 4))))
MIXED = Measure(((0, F(1, 2)), (1, F(1, 2))))

MEASURES = [BERGMAN, LEBESGUE, CUBIC, dirac(F(1, 2)), TWO_ATOMS, Measure(((F(1, 2), F(1, 2)),), ((1, 1),))]


def test_moments():
    assert BERGMAN.moment(2) == F(1, 2)
    assert all(dirac(1).moment(n) == 1 for n in range(6))
    assert all(BERGMAN.moment(n) == F(2, n + 2) for n in range(20))
    assert all(m.is_probability for m in MEASURES)


def test_validation():
    with pytest.raises(ValueError):
        Measure(((F(3, 2), 1),))
    with pytest.raises(ValueError):
        Measure((), ((1, -1),))
    with pytest.raises(ValueError):
        Measure((), ((-1, 0),))


def test_split_origin():
    assert split_origin(BERGMAN) == (BERGMAN, 0)
    nu, rho = split_origin(MIXED)
    assert nu == dirac(1, F(1, 2)) and rho == F(1, 2)


def test_neg_moment():
    assert neg_moment(BERGMAN, 1) == 2
    assert neg_moment(BERGMAN, 2) == INFINITE
    assert neg_moment(CUBIC, 1) == F(3, 2)
    assert neg_moment(CUBIC, 2) == 3
    assert neg_moment(MIXED, 1) == INFINITE
    assert neg_moment(TWO_ATOMS, 2) == F(1, 4) * 9 + F(3, 4)


@pytest.mark.parametrize("mu", MEASURES + [MIXED], ids=str)
def test_finite_neg_moments_are_nested(mu):
    # support in [0, 1]: integrability of t^-j implies it for smaller j
    finite = [neg_moment(mu, j) != INFINITE for j in range(1, 6)]
    for j in range(1, 5):
        if finite[j]:
            assert finite[j - 1]


def test_shift_from_measure():
    assert shift_from_measure(dirac(1)).weights_sq(5) == [1] * 5
    assert shift_from_measure(BERGMAN).weights_sq(10) == [F(n + 2, n + 3) for n in range(10)]
    assert shift_from_measure(LEBESGUE).weights_sq(10) == [F(n + 1, n + 2) for n in range(10)]
    with pytest.raises(DegenerateSupport):
        shift_from_measure(dirac(0))


def test_pushforward_examples():
    assert pushforward_power(BERGMAN, 1) == BERGMAN
    assert pushforward_power(BERGMAN, 2) == LEBESGUE
    assert pushforward_power(dirac(F(1, 2)), 2) == dirac(F(1, 4))


def test_piece_measure_examples():
    piece = piece_measure(BERGMAN, 2, 1, F(2, 3))
    assert piece == monomial_density(F(3, 2), F(1, 2))
    assert all(piece.moment(n) == F(3, 2 * n + 3) for n in range(20))
    assert piece_measure(dirac(1), 3, 2, 1) == dirac(1)
    with pytest.raises(IndexError):
        piece_measure(BERGMAN, 3, 0)


@pytest.mark.parametrize("mu", MEASURES + [MIXED], ids=str)
@pytest.mark.parametrize("power", [1, 2, 3, 4])
def test_transform_moment_identities(mu, power):
    w = [mu.moment(n) for n in range(power * 21 + power)]
    pushed = pushforward_power(mu, power)
    assert pushed.is_probability
    for n in range(21):
        assert pushed.moment(n) == w[power * n]
    for i in range(1, power):
        piece = piece_measure(mu, power, i)
        assert piece.is_probability
        for n in range(21):
            assert piece.moment(n) == w[power * n + i] / w[i]


@pytest.mark.parametrize("mu", MEASURES, ids=str)
def test_piece_measure_matches_packet(mu):
    shift = shift_from_measure(mu)
    for power in (2, 3):
        for i in range(1, power):
            piece = piece_measure(mu, power, i)
            seq = packet(shift, power, i)
            assert [piece.moment(n) for n in range(21)] == seq.moments(21)


def test_pushforward_composes():
    for mu in MEASURES:
        assert pushforward_power(mu, 6) == pushforward_power(pushforward_power(mu, 2), 3)


def test_backstep_subnormal_threshold():
    assert backstep_subnormal_threshold(BERGMAN) == F(1, 2)
    assert backstep_subnormal_threshold(MIXED) == 0
    assert backstep_subnormal_threshold(dirac(1)) == 1


def test_backstep_measure():
    assert backstep_measure(BERGMAN, F(1, 2)) == LEBESGUE
    half = backstep_measure(BERGMAN, F(1, 4))
    assert half == Measure(((0, F(1, 2)),), ((F(1, 2), 0),))
    with pytest.raises(AboveThreshold):
        backstep_measure(BERGMAN, F(1, 2) + F(1, 10**6))
    # exponents <= 0 already make 1/t non-integrable, so the threshold
    # check fires before the density-class check can
    with pytest.raises(AboveThreshold):
        backstep_measure(LEBESGUE, F(1, 10))
    with pytest.raises(ValueError):
        backstep_measure(BERGMAN, 0)


@pytest.mark.parametrize("mu", [BERGMAN, CUBIC, dirac(F(1, 2)), TWO_ATOMS], ids=str)
@pytest.mark.parametrize("fraction", [F(1), F(1, 2), F(1, 9)])
def test_backstep_measure_moments_match_extended_shift(mu, fraction):
    s = backstep_subnormal_threshold(mu) * fraction
    ext = backstep(shift_from_measure(mu), s)
    out = backstep_measure(mu, s)
    assert out.is_probability
    assert [out.moment(n) for n in range(21)] == ext.moments(21)
    # eta_n = (1 - eps) gamma_n of the extremal extension, eps = 1 - fraction
    extremal = backstep_measure(mu, backstep_subnormal_threshold(mu))
    for n in range(1, 21):
        assert out.moment(n) == fraction * extremal.moment(n)


def test_multi_backstep_examples():
    assert multi_backstep_check(BERGMAN, [F(1, 2)])
    verdict = multi_backstep_check(BERGMAN, [F(1, 2), F(1, 3)])
    assert not verdict and verdict.step == 2
    assert multi_backstep_check(CUBIC, [F(2, 3), F(1, 2)])
    assert not multi_backstep_check(CUBIC, [F(2, 3), F(1, 2) + F(1, 1000)])
    assert not multi_backstep_check(CUBIC, [F(2, 3) - F(1, 1000), F(1, 2)])
    assert multi_backstep_check(CUBIC, [F(2, 3), F(1, 4)])


def test_two_step_chain_through_measures():
    # independent route: apply the single-step construction twice
    first = backstep_measure(CUBIC, F(2, 3))
    assert first == BERGMAN
    second = backstep_measure(first, F(1, 2))
    assert second == LEBESGUE
    seq = backstep(backstep(shift_from_measure(CUBIC), F(2, 3)), F(1, 2))
    assert seq.moments(15) == [second.moment(n) for n in range(15)]


def test_power_backstep_subnormal_threshold():
    for power in range(1, 9):
        assert power_backstep_subnormal_threshold(BERGMAN, power) == F(1, 2)
    assert power_backstep_subnormal_threshold(MIXED, 2) == 2
    assert power_backstep_subnormal_threshold(MIXED, 1) == 0
    assert power_backstep_subnormal_threshold(dirac(1), 3) == 1


@pytest.mark.parametrize("mu", [BERGMAN, CUBIC, TWO_ATOMS, MIXED], ids=str)
@pytest.mark.parametrize("power", [2, 3, 4])
def test_power_threshold_via_last_piece(mu, power):
    # the first summand of the power is a back-step of the last summand of
    # the base power; its threshold rescaled by gamma_{power-1}
    g = mu.moment(power - 1)
    last = piece_measure(mu, power, power - 1)
    assert power_backstep_subnormal_threshold(mu, power) == backstep_subnormal_threshold(last) / g
