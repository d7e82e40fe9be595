"""Truncated-series ring: frozen examples, brute-force oracles, ring laws."""

from __future__ import annotations

import random
from fractions import Fraction
from math import factorial

import pytest

from quintic_mirror.errors import DomainError, OrderMismatch
from quintic_mirror.sampling import sample_series_coeffs
from quintic_mirror.series import (TruncSeries, series_exp, series_log,
                                   series_reversion)


def F(p, q=1):
    return Fraction(p, q)


def random_series(rng, order, unit_constant=False, zero_constant=False):
    coeffs = sample_series_coeffs(rng, order)
    if unit_constant:
        coeffs[0] = F(1)
    if zero_constant:
        coeffs[0] = F(0)
    return TruncSeries(coeffs, order)


def test_mul_difference_of_squares():
    a = TruncSeries([F(1), F(1), F(0)], 2)
    b = TruncSeries([F(1), F(-1), F(0)], 2)
    assert (a * b).coeffs == [1, 0, -1]


def test_mul_identity_element():
    a = TruncSeries([F(1), F(120)], 1)
    assert a * TruncSeries.one(1) == a


def test_mul_quintic_factorial_square():
    # F = 1 + 120q + O(q^2); the product doubles the linear term.
    f = TruncSeries([F(1), F(120)], 1)
    assert (f * f).coeffs == [1, 240]


def test_mul_order_mismatch_rejected():
    with pytest.raises(OrderMismatch):
        TruncSeries.one(2) * TruncSeries.one(3)


def test_exp_frozen_values():
    assert series_exp(TruncSeries.zero(3)) == TruncSeries.one(3)
    e = series_exp(TruncSeries([0, 1, 0, 0], 3))
    assert e.coeffs == [1, 1, F(1, 2), F(1, 6)]
    e770 = series_exp(TruncSeries([0, 770, 0], 2))
    assert e770.coeffs == [1, 770, 296450]


def test_exp_requires_zero_constant():
    with pytest.raises(DomainError):
        series_exp(TruncSeries([F(1), F(1)], 1))


def test_exp_against_direct_sum_oracle():
    # Brute force: sum a^k/k! truncated, computed with plain powers.
    rng = random.Random(5)
    for _ in range(20):
        a = random_series(rng, 6, zero_constant=True)
        direct = TruncSeries.zero(6)
        power = TruncSeries.one(6)
        for k in range(7):
            direct = direct + power.scale(F(1, factorial(k)))
            power = power * a
        assert series_exp(a) == direct


def test_div_geometric_series():
    one = TruncSeries.one(2)
    got = one / TruncSeries([F(1), F(120), F(0)], 2)
    assert got.coeffs == [1, -120, 14400]


def test_div_identities():
    a = TruncSeries([F(3), F(-2), F(7)], 2)
    assert a / TruncSeries.one(2) == a
    b = TruncSeries([F(1), F(1), F(0)], 2)
    assert b / b == TruncSeries.one(2)


def test_div_requires_unit():
    with pytest.raises(DomainError):
        TruncSeries.one(2) / TruncSeries([F(0), F(1), F(0)], 2)


def test_div_mul_roundtrip():
    rng = random.Random(6)
    for _ in range(30):
        a = random_series(rng, 5)
        b = random_series(rng, 5, unit_constant=True)
        assert (a / b) * b == a


def test_reversion_frozen_examples():
    assert series_reversion(TruncSeries.one(3)) == TruncSeries.one(3)
    w = series_reversion(TruncSeries([F(1), F(1), F(0)], 2))
    assert w.coeffs == [1, -1, 2]
    w770 = series_reversion(series_exp(TruncSeries([0, 770], 1)))
    assert w770.coeffs == [1, -770]


def test_reversion_requires_unit_constant():
    with pytest.raises(DomainError):
        series_reversion(TruncSeries([F(2), F(1)], 1))


def test_reversion_roundtrip_random():
    # q' w(q') v(q' w(q')) = q' through the truncation order.
    rng = random.Random(7)
    for _ in range(25):
        v = random_series(rng, 6, unit_constant=True)
        w = series_reversion(v)
        D = 6
        q_of = TruncSeries([0] + list(w.coeffs[:D]), D)
        residual = q_of * v.compose(q_of) - TruncSeries.variable(D)
        assert residual.is_zero()


def test_exp_log_roundtrips_random():
    rng = random.Random(8)
    for _ in range(25):
        a = random_series(rng, 6, zero_constant=True)
        assert series_log(series_exp(a)) == a
        u = random_series(rng, 6, unit_constant=True)
        assert series_exp(series_log(u)) == u


def test_ring_laws_random_triples():
    rng = random.Random(9)
    for _ in range(100):
        a = random_series(rng, 4)
        b = random_series(rng, 4)
        c = random_series(rng, 4)
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert (a + b) + c == a + (b + c)
