"""Nilpotent-H arithmetic and the (H, t, q) mixed ring."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from quintic_mirror.errors import DomainError
from quintic_mirror.mixed import HTruncPoly, MixedSeries
from quintic_mirror.sampling import sample_series_coeffs
from quintic_mirror.series import TruncSeries


def test_h_nilpotency_is_exact():
    h = HTruncPoly.h(4)
    assert (h ** 3).c == [0, 0, 0, 1]
    assert (h ** 4).c == [0, 0, 0, 0]


def test_htrunc_inverse():
    rng = random.Random(1)
    for _ in range(20):
        coeffs = sample_series_coeffs(rng, 4)
        if coeffs[0] == 0:
            coeffs[0] = Fraction(2)
        x = HTruncPoly(coeffs, 5)
        assert x * x.inverse() == HTruncPoly.const(1, 5)


def test_qseries_embedding_is_ring_homomorphism():
    # TruncSeries embeds at H^0 t^0; products must commute with the embedding.
    rng = random.Random(2)
    for _ in range(20):
        a = TruncSeries(sample_series_coeffs(rng, 3), 3)
        b = TruncSeries(sample_series_coeffs(rng, 3), 3)

        def embed(s):
            out = MixedSeries(2, 2, 3)
            for d, v in enumerate(s.coeffs):
                out.c[0][0][d] = v
            return out

        assert embed(a) * embed(b) == embed(a * b)


def test_mixed_mul_respects_caps():
    a = MixedSeries(1, 1, 2)
    a.set_coeff(1, 1, 1, Fraction(1))
    sq = a * a
    assert sq.is_zero()  # H^2 t^2 q^2 exceeds the (1, 1, 2) caps


def test_ddt_chain_rule():
    # d/dt (t^2 q^3) = 2 t q^3 + 3 t^2 q^3
    M = MixedSeries(0, 3, 4)
    M.set_coeff(0, 2, 3, Fraction(1))
    got = M.ddt()
    assert got.coeff(0, 1, 3) == 2 and got.coeff(0, 2, 3) == 3


def test_substitute_identity_shift():
    rng = random.Random(3)
    M = MixedSeries(1, 2, 3)
    for i in range(2):
        for k in range(3):
            M.c[i][k] = sample_series_coeffs(rng, 3)
    g = TruncSeries.zero(3)
    w = TruncSeries.one(3)
    assert M.substitute_mirror(g, w) == M


def test_substitute_pure_t_term():
    # M = t with g = 770q becomes T - 770q' + O(q'^2).
    from quintic_mirror.mirror import build_mirror_map
    mm = build_mirror_map(4, 2)
    M = MixedSeries(0, 1, 2)
    M.set_coeff(0, 1, 0, Fraction(1))
    got = M.substitute_mirror(mm.g, mm.w)
    assert got.coeff(0, 1, 0) == 1
    assert got.coeff(0, 0, 1) == -770


def test_substitute_pure_q_term():
    from quintic_mirror.mirror import build_mirror_map
    mm = build_mirror_map(4, 2)
    M = MixedSeries(0, 1, 2)
    M.set_coeff(0, 0, 1, Fraction(1))
    got = M.substitute_mirror(mm.g, mm.w)
    assert got.coeff(0, 0, 1) == 1
    assert got.coeff(0, 0, 2) == -770


def test_substitute_rejects_nonzero_shift_constant():
    M = MixedSeries(0, 1, 2)
    with pytest.raises(DomainError):
        M.substitute_mirror(TruncSeries([1, 0, 0], 2), TruncSeries.one(2))
