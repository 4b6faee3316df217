import random

import pytest

from kerbinom.binomial import delta_binomial
from kerbinom.gf import tower_field
from kerbinom.linpoly import QPolynomial, is_scattered, weight_spectrum
from kerbinom.rmcode import (
    DegenerateCodeError,
    is_mrd,
    min_distance,
    rank_code,
    rank_distribution,
    rank_distribution_direct,
)


@pytest.mark.parametrize("q,n", [(2, 1), (3, 1), (2, 2), (4, 1), (5, 1)])
def test_distribution_matches_direct_scan(q, n):
    F = tower_field(q, n)
    rnd = random.Random(q * 7 + n)
    tried = 0
    while tried < 3:
        f = QPolynomial(F, tuple(rnd.randrange(F.order) for _ in range(2 * n)))
        try:
            dist = rank_distribution(f)
        except DegenerateCodeError:
            continue
        assert dist == rank_distribution_direct(f)
        assert sum(dist.values()) == F.order**2
        assert dist[0] == 1
        tried += 1


@pytest.mark.parametrize("q,n", [(2, 1), (3, 1), (2, 2), (2, 3), (3, 2)])
def test_gabidulin_is_mrd(q, n):
    F = tower_field(q, n)
    f = QPolynomial.monomial(F, 1, 1)
    assert min_distance(f) == 2 * n - 1
    assert is_mrd(f)


def test_degenerate_rejected(f16):
    with pytest.raises(DegenerateCodeError):
        rank_code(QPolynomial.identity(f16))
    with pytest.raises(DegenerateCodeError):
        rank_code(QPolynomial(f16, (0, 0, 0, 0)))
    with pytest.raises(DegenerateCodeError):
        rank_code(QPolynomial(f16, (5, 0, 0, 0)))


def test_special_n4_is_mrd():
    F = tower_field(3, 4)
    for d in (x for x in range(1, F.order) if F.mul(x, x) == F.neg(1)):
        code = rank_code(delta_binomial(F, d, 1))
        assert code.is_mrd and code.min_distance == 7


def test_q2_n5_not_mrd(f1024):
    F = f1024
    for d in range(1, F.order, 31):
        code = rank_code(delta_binomial(F, d, 1))
        assert not code.is_mrd
        assert code.min_distance == 10 - code.spectrum.max_weight
        rep = code.report()
        assert rep["params"] == [10, 10, 2, code.min_distance]
        assert sum(int(v) for v in rep["rank_distribution"].values()) == F.order**2


@pytest.mark.parametrize("q,n", [(2, 2), (3, 2), (2, 3)])
def test_mrd_iff_scattered(q, n):
    F = tower_field(q, n)
    for s in (1, 2 * n - 1):
        for d in range(1, F.order, 3):
            f = delta_binomial(F, d, s)
            assert is_mrd(f) == is_scattered(f)
            assert min_distance(f) == 2 * n - weight_spectrum(f).max_weight
