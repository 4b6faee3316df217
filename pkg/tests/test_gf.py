import pickle
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kerbinom.gf import (
    FieldCtx,
    FieldError,
    digits,
    is_irreducible,
    least_irreducible,
    make_field,
    tower_field,
    undigits,
)

from conftest import SMALL_TOWERS


def _irreducible_by_trial(f, p):
    """Trial division by every monic polynomial of degree 1..deg/2."""
    deg = len(f) - 1

    def pmod(a, b):
        a = list(a)
        while len(a) >= len(b):
            c = a[-1]
            if c:
                shift = len(a) - len(b)
                for i, x in enumerate(b):
                    a[shift + i] = (a[shift + i] - c * x) % p
            a.pop()
        return a

    for d in range(1, deg // 2 + 1):
        for low in range(p**d):
            g = digits(low, p, d) + [1]
            if not any(pmod(f, g)):
                return False
    return True


def test_f4_modulus_and_elements():
    F = make_field(2, 2)
    assert F.modulus_encoding == 7
    assert F.modulus == (1, 1, 1)
    assert F.mul(2, 2) == 3  # t^2 = t + 1
    assert F.g == 2


def test_f3_primitive():
    F = make_field(3, 1)
    assert F.g == 2
    assert F.modulus == (0, 1)


def test_f1024_modulus_is_least_irreducible():
    F = tower_field(2, 5)
    first = next(
        low + 2**10 for low in range(2**10) if _irreducible_by_trial(digits(low, 2, 10) + [1], 2)
    )
    assert F.modulus_encoding == first
    assert sum(F.in_subfield(x, 5) for x in range(F.order)) == 32


@pytest.mark.parametrize("p,m", [(2, 4), (2, 6), (3, 3), (3, 4), (5, 2), (7, 2)])
def test_least_irreducible_matches_trial_division(p, m):
    f = least_irreducible(p, m)
    assert _irreducible_by_trial(f, p)
    for low in range(undigits(f[:-1], p)):
        assert not _irreducible_by_trial(digits(low, p, m) + [1], p)


@pytest.mark.parametrize("p,m", [(2, 5), (3, 4), (5, 3)])
def test_rabin_agrees_with_trial_division(p, m):
    for low in range(p**m):
        f = digits(low, p, m) + [1]
        assert is_irreducible(f, p) == _irreducible_by_trial(f, p)


@pytest.mark.parametrize("q,n", SMALL_TOWERS)
def test_primitive_element_order(q, n):
    F = tower_field(q, n)
    seen = set()
    x = 1
    for _ in range(F.order - 1):
        seen.add(x)
        x = F.mul(x, F.g)
    assert len(seen) == F.order - 1 and x == 1
    for y in range(2, F.g):
        assert any(F.pow(y, k) == 1 for k in range(1, F.order - 1))


@pytest.mark.parametrize("q,n", [(2, 2), (3, 2), (5, 2), (4, 2)])
def test_tables_match_schoolbook(q, n):
    F = tower_field(q, n)
    for a in range(0, F.order, 3):
        for b in range(1, F.order, 7):
            assert F.mul(a, b) == F._mul_school(a, b)
            assert F.add(a, b) == F._add_digits(a, b)


def test_large_field_without_tables():
    F = make_field(2, 24)
    assert not F.has_tables
    with pytest.raises(FieldError):
        F.arrays
    x = 123457
    assert F.mul(x, F.inv(x)) == 1
    assert F.pow(x, F.order - 1) == 1
    G = make_field(3, 14)
    y = 4_000_000
    assert G.mul(y, G.inv(y)) == 1
    assert G.add(y, G.neg(y)) == 0


def test_errors():
    with pytest.raises(FieldError):
        make_field(4, 2)
    with pytest.raises(FieldError):
        make_field(2, 0)
    with pytest.raises(FieldError):
        make_field(2, 4, (1, 3))
    with pytest.raises(FieldError):
        make_field(2, 40)
    F = make_field(2, 4)
    with pytest.raises(FieldError):
        F.pow_q(3, 1)  # no tower
    with pytest.raises(FieldError):
        F.in_subfield(3, 3)
    with pytest.raises(ZeroDivisionError):
        F.inv(0)


def test_pow_q_examples(f16):
    F = f16
    assert F.pow_q(0, 3) == 0
    assert F.pow_q(F.g, 4) == F.g
    assert F.pow_q(2, 1) == F._mul_school(2, 2)
    assert F.pow_q(F.g, -1) == F.pow_q(F.g, 3)


def test_norm_trace_f4():
    F = tower_field(2, 1)
    assert F.norm_rel(2) == 1
    assert F.trace_rel(2) == 1
    assert F.norm_rel(1) == 1 and F.trace_rel(0) == 0


@pytest.mark.parametrize("q,n", [(2, 1), (2, 2), (3, 1), (2, 3), (3, 2), (4, 2), (2, 4), (5, 2), (3, 3), (2, 5)])
def test_norm_and_trace_surjective(q, n):
    F = tower_field(q, n)
    qn = q**n
    norms = Counter(F.norm_rel(x) for x in range(1, F.order))
    traces = Counter(F.trace_rel(x) for x in range(F.order))
    half = set(F.subfield(F.half_degree))
    assert set(norms) == half - {0}
    assert set(norms.values()) == {qn + 1}
    assert set(traces) == half
    assert set(traces.values()) == {qn}


@pytest.mark.parametrize("q,n", [(3, 1), (3, 2), (5, 2), (3, 3), (7, 1)])
def test_nonsquare_count(q, n):
    F = tower_field(q, n)
    sub = [x for x in F.subfield(F.half_degree) if x]
    assert sum(not F.is_square(x) for x in sub) == (q**n - 1) // 2
    assert F.is_square(1)
    eta = F.pick_nonsquare()
    assert not F.is_square(eta)
    assert all(F.is_square(x) for x in sub if x < eta)


def test_pick_examples():
    assert tower_field(3, 1).pick_nonsquare() == 2
    assert not tower_field(3, 1).is_square(2)
    assert tower_field(2, 1).pick_trace_one() == 1
    F = tower_field(2, 5)
    eps = F.pick_trace_one()
    acc, y = 0, eps
    for _ in range(5):
        acc ^= y
        y = F.mul(y, y)
    assert acc == 1
    assert all(F.abs_trace_half(x) == 0 for x in F.subfield(5) if x < eps)
    with pytest.raises(FieldError):
        F.pick_nonsquare()
    with pytest.raises(FieldError):
        tower_field(3, 1).pick_trace_one()
    with pytest.raises(FieldError):
        tower_field(3, 2).is_square(0)


def test_parse_and_format():
    F = tower_field(3, 2)
    assert F.parse("5") == 5
    assert F.parse("2+t") == 5
    assert F.parse("1+2*t+t^3") == 1 + 2 * 3 + 27
    assert F.parse(F.format_poly(58)) == 58
    with pytest.raises(FieldError):
        F.parse("t^9")
    with pytest.raises(FieldError):
        F.parse("99999")
    with pytest.raises(FieldError):
        F.parse("x+1")


def test_pickle_roundtrip():
    F = tower_field(3, 2)
    G = pickle.loads(pickle.dumps(F))
    assert G is F


def test_field_element_wrapper():
    F = tower_field(3, 1)
    a = F.element("t")
    b = F.element(4)
    assert int(a * b / b) == int(a)
    assert (a - a) == 0
    assert -(a + 1) + a == -1
    assert a**8 == 1
    assert (1 - a) == F.element(F.sub(1, a.value))


FIELDS = [tower_field(q, n) for q, n in [(2, 3), (3, 2), (4, 2), (5, 2)]]


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(FIELDS), st.data())
def test_field_axioms(F, data):
    x, y, z = (data.draw(st.integers(0, F.order - 1)) for _ in range(3))
    assert F.mul(x, F.mul(y, z)) == F.mul(F.mul(x, y), z)
    assert F.add(x, F.add(y, z)) == F.add(F.add(x, y), z)
    assert F.mul(x, F.add(y, z)) == F.add(F.mul(x, y), F.mul(x, z))
    assert F.sub(F.add(x, y), y) == x
    if x:
        assert F.mul(x, F.inv(x)) == 1


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(FIELDS), st.data())
def test_frobenius_is_automorphism(F, data):
    x, y = (data.draw(st.integers(0, F.order - 1)) for _ in range(2))
    k = data.draw(st.integers(-5, 10))
    pq = F.pow_q
    assert pq(F.add(x, y), k) == F.add(pq(x, k), pq(y, k))
    assert pq(F.mul(x, y), k) == F.mul(pq(x, k), pq(y, k))
    c = data.draw(st.sampled_from(F.subfield(F.h)))
    assert pq(F.mul(c, x), k) == F.mul(c, pq(x, k))


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(FIELDS), st.data())
def test_norm_multiplicative_trace_linear(F, data):
    x, y = (data.draw(st.integers(0, F.order - 1)) for _ in range(2))
    c = data.draw(st.sampled_from(F.subfield(F.half_degree)))
    assert F.norm_rel(F.mul(x, y)) == F.mul(F.norm_rel(x), F.norm_rel(y))
    assert F.trace_rel(F.add(F.mul(c, x), y)) == F.add(F.mul(c, F.trace_rel(x)), F.trace_rel(y))
    assert F.in_subfield(F.norm_rel(x), F.half_degree)
    assert (F.norm_rel(x) == 0) == (x == 0)


def test_subfield_listing():
    F = tower_field(4, 2)
    for d in (1, 2, 4, 8):
        sub = F.subfield(d)
        assert len(sub) == 2**d
        assert sub == [x for x in range(F.order) if F.in_subfield(x, d)]


def test_ctx_requires_int():
    with pytest.raises(FieldError):
        FieldCtx(2.0, 3)
