import random

import pytest

from kerbinom.binomial import DegenerateError
from kerbinom.curves import (
    CurveSpec,
    count,
    count_brute,
    count_even,
    count_odd,
    curve_value,
    genus,
    hasse_weil_window,
    is_good_point,
    lower_window_positive,
    params_from_curve_point,
    quadratic_root,
    split_check_even,
    substitution_check_even,
    sweep_specs,
    system_from_point,
    valid_aux,
    valid_betas,
)
from kerbinom.gf import FieldError, tower_field


@pytest.mark.parametrize("q,n,s", [(3, 1, 1), (3, 2, 1), (5, 2, 1), (3, 3, 2), (2, 3, 1), (2, 3, 2), (4, 2, 1)])
def test_counts_match_double_loop(q, n, s, backend):
    F = tower_field(q, n)
    for spec in list(sweep_specs(F, s, all_aux=True))[:12]:
        c = count(spec, backend=backend)
        assert (c.affine, c.good) == count_brute(spec)
        assert c.good <= c.affine


def test_f9_odd_example():
    F = tower_field(3, 2)
    eta = F.pick_nonsquare()
    beta = valid_betas(F)[1]
    spec = CurveSpec(F, 1, beta, eta)
    sub = F.subfield(F.half_degree)
    pairs = [(S, Z) for S in sub for Z in sub if curve_value(spec, S, Z) == 0]
    c = count_odd(spec, collect=True)
    assert c.affine == len(pairs)
    assert set(c.good_points) == {pt for pt in pairs if is_good_point(spec, *pt)}
    assert (0, 0) in pairs and not is_good_point(spec, 0, 0)


def test_spec_validation():
    F = tower_field(3, 2)
    eta = F.pick_nonsquare()
    with pytest.raises(FieldError):
        CurveSpec(F, 1, 1, eta)
    with pytest.raises(FieldError):
        CurveSpec(F, 1, F.neg(1), eta)
    with pytest.raises(FieldError):
        CurveSpec(F, 1, 0, 1)  # 1 is a square
    with pytest.raises(FieldError):
        CurveSpec(F, 1, 0, F.g)  # not in F_(q^n)
    E = tower_field(2, 3)
    eps = E.pick_trace_one()
    with pytest.raises(FieldError):
        CurveSpec(E, 1, 1, eps)
    with pytest.raises(FieldError):
        CurveSpec(E, 1, 3 if E.in_subfield(3, 3) else E.subfield(3)[2], 0)
    with pytest.raises(FieldError):
        count_even(CurveSpec(F, 1, 0, eta))
    with pytest.raises(FieldError):
        count_odd(CurveSpec(E, 1, E.subfield(3)[2], eps))


def test_even_no_point_with_s_zero():
    F = tower_field(2, 5)
    for spec in list(sweep_specs(F, 1, all_aux=True))[::37]:
        sub = F.subfield(5)
        assert all(curve_value(spec, 0, z) != 0 for z in sub)


def test_window_q3_n5():
    lo, hi = hasse_weil_window(243, genus(3, 1))
    assert genus(3, 1) == 5
    assert 88 <= lo < 89 and 399 < hi <= 400
    F = tower_field(3, 5)
    for spec in list(sweep_specs(F, 1))[::20]:
        c = count_odd(spec)
        assert lo <= c.affine <= hi
        assert c.ok and c.good > 0


def test_window_q2_n5():
    F = tower_field(2, 5)
    lo, hi = hasse_weil_window(32, genus(2, 1))
    assert genus(2, 1) == 1
    for spec in sweep_specs(F, 1, all_aux=True):
        c = count_even(spec)
        assert c.ok and c.good > 0
        assert lo - c.slack <= c.affine <= hi + c.slack


def test_q2_s3_n7_good_vs_affine():
    F = tower_field(2, 7)
    rnd = random.Random(0)
    betas = valid_betas(F)
    eps = F.pick_trace_one()
    for beta in rnd.sample(betas, 3):
        c = count_even(CurveSpec(F, 3, beta, eps))
        assert c.affine - c.good <= 2 * 8 + 2 + c.singular


@pytest.mark.parametrize("q,s,n", [(2, 1, 3), (2, 2, 3), (4, 1, 3), (2, 1, 5)])
def test_split_check(q, s, n):
    F = tower_field(q, n)
    for beta in valid_betas(F)[:4]:
        assert split_check_even(beta, F, s)
        assert substitution_check_even(beta, F, s)
    with pytest.raises(FieldError):
        split_check_even(1, tower_field(3, 2), 1)


def test_split_at_y_zero():
    F = tower_field(2, 3)
    from kerbinom.curves import _g_pair, _h_poly

    for beta in valid_betas(F):
        for S in F.subfield(3):
            s2 = F.pow(S, 2)  # q^s = 2, so S^{2(q^s-1)} = S^2
            assert _h_poly(F, beta, 2, S, 0) == F.mul(F.mul(beta, beta) ^ beta, s2)
            g, gp = _g_pair(F, beta, 2, 1, S, 0)
            assert F.mul(g, gp) == F.mul(s2, F.mul(1 ^ beta, beta))


@pytest.mark.parametrize("q,n,s", [(2, 5, 1), (3, 5, 1), (3, 3, 1), (4, 3, 1), (5, 3, 2)])
def test_good_points_roundtrip(q, n, s):
    F = tower_field(q, n)
    specs = list(sweep_specs(F, s))
    for spec in specs[:: max(1, len(specs) // 6)]:
        c = count(spec, collect=True)
        for S, Z in c.good_points[:40]:
            for sign in ((1, -1) if F.p != 2 else (None,)):
                r = params_from_curve_point(spec, S, Z, sign)
                assert r.conditions_ok
                assert r.certificate.verify()
                assert r.certificate.kernel_dimension() == 2
                assert F.sub(F.sub(F.mul(r.xi, r.xi), F.mul(S, r.xi)), r.system.T) == 0
                if sign in (1, None):
                    assert r.alpha_matches


def test_transport_to_requested_delta():
    F = tower_field(3, 5)
    spec = next(sweep_specs(F, 1))
    c = count_odd(spec, collect=True)
    S, Z = c.good_points[0]
    r = params_from_curve_point(spec, S, Z, 1)
    rnd = random.Random(4)
    for _ in range(5):
        d = rnd.choice([x for x in range(1, F.order, 97) if F.norm_rel(x) == r.realized_alpha])
        t = params_from_curve_point(spec, S, Z, 1, delta=d)
        assert t.certificate.delta == d and t.certificate.verify()


def test_bad_points_rejected():
    F = tower_field(3, 2)
    spec = next(sweep_specs(F, 1))
    with pytest.raises(DegenerateError):
        system_from_point(spec, 0, 0)
    E = tower_field(2, 3)
    espec = next(sweep_specs(E, 1))
    with pytest.raises(DegenerateError):
        system_from_point(espec, 0, 1)


def test_quadratic_root():
    for q, n in [(2, 3), (3, 2), (4, 2), (5, 2)]:
        F = tower_field(q, n)
        rnd = random.Random(q)
        for _ in range(50):
            S, T = rnd.randrange(1, F.order), rnd.randrange(1, F.order)
            try:
                x = quadratic_root(F, S, T)
            except DegenerateError:
                continue
            assert F.sub(F.sub(F.mul(x, x), F.mul(S, x)), T) == 0
            roots = [y for y in range(F.order) if F.sub(F.sub(F.mul(y, y), F.mul(S, y)), T) == 0]
            assert x == min(roots)


@pytest.mark.parametrize("q,n,s", [(3, 3, 1), (3, 5, 1), (5, 2, 1)])
def test_eta_invariance(q, n, s):
    """Every nonsquare eta gives the same counts for the same beta."""
    F = tower_field(q, n)
    etas = valid_aux(F, all_values=True)
    rnd = random.Random(n)
    for beta in rnd.sample(valid_betas(F), 4):
        counts = {(count_odd(CurveSpec(F, s, beta, e)).affine, count_odd(CurveSpec(F, s, beta, e)).good) for e in etas[:: max(1, len(etas) // 8)]}
        assert len(counts) == 1


def test_lower_window_positive():
    assert lower_window_positive(3, 5, 1, "odd")
    assert lower_window_positive(2, 5, 1, "even")
    assert not lower_window_positive(3, 2, 1, "odd")


def test_curve_count_json():
    F = tower_field(2, 5)
    c = count_even(next(sweep_specs(F, 1)))
    js = c.to_json()
    assert set(js) == {"parity", "q", "n", "s", "beta", "aux", "sign", "affine", "good", "singular", "hw_low", "hw_high", "ok"}
    assert js["parity"] == "even"
