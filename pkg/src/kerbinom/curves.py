"""Affine point counts on the auxiliary plane curves over F_{q^n}.

Odd q:   (S^{q^s} - S)^2 = G(Z),  G(Z) = eta Z^2 + eta^{q^s} Z^{2q^s} - 2 beta eta^{(q^s+1)/2} Z^{q^s+1}
Even q:  S^{2(q^s-1)} Y^{q^s} + S^{q^s-1} (beta + Tr(Y)) + Y = 0,  Y = Z^2 + Z + eps

Counts are affine and brute force; the comparison with the Hasse-Weil window
is a consistency check with a slack term, not an exact place count.  Good
points are turned into condition systems and witness certificates by
:func:`params_from_curve_point`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import kernels
from .binomial import (
    ConditionSystem,
    DegenerateError,
    WitnessCertificate,
    check_conditions,
    normalize_s,
    transport_witness,
    witness_from_xi_any_x0,
)
from .gf import FieldCtx, FieldError


def genus(q: int, s: int) -> int:
    return q ** (2 * s) - q**s - 1


def hasse_weil_window(field_size: int, genus: int) -> tuple[float, float]:
    r = 2 * genus * math.sqrt(field_size)
    return field_size + 1 - r, field_size + 1 + r


def bad_place_slack(parity: str, q: int, s: int) -> int:
    return 4 if parity == "odd" else 2 * q**s + 2


@dataclass(frozen=True)
class CurveSpec:
    ctx: FieldCtx
    s: int
    beta: int
    aux: int  # eta (odd q) or eps (even q)

    def __post_init__(self):
        ctx = self.ctx
        object.__setattr__(self, "s", normalize_s(self.s, ctx.n))
        half = ctx.half_degree
        if not (ctx.in_subfield(self.beta, half) and ctx.in_subfield(self.aux, half)):
            raise FieldError("beta and the auxiliary element must lie in F_(q^n)")
        if self.parity == "odd":
            if self.beta in (1, ctx.neg(1)):
                raise FieldError("beta must not be 1 or -1")
            if not self.aux or self._is_square_half(self.aux):
                raise FieldError("eta must be a nonsquare of F_(q^n)")
        else:
            if self.beta in (0, 1):
                raise FieldError("beta must not be 0 or 1")
            if ctx.abs_trace_half(self.aux) != 1:
                raise FieldError("eps must have absolute trace 1")

    @property
    def parity(self) -> str:
        return "even" if self.ctx.p == 2 else "odd"

    @property
    def qs(self) -> int:
        return self.ctx.q**self.s

    def _is_square_half(self, x: int) -> bool:
        ctx = self.ctx
        qn = ctx.q**ctx.n
        return ctx.pow(x, (qn - 1) // 2) == 1


@dataclass(frozen=True)
class CurveCount:
    spec: CurveSpec
    affine: int
    good: int
    singular: int
    good_points: tuple[tuple[int, int], ...] = field(default=(), repr=False)

    @property
    def genus(self) -> int:
        return genus(self.spec.ctx.q, self.spec.s)

    @property
    def window(self) -> tuple[float, float]:
        return hasse_weil_window(self.spec.ctx.q**self.spec.ctx.n, self.genus)

    @property
    def slack(self) -> int:
        sp = self.spec
        return bad_place_slack(sp.parity, sp.ctx.q, sp.s) + self.singular

    @property
    def ok(self) -> bool:
        lo, hi = self.window
        return lo - self.slack <= self.affine <= hi + self.slack

    def to_json(self, sign: int | None = None) -> dict:
        sp = self.spec
        lo, hi = self.window
        return {
            "parity": sp.parity,
            "q": sp.ctx.q,
            "n": sp.ctx.n,
            "s": sp.s,
            "beta": sp.beta,
            "aux": sp.aux,
            "sign": sign,
            "affine": self.affine,
            "good": self.good,
            "singular": self.singular,
            "hw_low": round(lo, 6),
            "hw_high": round(hi, 6),
            "ok": self.ok,
        }


@lru_cache(maxsize=16)
def _odd_chains(ctx: FieldCtx, s: int):
    """Index chains of F_{q^n} grouped by (S^{q^s} - S)^2."""
    sub = np.array(ctx.subfield(ctx.half_degree), dtype=np.int64)
    qs = ctx.q**s
    keys = []
    for x in sub.tolist():
        u = ctx.sub(ctx.pow(x, qs), x)
        keys.append(ctx.mul(u, u))
    head = np.full(ctx.order, -1, dtype=np.int64)
    nxt = np.full(len(sub), -1, dtype=np.int64)
    for i in range(len(sub) - 1, -1, -1):
        nxt[i] = head[keys[i]]
        head[keys[i]] = i
    return sub, head, nxt


def count_odd(spec: CurveSpec, collect: bool = False, backend: str | None = None) -> CurveCount:
    """All (S, Z) in F_{q^n}^2 on the odd-q curve; good means Z != 0 and eta Z^2 != S^2."""
    ctx = spec.ctx
    if spec.parity != "odd":
        raise FieldError("count_odd needs odd q")
    sub, head, nxt = _odd_chains(ctx, spec.s)
    exp, log, zech = ctx.arrays
    aff, good, sing, gs, gz = kernels.get(backend).odd_curve_scan(
        exp, log, zech, ctx.p, sub, head, nxt, spec.qs, spec.aux, spec.beta, bool(collect)
    )
    pts = tuple(zip(np.asarray(gs).tolist(), np.asarray(gz).tolist())) if collect else ()
    return CurveCount(spec, int(aff), int(good), int(sing), pts)


def count_even(spec: CurveSpec, collect: bool = False, backend: str | None = None) -> CurveCount:
    """All (S, Z) in F_{q^n}^2 on the even-q curve; good means S != 0 and Z^2 + Z + eps != 0."""
    ctx = spec.ctx
    if spec.parity != "even":
        raise FieldError("count_even needs even q")
    sub = np.array(ctx.subfield(ctx.half_degree), dtype=np.int64)
    exp, log, zech = ctx.arrays
    sh = spec.s * ctx.h
    aff, good, sing, gs, gz = kernels.get(backend).even_curve_scan(
        exp, log, zech, ctx.p, sub, spec.qs, sh, spec.beta, spec.aux, bool(collect)
    )
    pts = tuple(zip(np.asarray(gs).tolist(), np.asarray(gz).tolist())) if collect else ()
    return CurveCount(spec, int(aff), int(good), int(sing), pts)


def count(spec: CurveSpec, collect: bool = False, backend: str | None = None) -> CurveCount:
    return (count_odd if spec.parity == "odd" else count_even)(spec, collect, backend)


def count_brute(spec: CurveSpec) -> tuple[int, int]:
    """Direct double loop over F_{q^n}^2 (test oracle); returns (affine, good)."""
    ctx = spec.ctx
    sub = ctx.subfield(ctx.half_degree)
    aff = good = 0
    for S in sub:
        for Z in sub:
            if curve_value(spec, S, Z) == 0:
                aff += 1
                good += is_good_point(spec, S, Z)
    return aff, good


def curve_value(spec: CurveSpec, S: int, Z: int) -> int:
    ctx, qs, b = spec.ctx, spec.qs, spec.beta
    mul, add, pw = ctx.mul, ctx.add, ctx.pow
    if spec.parity == "odd":
        eta = spec.aux
        u = ctx.sub(pw(S, qs), S)
        g = add(
            add(mul(eta, mul(Z, Z)), mul(pw(eta, qs), pw(Z, 2 * qs))),
            ctx.neg(mul(mul(ctx.scalar(2), b), mul(pw(eta, (qs + 1) // 2), pw(Z, qs + 1)))),
        )
        return ctx.sub(g, mul(u, u))
    Y = add(add(mul(Z, Z), Z), spec.aux)
    return add(add(mul(pw(S, 2 * (qs - 1)), pw(Y, qs)), mul(pw(S, qs - 1), add(b, _trace_qs(spec, Y)))), Y)


def _trace_qs(spec: CurveSpec, y: int) -> int:
    ctx = spec.ctx
    acc = 0
    for _ in range(spec.s * ctx.h):
        acc = ctx.add(acc, y)
        y = ctx.mul(y, y)
    return acc


def is_good_point(spec: CurveSpec, S: int, Z: int) -> bool:
    ctx = spec.ctx
    if spec.parity == "odd":
        return Z != 0 and ctx.mul(spec.aux, ctx.mul(Z, Z)) != ctx.mul(S, S)
    return S != 0 and ctx.add(ctx.add(ctx.mul(Z, Z), Z), spec.aux) != 0


# --- even-q factorisation --------------------------------------------------------


def _h_poly(ctx: FieldCtx, beta: int, qs: int, S: int, Y: int) -> int:
    """H(S, Y), the even-q curve before splitting."""
    mul, add, pw = ctx.mul, ctx.add, ctx.pow
    s1 = pw(S, qs - 1)
    s2 = mul(s1, s1)
    s3 = mul(s2, s1)
    s4 = mul(s2, s2)
    yq = pw(Y, qs)
    terms = (
        mul(Y, Y),
        mul(s4, mul(yq, yq)),
        mul(mul(beta, beta), s2),
        mul(s1, Y),
        mul(s3, yq),
        mul(beta, s2),
        mul(s2, Y),
        mul(s2, yq),
    )
    acc = 0
    for t in terms:
        acc ^= t
    return acc


def _g_pair(ctx: FieldCtx, beta: int, qs: int, sh: int, S: int, Y: int) -> tuple[int, int]:
    mul, pw = ctx.mul, ctx.pow
    tr, yy = 0, Y
    for _ in range(sh):
        tr ^= yy
        yy = mul(yy, yy)
    s1 = pw(S, qs - 1)
    head = mul(mul(s1, s1), pw(Y, qs)) ^ Y
    gp = head ^ mul(s1, beta ^ tr)
    g = head ^ mul(s1, beta ^ tr ^ 1)
    return g, gp


def split_check_even(beta: int, ctx: FieldCtx, s: int) -> bool:
    """H(S, Y) == G(S, Y) * G'(S, Y) at every (S, Y) in F_{q^n}^2."""
    if ctx.p != 2:
        raise FieldError("split_check_even needs even q")
    qs, sh = ctx.q**s, s * ctx.h
    sub = ctx.subfield(ctx.half_degree)
    for S in sub:
        for Y in sub:
            g, gp = _g_pair(ctx, beta, qs, sh, S, Y)
            if _h_poly(ctx, beta, qs, S, Y) != ctx.mul(g, gp):
                return False
    return True


def curve_t_form(ctx: FieldCtx, beta: int, qs: int, S: int, T: int) -> int:
    """The even-q equation in (S, T) obtained by eliminating A from conditions 1 and 4."""
    mul, pw = ctx.mul, ctx.pow
    tq = pw(T, qs)
    terms = (
        mul(mul(beta, beta) ^ beta, pw(S, 2 * (qs + 1))),
        mul(pw(S, qs + 1), tq ^ T),
        mul(pw(S, 2 * qs), T),
        mul(mul(S, S), tq),
        mul(tq, tq),
        mul(T, T),
    )
    acc = 0
    for t in terms:
        acc ^= t
    return acc


def substitution_check_even(beta: int, ctx: FieldCtx, s: int) -> bool:
    """With T = S^2 Y the (S, T) equation equals S^4 H(S, Y) on the whole grid."""
    if ctx.p != 2:
        raise FieldError("needs even q")
    qs = ctx.q**s
    sub = ctx.subfield(ctx.half_degree)
    for S in sub:
        s4 = ctx.pow(S, 4)
        for Y in sub:
            T = ctx.mul(ctx.mul(S, S), Y)
            if curve_t_form(ctx, beta, qs, S, T) != ctx.mul(s4, _h_poly(ctx, beta, qs, S, Y)):
                return False
    return True


# --- from a curve point to a witness ---------------------------------------------


@dataclass(frozen=True)
class PointResult:
    system: ConditionSystem
    conditions_ok: bool
    xi: int
    certificate: WitnessCertificate
    realized_alpha: int  # N(delta) of the certificate
    sign: int | None

    @property
    def alpha_matches(self) -> bool:
        return self.realized_alpha == self.system.alpha


@lru_cache(maxsize=16)
def _as_roots(ctx: FieldCtx) -> np.ndarray:
    """root[c] = least y with y^2 + y = c in F_{2^m}, or -1."""
    exp, log, _ = ctx.arrays
    n1 = ctx.order - 1
    ys = np.arange(ctx.order, dtype=np.int64)
    sq = np.zeros(ctx.order, dtype=np.int64)
    sq[1:] = exp[(2 * log[1:]) % n1]
    img = sq ^ ys
    root = np.full(ctx.order, -1, dtype=np.int64)
    root[img[::-1]] = ys[::-1]
    return root


def quadratic_root(ctx: FieldCtx, S: int, T: int, delta_disc: int | None = None) -> int:
    """Least-encoding root of X^2 - S X - T in F_{q^{2n}}."""
    if ctx.p == 2:
        if not S:
            raise DegenerateError("S = 0 gives a double root")
        c = ctx.div(T, ctx.mul(S, S))
        y = int(_as_roots(ctx)[c])
        if y < 0:
            raise DegenerateError("no root in the field")
        r1 = ctx.mul(S, y)
        return min(r1, ctx.add(r1, S))
    disc = delta_disc if delta_disc is not None else ctx.add(ctx.mul(S, S), ctx.mul(ctx.scalar(4), T))
    if not disc:
        raise DegenerateError("double root")
    lg = ctx.log(disc)
    if lg % 2:
        raise DegenerateError("discriminant is not a square")
    w = ctx.pow(ctx.g, lg // 2)
    half = ctx.inv(ctx.scalar(2))
    r1 = ctx.mul(ctx.add(S, w), half)
    r2 = ctx.mul(ctx.sub(S, w), half)
    return min(r1, r2)


def system_from_point(spec: CurveSpec, S: int, Z: int, sign: int = 1) -> ConditionSystem:
    ctx, qs, beta = spec.ctx, spec.qs, spec.beta
    if not is_good_point(spec, S, Z):
        raise DegenerateError("not a good point (t = 0)")
    mul, add, sub, pw = ctx.mul, ctx.add, ctx.sub, ctx.pow
    if spec.parity == "odd":
        sg = ctx.scalar(sign)
        if add(beta, sg) == 0:
            raise DegenerateError("beta + sign = 0")
        D = mul(spec.aux, mul(Z, Z))
        T = mul(sub(D, mul(S, S)), ctx.inv(ctx.scalar(4)))
        Dh = pw(D, (qs - 1) // 2)
        B = mul(sg, Dh)
        A = mul(sub(pw(S, qs), mul(sg, mul(S, Dh))), ctx.inv(ctx.scalar(2)))
        alpha = ctx.div(sub(beta, sg), add(beta, sg))
    else:
        Y = add(add(mul(Z, Z), Z), spec.aux)
        T = mul(mul(S, S), Y)
        B = pw(S, qs - 1)
        A = add(mul(beta, pw(S, qs)), ctx.div(add(T, pw(T, qs)), S))
        alpha = ctx.div(beta, add(1, beta))
    return ConditionSystem(T, S, A, B, alpha)


def params_from_curve_point(
    spec: CurveSpec, S: int, Z: int, sign: int | None = None, delta: int | None = None
) -> PointResult:
    """Condition system of a good point, the root xi of X^2 - S X - T and a certificate.

    With ``delta`` given the certificate is transported to it, which requires
    N(delta) to equal the realised class.
    """
    ctx = spec.ctx
    if spec.parity == "odd":
        sign = 1 if sign is None else sign
        if sign not in (1, -1):
            raise FieldError("sign must be +1 or -1")
    else:
        sign = None
    system = system_from_point(spec, S, Z, sign or 1)
    ok = check_conditions(system, spec.s, ctx)
    disc = ctx.mul(spec.aux, ctx.mul(Z, Z)) if spec.parity == "odd" else None
    xi = quadratic_root(ctx, system.S, system.T, disc)
    cert = witness_from_xi_any_x0(xi, spec.s, ctx)
    realized = ctx.norm_rel(cert.delta)
    if delta is not None:
        cert = transport_witness(cert, delta)
    return PointResult(system, ok, xi, cert, realized, sign)


# --- sweeps ------------------------------------------------------------------------


def valid_betas(ctx: FieldCtx) -> list[int]:
    excluded = {1, ctx.neg(1)} if ctx.p != 2 else {0, 1}
    return [b for b in ctx.subfield(ctx.half_degree) if b not in excluded]


def valid_aux(ctx: FieldCtx, all_values: bool = False) -> list[int]:
    """Nonsquares (odd q) or trace-one elements (even q) of F_{q^n}; the least one by default."""
    sub = ctx.subfield(ctx.half_degree)
    if ctx.p == 2:
        vals = [x for x in sub if ctx.abs_trace_half(x) == 1]
    else:
        e = (ctx.q**ctx.n - 1) // 2
        vals = [x for x in sub if x and ctx.pow(x, e) != 1]
    return vals if all_values else vals[:1]


def sweep_specs(ctx: FieldCtx, s: int, all_aux: bool = False):
    for aux in valid_aux(ctx, all_aux):
        for beta in valid_betas(ctx):
            yield CurveSpec(ctx, s, beta, aux)


def lower_window_positive(q: int, n: int, s: int, parity: str) -> bool:
    """True when the lower window bound alone forces a good point."""
    lo, _ = hasse_weil_window(q**n, genus(q, s))
    return lo > bad_place_slack(parity, q, s)
