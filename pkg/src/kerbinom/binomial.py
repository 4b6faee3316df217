"""Kernels of the binomials f_{a,b,s}(x) = x + a x^{q^s} + b x^{q^{s+n}} over F_{q^{2n}}.

Everything here works on integer encodings in a tower context (see
:func:`kerbinom.gf.tower_field`).  The constructive route to a two-dimensional
kernel is: pick xi outside F_{q^n}, take the kernel pair {x0, xi*x0}, solve for
delta and a (:func:`witness_from_xi`), then move delta inside its norm class by
lambda-conjugation (:func:`transport_witness`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import kernels
from .gf import FieldCtx, FieldError
from .linpoly import QPolynomial, is_scattered, kernel_dimension


class DegenerateError(ValueError):
    """A construction step hit a zero denominator or an excluded parameter."""


def normalize_s(s: int, n: int) -> int:
    s = s % (2 * n)
    if s == 0:
        raise FieldError("s must not be a multiple of 2n")
    if math.gcd(s, n) != 1:
        raise FieldError(f"gcd(s={s}, n={n}) != 1")
    return s


def valid_s_values(n: int) -> list[int]:
    return [s for s in range(1, 2 * n) if math.gcd(s, n) == 1]


def binomial(ctx: FieldCtx, a: int, b: int, s: int) -> QPolynomial:
    """f_{a,b,s}(x) = x + a x^{q^s} + b x^{q^{s+n}}."""
    s = normalize_s(s, ctx.n)
    return QPolynomial.from_terms(ctx, {0: 1, s: a, s + ctx.n: b})


def delta_binomial(ctx: FieldCtx, delta: int, s: int) -> QPolynomial:
    """f_{delta,s}(x) = x^{q^s} + delta x^{q^{s+n}}."""
    s = normalize_s(s, ctx.n)
    return QPolynomial.from_terms(ctx, {s: 1, s + ctx.n: delta})


@dataclass(frozen=True)
class BinomialParams:
    ctx: FieldCtx
    s: int
    a: int
    b: int

    def __post_init__(self):
        object.__setattr__(self, "s", normalize_s(self.s, self.ctx.n))

    @property
    def delta(self) -> int | None:
        return self.ctx.div(self.b, self.a) if self.a else None

    def poly(self) -> QPolynomial:
        return binomial(self.ctx, self.a, self.b, self.s)


def adjoint_params(params: BinomialParams) -> BinomialParams:
    """Parameters of the adjoint written again as a binomial of the same shape.

    Uses s'' = n - s, a'' = b^{q^{n-s}}, b'' = a^{q^{2n-s}}; when n - s is a
    multiple of 2n it switches to s' = 2n - s, a' = a^{q^{2n-s}}, b' = b^{q^{n-s}}.
    """
    ctx, n, s = params.ctx, params.ctx.n, params.s
    if (n - s) % (2 * n):
        return BinomialParams(ctx, n - s, ctx.pow_q(params.b, n - s), ctx.pow_q(params.a, 2 * n - s))
    return BinomialParams(ctx, 2 * n - s, ctx.pow_q(params.a, 2 * n - s), ctx.pow_q(params.b, n - s))


def kernel_bound_ok(ctx: FieldCtx, a: int, b: int, dim: int) -> bool:
    """The known bound: dim <= 1 if N(a) == N(b), dim <= 2 otherwise."""
    return dim <= (1 if ctx.norm_rel(a) == ctx.norm_rel(b) else 2)


# --- delta from xi and witnesses ----------------------------------------------


def _in_half(ctx: FieldCtx, x: int) -> bool:
    return ctx.in_subfield(x, ctx.half_degree)


def delta_from_xi(xi: int, s: int, ctx: FieldCtx) -> int:
    """delta = (xi^{q^{s+n}} - xi^{q^n}) / (xi^{q^n} - xi^{q^s})."""
    n = ctx.n
    if _in_half(ctx, xi):
        raise DegenerateError("xi lies in F_(q^n)")
    xn = ctx.pow_q(xi, n)
    den = ctx.sub(xn, ctx.pow_q(xi, s))
    if not den:
        raise DegenerateError("zero denominator: xi^(q^n) == xi^(q^s)")
    return ctx.div(ctx.sub(ctx.pow_q(xi, s + n), xn), den)


@dataclass(frozen=True)
class WitnessCertificate:
    """(s, delta, a, x0, xi): x0 and xi*x0 are F_q-independent zeros of f_{a, delta a, s}."""

    ctx: FieldCtx
    s: int
    delta: int
    a: int
    x0: int
    xi: int

    @property
    def b(self) -> int:
        return self.ctx.mul(self.delta, self.a)

    def poly(self) -> QPolynomial:
        return binomial(self.ctx, self.a, self.b, self.s)

    def verify(self) -> bool:
        ctx = self.ctx
        if not self.x0 or ctx.in_subfield(self.xi, ctx.h):
            return False
        f = self.poly()
        return f(self.x0) == 0 and f(ctx.mul(self.xi, self.x0)) == 0

    def kernel_dimension(self) -> int:
        return kernel_dimension(self.poly())

    def to_json(self) -> dict:
        return {
            "q": self.ctx.q,
            "n": self.ctx.n,
            "s": self.s,
            "delta": self.delta,
            "a": self.a,
            "x0": self.x0,
            "xi": self.xi,
            "verified": self.verify(),
        }


def witness_from_xi(xi: int, s: int, x0: int, ctx: FieldCtx) -> WitnessCertificate:
    """Solve for delta and a so that x0 and xi*x0 are both zeros of f_{a, delta a, s}."""
    n = ctx.n
    s = normalize_s(s, n)
    if ctx.in_subfield(xi, ctx.h):
        raise DegenerateError("xi lies in F_q")
    if not x0:
        raise DegenerateError("x0 must be nonzero")
    y0 = ctx.mul(xi, x0)
    pw = ctx.pow_q
    num = ctx.sub(ctx.mul(x0, pw(y0, s)), ctx.mul(y0, pw(x0, s)))
    den = ctx.sub(ctx.mul(y0, pw(x0, s + n)), ctx.mul(x0, pw(y0, s + n)))
    if not den:
        raise DegenerateError("zero denominator for delta")
    delta = ctx.div(num, den)
    den_a = ctx.add(pw(x0, s), ctx.mul(delta, pw(x0, n + s)))
    if not den_a:
        raise DegenerateError("zero denominator for a")
    a = ctx.neg(ctx.div(x0, den_a))
    cert = WitnessCertificate(ctx, s, delta, a, x0, xi)
    if not cert.verify():
        raise AssertionError("constructed witness does not verify")
    return cert


def witness_from_xi_any_x0(xi: int, s: int, ctx: FieldCtx) -> WitnessCertificate:
    """:func:`witness_from_xi` with x0 = 1, advancing in encoding order on rejection."""
    for x0 in range(1, ctx.order):
        try:
            return witness_from_xi(xi, s, x0, ctx)
        except DegenerateError as exc:
            if "delta" in str(exc) or "F_q" in str(exc):
                raise
    raise DegenerateError("no admissible x0")


def find_lambda(ctx: FieldCtx, delta: int, delta2: int, s: int) -> int:
    """Least-encoding lambda with delta2 = delta * lambda^{q^s (q^n - 1)}, or -1."""
    e = ctx.q**s * (ctx.q**ctx.n - 1)
    if ctx.has_tables:
        target = ctx.log(delta2) - ctx.log(delta)
        return int(kernels.impl.first_log_match(ctx.arrays[1], e % (ctx.order - 1), target))
    for lam in range(1, ctx.order):
        if ctx.mul(delta, ctx.pow(lam, e)) == delta2:
            return lam
    return -1


def transport_witness(cert: WitnessCertificate, delta2: int) -> WitnessCertificate:
    """Move a certificate to another delta with the same relative norm."""
    ctx, s = cert.ctx, cert.s
    if not delta2 or not cert.delta:
        raise DegenerateError("delta must be nonzero")
    if ctx.norm_rel(delta2) != ctx.norm_rel(cert.delta):
        raise DegenerateError("norms differ; no conjugation relates the two deltas")
    lam = find_lambda(ctx, cert.delta, delta2, s)
    if lam < 0:
        raise AssertionError("no lambda found although the norms agree")
    a2 = ctx.mul(cert.a, ctx.pow(lam, ctx.q**s - 1))
    x02 = ctx.div(cert.x0, lam)
    out = WitnessCertificate(ctx, s, delta2, a2, x02, cert.xi)
    if not out.verify():
        raise AssertionError("transported witness does not verify")
    return out


@lru_cache(maxsize=64)
def _xi_scan(ctx: FieldCtx, s: int) -> np.ndarray:
    exp, log, zech = ctx.arrays
    q, n = ctx.q, ctx.n
    n1 = ctx.order - 1
    return kernels.impl.xi_norm_scan(exp, log, zech, ctx.p, q**s % n1, q**n % n1, q ** (s + n) % n1)


def xi_norm_table(ctx: FieldCtx, s: int) -> np.ndarray:
    """N(delta(xi)) indexed by xi; -1 for xi in F_{q^n}, -2 for zero denominators."""
    return _xi_scan(ctx, normalize_s(s, ctx.n))


def norm_class_representatives(ctx: FieldCtx, s: int) -> dict[int, int]:
    """Norm class -> least-encoding xi whose delta(xi) lands in it (nonzero classes)."""
    tab = xi_norm_table(ctx, s)
    vals = tab[tab > 0]
    xs = np.flatnonzero(tab > 0)
    uniq, first = np.unique(vals, return_index=True)
    return {int(v): int(xs[i]) for v, i in zip(uniq, first)}


def norm_image(s: int, ctx: FieldCtx) -> dict:
    tab = xi_norm_table(ctx, s)
    classes = set(np.unique(tab[tab > 0]).tolist())
    return {
        "count": len(classes),
        "contains_one": 1 in classes,
        "zero_hits": int(np.count_nonzero(tab == 0)),
        "zero_denominators": int(np.count_nonzero(tab == -2)),
        "classes": sorted(classes),
    }


def norm_image_count(s: int, ctx: FieldCtx) -> int:
    """Number of distinct nonzero norms N(delta(xi)), xi outside F_{q^n}."""
    return norm_image(s, ctx)["count"]


def find_witness(ctx: FieldCtx, s: int, delta: int) -> WitnessCertificate | None:
    """xi-scan plus transport; None when no xi reaches the norm class of delta."""
    s = normalize_s(s, ctx.n)
    alpha = ctx.norm_rel(delta)
    if alpha in (0, 1):
        raise DegenerateError("N(delta) must not be 0 or 1")
    reps = norm_class_representatives(ctx, s)
    if alpha not in reps:
        return None
    cert = witness_from_xi_any_x0(reps[alpha], s, ctx)
    return transport_witness(cert, delta)


# --- the four-condition system ------------------------------------------------


@dataclass(frozen=True)
class ConditionSystem:
    T: int
    S: int
    A: int
    B: int
    alpha: int


def _is_irreducible_quadratic(ctx: FieldCtx, S: int, T: int) -> bool:
    """X^2 - S X - T irreducible over F_{q^n}."""
    if ctx.p == 2:
        if not S:
            return False
        return ctx.abs_trace_half(ctx.div(T, ctx.mul(S, S))) == 1
    disc = ctx.add(ctx.mul(S, S), ctx.mul(ctx.scalar(4), T))
    return disc != 0 and not ctx.is_square(disc)


def condition_values(system: ConditionSystem, s: int, ctx: FieldCtx) -> tuple[bool, bool, bool, bool]:
    T, S, A, B, al = system.T, system.S, system.A, system.B, system.alpha
    for v in (T, S, A, B, al):
        if not _in_half(ctx, v):
            raise FieldError(f"{v} is not in F_(q^n)")
    if al in (0, 1):
        raise DegenerateError("alpha must not be 0 or 1")
    qs = ctx.q**s
    add, sub, mul, pw = ctx.add, ctx.sub, ctx.mul, ctx.pow
    two = ctx.scalar(2)
    as_2bt = sub(mul(A, S), mul(two, mul(B, T)))
    c1 = add(
        sub(mul(sub(1, al), add(T, pw(T, qs))), mul(al, pw(S, qs + 1))),
        mul(add(1, al), as_2bt),
    )
    c3 = pw(S, qs) == add(mul(two, A), mul(B, S))
    c4 = ctx.neg(pw(T, qs)) == add(mul(A, A), mul(B, sub(mul(A, S), mul(B, T))))
    return c1 == 0, _is_irreducible_quadratic(ctx, S, T), c3, c4


def check_conditions(system: ConditionSystem, s: int, ctx: FieldCtx) -> bool:
    return all(condition_values(system, s, ctx))


@dataclass(frozen=True)
class XiRelations:
    xi: int
    S: int
    T: int
    A: int
    B: int


def ab_relations_from_xi(xi: int, s: int, ctx: FieldCtx) -> XiRelations:
    """S = Tr(xi), T = -N(xi) and (A, B) with xi^{q^s} = A + B xi; all identities asserted."""
    if _in_half(ctx, xi):
        raise DegenerateError("xi lies in F_(q^n); {1, xi} is not a basis")
    n, qs = ctx.n, ctx.q**s
    add, sub, mul, pw = ctx.add, ctx.sub, ctx.mul, ctx.pow
    S = ctx.trace_rel(xi)
    T = ctx.neg(ctx.norm_rel(xi))
    y = pw(xi, qs)
    B = ctx.div(sub(y, ctx.pow_q(y, n)), sub(xi, ctx.pow_q(xi, n)))
    A = sub(y, mul(B, xi))
    two = ctx.scalar(2)
    if not (_in_half(ctx, A) and _in_half(ctx, B)):
        raise AssertionError("A, B not in F_(q^n)")
    if pw(S, qs) != add(mul(two, A), mul(B, S)):
        raise AssertionError("S^(q^s) != 2A + BS")
    if ctx.neg(pw(T, qs)) != add(mul(A, A), mul(B, sub(mul(A, S), mul(B, T)))):
        raise AssertionError("-T^(q^s) != A^2 + B(AS - BT)")
    if ctx.trace_rel(pw(xi, qs + 1)) != add(add(mul(two, mul(B, T)), mul(A, S)), mul(B, mul(S, S))):
        raise AssertionError("Tr(xi^(q^s+1)) != 2BT + AS + BS^2")
    if ctx.trace_rel(pw(xi, qs + ctx.q**n)) != sub(mul(A, S), mul(two, mul(B, T))):
        raise AssertionError("Tr(xi^(q^s+q^n)) != AS - 2BT")
    return XiRelations(xi, S, T, A, B)


def conditions_from_xi(xi: int, s: int, ctx: FieldCtx) -> ConditionSystem:
    """The system realised by xi, with alpha = N(delta(xi))."""
    rel = ab_relations_from_xi(xi, s, ctx)
    alpha = ctx.norm_rel(delta_from_xi(xi, s, ctx))
    return ConditionSystem(rel.T, rel.S, rel.A, rel.B, alpha)


def quadratic_root_in(ctx: FieldCtx, S: int, T: int) -> int:
    """Least-encoding root of X^2 - S X - T in F_{q^{2n}}."""
    for x in range(ctx.order):
        if ctx.sub(ctx.sub(ctx.mul(x, x), ctx.mul(S, x)), T) == 0:
            return x
    raise DegenerateError("no root in the field")


# --- n = 3 criterion and classification ----------------------------------------


def _two_distinct_roots_fq(ctx: FieldCtx, b1: int, c: int) -> bool:
    """Y^2 + b1 Y + c has two distinct roots in F_q (b1, c in F_q)."""
    h = ctx.h
    if ctx.p == 2:
        if not b1:
            return False
        return ctx.trace_down(ctx.div(c, ctx.mul(b1, b1)), h, 1) == 0
    disc = ctx.sub(ctx.mul(b1, b1), ctx.mul(ctx.scalar(4), c))
    if not disc:
        return False
    return ctx.pow(disc, (ctx.q - 1) // 2) == 1


def lp_criterion_n3(delta: int, ctx: FieldCtx) -> bool:
    """Scatteredness test for L_{delta,2} (equivalently L_{delta,4}) when n = 3."""
    if ctx.n != 3:
        raise FieldError("criterion needs n = 3")
    nd = ctx.norm_rel(delta)
    if nd in (0, 1):
        raise DegenerateError("N(delta) must not be 0 or 1")
    A = ctx.neg(ctx.inv(ctx.sub(nd, 1)))
    h = ctx.h
    tr = ctx.trace_down(A, 3 * h, h)
    nm = ctx.norm_down(A, 3 * h, h)
    return _two_distinct_roots_fq(ctx, ctx.neg(ctx.sub(tr, 1)), nm)


def threshold(q: int, s: int) -> int:
    """Smallest n for which every delta yields a two-dimensional kernel."""
    return 4 * s + 2 if (q == 3 and s > 1) or (q == 2 and s > 2) else 4 * s + 1


@dataclass(frozen=True)
class Classification:
    kind: str  # SCATTERED | NOT_SCATTERED | CRITERION_N3 | SPECIAL_N4 | UNKNOWN
    scattered: bool | None
    reason: str

    def as_json(self) -> dict:
        return {"kind": self.kind, "scattered": self.scattered, "reason": self.reason}


def classify(ctx: FieldCtx, s: int, delta: int, exhaustive: bool = False) -> Classification:
    """Decide scatteredness of L_{delta,s} from the known results, or by enumeration."""
    q, n = ctx.q, ctx.n
    s = normalize_s(s, n)
    if not delta:
        raise DegenerateError("delta must be nonzero")
    nd = ctx.norm_rel(delta)
    if nd == 1:
        return Classification("NOT_SCATTERED", False, "norm-one: <(1,0)> has weight n")
    if n == 3:
        if s % 2:
            # the adjoint form x^{q^{n-s}} + delta^{-q^{n-s}} x^{q^{2n-s}} has s'' = n - s even
            d2 = ctx.inv(ctx.pow_q(delta, (n - s) % (2 * n)))
            return Classification("CRITERION_N3", lp_criterion_n3(d2, ctx), "quadratic criterion (adjoint)")
        return Classification("CRITERION_N3", lp_criterion_n3(delta, ctx), "quadratic criterion")
    if n == 4 and q % 2 and ctx.mul(delta, delta) == ctx.neg(1):
        return Classification("SPECIAL_N4", True, "n=4, q odd, delta^2=-1")
    if n >= threshold(q, s):
        return Classification("NOT_SCATTERED", False, f"n >= {threshold(q, s)}")
    if exhaustive:
        sc = is_scattered(delta_binomial(ctx, delta, s))
        return Classification("SCATTERED" if sc else "NOT_SCATTERED", sc, "exhaustive")
    return Classification("UNKNOWN", None, "no criterion applies")
