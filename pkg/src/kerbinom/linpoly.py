"""q-polynomials as F_q-linear maps of F_{q^m}.

A :class:`QPolynomial` stores the coefficients a_0..a_{m-1} of
x, x^q, ..., x^{q^{m-1}}; exponents are always reduced modulo m, i.e. we work
in the quotient by x^{q^m} - x.  Here q = p^h comes from the context's tower
(or q = p without one) and m is the degree of the field over F_q.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

from . import kernels
from .gf import FieldCtx, FieldError, digits, factorize


def _fq_degree(ctx: FieldCtx) -> int:
    return ctx.m // ctx.h


@dataclass(frozen=True)
class QPolynomial:
    ctx: FieldCtx
    coeffs: tuple[int, ...]

    def __post_init__(self):
        m = _fq_degree(self.ctx)
        c = tuple(int(x) for x in self.coeffs)
        if len(c) != m:
            raise FieldError(f"expected {m} coefficients, got {len(c)}")
        if any(not 0 <= x < self.ctx.order for x in c):
            raise FieldError("coefficient outside the field")
        object.__setattr__(self, "coeffs", c)

    @property
    def q(self) -> int:
        return self.ctx.q

    @property
    def m(self) -> int:
        return len(self.coeffs)

    @classmethod
    def from_terms(cls, ctx: FieldCtx, terms: dict[int, int]) -> "QPolynomial":
        """Build from {i: a_i}; i is reduced mod m and repeated terms add up."""
        m = _fq_degree(ctx)
        c = [0] * m
        for i, a in terms.items():
            c[i % m] = ctx.add(c[i % m], a)
        return cls(ctx, tuple(c))

    @classmethod
    def identity(cls, ctx: FieldCtx) -> "QPolynomial":
        return cls.from_terms(ctx, {0: 1})

    @classmethod
    def monomial(cls, ctx: FieldCtx, a: int, i: int) -> "QPolynomial":
        return cls.from_terms(ctx, {i: a})

    @classmethod
    def parse(cls, ctx: FieldCtx, text: str) -> "QPolynomial":
        """Parse the text form ``a0,a1,...,a_{m-1}``."""
        return cls(ctx, tuple(ctx.parse(t) for t in text.split(",")))

    def text(self) -> str:
        return ",".join(str(a) for a in self.coeffs)

    def q_degree(self) -> int:
        nz = [i for i, a in enumerate(self.coeffs) if a]
        return nz[-1] if nz else -1

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other: "QPolynomial") -> "QPolynomial":
        self._check(other)
        return QPolynomial(self.ctx, tuple(self.ctx.add(a, b) for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "QPolynomial") -> "QPolynomial":
        self._check(other)
        return QPolynomial(self.ctx, tuple(self.ctx.sub(a, b) for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, c: int) -> "QPolynomial":
        """The map x -> c * f(x)."""
        return QPolynomial(self.ctx, tuple(self.ctx.mul(c, a) for a in self.coeffs))

    def compose(self, other: "QPolynomial") -> "QPolynomial":
        """The map x -> self(other(x))."""
        self._check(other)
        ctx, m = self.ctx, self.m
        out = [0] * m
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    k = (i + j) % m
                    out[k] = ctx.add(out[k], ctx.mul(a, ctx.pow(b, self.q**i)))
        return QPolynomial(ctx, tuple(out))

    def conjugate(self, lam: int) -> "QPolynomial":
        """The map x -> lam^{-1} f(lam x)."""
        ctx = self.ctx
        inv = ctx.inv(lam)
        return QPolynomial(ctx, tuple(ctx.mul(inv, ctx.mul(a, ctx.pow(lam, self.q**i))) for i, a in enumerate(self.coeffs)))

    def _check(self, other: "QPolynomial") -> None:
        if other.ctx is not self.ctx:
            raise FieldError("context mismatch")

    def __call__(self, x: int) -> int:
        return evaluate(self, x)


def evaluate(f: QPolynomial, x: int) -> int:
    """sum a_i x^{q^i}."""
    ctx = f.ctx
    if not 0 <= x < ctx.order:
        raise FieldError(f"{x} is not an element of the field")
    acc, y = 0, x
    for a in f.coeffs:
        if a:
            acc = ctx.add(acc, ctx.mul(a, y))
        y = ctx.pow(y, f.q)
    return acc


# --- F_q-bases and coordinates -------------------------------------------


def _element_degree_is(ctx: FieldCtx, u: int, deg: int, base: int) -> bool:
    """True iff u generates F_{base^deg} over F_base (u assumed in that field)."""
    return all(ctx.pow(u, base ** (deg // r)) != u for r in factorize(deg)) if deg > 1 else True


def _inv_mod_p(mat: list[list[int]], p: int) -> list[list[int]]:
    n = len(mat)
    a = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(mat)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] % p), None)
        if piv is None:
            raise ArithmeticError("singular basis matrix")
        a[c], a[piv] = a[piv], a[c]
        inv = pow(a[c][c], -1, p)
        a[c] = [x * inv % p for x in a[c]]
        for i in range(n):
            if i != c and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[c])]
    return [row[n:] for row in a]


@dataclass(frozen=True)
class FqBasis:
    u: int  # generator of F_{q^m} over F_q
    w: int  # generator of F_q over F_p
    powers: tuple[int, ...]  # u^0 .. u^{m-1}
    wpowers: tuple[int, ...]  # w^0 .. w^{h-1}
    inverse: tuple[tuple[int, ...], ...]  # F_p coordinates of (w^j u^i) -> digits


@lru_cache(maxsize=None)
def fq_basis(ctx: FieldCtx) -> FqBasis:
    """Power basis of the least-encoding element of degree m over F_q."""
    h, m, p = ctx.h, _fq_degree(ctx), ctx.p
    u = next(x for x in range(1, ctx.order) if _element_degree_is(ctx, x, m, ctx.q))
    fq = ctx.subfield(h)
    w = next(x for x in fq if _element_degree_is(ctx, x, h, p)) if h > 1 else 1
    powers = tuple(ctx.pow(u, i) if i else 1 for i in range(m))
    wpowers = tuple(ctx.pow(w, j) if j else 1 for j in range(h))
    # column (i*h + j) holds the digits of w^j u^i
    cols = [digits(ctx.mul(wp, up), p, ctx.m) for up in powers for wp in wpowers]
    mat = [[cols[c][r] for c in range(len(cols))] for r in range(ctx.m)]
    inverse = tuple(tuple(row) for row in _inv_mod_p(mat, p))
    return FqBasis(u, w, powers, wpowers, inverse)


def fq_coordinates(ctx: FieldCtx, y: int) -> list[int]:
    """Coordinates (elements of F_q) of y in the basis of :func:`fq_basis`."""
    b = fq_basis(ctx)
    p, h = ctx.p, ctx.h
    d = digits(y, p, ctx.m)
    flat = [sum(r * x for r, x in zip(row, d)) % p for row in b.inverse]
    out = []
    for i in range(len(b.powers)):
        c = 0
        for j in range(h):
            k = flat[i * h + j]
            if k:
                c = ctx.add(c, ctx.mul(ctx.scalar(k), b.wpowers[j]))
        out.append(c)
    return out


def _rank_over_field(ctx: FieldCtx, rows: list[list[int]]) -> int:
    rows = [list(r) for r in rows]
    ncols = len(rows[0]) if rows else 0
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = ctx.inv(rows[r][c])
        rows[r] = [ctx.mul(inv, x) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [ctx.sub(x, ctx.mul(f, y)) for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


def kernel_matrix(f: QPolynomial) -> list[list[int]]:
    """m x m matrix over F_q; column j holds the coordinates of f(u^j)."""
    b = fq_basis(f.ctx)
    cols = [fq_coordinates(f.ctx, evaluate(f, x)) for x in b.powers]
    return [[cols[j][i] for j in range(f.m)] for i in range(f.m)]


def kernel_dimension(f: QPolynomial) -> int:
    """dim over F_q of ker f, as m minus the rank of :func:`kernel_matrix`."""
    return f.m - _rank_over_field(f.ctx, kernel_matrix(f))


def kernel_dimension_fp(f: QPolynomial) -> int:
    """Same value via the F_p-rank of f on the polynomial basis (nullity / h)."""
    ctx = f.ctx
    imgs = [evaluate(f, ctx.p**j) for j in range(ctx.m)]
    null_p = ctx.m - kernels.impl.fp_rank(imgs, ctx.p, ctx.m)
    if null_p % ctx.h:
        raise ArithmeticError("kernel is not an F_q-subspace")
    return null_p // ctx.h


def kernel_elements(f: QPolynomial) -> list[int]:
    """Exhaustive zero set (test oracle)."""
    return [x for x in range(f.ctx.order) if evaluate(f, x) == 0]


def kernel_dimension_enum(f: QPolynomial) -> int:
    size = len(kernel_elements(f))
    dim = round(math.log(size, f.q))
    if f.q**dim != size:
        raise ArithmeticError(f"kernel size {size} is not a power of q={f.q}")
    return dim


def adjoint(f: QPolynomial) -> QPolynomial:
    """Adjoint with respect to (x, y) -> Tr_{q^m/q}(xy)."""
    ctx, m, q = f.ctx, f.m, f.q
    out = [0] * m
    for i, a in enumerate(f.coeffs):
        k = (m - i) % m
        out[k] = ctx.pow(a, q**k)
    return QPolynomial(ctx, tuple(out))


def trace_to_fq(ctx: FieldCtx, x: int) -> int:
    return ctx.trace_down(x, ctx.m, ctx.h)


# --- weights and scatteredness ----------------------------------------------


@dataclass(frozen=True)
class WeightSpectrum:
    """Number of points of L_f per weight (points of weight 0 are omitted).

    ``infinity_weight`` is the weight of <(0, 1)>, always 0 for U_f.
    """

    q: int
    m: int
    entries: dict[int, int]
    infinity_weight: int = 0

    def mass(self) -> int:
        return sum(c * (self.q**w - 1) for w, c in self.entries.items())

    @property
    def max_weight(self) -> int:
        return max(self.entries) if self.entries else 0

    @property
    def size(self) -> int:
        """Number of points of the linear set."""
        return sum(self.entries.values())

    def as_json(self) -> dict:
        return {str(w): c for w, c in sorted(self.entries.items())}


def _tables(ctx: FieldCtx):
    try:
        return ctx.arrays
    except FieldError as exc:
        raise FieldError(f"field of order {ctx.order} is too large for enumeration") from exc


def _qexps(f: QPolynomial) -> list[int]:
    return [f.q**i for i in range(f.m)]


def ratio_buckets(f: QPolynomial, backend: str | None = None):
    """Counts of x != 0 per value of f(x)/x, indexed by encoding (test helper)."""
    exp, log, zech = _tables(f.ctx)
    counts, _ = kernels.get(backend).ratio_counts(exp, log, zech, f.ctx.p, list(f.coeffs), _qexps(f), 0)
    return counts


def weight_of_bucket(size: int, q: int) -> int:
    w = round(math.log(size + 1, q))
    if q**w - 1 != size:
        raise ArithmeticError(f"bucket of size {size} is not of the form q^w - 1")
    return w


def weight_spectrum(f: QPolynomial, backend: str | None = None) -> WeightSpectrum:
    """Weights of the points <(1, lam)> of L_f, found by bucketing f(x)/x."""
    counts = ratio_buckets(f, backend)
    spec = Counter(weight_of_bucket(int(c), f.q) for c in counts[counts > 0])
    out = WeightSpectrum(f.q, f.m, dict(sorted(spec.items())))
    if out.mass() != f.ctx.order - 1:
        raise ArithmeticError("spectrum mass identity violated")
    return out


def is_scattered(f: QPolynomial, backend: str | None = None) -> bool:
    """True iff every point of L_f has weight 1 (early exit on the first heavy point)."""
    exp, log, zech = _tables(f.ctx)
    _, complete = kernels.get(backend).ratio_counts(exp, log, zech, f.ctx.p, list(f.coeffs), _qexps(f), f.q - 1)
    return bool(complete)
