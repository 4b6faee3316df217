"""Finite field towers F_p < F_q < F_{q^n} < F_{q^{2n}} with canonical encodings.

Elements of F_{p^m} are polynomials in ``t`` of degree < m over F_p, reduced
modulo a fixed monic irreducible.  The coefficient list ``[c0, c1, ...]``
(little endian) is encoded as the integer ``c0 + c1*p + c2*p^2 + ...``; that
integer is the canonical representation used everywhere else in the package.

Subfields are never given their own context: F_{p^d} is the set of elements
fixed by ``x -> x^(p^d)``.

For fields of order up to 2^20 the context precomputes exponential, logarithm
and Zech logarithm tables; larger fields (up to 2^32) fall back to schoolbook
polynomial arithmetic.  Both routes give identical results.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

MAX_ORDER = 2**32
MAX_TABLE_ORDER = 2**20


class FieldError(ValueError):
    """Invalid field parameters or an element outside the expected subfield."""


# --- integers -----------------------------------------------------------


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


# --- polynomials over F_p (little-endian coefficient lists) ----------------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], f: list[int], p: int) -> list[int]:
    a = _trim(list(a))
    df = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    while len(a) - 1 >= df:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fi in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fi) % p
        _trim(a)
    return a


def _pmul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _psub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def _ppowmod(a: list[int], e: int, f: list[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(a, f, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), f, p)
        base = _pmod(_pmul(base, base, p), f, p)
        e >>= 1
    return result


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def is_irreducible(f: list[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over F_p."""
    f = _trim(list(f))
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    x = [0, 1]
    if _psub(_ppowmod(x, p**m, f, p), x, p):
        return False
    for r in factorize(m):
        h = _psub(_ppowmod(x, p ** (m // r), f, p), x, p)
        if len(_pgcd(f, h, p)) != 1:
            return False
    return True


def digits(e: int, p: int, m: int) -> list[int]:
    out = []
    for _ in range(m):
        e, r = divmod(e, p)
        out.append(r)
    return out


def undigits(c, p: int) -> int:
    e = 0
    for ci in reversed(list(c)):
        e = e * p + int(ci)
    return e


def least_irreducible(p: int, m: int) -> list[int]:
    """Monic irreducible of degree m with the least base-p encoding."""
    for low in range(p**m):
        f = digits(low, p, m) + [1]
        if is_irreducible(f, p):
            return f
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


# --- field context --------------------------------------------------------


class FieldCtx:
    """The field F_{p^m} with a fixed modulus, primitive element and tower data.

    ``tower=(h, n)`` declares q = p^h and the chain F_q < F_{q^n} < F_{q^{2n}};
    it requires m == 2*n*h.  Without a tower, q = p and n is undefined.

    Instances are treated as immutable and may be shared between workers.
    """

    def __init__(self, p: int, m: int, tower: tuple[int, int] | None = None):
        if not isinstance(p, int) or not is_prime(p):
            raise FieldError(f"p={p} is not prime")
        if not isinstance(m, int) or m < 1:
            raise FieldError(f"extension degree m={m} must be a positive integer")
        if p**m > MAX_ORDER:
            raise FieldError(f"field order {p}^{m} exceeds 2^32")
        if tower is not None:
            h, n = tower
            if h < 1 or n < 1 or m != 2 * n * h:
                raise FieldError(f"tower (h={h}, n={n}) inconsistent with m={m}")
            self.h, self.n = h, n
        else:
            self.h, self.n = 1, None
        self.p = p
        self.m = m
        self.tower = tower
        self.q = p**self.h
        self.order = p**m
        self.modulus = tuple(least_irreducible(p, m))
        self.modulus_encoding = undigits(self.modulus, p)
        self._mod_list = list(self.modulus)
        self._exp = self._log = self._zech = None
        self._arrays = None
        self.g = self._least_primitive()
        if self.order <= MAX_TABLE_ORDER:
            self._build_tables()

    def __repr__(self) -> str:
        t = f", tower=(h={self.h}, n={self.n})" if self.tower else ""
        return f"FieldCtx(p={self.p}, m={self.m}{t}, modulus={self.modulus_encoding}, g={self.g})"

    def __reduce__(self):
        return (make_field, (self.p, self.m, self.tower))

    @property
    def has_tables(self) -> bool:
        return self._exp is not None

    # --- schoolbook arithmetic --------------------------------------------

    def _mul_school(self, a: int, b: int) -> int:
        p, m = self.p, self.m
        if p == 2:
            r = 0
            while b:
                if b & 1:
                    r ^= a
                b >>= 1
                a <<= 1
                if a >> m & 1:
                    a ^= self.modulus_encoding
            return r
        prod = _pmul(_trim(digits(a, p, m)), _trim(digits(b, p, m)), p)
        return undigits(_pmod(prod, self._mod_list, p), p)

    def _pow_school(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._mul_school(r, a)
            a = self._mul_school(a, a)
            e >>= 1
        return r

    def _add_digits(self, a: int, b: int, sign: int = 1) -> int:
        p = self.p
        out, place = 0, 1
        while a or b:
            a, da = divmod(a, p)
            b, db = divmod(b, p)
            out += ((da + sign * db) % p) * place
            place *= p
        return out

    def _least_primitive(self) -> int:
        n1 = self.order - 1
        if n1 == 1:
            return 1
        exps = [n1 // r for r in factorize(n1)]
        for x in range(2, self.order):
            if all(self._pow_school(x, e) != 1 for e in exps):
                return x
        raise AssertionError("no primitive element")  # pragma: no cover

    def _build_tables(self) -> None:
        p, m, n1 = self.p, self.m, self.order - 1
        enc = np.arange(self.order, dtype=np.int64)
        # multiplication by g as an F_p-linear map on coefficient vectors
        powers = p ** np.arange(m, dtype=np.int64)
        cols = [digits(self._mul_school(self.g, p**j), p, m) for j in range(m)]
        mg = np.array(cols, dtype=np.int64)  # row j = digits of g * t^j
        dig = (enc[:, None] // powers[None, :]) % p
        times_g = ((dig @ mg) % p) @ powers
        exp = np.empty(max(n1, 1), dtype=np.int64)
        x = 1
        tg = times_g.tolist()
        for k in range(n1):
            exp[k] = x
            x = tg[x]
        log = np.full(self.order, -1, dtype=np.int64)
        log[exp[:n1]] = np.arange(n1, dtype=np.int64)
        if len(set(exp[:n1].tolist())) != n1:
            raise AssertionError("g is not primitive")  # pragma: no cover
        plus_one = np.where(exp % p == p - 1, exp - (p - 1), exp + 1)
        zech = log[plus_one]
        self._exp = exp.tolist()
        self._log = log.tolist()
        self._zech = zech.tolist()
        self._arrays = (exp, log, zech)

    @property
    def arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(exp, log, zech) int64 tables used by the compiled kernels."""
        if self._arrays is None:
            raise FieldError("field too large for table-driven kernels")
        return self._arrays

    # --- arithmetic on encodings ------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if not a:
            return b
        if not b:
            return a
        if self._exp is None:
            return self._add_digits(a, b)
        n1 = self.order - 1
        la = self._log[a]
        z = self._zech[(self._log[b] - la) % n1]
        if z < 0:
            return 0
        return self._exp[(la + z) % n1]

    def neg(self, a: int) -> int:
        if self.p == 2 or not a:
            return a
        if self._exp is None:
            return self._add_digits(0, a, -1)
        n1 = self.order - 1
        return self._exp[(self._log[a] + n1 // 2) % n1]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        if self._exp is None:
            return self._mul_school(a, b)
        n1 = self.order - 1
        return self._exp[(self._log[a] + self._log[b]) % n1]

    def pow(self, a: int, e: int) -> int:
        if not a:
            if e < 0:
                raise ZeroDivisionError("0 has no inverse")
            return 1 if e == 0 else 0
        n1 = self.order - 1
        if self._exp is None:
            return self._pow_school(a, e % n1)
        return self._exp[self._log[a] * e % n1]

    def inv(self, a: int) -> int:
        if not a:
            raise ZeroDivisionError("0 has no inverse")
        return self.pow(a, -1)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def scalar(self, c: int) -> int:
        """The prime-field element c mod p."""
        return c % self.p

    def log(self, a: int) -> int:
        """Discrete log base g (tables) or bounded enumeration."""
        if not a:
            raise ValueError("log of 0")
        if self._log is not None:
            return self._log[a]
        x = 1
        for k in range(self.order - 1):
            if x == a:
                return k
            x = self._mul_school(x, self.g)
        raise AssertionError("unreachable")  # pragma: no cover

    def frob(self, a: int, k: int) -> int:
        """a^(p^k)."""
        return self.pow(a, pow(self.p, k % self.m))

    # --- tower maps ---------------------------------------------------------

    def _need_tower(self) -> None:
        if self.tower is None:
            raise FieldError("operation needs a tower (h, n)")

    def pow_q(self, a: int, k: int) -> int:
        """a^(q^k) with k reduced modulo 2n."""
        self._need_tower()
        return self.pow(a, self.q ** (k % (2 * self.n)))

    def norm_rel(self, a: int) -> int:
        """N_{q^{2n}/q^n}(a) = a^(1+q^n)."""
        self._need_tower()
        return self.pow(a, 1 + self.q**self.n)

    def trace_rel(self, a: int) -> int:
        """Tr_{q^{2n}/q^n}(a) = a + a^(q^n)."""
        self._need_tower()
        return self.add(a, self.pow(a, self.q**self.n))

    def norm_down(self, a: int, top: int, bottom: int) -> int:
        """Norm from F_{p^top} to F_{p^bottom} (degrees over F_p)."""
        if top % bottom or self.m % top:
            raise FieldError(f"bad subfield degrees {top}/{bottom}")
        return self.pow(a, (self.p**top - 1) // (self.p**bottom - 1))

    def trace_down(self, a: int, top: int, bottom: int) -> int:
        """Trace from F_{p^top} to F_{p^bottom} (degrees over F_p)."""
        if top % bottom or self.m % top:
            raise FieldError(f"bad subfield degrees {top}/{bottom}")
        acc, y, e = 0, a, self.p**bottom
        for _ in range(top // bottom):
            acc = self.add(acc, y)
            y = self.pow(y, e)
        return acc

    def in_subfield(self, a: int, d: int) -> bool:
        """True iff a lies in F_{p^d}, i.e. a^(p^d) == a."""
        if d < 1 or self.m % d:
            raise FieldError(f"d={d} does not divide m={self.m}")
        return self.pow(a, self.p**d) == a

    def subfield(self, d: int) -> list[int]:
        """Encodings of F_{p^d}, increasing."""
        if d < 1 or self.m % d:
            raise FieldError(f"d={d} does not divide m={self.m}")
        step = (self.order - 1) // (self.p**d - 1)
        if self._exp is not None:
            return sorted([0] + self._exp[::step][: self.p**d - 1])
        return sorted([0] + [self.pow(self.g, step * k) for k in range(self.p**d - 1)])

    @property
    def half_degree(self) -> int:
        """Degree over F_p of F_{q^n}."""
        self._need_tower()
        return self.n * self.h

    def is_square(self, a: int) -> bool:
        """Quadratic character on F_{q^n}^* (odd characteristic)."""
        self._need_tower()
        if self.p == 2:
            raise FieldError("is_square needs odd characteristic")
        if not a:
            raise FieldError("is_square(0) is undefined")
        d = self.half_degree
        if not self.in_subfield(a, d):
            raise FieldError(f"{a} is not in F_(q^n)")
        return self.pow(a, (self.p**d - 1) // 2) == 1

    def pick_nonsquare(self) -> int:
        """Least-encoding nonsquare of F_{q^n}."""
        self._need_tower()
        if self.p == 2:
            raise FieldError("no nonsquares in characteristic 2")
        for a in self.subfield(self.half_degree):
            if a and not self.is_square(a):
                return a
        raise AssertionError("unreachable")  # pragma: no cover

    def abs_trace_half(self, a: int) -> int:
        """Tr_{q^n/p}(a) for a in F_{q^n}."""
        return self.trace_down(a, self.half_degree, 1)

    def pick_trace_one(self) -> int:
        """Least-encoding element of F_{q^n} with absolute trace 1 (p = 2)."""
        self._need_tower()
        if self.p != 2:
            raise FieldError("pick_trace_one needs characteristic 2")
        for a in self.subfield(self.half_degree):
            if self.abs_trace_half(a) == 1:
                return a
        raise AssertionError("unreachable")  # pragma: no cover

    # --- conversions -----------------------------------------------------------

    def coeffs(self, a: int) -> tuple[int, ...]:
        return tuple(digits(a, self.p, self.m))

    def from_coeffs(self, c) -> int:
        c = list(c)
        if len(c) > self.m or any(not 0 <= x < self.p for x in c):
            raise FieldError(f"invalid coefficient vector {c}")
        return undigits(c, self.p)

    def parse(self, text) -> int:
        """Accept a decimal encoding or a polynomial string like ``1+2*t+t^3``."""
        if isinstance(text, int):
            value = text
        else:
            s = str(text).replace(" ", "")
            if re.fullmatch(r"\d+", s):
                value = int(s)
            else:
                value = self._parse_poly(s)
        if not 0 <= value < self.order:
            raise FieldError(f"encoding {value} outside [0, {self.order})")
        return value

    def _parse_poly(self, s: str) -> int:
        c = [0] * self.m
        if not s:
            raise FieldError("empty element string")
        for term in re.split(r"\+", s):
            m = re.fullmatch(r"(-?\d+)?\*?(t(?:\^(\d+))?)?", term)
            if not term or m is None or (m.group(1) is None and m.group(2) is None):
                raise FieldError(f"cannot parse term {term!r}")
            coef = int(m.group(1)) if m.group(1) is not None else 1
            deg = 0 if m.group(2) is None else int(m.group(3) or 1)
            if deg >= self.m:
                raise FieldError(f"degree {deg} >= m={self.m} in {s!r}")
            c[deg] = (c[deg] + coef) % self.p
        return undigits(c, self.p)

    def format_poly(self, a: int) -> str:
        terms = []
        for i, c in enumerate(self.coeffs(a)):
            if c:
                terms.append(str(c) if i == 0 else f"{'' if c == 1 else str(c) + '*'}t{'' if i == 1 else '^' + str(i)}")
        return "+".join(terms) or "0"

    def element(self, value) -> "FieldElement":
        return FieldElement(self, self.parse(value))


@lru_cache(maxsize=None)
def make_field(p: int, m: int, tower: tuple[int, int] | None = None) -> FieldCtx:
    """Build (and cache) the canonical context for F_{p^m}."""
    if tower is not None:
        tower = (int(tower[0]), int(tower[1]))
    return FieldCtx(p, m, tower)


def tower_field(q: int, n: int) -> FieldCtx:
    """Context for F_{q^{2n}} with its tower, given q as a prime power."""
    fac = factorize(q) if q > 1 else {}
    if len(fac) != 1:
        raise FieldError(f"q={q} is not a prime power")
    (p, h), = fac.items()
    if n < 1:
        raise FieldError(f"n={n} must be positive")
    if q ** (2 * n) > MAX_ORDER:
        raise FieldError(f"field order {q}^{2 * n} exceeds 2^32")
    return make_field(p, 2 * n * h, (h, n))


@dataclass(frozen=True)
class FieldElement:
    """Convenience wrapper around an encoding; arithmetic delegates to the context."""

    ctx: FieldCtx
    value: int

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.ctx is not self.ctx:
                raise FieldError("context mismatch")
            return other.value
        if isinstance(other, int):
            return self.ctx.scalar(other)
        return NotImplemented

    def __add__(self, other):
        return FieldElement(self.ctx, self.ctx.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.ctx, self.ctx.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return FieldElement(self.ctx, self.ctx.sub(self._other(other), self.value))

    def __mul__(self, other):
        return FieldElement(self.ctx, self.ctx.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.ctx, self.ctx.div(self.value, self._other(other)))

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.neg(self.value))

    def __pow__(self, e: int):
        return FieldElement(self.ctx, self.ctx.pow(self.value, e))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.ctx is other.ctx and self.value == other.value
        if isinstance(other, int):
            return self.value == self.ctx.scalar(other)
        return NotImplemented

    def __hash__(self):
        return hash((id(self.ctx), self.value))

    def __int__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.ctx.coeffs(self.value)

    @property
    def encoding(self) -> int:
        return self.value

    def __repr__(self):
        return f"FieldElement({self.value})"
