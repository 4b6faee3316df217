"""Reference (interpreted) implementation of the enumeration kernels.

Every function mirrors one in ``_kernels.pyx`` argument for argument.  Field
elements are integer encodings; ``exp``, ``log`` and ``zech`` are the tables
of a :class:`~kerbinom.gf.FieldCtx` (``log[0] == -1``, ``zech[k] == -1`` when
``1 + g^k == 0``).
"""

from __future__ import annotations

import numpy as np


class _Tab:
    __slots__ = ("exp", "log", "zech", "n1", "p")

    def __init__(self, exp, log, zech, p):
        self.exp = exp.tolist() if hasattr(exp, "tolist") else list(exp)
        self.log = log.tolist() if hasattr(log, "tolist") else list(log)
        self.zech = zech.tolist() if hasattr(zech, "tolist") else list(zech)
        self.n1 = len(self.log) - 1
        self.p = p

    def mul(self, a, b):
        if not a or not b:
            return 0
        return self.exp[(self.log[a] + self.log[b]) % self.n1]

    def add(self, a, b):
        if self.p == 2:
            return a ^ b
        if not a:
            return b
        if not b:
            return a
        la = self.log[a]
        z = self.zech[(self.log[b] - la) % self.n1]
        if z < 0:
            return 0
        return self.exp[(la + z) % self.n1]

    def neg(self, a):
        if self.p == 2 or not a:
            return a
        return self.exp[(self.log[a] + self.n1 // 2) % self.n1]

    def pow(self, a, e):
        if not a:
            return 1 if e == 0 else 0
        return self.exp[self.log[a] * e % self.n1]


def _vadd(exp, log, zech, p, a, b):
    """Elementwise field addition of two encoding arrays."""
    if p == 2:
        return a ^ b
    n1 = len(log) - 1
    out = np.where(a == 0, b, a)
    both = (a != 0) & (b != 0)
    la = log[a[both]]
    z = zech[(log[b[both]] - la) % n1]
    out[both] = np.where(z < 0, 0, exp[(la + np.maximum(z, 0)) % n1])
    return out


def ratio_counts(exp, log, zech, p, coeffs, qexps, stop_at):
    """Histogram of f(x)/x over nonzero x, for f = sum coeffs[i] * x^qexps[i].

    Returns ``(counts, complete)``; with ``stop_at > 0`` the scan reports
    ``complete == False`` as soon as some bucket exceeds ``stop_at``.
    """
    n1 = len(log) - 1
    k = np.arange(n1, dtype=np.int64)
    acc = np.zeros(n1, dtype=np.int64)
    for c, e in zip(coeffs, qexps):
        if c:
            term = exp[(log[c] + k * (e % n1)) % n1]
            acc = _vadd(exp, log, zech, p, acc, term)
    nz = acc != 0
    ratio = np.zeros(n1, dtype=np.int64)
    ratio[nz] = exp[(log[acc[nz]] - k[nz]) % n1]
    counts = np.bincount(ratio, minlength=n1 + 1).astype(np.int64)
    if stop_at > 0 and counts.max() > stop_at:
        return counts, False
    return counts, True


def _rank_fp(cols, p, m):
    if p == 2:
        basis = {}
        r = 0
        for v in cols:
            while v:
                top = v.bit_length() - 1
                if top in basis:
                    v ^= basis[top]
                else:
                    basis[top] = v
                    r += 1
                    break
        return r
    rows = []
    for v in cols:
        d = []
        for _ in range(m):
            v, x = divmod(v, p)
            d.append(x)
        rows.append(d)
    r = 0
    for c in range(m):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


def fp_rank(cols, p, m):
    """Rank over F_p of the vectors with the given encodings (m digits each)."""
    return _rank_fp([int(c) for c in cols], p, m)


def binomial_nullities(exp, log, zech, p, m, base, img_s, img_sn, avals, bvals):
    """F_p-nullity of x + a x^{q^s} + b x^{q^{s+n}} for every (a, b) pair.

    ``base``, ``img_s`` and ``img_sn`` are the images of the F_p-basis t^j
    under x, x^{q^s} and x^{q^{s+n}}.
    """
    t = _Tab(exp, log, zech, p)
    base = [int(x) for x in base]
    img_s = [int(x) for x in img_s]
    img_sn = [int(x) for x in img_sn]
    out = np.zeros((len(avals), len(bvals)), dtype=np.int64)
    for i, a in enumerate(avals):
        a = int(a)
        col_a = [t.add(bj, t.mul(a, pj)) for bj, pj in zip(base, img_s)]
        for j, b in enumerate(bvals):
            b = int(b)
            cols = [t.add(c, t.mul(b, qj)) for c, qj in zip(col_a, img_sn)]
            out[i, j] = m - _rank_fp(cols, p, m)
    return out


def odd_curve_scan(exp, log, zech, p, sub, head, nxt, qs, eta, beta, collect):
    """Affine points of (S^qs - S)^2 = eta Z^2 + eta^qs Z^(2qs) - 2 beta eta^((qs+1)/2) Z^(qs+1).

    ``head``/``nxt`` chain the indices of ``sub`` by the value (S^qs - S)^2.
    Returns (affine, good, singular, good_S, good_Z).
    """
    t = _Tab(exp, log, zech, p)
    two = 2 % p
    c1 = eta
    c2 = t.pow(eta, qs)
    c3 = t.neg(t.mul(two, t.mul(beta, t.pow(eta, (qs + 1) // 2))))
    two_eta = t.mul(two, eta)
    affine = good = singular = 0
    gs, gz = [], []
    sub = [int(x) for x in sub]
    head = head.tolist() if hasattr(head, "tolist") else head
    nxt = nxt.tolist() if hasattr(nxt, "tolist") else nxt
    for z in sub:
        z2 = t.mul(z, z)
        zq = t.pow(z, qs)
        g = t.add(t.add(t.mul(c1, z2), t.mul(c2, t.mul(zq, zq))), t.mul(c3, t.mul(zq, z)))
        idx = head[g]
        if idx < 0:
            continue
        dg = t.add(t.mul(two_eta, z), t.mul(c3, zq))
        ez2 = t.mul(eta, z2)
        while idx >= 0:
            s = sub[idx]
            affine += 1
            u = t.add(t.pow(s, qs), t.neg(s))
            if u == 0 and dg == 0:
                singular += 1
            if z != 0 and ez2 != t.mul(s, s):
                good += 1
                if collect:
                    gs.append(s)
                    gz.append(z)
            idx = nxt[idx]
    return affine, good, singular, np.array(gs, dtype=np.int64), np.array(gz, dtype=np.int64)


def even_curve_scan(exp, log, zech, p, sub, qs, sh, beta, eps, collect):
    """Affine points of S^(2(qs-1)) Y^qs + S^(qs-1) (beta + Tr(Y)) + Y = 0, Y = Z^2 + Z + eps.

    Tr is the absolute trace of F_{qs}, i.e. sum of Y^(2^i) for i < sh.
    Returns (affine, good, singular, good_S, good_Z).
    """
    t = _Tab(exp, log, zech, p)
    sub = [int(x) for x in sub]
    zdata = []
    for z in sub:
        y = t.add(t.add(t.mul(z, z), z), eps)
        tr, yy = 0, y
        for _ in range(sh):
            tr ^= yy
            yy = t.mul(yy, yy)
        zdata.append((z, y, t.pow(y, qs), beta ^ tr))
    affine = good = singular = 0
    gs, gz = [], []
    for s in sub:
        s1 = t.pow(s, qs - 1)
        s2 = t.mul(s1, s1)
        s0 = t.pow(s, qs - 2)
        ds_z = s1 ^ 1
        for z, y, yq, bt in zdata:
            if t.mul(s2, yq) ^ t.mul(s1, bt) ^ y:
                continue
            affine += 1
            if ds_z == 0 and t.mul(s0, bt) == 0:
                singular += 1
            if s and y:
                good += 1
                if collect:
                    gs.append(s)
                    gz.append(z)
    return affine, good, singular, np.array(gs, dtype=np.int64), np.array(gz, dtype=np.int64)


def xi_norm_scan(exp, log, zech, p, e_s, e_n, e_sn):
    """N(delta(xi)) for every xi, delta(xi) = (xi^e_sn - xi^e_n) / (xi^e_n - xi^e_s).

    Entries are -1 for xi in F_{q^n} (xi^e_n == xi) and -2 for a zero denominator.
    """
    t = _Tab(exp, log, zech, p)
    n1 = t.n1
    out = np.empty(n1 + 1, dtype=np.int64)
    for xi in range(n1 + 1):
        xn = t.pow(xi, e_n)
        if xn == xi:
            out[xi] = -1
            continue
        den = t.add(xn, t.neg(t.pow(xi, e_s)))
        if den == 0:
            out[xi] = -2
            continue
        num = t.add(t.pow(xi, e_sn), t.neg(xn))
        if num == 0:
            out[xi] = 0
            continue
        d = t.exp[(t.log[num] - t.log[den]) % n1]
        out[xi] = t.pow(d, 1 + e_n)
    return out


def first_log_match(log, e, target):
    """Least encoding x != 0 with log(x) * e == target (mod order - 1), or -1."""
    n1 = len(log) - 1
    logs = np.asarray(log[1:], dtype=np.int64)
    hits = np.flatnonzero((logs * (e % n1)) % n1 == target % n1)
    return int(hits[0]) + 1 if hits.size else -1
