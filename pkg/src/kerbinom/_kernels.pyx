# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled enumeration kernels; see ``_kernels_py.py`` for the reference semantics."""

import numpy as np

ctypedef long long i64


cdef struct Tab:
    const i64* exp
    const i64* log
    const i64* zech
    i64 n1
    i64 p


cdef inline Tab make_tab(const i64[::1] exp, const i64[::1] log, const i64[::1] zech, i64 p):
    cdef Tab t
    t.exp = &exp[0]
    t.log = &log[0]
    t.zech = &zech[0]
    t.n1 = log.shape[0] - 1
    t.p = p
    return t


cdef inline i64 fmul(Tab* t, i64 a, i64 b) noexcept nogil:
    if a == 0 or b == 0:
        return 0
    return t.exp[(t.log[a] + t.log[b]) % t.n1]


cdef inline i64 fadd(Tab* t, i64 a, i64 b) noexcept nogil:
    cdef i64 la, d, z
    if t.p == 2:
        return a ^ b
    if a == 0:
        return b
    if b == 0:
        return a
    la = t.log[a]
    d = t.log[b] - la
    if d < 0:
        d += t.n1
    z = t.zech[d]
    if z < 0:
        return 0
    return t.exp[(la + z) % t.n1]


cdef inline i64 fneg(Tab* t, i64 a) noexcept nogil:
    if t.p == 2 or a == 0:
        return a
    return t.exp[(t.log[a] + t.n1 // 2) % t.n1]


cdef inline i64 fpow(Tab* t, i64 a, i64 e) noexcept nogil:
    # e >= 0
    if a == 0:
        return 1 if e == 0 else 0
    return t.exp[(t.log[a] * (e % t.n1)) % t.n1]


def ratio_counts(const i64[::1] exp, const i64[::1] log, const i64[::1] zech, i64 p,
                 coeffs, qexps, i64 stop_at):
    cdef Tab t = make_tab(exp, log, zech, p)
    cdef i64 n1 = t.n1
    cdef Py_ssize_t nt = 0, i
    cdef i64[::1] cl = np.zeros(max(len(coeffs), 1), dtype=np.int64)
    cdef i64[::1] ce = np.zeros(max(len(coeffs), 1), dtype=np.int64)
    for c, e in zip(coeffs, qexps):
        if c:
            cl[nt] = t.log[<i64>c]
            ce[nt] = (<i64>(e % n1))
            nt += 1
    counts_arr = np.zeros(n1 + 1, dtype=np.int64)
    cdef i64[::1] counts = counts_arr
    cdef i64 k, acc, term, r
    cdef bint complete = True
    with nogil:
        for k in range(n1):
            acc = 0
            for i in range(nt):
                term = t.exp[(cl[i] + k * ce[i]) % n1]
                acc = fadd(&t, acc, term)
            if acc == 0:
                r = 0
            else:
                r = t.log[acc] - k
                if r < 0:
                    r += n1
                r = t.exp[r]
            counts[r] += 1
            if stop_at > 0 and counts[r] > stop_at:
                complete = False
                break
    return counts_arr, complete


cdef i64 rank_fp(i64* cols, Py_ssize_t ncols, i64 p, Py_ssize_t m, i64* work, i64* basis) noexcept nogil:
    # work: ncols*m scratch digits; basis: scratch of size 64 for p == 2
    cdef Py_ssize_t i, j, c, r, piv
    cdef i64 v, top, f, inv, x
    if p == 2:
        for i in range(64):
            basis[i] = 0
        r = 0
        for i in range(ncols):
            v = cols[i]
            while v:
                top = 63
                while not (v >> top) & 1:
                    top -= 1
                if basis[top]:
                    v ^= basis[top]
                else:
                    basis[top] = v
                    r += 1
                    break
        return r
    for i in range(ncols):
        v = cols[i]
        for j in range(m):
            work[i * m + j] = v % p
            v = v // p
    r = 0
    for c in range(m):
        piv = -1
        for i in range(r, ncols):
            if work[i * m + c]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(m):
                x = work[r * m + j]
                work[r * m + j] = work[piv * m + j]
                work[piv * m + j] = x
        # inverse mod p by Fermat
        inv = 1
        x = work[r * m + c]
        f = p - 2
        while f:
            if f & 1:
                inv = inv * x % p
            x = x * x % p
            f >>= 1
        for j in range(m):
            work[r * m + j] = work[r * m + j] * inv % p
        for i in range(ncols):
            if i != r and work[i * m + c]:
                f = work[i * m + c]
                for j in range(m):
                    work[i * m + j] = (work[i * m + j] - f * work[r * m + j]) % p
                    if work[i * m + j] < 0:
                        work[i * m + j] += p
        r += 1
    return r


def fp_rank(cols, i64 p, Py_ssize_t m):
    cdef i64[::1] c = np.ascontiguousarray(cols, dtype=np.int64)
    cdef i64[::1] work = np.zeros(max(c.shape[0] * m, 1), dtype=np.int64)
    cdef i64[::1] basis = np.zeros(64, dtype=np.int64)
    if c.shape[0] == 0:
        return 0
    return rank_fp(&c[0], c.shape[0], p, m, &work[0], &basis[0])


def binomial_nullities(const i64[::1] exp, const i64[::1] log, const i64[::1] zech, i64 p,
                       Py_ssize_t m, base, img_s, img_sn, avals, bvals):
    cdef Tab t = make_tab(exp, log, zech, p)
    cdef i64[::1] bs = np.ascontiguousarray(base, dtype=np.int64)
    cdef i64[::1] ps = np.ascontiguousarray(img_s, dtype=np.int64)
    cdef i64[::1] qs = np.ascontiguousarray(img_sn, dtype=np.int64)
    cdef i64[::1] av = np.ascontiguousarray(avals, dtype=np.int64)
    cdef i64[::1] bv = np.ascontiguousarray(bvals, dtype=np.int64)
    out_arr = np.zeros((av.shape[0], bv.shape[0]), dtype=np.int64)
    cdef i64[:, ::1] out = out_arr
    cdef i64[::1] cola = np.zeros(m, dtype=np.int64)
    cdef i64[::1] cols = np.zeros(m, dtype=np.int64)
    cdef i64[::1] work = np.zeros(m * m, dtype=np.int64)
    cdef i64[::1] basis = np.zeros(64, dtype=np.int64)
    cdef Py_ssize_t i, j, k
    with nogil:
        for i in range(av.shape[0]):
            for k in range(m):
                cola[k] = fadd(&t, bs[k], fmul(&t, av[i], ps[k]))
            for j in range(bv.shape[0]):
                for k in range(m):
                    cols[k] = fadd(&t, cola[k], fmul(&t, bv[j], qs[k]))
                out[i, j] = m - rank_fp(&cols[0], m, p, m, &work[0], &basis[0])
    return out_arr


def odd_curve_scan(const i64[::1] exp, const i64[::1] log, const i64[::1] zech, i64 p,
                   sub, head, nxt, i64 qs, i64 eta, i64 beta, bint collect):
    cdef Tab t = make_tab(exp, log, zech, p)
    cdef i64[::1] sb = np.ascontiguousarray(sub, dtype=np.int64)
    cdef i64[::1] hd = np.ascontiguousarray(head, dtype=np.int64)
    cdef i64[::1] nx = np.ascontiguousarray(nxt, dtype=np.int64)
    cdef i64 two = 2 % p
    cdef i64 c1 = eta
    cdef i64 c2 = fpow(&t, eta, qs)
    cdef i64 c3 = fneg(&t, fmul(&t, two, fmul(&t, beta, fpow(&t, eta, (qs + 1) // 2))))
    cdef i64 two_eta = fmul(&t, two, eta)
    cdef i64 affine = 0, good = 0, singular = 0
    cdef Py_ssize_t zi, nsub = sb.shape[0], ng = 0
    cdef i64 z, z2, zq, g, idx, dg, ez2, s, u
    gs_arr = np.zeros(nsub * 4 + 16, dtype=np.int64)
    gz_arr = np.zeros(nsub * 4 + 16, dtype=np.int64)
    cdef i64[::1] gs = gs_arr
    cdef i64[::1] gz = gz_arr
    for zi in range(nsub):
        z = sb[zi]
        z2 = fmul(&t, z, z)
        zq = fpow(&t, z, qs)
        g = fadd(&t, fadd(&t, fmul(&t, c1, z2), fmul(&t, c2, fmul(&t, zq, zq))), fmul(&t, c3, fmul(&t, zq, z)))
        idx = hd[g]
        if idx < 0:
            continue
        dg = fadd(&t, fmul(&t, two_eta, z), fmul(&t, c3, zq))
        ez2 = fmul(&t, eta, z2)
        while idx >= 0:
            s = sb[idx]
            affine += 1
            u = fadd(&t, fpow(&t, s, qs), fneg(&t, s))
            if u == 0 and dg == 0:
                singular += 1
            if z != 0 and ez2 != fmul(&t, s, s):
                good += 1
                if collect:
                    if ng == gs.shape[0]:
                        gs_arr = np.concatenate([gs_arr, np.zeros_like(gs_arr)])
                        gz_arr = np.concatenate([gz_arr, np.zeros_like(gz_arr)])
                        gs = gs_arr
                        gz = gz_arr
                    gs[ng] = s
                    gz[ng] = z
                    ng += 1
            idx = nx[idx]
    return affine, good, singular, gs_arr[:ng].copy(), gz_arr[:ng].copy()


def even_curve_scan(const i64[::1] exp, const i64[::1] log, const i64[::1] zech, i64 p,
                    sub, i64 qs, i64 sh, i64 beta, i64 eps, bint collect):
    cdef Tab t = make_tab(exp, log, zech, p)
    cdef i64[::1] sb = np.ascontiguousarray(sub, dtype=np.int64)
    cdef Py_ssize_t nsub = sb.shape[0], zi, si, k, ng = 0
    cdef i64[::1] ys = np.zeros(nsub, dtype=np.int64)
    cdef i64[::1] yq = np.zeros(nsub, dtype=np.int64)
    cdef i64[::1] bt = np.zeros(nsub, dtype=np.int64)
    cdef i64 z, y, tr, yy, s, s0, s1, s2, ds_z
    cdef i64 affine = 0, good = 0, singular = 0
    for zi in range(nsub):
        z = sb[zi]
        y = fmul(&t, z, z) ^ z ^ eps
        tr = 0
        yy = y
        for k in range(sh):
            tr ^= yy
            yy = fmul(&t, yy, yy)
        ys[zi] = y
        yq[zi] = fpow(&t, y, qs)
        bt[zi] = beta ^ tr
    gs_arr = np.zeros(nsub * 4 + 16, dtype=np.int64)
    gz_arr = np.zeros(nsub * 4 + 16, dtype=np.int64)
    cdef i64[::1] gs = gs_arr
    cdef i64[::1] gz = gz_arr
    for si in range(nsub):
        s = sb[si]
        s1 = fpow(&t, s, qs - 1)
        s2 = fmul(&t, s1, s1)
        s0 = fpow(&t, s, qs - 2)
        ds_z = s1 ^ 1
        for zi in range(nsub):
            if fmul(&t, s2, yq[zi]) ^ fmul(&t, s1, bt[zi]) ^ ys[zi]:
                continue
            affine += 1
            if ds_z == 0 and fmul(&t, s0, bt[zi]) == 0:
                singular += 1
            if s != 0 and ys[zi] != 0:
                good += 1
                if collect:
                    if ng == gs.shape[0]:
                        gs_arr = np.concatenate([gs_arr, np.zeros_like(gs_arr)])
                        gz_arr = np.concatenate([gz_arr, np.zeros_like(gz_arr)])
                        gs = gs_arr
                        gz = gz_arr
                    gs[ng] = s
                    gz[ng] = sb[zi]
                    ng += 1
    return affine, good, singular, gs_arr[:ng].copy(), gz_arr[:ng].copy()


def xi_norm_scan(const i64[::1] exp, const i64[::1] log, const i64[::1] zech, i64 p,
                 i64 e_s, i64 e_n, i64 e_sn):
    cdef Tab t = make_tab(exp, log, zech, p)
    cdef i64 n1 = t.n1
    out_arr = np.empty(n1 + 1, dtype=np.int64)
    cdef i64[::1] out = out_arr
    cdef i64 xi, xn, den, num, d, r
    cdef i64 en = (1 + e_n) % n1
    with nogil:
        for xi in range(n1 + 1):
            xn = fpow(&t, xi, e_n)
            if xn == xi:
                out[xi] = -1
                continue
            den = fadd(&t, xn, fneg(&t, fpow(&t, xi, e_s)))
            if den == 0:
                out[xi] = -2
                continue
            num = fadd(&t, fpow(&t, xi, e_sn), fneg(&t, xn))
            if num == 0:
                out[xi] = 0
                continue
            r = t.log[num] - t.log[den]
            if r < 0:
                r += n1
            d = t.exp[r]
            out[xi] = fpow(&t, d, en)
    return out_arr


def first_log_match(const i64[::1] log, i64 e, i64 target):
    cdef i64 n1 = log.shape[0] - 1
    cdef i64 x, ee = e % n1, tg = target % n1
    if tg < 0:
        tg += n1
    for x in range(1, n1 + 1):
        if (log[x] * ee) % n1 == tg:
            return x
    return -1
