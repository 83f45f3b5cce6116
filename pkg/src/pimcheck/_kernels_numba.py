"""Numba-jitted kernels for exact arithmetic mod p.

Same contracts as _kernels_numpy: int64 arrays, entries reduced into [0, p),
delayed 64-bit accumulation with reduction scheduled so no product chain can
overflow.
"""

import numpy as np
from numba import njit

_I63 = (1 << 63) - 1


@njit(cache=True)
def _modinv(a, p):
    # extended Euclid; p prime and a nonzero mod p
    t, newt = 0, 1
    r, newr = p, a % p
    while newr != 0:
        q = r // newr
        t, newt = newt, t - q * newt
        r, newr = newr, r - q * newr
    return t % p


@njit(cache=True)
def matmul_mod(a, b, p):
    n = a.shape[0]
    k = a.shape[1]
    m = b.shape[1]
    out = np.zeros((n, m), dtype=np.int64)
    step = (p - 1) * (p - 1) + 1
    chunk = _I63 // step
    if chunk < 1:
        chunk = 1
    for i in range(n):
        acc = out[i]
        pending = 0
        for t in range(k):
            ait = a[i, t]
            if ait != 0:
                row = b[t]
                for j in range(m):
                    acc[j] += ait * row[j]
                pending += 1
                if pending >= chunk:
                    for j in range(m):
                        acc[j] %= p
                    pending = 0
        for j in range(m):
            acc[j] %= p
    return out


@njit(cache=True)
def rref_mod(a, p, limit):
    m = a % p
    nrows, ncols = m.shape
    pivots = np.empty(min(nrows, ncols), dtype=np.int64)
    r = 0
    for c in range(limit):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if m[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(ncols):
                tmp = m[r, j]
                m[r, j] = m[piv, j]
                m[piv, j] = tmp
        inv = _modinv(m[r, c], p)
        if inv != 1:
            for j in range(ncols):
                m[r, j] = (m[r, j] * inv) % p
        for i in range(nrows):
            if i != r and m[i, c] != 0:
                f = m[i, c]
                for j in range(ncols):
                    m[i, j] = (m[i, j] - f * m[r, j]) % p
        pivots[r] = c
        r += 1
    return m, r, pivots[:r].copy()


@njit(cache=True)
def charpoly_mod(a, p):
    h = a % p
    n = h.shape[0]
    for j in range(n - 2):
        piv = -1
        for i in range(j + 1, n):
            if h[i, j] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != j + 1:
            for t in range(n):
                tmp = h[j + 1, t]
                h[j + 1, t] = h[piv, t]
                h[piv, t] = tmp
            for t in range(n):
                tmp = h[t, j + 1]
                h[t, j + 1] = h[t, piv]
                h[t, piv] = tmp
        inv = _modinv(h[j + 1, j], p)
        for r in range(j + 2, n):
            f = (h[r, j] * inv) % p
            if f != 0:
                for t in range(n):
                    h[r, t] = (h[r, t] - f * h[j + 1, t]) % p
                for t in range(n):
                    h[t, j + 1] = (h[t, j + 1] + f * h[t, r]) % p
    polys = np.zeros((n + 1, n + 1), dtype=np.int64)
    polys[0, 0] = 1
    for k in range(1, n + 1):
        d = h[k - 1, k - 1] % p
        for t in range(k, 0, -1):
            polys[k, t] = polys[k - 1, t - 1]
        for t in range(k):
            polys[k, t] = (polys[k, t] - d * polys[k - 1, t]) % p
        prod = 1
        for m in range(1, k):
            prod = (prod * h[k - m, k - m - 1]) % p
            if prod == 0:
                break
            coef = (h[k - 1 - m, k - 1] * prod) % p
            if coef != 0:
                for t in range(k - m):
                    polys[k, t] = (polys[k, t] - coef * polys[k - 1 - m, t]) % p
    return polys[n] % p


@njit(cache=True)
def polymul_mod(u, v, p):
    nu = u.size
    nv = v.size
    if nu == 0 or nv == 0:
        return np.zeros(0, dtype=np.int64)
    out = np.zeros(nu + nv - 1, dtype=np.int64)
    step = (p - 1) * (p - 1) + 1
    chunk = _I63 // step
    if chunk < 1:
        chunk = 1
    pending = 0
    for i in range(nu):
        c = u[i]
        if c != 0:
            for j in range(nv):
                out[i + j] += c * v[j]
            pending += 1
            if pending >= chunk:
                for t in range(out.size):
                    out[t] %= p
                pending = 0
    for t in range(out.size):
        out[t] %= p
    return out


@njit(cache=True)
def polyrem_mod(u, f, p):
    df = f.size - 1
    r = u % p
    if r.size < f.size:
        out = np.zeros(df, dtype=np.int64)
        out[: r.size] = r
        return out
    for i in range(r.size - 1, df - 1, -1):
        c = r[i]
        if c != 0:
            for j in range(df):
                r[i - df + j] = (r[i - df + j] - c * f[j]) % p
            r[i] = 0
    return r[:df]


@njit(cache=True)
def reduce_rows_mod(basis, rowof, npiv, v, p):
    m = v.size
    w = v % p
    for c in range(m):
        if w[c] != 0:
            r = rowof[c]
            if r < 0:
                inv = _modinv(w[c], p)
                for j in range(m):
                    basis[npiv, j] = (w[j] * inv) % p
                return c
            wc = w[c]
            for j in range(c, m):
                w[j] = (w[j] - wc * basis[r, j]) % p
    return -1


@njit(cache=True)
def scan_idempotents(sc, p, limit):
    r = sc.shape[0]
    total = 1
    for _ in range(r):
        total *= p
    x = np.zeros(r, dtype=np.int64)
    sq = np.zeros(r, dtype=np.int64)
    count = 0
    for _ in range(total):
        for k in range(r):
            acc = 0
            for i in range(r):
                if x[i] != 0:
                    for j in range(r):
                        if x[j] != 0 and sc[i, j, k] != 0:
                            acc += x[i] * x[j] % p * sc[i, j, k]
            sq[k] = acc % p
        ok = True
        for k in range(r):
            if sq[k] != x[k]:
                ok = False
                break
        if ok:
            count += 1
            if count >= limit:
                return count
        # odometer increment
        i = 0
        while i < r:
            x[i] += 1
            if x[i] == p:
                x[i] = 0
                i += 1
            else:
                break
    return count
