"""Pure numpy kernels for exact arithmetic mod p.

Every function returns plain int64 arrays with entries already reduced into
[0, p).  Matrix products ride on BLAS through float64 whenever the exact
integer range allows it (k * (p-1)^2 < 2^53), otherwise on chunked int64
accumulation, so results are exact in all cases.
"""

import numpy as np

_F53 = 1 << 53
_I63 = (1 << 63) - 1


def _modinv(a, p):
    return pow(int(a), p - 2, p)


def matmul_mod(a, b, p):
    """Exact (a @ b) % p for int64 matrices with entries in [0, p)."""
    k = a.shape[1]
    if k == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    bound = k * (p - 1) * (p - 1)
    if bound < _F53:
        c = np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64)
        return c % p
    if bound < _I63:
        return (a @ b) % p
    # chunk the inner dimension so int64 accumulation cannot overflow
    chunk = max(1, _I63 // ((p - 1) * (p - 1) + 1))
    acc = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for s in range(0, k, chunk):
        acc = (acc + a[:, s : s + chunk] @ b[s : s + chunk, :]) % p
    return acc


def rref_mod(a, p, limit):
    """Reduced row echelon form of a copy of `a` over GF(p).

    Pivots are only sought in columns < limit; trailing columns are carried
    along (so [m | I] with limit = m.cols yields the row transform).
    Returns (reduced, rank, pivots); pivot columns are strictly increasing.
    """
    m = a % p
    nrows, ncols = m.shape
    pivots = []
    r = 0
    for c in range(limit):
        if r == nrows:
            break
        col = m[r:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            m[[r, i]] = m[[i, r]]
        inv = _modinv(m[r, c], p)
        m[r] = (m[r] * inv) % p
        rest = np.nonzero(m[:, c])[0]
        rest = rest[rest != r]
        if rest.size:
            m[rest] = (m[rest] - np.outer(m[rest, c], m[r])) % p
        pivots.append(c)
        r += 1
    return m, r, np.array(pivots, dtype=np.int64)


def charpoly_mod(a, p):
    """Characteristic polynomial of `a` over GF(p), coefficients lowest first.

    Hessenberg reduction by similarity, then the column expansion recurrence
    on the Hessenberg form.  Monic of degree n.
    """
    h = a % p
    n = h.shape[0]
    for j in range(n - 2):
        col = h[j + 1 :, j]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        i = j + 1 + nz[0]
        if i != j + 1:
            h[[j + 1, i]] = h[[i, j + 1]]
            h[:, [j + 1, i]] = h[:, [i, j + 1]]
        inv = _modinv(h[j + 1, j], p)
        for r in range(j + 2, n):
            f = (h[r, j] * inv) % p
            if f:
                h[r] = (h[r] - f * h[j + 1]) % p
                h[:, j + 1] = (h[:, j + 1] + f * h[:, r]) % p
    # polys[k] holds the charpoly of the leading k x k block
    polys = np.zeros((n + 1, n + 1), dtype=np.int64)
    polys[0, 0] = 1
    for k in range(1, n + 1):
        d = h[k - 1, k - 1] % p
        polys[k, 1 : k + 1] = polys[k - 1, :k]
        polys[k, :k] = (polys[k, :k] - d * polys[k - 1, :k]) % p
        polys[k, k] %= p
        prod = 1
        for m in range(1, k):
            prod = (prod * h[k - m, k - m - 1]) % p
            if prod == 0:
                break
            coef = (h[k - 1 - m, k - 1] * prod) % p
            if coef:
                polys[k, : k - m] = (polys[k, : k - m] - coef * polys[k - 1 - m, : k - m]) % p
    return polys[n] % p


def polymul_mod(u, v, p):
    """Product of two coefficient arrays (lowest first) over GF(p)."""
    if u.size == 0 or v.size == 0:
        return np.zeros(0, dtype=np.int64)
    bound = min(u.size, v.size) * (p - 1) * (p - 1)
    if bound < _I63:
        return np.convolve(u, v) % p
    out = np.zeros(u.size + v.size - 1, dtype=np.int64)
    for i in range(u.size):
        if u[i]:
            out[i : i + v.size] = (out[i : i + v.size] + u[i] * v) % p
    return out


def polyrem_mod(u, f, p):
    """Remainder of u modulo monic f over GF(p); result has size deg(f)."""
    df = f.size - 1
    r = u % p
    if r.size < f.size:
        out = np.zeros(df, dtype=np.int64)
        out[: r.size] = r
        return out
    r = r.copy()
    for i in range(r.size - 1, df - 1, -1):
        c = r[i]
        if c:
            r[i - df : i] = (r[i - df : i] - c * f[:df]) % p
            r[i] = 0
    return r[:df]


def reduce_rows_mod(basis, rowof, npiv, v, p):
    """Reduce v against an echelon basis; insert if independent.

    basis is a preallocated (cap, m) array whose first npiv rows each have a
    leading 1 at a distinct column recorded in rowof (column -> row index,
    -1 when free).  Returns the new pivot column if v was independent (the
    normalized vector is written to basis[npiv]), else -1.
    """
    w = v % p
    nz = np.nonzero(w)[0]
    while nz.size:
        c = nz[0]
        r = rowof[c]
        if r < 0:
            inv = _modinv(w[c], p)
            basis[npiv] = (w * inv) % p
            return int(c)
        w = (w - w[c] * basis[r]) % p
        nz = np.nonzero(w)[0]
    return -1


def scan_idempotents(sc, p, limit):
    """Count solutions of x*x == x in the algebra with structure constants sc.

    sc[i, j, k] gives the coefficient of basis element k in e_i * e_j.  All
    p^r coordinate vectors are enumerated (caller guards the size); counting
    stops early once `limit` idempotents have been seen.
    """
    r = sc.shape[0]
    total = p**r
    scm = sc.reshape(r * r, r) % p
    count = 0
    batch = 4096
    start = 0
    while start < total:
        m = min(batch, total - start)
        idx = np.arange(start, start + m, dtype=np.int64)
        x = np.empty((m, r), dtype=np.int64)
        rem = idx
        for i in range(r):
            x[:, i] = rem % p
            rem = rem // p
        outer = (x[:, :, None] * x[:, None, :]).reshape(m, r * r) % p
        sq = matmul_mod(outer, scm, p)
        count += int(np.sum(np.all(sq == x, axis=1)))
        if count >= limit:
            return count
        start += m
    return count
