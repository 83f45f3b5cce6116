"""Dense exact linear algebra and univariate polynomials over GF(p).

Matrices are immutable wrappers around int64 numpy arrays with entries in
[0, p).  Everything here is field arithmetic only; no group theory.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import backend
from .prng import XorShift


class FieldMismatchError(ValueError):
    """Operands live over different prime fields."""


class ShapeError(ValueError):
    """Operand shapes are incompatible."""


class SingularMatrixError(ValueError):
    """A matrix that needed inverting is singular."""


def _is_prime(n):
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


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError("field order %r is not prime" % (self.p,))

    def inv(self, a):
        a = int(a) % self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in GF(%d)" % self.p)
        return pow(a, self.p - 2, self.p)

    def __repr__(self):
        return "GF(%d)" % self.p


def _check_same_field(a, b):
    if a.field.p != b.field.p:
        raise FieldMismatchError("GF(%d) vs GF(%d)" % (a.field.p, b.field.p))


class GFMatrix:
    """Immutable dense matrix over a prime field."""

    __slots__ = ("field", "_a")

    def __init__(self, field, data, copy=True):
        self.field = field
        a = np.array(data, dtype=np.int64, copy=copy)
        if a.ndim != 2:
            raise ShapeError("matrix data must be 2-dimensional, got %d axes" % a.ndim)
        if a.size and (a.min() < 0 or a.max() >= field.p):
            a = a % field.p
        a.setflags(write=False)
        self._a = a

    @classmethod
    def zeros(cls, field, rows, cols):
        return cls(field, np.zeros((rows, cols), dtype=np.int64), copy=False)

    @classmethod
    def identity(cls, field, n):
        return cls(field, np.eye(n, dtype=np.int64), copy=False)

    @property
    def array(self):
        return self._a

    @property
    def rows(self):
        return self._a.shape[0]

    @property
    def cols(self):
        return self._a.shape[1]

    @property
    def shape(self):
        return self._a.shape

    def __eq__(self, other):
        if not isinstance(other, GFMatrix):
            return NotImplemented
        return self.field.p == other.field.p and np.array_equal(self._a, other._a)

    def __hash__(self):
        return hash((self.field.p, self._a.shape, self._a.tobytes()))

    def __repr__(self):
        return "GFMatrix(%r, %dx%d)" % (self.field, self.rows, self.cols)

    def __matmul__(self, other):
        _check_same_field(self, other)
        if self.cols != other.rows:
            raise ShapeError(
                "cannot multiply %dx%d by %dx%d over %r"
                % (self.rows, self.cols, other.rows, other.cols, self.field)
            )
        return GFMatrix(
            self.field, backend.matmul_mod(self._a, other._a, self.field.p), copy=False
        )

    def __add__(self, other):
        _check_same_field(self, other)
        if self.shape != other.shape:
            raise ShapeError("shape mismatch %r vs %r" % (self.shape, other.shape))
        return GFMatrix(self.field, (self._a + other._a) % self.field.p, copy=False)

    def __sub__(self, other):
        _check_same_field(self, other)
        if self.shape != other.shape:
            raise ShapeError("shape mismatch %r vs %r" % (self.shape, other.shape))
        return GFMatrix(self.field, (self._a - other._a) % self.field.p, copy=False)

    def scaled(self, c):
        return GFMatrix(self.field, (self._a * (int(c) % self.field.p)) % self.field.p, copy=False)

    def transpose(self):
        return GFMatrix(self.field, self._a.T.copy(), copy=False)

    def is_identity(self):
        return self.rows == self.cols and np.array_equal(
            self._a, np.eye(self.rows, dtype=np.int64)
        )

    def is_zero(self):
        return not self._a.any()

    def row(self, i):
        return self._a[i].copy()

    def inverse(self):
        if self.rows != self.cols:
            raise ShapeError("inverse of non-square %dx%d" % (self.rows, self.cols))
        res = rref(self)
        if res.rank != self.rows:
            raise SingularMatrixError(
                "rank %d < %d over %r" % (res.rank, self.rows, self.field)
            )
        return res.transform

    def pow(self, e):
        if self.rows != self.cols:
            raise ShapeError("power of non-square matrix")
        result = GFMatrix.identity(self.field, self.rows)
        base = self
        e = int(e)
        while e > 0:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result


@dataclass(frozen=True)
class RrefResult:
    reduced: GFMatrix
    rank: int
    pivots: tuple
    transform: GFMatrix  # transform @ input == reduced


def mat_mul(a, b):
    return a @ b


def rref(m):
    """Reduced row echelon form with the row transform that produces it."""
    p = m.field.p
    aug = np.hstack([m.array, np.eye(m.rows, dtype=np.int64)])
    red, rank, pivots = backend.rref_mod(aug, p, m.cols)
    return RrefResult(
        reduced=GFMatrix(m.field, red[:, : m.cols], copy=False),
        rank=rank,
        pivots=tuple(int(c) for c in pivots),
        transform=GFMatrix(m.field, red[:, m.cols :], copy=False),
    )


def echelon(m):
    """Nonzero RREF rows only: canonical basis of the row space."""
    red, rank, pivots = backend.rref_mod(m.array, m.field.p, m.cols)
    return GFMatrix(m.field, red[:rank], copy=False), tuple(int(c) for c in pivots)


def nullspace(m):
    """Canonical echelon basis of {v : m @ v^T == 0}, one row per basis vector."""
    p = m.field.p
    red, rank, pivots = backend.rref_mod(m.array, p, m.cols)
    free = [c for c in range(m.cols) if c not in set(int(x) for x in pivots)]
    basis = np.zeros((len(free), m.cols), dtype=np.int64)
    for k, c in enumerate(free):
        basis[k, c] = 1
        for i in range(rank):
            basis[k, pivots[i]] = (-red[i, c]) % p
    if len(free) > 1:
        basis, _, _ = backend.rref_mod(basis, p, m.cols)
    return GFMatrix(m.field, basis, copy=False)


def left_nullspace(m):
    return nullspace(m.transpose())


class GFPoly:
    """Polynomial over GF(p), coefficient array lowest-degree first."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs, copy=True):
        self.field = field
        c = np.array(coeffs, dtype=np.int64, copy=copy) % field.p
        n = c.size
        while n > 0 and c[n - 1] == 0:
            n -= 1
        c = c[:n].copy()
        c.setflags(write=False)
        self.coeffs = c

    @classmethod
    def x(cls, field):
        return cls(field, [0, 1])

    @classmethod
    def one(cls, field):
        return cls(field, [1])

    @property
    def degree(self):
        return self.coeffs.size - 1  # zero polynomial has degree -1

    def is_zero(self):
        return self.coeffs.size == 0

    def is_one(self):
        return self.coeffs.size == 1 and self.coeffs[0] == 1

    def __eq__(self, other):
        if not isinstance(other, GFPoly):
            return NotImplemented
        return self.field.p == other.field.p and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        return hash((self.field.p, self.coeffs.tobytes()))

    def __repr__(self):
        if self.is_zero():
            return "GFPoly(%r, 0)" % (self.field,)
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                if i == 0:
                    terms.append(str(int(c)))
                elif i == 1:
                    terms.append("%sx" % ("" if c == 1 else int(c)))
                else:
                    terms.append("%sx^%d" % ("" if c == 1 else int(c), i))
        return "GFPoly(%r, %s)" % (self.field, " + ".join(reversed(terms)))

    def __mul__(self, other):
        _check_same_field(self, other)
        return GFPoly(
            self.field,
            backend.polymul_mod(self.coeffs, other.coeffs, self.field.p),
            copy=False,
        )

    def __add__(self, other):
        _check_same_field(self, other)
        n = max(self.coeffs.size, other.coeffs.size)
        out = np.zeros(n, dtype=np.int64)
        out[: self.coeffs.size] = self.coeffs
        out[: other.coeffs.size] = (out[: other.coeffs.size] + other.coeffs) % self.field.p
        return GFPoly(self.field, out, copy=False)

    def __sub__(self, other):
        _check_same_field(self, other)
        n = max(self.coeffs.size, other.coeffs.size)
        out = np.zeros(n, dtype=np.int64)
        out[: self.coeffs.size] = self.coeffs
        out[: other.coeffs.size] = (out[: other.coeffs.size] - other.coeffs) % self.field.p
        return GFPoly(self.field, out, copy=False)

    def scaled(self, c):
        return GFPoly(self.field, (self.coeffs * (int(c) % self.field.p)), copy=False)

    def monic(self):
        if self.is_zero():
            raise ZeroDivisionError("monic of zero polynomial")
        lead = self.coeffs[-1]
        if lead == 1:
            return self
        return self.scaled(self.field.inv(lead))

    def derivative(self):
        if self.coeffs.size <= 1:
            return GFPoly(self.field, [])
        idx = np.arange(1, self.coeffs.size, dtype=np.int64)
        return GFPoly(self.field, (self.coeffs[1:] * idx) % self.field.p, copy=False)

    def shift_mul_x(self, k):
        out = np.zeros(self.coeffs.size + k, dtype=np.int64)
        out[k:] = self.coeffs
        return GFPoly(self.field, out, copy=False)


def poly_divmod(u, v):
    """Quotient and remainder of u by nonzero v."""
    _check_same_field(u, v)
    if v.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    p = u.field.p
    vm = v.monic()
    lead_inv = u.field.inv(v.coeffs[-1])
    if u.degree < v.degree:
        return GFPoly(u.field, []), u
    rem = backend.polyrem_mod(u.coeffs, vm.coeffs, p)
    # reconstruct the quotient from u = q*v + r by synthetic division
    q = np.zeros(u.degree - v.degree + 1, dtype=np.int64)
    work = u.coeffs.copy()
    dv = vm.degree
    for i in range(u.degree, dv - 1, -1):
        c = work[i] % p
        if c:
            q[i - dv] = c
            work[i - dv : i] = (work[i - dv : i] - c * vm.coeffs[:dv]) % p
            work[i] = 0
    q = (q * lead_inv) % p
    return GFPoly(u.field, q, copy=False), GFPoly(u.field, rem, copy=False)


def poly_mod(u, v):
    vm = v.monic()
    return GFPoly(u.field, backend.polyrem_mod(u.coeffs, vm.coeffs, u.field.p), copy=False)


def poly_gcd(a, b):
    _check_same_field(a, b)
    while not b.is_zero():
        a, b = b, poly_mod(a, b)
    if a.is_zero():
        return a
    return a.monic()


def poly_pow_mod(base, e, modulus):
    """base^e reduced modulo `modulus`."""
    result = GFPoly.one(base.field)
    b = poly_mod(base, modulus)
    e = int(e)
    while e > 0:
        if e & 1:
            result = poly_mod(result * b, modulus)
        b = poly_mod(b * b, modulus)
        e >>= 1
    return result


def char_poly(m):
    """Characteristic polynomial det(xI - m), monic, lowest-first coefficients."""
    if m.rows != m.cols:
        raise ShapeError("char_poly of non-square %dx%d" % (m.rows, m.cols))
    if m.rows == 0:
        return GFPoly.one(m.field)
    return GFPoly(m.field, backend.charpoly_mod(m.array, m.field.p), copy=False)


def poly_eval_matrix(f, m):
    """f(m) by Paterson-Stockmeyer block evaluation."""
    field = m.field
    n = m.rows
    c = f.coeffs
    if c.size == 0:
        return GFMatrix.zeros(field, n, n)
    if c.size == 1:
        return GFMatrix.identity(field, n).scaled(int(c[0]))
    d = c.size - 1
    s = max(1, min(12, int(math.isqrt(d)) + 1))
    powers = [GFMatrix.identity(field, n)]
    for _ in range(s):
        powers.append(powers[-1] @ m)
    ms = powers[s]
    nblocks = (d + s) // s
    result = None
    for bi in range(nblocks - 1, -1, -1):
        block = GFMatrix.zeros(field, n, n)
        for j in range(s):
            idx = bi * s + j
            if idx <= d and c[idx]:
                block = block + powers[j].scaled(int(c[idx]))
        if result is None:
            result = block
        else:
            result = result @ ms + block
    return result


def _pth_root(f):
    """For f with zero derivative over GF(p), return g with g(x)^p == f(x)."""
    p = f.field.p
    return GFPoly(f.field, f.coeffs[::p].copy(), copy=False)


def _squarefree_parts(f):
    """List of (squarefree factor, multiplicity) with product f (f monic)."""
    out = []

    def recurse(g, e):
        d = g.derivative()
        if d.is_zero():
            if g.degree <= 0:
                return
            recurse(_pth_root(g), e * g.field.p)
            return
        c = poly_gcd(g, d)
        w, r = poly_divmod(g, c)
        assert r.is_zero()
        i = 1
        while w.degree > 0:
            y = poly_gcd(w, c)
            z, r = poly_divmod(w, y)
            assert r.is_zero()
            if z.degree > 0:
                out.append((z, i * e))
            w = y
            c, r = poly_divmod(c, y)
            assert r.is_zero()
            i += 1
        if c.degree > 0:
            recurse(_pth_root(c), e * g.field.p)

    recurse(f.monic(), 1)
    return out


def _distinct_degree(f, rng):
    """Split squarefree monic f into (product, degree) buckets."""
    field = f.field
    p = field.p
    out = []
    h = GFPoly.x(field)
    g = f
    k = 0
    while g.degree > 0 and 2 * (k + 1) <= g.degree:
        k += 1
        h = poly_pow_mod(h, p, g)
        d = poly_gcd(g, h - GFPoly.x(field))
        if d.degree > 0:
            out.append((d, k))
            g, r = poly_divmod(g, d)
            assert r.is_zero()
            h = poly_mod(h, g)
    if g.degree > 0:
        out.append((g, g.degree))
    return out


def _random_poly(field, deg_bound, rng):
    coeffs = [rng.randrange(field.p) for _ in range(deg_bound)]
    return GFPoly(field, coeffs)


def _equal_degree_split(f, k, rng):
    """One nontrivial monic factor of f (product of degree-k irreducibles, >1 of them)."""
    field = f.field
    p = field.p
    n = f.degree
    while True:
        r = _random_poly(field, n, rng)
        if r.degree < 1:
            continue
        if p == 2:
            s = GFPoly(field, [])
            t = poly_mod(r, f)
            for _ in range(k):
                s = poly_mod(s + t, f)
                t = poly_mod(t * t, f)
            g = poly_gcd(f, s)
        else:
            e = (p**k - 1) // 2
            s = poly_pow_mod(r, e, f)
            g = poly_gcd(f, s - GFPoly.one(field))
        if 0 < g.degree < n:
            return g


def _equal_degree_factor(f, k, rng, sink):
    if f.degree == k:
        sink.append(f.monic())
        return
    g = _equal_degree_split(f, k, rng)
    h, r = poly_divmod(f, g)
    assert r.is_zero()
    _equal_degree_factor(g, k, rng, sink)
    _equal_degree_factor(h, k, rng, sink)


def poly_factor(f, rng=None):
    """Full factorization over GF(p): list of (irreducible monic factor, multiplicity).

    Deterministic for a fixed rng seed; factors sorted by (degree, coefficients).
    The product of factor^multiplicity times the leading coefficient equals f.
    """
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if rng is None:
        rng = XorShift(1, "poly_factor")
    field = f.field
    fm = f.monic()
    found = {}
    if fm.degree == 0:
        return []
    # pull out powers of x
    nz = int(np.nonzero(fm.coeffs)[0][0])
    if nz > 0:
        found[GFPoly.x(field)] = nz
        fm = GFPoly(field, fm.coeffs[nz:], copy=False)
    if fm.degree > 0:
        for sqf, mult in _squarefree_parts(fm):
            for prod, k in _distinct_degree(sqf, rng):
                pieces = []
                _equal_degree_factor(prod, k, rng, pieces)
                for piece in pieces:
                    found[piece] = found.get(piece, 0) + mult
    items = sorted(found.items(), key=lambda t: (t[0].degree, tuple(int(c) for c in t[0].coeffs)))
    return items
