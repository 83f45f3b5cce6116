"""Finite-field linear algebra against independent arithmetic oracles."""

import numpy as np
import pytest

from pimcheck import gfmat
from pimcheck.gfmat import (
    GFMatrix,
    GFPoly,
    PrimeField,
    SingularMatrixError,
    char_poly,
    left_nullspace,
    nullspace,
    poly_eval_matrix,
    poly_factor,
    rref,
)
from pimcheck.prng import XorShift

PRIMES = [2, 3, 5, 7, 11]


def random_matrix(field, rows, cols, rng):
    data = [[rng.randrange(field.p) for _ in range(cols)] for _ in range(rows)]
    return GFMatrix(field, data)


def test_prime_field_rejects_composites():
    for bad in [0, 1, 4, 6, 9, 15]:
        with pytest.raises(ValueError):
            PrimeField(bad)


def test_field_inverse_table():
    for p in PRIMES:
        f = PrimeField(p)
        for a in range(1, p):
            assert (a * f.inv(a)) % p == 1
    with pytest.raises(ZeroDivisionError):
        PrimeField(7).inv(0)


@pytest.mark.parametrize("p", PRIMES)
def test_rank_nullity_random(p):
    """rank(M) + dim null(M) == cols, and M really kills its nullspace."""
    f = PrimeField(p)
    rng = XorShift(7, "rank-nullity-%d" % p)
    for rows, cols in [(1, 1), (3, 5), (5, 3), (6, 6), (8, 2)]:
        m = random_matrix(f, rows, cols, rng)
        ns = nullspace(m)
        assert rref(m).rank + ns.rows == cols
        if ns.rows:
            assert (m @ ns.transpose()).is_zero()
        lns = left_nullspace(m)
        if lns.rows:
            assert (lns @ m).is_zero()


def test_rref_is_idempotent_and_certified():
    f = PrimeField(5)
    rng = XorShift(1, "rref")
    for _ in range(20):
        m = random_matrix(f, 4, 6, rng)
        res = rref(m)
        assert res.transform @ m == res.reduced
        again = rref(res.reduced)
        assert again.reduced == res.reduced
        assert again.pivots == res.pivots


def test_inverse_round_trip_and_singular():
    f = PrimeField(7)
    rng = XorShift(3, "inverse")
    found = 0
    while found < 10:
        m = random_matrix(f, 5, 5, rng)
        try:
            inv = m.inverse()
        except SingularMatrixError:
            continue
        assert (inv @ m).is_identity()
        assert (m @ inv).is_identity()
        found += 1
    singular = GFMatrix(f, [[1, 2], [2, 4]])
    with pytest.raises(SingularMatrixError):
        singular.inverse()


@pytest.mark.parametrize("p", [2, 3, 7])
def test_cayley_hamilton(p):
    """Every square matrix is killed by its own characteristic polynomial."""
    f = PrimeField(p)
    rng = XorShift(11, "cayley-%d" % p)
    for n in [1, 2, 3, 5, 7]:
        m = random_matrix(f, n, n, rng)
        cp = char_poly(m)
        assert cp.degree == n
        assert int(cp.coeffs[-1]) == 1
        assert poly_eval_matrix(cp, m).is_zero()


def test_char_poly_of_companion_matrix():
    """The companion matrix of f has characteristic polynomial f."""
    f = PrimeField(5)
    coeffs = [2, 0, 3, 1, 1]  # x^4 + x^3 + 3x^2 + 2, monic
    n = len(coeffs) - 1
    comp = np.zeros((n, n), dtype=np.int64)
    for i in range(n - 1):
        comp[i + 1, i] = 1
    comp[:, n - 1] = [(-c) % 5 for c in coeffs[:n]]
    assert char_poly(GFMatrix(f, comp)) == GFPoly(f, coeffs)


def test_poly_divmod_round_trip():
    f = PrimeField(3)
    rng = XorShift(5, "divmod")
    for _ in range(25):
        u = GFPoly(f, [rng.randrange(3) for _ in range(rng.randrange(8) + 1)])
        v = GFPoly(f, [rng.randrange(3) for _ in range(rng.randrange(5) + 1)])
        if v.is_zero():
            continue
        q, r = gfmat.poly_divmod(u, v)
        assert q * v + r == u
        assert r.degree < v.degree


@pytest.mark.parametrize("p", [2, 3, 5])
def test_poly_factor_round_trip(p):
    """Factors are monic, multiply back to the input, and resist splitting."""
    f = PrimeField(p)
    rng = XorShift(9, "factor-%d" % p)
    for _ in range(10):
        coeffs = [rng.randrange(p) for _ in range(7)] + [1]
        poly = GFPoly(f, coeffs)
        factors = poly_factor(poly, rng=XorShift(1, "inner"))
        product = GFPoly.one(f)
        for fac, mult in factors:
            assert int(fac.coeffs[-1]) == 1
            for _ in range(mult):
                product = product * fac
        assert product == poly
        for fac, _ in factors:
            if fac.degree > 1:
                refactored = poly_factor(fac, rng=XorShift(2, "again"))
                assert len(refactored) == 1 and refactored[0][1] == 1


def test_factor_x23_plus_1_over_gf2():
    """x^23 + 1 over GF(2) splits as (x+1) times two degree-11 irreducibles."""
    f = PrimeField(2)
    poly = GFPoly(f, [1] + [0] * 22 + [1])
    degrees = sorted(
        fac.degree for fac, mult in poly_factor(poly) for _ in range(mult)
    )
    assert degrees == [1, 11, 11]


def test_matrix_shape_and_field_mismatch_errors():
    f2, f3 = PrimeField(2), PrimeField(3)
    a = GFMatrix(f2, [[1, 0], [0, 1]])
    b = GFMatrix(f3, [[1, 0], [0, 1]])
    with pytest.raises(gfmat.FieldMismatchError):
        a @ b
    with pytest.raises(gfmat.ShapeError):
        a @ GFMatrix(f2, [[1, 0]])
    with pytest.raises(gfmat.ShapeError):
        GFMatrix(f2, [1, 0])
