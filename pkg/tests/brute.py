"""Independent brute-force oracles shared by the test suites.

Plain-python row reduction, exhaustive vector sweep for a minimal invariant
subspace, and recursion on sub/quotient pairs; deliberately free of the
library's own linear algebra so disagreements point at real bugs.
"""

import numpy as np

from pimcheck import permgrp
from pimcheck.gfmat import PrimeField
from pimcheck.modrep import permutation_module
from pimcheck.permgrp import GenSet


def rref_np(a, p):
    a = np.array(a, dtype=np.int64) % p
    r = 0
    for c in range(a.shape[1]):
        piv = next((i for i in range(r, a.shape[0]) if a[i, c] % p), None)
        if piv is None:
            continue
        a[[r, piv]] = a[[piv, r]]
        a[r] = (a[r] * pow(int(a[r, c]), p - 2, p)) % p
        for i in range(a.shape[0]):
            if i != r and a[i, c]:
                a[i] = (a[i] - a[i, c] * a[r]) % p
        r += 1
    return a[:r]


def spin_np(mats, p, v):
    basis = rref_np(v.reshape(1, -1), p)
    changed = True
    while changed:
        changed = False
        for m in mats:
            bigger = rref_np(np.vstack([basis, basis @ m % p]), p)
            if bigger.shape[0] != basis.shape[0]:
                basis, changed = bigger, True
    return basis


def minimal_submodule_np(mats, p):
    dim = mats[0].shape[0]
    best = None
    for code in range(1, p**dim):
        v = np.array([(code // p**i) % p for i in range(dim)], dtype=np.int64)
        basis = spin_np(mats, p, v)
        if best is None or basis.shape[0] < best.shape[0]:
            best = basis
        if best.shape[0] == 1:
            break
    return best


def reduce_mod_np(rows, sub, p):
    out = np.array(rows, dtype=np.int64) % p
    for r in sub:
        c = int(np.argmax(r != 0))
        out = (out - np.outer(out[:, c], r)) % p
    return out


def brute_factor_dims(mats, p):
    """Multiset of composition factor dimensions, by exhaustive search."""
    dim = mats[0].shape[0]
    if dim == 0:
        return []
    sub = minimal_submodule_np(mats, p)
    k = sub.shape[0]
    if k == dim:
        return [dim]
    piv = [int(np.argmax(r != 0)) for r in sub]
    free = [c for c in range(dim) if c not in piv]
    sub_mats = [(sub @ m % p)[:, piv] for m in mats]
    quo_mats = [reduce_mod_np(m[free], sub, p)[:, free] for m in mats]
    return sorted(brute_factor_dims(sub_mats, p) + brute_factor_dims(quo_mats, p))


def perm_gmodule(p, degree, cycles):
    gens = [permgrp.parse_cycles(t, degree) for t in cycles]
    return permutation_module(PrimeField(p), gens)


def regular_gmodule(p, degree, cycles):
    """Regular module of the group generated by the cycles (right action)."""
    gens = [permgrp.parse_cycles(t, degree) for t in cycles]
    gs = GenSet(degree, tuple(gens), "G")
    elements = permgrp.enumerate_elements(gs, limit=10000)
    index = {e.tobytes(): i for i, e in enumerate(elements)}
    images = []
    for g in gens:
        images.append(
            np.array(
                [index[permgrp.compose(e, g).tobytes()] for e in elements],
                dtype=np.int64,
            )
        )
    return permutation_module(PrimeField(p), images)
