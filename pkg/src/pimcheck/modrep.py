"""Modules over group algebras k[G], k = GF(p): chopping, iso, hom spaces.

Vectors are rows and act on the right: g sends v to v @ rho(g), so
rho(g)@rho(h) represents "g then h", matching permgrp.compose.  Permutation
modules keep the point images of the generators and act by column
permutation instead of materializing 0/1 matrices.

Composition factors are tracked as subquotients W/W' of the root module,
with both W and W' held as reduced-row-echelon bases of the root space, so
every factor can later be acted on by arbitrary root actions (restriction
to a subgroup needs this).

Irreducibility uses the multiplicity-free Norton certificate: for a random
algebra element t and an irreducible factor f of its characteristic
polynomial with nullity(f(t)) == deg f, the module is irreducible as soon
as one kernel vector spins to the whole module and one transposed-kernel
vector spins to the whole transposed module.  Kernel vectors that spin to
proper subspaces prove reducibility at any nullity; certificates are only
claimed in the multiplicity-free case, which is the regime where the
underlying theorem holds.
"""

from __future__ import annotations

import numpy as np

from . import backend
from .gfmat import (
    GFMatrix,
    GFPoly,
    PrimeField,
    ShapeError,
    char_poly,
    left_nullspace,
    nullspace,
    poly_eval_matrix,
    poly_factor,
)
from .permgrp import inverse as perm_inverse
from .prng import XorShift


class ModuleError(ValueError):
    pass


class MeataxeBudgetError(ModuleError):
    """Random-element budget ran out without a certificate; inconclusive."""


class HomSizeError(ModuleError):
    """A dense hom-space system would be too large to solve."""


SEARCH_SPIN_CAP = 16
MEATAXE_BUDGET = 200
ISO_CANDIDATE_CAP = 4096
DENSE_HOM_LIMIT = 4096


class GModule:
    """A k[G]-module given by generator actions on rows.

    Exactly one of `mats` (dense int64 arrays) and `images` (generator point
    images; the module is then the permutation module on those points) is
    usually supplied; `images` modules materialize matrices on demand.
    """

    def __init__(self, field, dim, mats=None, images=None):
        self.field = field
        self.dim = dim
        if (mats is None) == (images is None):
            raise ModuleError("give either dense matrices or point images")
        if images is not None:
            self.images = tuple(np.asarray(a, dtype=np.int64) for a in images)
            for a in self.images:
                if a.size != dim:
                    raise ShapeError("image array degree %d, dim %d" % (a.size, dim))
            self._inv_images = tuple(perm_inverse(a) for a in self.images)
            self.mats = None
        else:
            self.images = None
            self.mats = tuple(np.asarray(m, dtype=np.int64) % field.p for m in mats)
            for m in self.mats:
                if m.shape != (dim, dim):
                    raise ShapeError("matrix shape %r, dim %d" % (m.shape, dim))

    @property
    def n_gens(self):
        return len(self.images if self.mats is None else self.mats)

    def act(self, rows, k):
        """rows @ rho(g_k)."""
        if self.images is not None:
            return rows[:, self._inv_images[k]]
        return backend.matmul_mod(rows, self.mats[k], self.field.p)

    def act_by(self, rows, action):
        """rows @ rho(x) for an explicit root action ("perm"/"mat", value)."""
        kind, value = action
        if kind == "perm":
            return rows[:, perm_inverse(value)]
        return backend.matmul_mod(rows, value, self.field.p)

    def mat(self, k):
        if self.mats is not None:
            return self.mats[k]
        m = np.zeros((self.dim, self.dim), dtype=np.int64)
        m[np.arange(self.dim), self.images[k]] = 1
        return m

    def dense_mats(self):
        return [self.mat(k) for k in range(self.n_gens)]


def permutation_module(field, gen_images):
    """The module k^points with G permuting coordinates."""
    gen_images = tuple(np.asarray(a, dtype=np.int64) for a in gen_images)
    if not gen_images:
        raise ModuleError("at least one generator image is required")
    return GModule(field, int(gen_images[0].size), images=gen_images)


def induced_permutation_module(act, p):
    """k[G/H] from a coset action: G permutes the coset points."""
    return permutation_module(PrimeField(p), act.gen_images)


def trivial_module(field, n_gens):
    one = np.ones((1, 1), dtype=np.int64)
    return GModule(field, 1, mats=[one.copy() for _ in range(n_gens)])


def _rref_rows(rows, p):
    rows = np.asarray(rows, dtype=np.int64) % p
    if rows.size == 0:
        return rows.reshape(0, rows.shape[1] if rows.ndim == 2 else 0)
    red, rank, _ = backend.rref_mod(rows, p, rows.shape[1])
    return red[:rank]


def _pivots(rows):
    if rows.shape[0] == 0:
        return np.zeros(0, dtype=np.int64)
    return np.argmax(rows != 0, axis=1)


class Subquotient:
    """A section W/W' of a root module, with both spaces in root coordinates.

    rows_sub and rows_quo are RREF bases of W and W'; the factor basis is
    the set of rows of W whose pivots are not pivots of W', which are
    already reduced modulo W' because the pivot set of W' is contained in
    the pivot set of W.
    """

    def __init__(self, root, rows_sub, rows_quo):
        self.root = root
        p = root.field.p
        self.rows_sub = np.asarray(rows_sub, dtype=np.int64) % p
        self.rows_quo = np.asarray(rows_quo, dtype=np.int64) % p
        quo_piv = set(int(c) for c in _pivots(self.rows_quo))
        sub_piv = [int(c) for c in _pivots(self.rows_sub)]
        if not quo_piv <= set(sub_piv):
            raise ModuleError("quotient space is not contained in the subspace")
        keep = [i for i, c in enumerate(sub_piv) if c not in quo_piv]
        self.c_rows = self.rows_sub[keep]
        self.c_pivots = np.array([sub_piv[i] for i in keep], dtype=np.int64)
        self.quo_pivots = np.array(sorted(quo_piv), dtype=np.int64)
        self.dim = len(keep)

    def factor_matrix(self, action):
        """Matrix of a root action on the factor basis."""
        p = self.root.field.p
        y = self.root.act_by(self.c_rows, action)
        if self.rows_quo.shape[0]:
            coeffs = y[:, self.quo_pivots]
            y = (y - backend.matmul_mod(coeffs, self.rows_quo, p)) % p
        return np.ascontiguousarray(y[:, self.c_pivots])

    def factor_module(self):
        root = self.root
        acts = (
            [("perm", img) for img in root.images]
            if root.images is not None
            else [("mat", m) for m in root.mats]
        )
        mats = [self.factor_matrix(a) for a in acts]
        return GModule(root.field, self.dim, mats=mats)

    def lift(self, coord_rows):
        """Root-coordinate RREF basis of the preimage of a coordinate subspace."""
        p = self.root.field.p
        up = backend.matmul_mod(np.asarray(coord_rows, dtype=np.int64) % p, self.c_rows, p)
        if self.rows_quo.shape[0]:
            up = np.vstack([self.rows_quo, up])
        return _rref_rows(up, p)

    @property
    def parent(self):
        return self.root

    @property
    def sub_basis(self):
        return GFMatrix(self.root.field, self.rows_sub, copy=False)

    @property
    def quot_of(self):
        if self.rows_quo.shape[0] == 0:
            return None
        return GFMatrix(self.root.field, self.rows_quo, copy=False)


def full_subquotient(root):
    eye = np.eye(root.dim, dtype=np.int64)
    empty = np.zeros((0, root.dim), dtype=np.int64)
    return Subquotient(root, eye, empty)


def spin(module, seed_rows):
    """Smallest invariant subspace containing the seed rows, as a subquotient.

    seed_rows may be a GFMatrix or an int array of rows of length module.dim;
    the result basis is in canonical reduced echelon form.
    """
    if isinstance(seed_rows, GFMatrix):
        seed_rows = seed_rows.array
    seed_rows = np.asarray(seed_rows, dtype=np.int64)
    if seed_rows.ndim == 1:
        seed_rows = seed_rows.reshape(1, -1)
    if seed_rows.shape[1] != module.dim:
        raise ShapeError(
            "seed rows have length %d, module dim %d" % (seed_rows.shape[1], module.dim)
        )
    p = module.field.p
    _, rows = _spin_raw(module.dense_mats(), p, seed_rows)
    empty = np.zeros((0, module.dim), dtype=np.int64)
    return Subquotient(module, _rref_rows(rows, p), empty)


def _spin_raw(mats, p, seed_rows, transpose=False):
    """Smallest subspace containing seed_rows closed under all actions.

    Returns (dim, echelon rows).  With transpose=True the transposed
    matrices act, which computes spans in the transposed module.
    """
    m = mats[0].shape[0] if mats else seed_rows.shape[1]
    n = seed_rows.shape[1]
    basis = np.zeros((n, n), dtype=np.int64)
    rowof = np.full(n, -1, dtype=np.int64)
    npiv = 0
    frontier = []
    acts = [np.ascontiguousarray(a.T) if transpose else a for a in mats]
    for v in np.asarray(seed_rows, dtype=np.int64) % p:
        c = backend.reduce_rows_mod(basis, rowof, npiv, v.copy(), p)
        if c >= 0:
            rowof[c] = npiv
            frontier.append(basis[npiv].copy())
            npiv += 1
    while frontier and npiv < n:
        block = np.array(frontier, dtype=np.int64)
        frontier = []
        for a in acts:
            ys = backend.matmul_mod(block, a, p)
            for v in ys:
                c = backend.reduce_rows_mod(basis, rowof, npiv, v.copy(), p)
                if c >= 0:
                    rowof[c] = npiv
                    frontier.append(basis[npiv].copy())
                    npiv += 1
                    if npiv == n:
                        break
            if npiv == n:
                break
    return npiv, basis[:npiv]


def _word_spec(rng, n_gens):
    """Three coefficient-weighted words of length 1..6 in the generators."""
    spec = []
    for _ in range(3):
        length = 1 + rng.randrange(6)
        idxs = tuple(rng.randrange(n_gens) for _ in range(length))
        spec.append(idxs)
    return tuple(spec)


def _eval_words(mats, p, spec, coeffs):
    n = mats[0].shape[0]
    acc = np.zeros((n, n), dtype=np.int64)
    for idxs, c in zip(spec, coeffs):
        if c == 0:
            continue
        w = mats[idxs[0]]
        for k in idxs[1:]:
            w = backend.matmul_mod(w, mats[k], p)
        acc = (acc + c * w) % p
    return acc


def _analyze(mats, p, rng, budget=MEATAXE_BUDGET):
    """Meataxe core on dense matrices.

    Returns ("irr", certificate) with a sound Norton certificate, or
    ("split", rows) with rows spanning a proper nonzero invariant subspace in
    module coordinates.  Raises MeataxeBudgetError after `budget` random
    elements.
    """
    m = mats[0].shape[0]
    field = PrimeField(p)
    if m == 1:
        return "irr", {"kind": "dimension-one"}
    for _ in range(budget):
        spec = _word_spec(rng, len(mats))
        coeffs = tuple(rng.randrange(p) for _ in spec)
        theta = _eval_words(mats, p, spec, coeffs)
        tm = GFMatrix(field, theta, copy=False)
        factors = poly_factor(char_poly(tm), rng=XorShift(1, "chop poly"))
        for f, _mult in factors:
            d = f.degree
            if d == m:
                fm = GFMatrix.zeros(field, m, m)
            else:
                fm = poly_eval_matrix(f, tm)
            ker = left_nullspace(fm).array
            nullity = ker.shape[0]
            if nullity == 0:
                continue
            for v in ker[:SEARCH_SPIN_CAP]:
                ndim, rows = _spin_raw(mats, p, v.reshape(1, -1))
                if 0 < ndim < m:
                    return "split", rows
            if nullity != d:
                continue
            # one kernel spin was full; certify through the transposed module
            kerT = nullspace(fm).array
            tdim, trows = _spin_raw(mats, p, kerT[:1], transpose=True)
            if tdim == m:
                cert = {
                    "kind": "norton",
                    "words": spec,
                    "coeffs": coeffs,
                    "factor": tuple(int(c) for c in f.coeffs),
                    "nullity": nullity,
                    "spin_dim": m,
                    "dual_spin_dim": tdim,
                }
                return "irr", cert
            # proper transposed-invariant space: its perp is invariant here
            perp = nullspace(GFMatrix(field, trows, copy=False)).array
            return "split", perp
    raise MeataxeBudgetError("meataxe budget exceeded after %d elements" % budget)


def is_irreducible(module, seed=1, budget=MEATAXE_BUDGET):
    """(True, Norton certificate) or (False, proper invariant subspace)."""
    rng = XorShift(seed, "is_irreducible")
    kind, data = _analyze(module.dense_mats(), module.field.p, rng, budget)
    if kind == "irr":
        return True, data
    sub = Subquotient(
        module,
        _rref_rows(data, module.field.p),
        np.zeros((0, module.dim), dtype=np.int64),
    )
    return False, sub


class CompositionFactor:
    """An iso class of composition factors of one chopped module."""

    def __init__(self, module, node, multiplicity, is_trivial):
        self.module = module
        self.node = node
        self.multiplicity = multiplicity
        self.is_trivial = is_trivial

    @property
    def factor(self):
        return self.module

    @property
    def witness(self):
        return self.node

    @property
    def dim(self):
        return self.module.dim

    def __repr__(self):
        return "CompositionFactor(dim=%d, mult=%d%s)" % (
            self.dim,
            self.multiplicity,
            ", trivial" if self.is_trivial else "",
        )


class FactorList:
    """Composition factors of one module, grouped by isomorphism class."""

    def __init__(self, parent, entries):
        self.parent = parent
        self.entries = entries
        total = sum(c.dim * c.multiplicity for c in entries)
        if total != parent.dim:
            raise ModuleError(
                "factor dimensions sum to %d, module has %d" % (total, parent.dim)
            )

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def dims(self):
        return [(c.dim, c.multiplicity) for c in self.entries]


def _is_trivial_module(module):
    if module.dim != 1:
        return False
    return all(int(module.mat(k)[0, 0]) == 1 for k in range(module.n_gens))


def chop(module, seed=1, budget=MEATAXE_BUDGET):
    """Composition factors of `module`, grouped by isomorphism.

    Returns a FactorList sorted by factor dimension (ties keep discovery
    order); multiplicities always satisfy sum(dim * mult) == module.dim.
    """
    p = module.field.p
    rng = XorShift(seed, "chop")
    work = [full_subquotient(module)]
    classes = []
    while work:
        node = work.pop()
        if node.dim == 0:
            continue
        sub = node.factor_module()
        kind, rows = _analyze(sub.dense_mats(), p, rng, budget)
        if kind == "split":
            mid = node.lift(rows)
            work.append(Subquotient(module, node.rows_sub, mid))
            work.append(Subquotient(module, mid, node.rows_quo))
            continue
        placed = False
        for cls in classes:
            if cls.dim == sub.dim and iso(cls.module, sub, seed=seed) is not None:
                cls.multiplicity += 1
                placed = True
                break
        if not placed:
            classes.append(
                CompositionFactor(sub, node, 1, _is_trivial_module(sub))
            )
    classes.sort(key=lambda c: c.dim)
    return FactorList(module, classes)


def _standard_basis(mats, p, v):
    """Canonical spin basis from v plus the acceptance pattern that built it.

    Processes basis rows in discovery order and generators in index order;
    the pattern of accepted (row, generator) steps is an isomorphism
    invariant of the pair (module, start vector up to an intertwiner).
    """
    n = v.size
    basis = np.zeros((n, n), dtype=np.int64)
    rowof = np.full(n, -1, dtype=np.int64)
    npiv = 0
    pattern = []
    c = backend.reduce_rows_mod(basis, rowof, npiv, (v % p).copy(), p)
    if c < 0:
        return 0, basis[:0], ()
    rowof[c] = npiv
    npiv += 1
    ordered = [v % p]
    i = 0
    while i < len(ordered) and npiv < n:
        row = ordered[i].reshape(1, -1)
        for k, a in enumerate(mats):
            y = backend.matmul_mod(row, a, p)[0]
            c = backend.reduce_rows_mod(basis, rowof, npiv, y.copy(), p)
            if c >= 0:
                rowof[c] = npiv
                npiv += 1
                pattern.append((i, k))
                ordered.append(y)
                if npiv == n:
                    break
        i += 1
    return npiv, np.array(ordered, dtype=np.int64), tuple(pattern)


def _kernel_candidates(ker, p, cap=ISO_CANDIDATE_CAP):
    """Projective representatives of the nonzero vectors of a kernel space."""
    d = ker.shape[0]
    total = (p**d - 1) // (p - 1)
    if total > cap:
        return None
    out = []
    for lead in range(d):
        tail = d - lead - 1
        counts = [0] * tail
        while True:
            coeff = np.zeros(d, dtype=np.int64)
            coeff[lead] = 1
            coeff[lead + 1 :] = counts
            out.append(backend.matmul_mod(coeff.reshape(1, -1), ker, p)[0])
            j = tail - 1
            while j >= 0 and counts[j] == p - 1:
                counts[j] = 0
                j -= 1
            if j < 0:
                break
            counts[j] += 1
    return out


def iso(a, b, seed=1, budget=MEATAXE_BUDGET):
    """An intertwiner between irreducible modules, or None.

    Returns a GFMatrix X with X @ rho_a(g) @ X^-1 == rho_b(g) for every
    generator, or None when the modules are not isomorphic.
    """
    if a.field.p != b.field.p or a.n_gens != b.n_gens:
        return None
    if a.dim != b.dim:
        return None
    p = a.field.p
    field = PrimeField(p)
    m = a.dim
    mats_a = a.dense_mats()
    mats_b = b.dense_mats()
    if m == 1:
        same = all(
            int(mats_a[k][0, 0]) == int(mats_b[k][0, 0]) for k in range(len(mats_a))
        )
        return GFMatrix.identity(field, 1) if same else None
    rng = XorShift(seed, "iso")
    for _ in range(budget):
        spec = _word_spec(rng, len(mats_a))
        coeffs = tuple(rng.randrange(p) for _ in spec)
        ta = _eval_words(mats_a, p, spec, coeffs)
        tb = _eval_words(mats_b, p, spec, coeffs)
        ca = char_poly(GFMatrix(field, ta, copy=False))
        cb = char_poly(GFMatrix(field, tb, copy=False))
        if ca != cb:
            return None
        factors = poly_factor(ca, rng=XorShift(1, "iso poly"))
        fm_pair = None
        for f, _mult in factors:
            d = f.degree
            if d == m:
                fa = GFMatrix.zeros(field, m, m)
                fb = fa
            else:
                fa = poly_eval_matrix(f, GFMatrix(field, ta, copy=False))
                fb = poly_eval_matrix(f, GFMatrix(field, tb, copy=False))
            ker_a = left_nullspace(fa).array
            ker_b = left_nullspace(fb).array
            if ker_a.shape[0] != ker_b.shape[0]:
                return None
            if ker_a.shape[0] == d:
                fm_pair = (ker_a, ker_b)
                break
        if fm_pair is None:
            continue
        ker_a, ker_b = fm_pair
        na, basis_a, pat_a = _standard_basis(mats_a, p, ker_a[0])
        if na != m:
            continue
        candidates = _kernel_candidates(ker_b, p)
        if candidates is None:
            continue
        for vb in candidates:
            nb, basis_b, pat_b = _standard_basis(mats_b, p, vb)
            if nb != m or pat_a != pat_b:
                continue
            xma = GFMatrix(field, basis_a, copy=False)
            xmb = GFMatrix(field, basis_b, copy=False)
            xprime = xma.inverse() @ xmb
            ok = all(
                GFMatrix(field, mats_a[k], copy=False) @ xprime
                == xprime @ GFMatrix(field, mats_b[k], copy=False)
                for k in range(len(mats_a))
            )
            if ok:
                return xprime.inverse()
        return None
    raise MeataxeBudgetError("iso budget exceeded after %d elements" % budget)


def fixed_rows(mats, p):
    """Echelon basis of {v : v @ M == v for every M}."""
    m = mats[0].shape[0]
    eye = np.eye(m, dtype=np.int64)
    stacked = np.hstack([(mm - eye) % p for mm in mats])
    return left_nullspace(GFMatrix(PrimeField(p), stacked, copy=False)).array


def fixed_space_dim(mats, p):
    if not mats:
        raise ModuleError("fixed space of an empty action list")
    return int(fixed_rows(mats, p).shape[0])


def _element_matrix(module, e):
    """Dense action matrix of one element given as matrix or point images."""
    if isinstance(e, GFMatrix):
        e = e.array
    e = np.asarray(e, dtype=np.int64)
    if e.ndim == 2:
        if e.shape != (module.dim, module.dim):
            raise ShapeError("element matrix shape %r, dim %d" % (e.shape, module.dim))
        return e % module.field.p
    if module.images is None:
        raise ModuleError("point images are only meaningful for permutation modules")
    if e.size != module.dim:
        raise ShapeError("image array degree %d, dim %d" % (e.size, module.dim))
    m = np.zeros((module.dim, module.dim), dtype=np.int64)
    m[np.arange(module.dim), e] = 1
    return m


def fixed_space(module, elements):
    """(dim, basis) of the common fixed space of the given element actions.

    Elements are dense matrices or, for permutation modules, point-image
    arrays.  For a generating set of a subgroup this is the fixed space of
    the whole subgroup.
    """
    mats = [_element_matrix(module, e) for e in elements]
    if not mats:
        raise ModuleError("fixed space of an empty action list")
    rows = fixed_rows(mats, module.field.p)
    return rows.shape[0], GFMatrix(module.field, rows, copy=False)


def _dense_hom(mats_a, mats_b, p):
    na = mats_a[0].shape[0]
    nb = mats_b[0].shape[0]
    if na * nb > DENSE_HOM_LIMIT:
        raise HomSizeError(
            "dense hom system has %d unknowns, limit %d" % (na * nb, DENSE_HOM_LIMIT)
        )
    eye_a = np.eye(na, dtype=np.int64)
    eye_b = np.eye(nb, dtype=np.int64)
    blocks = []
    for am, bm in zip(mats_a, mats_b):
        blocks.append((np.kron(am, eye_b) - np.kron(eye_a, bm.T)) % p)
    system = GFMatrix(PrimeField(p), np.vstack(blocks), copy=False)
    sols = nullspace(system).array
    return [sols[i].reshape(na, nb) for i in range(sols.shape[0])]


def _perm_hom(images, mats_b, p):
    """Hom from a permutation module, by prescribing the image of point 0.

    The image row of every point is a word in the generators applied to the
    image row of point 0 along a spanning tree of the point graph; each
    non-tree edge imposes a linear condition on that single row.  The
    candidate space is first cut down by words that stabilize point 0, then
    swept against every edge until a full pass leaves it unchanged.
    """
    n = images[0].size
    nb = mats_b[0].shape[0]
    field = PrimeField(p)
    parent = np.full(n, -1, dtype=np.int64)
    parent_gen = np.full(n, -1, dtype=np.int64)
    order = [0]
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    qi = 0
    while qi < len(order):
        i = order[qi]
        qi += 1
        for k, img in enumerate(images):
            j = int(img[i])
            if not seen[j]:
                seen[j] = True
                parent[j] = i
                parent_gen[j] = k
                order.append(j)
    if not seen.all():
        raise ModuleError("point action is not transitive; split the orbits first")

    v_rows = np.eye(nb, dtype=np.int64)

    def cut(constraint):
        nonlocal v_rows
        if v_rows.shape[0] == 0:
            return
        d = backend.matmul_mod(v_rows, constraint, p)
        if not d.any():
            return
        k = left_nullspace(GFMatrix(field, d, copy=False)).array
        v_rows = backend.matmul_mod(k, v_rows, p)

    eye_b = np.eye(nb, dtype=np.int64)
    for k, img in enumerate(images):
        c = 1
        j = int(img[0])
        w = mats_b[k]
        while j != 0:
            j = int(img[j])
            w = backend.matmul_mod(w, mats_b[k], p)
            c += 1
        cut((w - eye_b) % p)
        if v_rows.shape[0] == 0:
            return []

    while True:
        r = [None] * n
        r[0] = v_rows
        for i in order[1:]:
            r[i] = backend.matmul_mod(r[parent[i]], mats_b[parent_gen[i]], p)
        before = v_rows.shape[0]
        shrunk = False
        for i in order:
            for k, img in enumerate(images):
                j = int(img[i])
                if parent[j] == i and parent_gen[j] == k and j != 0:
                    continue
                d = (backend.matmul_mod(r[i], mats_b[k], p) - r[j]) % p
                if d.any():
                    kern = left_nullspace(GFMatrix(field, d, copy=False)).array
                    v_rows = backend.matmul_mod(kern, v_rows, p)
                    shrunk = True
                    break
            if shrunk:
                break
        if v_rows.shape[0] == 0:
            return []
        if not shrunk and v_rows.shape[0] == before:
            break

    out = []
    for v in v_rows:
        x = np.zeros((n, nb), dtype=np.int64)
        x[0] = v
        for i in order[1:]:
            x[i] = backend.matmul_mod(
                x[parent[i]].reshape(1, -1), mats_b[parent_gen[i]], p
            )[0]
        for k, img in enumerate(images):
            lhs = x[img]
            rhs = backend.matmul_mod(x, mats_b[k], p)
            if not np.array_equal(lhs, rhs):
                raise ModuleError("hom propagation produced a non-intertwiner")
        out.append(x)
    return out


def hom_basis(a, b):
    """Basis of Hom_kG(a, b) as matrices X with rho_a(g) @ X == X @ rho_b(g)."""
    if a.field.p != b.field.p:
        raise ModuleError("modules live over different fields")
    if a.n_gens != b.n_gens:
        raise ModuleError("generator counts differ: %d vs %d" % (a.n_gens, b.n_gens))
    p = a.field.p
    mats_b = b.dense_mats()
    if a.images is not None:
        return _perm_hom(a.images, mats_b, p)
    return _dense_hom(a.dense_mats(), mats_b, p)


def hom_space(a, b):
    """Dimension of Hom_kG(a, b)."""
    return len(hom_basis(a, b))


def tensor_product(a, b):
    """Inner tensor product over one group: generator k acts as A_k (x) B_k."""
    if a.field.p != b.field.p:
        raise ModuleError("modules live over different fields")
    if a.n_gens != b.n_gens:
        raise ModuleError("generator counts differ: %d vs %d" % (a.n_gens, b.n_gens))
    p = a.field.p
    mats = [
        np.kron(am, bm) % p for am, bm in zip(a.dense_mats(), b.dense_mats())
    ]
    return GModule(a.field, a.dim * b.dim, mats=mats)
