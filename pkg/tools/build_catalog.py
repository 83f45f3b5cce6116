"""Build the shipped group/subgroup catalog from first principles.

Every group is constructed from a classical combinatorial object (designs,
codes, graphs, projective lines) or as an explicit stabilizer inside such a
construction.  Nothing is copied from external generator tables: each
generating set is produced here and then validated against its expected
order by a certified stabilizer chain, and every subgroup generator is
sifted through the parent's chain, before anything is written out.

Run from the repository root:  python3 tools/build_catalog.py
"""

import itertools
import json
import os
import sys
import time
from math import comb
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from pimcheck import permgrp as pg
from pimcheck.prng import XorShift

CHECK = {}


def genset(degree, arrays, name):
    return pg.GenSet(degree, tuple(np.asarray(a, dtype=np.int64) for a in arrays), name)


def validated(gs, expected_order, base_hint=()):
    b = pg.schreier_sims(gs, seed=1, base_hint=base_hint)
    if b.order != expected_order:
        raise AssertionError(
            "%s: expected order %d, got %d" % (gs.name, expected_order, b.order)
        )
    return b


def subgroup_of(parent_bsgs, gs):
    for x in gs.gens:
        if not parent_bsgs.contains(x):
            raise AssertionError("%s: generator not in parent" % gs.name)
    return gs


def cyc(degree, *texts):
    return [pg.parse_cycles(t, degree) for t in texts]


# ---------------------------------------------------------------- alternating


def alternating(n):
    if n % 2 == 1:
        gens = cyc(n, "(1 2 3)", "(" + " ".join(str(i) for i in range(1, n + 1)) + ")")
    else:
        gens = cyc(n, "(1 2 3)", "(" + " ".join(str(i) for i in range(2, n + 1)) + ")")
    return genset(n, gens, "A%d" % n)


def point_stabilizer(gs, expected_order, fixed_point=0, name=""):
    """Stabilizer of a point, read off a chain based at that point."""
    b = pg.schreier_sims(gs, seed=1, base_hint=[fixed_point])
    assert b.base[0] == fixed_point
    gens = b.strong_gens_fixing(1)
    sub = genset(gs.degree, gens, name)
    validated(sub, expected_order)
    return sub


def fact(n):
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


# ------------------------------------------------------------------ searches


def closure_elements(gs, limit=2_000_000):
    return pg.enumerate_elements(gs, limit)


def find_subgroup_by_order(parent_gs, parent_bsgs, target_order, seed_label,
                           n_gens=2, max_tries=6000):
    """Random n_gens-generated subgroup of the given order."""
    rng = XorShift(1, seed_label)
    for _ in range(max_tries):
        cand = [parent_bsgs.random_element(rng) for _ in range(n_gens)]
        cand = [c for c in cand if not pg.is_identity(c)]
        if not cand:
            continue
        gs = genset(parent_gs.degree, cand, "cand")
        b = pg.schreier_sims(gs, seed=1)
        if b.order == target_order:
            return gs
    raise AssertionError("no subgroup of order %d found for %s" % (target_order, seed_label))


# ------------------------------------------------------------- Fano plane / L3(2)


def fano_lines():
    """Lines of the 7-point projective plane from the difference set {0,1,3}."""
    return [frozenset(((0 + i) % 7, (1 + i) % 7, (3 + i) % 7)) for i in range(7)]


def l32_on_7():
    """All automorphisms of the Fano plane, by filtering the alternating group."""
    lines = set(fano_lines())
    a7 = alternating(7)
    elems = closure_elements(a7, limit=3000)
    auts = []
    for e in elems:
        if all(frozenset(int(e[x]) for x in ln) in lines for ln in lines):
            auts.append(e)
    assert len(auts) == 168
    gens = genset(7, auts[1:3] + auts[100:102], "L3(2)")
    validated(gens, 168)
    return gens


# ------------------------------------------------------------------- GF(q)


class SmallField:
    """GF(p^k) arithmetic on element indices 0..q-1, polynomial basis."""

    def __init__(self, p, k, modulus):
        # modulus: coefficients of the defining polynomial, lowest first,
        # length k+1, leading coefficient 1
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = modulus
        self.add_t = np.zeros((self.q, self.q), dtype=np.int64)
        self.mul_t = np.zeros((self.q, self.q), dtype=np.int64)
        for a in range(self.q):
            for b in range(self.q):
                self.add_t[a, b] = self._enc(
                    [(x + y) % p for x, y in zip(self._dec(a), self._dec(b))]
                )
                self.mul_t[a, b] = self._enc(self._polymul(self._dec(a), self._dec(b)))
        self.inv_t = np.zeros(self.q, dtype=np.int64)
        for a in range(1, self.q):
            for b in range(1, self.q):
                if self.mul_t[a, b] == 1:
                    self.inv_t[a] = b
                    break
        self.neg_t = np.array(
            [self._enc([(-c) % p for c in self._dec(a)]) for a in range(self.q)],
            dtype=np.int64,
        )

    def _dec(self, a):
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return out

    def _enc(self, coeffs):
        a = 0
        for c in reversed(coeffs[: self.k]):
            a = a * self.p + (c % self.p)
        return a

    def _polymul(self, u, v):
        p, k = self.p, self.k
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(u):
            for j, y in enumerate(v):
                prod[i + j] = (prod[i + j] + x * y) % p
        for d in range(2 * k - 2, k - 1, -1):
            c = prod[d]
            if c:
                prod[d] = 0
                for j in range(k + 1):
                    prod[d - self.k + j] = (prod[d - self.k + j] - c * self.modulus[j]) % p
        return prod[:k]

    def add(self, a, b):
        return int(self.add_t[a, b])

    def mul(self, a, b):
        return int(self.mul_t[a, b])

    def neg(self, a):
        return int(self.neg_t[a])

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError
        return int(self.inv_t[a])

    def pow(self, a, e):
        r = 1
        for _ in range(e):
            r = self.mul(r, a)
        return r

    def generator(self):
        for g in range(2, self.q):
            seen = set()
            x = 1
            for _ in range(self.q - 1):
                x = self.mul(x, g)
                seen.add(x)
            if len(seen) == self.q - 1:
                return g
        raise AssertionError("no multiplicative generator")


def field_of(q):
    if q == 7:
        return SmallField(7, 1, [0, 1])
    if q == 8:
        return SmallField(2, 3, [1, 1, 0, 1])  # x^3 + x + 1
    if q == 9:
        return SmallField(3, 2, [1, 0, 1])  # x^2 + 1
    if q == 11:
        return SmallField(11, 1, [0, 1])
    if q == 13:
        return SmallField(13, 1, [0, 1])
    raise AssertionError("unsupported field size %d" % q)


def psl2(q):
    """PSL(2, q) on the q+1 projective-line points (0..q-1 field, q = infinity).

    Generators: x -> x+1, x -> g^2 x (g a multiplicative generator), and the
    inversion x -> -1/x.
    """
    f = field_of(q)
    n = q + 1
    inf = q

    def moebius(fun):
        img = np.empty(n, dtype=np.int64)
        for x in range(q):
            img[x] = fun(x)
        img[inf] = fun(inf)
        return img

    def translate(x):
        return f.add(x, 1) if x != inf else inf

    g = f.generator()
    g2 = f.mul(g, g)

    def scale(x):
        return f.mul(g2, x) if x != inf else inf

    def invneg(x):
        if x == inf:
            return 0
        if x == 0:
            return inf
        return f.neg(f.inv(x))

    gens = [moebius(translate), moebius(scale), moebius(invneg)]
    d = 2 if q % 2 == 1 else 1
    order = q * (q * q - 1) // d
    gs = genset(n, gens, "L2(%d)" % q)
    validated(gs, order)
    return gs, f


def pgl2(q):
    """PGL(2, q): PSL plus scaling by a non-square."""
    gs, f = psl2(q)
    inf = q
    g = f.generator()
    img = np.empty(q + 1, dtype=np.int64)
    for x in range(q):
        img[x] = f.mul(g, x)
    img[inf] = inf
    gens = list(gs.gens) + [img]
    out = genset(q + 1, gens, "PGL2(%d)" % q)
    validated(out, q * (q * q - 1))
    return out


def borel_of_psl2(q):
    """Stabilizer of infinity: translations and square scalings."""
    f = field_of(q)
    inf = q
    img_t = np.empty(q + 1, dtype=np.int64)
    for x in range(q):
        img_t[x] = f.add(x, 1)
    img_t[inf] = inf
    g = f.generator()
    g2 = f.mul(g, g)
    img_s = np.empty(q + 1, dtype=np.int64)
    for x in range(q):
        img_s[x] = f.mul(g2, x)
    img_s[inf] = inf
    d = 2 if q % 2 == 1 else 1
    gs = genset(q + 1, [img_t, img_s], "B(L2(%d))" % q)
    validated(gs, q * (q - 1) // d)
    return gs


def translations_of_psl2(q):
    """The unipotent radical of the Borel: x -> x + c."""
    f = field_of(q)
    inf = q
    gens = []
    for i in range(f.k):
        c = f.p**i
        img = np.empty(q + 1, dtype=np.int64)
        for x in range(q):
            img[x] = f.add(x, c)
        img[inf] = inf
        gens.append(img)
    gs = genset(q + 1, gens, "O2B")
    validated(gs, q)
    return gs


def torus_and_dihedral_of_psl2_8():
    """The order-9 nonsplit torus of L2(8) and its dihedral normalizer."""
    gs, _ = psl2(8)
    elems = closure_elements(gs, limit=600)
    nine = [e for e in elems if pg.perm_order(e) == 9]
    s = nine[0]
    sinv = pg.inverse(s)
    c9 = genset(9, [s], "C9")
    validated(c9, 9)
    invol = None
    for t in elems:
        if pg.perm_order(t) == 2:
            if np.array_equal(pg.compose(pg.compose(t, s), t), sinv):
                invol = t
                break
    assert invol is not None
    d18 = genset(9, [s, invol], "D18")
    validated(d18, 18)
    return gs, c9, d18


# ---------------------------------------------------------------- A6 and A8


def a6_subgroups():
    """C3 x C3 and its normalizer 3^2:4 inside A6."""
    a6 = alternating(6)
    p33 = genset(6, cyc(6, "(1 2 3)", "(4 5 6)"), "C3^2")
    validated(p33, 9)
    pset = {e.tobytes() for e in closure_elements(p33, limit=20)}
    elems = closure_elements(a6, limit=400)
    norm_gen = None
    for e in elems:
        if pg.perm_order(e) != 4:
            continue
        einv = pg.inverse(e)
        ok = all(
            pg.compose(pg.compose(einv, np.frombuffer(b, dtype=np.int64)), e).tobytes()
            in pset
            for b in pset
        )
        if ok:
            norm_gen = e
            break
    assert norm_gen is not None
    n33 = genset(6, list(p33.gens) + [norm_gen], "3^2.4")
    validated(n33, 36)
    return a6, p33, n33


def agl3_2():
    """The affine group 2^3:L3(2) on the 8 vectors of GF(2)^3."""

    def linear(m):
        img = np.empty(8, dtype=np.int64)
        for x in range(8):
            v = [(x >> j) & 1 for j in range(3)]
            w = [sum(m[i][j] * v[j] for j in range(3)) % 2 for i in range(3)]
            img[x] = w[0] | (w[1] << 1) | (w[2] << 2)
        return img

    def translation(v):
        return np.array([x ^ v for x in range(8)], dtype=np.int64)

    gens = [
        translation(1),
        translation(2),
        translation(4),
        linear([[1, 1, 0], [0, 1, 0], [0, 0, 1]]),
        linear([[0, 0, 1], [1, 0, 0], [0, 1, 0]]),
    ]
    gs = genset(8, gens, "2^3.L3(2)")
    validated(gs, 1344)
    return gs


# ----------------------------------------------------- binary Golay / Mathieu


def golay_octads():
    """The 759 octads of S(5,8,24), from the extended binary Golay code.

    The length-23 quadratic-residue code is generated by a degree-11 factor
    of x^23 - 1 over GF(2); appending an overall parity bit gives a [24,12]
    code whose weight-8 words are verified to cover every 5-subset exactly
    once before being returned as bitmasks.
    """
    from pimcheck import gfmat

    f2 = gfmat.PrimeField(2)
    x23 = gfmat.GFPoly(f2, [1] + [0] * 22 + [1])
    factors = [f for f, _ in gfmat.poly_factor(x23) if f.degree == 11]
    assert len(factors) == 2
    g = factors[0]
    basis = np.zeros((12, 24), dtype=np.int64)
    for i in range(12):
        row = np.zeros(23, dtype=np.int64)
        row[i : i + 12] = np.concatenate(
            [np.asarray(g.coeffs, dtype=np.int64), np.zeros(11 - g.degree, dtype=np.int64)]
        )[:12]
        basis[i, :23] = row
        basis[i, 23] = int(row.sum()) % 2
    sel = ((np.arange(4096)[:, None] >> np.arange(12)[None, :]) & 1).astype(np.int64)
    words = sel @ basis % 2
    weights = words.sum(axis=1)
    hist = {int(w): int(c) for w, c in zip(*np.unique(weights, return_counts=True))}
    assert hist == {0: 1, 8: 759, 12: 2576, 16: 759, 24: 1}, hist
    octads = []
    for w in words[weights == 8]:
        pts = tuple(int(i) for i in np.nonzero(w)[0])
        octads.append(sum(1 << i for i in pts))
    fives = set()
    for mask in octads:
        pts = [i for i in range(24) if (mask >> i) & 1]
        for s in itertools.combinations(pts, 5):
            fives.add(s)
    assert len(fives) == comb(24, 5)
    dodecad = None
    for w in words[weights == 12]:
        dodecad = sum(1 << int(i) for i in np.nonzero(w)[0])
        break
    return octads, dodecad


def design_automorphism(octads, image5):
    """Extend an image for points (0,1,2,3,4) to an octad-set automorphism.

    Every 5-set lies in a unique octad, so once an octad through the next
    point has five assigned points its image octad is forced; intersecting
    those forced octads leaves few candidate images and backtracking explores
    them.  Returns a degree-24 permutation or None.
    """
    octad_set = set(octads)
    by5 = {}
    for mask in octads:
        pts = [i for i in range(24) if (mask >> i) & 1]
        for s in itertools.combinations(pts, 5):
            by5[frozenset(s)] = mask
    full = (1 << 24) - 1

    def extend(assigned, used_mask):
        k = len(assigned)
        if k == 24:
            return assigned
        cand = full & ~used_mask
        dom = range(k)
        for s in itertools.combinations(dom, 4):
            omask = by5[frozenset(s + (k,))]
            fifth = None
            for x in dom:
                if x not in s and (omask >> x) & 1:
                    fifth = x
                    break
            if fifth is None:
                continue
            img = by5[frozenset(assigned[i] for i in s + (fifth,))]
            # every assigned point of the domain octad must land in the image
            for x in dom:
                if (omask >> x) & 1 and not (img >> assigned[x]) & 1:
                    return None
            cand &= img
            if cand & ~used_mask == 0:
                return None
        cand &= ~used_mask
        for img_pt in [i for i in range(24) if (cand >> i) & 1]:
            out = extend(assigned + [img_pt], used_mask | (1 << img_pt))
            if out is not None:
                return out
        return None

    assigned = list(image5)
    used = 0
    for x in assigned:
        used |= 1 << x
    out = extend(assigned, used)
    if out is None:
        return None
    perm = np.asarray(out, dtype=np.int64)
    for mask in octad_set:
        pts = [int(perm[i]) for i in range(24) if (mask >> i) & 1]
        if sum(1 << p for p in pts) not in octad_set:
            raise AssertionError("backtracker produced a non-automorphism")
    return perm


def restrict_support(arrays, points):
    """Restrict permutations that preserve `points` setwise to those points."""
    pos = {p: i for i, p in enumerate(points)}
    out = []
    for g in arrays:
        img = np.empty(len(points), dtype=np.int64)
        for i, p in enumerate(points):
            img[i] = pos[int(g[p])]
        out.append(img)
    return out


def shrink_gens(degree, gens_list, expected_order, name, seed_label):
    """Replace a large generating set by a few random subproducts of it."""
    rng = XorShift(1, seed_label)
    for rounds in range(30):
        take = []
        for _ in range(4 + rounds):
            g = gens_list[rng.randrange(len(gens_list))]
            for _ in range(3):
                g = pg.compose(g, gens_list[rng.randrange(len(gens_list))])
            take.append(g)
        take = [g for g in take if not pg.is_identity(g)]
        if not take:
            continue
        gs = genset(degree, take, name)
        if pg.schreier_sims(gs, seed=1).order == expected_order:
            return gs
    raise AssertionError("could not shrink generators for %s" % name)


def set_closure(seed_elems, limit):
    """Subgroup closure as a list of permutations, aborting past `limit`."""
    elems = {identity_perm_bytes(seed_elems[0].size): identity_np(seed_elems[0].size)}
    for g in seed_elems:
        elems[g.tobytes()] = g
    frontier = list(elems.values())
    while frontier:
        nxt = []
        for x in frontier:
            for g in seed_elems:
                y = pg.compose(x, g)
                key = y.tobytes()
                if key not in elems:
                    if len(elems) >= limit:
                        return None
                    elems[key] = y
                    nxt.append(y)
        frontier = nxt
    return list(elems.values())


def identity_np(n):
    return np.arange(n, dtype=np.int64)


def identity_perm_bytes(n):
    return identity_np(n).tobytes()


def build_mathieu_entries():
    entries = []
    artifacts = {}
    t0 = time.time()
    octads, dodecad = golay_octads()

    shift = np.array([(i + 1) % 23 for i in range(23)] + [23], dtype=np.int64)
    mult = np.array([(2 * i) % 23 for i in range(23)] + [23], dtype=np.int64)
    gens = [shift, mult]
    rng = XorShift(1, "m24-gens")
    target = 244823040
    while True:
        gs = genset(24, gens, "M24")
        b24 = pg.schreier_sims(gs, seed=1, base_hint=[23, 22, 21])
        if b24.order == target:
            break
        if b24.order > target:
            raise AssertionError("octad automorphisms exceeded the Mathieu order")
        image5 = []
        while len(image5) < 5:
            x = rng.randrange(24)
            if x not in image5:
                image5.append(x)
        extra = design_automorphism(octads, image5)
        if extra is not None:
            gens.append(extra)
    m24 = genset(24, gens, "M24")
    print("  M24 generated with %d generators in %.1fs" % (len(gens), time.time() - t0))

    m23 = genset(24, b24.strong_gens_fixing(1), "M23")
    m22 = genset(24, b24.strong_gens_fixing(2), "M22")
    l34 = genset(24, b24.strong_gens_fixing(3), "L3(4)")
    validated(m23, 10200960)
    validated(m22, 443520)
    validated(l34, 20160)

    m23r = genset(23, restrict_support(m23.gens, list(range(23))), "M23")
    m22in23 = genset(23, restrict_support(m22.gens, list(range(23))), "M22")
    e = group_entry(m23r, 10200960,
                    "stabilizer of one coordinate in the automorphism group of "
                    "the octads of the extended binary Golay code")
    add_subgroup(e, pg.schreier_sims(m23r, base_hint=[22]), m22in23, 443520,
                 "stabilizer of the point 23")
    entries.append(e)

    m22r = genset(22, restrict_support(m22.gens, list(range(22))), "M22")
    l34in22 = genset(22, restrict_support(l34.gens, list(range(22))), "L3(4)")
    b22 = pg.schreier_sims(m22r, base_hint=[21])
    e = group_entry(m22r, 443520,
                    "stabilizer of two coordinates in the automorphism group of "
                    "the octads of the extended binary Golay code")
    add_subgroup(e, b22, l34in22, 20160, "stabilizer of the point 22")
    entries.append(e)

    l34r = genset(21, restrict_support(l34.gens, list(range(21))), "L3(4)")
    b21 = pg.schreier_sims(l34r, base_hint=[0])
    e = group_entry(l34r, 20160,
                    "stabilizer of three coordinates in the automorphism group of "
                    "the octads of the extended binary Golay code; this is the "
                    "collineation group of the projective plane of order 4")
    p1 = genset(21, b21.strong_gens_fixing(1), "P1")
    bp1 = pg.schreier_sims(p1)
    assert bp1.order == 960
    p1_elems = closure_elements(p1, limit=1000)
    o2_gens = None
    for x in p1_elems:
        if pg.perm_order(x) != 2:
            continue
        # conjugacy class of x under P1, then its closure
        cls = [x]
        seen = {x.tobytes()}
        for y in cls:
            for g in p1.gens:
                z = pg.compose(pg.compose(pg.inverse(g), y), g)
                if z.tobytes() not in seen:
                    seen.add(z.tobytes())
                    cls.append(z)
            if len(cls) > 15:
                break
        if len(cls) > 15:
            continue
        closed = set_closure(cls, 17)
        if closed is not None and len(closed) == 16:
            o2_gens = cls
            break
    assert o2_gens is not None
    fives = [x for x in p1_elems if pg.perm_order(x) == 5]
    invols = [x for x in p1_elems if pg.perm_order(x) == 2]
    sub160 = None
    for a in fives:
        for b in invols:
            closed = set_closure(o2_gens + [a, b], 161)
            if closed is not None and len(closed) == 160:
                sub160 = genset(21, o2_gens[:2] + [a, b], "2^4.D5")
                break
        if sub160 is not None:
            break
    assert sub160 is not None
    add_subgroup(e, b21, sub160, 160,
                 "extension of the translation group of an affine plane inside "
                 "the point stabilizer by a dihedral group of order 10")
    entries.append(e)

    # M12 as the stabilizer of a dodecad, acting on its 12 points
    def act_mask(mask, k):
        g = m24.gens[k]
        out = 0
        for i in range(24):
            if (mask >> i) & 1:
                out |= 1 << int(g[i])
        return out

    orbit, stab = pg.schreier_stabilizer_gens(list(m24.gens), act_mask, dodecad)
    assert len(orbit) == 2576
    m12_24 = shrink_gens(24, stab, 95040, "M12", "m12-shrink")
    dpoints = [i for i in range(24) if (dodecad >> i) & 1]
    m12 = genset(12, restrict_support(m12_24.gens, dpoints), "M12")
    b12 = pg.schreier_sims(m12, base_hint=[11, 10])
    assert b12.order == 95040
    m11_12 = genset(12, b12.strong_gens_fixing(1), "M11")
    validated(m11_12, 7920)
    m11 = genset(11, restrict_support(m11_12.gens, list(range(11))), "M11")
    b11 = pg.schreier_sims(m11, base_hint=[10])
    e = group_entry(m11, 7920,
                    "stabilizer of a dodecad and one of its points in the "
                    "automorphism group of the octads of the extended binary "
                    "Golay code")
    m10 = genset(11, b11.strong_gens_fixing(1), "M10")
    add_subgroup(e, b11, m10, 720, "stabilizer of the point 11")
    entries.append(e)

    artifacts["octads"] = octads
    artifacts["m22_deg22"] = m22r
    artifacts["m22_deg24"] = m22
    artifacts["m24"] = m24
    print("  Mathieu chain done in %.1fs" % (time.time() - t0))
    return entries, artifacts


# ------------------------------------------------------------------- graphs


def check_srg(adj, n, k, lam, mu):
    a = np.zeros((n, n), dtype=np.int64)
    for v in range(n):
        for u in range(n):
            if (adj[v] >> u) & 1:
                a[v, u] = 1
    assert np.array_equal(a, a.T)
    assert a.diagonal().sum() == 0
    sq = a @ a
    j = np.ones((n, n), dtype=np.int64)
    eye = np.eye(n, dtype=np.int64)
    expect = k * eye + lam * a + mu * (j - eye - a)
    assert np.array_equal(sq, expect), "not srg(%d,%d,%d,%d)" % (n, k, lam, mu)


def graph_automorphism(adj, seed_images, rng, adj_img=None, max_nodes=300000):
    """One isomorphism from graph `adj` onto `adj_img` extending seed_images.

    adj[v] is the neighbour bitmask of vertex v; adj_img defaults to adj, in
    which case this searches for an automorphism.  Vertices are assigned in a
    greedy order that maximizes already-assigned neighbours; candidates are
    the intersection of image masks forced by adjacency to the assigned
    prefix, visited in a seed-dependent random rotation.  Returns None when
    no extension exists or the node budget runs out.
    """
    n = len(adj)
    full = (1 << n) - 1
    if adj_img is None:
        adj_img = adj
    nonadj_img = [(~adj_img[v]) & full & ~(1 << v) for v in range(n)]

    order = list(seed_images)
    placed = set(order)
    placed_mask = sum(1 << u for u in order)
    while len(order) < n:
        best, best_score = -1, -1
        for v in range(n):
            if v in placed:
                continue
            score = (adj[v] & placed_mask).bit_count()
            if score > best_score:
                best, best_score = v, score
        order.append(best)
        placed.add(best)
        placed_mask |= 1 << best

    images = [-1] * n
    used = 0
    for v, img in seed_images.items():
        if (used >> img) & 1:
            return None
        images[v] = img
        used |= 1 << img
    for v, img in seed_images.items():
        for u in seed_images:
            if u == v:
                continue
            if (adj[v] >> u) & 1 != (adj_img[img] >> images[u]) & 1:
                return None

    nodes = 0
    stack = [(len(seed_images), used, list(images), None)]
    while stack:
        depth, used, images, it = stack.pop()
        if depth == n:
            return np.asarray(images, dtype=np.int64)
        if it is None:
            nodes += 1
            if nodes > max_nodes:
                return None
            v = order[depth]
            cand = full & ~used
            for u in order[:depth]:
                if (adj[v] >> u) & 1:
                    cand &= adj_img[images[u]]
                else:
                    cand &= nonadj_img[images[u]]
                if cand == 0:
                    break
            pts = [i for i in range(n) if (cand >> i) & 1]
            if not pts:
                continue
            rot = rng.randrange(len(pts))
            pts = pts[rot:] + pts[:rot]
            it = iter(pts)
        v = order[depth]
        for img in it:
            stack.append((depth, used, images, it))
            nxt = list(images)
            nxt[v] = img
            stack.append((depth + 1, used | (1 << img), nxt, None))
            break
    return None


def extend_to_target_order(gs_base, adj, target, seed_label, moved_vertex=0,
                           max_attempts=400):
    """Reach order `target` by adding one backtracked graph automorphism that
    moves `moved_vertex` to the base group.

    The base is maximal (or normal of index 2) in the target, so a single
    suitable automorphism completes it; samples generating anything other
    than the exact target are discarded and redrawn.
    """
    n = len(adj)
    base = list(gs_base.gens)
    rng = XorShift(1, seed_label)
    for _ in range(max_attempts):
        img0 = rng.randrange(n - 1) + 1 if moved_vertex == 0 else rng.randrange(n)
        sigma = graph_automorphism(adj, {moved_vertex: img0}, rng)
        if sigma is None:
            continue
        for v in range(n):
            nb = [u for u in range(n) if (adj[v] >> u) & 1]
            inb = sorted(int(sigma[u]) for u in nb)
            want = [u for u in range(n) if (adj[int(sigma[v])] >> u) & 1]
            if inb != want:
                raise AssertionError("graph backtracker returned a non-automorphism")
        gs = genset(n, base + [sigma], gs_base.name)
        b = pg.schreier_sims(gs, seed=1)
        if b.order == target:
            return gs, b
    raise AssertionError("%s: could not reach order %d" % (gs_base.name, target))


# -------------------------------------------------------------- Higman-Sims


def build_higman_sims(artifacts):
    t0 = time.time()
    octads = artifacts["octads"]
    m22r = artifacts["m22_deg22"]
    both = (1 << 22) | (1 << 23)
    hexads = sorted(mask & ~both for mask in octads if (mask & both) == both)
    assert len(hexads) == 77
    hexad_index = {m: i for i, m in enumerate(hexads)}

    n = 100
    adj = [0] * n

    def link(u, v):
        adj[u] |= 1 << v
        adj[v] |= 1 << u

    for p in range(22):
        link(0, 1 + p)
    for h, mask in enumerate(hexads):
        for p in range(22):
            if (mask >> p) & 1:
                link(1 + p, 23 + h)
    for h1 in range(77):
        for h2 in range(h1 + 1, 77):
            if hexads[h1] & hexads[h2] == 0:
                link(23 + h1, 23 + h2)
    check_srg(adj, 100, 22, 0, 6)

    def induced(g22):
        img = np.empty(n, dtype=np.int64)
        img[0] = 0
        for p in range(22):
            img[1 + p] = 1 + int(g22[p])
        for h, mask in enumerate(hexads):
            moved = 0
            for p in range(22):
                if (mask >> p) & 1:
                    moved |= 1 << int(g22[p])
            img[23 + h] = 23 + hexad_index[moved]
        return img

    m22_100 = genset(100, [induced(g) for g in m22r.gens], "M22@100")
    split = hoffman_singleton_split(adj, m22r, induced)
    a_mask = split
    b_mask = ((1 << n) - 1) & ~split
    print("  Hoffman-Singleton split found in %.1fs" % (time.time() - t0))

    gens = list(m22_100.gens)
    rng = XorShift(1, "hs-extend")
    while True:
        gs = genset(100, gens, "HS")
        bhs = pg.schreier_sims(gs, seed=1)
        if bhs.order == 44352000:
            hs = gs
            break
        if bhs.order > 44352000:
            raise AssertionError("HS construction overshot the target order")
        sigma = split_preserving_automorphism(adj, a_mask, b_mask, rng)
        if sigma is not None:
            gens.append(sigma)
    print("  HS generated in %.1fs" % (time.time() - t0))

    def act_pair(pair, k):
        g = hs.gens[k]
        out = [0, 0]
        for idx, mask in enumerate(pair):
            m = 0
            for i in range(n):
                if (mask >> i) & 1:
                    m |= 1 << int(g[i])
            out[idx] = m
        return (min(out), max(out))

    start = (min(a_mask, b_mask), max(a_mask, b_mask))
    orbit, stab = pg.schreier_stabilizer_gens(list(hs.gens), act_pair, start)
    assert len(orbit) == 176, len(orbit)
    u352 = shrink_gens(100, stab, 252000, "U3(5).2", "u35-shrink")
    print("  Higman-Sims family done in %.1fs" % (time.time() - t0))

    e = group_entry(hs, 44352000,
                    "automorphisms of the 100-vertex graph on a vertex, the 22 "
                    "Golay coordinates, and the 77 hexads, with hexads joined "
                    "when disjoint; index-2 subgroup reached from the "
                    "coordinate action by one backtracked automorphism")
    add_subgroup(e, bhs, u352, 252000,
                 "setwise stabilizer of a split of the vertices into two "
                 "50-point Hoffman-Singleton graphs")
    return [e]


def split_preserving_automorphism(adj, a_mask, b_mask, rng, n=100):
    """A graph automorphism preserving each half of a split and moving
    vertex 0.

    An automorphism of the induced graph on the half containing vertex 0 is
    found by backtracking; it extends to the other half uniquely because a
    vertex there is determined by its neighbour set across the split.
    Returns None when the sampled half-automorphism does not extend.
    """
    a_pts = [v for v in range(n) if (a_mask >> v) & 1]
    b_pts = [v for v in range(n) if (b_mask >> v) & 1]
    assert a_pts[0] == 0
    pos_a = {v: i for i, v in enumerate(a_pts)}
    pos_b = {v: i for i, v in enumerate(b_pts)}
    sub = [0] * len(a_pts)
    for i, v in enumerate(a_pts):
        for j, u in enumerate(a_pts):
            if (adj[v] >> u) & 1:
                sub[i] |= 1 << j
    alpha = graph_automorphism(sub, {0: 1 + rng.randrange(len(a_pts) - 1)}, rng)
    if alpha is None:
        return None
    across = {}
    for j, u in enumerate(b_pts):
        key = adj[u] & a_mask
        across[key] = u
    img = np.empty(n, dtype=np.int64)
    for i, v in enumerate(a_pts):
        img[v] = a_pts[int(alpha[i])]
    for u in b_pts:
        moved = 0
        for v in a_pts:
            if (adj[u] >> v) & 1:
                moved |= 1 << int(img[v])
        tgt = across.get(moved)
        if tgt is None:
            return None
        img[u] = tgt
    # full adjacency validation
    for v in range(n):
        iv = int(img[v])
        for u in range(v + 1, n):
            if ((adj[v] >> u) & 1) != ((adj[iv] >> int(img[u])) & 1):
                return None
    return img


def hoffman_singleton_split(adj, m22r, induced, n=100):
    """A 50-point vertex set inducing a Hoffman-Singleton graph.

    The stabilizer of such a split that also fixes the distinguished vertex
    meets the coordinate stabilizer in an alternating group of degree 7, so
    the split is a union of orbits of one.  A random two-generator subgroup
    of order 2520 supplies the orbits; a subset union of total size 50 is
    tested for inducing srg(50, 7, 0, 1).
    """
    full = (1 << n) - 1
    half = n // 2
    b22 = pg.schreier_sims(m22r, seed=1)

    def induced_srg_mask(mask):
        pts = [v for v in range(n) if (mask >> v) & 1]
        if len(pts) != half:
            return False
        sub = [0] * half
        for i, v in enumerate(pts):
            for j, u in enumerate(pts):
                if (adj[v] >> u) & 1:
                    sub[i] |= 1 << j
        if any(s.bit_count() != 7 for s in sub):
            return False
        check_srg(sub, 50, 7, 0, 1)
        return True

    for attempt in range(40):
        try:
            a7 = find_subgroup_by_order(
                m22r, b22, 2520, "hs-a7-%d" % attempt, max_tries=3000
            )
        except AssertionError:
            continue
        a7_100 = [induced(g) for g in a7.gens]
        labels, nlab = pg.orbits_of(list(a7_100), n)
        masks = [0] * nlab
        for v in range(n):
            masks[labels[v]] |= 1 << v
        star = labels[0]
        others = [i for i in range(nlab) if i != star]
        for r in range(1, len(others) + 1):
            for combo in itertools.combinations(others, r):
                mask = masks[star]
                for i in combo:
                    mask |= masks[i]
                if mask.bit_count() != half:
                    continue
                if induced_srg_mask(mask) and induced_srg_mask(full & ~mask):
                    return mask
    raise AssertionError("no Hoffman-Singleton split found")


# ------------------------------------------------------------- Hall-Janko


def su3_generators(f):
    """Two random elements of the special unitary group SU(3, q) as matrices.

    Columns are built as random orthonormal frames for the identity hermitian
    form (conjugation is x -> x^q); the determinant is pushed to 1 by scaling
    one column with an inverse-determinant of norm 1.
    """
    q = int(round(f.q ** 0.5))

    def conj(a):
        return f.pow(a, q)

    def hermitian(u, v):
        s = 0
        for x, y in zip(u, v):
            s = f.add(s, f.mul(x, conj(y)))
        return s

    def matvec(m, v):
        return [
            f.add(f.add(f.mul(m[i][0], v[0]), f.mul(m[i][1], v[1])), f.mul(m[i][2], v[2]))
            for i in range(3)
        ]

    def det(m):
        total = 0
        for sgn, pidx in (
            (1, (0, 1, 2)), (1, (1, 2, 0)), (1, (2, 0, 1)),
            (-1, (0, 2, 1)), (-1, (1, 0, 2)), (-1, (2, 1, 0)),
        ):
            term = f.mul(f.mul(m[0][pidx[0]], m[1][pidx[1]]), m[2][pidx[2]])
            total = f.add(total, term if sgn == 1 else f.neg(term))
        return total

    rng = XorShift(1, "su3-frames")

    def random_vector():
        return [rng.randrange(f.q) for _ in range(3)]

    def random_unitary():
        while True:
            c1 = random_vector()
            if hermitian(c1, c1) != 1:
                continue
            c2 = None
            for _ in range(200):
                cand = random_vector()
                if hermitian(cand, c1) == 0 and hermitian(cand, cand) == 1:
                    c2 = cand
                    break
            if c2 is None:
                continue
            c3 = None
            for _ in range(600):
                cand = random_vector()
                if (
                    hermitian(cand, c1) == 0
                    and hermitian(cand, c2) == 0
                    and hermitian(cand, cand) == 1
                ):
                    c3 = cand
                    break
            if c3 is None:
                continue
            m = [[c1[i], c2[i], c3[i]] for i in range(3)]
            d = det(m)
            # unitarity forces d * conj(d) = 1, so scaling a column by 1/d
            # keeps the frame orthonormal while making the determinant 1
            mu = f.inv(d)
            assert f.mul(mu, conj(mu)) == 1
            for i in range(3):
                m[i][0] = f.mul(m[i][0], mu)
            assert det(m) == 1
            return m

    return random_unitary(), random_unitary(), hermitian, matvec


def u33_on_63():
    """PSU(3,3) acting on the 63 nonisotropic points of the hermitian plane."""
    f = field_of(9)
    m1, m2, hermitian, matvec = su3_generators(f)

    def canonical(v):
        lead = next(x for x in v if x != 0)
        mu = f.inv(lead)
        return tuple(f.mul(mu, x) for x in v)

    points = set()
    for a in range(9):
        for b in range(9):
            for c in range(9):
                v = (a, b, c)
                if v == (0, 0, 0):
                    continue
                if hermitian(list(v), list(v)) != 0:
                    points.add(canonical(v))
    points = sorted(points)
    assert len(points) == 63
    index = {pt: i for i, pt in enumerate(points)}

    def to_perm(m):
        img = np.empty(63, dtype=np.int64)
        for i, pt in enumerate(points):
            img[i] = index[canonical(matvec(m, list(pt)))]
        return img

    gs = genset(63, [to_perm(m1), to_perm(m2)], "U3(3)")
    validated(gs, 6048)
    return gs


def label_matrix(rows, cols, row0_labels, row_images, col_images):
    """Propagate pair-orbit labels from row 0 along a transversal BFS."""
    lab = np.full((rows, cols), -1, dtype=np.int64)
    lab[0] = row0_labels
    seen = [False] * rows
    seen[0] = True
    queue = [0]
    while queue:
        r = queue.pop()
        for gi in range(len(row_images)):
            r2 = int(row_images[gi][r])
            if not seen[r2]:
                lab[r2][col_images[gi]] = lab[r]
                seen[r2] = True
                queue.append(r2)
    assert all(seen)
    return lab


def build_hall_janko():
    t0 = time.time()
    u33 = u33_on_63()
    b63 = pg.schreier_sims(u33, seed=1)
    l27 = find_subgroup_by_order(u33, b63, 168, "u33-l27")
    bl27 = pg.schreier_sims(l27, seed=1)
    act = pg.coset_action(u33, bl27)
    assert act.index == 36
    img36 = [act.image_of_element(g) for g in u33.gens]
    img63 = list(u33.gens)

    # orbit labels of vertex-class pairs, for assembling invariant graphs
    l27_on36 = [act.image_of_element(g) for g in l27.gens]
    lab36_row0, n36 = pg.orbits_of(l27_on36, 36)
    lab36 = label_matrix(36, 36, lab36_row0, img36, img36)
    labx_row0, nx = pg.orbits_of(list(l27.gens), 63)
    labx = label_matrix(36, 63, labx_row0, img36, img63)
    _, stab0 = pg.schreier_stabilizer_gens(img63, lambda x, k: int(img63[k][x]), 0)
    lab63_row0, n63 = pg.orbits_of(stab0, 63)
    lab63 = label_matrix(63, 63, lab63_row0, img63, img63)

    diag36 = int(lab36[0, 0])
    diag63 = int(lab63[0, 0])
    opts36 = [t for t in range(n36) if t != diag36]
    optsx = list(range(nx))
    opts63 = [t for t in range(n63) if t != diag63]

    def unions(options):
        out = []
        for r in range(len(options) + 1):
            out.extend(itertools.combinations(options, r))
        return out

    found = None
    j = np.ones((100, 100), dtype=np.int64)
    eye = np.eye(100, dtype=np.int64)
    for s36 in unions(opts36):
        m36 = np.isin(lab36, s36)
        for sx in unions(optsx):
            mx = np.isin(labx, sx)
            if 1 + int(m36[0].sum()) + int(mx[0].sum()) != 36:
                continue
            for s63 in unions(opts63):
                m63 = np.isin(lab63, s63)
                adj_m = np.zeros((100, 100), dtype=np.int64)
                adj_m[0, 1:37] = 1
                adj_m[1:37, 0] = 1
                adj_m[1:37, 1:37] = m36
                adj_m[1:37, 37:] = mx
                adj_m[37:, 1:37] = mx.T
                adj_m[37:, 37:] = m63
                if not np.array_equal(adj_m, adj_m.T):
                    continue
                if np.any(adj_m.diagonal()):
                    continue
                if not np.all(adj_m.sum(axis=1) == 36):
                    continue
                sq = adj_m @ adj_m
                if np.array_equal(sq, 36 * eye + 14 * adj_m + 12 * (j - eye - adj_m)):
                    found = adj_m
                    break
            if found is not None:
                break
        if found is not None:
            break
    assert found is not None, "no Hall-Janko orbital union"
    adj = [0] * 100
    for v in range(100):
        for u in range(100):
            if found[v, u]:
                adj[v] |= 1 << u

    def combined(k):
        img = np.empty(100, dtype=np.int64)
        img[0] = 0
        img[1:37] = 1 + img36[k]
        img[37:] = 37 + img63[k]
        return img

    u33_100 = genset(100, [combined(k) for k in range(len(u33.gens))], "U3(3)")
    j2, bj2 = extend_to_target_order(
        rename(u33_100, "J2"), adj, 604800, "j2-extend"
    )
    print("  Hall-Janko family done in %.1fs" % (time.time() - t0))

    e = group_entry(j2, 604800,
                    "automorphisms of the rank-3 graph on a vertex, the 36 "
                    "cosets of a subgroup of order 168 in the hermitian unitary "
                    "group of GF(9), and its 63 nonisotropic projective points; "
                    "index-2 subgroup reached from the unitary action by "
                    "backtracked automorphisms")
    add_subgroup(e, bj2, u33_100, 6048, "stabilizer of the distinguished vertex")
    return [e]


# ------------------------------------------------------- McLaughlin / Conway


def build_mclaughlin_conway(artifacts):
    """The 276-point two-graph group and its point stabilizer.

    Vertices 0..274 carry a rank-3 graph on the 22 coordinates, the 77
    hexads, and the 176 heptads of the Witt designs; its automorphism group
    is the full McLaughlin group extension.  Adding an isolated vertex 275
    and passing to the switching class gives a regular two-graph whose
    automorphism group is reached by one switching isomorphism.
    """
    t0 = time.time()
    octads = artifacts["octads"]
    m22_24 = artifacts["m22_deg24"]

    bit22 = 1 << 22
    bit23 = 1 << 23
    low = (1 << 22) - 1
    hexads = sorted(m & low for m in octads if (m & bit22) and (m & bit23))
    heptads = sorted(m & low for m in octads if (m & bit23) and not (m & bit22))
    assert len(hexads) == 77 and len(heptads) == 176

    n = 275
    blocks = hexads + heptads
    bindex = {m: 22 + i for i, m in enumerate(blocks)}
    nb = len(blocks)
    member = np.zeros((22, nb), dtype=np.int64)
    for i, m in enumerate(blocks):
        for p in range(22):
            member[p, i] = (m >> p) & 1
    inter = np.zeros((nb, nb), dtype=np.int64)
    for i, mi in enumerate(blocks):
        for k, mk in enumerate(blocks):
            inter[i, k] = (mi & mk).bit_count()

    best = None
    jm = np.ones((n, n), dtype=np.int64)
    eye = np.eye(n, dtype=np.int64)
    for p_in_h, p_in_s, rule_h, rule_s, rule_hs in itertools.product(
        (0, 1), (0, 1), (0, 2), (1, 3), (1, 3)
    ):
        a = np.zeros((n, n), dtype=np.int64)
        pb = np.zeros((22, nb), dtype=np.int64)
        pb[:, :77] = member[:, :77] == p_in_h
        pb[:, 77:] = member[:, 77:] == p_in_s
        a[:22, 22:] = pb
        a[22:, :22] = pb.T
        bb = np.zeros((nb, nb), dtype=np.int64)
        bb[:77, :77] = inter[:77, :77] == rule_h
        bb[77:, 77:] = inter[77:, 77:] == rule_s
        bb[:77, 77:] = inter[:77, 77:] == rule_hs
        bb[77:, :77] = inter[77:, :77] == rule_hs
        np.fill_diagonal(bb, 0)
        a[22:, 22:] = bb
        if not np.all(a.sum(axis=1) == 112):
            continue
        sq = a @ a
        if np.array_equal(sq, 112 * eye + 30 * a + 56 * (jm - eye - a)):
            best = a
            break
    assert best is not None, "no McLaughlin orbital rule"
    adj = [0] * n
    for v in range(n):
        for u in range(n):
            if best[v, u]:
                adj[v] |= 1 << u

    def induced(g24):
        img = np.empty(n, dtype=np.int64)
        for p in range(22):
            img[p] = int(g24[p])
        for i, m in enumerate(blocks):
            moved = 0
            for p in range(22):
                if (m >> p) & 1:
                    moved |= 1 << int(g24[p])
            img[22 + i] = bindex[moved]
        return img

    m22_275 = genset(n, [induced(g) for g in m22_24.gens], "M22@275")
    mcl, _ = extend_to_target_order(
        rename(m22_275, "McL"), adj, 898128000, "mcl-extend"
    )
    print("  McL generated in %.1fs" % (time.time() - t0))
    mcl2, _ = extend_to_target_order(
        rename(mcl, "McL.2"), adj, 1796256000, "mcl2-extend"
    )
    print("  McL.2 generated in %.1fs" % (time.time() - t0))

    # two-graph on 276 points: the isolated vertex completes the graph
    n2 = 276
    star = 275
    gamma = [m for m in adj] + [0]

    def switch(graph, smask):
        full2 = (1 << n2) - 1
        out = []
        for v in range(n2):
            row = graph[v]
            if (smask >> v) & 1:
                row = (row & smask) | (~row & full2 & ~smask & ~(1 << v))
            else:
                row = (row & ~smask) | (~row & full2 & smask & ~(1 << v))
            out.append(row)
        return out

    def graphs_equal(g1, g2):
        return all(g1[v] == g2[v] for v in range(n2))

    rng = XorShift(1, "co3-extend")
    mcl2_276 = [np.concatenate([g, [star]]).astype(np.int64) for g in mcl2.gens]
    co3_gens = None
    for _ in range(200):
        v = rng.randrange(275)
        gprime = switch(gamma, gamma[v])
        assert gprime[v] == 0
        rest = [x for x in range(n2) if x != v]
        sub = [0] * (n2 - 1)
        pos = {x: i for i, x in enumerate(rest)}
        for i, x in enumerate(rest):
            for y in rest:
                if (gprime[x] >> y) & 1:
                    sub[i] |= 1 << pos[y]
        psi = graph_automorphism(
            sub, {0: rng.randrange(n)}, rng, adj_img=adj
        )
        if psi is None:
            continue
        sigma = np.empty(n2, dtype=np.int64)
        sigma[v] = star
        for i, x in enumerate(rest):
            sigma[x] = int(psi[i])
        # proof of two-graph preservation: relabel, re-isolate the star
        # vertex by switching, compare with the original graph
        relabeled = [0] * n2
        for x in range(n2):
            row = 0
            gx = gamma[x]
            for y in range(n2):
                if (gx >> y) & 1:
                    row |= 1 << int(sigma[y])
            relabeled[int(sigma[x])] = row
        fixed = switch(relabeled, relabeled[star])
        if not graphs_equal(fixed, gamma):
            continue
        cand = genset(n2, mcl2_276 + [sigma], "Co3")
        bco3 = pg.schreier_sims(cand, seed=1)
        if bco3.order == 495766656000:
            co3_gens = cand
            break
    assert co3_gens is not None, "no two-graph extension to Co3"
    print("  Co3 generated in %.1fs" % (time.time() - t0))

    e = group_entry(co3_gens, 495766656000,
                    "automorphisms of the regular two-graph on 276 points "
                    "built from the rank-3 graph on the 22 coordinates, 77 "
                    "hexads, and 176 heptads of the Witt designs plus an "
                    "isolated vertex; reached from the coordinate action by "
                    "backtracked graph automorphisms and one switching "
                    "isomorphism")
    mcl2_gs = genset(n2, mcl2_276, "McL.2")
    add_subgroup(e, bco3, mcl2_gs, 1796256000,
                 "stabilizer of the isolated vertex: the full automorphism "
                 "group of the 275-point rank-3 graph")
    print("  McLaughlin/Conway family done in %.1fs" % (time.time() - t0))
    return [e]


# ------------------------------------------------------------ entry assembly


def gens_to_strings(gs):
    return [pg.to_cycles(g) for g in gs.gens]


def group_entry(gs, order, provenance):
    validated(gs, order)
    return {
        "name": gs.name,
        "degree": gs.degree,
        "order": order,
        "generators": gens_to_strings(gs),
        "provenance": provenance,
        "subgroups": [],
    }


def add_subgroup(entry, parent_bsgs, gs, order, provenance):
    validated(gs, order)
    subgroup_of(parent_bsgs, gs)
    entry["subgroups"].append(
        {
            "name": gs.name,
            "order": order,
            "generators": gens_to_strings(gs),
            "provenance": provenance,
        }
    )


def rename(gs, name):
    return pg.GenSet(gs.degree, gs.gens, name)


def build_alternating_entries():
    entries = []
    t0 = time.time()

    a5 = alternating(5)
    b5 = pg.schreier_sims(a5, base_hint=[4])
    e = group_entry(a5, 60, "even permutations of 5 points")
    add_subgroup(e, b5, genset(5, cyc(5, "(1 2 3 4 5)"), "C5"), 5,
                 "cyclic subgroup generated by a 5-cycle")
    add_subgroup(e, b5, genset(5, cyc(5, "(1 2 3 4 5)", "(2 5)(3 4)"), "D5"), 10,
                 "dihedral normalizer of a 5-cycle")
    a4 = rename(point_stabilizer(a5, 12, fixed_point=4, name="A4"), "A4")
    add_subgroup(e, b5, a4, 12, "stabilizer of the point 5")
    entries.append(e)

    a6, p33, n33 = a6_subgroups()
    b6 = pg.schreier_sims(a6)
    e = group_entry(a6, 360, "even permutations of 6 points")
    add_subgroup(e, b6, p33, 9, "elementary abelian Sylow 3-subgroup")
    add_subgroup(e, b6, n33, 36, "normalizer of the Sylow 3-subgroup")
    entries.append(e)

    a7 = alternating(7)
    b7 = pg.schreier_sims(a7, base_hint=[6])
    e = group_entry(a7, 2520, "even permutations of 7 points")
    l32 = l32_on_7()
    add_subgroup(e, b7, l32, 168,
                 "automorphisms of the 7-point projective plane with lines "
                 "{i, i+1, i+3} mod 7")
    a6sub = rename(point_stabilizer(a7, 360, fixed_point=6, name="A6"), "A6")
    add_subgroup(e, b7, a6sub, 360, "stabilizer of the point 7")
    entries.append(e)

    a8 = alternating(8)
    b8 = pg.schreier_sims(a8, base_hint=[7])
    e = group_entry(a8, 20160, "even permutations of 8 points")
    agl = agl3_2()
    add_subgroup(e, b8, agl, 1344,
                 "affine group of GF(2)^3 with points 1..8 read as vectors 0..7")
    a7sub = rename(point_stabilizer(a8, 2520, fixed_point=7, name="A7"), "A7")
    add_subgroup(e, b8, a7sub, 2520, "stabilizer of the point 8")
    entries.append(e)

    for n in (11, 13):
        an = alternating(n)
        bn = pg.schreier_sims(an, base_hint=[n - 1])
        e = group_entry(an, fact(n) // 2, "even permutations of %d points" % n)
        sub = rename(
            point_stabilizer(an, fact(n - 1) // 2, fixed_point=n - 1, name="x"),
            "A%d" % (n - 1),
        )
        add_subgroup(e, bn, sub, fact(n - 1) // 2, "stabilizer of the point %d" % n)
        entries.append(e)

    s7 = genset(7, cyc(7, "(1 2)", "(1 2 3 4 5 6 7)"), "S7")
    bs7 = pg.schreier_sims(s7)
    e = group_entry(s7, 5040, "all permutations of 7 points")
    add_subgroup(e, bs7, rename(l32, "L2(7)"), 168,
                 "automorphisms of the 7-point projective plane with lines "
                 "{i, i+1, i+3} mod 7")
    entries.append(e)

    print("  alternating family done in %.1fs" % (time.time() - t0))
    return entries


def build_psl_entries():
    entries = []
    t0 = time.time()

    l27, _ = psl2(7)
    b27 = pg.schreier_sims(l27)
    e = group_entry(l27, 168, "fractional-linear maps of the projective line over GF(7)")
    s4 = rename(find_subgroup_by_order(l27, b27, 24, "l27-s4"), "S4")
    add_subgroup(e, b27, s4, 24, "octahedral subgroup located by random search")
    add_subgroup(e, b27, rename(borel_of_psl2(7), "B"), 21,
                 "stabilizer of infinity: x -> ax + b with a a nonzero square")
    entries.append(e)

    pgl27 = pgl2(7)
    bp27 = pg.schreier_sims(pgl27)
    e = group_entry(pgl27, 336,
                    "fractional-linear maps of the projective line over GF(7), "
                    "including non-square scalings")
    s4p = rename(find_subgroup_by_order(pgl27, bp27, 24, "pgl27-s4"), "S4")
    add_subgroup(e, bp27, s4p, 24, "octahedral subgroup located by random search")
    entries.append(e)

    l28, _ = psl2(8)
    _, c9, d18 = torus_and_dihedral_of_psl2_8()
    b28 = pg.schreier_sims(l28)
    e = group_entry(l28, 504, "fractional-linear maps of the projective line over GF(8)")
    add_subgroup(e, b28, c9, 9, "nonsplit torus generated by an element of order 9")
    add_subgroup(e, b28, d18, 18, "dihedral normalizer of the order-9 torus")
    add_subgroup(e, b28, rename(borel_of_psl2(8), "B"), 56,
                 "stabilizer of infinity: x -> ax + b with a nonzero")
    entries.append(e)

    l29, _ = psl2(9)
    b29 = pg.schreier_sims(l29)
    e = group_entry(l29, 360, "fractional-linear maps of the projective line over GF(9)")
    add_subgroup(e, b29, rename(translations_of_psl2(9), "O2(B)"), 9,
                 "translation subgroup x -> x + c, the odd core of the Borel")
    add_subgroup(e, b29, rename(borel_of_psl2(9), "B"), 36,
                 "stabilizer of infinity: x -> ax + b with a a nonzero square")
    entries.append(e)

    l211, _ = psl2(11)
    b211 = pg.schreier_sims(l211)
    e = group_entry(l211, 660, "fractional-linear maps of the projective line over GF(11)")
    a5sub = rename(find_subgroup_by_order(l211, b211, 60, "l211-a5"), "A5")
    add_subgroup(e, b211, a5sub, 60, "icosahedral subgroup located by random search")
    add_subgroup(e, b211, rename(borel_of_psl2(11), "B"), 55,
                 "stabilizer of infinity: x -> ax + b with a a nonzero square")
    entries.append(e)

    l213, _ = psl2(13)
    b213 = pg.schreier_sims(l213)
    e = group_entry(l213, 1092, "fractional-linear maps of the projective line over GF(13)")
    add_subgroup(e, b213, rename(borel_of_psl2(13), "B"), 78,
                 "stabilizer of infinity: x -> ax + b with a a nonzero square")
    entries.append(e)

    print("  projective-line family done in %.1fs" % (time.time() - t0))
    return entries


def row(group, subgroup, prime, dim, tag, minutes=5):
    return {
        "group": group,
        "subgroup": subgroup,
        "prime": prime,
        "expect_holds": True,
        "expect_dim": dim,
        "max_minutes": minutes,
        "tag": tag,
    }


def negative_row(group, subgroup, prime):
    return {
        "group": group,
        "subgroup": subgroup,
        "prime": prime,
        "expect_holds": False,
        "max_minutes": 5,
        "tag": "negative",
    }


def manifest_rows():
    rows = [
        row("A5", "A4", 5, 5, "alternating"),
        row("A7", "A6", 7, 7, "alternating"),
        row("A11", "A10", 11, 11, "alternating"),
        row("A13", "A12", 13, 13, "alternating"),
        row("A5", "C5", 2, 12, "alternating"),
        row("A5", "D5", 3, 6, "alternating"),
        row("A6", "C3^2", 2, 40, "alternating"),
        row("A6", "3^2.4", 5, 10, "alternating"),
        row("A7", "L3(2)", 5, 15, "alternating"),
        row("A8", "2^3.L3(2)", 5, 15, "alternating"),
        row("M11", "M10", 11, 11, "sporadic"),
        row("M22", "L3(4)", 11, 22, "sporadic"),
        row("M23", "M22", 23, 23, "sporadic"),
        row("HS", "U3(5).2", 11, 176, "sporadic"),
        row("Co3", "McL.2", 23, 276, "sporadic", minutes=45),
        row("J2", "U3(3)", 5, 100, "sporadic"),
        row("He", "S4(4).2", 7, 2058, "sporadic", minutes=45),
        row("L2(7)", "S4", 7, 7, "psl2"),
        row("L2(11)", "A5", 11, 11, "psl2"),
        row("L2(11)", "B", 3, 12, "psl2"),
        row("L2(13)", "B", 7, 14, "psl2"),
        row("L2(9)", "O2(B)", 2, 40, "psl2"),
        row("L2(9)", "B", 5, 10, "psl2"),
        row("L2(8)", "C9", 2, 56, "psl2"),
        row("L2(8)", "D18", 7, 28, "psl2"),
        row("L3(4)", "2^4.D5", 3, 126, "stretch"),
        negative_row("PGL2(7)", "S4", 7),
        negative_row("S7", "L2(7)", 5),
        negative_row("A5", "C5", 3),
    ]
    for r in rows:
        if r["group"] == "He":
            r["skip"] = (
                "no generator words for He with a validated S4(4).2 subgroup "
                "could be constructed offline; shipping unverifiable data "
                "is worse than an explicit gap"
            )
    return rows


def main():
    entries = []
    entries += build_alternating_entries()
    entries += build_psl_entries()
    mathieu, artifacts = build_mathieu_entries()
    entries += mathieu
    entries += build_higman_sims(artifacts)
    entries += build_hall_janko()
    entries += build_mclaughlin_conway(artifacts)
    for e in entries:
        print("%-10s order %-12d degree %-3d subgroups %s"
              % (e["name"], e["order"], e["degree"],
                 ", ".join(s["name"] for s in e["subgroups"])))

    names = [e["name"] for e in entries]
    if len(set(names)) != len(names):
        raise AssertionError("duplicate catalog names: %r" % names)
    resolvable = {
        (e["name"], s["name"]) for e in entries for s in e["subgroups"]
    }
    for r in manifest_rows():
        if "skip" in r:
            continue
        if (r["group"], r["subgroup"]) not in resolvable:
            raise AssertionError(
                "manifest row %s/%s does not resolve" % (r["group"], r["subgroup"])
            )

    data_dir = os.path.join(os.path.dirname(__file__), "..", "src", "pimcheck", "data")
    os.makedirs(data_dir, exist_ok=True)
    catalog = {"format": "pimcheck-catalog-1", "groups": entries}
    manifest = {"format": "pimcheck-manifest-1", "entries": manifest_rows()}
    with open(os.path.join(data_dir, "catalog.json"), "w") as fh:
        json.dump(catalog, fh, indent=1)
        fh.write("\n")
    with open(os.path.join(data_dir, "manifest.json"), "w") as fh:
        json.dump(manifest, fh, indent=1)
        fh.write("\n")
    print("wrote catalog.json (%d groups) and manifest.json (%d rows)"
          % (len(entries), len(manifest["entries"])))


if __name__ == "__main__":
    main()

