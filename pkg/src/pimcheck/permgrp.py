"""Permutation groups: stabilizer chains, coset actions, orbit machinery.

Permutations are int64 numpy image arrays: g maps i to g[i].  Products apply
the left factor first, so compose(a, b)[i] == b[a[i]].

Stabilizer chains are built by a randomized Schreier-Sims pass and then
certified by a deterministic sweep that sifts every Schreier generator of
every level; group orders coming out of a BSGS are therefore proven, not
probabilistic.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from math import lcm

import numpy as np

from .prng import XorShift


class PermError(ValueError):
    pass


class NotAPermutationError(PermError):
    pass


class DegreeMismatchError(PermError):
    pass


class MembershipError(PermError):
    """An element that had to lie in a group does not; carries the witness."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class SizeLimitError(PermError):
    """An enumeration guard was exceeded."""


def identity_perm(n):
    return np.arange(n, dtype=np.int64)


def compose(a, b):
    """Apply a, then b."""
    return b[a]


def inverse(a):
    inv = np.empty_like(a)
    inv[a] = np.arange(a.size, dtype=np.int64)
    return inv


def is_identity(a):
    return bool(np.array_equal(a, np.arange(a.size, dtype=np.int64)))


def validate_perm(a, degree=None):
    a = np.asarray(a, dtype=np.int64)
    if a.ndim != 1:
        raise NotAPermutationError("image array must be 1-dimensional")
    if degree is not None and a.size != degree:
        raise DegreeMismatchError("degree %d expected, got %d" % (degree, a.size))
    seen = np.zeros(a.size, dtype=bool)
    for x in a:
        if x < 0 or x >= a.size or seen[x]:
            raise NotAPermutationError("not a bijection on 0..%d: %r" % (a.size - 1, a))
        seen[x] = True
    return a


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text, degree):
    """Permutation from 1-based cycle notation, e.g. "(1 2 3)(4 5)"."""
    img = identity_perm(degree)
    body = text.strip()
    if body in ("", "()"):
        return img
    consumed = _CYCLE_RE.sub("", body).strip()
    if consumed:
        raise NotAPermutationError("unparsed cycle text: %r" % consumed)
    for grp in _CYCLE_RE.findall(body):
        pts = [int(t) for t in re.split(r"[,\s]+", grp.strip()) if t]
        if not pts:
            continue
        for t in pts:
            if t < 1 or t > degree:
                raise NotAPermutationError("point %d outside 1..%d" % (t, degree))
        zpts = [t - 1 for t in pts]
        if len(set(zpts)) != len(zpts):
            raise NotAPermutationError("repeated point in cycle %r" % grp)
        for i, t in enumerate(zpts):
            if img[t] != t:
                raise NotAPermutationError("point %d in two cycles" % (t + 1))
        for i, t in enumerate(zpts):
            img[t] = zpts[(i + 1) % len(zpts)]
    return img


def to_cycles(a):
    """1-based cycle notation; identity renders as "()"."""
    n = a.size
    seen = np.zeros(n, dtype=bool)
    parts = []
    for s in range(n):
        if seen[s] or a[s] == s:
            seen[s] = True
            continue
        cyc = [s]
        seen[s] = True
        t = int(a[s])
        while t != s:
            cyc.append(t)
            seen[t] = True
            t = int(a[t])
        parts.append("(" + " ".join(str(x + 1) for x in cyc) + ")")
    return "".join(parts) if parts else "()"


def perm_order(a):
    n = a.size
    seen = np.zeros(n, dtype=bool)
    result = 1
    for s in range(n):
        if not seen[s]:
            ln = 0
            t = s
            while not seen[t]:
                seen[t] = True
                t = int(a[t])
                ln += 1
            result = lcm(result, ln)
    return result


@dataclass(frozen=True)
class GenSet:
    """A named generating set acting on 0..degree-1."""

    degree: int
    gens: tuple
    name: str = ""

    def __post_init__(self):
        for g in self.gens:
            validate_perm(g, self.degree)

    @classmethod
    def from_cycles(cls, degree, texts, name=""):
        return cls(degree, tuple(parse_cycles(t, degree) for t in texts), name)

    def nonidentity(self):
        return [g for g in self.gens if not is_identity(g)]


class _Level:
    __slots__ = ("point", "gens", "orbit", "trans")

    def __init__(self, point, degree):
        self.point = point
        self.gens = []
        self.orbit = {point: 0}
        self.trans = [identity_perm(degree)]

    def rebuild(self):
        self.orbit = {self.point: 0}
        base_t = self.trans[0]
        self.trans = [base_t]
        i = 0
        while i < len(self.trans):
            u = self.trans[i]
            src = u[self.point]
            for s in self.gens:
                dst = int(s[src])
                if dst not in self.orbit:
                    self.orbit[dst] = len(self.trans)
                    self.trans.append(compose(u, s))
            i += 1


class BSGS:
    """Verified base and strong generating set."""

    def __init__(self, degree, base, levels, generators):
        self.degree = degree
        self.base = base
        self.levels = levels
        self.generators = generators  # the original generators
        self._order = 1
        for lv in levels:
            self._order *= len(lv.orbit)

    @property
    def order(self):
        return self._order

    def sift(self, g, start=0):
        """Reduce g through the chain; returns (residue, level reached)."""
        h = np.asarray(g, dtype=np.int64)
        if h.size != self.degree:
            raise DegreeMismatchError(
                "degree %d expected, got %d" % (self.degree, h.size)
            )
        for i in range(start, len(self.levels)):
            lv = self.levels[i]
            beta = int(h[lv.point])
            idx = lv.orbit.get(beta)
            if idx is None:
                return h, i
            h = compose(h, inverse(lv.trans[idx]))
        return h, len(self.levels)

    def contains(self, g):
        try:
            residue, _ = self.sift(g)
        except DegreeMismatchError:
            return False
        return is_identity(residue)

    def strong_gens_fixing(self, k):
        """Strong generators of the stabilizer of base[:k]."""
        if k >= len(self.levels):
            return []
        return list(self.levels[k].gens)

    def random_element(self, rng):
        g = identity_perm(self.degree)
        for lv in self.levels:
            g = compose(lv.trans[rng.randrange(len(lv.trans))], g)
        return g


def _first_moved(g, preferred):
    for b in preferred:
        if g[b] != b:
            return int(b)
    moved = np.nonzero(g != np.arange(g.size))[0]
    return int(moved[0])


def schreier_sims(genset, seed=1, base_hint=()):
    """Build a certified BSGS.

    Random subproducts seed the strong generator set cheaply; the
    deterministic sweep below then proves the chain complete by sifting every
    Schreier generator of every level, adding residues until none remain.
    base_hint points are used first, so stabilizers of a chosen point prefix
    can be read off the chain.
    """
    degree = genset.degree
    gens = genset.nonidentity()
    base = []
    levels = []
    hint = []
    for pt in base_hint:
        pt = int(pt)
        if not 0 <= pt < degree:
            raise PermError("base hint point %d outside degree %d" % (pt, degree))
        if pt not in hint:
            hint.append(pt)
    # Seed one level per hinted point up front, so the finished base begins
    # with the hint and point-stabilizer prefixes can be read off the chain.
    for pt in hint:
        base.append(pt)
        levels.append(_Level(pt, degree))

    def preferred_points():
        return hint + [b for b in range(degree) if b not in hint]

    def extend_base(g):
        pt = _first_moved(g, [b for b in preferred_points() if b not in base])
        base.append(pt)
        levels.append(_Level(pt, degree))

    def add_gen(h):
        """Insert a strong generator; returns the deepest level it joins."""
        j = 0
        while j < len(base) and h[base[j]] == base[j]:
            j += 1
        if j == len(base):
            extend_base(h)
        for i in range(j + 1):
            levels[i].gens.append(h)
        for i in range(j + 1):
            levels[i].rebuild()
        return j

    if not gens:
        return BSGS(degree, base, levels, [])

    for g in gens:
        add_gen(g)

    # randomized warm-up: sift random subproducts, absorb residues
    rng = XorShift(seed, "schreier_sims")
    slots = [gens[i % len(gens)].copy() for i in range(max(6, len(gens)))]
    acc = identity_perm(degree)
    bsgs = BSGS(degree, base, levels, gens)
    misses = 0
    while misses < 8:
        i = rng.randrange(len(slots))
        j = rng.randrange(len(slots))
        while j == i:
            j = rng.randrange(len(slots))
        if rng.randrange(2):
            slots[i] = compose(slots[i], slots[j])
        else:
            slots[i] = compose(slots[j], slots[i])
        acc = compose(acc, slots[i])
        residue, _ = bsgs.sift(acc)
        if is_identity(residue):
            misses += 1
        else:
            misses = 0
            add_gen(residue)
            bsgs = BSGS(degree, base, levels, gens)

    # deterministic certification sweep
    i = len(base) - 1
    while i >= 0:
        lv = levels[i]
        clean = True
        for u in list(lv.trans):
            src = int(u[lv.point])
            for s in lv.gens:
                dst = int(s[src])
                u2 = lv.trans[lv.orbit[dst]]
                schreier = compose(compose(u, s), inverse(u2))
                if is_identity(schreier):
                    continue
                residue, _ = BSGS(degree, base, levels, gens).sift(schreier, i + 1)
                if not is_identity(residue):
                    j = add_gen(residue)
                    i = j
                    clean = False
                    break
            if not clean:
                break
        if clean:
            i -= 1

    return BSGS(degree, base, levels, gens)


def order(bsgs):
    return bsgs.order


def contains(bsgs, g):
    return bsgs.contains(g)


def is_p_prime(group_order, p):
    return group_order % p != 0


def is_p_prime_group(bsgs, p):
    """True when p does not divide the group order."""
    return bsgs.order % p != 0


def enumerate_elements(genset, limit):
    """All elements by closure; raises SizeLimitError past `limit`."""
    n = genset.degree
    gens = genset.nonidentity()
    start = identity_perm(n)
    seen = {start.tobytes(): 0}
    elems = [start]
    frontier = [start]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(x, g)
                key = y.tobytes()
                if key not in seen:
                    if len(elems) >= limit:
                        raise SizeLimitError(
                            "group exceeds enumeration limit %d" % limit
                        )
                    seen[key] = len(elems)
                    elems.append(y)
                    nxt.append(y)
        frontier = nxt
    return elems


def p_regular_class_count(genset, p, limit=1_000_000):
    """Number of conjugacy classes of elements with order coprime to p.

    Enumerates the whole group (guarded by `limit`) and partitions it into
    conjugacy classes by orbit search under generator conjugation.
    """
    elems = enumerate_elements(genset, limit)
    index = {x.tobytes(): i for i, x in enumerate(elems)}
    gens = genset.nonidentity()
    inv_gens = [inverse(g) for g in gens]
    assigned = np.full(len(elems), -1, dtype=np.int64)
    count = 0
    regular = 0
    for i in range(len(elems)):
        if assigned[i] >= 0:
            continue
        cls = count
        count += 1
        assigned[i] = cls
        if perm_order(elems[i]) % p != 0:
            regular += 1
        stack = [i]
        while stack:
            j = stack.pop()
            x = elems[j]
            for g, gi in zip(gens, inv_gens):
                y = compose(compose(gi, x), g)
                k = index[y.tobytes()]
                if assigned[k] < 0:
                    assigned[k] = cls
                    stack.append(k)
    return regular


def orbits_of(gens, n):
    """Orbit partition of 0..n-1 under a list of image arrays."""
    label = np.full(n, -1, dtype=np.int64)
    nlab = 0
    for s in range(n):
        if label[s] >= 0:
            continue
        label[s] = nlab
        stack = [s]
        while stack:
            x = stack.pop()
            for g in gens:
                y = int(g[x])
                if label[y] < 0:
                    label[y] = nlab
                    stack.append(y)
        nlab += 1
    return label, nlab


class CosetAction:
    """Action of G on the right cosets of H, numbered by BFS discovery.

    transversal[i] is the representative of coset i (transversal[0] is the
    identity).  Coset identity is decided through a canonical representative:
    the element of H*x whose image tuple on H's base is lexicographically
    least, found greedily down H's stabilizer chain.
    """

    def __init__(self, g_genset, h_bsgs, max_index=20000):
        self.genset = g_genset
        self.h_bsgs = h_bsgs
        degree = g_genset.degree
        if h_bsgs.degree != degree:
            raise DegreeMismatchError(
                "subgroup degree %d vs group degree %d" % (h_bsgs.degree, degree)
            )
        self._index_of = {}
        self.transversal = []
        self.gen_images = []
        ident = identity_perm(degree)
        self._push(ident)
        images = [[] for _ in g_genset.gens]
        i = 0
        while i < len(self.transversal):
            t = self.transversal[i]
            for k, g in enumerate(g_genset.gens):
                x = compose(t, g)
                j = self._lookup_or_push(x, max_index)
                images[k].append(j)
            i += 1
        self.gen_images = [np.array(im, dtype=np.int64) for im in images]
        self.index = len(self.transversal)

    def _canonical(self, x):
        y = x
        for lv in self.h_bsgs.levels:
            pts = np.fromiter(lv.orbit.keys(), dtype=np.int64, count=len(lv.orbit))
            vals = y[pts]
            o = int(pts[int(np.argmin(vals))])
            u = lv.trans[lv.orbit[o]]
            y = compose(u, y)
        return y

    def _push(self, x):
        key = self._canonical(x).tobytes()
        self._index_of[key] = len(self.transversal)
        self.transversal.append(x)

    def _lookup_or_push(self, x, max_index):
        key = self._canonical(x).tobytes()
        j = self._index_of.get(key)
        if j is None:
            if len(self.transversal) >= max_index:
                raise SizeLimitError("coset count exceeds limit %d" % max_index)
            j = len(self.transversal)
            self._index_of[key] = j
            self.transversal.append(x)
        return j

    def point_of(self, g):
        """Coset index of H*g; MembershipError if g moves outside the orbit."""
        key = self._canonical(np.asarray(g, dtype=np.int64)).tobytes()
        j = self._index_of.get(key)
        if j is None:
            raise MembershipError("element is not in the generated group", witness=g)
        return j

    def image_of_element(self, g):
        """The permutation of coset points induced by an arbitrary element g."""
        out = np.empty(self.index, dtype=np.int64)
        for i in range(self.index):
            out[i] = self.point_of(compose(self.transversal[i], g))
        return out


def coset_action(g_genset, h_bsgs, max_index=20000):
    """Coset action of G on H; callers validate H <= G against G's chain."""
    return CosetAction(g_genset, h_bsgs, max_index)


def subgroup_point_images(act, h_gens):
    """Images of coset points under each subgroup generator."""
    return [act.image_of_element(h) for h in h_gens]


def permutation_rank(act, h_gens):
    """Number of H-orbits on coset points (the permutation rank)."""
    images = subgroup_point_images(act, h_gens)
    _, nlab = orbits_of(images, act.index)
    return nlab


def burnside_rank(act, h_elements):
    """Rank again, via the orbit-counting average of fixed points over all of H."""
    total = 0
    for h in h_elements:
        img = act.image_of_element(h)
        total += int(np.sum(img == np.arange(act.index)))
    if total % len(h_elements) != 0:
        raise PermError("fixed-point average is not an integer; action is corrupt")
    return total // len(h_elements)


def schreier_stabilizer_gens(gens, act_fn, start):
    """Orbit of `start` under an abstract action plus Schreier stabilizer gens.

    gens are permutations of the underlying points; act_fn(obj, k) applies
    generator k to an orbit object.  Returns (orbit list, stabilizer
    generators of the start object as permutations).
    """
    orbit = [start]
    where = {start: 0}
    trans = [identity_perm(gens[0].size)]
    stab = []
    seen = set()
    i = 0
    while i < len(orbit):
        obj = orbit[i]
        u = trans[i]
        for k, g in enumerate(gens):
            obj2 = act_fn(obj, k)
            j = where.get(obj2)
            if j is None:
                where[obj2] = len(orbit)
                orbit.append(obj2)
                trans.append(compose(u, g))
            else:
                s = compose(compose(u, g), inverse(trans[j]))
                key = s.tobytes()
                if key not in seen and not is_identity(s):
                    seen.add(key)
                    stab.append(s)
        i += 1
    return orbit, stab
