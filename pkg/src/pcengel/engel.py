"""Engel elements of finite groups and the Engel-type identities in Lie rings."""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import CapacityError, HypothesisError, InputError, Verdict
from .liering import (
    GradedLieRing,
    LieElement,
    ad_nilpotency_index,
    lie_nilpotency_class,
    lp_from_zassenhaus,
)
from .pcgroup import GroupElement, PcPresentation, commutator

LINEARIZATION_BUDGET = 8


def engel_word(y: GroupElement, x: GroupElement, n: int) -> GroupElement:
    """[y, x, .., x] with n copies of x; [y, _0 x] = y."""
    if n < 0:
        raise InputError("n must be non-negative")
    for _ in range(n):
        y = commutator(y, x)
    return y


@dataclass
class EngelResult:
    engel: bool
    degree: int | None
    witness: GroupElement | None = None


@dataclass
class EngelProfile:
    element: GroupElement
    right_engel: bool
    right_degree: int | None
    left_engel: bool
    left_degree: int | None
    right_witness: GroupElement | None = None
    left_witness: GroupElement | None = None

    def describe(self) -> dict:
        wit = lambda w: None if w is None else list(w.exponents)  # noqa: E731
        return {
            "element": list(self.element.exponents),
            "right_engel": self.right_engel,
            "right_degree": self.right_degree,
            "left_engel": self.left_engel,
            "left_degree": self.left_degree,
            "right_witness": wit(self.right_witness),
            "left_witness": wit(self.left_witness),
        }


def _require(g: PcPresentation) -> None:
    if not g.enumerable:
        raise CapacityError(f"{g.name}: order {g.order} exceeds the enumeration cap {g.cap}")


def _orbit_hits(step, start: np.ndarray) -> np.ndarray:
    """First t with step^t(start) = 1 per lane, -1 where the orbit cycles away from 1.

    Floyd's tortoise and hare runs in every lane at once; since 1 is a fixed
    point, meeting at a non-identity element proves 1 is never reached.
    """
    hit = np.where(start == 0, 0, -1)
    active = hit < 0
    slow, fast = start.copy(), start.copy()
    t = 0
    while active.any():
        t += 1
        slow = step(slow)
        fast = step(step(fast))
        newly = active & (slow == 0)
        hit[newly] = t
        active &= ~newly
        active &= ~(slow == fast)
    return hit


def is_right_engel(y: GroupElement) -> EngelResult:
    """Decide whether [y, _n x] = 1 eventually for every x; degree is the max over x."""
    g = y.group
    _require(g)
    xs = np.arange(g.order, dtype=np.int64)
    hits = _orbit_hits(lambda a: g.comm_vec(a, xs), np.full(g.order, y.index, dtype=np.int64))
    bad = np.flatnonzero(hits < 0)
    if bad.size:
        return EngelResult(False, None, g.element_at(int(bad[0])))
    return EngelResult(True, int(hits.max()))


def is_left_engel(y: GroupElement) -> EngelResult:
    """Decide whether [x, _n y] = 1 eventually for every x."""
    g = y.group
    _require(g)
    hits = _orbit_hits(lambda a: g.comm_vec(a, np.int64(y.index)), np.arange(g.order, dtype=np.int64))
    bad = np.flatnonzero(hits < 0)
    if bad.size:
        return EngelResult(False, None, g.element_at(int(bad[0])))
    return EngelResult(True, int(hits.max()))


def engel_profile(y: GroupElement) -> EngelProfile:
    r, l = is_right_engel(y), is_left_engel(y)
    return EngelProfile(y, r.engel, r.degree, l.engel, l.degree, r.witness, l.witness)


def conjugacy_labels(g: PcPresentation) -> tuple[int, np.ndarray]:
    _require(g)
    allx = np.arange(g.order, dtype=np.int64)
    src = np.concatenate([allx] * g.ngens)
    dst = np.concatenate([g.conj_vec(allx, np.int64(t.index)) for t in g.gens])
    graph = coo_matrix((np.ones(src.size, dtype=np.int8), (src, dst)), shape=(g.order, g.order))
    return connected_components(graph, directed=True, connection="weak")


def _basin_times(f: np.ndarray) -> np.ndarray:
    """Steps to reach 0 under the map f, -1 when 0 is never reached."""
    h = np.full(f.size, -1, dtype=np.int64)
    h[0] = 0
    t = 0
    while True:
        new = (h == -1) & (h[f] == t)
        if not new.any():
            return h
        t += 1
        h[new] = t


@dataclass
class EngelTable:
    """Right and left Engel degrees of every element (-1: not Engel)."""

    group: PcPresentation = field(repr=False)
    right: np.ndarray
    left: np.ndarray

    def right_set(self) -> np.ndarray:
        return np.flatnonzero(self.right >= 0)

    def left_set(self) -> np.ndarray:
        return np.flatnonzero(self.left >= 0)

    @cached_property
    def max_right_degree(self) -> int | None:
        return int(self.right.max()) if (self.right >= 0).all() else None


def engel_table(g: PcPresentation) -> EngelTable:
    """Degrees for all elements, one commutator map per conjugacy class.

    With h_x(y) the steps from y to 1 under y -> [y, x], conjugation gives
    h_{x^a}(y^a) = h_x(y), so the right degree of y is the max of h_r over
    the class of y, taken over class representatives r.
    """
    _require(g)
    n, labels = conjugacy_labels(g)
    allx = np.arange(g.order, dtype=np.int64)
    reps = np.full(n, -1, dtype=np.int64)
    reps[labels[::-1]] = allx[::-1]
    big = g.order + 1
    right_cls = np.zeros(n, dtype=np.int64)
    left_cls = np.zeros(n, dtype=np.int64)
    for c, r in enumerate(reps):
        h = _basin_times(g.comm_vec(allx, np.int64(r)))
        hh = np.where(h < 0, big, h)
        per = np.zeros(n, dtype=np.int64)
        np.maximum.at(per, labels, hh)
        right_cls = np.maximum(right_cls, per)
        left_cls[c] = hh.max()
    right = right_cls[labels]
    left = left_cls[labels]
    right[right >= big] = -1
    left[left >= big] = -1
    return EngelTable(g, right, left)


def engel_table_by_iteration(g: PcPresentation) -> EngelTable:
    """Reference computation: iterate y -> [y, x] up to |G| times for every pair."""
    _require(g)
    allx = np.arange(g.order, dtype=np.int64)
    right = np.zeros(g.order, dtype=np.int64)
    left = np.zeros(g.order, dtype=np.int64)
    for x in allx:
        f = g.comm_vec(allx, np.int64(x))
        cur = allx.copy()
        hit = np.where(cur == 0, 0, -1)
        for t in range(1, g.order + 1):
            cur = f[cur]
            hit[(hit < 0) & (cur == 0)] = t
            if (cur == 0).all():
                break
        # hit[y] = steps for [y, _t x] to reach 1
        left[x] = -1 if (hit < 0).any() else hit.max()
        right = np.where((right < 0) | (hit < 0), -1, np.maximum(right, hit))
    return EngelTable(g, right, left)


def right_engel_mask(g: PcPresentation) -> np.ndarray:
    return engel_table(g).right >= 0


def heineken_check(g: PcPresentation, n: int, table: EngelTable | None = None) -> Verdict:
    """Elements whose inverse is right n-Engel are left (n+1)-Engel."""
    t = engel_table(g) if table is None else table
    inv = g.tables.inverse
    r_inv = t.right[inv]
    pre = (r_inv >= 0) & (r_inv <= n)
    post = (t.left >= 0) & (t.left <= n + 1)
    bad = np.flatnonzero(pre & ~post)
    if bad.size:
        return Verdict(False, witness=g.element_at(int(bad[0])))
    return Verdict(True, witness={"tested": int(pre.sum())})


# -- Lie-level identities ----------------------------------------------------


def _engel_exact(ring, x, a, n):
    """[x, _n a], stopping early once it vanishes."""
    w = x.weight + n * a.weight
    y = x
    for _ in range(n):
        if y.is_zero:
            return ring.zero(w)
        y = ring.bracket(y, a)
    return y


def leibniz_check(ring: GradedLieRing, u: LieElement, v: LieElement, w: LieElement, n: int) -> Verdict:
    """[[u, v], _n w] = Σ_i C(n, i) [[u, _i w], [v, _{n-i} w]]."""
    lhs = _engel_exact(ring, ring.bracket(u, v), w, n)
    acc = ring.zero(lhs.weight)
    for i in range(n + 1):
        term = ring.bracket(_engel_exact(ring, u, w, i), _engel_exact(ring, v, w, n - i))
        acc = acc + ring.scale(term, math.comb(n, i))
    return Verdict(lhs == acc, witness=None if lhs == acc else (u, v, w, n))


def char_p_identity_check(ring: GradedLieRing, u: LieElement, v: LieElement, w: LieElement, s: int) -> Verdict:
    """[[u, v], _{p^s} w] = [[u, _{p^s} w], v] + [u, [v, _{p^s} w]] in characteristic p."""
    p = ring.prime
    if p is None or not ring.is_elementary(p):
        raise HypothesisError(f"{ring.name} does not have characteristic p (components not elementary)")
    m = p**s
    lhs = _engel_exact(ring, ring.bracket(u, v), w, m)
    rhs = ring.bracket(_engel_exact(ring, u, w, m), v) + ring.bracket(u, _engel_exact(ring, v, w, m))
    return Verdict(lhs == rhs, witness=None if lhs == rhs else (u, v, w, s))


def linearization_sum(ring: GradedLieRing, x0: LieElement, args: list[LieElement], budget: int = LINEARIZATION_BUDGET) -> LieElement:
    """Σ over all orderings π of [x0, a_π(1), .., a_π(n)]."""
    n = len(args)
    if n > budget:
        raise CapacityError(f"linearization of {n} arguments exceeds budget {budget}")
    w = x0.weight + sum(a.weight for a in args)
    total = np.zeros(len(ring.flat_moduli(w)), dtype=np.int64)

    def walk(cur: LieElement, remaining: list[int]):
        nonlocal total
        if cur.is_zero:
            return
        if not remaining:
            total += np.asarray(cur.vector, dtype=np.int64)
            return
        for k in remaining:
            walk(ring.bracket(cur, args[k]), [r for r in remaining if r != k])

    walk(x0, list(range(n)))
    return ring.element(w, total.tolist())


def _distinct_orderings_sum(ring, x0, args):
    """Σ over distinct orderings of the multiset args (each ordering once)."""
    w = x0.weight + sum(a.weight for a in args)
    total = np.zeros(len(ring.flat_moduli(w)), dtype=np.int64)
    seen = set()
    for perm in itertools.permutations(range(len(args))):
        key = tuple(args[k].vector for k in perm)
        if key in seen:
            continue
        seen.add(key)
        cur = x0
        for k in perm:
            cur = ring.bracket(cur, args[k])
            if cur.is_zero:
                break
        else:
            total += np.asarray(cur.vector, dtype=np.int64)
    return ring.element(w, total.tolist())


def adn0_check(ring: GradedLieRing, dec, n: int, p: int, samples: int = 20, seed: int = 0) -> Verdict:
    """[x0, _n l] = 0 for generators x0 of each L_(u)0 and all homogeneous l.

    Writing l = Σ c_b b over the additive basis, [x0, _n l] expands into
    multiset sums over distinct orderings; all of them vanishing gives the
    identity for every l, which is what is verified.  Basis elements and
    random l are also checked directly.
    """
    if p <= n:
        return Verdict(False, hypothesis_met=False, notes=[f"p = {p} <= n = {n}"])
    rng = random.Random(seed)
    checked = 0
    for u in ring.weights:
        for x0 in dec.generators(u, 0):
            for v in ring.weights:
                basis = ring.basis(v)
                for combo in itertools.combinations_with_replacement(range(len(basis)), n):
                    s = _distinct_orderings_sum(ring, x0, [basis[k] for k in combo])
                    checked += 1
                    if not s.is_zero:
                        return Verdict(False, witness=(x0, [basis[k] for k in combo]))
                for _ in range(samples):
                    l = ring.element(v, [rng.randrange(d) for d in ring.flat_moduli(v)])
                    if not _engel_exact(ring, x0, l, n).is_zero:
                        return Verdict(False, witness=(x0, l))
    return Verdict(True, witness={"multisets": checked})


def adnk_index_check(ring: GradedLieRing, dec, q: int, n: int) -> Verdict:
    """Index of ad l_k is at most q + n - 1 for eigenvectors with k != 0.

    Also checks the initial segment: [x_j, _s l_k] lies in L_0 when
    j + s k = 0 mod q, for every homogeneous eigen-generator x_j.  For k = 0
    the indices are only recorded.
    """
    observed: dict[str, list[int]] = {}
    bound = q + n - 1
    ok = True
    witness = None
    all_gens = [(u, j, x) for u in ring.weights for j in range(q) for x in dec.generators(u, j)]
    for v in ring.weights:
        for k in range(q):
            for l in dec.generators(v, k):
                idx = ad_nilpotency_index(ring, l)
                observed.setdefault(f"{v},{k}", []).append(idx)
                if k == 0:
                    continue
                if idx > bound and ok:
                    ok, witness = False, ("index", l, idx)
                kinv = pow(k, -1, q)
                for u, j, x in all_gens:
                    s = (-j * kinv) % q
                    y = _engel_exact(ring, x, l, s)
                    w = u + s * v
                    if w <= ring.max_weight and y.vector not in dec.components[(w, 0)] and ok:
                        ok, witness = False, ("segment", x, l, s)
                    if w > ring.max_weight and not y.is_zero and ok:
                        ok, witness = False, ("segment", x, l, s)
    return Verdict(ok, witness=witness or {"bound": bound, "observed": observed})


def commutator_ad_nilpotency_check(g: PcPresentation, p: int, generators: list[GroupElement] | None = None) -> Verdict:
    """Brackets of the images of right Engel generators in L_p(G) are ad-nilpotent of index <= p^s."""
    if not g.is_p_group(p):
        raise HypothesisError(f"{g.name} is not a {p}-group")
    gens = list(generators) if generators is not None else list(g.gens)
    degrees = []
    for h in gens:
        r = is_right_engel(h)
        if not r.engel:
            raise HypothesisError(f"generator {h.word()} is not right Engel (witness {r.witness.word()})")
        degrees.append(r.degree)
    s = 0
    while p**s < max(degrees + [1]):
        s += 1
    bound = p**s
    d, lp = lp_from_zassenhaus(g, p)
    comp = d.source.components[1]
    images = [d.element(1, comp.coords(h)) for h in gens]
    cls = lie_nilpotency_class(d, lp)
    indices = {}
    layer = [((k,), x) for k, x in enumerate(images) if not x.is_zero]
    seen = set()
    ok = True
    for _ in range(max(cls, 1)):
        nxt = []
        for key, c in layer:
            if c in seen:
                continue
            seen.add(c)
            idx = ad_nilpotency_index(d, c, within=lp)
            indices[".".join(map(str, key))] = idx
            ok &= idx <= bound
            for k, x in enumerate(images):
                y = d.bracket(c, x)
                if not y.is_zero:
                    nxt.append((key + (k,), y))
        layer = nxt
        if not layer:
            break
    return Verdict(ok, witness={"bound": bound, "degrees": degrees, "indices": indices})
