"""Automorphisms given by generator images, fixed points and coprime covering."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import CapacityError, HypothesisError, InputError, InvalidAutomorphismError, NonBijectiveError, Verdict
from .pcgroup import GroupElement, PcPresentation, format_word
from .subgroups import Subgroup, quotient, subgroup_closure, subgroup_from_mask

DEFAULT_ORDER_BOUND = 10_000


@dataclass(frozen=True)
class Automorphism:
    group: PcPresentation = field(repr=False)
    images: tuple[GroupElement, ...]
    order: int
    name: str = ""

    def __call__(self, x: GroupElement) -> GroupElement:
        return _evaluate(self.group, self.images, x)

    def compose(self, other: "Automorphism") -> tuple[GroupElement, ...]:
        """Images of self∘other (apply other first)."""
        return tuple(self(y) for y in other.images)

    def power_images(self, k: int) -> tuple[GroupElement, ...]:
        imgs = self.group.gens
        for _ in range(k % self.order):
            imgs = tuple(self(y) for y in imgs)
        return imgs

    @cached_property
    def table(self) -> np.ndarray:
        """φ on every element index."""
        return _evaluate_vec(self.group, [y.index for y in self.images])

    def is_coprime(self) -> bool:
        return math.gcd(self.order, self.group.order) == 1

    def describe(self) -> dict:
        return {
            "name": self.name,
            "order": self.order,
            "images": [y.word() for y in self.images],
        }


def _evaluate(g: PcPresentation, images: Sequence[GroupElement], x: GroupElement) -> GroupElement:
    out = g.identity
    for img, e in zip(images, x.exponents):
        if e:
            out = out * img**e
    return out


def _evaluate_vec(g: PcPresentation, image_indices: Sequence[int], domain: np.ndarray | None = None) -> np.ndarray:
    if domain is None:
        domain = np.arange(g.order, dtype=np.int64)
    digits = g.tables.digits[domain]
    out = np.zeros(domain.shape, dtype=np.int64)
    for k, y in enumerate(image_indices):
        col = digits[:, k]
        for e in range(1, g.relative_orders[k]):
            out = np.where(col >= e, g.rmul_index(out, int(y)), out)
    return out


def _relation_failure(g: PcPresentation, images: Sequence[GroupElement]) -> str | None:
    syms = g.generators
    for i in range(g.ngens):
        lhs = images[i] ** g.relative_orders[i]
        rhs = _word_image(g, images, g.power_relations[i])
        if lhs != rhs:
            return f"{syms[i]}^{g.relative_orders[i]} = {format_word(g.power_relations[i], syms)}"
    for (i, j), w in g.conjugation_relations:
        lhs = images[j].conj(images[i])
        if lhs != _word_image(g, images, w):
            return f"{syms[j]}^{syms[i]} = {format_word(w, syms)}"
    return None


def _word_image(g, images, word):
    out = g.identity
    for k, e in word:
        out = out * images[k] ** e
    return out


def automorphism_from_images(
    g: PcPresentation,
    images: Sequence[GroupElement | str],
    name: str = "",
    order_bound: int = DEFAULT_ORDER_BOUND,
) -> Automorphism:
    if len(images) != g.ngens:
        raise InputError(f"{g.name}: need {g.ngens} generator images, got {len(images)}")
    imgs = tuple(g.word(y) if isinstance(y, str) else y for y in images)
    for y in imgs:
        if y.group is not g and y.group != g:
            raise InputError("image from a different group")
    bad = _relation_failure(g, imgs)
    if bad is not None:
        raise InvalidAutomorphismError(f"{name or 'map'} does not preserve the relation {bad}", relation=bad)
    if subgroup_closure(list(imgs), g).order != g.order:
        raise NonBijectiveError(f"{name or 'map'}: images generate a proper subgroup of {g.name}")
    cur = imgs
    k = 1
    while cur != g.gens:
        if k >= order_bound:
            raise CapacityError(f"{name or 'automorphism'}: order exceeds bound {order_bound}")
        cur = tuple(_evaluate(g, imgs, y) for y in cur)
        k += 1
    return Automorphism(g, imgs, k, name)


def identity_automorphism(g: PcPresentation) -> Automorphism:
    return Automorphism(g, g.gens, 1, "id")


def fixed_points(phi: Automorphism) -> Subgroup:
    g = phi.group
    if not g.enumerable:
        raise CapacityError(f"{g.name}: order {g.order} exceeds the enumeration cap {g.cap}")
    mask = phi.table == np.arange(g.order)
    return subgroup_from_mask(g, mask)


def is_invariant(phi: Automorphism, h: Subgroup) -> bool:
    return all(phi(t) in h for t in h.induced_generators)


def quotient_covering_check(phi: Automorphism, n: Subgroup) -> Verdict:
    """Compare C_{G/N}(φ) with the image of C_G(φ)N in the quotient presentation."""
    g = phi.group
    if not n.is_normal():
        raise HypothesisError("N is not normal")
    if not is_invariant(phi, n):
        raise HypothesisError("N is not φ-invariant")
    coprime = phi.is_coprime()
    q = quotient(n)
    qp = q.presentation
    induced = automorphism_from_images(qp, [q.project(phi(q.lift(y))) for y in qp.gens], name=f"{phi.name}|quot")
    c_quot = fixed_points(induced)
    c_g = fixed_points(phi)
    image = subgroup_closure([q.project(x) for x in c_g.induced_generators], qp)
    ok = image == c_quot
    v = Verdict(ok, hypothesis_met=coprime)
    v.witness = {"quotient_fixed_order": c_quot.order, "image_order": image.order}
    if not coprime:
        v.notes.append(f"hypothesis not met: gcd({phi.order}, {g.order}) != 1")
    return v


# -- bounded brute-force search ------------------------------------------------


def minimal_generating_subset(g: PcPresentation) -> list[int]:
    """Indices of pc generators forming an irredundant generating set."""
    keep = list(range(g.ngens))
    for k in reversed(range(g.ngens)):
        trial = [i for i in keep if i != k]
        if subgroup_closure([g.gens[i] for i in trial], g).order == g.order:
            keep = trial
    return keep


def _words_over(g: PcPresentation, chosen: list[int]) -> list[list[int]]:
    """For each pc generator a shortest positive word in the chosen generators (BFS)."""
    order = g.order
    parent = np.full(order, -1, dtype=np.int64)
    via = np.full(order, -1, dtype=np.int64)
    seen = np.zeros(order, dtype=bool)
    seen[0] = True
    frontier = np.array([0], dtype=np.int64)
    while frontier.size:
        nxt = []
        for c in chosen:
            img = g.rmul_index(frontier, g.gens[c].index)
            new = ~seen[img]
            img_new, src = img[new], frontier[new]
            img_new, first = np.unique(img_new, return_index=True)
            src = src[first]
            seen[img_new] = True
            parent[img_new] = src
            via[img_new] = c
            nxt.append(img_new)
        frontier = np.concatenate(nxt) if nxt else np.array([], dtype=np.int64)
    words = []
    for k in range(g.ngens):
        node = g.gens[k].index
        w = []
        while node != 0:
            w.append(int(via[node]))
            node = int(parent[node])
        words.append(w[::-1])
    return words


def search_automorphisms(
    g: PcPresentation,
    order: int | None = None,
    fixed_point_free: bool = False,
    max_candidates: int = 2_000_000,
) -> list[Automorphism]:
    """All automorphisms (optionally of a given order, optionally fpf) by brute force.

    Candidate images of an irredundant generating subset are restricted to
    elements of matching order; the induced images of all pc generators are
    evaluated along BFS words and every defining relation is checked
    vectorised over the candidates.
    """
    if not g.enumerable:
        raise CapacityError(f"{g.name}: too large for automorphism search")
    chosen = minimal_generating_subset(g)
    words = _words_over(g, chosen)
    allx = np.arange(g.order, dtype=np.int64)
    elem_orders = _element_orders(g)
    pools = [np.flatnonzero(elem_orders == elem_orders[g.gens[c].index]) for c in chosen]
    total = math.prod(len(p) for p in pools)
    if total > max_candidates:
        raise CapacityError(f"{g.name}: {total} candidate image tuples exceed {max_candidates}")
    grids = np.meshgrid(*pools, indexing="ij")
    cand = {c: grid.ravel().astype(np.int64) for c, grid in zip(chosen, grids)}
    m = len(next(iter(cand.values()))) if cand else 1
    images = []
    for k in range(g.ngens):
        acc = np.zeros(m, dtype=np.int64)
        for c in words[k]:
            acc = g.mul_vec(acc, cand[c])
        images.append(acc)
    alive = np.ones(m, dtype=bool)

    def word_image(word):
        acc = np.zeros(m, dtype=np.int64)
        for k, e in word:
            acc = g.mul_vec(acc, g.pow_vec(images[k], e))
        return acc

    for i in range(g.ngens):
        alive &= g.pow_vec(images[i], g.relative_orders[i]) == word_image(g.power_relations[i])
    for (i, j), w in g.conjugation_relations:
        alive &= g.conj_vec(images[j], images[i]) == word_image(w)
    if fixed_point_free:
        for k in range(g.ngens):
            # a fixed generator is a nontrivial fixed point
            alive &= images[k] != g.gens[k].index
    sel = np.flatnonzero(alive)
    images = [im[sel] for im in images]
    if order is not None:
        # φ^order must fix every generator (this also forces bijectivity)
        cur = [np.full(sel.size, x.index, dtype=np.int64) for x in g.gens]
        for _ in range(order):
            cur = [_apply_candidates(g, images, y) for y in cur]
        keep = np.ones(sel.size, dtype=bool)
        for k in range(g.ngens):
            keep &= cur[k] == g.gens[k].index
        images = [im[keep] for im in images]
    found = []
    for idx in range(images[0].size if images else 1):
        imgs = [g.element_at(int(images[k][idx])) for k in range(g.ngens)]
        if order is None and subgroup_closure(imgs, g).order != g.order:
            continue
        table = _evaluate_vec(g, [y.index for y in imgs])
        if fixed_point_free and np.count_nonzero(table == allx) != 1:
            continue
        ordr = _permutation_order(table)
        if order is not None and ordr != order:
            continue
        found.append(Automorphism(g, tuple(imgs), ordr, f"auto{len(found)}"))
    return found


def _apply_candidates(g: PcPresentation, images: list[np.ndarray], y: np.ndarray) -> np.ndarray:
    """φ_c(y_c) for each candidate c, where φ_c has generator images images[k][c]."""
    digits = g.tables.digits[y]
    acc = np.zeros(y.shape, dtype=np.int64)
    for k in range(g.ngens):
        col = digits[:, k]
        for e in range(1, g.relative_orders[k]):
            acc = np.where(col >= e, g.mul_vec(acc, images[k]), acc)
    return acc


def _element_orders(g: PcPresentation) -> np.ndarray:
    allx = np.arange(g.order, dtype=np.int64)
    orders = np.zeros(g.order, dtype=np.int64)
    cur = allx.copy()
    k = 1
    while (orders == 0).any():
        orders[(cur == 0) & (orders == 0)] = k
        cur = g.mul_vec(cur, allx)
        k += 1
    return orders


def _permutation_order(perm: np.ndarray) -> int:
    seen = np.zeros(perm.size, dtype=bool)
    out = 1
    for start in range(perm.size):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = int(perm[x])
            length += 1
        out = math.lcm(out, length)
    return out
