"""Subgroups as canonical induced sequences, closures and central series."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import HypothesisError, InputError
from .pcgroup import GroupElement, PcPresentation, commutator


@dataclass(frozen=True)
class Subgroup:
    """Subgroup given by its canonical induced generating sequence.

    Leading depths strictly increase, every leading exponent is 1 and every
    generator has exponent 0 at the other leading depths, so two subgroups are
    equal iff their sequences are equal.
    """

    group: PcPresentation
    induced_generators: tuple[GroupElement, ...]

    @cached_property
    def depths(self) -> tuple[int, ...]:
        return tuple(t.depth for t in self.induced_generators)

    @cached_property
    def order(self) -> int:
        r = self.group.relative_orders
        return math.prod(r[d] for d in self.depths)

    @property
    def is_trivial(self) -> bool:
        return not self.induced_generators

    def __len__(self) -> int:
        return self.order

    def sift(self, x: GroupElement) -> GroupElement:
        table = dict(zip(self.depths, self.induced_generators))
        return _sift(x, table)

    def __contains__(self, x: GroupElement) -> bool:
        return self.sift(x).is_identity

    def __le__(self, other: "Subgroup") -> bool:
        return all(t in other for t in self.induced_generators)

    def __lt__(self, other: "Subgroup") -> bool:
        return self <= other and self.order < other.order

    @cached_property
    def element_indices(self) -> np.ndarray:
        """Sorted indices of all elements (needs the group within the cap)."""
        g = self.group
        elems = np.zeros(1, dtype=np.int64)
        for t in reversed(self.induced_generators):
            r = g.relative_orders[t.depth]
            parts = []
            power = g.identity
            for _ in range(r):
                parts.append(g.mul_vec(np.int64(power.index), elems))
                power = power * t
            elems = np.concatenate(parts)
        return np.sort(elems)

    @cached_property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.group.order, dtype=bool)
        m[self.element_indices] = True
        return m

    def elements(self) -> list[GroupElement]:
        return [self.group.element_at(i) for i in self.element_indices]

    def is_normal(self, within: "Subgroup | None" = None) -> bool:
        gens = self.group.gens if within is None else within.induced_generators
        return all(t.conj(g) in self for t in self.induced_generators for g in gens)

    def describe(self) -> dict:
        return {
            "order": self.order,
            "generators": [list(t.exponents) for t in self.induced_generators],
        }

    def __repr__(self):
        gens = ", ".join(t.word() for t in self.induced_generators)
        return f"<Subgroup of {self.group.name} order {self.order}: [{gens}]>"


def _sift(x: GroupElement, table: dict[int, GroupElement]) -> GroupElement:
    while not x.is_identity:
        d = x.depth
        t = table.get(d)
        if t is None:
            return x
        x = x * t ** (-x.exponents[d])
    return x


def _normalise(x: GroupElement) -> GroupElement:
    d = x.depth
    r = x.group.relative_orders[d]
    return x ** pow(x.exponents[d], -1, r)


def _closure(group: PcPresentation, seeds: Iterable[GroupElement], normal: bool) -> Subgroup:
    table: dict[int, GroupElement] = {}
    queue = [s for s in seeds]
    for s in queue:
        if s.group is not group and s.group != group:
            raise InputError("generators from a different group")
    while queue:
        x = _sift(queue.pop(), table)
        if x.is_identity:
            continue
        x = _normalise(x)
        d = x.depth
        table[d] = x
        queue.append(x ** group.relative_orders[d])
        for t in list(table.values()):
            if t is not x:
                queue.append(commutator(x, t))
        if normal:
            for g in group.gens:
                queue.append(commutator(x, g))
    return _canonical(group, table)


def _canonical(group: PcPresentation, table: dict[int, GroupElement]) -> Subgroup:
    depths = sorted(table)
    gens = {d: table[d] for d in depths}
    for d2 in depths:
        t2 = gens[d2]
        for d1 in depths:
            if d1 >= d2:
                break
            e = gens[d1].exponents[d2]
            if e:
                gens[d1] = gens[d1] * t2 ** (-e)
    return Subgroup(group, tuple(gens[d] for d in depths))


def subgroup_closure(gens: Sequence[GroupElement], group: PcPresentation | None = None) -> Subgroup:
    group = _ambient(gens, group)
    return _closure(group, gens, normal=False)


def normal_closure(gens: Sequence[GroupElement], group: PcPresentation | None = None) -> Subgroup:
    group = _ambient(gens, group)
    return _closure(group, gens, normal=True)


def _ambient(gens: Sequence[GroupElement], group: PcPresentation | None) -> PcPresentation:
    if group is not None:
        return group
    if not gens:
        raise InputError("empty generator list needs an explicit ambient group")
    return gens[0].group


def whole_group(g: PcPresentation) -> Subgroup:
    return Subgroup(g, g.gens)


def trivial_subgroup(g: PcPresentation) -> Subgroup:
    return Subgroup(g, ())


def subgroup_from_mask(g: PcPresentation, mask: np.ndarray) -> Subgroup:
    """Subgroup generated by the elements flagged in ``mask``.

    Grows the closure one missing element at a time, so at most log2 |G| closure
    calls are made.
    """
    mask = np.asarray(mask, dtype=bool)
    h = trivial_subgroup(g)
    gens: list[GroupElement] = []
    while True:
        missing = np.flatnonzero(mask & ~h.mask)
        if missing.size == 0:
            return h
        gens.append(g.element_at(int(missing[0])))
        h = subgroup_closure(gens, g)


def intersection(a: Subgroup, b: Subgroup) -> Subgroup:
    return subgroup_from_mask(a.group, a.mask & b.mask)


def commutator_subgroup(a: Subgroup, b: Subgroup) -> Subgroup:
    """[A, B] for subgroups normal in G (normal closure of generator commutators)."""
    seeds = [commutator(x, y) for x in a.induced_generators for y in b.induced_generators]
    return normal_closure(seeds, a.group)


def lower_central_series(g: PcPresentation) -> list[Subgroup]:
    """γ_1 = G, γ_{i+1} = [γ_i, G], stopping at 1 or where the chain stabilises."""
    series = [whole_group(g)]
    while not series[-1].is_trivial:
        nxt = normal_closure(
            [commutator(t, x) for t in series[-1].induced_generators for x in g.gens], g
        )
        if nxt == series[-1]:
            break
        series.append(nxt)
    return series


def nilpotency_class(g: PcPresentation) -> int | None:
    """Class of a nilpotent group, or None when the group is not nilpotent."""
    lcs = lower_central_series(g)
    if not lcs[-1].is_trivial:
        return None
    return len(lcs) - 1


def _commutator_maps(g: PcPresentation) -> list[np.ndarray]:
    allx = np.arange(g.order, dtype=np.int64)
    return [g.comm_vec(allx, np.int64(x.index)) for x in g.gens]


def upper_central_series(g: PcPresentation) -> list[Subgroup]:
    """Z_0 = 1 < Z_1 < ... until stable; Z_{i+1} = {x : [x, g_k] in Z_i for all k}."""
    comms = _commutator_maps(g)
    series = [trivial_subgroup(g)]
    while True:
        prev = series[-1].mask
        m = np.ones(g.order, dtype=bool)
        for c in comms:
            m &= prev[c]
        if m.sum() == series[-1].order:
            return series
        series.append(subgroup_from_mask(g, m))


def centre(g: PcPresentation) -> Subgroup:
    ucs = upper_central_series(g)
    return ucs[1] if len(ucs) > 1 else ucs[0]


def hypercentre(g: PcPresentation) -> Subgroup:
    return upper_central_series(g)[-1]


def is_nilpotent(g: PcPresentation) -> bool:
    return nilpotency_class(g) is not None


@dataclass(frozen=True)
class Quotient:
    """G/N with its own pc presentation and the projection from G."""

    group: PcPresentation
    normal: Subgroup
    presentation: PcPresentation
    kept: tuple[int, ...]  # depths of G that survive as quotient generators

    def reduce(self, x: GroupElement) -> GroupElement:
        """The unique element of xN with zero exponents at the depths of N."""
        for t in self.normal.induced_generators:
            e = x.exponents[t.depth]
            if e:
                x = x * t ** (-e)
        return x

    def project(self, x: GroupElement) -> GroupElement:
        r = self.reduce(x)
        return GroupElement(self.presentation, tuple(r.exponents[d] for d in self.kept))

    def lift(self, y: GroupElement) -> GroupElement:
        e = [0] * self.group.ngens
        for d, v in zip(self.kept, y.exponents):
            e[d] = v
        return GroupElement(self.group, tuple(e))


def quotient(n: Subgroup, name: str | None = None) -> Quotient:
    g = n.group
    if not n.is_normal():
        raise HypothesisError(f"subgroup of order {n.order} is not normal in {g.name}")
    nd = set(n.depths)
    kept = tuple(d for d in range(g.ngens) if d not in nd)
    pos = {d: i for i, d in enumerate(kept)}
    proto = Quotient(g, n, g, kept)

    def word_of(x: GroupElement):
        r = proto.reduce(x)
        return tuple((pos[d], r.exponents[d]) for d in kept if r.exponents[d])

    powers = tuple(word_of(g.gens[d] ** g.relative_orders[d]) for d in kept)
    conj = []
    for a, i in enumerate(kept):
        for b in range(a + 1, len(kept)):
            j = kept[b]
            conj.append(((a, b), word_of(g.gens[j].conj(g.gens[i]))))
    pres = PcPresentation(
        name=name or f"{g.name}/N{n.order}",
        generators=tuple(g.generators[d] for d in kept),
        relative_orders=tuple(g.relative_orders[d] for d in kept),
        power_relations=powers,
        conjugation_relations=tuple(conj),
        cap=g.cap,
    )
    return Quotient(g, n, pres, kept)
