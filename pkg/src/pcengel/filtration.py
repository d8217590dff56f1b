"""Strongly central series: lower central, Zassenhaus and intersected chains."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .errors import HypothesisError, InputError, Verdict
from .pcgroup import PcPresentation, commutator
from .subgroups import (
    Subgroup,
    intersection,
    lower_central_series,
    subgroup_closure,
    subgroup_from_mask,
    trivial_subgroup,
)


@dataclass(frozen=True)
class Filtration:
    """Descending chain F_1 >= F_2 >= ...; F_i = 1 beyond the stored terms.

    ``terminating`` is False for a lower central series that stabilised above 1
    (non-nilpotent groups); such a chain is kept for inspection but does not
    define an associated Lie ring.
    """

    group: PcPresentation
    terms: tuple[Subgroup, ...]
    kind: str
    terminating: bool = True
    ambient: Subgroup | None = field(default=None, compare=False)

    def term(self, i: int) -> Subgroup:
        if i < 1:
            raise InputError("filtration indices start at 1")
        if i <= len(self.terms):
            return self.terms[i - 1]
        if not self.terminating:
            return self.terms[-1]
        return trivial_subgroup(self.group)

    @property
    def length(self) -> int:
        """Number of nontrivial terms."""
        return sum(1 for t in self.terms if not t.is_trivial)

    def orders(self) -> list[int]:
        return [t.order for t in self.terms]

    def describe(self) -> dict:
        return {
            "kind": self.kind,
            "terminating": self.terminating,
            "orders": self.orders(),
            "terms": [t.describe()["generators"] for t in self.terms],
        }


def _truncate(terms: list[Subgroup]) -> tuple[Subgroup, ...]:
    out = []
    for t in terms:
        out.append(t)
        if t.is_trivial:
            break
    return tuple(out)


def lcs_filtration(g: PcPresentation) -> Filtration:
    lcs = lower_central_series(g)
    return Filtration(g, tuple(lcs), "lcs", terminating=lcs[-1].is_trivial)


def _power_image(g: PcPresentation, h: Subgroup, m: int) -> np.ndarray:
    """Mask of {x^m : x in h}."""
    mask = np.zeros(g.order, dtype=bool)
    mask[g.pow_vec(h.element_indices, m)] = True
    return mask


def zassenhaus_filtration(g: PcPresentation, p: int) -> Filtration:
    """G_i = < x^{p^k} : x in γ_j(G), j p^k >= i >, computed term by term.

    For each i only the least k with j p^k >= i is needed per j, since larger
    exponents give powers of those elements.  Terms are computed until the
    first trivial one.
    """
    if not g.is_p_group(p):
        raise HypothesisError(f"{g.name} is not a {p}-group")
    lcs = lower_central_series(g)
    if not lcs[-1].is_trivial:
        raise HypothesisError(f"{g.name}: lower central series does not reach 1")
    cache: dict[tuple[int, int], np.ndarray] = {}
    terms = []
    i = 1
    while True:
        mask = np.zeros(g.order, dtype=bool)
        for j, gamma in enumerate(lcs, start=1):
            if gamma.is_trivial:
                continue
            k = 0
            while j * p**k < i:
                k += 1
            if (j, k) not in cache:
                cache[(j, k)] = _power_image(g, gamma, p**k)
            mask |= cache[(j, k)]
        term = subgroup_from_mask(g, mask)
        terms.append(term)
        if term.is_trivial:
            break
        i += 1
    return Filtration(g, tuple(terms), f"zassenhaus({p})")


def custom_filtration(g: PcPresentation, terms, kind: str = "custom") -> Filtration:
    subs = []
    for t in terms:
        subs.append(t if isinstance(t, Subgroup) else subgroup_closure(list(t), g))
    return Filtration(g, _truncate(subs), kind)


def validate_strongly_central(f: Filtration) -> Verdict:
    """[F_i, F_j] <= F_{i+j} for all i, j (beyond the chain F = 1).

    When F_{i+j} is normalised by F_i and F_j it suffices to test generator
    commutators; otherwise all element pairs are tested.
    """
    if not f.terminating:
        return Verdict(False, notes=["chain does not terminate at 1"])
    m = len(f.terms)
    for i in range(1, m + 1):
        for j in range(i, m + 1):
            a, b, c = f.term(i), f.term(j), f.term(i + j)
            if a.is_trivial or b.is_trivial:
                continue
            joined = subgroup_closure(list(a.induced_generators + b.induced_generators), f.group)
            if c.is_normal(joined):
                pairs = product(a.induced_generators, b.induced_generators)
            else:
                pairs = product(a.elements(), b.elements())
            for x, y in pairs:
                z = commutator(x, y)
                if z not in c:
                    return Verdict(False, witness=(i, j, z), notes=[f"[F_{i}, F_{j}] not in F_{i + j}"])
    return Verdict(True)


def intersect_with(f: Filtration, c: Subgroup) -> Filtration:
    """The chain C ∩ F_i inside C."""
    terms = [intersection(c, t) for t in f.terms]
    if not terms or not terms[-1].is_trivial:
        terms.append(trivial_subgroup(f.group))
    return Filtration(f.group, _truncate(terms), "intersected", ambient=c)


def factor_exponent_ok(f: Filtration, p: int) -> Verdict:
    """Every factor F_i/F_{i+1} is abelian of exponent dividing p."""
    for i, t in enumerate(f.terms, start=1):
        nxt = f.term(i + 1)
        for x in t.induced_generators:
            if x ** p not in nxt:
                return Verdict(False, witness=(i, x))
            for y in t.induced_generators:
                if commutator(x, y) not in nxt:
                    return Verdict(False, witness=(i, x, y))
    return Verdict(True)
